"""Finite abelian groups in invariant-factor form, with subgroup and quotient machinery.

A group is presented by invariant factors n1 | n2 | ... | nr, so it is
C_n1 + ... + C_nr.  Elements are coordinate vectors; each element also has a
mixed-radix little-endian integer index in [0, order), index 0 being the
identity.  Sets of elements are manipulated as integer bitmasks over the index
space, which keeps sumset-style operations word-parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod

from .errors import (
    EmptyFactors,
    FactorBelowTwo,
    GroupMismatch,
    GroupTooLarge,
    NonDivisibleChain,
    NotASubgroup,
    ParseError,
)

ORDER_CAP = 256

__all__ = [
    "ORDER_CAP",
    "Group",
    "Element",
    "Subgroup",
    "make_group",
    "trivial_group",
    "parse_group",
    "format_group",
    "parse_element",
    "format_element",
    "elt_order",
    "subgroup_generated",
    "subgroup_from_elements",
    "all_subgroups",
    "quotient",
    "quotient_iso_type",
    "QuotientMap",
    "abelian_group_types",
    "iter_mask",
    "mask_to_indices",
]


def iter_mask(mask: int):
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_indices(mask: int) -> list[int]:
    return list(iter_mask(mask))


@dataclass(frozen=True)
class Group:
    """Finite abelian group C_n1 + ... + C_nr with n1 | n2 | ... | nr.

    The empty factor tuple is the trivial group; it arises from quotients and
    degenerate subgroups and is valid everywhere internally, but make_group
    rejects it at the public construction boundary.
    """

    invariant_factors: tuple[int, ...]

    @cached_property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @cached_property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @cached_property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in self.invariant_factors:
            out.append(s)
            s *= n
        return tuple(out)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def zero(self) -> "Element":
        return Element(self, (0,) * self.rank)

    def __repr__(self) -> str:
        return format_group(self)

    # -- index arithmetic ---------------------------------------------------

    def index_to_coords(self, idx: int) -> tuple[int, ...]:
        coords = []
        for n in self.invariant_factors:
            coords.append(idx % n)
            idx //= n
        return tuple(coords)

    def coords_to_index(self, coords) -> int:
        idx = 0
        for c, n, s in zip(coords, self.invariant_factors, self.strides):
            idx += (c % n) * s
        return idx

    def index_add(self, a: int, b: int) -> int:
        out = 0
        for n, s in zip(self.invariant_factors, self.strides):
            out += ((a // s + b // s) % n) * s
        return out

    def index_neg(self, a: int) -> int:
        out = 0
        for n, s in zip(self.invariant_factors, self.strides):
            out += (-(a // s) % n) * s
        return out

    def index_scalar(self, w: int, a: int) -> int:
        out = 0
        for n, s in zip(self.invariant_factors, self.strides):
            out += ((w * (a // s)) % n) * s
        return out

    def index_order(self, a: int) -> int:
        o = 1
        for n, s in zip(self.invariant_factors, self.strides):
            c = (a // s) % n
            o = lcm(o, n // gcd(n, c))
        return o

    def element(self, coords) -> "Element":
        coords = tuple(int(c) % n for c, n in zip(coords, self.invariant_factors))
        if len(coords) != self.rank:
            raise GroupMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return Element(self, coords)

    def element_from_index(self, idx: int) -> "Element":
        return Element(self, self.index_to_coords(idx))

    def elements(self):
        for idx in range(self.order):
            yield self.element_from_index(idx)

    # -- bitmask machinery ----------------------------------------------------
    # Masks are plain ints over the index space.  Translating a whole set by
    # c units in coordinate i is a rotation inside each block of length
    # stride(i) * n_i, which costs O(1) bigint operations per coordinate.

    @cached_property
    def _rot_masks(self) -> tuple:
        # _rot_masks[i][c] = (low_rep, high_rep, shift) for rotating coord i by c
        per_coord = []
        order = self.order
        for n, s in zip(self.invariant_factors, self.strides):
            block = n * s
            comb = 0
            for off in range(0, order, block):
                comb |= 1 << off
            entries = [None] * n
            for c in range(1, n):
                k = c * s
                low_unit = (1 << (block - k)) - 1
                high_unit = ((1 << k) - 1) << (block - k)
                entries[c] = (low_unit * comb, high_unit * comb, k, block - k)
            per_coord.append(tuple(entries))
        return tuple(per_coord)

    @cached_property
    def _digit_masks(self) -> tuple:
        # _digit_masks[i][d] = mask of all indices whose i-th digit equals d
        per_coord = []
        order = self.order
        for n, s in zip(self.invariant_factors, self.strides):
            block = n * s
            comb = 0
            for off in range(0, order, block):
                comb |= 1 << off
            unit = (1 << s) - 1
            per_coord.append(tuple((unit << (d * s)) * comb for d in range(n)))
        return tuple(per_coord)

    def translate_mask(self, mask: int, gidx: int) -> int:
        """Image of the index set ``mask`` under x -> x + g."""
        if gidx == 0 or mask == 0:
            return mask
        for n, s, rots in zip(self.invariant_factors, self.strides, self._rot_masks):
            c = (gidx // s) % n
            if c:
                low_rep, high_rep, k, back = rots[c]
                mask = ((mask & low_rep) << k) | ((mask & high_rep) >> back)
        return mask

    def dilate_mask(self, mask: int, w: int) -> int:
        """Image of the index set ``mask`` under x -> w*x (not injective for non-units)."""
        if mask == 0:
            return 0
        for n, s, digits in zip(self.invariant_factors, self.strides, self._digit_masks):
            wi = w % n
            if wi == 1:
                continue
            out = 0
            for d in range(n):
                chunk = mask & digits[d]
                if not chunk:
                    continue
                delta = ((wi * d) % n - d) * s
                out |= chunk << delta if delta >= 0 else chunk >> -delta
            mask = out
        return mask

    def neg_mask(self, mask: int) -> int:
        return self.dilate_mask(mask, -1)

    def cyclic_mask(self, gidx: int) -> int:
        """Bitmask of the cyclic subgroup generated by one index."""
        mask = 1
        x = gidx
        while not (mask >> x) & 1:
            mask |= 1 << x
            x = self.index_add(x, gidx)
        return mask


@dataclass(frozen=True)
class Element:
    group: Group
    coords: tuple[int, ...]

    @cached_property
    def index(self) -> int:
        return self.group.coords_to_index(self.coords)

    @cached_property
    def order(self) -> int:
        return self.group.index_order(self.index)

    def __add__(self, other: "Element") -> "Element":
        if other.group != self.group:
            raise GroupMismatch("elements from different groups")
        return self.group.element_from_index(self.group.index_add(self.index, other.index))

    def __neg__(self) -> "Element":
        return self.group.element_from_index(self.group.index_neg(self.index))

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __rmul__(self, w: int) -> "Element":
        return self.group.element_from_index(self.group.index_scalar(w, self.index))

    def __repr__(self) -> str:
        return f"{format_element(self)}@{format_group(self.group)}"


def make_group(factors) -> Group:
    """Build a group from invariant factors; raises unless 2 <= n1 | n2 | ... | nr."""
    factors = tuple(int(n) for n in factors)
    if not factors:
        raise EmptyFactors("need at least one invariant factor")
    for n in factors:
        if n < 2:
            raise FactorBelowTwo(f"invariant factor {n} < 2")
    for a, b in zip(factors, factors[1:]):
        if b % a != 0:
            raise NonDivisibleChain(f"{a} does not divide {b}")
    if prod(factors) > ORDER_CAP:
        raise GroupTooLarge(f"order {prod(factors)} exceeds cap {ORDER_CAP}")
    return Group(factors)


def trivial_group() -> Group:
    return Group(())


_GROUP_RE = re.compile(r"^c(\d+)(?:xc(\d+))*$")


def parse_group(text: str) -> Group:
    """Parse a literal like ``c7`` or ``c2xc4`` into a group."""
    s = text.strip().lower()
    if not _GROUP_RE.match(s):
        raise ParseError(f"bad group literal {text!r}; expected e.g. c7 or c2xc4")
    return make_group(int(part[1:]) for part in s.split("x"))


def format_group(group: Group) -> str:
    if not group.invariant_factors:
        return "c1"
    return "x".join(f"c{n}" for n in group.invariant_factors)


def format_element(g: Element) -> str:
    if g.group.rank == 1:
        return str(g.coords[0])
    return "(" + ",".join(str(c) for c in g.coords) + ")"


def parse_element(group: Group, text: str) -> Element:
    s = text.strip()
    if s.startswith("("):
        if not s.endswith(")"):
            raise ParseError(f"unbalanced parentheses in element {text!r}")
        parts = s[1:-1].split(",")
    else:
        parts = [s]
    try:
        coords = [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"bad element literal {text!r}") from exc
    if len(coords) != group.rank:
        raise ParseError(
            f"element {text!r} has {len(coords)} coordinates, group has rank {group.rank}"
        )
    return group.element(coords)


def elt_order(group: Group, g: Element) -> int:
    """Least k >= 1 with k*g = 0."""
    if g.group != group:
        raise GroupMismatch("element not in this group")
    return group.index_order(g.index)


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, carried as a bitmask plus recovered structure.

    iso_type is the subgroup's own invariant-factor chain (empty for the
    trivial subgroup); generators is an irredundant generating list found
    during construction.
    """

    group: Group
    mask: int
    generators: tuple[Element, ...]
    iso_type: tuple[int, ...]

    @cached_property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def exponent(self) -> int:
        return self.iso_type[-1] if self.iso_type else 1

    def contains_index(self, idx: int) -> bool:
        return bool((self.mask >> idx) & 1)

    def __contains__(self, g: Element) -> bool:
        return self.contains_index(g.index)

    def indices(self) -> list[int]:
        return mask_to_indices(self.mask)

    @property
    def elements(self):
        from .setsum import GSet  # local import avoids a module cycle

        return GSet(self.group, self.mask)

    def padded_iso_type(self) -> tuple[int, ...]:
        """iso_type left-padded with 1s to the ambient rank."""
        pad = self.group.rank - len(self.iso_type)
        return (1,) * pad + self.iso_type

    def is_proper(self) -> bool:
        return self.order < self.group.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def dstar(self) -> int:
        return sum(n - 1 for n in self.iso_type)

    def __repr__(self) -> str:
        gens = ",".join(format_element(g) for g in self.generators) or "0"
        return f"<{gens}>@{format_group(self.group)}"


def _closure_mask(group: Group, gen_indices) -> int:
    mask = 1
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gen_indices:
            y = group.index_add(x, g)
            if not (mask >> y) & 1:
                mask |= 1 << y
                frontier.append(y)
    return mask


def _extend_closure(group: Group, submask: int, gidx: int) -> int:
    # union of cosets submask + k*g until it wraps
    mask = submask
    x = gidx
    while not (mask >> x) & 1:
        mask |= group.translate_mask(submask, x)
        x = group.index_add(x, gidx)
    return mask


def _iso_type_from_orders(order_counts: dict[int, int], size: int) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its multiset of element orders.

    Per prime p, the count of elements killed by p^k determines how many
    cyclic factors have p-exponent >= k; factors are then aligned greedily
    largest-with-largest across primes.
    """
    if size == 1:
        return ()
    primes = []
    n = size
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)

    per_prime: list[list[int]] = []
    for p in primes:
        fs = [1]
        while True:
            pk = p ** len(fs)
            fk = sum(c for o, c in order_counts.items() if pk % o == 0)
            fs.append(fk)
            if fk == fs[-2]:
                break
        logs = []
        for f in fs:
            e = 0
            while p**e < f:
                e += 1
            if p**e != f:
                raise NotASubgroup(f"order statistics not a subgroup (count {f} not a power of {p})")
            logs.append(e)
        geq = [logs[k] - logs[k - 1] for k in range(1, len(logs))]  # geq[k-1] = #factors with exp >= k
        exps = []
        j = 1
        while geq and j <= geq[0]:
            exps.append(sum(1 for g in geq if g >= j))
            j += 1
        per_prime.append(sorted(exps, reverse=True))

    t = max(len(e) for e in per_prime)
    factors_desc = []
    for pos in range(t):
        f = 1
        for p, exps in zip(primes, per_prime):
            if pos < len(exps):
                f *= p ** exps[pos]
        factors_desc.append(f)
    factors = tuple(reversed(factors_desc))
    if prod(factors) != size:
        raise NotASubgroup("order statistics inconsistent with subgroup size")
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise NotASubgroup("recovered factors not a divisibility chain")
    return factors


def _iso_type_of_mask(group: Group, mask: int) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for idx in iter_mask(mask):
        o = group.index_order(idx)
        counts[o] = counts.get(o, 0) + 1
    return _iso_type_from_orders(counts, mask.bit_count())


def _irredundant_gens(group: Group, mask: int, gen_indices: list[int]) -> tuple[int, ...]:
    gens = list(gen_indices)
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            trial = gens[:i] + gens[i + 1 :]
            if _closure_mask(group, trial) == mask:
                gens = trial
                changed = True
                break
    return tuple(gens)


def _subgroup(group: Group, mask: int, gen_indices: list[int]) -> Subgroup:
    gens = _irredundant_gens(group, mask, gen_indices)
    return Subgroup(
        group=group,
        mask=mask,
        generators=tuple(group.element_from_index(i) for i in gens),
        iso_type=_iso_type_of_mask(group, mask),
    )


def subgroup_generated(group: Group, gens) -> Subgroup:
    """Subgroup generated by a list of elements (empty list gives the trivial subgroup)."""
    idxs = []
    for g in gens:
        if isinstance(g, Element):
            if g.group != group:
                raise GroupMismatch("generator from another group")
            idxs.append(g.index)
        else:
            idxs.append(int(g) % group.order if group.rank == 1 else int(g))
    mask = _closure_mask(group, idxs)
    return _subgroup(group, mask, idxs)


def subgroup_from_elements(group: Group, elements) -> Subgroup:
    """Wrap an explicit element set, verifying closure."""
    mask = 0
    for g in elements:
        idx = g.index if isinstance(g, Element) else int(g)
        mask |= 1 << idx
    if not mask & 1:
        raise NotASubgroup("subgroup must contain the identity")
    idxs = mask_to_indices(mask)
    for a in idxs:
        for b in idxs:
            if not (mask >> group.index_add(a, b)) & 1:
                raise NotASubgroup("element set not closed under addition")
    gens: list[int] = []
    cur = 1
    for idx in idxs:
        if not (cur >> idx) & 1:
            gens.append(idx)
            cur = _extend_closure(group, cur, idx)
    return _subgroup(group, mask, gens)


def all_subgroups(group: Group, cap: int = 256) -> list[Subgroup]:
    """Every subgroup, found by breadth-first generator extension.

    Deterministic: output sorted by (order, element list).  Raises CapExceeded
    when the lattice has more than ``cap`` subgroups.
    """
    from .errors import CapExceeded

    seen: dict[int, list[int]] = {1: []}
    queue = [1]
    while queue:
        mask = queue.pop(0)
        gens = seen[mask]
        for g in range(1, group.order):
            if (mask >> g) & 1:
                continue
            bigger = _extend_closure(group, mask, g)
            if bigger not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"more than {cap} subgroups")
                seen[bigger] = gens + [g]
                queue.append(bigger)
    masks = sorted(seen, key=lambda m: (m.bit_count(), mask_to_indices(m)))
    return [_subgroup(group, m, seen[m]) for m in masks]


# -- quotients ------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Projection G -> G/H with the quotient in invariant-factor form."""

    group: Group
    subgroup: Subgroup
    quotient: Group
    table: tuple[int, ...]  # G index -> quotient index

    def __call__(self, g: Element) -> Element:
        if g.group != self.group:
            raise GroupMismatch("element not in the domain group")
        return self.quotient.element_from_index(self.table[g.index])

    def map_mask(self, mask: int) -> int:
        out = 0
        for idx in iter_mask(mask):
            out |= 1 << self.table[idx]
        return out

    def kernel_mask(self) -> int:
        return self.subgroup.mask


def _coset_ids(group: Group, submask: int) -> tuple[list[int], list[int]]:
    """Assign coset ids in order of first appearance; returns (cosid per index, rep per id)."""
    cosid = [-1] * group.order
    reps = []
    for g in range(group.order):
        if cosid[g] == -1:
            cid = len(reps)
            reps.append(g)
            for m in iter_mask(group.translate_mask(submask, g)):
                cosid[m] = cid
    return cosid, reps


def _abelian_basis(q: int, add) -> list[tuple[int, int]]:
    """Basis of a concrete abelian group on ids 0..q-1 with identity 0.

    Returns [(element id, order)] whose orders form an ascending divisibility
    chain and whose cyclic spans decompose the group as a direct sum.
    """
    if q == 1:
        return []

    def order_of(x: int) -> int:
        k = 1
        acc = x
        while acc != 0:
            acc = add(acc, x)
            k += 1
        return k

    def scalar(k: int, x: int) -> int:
        acc = 0
        for _ in range(k):
            acc = add(acc, x)
        return acc

    orders = [order_of(x) for x in range(q)]
    e = max(orders)
    y = orders.index(e)

    mult_of_y: dict[int, int] = {}
    x = 0
    for c in range(e):
        mult_of_y.setdefault(x, c)
        x = add(x, y)

    # cosets of <y>, reps chosen as minimal ids
    crep = [-1] * q
    for i in range(q):
        if crep[i] == -1:
            members = []
            x = i
            for _ in range(e):
                members.append(x)
                x = add(x, y)
            m = min(members)
            for mm in members:
                crep[mm] = m
    reps = sorted(set(crep))
    pos = {r: i for i, r in enumerate(reps)}

    def qadd(a: int, b: int) -> int:
        return pos[crep[add(reps[a], reps[b])]]

    basis = []
    for p, d in _abelian_basis(q // e, qadd):
        z = reps[p]
        c = mult_of_y[scalar(d, z)]
        if c % d:
            raise NotASubgroup("basis lift failed; group tables inconsistent")
        z = add(z, scalar((e - (c // d) % e) % e, y))
        basis.append((z, d))
    basis.append((y, e))
    for (_, a), (_, b) in zip(basis, basis[1:]):
        if b % a:
            raise NotASubgroup("basis orders not a divisibility chain")
    return basis


def _validate_subgroup(group: Group, sub: Subgroup) -> None:
    if sub.group != group:
        raise GroupMismatch("subgroup of a different group")
    if not sub.mask & 1:
        raise NotASubgroup("subgroup lacks the identity")
    regen = _closure_mask(group, [g.index for g in sub.generators])
    if regen != sub.mask:
        raise NotASubgroup("stored mask is not the closure of its generators")


def quotient(group: Group, sub: Subgroup) -> tuple[Group, QuotientMap]:
    """Quotient G/H as a concrete group plus the projection map."""
    _validate_subgroup(group, sub)
    cosid, reps = _coset_ids(group, sub.mask)
    q = len(reps)

    def qadd(a: int, b: int) -> int:
        return cosid[group.index_add(reps[a], reps[b])]

    basis = _abelian_basis(q, qadd)
    factors = tuple(d for _, d in basis)
    quot = Group(factors)

    id_to_qidx = [-1] * q
    for qidx in range(quot.order):
        coords = quot.index_to_coords(qidx)
        concrete = 0
        for c, (b, _) in zip(coords, basis):
            for _ in range(c):
                concrete = qadd(concrete, b)
        id_to_qidx[concrete] = qidx
    if any(v < 0 for v in id_to_qidx):
        raise NotASubgroup("quotient coordinates do not cover all cosets")

    table = tuple(id_to_qidx[cosid[g]] for g in range(group.order))
    return quot, QuotientMap(group=group, subgroup=sub, quotient=quot, table=table)


def quotient_iso_type(group: Group, sub: Subgroup) -> tuple[int, ...]:
    """Invariant factors of G/H from coset order statistics (no projection built)."""
    _validate_subgroup(group, sub)
    seen = 0
    counts: dict[int, int] = {}
    q = group.order // sub.order
    for g in range(group.order):
        if (seen >> g) & 1:
            continue
        seen |= group.translate_mask(sub.mask, g)
        k = 1
        acc = g
        while not (sub.mask >> acc) & 1:
            acc = group.index_add(acc, g)
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return _iso_type_from_orders(counts, q)


# -- isomorphism type enumeration ------------------------------------------------


def _partitions_desc(n: int):
    """All descending partitions of n."""

    def rec(n: int, maxpart: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, maxpart), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def abelian_group_types(max_order: int, min_order: int = 2) -> list[Group]:
    """Every abelian-group isomorphism type with min_order <= order <= max_order."""
    out = []
    for n in range(min_order, max_order + 1):
        if n == 1:
            out.append(Group(()))
            continue
        m = n
        prime_exps = []
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                prime_exps.append((d, e))
            d += 1
        if m > 1:
            prime_exps.append((m, 1))

        combos: list[list[tuple[int, tuple[int, ...]]]] = [[]]
        for p, e in prime_exps:
            combos = [c + [(p, part)] for c in combos for part in _partitions_desc(e)]
        for combo in combos:
            t = max(len(part) for _, part in combo)
            factors_desc = []
            for pos in range(t):
                f = 1
                for p, part in combo:
                    if pos < len(part):
                        f *= p ** part[pos]
                factors_desc.append(f)
            out.append(Group(tuple(reversed(factors_desc))))
    out.sort(key=lambda g: (g.order, g.invariant_factors))
    return out
