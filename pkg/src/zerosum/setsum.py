"""Subsets of a group with sumset algebra, stabilizers, progression and periodicity structure.

Sets are bitmasks over the element index space; sumsets are computed by
translating the larger operand by each element of the smaller one (shift-and-or
on whole words), never by element-pair loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce

from .errors import EmptySet, GroupMismatch, KneserViolation
from .groups import (
    Element,
    Group,
    Subgroup,
    _subgroup,
    all_subgroups,
    format_element,
    iter_mask,
    mask_to_indices,
    quotient,
)

__all__ = [
    "GSet",
    "StabilizerReport",
    "KneserReport",
    "ApWitness",
    "gset",
    "sumset",
    "iterated_sumset",
    "weighted_dilate",
    "stabilizer",
    "detect_ap",
    "kneser_audit",
]


@dataclass(frozen=True)
class GSet:
    """A subset of a group, stored as an index bitmask."""

    group: Group
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits > self.group.full_mask:
            raise GroupMismatch("bitmask outside the group's index space")

    @cached_property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, g: Element) -> bool:
        return bool((self.bits >> g.index) & 1)

    def contains_index(self, idx: int) -> bool:
        return bool((self.bits >> idx) & 1)

    def indices(self) -> list[int]:
        return mask_to_indices(self.bits)

    def elements(self) -> list[Element]:
        return [self.group.element_from_index(i) for i in self.indices()]

    def translate(self, g: Element) -> "GSet":
        return GSet(self.group, self.group.translate_mask(self.bits, g.index))

    def is_empty(self) -> bool:
        return self.bits == 0

    def __or__(self, other: "GSet") -> "GSet":
        _check_same_group(self, other)
        return GSet(self.group, self.bits | other.bits)

    def __and__(self, other: "GSet") -> "GSet":
        _check_same_group(self, other)
        return GSet(self.group, self.bits & other.bits)

    def __repr__(self) -> str:
        inner = ",".join(format_element(g) for g in self.elements())
        return "{" + inner + "}"


def gset(group: Group, elements) -> GSet:
    """Build a GSet from elements, indices, or literal strings."""
    from .groups import parse_element

    bits = 0
    for g in elements:
        if isinstance(g, Element):
            if g.group != group:
                raise GroupMismatch("element from another group")
            bits |= 1 << g.index
        elif isinstance(g, str):
            bits |= 1 << parse_element(group, g).index
        else:
            bits |= 1 << (int(g) % group.order if group.rank == 1 else int(g))
    return GSet(group, bits)


def _check_same_group(a: GSet, b: GSet) -> None:
    if a.group != b.group:
        raise GroupMismatch("sets over different groups")


def sumset(a: GSet, b: GSet) -> GSet:
    """A + B = {x + y : x in A, y in B}."""
    _check_same_group(a, b)
    if a.is_empty() or b.is_empty():
        raise EmptySet("sumset needs nonempty operands")
    big, small = (a.bits, b.bits) if a.size >= b.size else (b.bits, a.bits)
    group = a.group
    out = 0
    for idx in iter_mask(small):
        out |= group.translate_mask(big, idx)
    return GSet(group, out)


def iterated_sumset(sets) -> GSet:
    sets = list(sets)
    if not sets:
        raise EmptySet("need at least one set")
    return reduce(sumset, sets)


def weighted_dilate(w: int, a: GSet) -> GSet:
    """w * A = {w*x : x in A}; collapses when w is not a unit mod the exponent."""
    if a.is_empty():
        raise EmptySet("dilate needs a nonempty set")
    return GSet(a.group, a.group.dilate_mask(a.bits, w))


@dataclass(frozen=True)
class StabilizerReport:
    """H(A) together with periodicity structure.

    quasi_period is the smallest nontrivial subgroup H for which A splits as
    A0 u A1 with A0 a nonempty union of full H-cosets and A1 contained in a
    single H-coset (A1 may be empty); None when no such H exists.
    """

    stabilizer: Subgroup
    periodic: bool
    quasi_period: Subgroup | None
    a0: GSet | None
    a1: GSet | None


def _subgroup_from_mask(group: Group, mask: int) -> Subgroup:
    gens: list[int] = []
    cur = 1
    from .groups import _extend_closure

    for idx in iter_mask(mask):
        if not (cur >> idx) & 1:
            gens.append(idx)
            cur = _extend_closure(group, cur, idx)
    return _subgroup(group, mask, gens)


def _quasi_split(group: Group, bits: int, submask: int) -> tuple[int, int] | None:
    """Split bits into (full H-cosets, remainder in one H-coset), or None."""
    full = 0
    partial_cosets = 0
    rest = bits
    seen = 0
    while rest:
        low = rest & -rest
        g = low.bit_length() - 1
        coset = group.translate_mask(submask, g)
        part = bits & coset
        if part == coset:
            full |= coset
        else:
            partial_cosets += 1
            if partial_cosets > 1:
                return None
        seen |= coset
        rest = bits & ~seen
    if full == 0:
        return None
    return full, bits & ~full


def stabilizer(a: GSet) -> StabilizerReport:
    """Compute H(A) = {g : g + A = A} plus quasi-periodicity structure."""
    if a.is_empty():
        raise EmptySet("stabilizer of the empty set")
    group = a.group
    mask = 0
    for g in range(group.order):
        if group.translate_mask(a.bits, g) == a.bits:
            mask |= 1 << g
    stab = _subgroup_from_mask(group, mask)
    periodic = stab.order > 1

    quasi = None
    a0 = a1 = None
    for sub in all_subgroups(group, cap=4096):
        if sub.order == 1:
            continue
        split = _quasi_split(group, a.bits, sub.mask)
        if split is not None:
            quasi = sub
            a0 = GSet(group, split[0])
            a1 = GSet(group, split[1])
            break
    return StabilizerReport(stabilizer=stab, periodic=periodic, quasi_period=quasi, a0=a0, a1=a1)


@dataclass(frozen=True)
class ApWitness:
    """A = {start + k*diff : 0 <= k < length}."""

    start: Element
    diff: Element
    length: int


def detect_ap(a: GSet) -> ApWitness | None:
    """Arithmetic-progression recognition with a canonical witness.

    Valid (start, diff) pairs are searched with diff ascending by element
    index and start chosen as the endpoint from which the progression ascends
    by diff; the first valid pair wins, so the +-d ambiguity resolves to the
    smaller index.
    """
    if a.is_empty():
        raise EmptySet("detect_ap on the empty set")
    group = a.group
    length = a.size
    if length == 1:
        idx = a.indices()[0]
        return ApWitness(group.element_from_index(idx), group.zero, 1)
    for d in range(1, group.order):
        if group.index_order(d) < length:
            continue
        if group.index_order(d) == length:
            # full cycle of <d>: A must be a coset, any start works; take the minimum
            start = a.indices()[0]
            if group.translate_mask(group.cyclic_mask(d), start) == a.bits:
                return ApWitness(group.element_from_index(start), group.element_from_index(d), length)
            continue
        shifted = group.translate_mask(a.bits, d)
        head = a.bits & ~shifted
        if head.bit_count() != 1:
            continue
        start = head.bit_length() - 1
        rebuilt = 0
        x = start
        for _ in range(length):
            rebuilt |= 1 << x
            x = group.index_add(x, d)
        if rebuilt == a.bits:
            return ApWitness(group.element_from_index(start), group.element_from_index(d), length)
    return None


@dataclass(frozen=True)
class KneserReport:
    stabilizer: Subgroup
    lhs: int  # |phi_H(A_1) + ... + phi_H(A_n)|
    rhs: int  # sum |phi_H(A_i)| - n + 1


def kneser_audit(sets) -> KneserReport:
    """Sanity oracle: with H = H(sum of the sets), the projected sumset must
    have size >= sum of projected sizes - n + 1.  A violation is a bug."""
    sets = list(sets)
    if not sets:
        raise EmptySet("kneser_audit needs at least one set")
    total = iterated_sumset(sets)
    group = total.group
    rep = stabilizer(total)
    sub = rep.stabilizer
    _, proj = quotient(group, sub)
    images = [proj.map_mask(s.bits) for s in sets]
    q = proj.quotient
    acc = images[0]
    for img in images[1:]:
        nxt = 0
        for idx in iter_mask(img):
            nxt |= q.translate_mask(acc, idx)
        acc = nxt
    lhs = acc.bit_count()
    rhs = sum(img.bit_count() for img in images) - len(sets) + 1
    if lhs < rhs:
        raise KneserViolation(f"projected sumset size {lhs} below bound {rhs}")
    return KneserReport(stabilizer=sub, lhs=lhs, rhs=rhs)
