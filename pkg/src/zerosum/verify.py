"""Statement registry and verification engine.

Every registered statement is a pair of executable predicates: a hypothesis
and a conclusion over a concrete instance (group, sequence, weights, extras).
check_instance evaluates one instance exactly; sweep enumerates a finite
instance domain, shards it, and tallies verdicts with deterministic output.
Resource caps produce an undecided verdict, never a wrong one.
"""

from __future__ import annotations

import enum
import json
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb, gcd
from typing import Any, Callable, Iterable, Mapping

from .errors import (
    CapExceeded,
    DomainTooLarge,
    GroupTooLarge,
    MissingField,
)
from .groups import (
    Element,
    Group,
    Subgroup,
    all_subgroups,
    format_element,
    format_group,
    mask_to_indices,
    quotient_iso_type,
    subgroup_generated,
)
from .invariants import davenport, dstar, dstar_of_factors
from .sequences import (
    GSequence,
    Setpartition,
    balanced_setpartition,
    enum_setpartitions,
    format_sequence,
    has_setpartition,
    seq_from_indices,
)
from .setsum import GSet, gset, sumset, detect_ap, stabilizer, weighted_dilate
from .verdict import Status, Verdict
from .weighted import (
    WeightSeq,
    format_weights,
    sigma_all,
    sigma_n,
    sums_by_count,
    weight_seq,
)

__all__ = [
    "StatementId",
    "Instance",
    "SearchCaps",
    "SetpartitionWitness",
    "SweepDomain",
    "SweepReport",
    "check_instance",
    "sweep",
    "statement_anchor",
    "sweepable_statements",
    "coset_condition",
    "contained_subgroup",
    "example1_instance",
    "example2_instance",
    "witness_search_setpartition",
    "check_max_subgroup_dichotomy",
    "check_self_duality",
    "check_ap_structure",
    "make_setpartition_witness",
    "instance_to_dict",
    "verdict_to_dict",
    "report_to_json",
    "report_to_csv",
]


class StatementId(str, enum.Enum):
    """Identifiers for the registered statements."""

    EX1 = "EX1"
    EX2 = "EX2"
    THM_GAO_COSET = "THM_GAO_COSET"
    THM_WEGZ = "THM_WEGZ"
    CONJ_HAMIDOUNE = "CONJ_HAMIDOUNE"
    CONJ_ORDAZ_QUIROZ = "CONJ_ORDAZ_QUIROZ"
    THM_HAM_CHAR = "THM_HAM_CHAR"
    LEM_DSTAR_SUBADD = "LEM_DSTAR_SUBADD"
    LEM_SPLIT = "LEM_SPLIT"
    PROP_DUAL = "PROP_DUAL"
    PROP_ALIGN = "PROP_ALIGN"
    THM_SETPART_WITNESS = "THM_SETPART_WITNESS"
    THM_SETPART_MAXK = "THM_SETPART_MAXK"
    PROP_PIGEONHOLE = "PROP_PIGEONHOLE"
    COR_GAO_DSTAR = "COR_GAO_DSTAR"
    COR_SPUD = "COR_SPUD"
    LEM_DAVID = "LEM_DAVID"
    COR_SPECIALCASE = "COR_SPECIALCASE"
    COR_HAM_VAR = "COR_HAM_VAR"
    AP_STRUCT = "AP_STRUCT"


@dataclass(frozen=True)
class Instance:
    """One concrete test case for a statement.

    seq/weights/n cover the common shape; anything statement-specific
    (subgroups, subsets, base points, certificates) rides in extra.
    """

    group: Group
    seq: GSequence | None = None
    weights: WeightSeq | None = None
    n: int | None = None
    extra: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SearchCaps:
    """Budgets for the search-bounded checkers.

    Hitting any of these yields an undecided verdict, never holds/fails.
    """

    davenport: int = 64
    subgroups: int = 4096
    subsequences: int = 512
    partitions: int = 512
    assignments: int = 720


DEFAULT_CAPS = SearchCaps()


# ---------------------------------------------------------------------------
# shared helpers


def _need(inst: Instance, *, seq: bool = False, weights: bool = False, n: bool = False,
          extra: tuple[str, ...] = ()) -> None:
    if seq and inst.seq is None:
        raise MissingField("instance needs a sequence")
    if weights and inst.weights is None:
        raise MissingField("instance needs a weight sequence")
    if n and inst.n is None:
        raise MissingField("instance needs n")
    for key in extra:
        if key not in inst.extra:
            raise MissingField(f"instance needs extra[{key!r}]")


def _hyp_fail(reason: str) -> Verdict:
    return Verdict(Status.HYPOTHESIS_NOT_MET, {"reason": reason})


def _capped(reason: str) -> Verdict:
    return Verdict(Status.UNDECIDED_CAPPED, {"reason": reason})


def contained_subgroup(a: GSet) -> Subgroup | None:
    """Smallest nontrivial subgroup wholly inside A, or None.

    Any nontrivial subgroup contains one of prime order, so scanning the
    prime-order cyclic subgroups is exact.
    """
    group = a.group
    best: tuple[int, int] | None = None
    for idx in range(1, group.order):
        o = group.index_order(idx)
        if o < 2 or any(o % p == 0 for p in range(2, o) if p * p <= o):
            continue
        if group.cyclic_mask(idx) & ~a.bits:
            continue
        if best is None or (o, idx) < best:
            best = (o, idx)
    if best is None:
        return None
    return subgroup_generated(group, [group.element_from_index(best[1])])


def coset_condition(seq: GSequence, cap: int = 4096) -> tuple[int, Subgroup] | None:
    """First coset g+H holding all but at most |G/H|-2 terms of the sequence.

    Subgroups are scanned ascending by order and coset representatives by
    index, so the witness is canonical.  Returns (rep index, H) or None.
    """
    group = seq.group
    for sub in all_subgroups(group, cap=cap):
        allowed = group.order // sub.order - 2
        if allowed < 0:
            continue
        for rep in range(group.order):
            coset = group.translate_mask(sub.mask, rep)
            if rep != (coset & -coset).bit_length() - 1:
                continue
            outside = sum(m for i, m in enumerate(seq.mult) if not (coset >> i) & 1)
            if outside <= allowed:
                return rep, sub
    return None


def _coset_mask(group: Group, submask: int, rep: int) -> int:
    return group.translate_mask(submask, rep)


def _coset_reps(group: Group, submask: int) -> list[int]:
    """Minimum-index representative of each coset of the subgroup mask."""
    reps = []
    seen = 0
    for r in range(group.order):
        if (seen >> r) & 1:
            continue
        coset = group.translate_mask(submask, r)
        seen |= coset
        reps.append(r)
    return reps


def _positional_wsum(pairs: Iterable[tuple[int, GSet]]) -> GSet:
    acc: GSet | None = None
    for w, block in pairs:
        term = weighted_dilate(w, block)
        acc = term if acc is None else sumset(acc, term)
    if acc is None:
        raise MissingField("positional weighted sum needs at least one block")
    return acc


def _distinct_perms(items: tuple[int, ...], cap: int, length: int | None = None):
    """Distinct arrangements of a multiset, lexicographic, capped.

    length selects arrangements of that many items (default: all of them).
    The caller detects truncation by passing cap+1 and counting yields.
    """
    counter = Counter(items)
    keys = sorted(counter)
    n = len(items) if length is None else length
    acc: list[int] = []

    def rec():
        if len(acc) == n:
            yield tuple(acc)
            return
        for k in keys:
            if counter[k]:
                counter[k] -= 1
                acc.append(k)
                yield from rec()
                acc.pop()
                counter[k] += 1

    emitted = 0
    for perm in rec():
        yield perm
        emitted += 1
        if emitted >= cap:
            return


def _sub_multisets(mult: tuple[int, ...], size: int):
    """Multiplicity vectors m' <= mult with sum(m') == size, lex ascending."""
    nparts = len(mult)
    suffix = [0] * (nparts + 1)
    for i in range(nparts - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mult[i]
    acc = [0] * nparts

    def rec(i: int, left: int):
        if i == nparts:
            if left == 0:
                yield tuple(acc)
            return
        if left > suffix[i]:
            return
        hi = min(mult[i], left)
        for c in range(hi + 1):
            acc[i] = c
            yield from rec(i + 1, left - c)
        acc[i] = 0

    yield from rec(0, size)


def _mult_vectors(nparts: int, total: int, cap: int):
    """All multiplicity vectors of given length/total with parts <= cap."""
    acc = [0] * nparts

    def rec(i: int, left: int):
        if i == nparts - 1:
            if left <= cap:
                acc[i] = left
                yield tuple(acc)
                acc[i] = 0
            return
        remaining_cap = cap * (nparts - i - 1)
        lo = max(0, left - remaining_cap)
        for c in range(lo, min(cap, left) + 1):
            acc[i] = c
            yield from rec(i + 1, left - c)
        acc[i] = 0

    if total <= cap * nparts:
        yield from rec(0, total)


_SHIFT_TABLES: dict[Group, list[list[int]]] = {}


def _shift_tables(group: Group) -> list[list[int]]:
    tabs = _SHIFT_TABLES.get(group)
    if tabs is None:
        tabs = [[group.index_add(j, g) for j in range(group.order)]
                for g in range(group.order)]
        _SHIFT_TABLES[group] = tabs
    return tabs


def _translated_mult(group: Group, mult: tuple[int, ...], g: int) -> tuple[int, ...]:
    tab = _shift_tables(group)[g]
    out = [0] * group.order
    for j, m in enumerate(mult):
        if m:
            out[tab[j]] = m
    return tuple(out)


def _is_canonical_translate(group: Group, mult: tuple[int, ...]) -> bool:
    for g in range(1, group.order):
        if _translated_mult(group, mult, g) < mult:
            return False
    return True


def _nonunit_count(raw: tuple[int, ...], modulus: int) -> int:
    return sum(1 for w in raw if gcd(w, modulus) != 1)


def _prime_valuations(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# example builders


def example1_instance(p: int) -> Instance:
    """Prime-modulus instance: n=(p-1)/2 twin weights against 0^n 1^n 2^n."""
    if p < 3 or any(p % q == 0 for q in range(2, p) if q * q <= p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 3:
        raise ValueError(f"{p} is not congruent to 3 mod 4")
    group = Group((p,))
    n = (p - 1) // 2
    k = (n - 1) // 2
    w = weight_seq(group, [1] * k + [-1] * k + [0])
    mult = [0] * p
    for i in (0, 1, 2):
        mult[i] = n
    s = GSequence(group, tuple(mult))
    return Instance(group, seq=s, weights=w, extra={"p": p})


def example2_instance(r: int) -> Instance:
    """Power-of-two instance: n=2^r-1 twin weights against 0^n 1^n."""
    if r < 1:
        raise ValueError("r must be positive")
    m = 2 ** r
    group = Group((m,))
    n = m - 1
    k = (n - 1) // 2
    w = weight_seq(group, [1] * k + [-1] * k + [0])
    mult = [0] * m
    mult[0] = n
    mult[1] = n
    s = GSequence(group, tuple(mult))
    return Instance(group, seq=s, weights=w, extra={"r": r})


# ---------------------------------------------------------------------------
# statement checkers


def _check_ex1(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    p = group.order
    if group.rank != 1 or any(p % q == 0 for q in range(2, p) if q * q <= p):
        return _hyp_fail("group is not of prime order")
    if p % 4 != 3 or p < 7:
        return _hyp_fail("order must be a prime congruent to 3 mod 4, at least 7")
    ref = example1_instance(p)
    if s.mult != ref.seq.mult or sorted(x % p for x in w.raw) != sorted(x % p for x in ref.weights.raw):
        return _hyp_fail("not the twin-weight triple-support shape for this prime")
    full = sigma_n(w, s, w.length)
    missing = {(p - 1) // 2, (p + 1) // 2}
    expected = group.full_mask & ~sum(1 << i for i in missing)
    if full.bits != expected:
        return Verdict(Status.FAILS, {"sum_set": full, "expected_missing": sorted(missing)})
    if contained_subgroup(full) is not None:
        return Verdict(Status.FAILS, {"sum_set": full, "reason": "a nontrivial subgroup fits"})
    return Verdict(Status.HOLDS, {"sum_set": full, "missing": sorted(missing)})


def _check_ex2(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    m = group.order
    if group.rank != 1 or m & (m - 1) or m < 4:
        return _hyp_fail("group must be cyclic of order 2^r with r >= 2")
    r = m.bit_length() - 1
    ref = example2_instance(r)
    if s.mult != ref.seq.mult or sorted(x % m for x in w.raw) != sorted(x % m for x in ref.weights.raw):
        return _hyp_fail("not the twin-weight double-support shape for this order")
    full = sigma_n(w, s, w.length)
    expected = group.full_mask & ~(1 << (m // 2))
    if full.bits != expected:
        return Verdict(Status.FAILS, {"sum_set": full, "expected_missing": [m // 2]})
    if contained_subgroup(full) is not None:
        return Verdict(Status.FAILS, {"sum_set": full, "reason": "a nontrivial subgroup fits"})
    return Verdict(Status.HOLDS, {"sum_set": full, "missing": [m // 2]})


def _davenport_or_none(group: Group, caps: SearchCaps) -> int | None:
    try:
        return davenport(group, cap=caps.davenport)
    except GroupTooLarge:
        return None


def _check_gao_coset(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True)
    group, s = inst.group, inst.seq
    d = _davenport_or_none(group, caps)
    if d is None:
        return _capped("Davenport constant above cap")
    if s.length < group.order + d - 1:
        return _hyp_fail("sequence shorter than |G| + D(G) - 1")
    table = sums_by_count(s)
    if table[group.order] == group.full_mask:
        return Verdict(Status.HOLDS, {"disjunct": "i"})
    hit = coset_condition(s, cap=caps.subgroups)
    if hit is not None:
        rep, sub = hit
        return Verdict(Status.HOLDS, {"disjunct": "ii", "coset_rep": rep, "subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": GSet(group, table[group.order])})


def _check_gao_dstar(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True)
    group, s = inst.group, inst.seq
    if s.length < group.order + dstar(group):
        return _hyp_fail("sequence shorter than |G| + d*(G)")
    table = sums_by_count(s)
    if table[group.order] == group.full_mask:
        return Verdict(Status.HOLDS, {"disjunct": "i"})
    hit = coset_condition(s, cap=caps.subgroups)
    if hit is not None:
        rep, sub = hit
        return Verdict(Status.HOLDS, {"disjunct": "ii", "coset_rep": rep, "subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": GSet(group, table[group.order])})


def _check_wegz(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    if w.length < 1:
        return _hyp_fail("weights are empty")
    if sum(w.raw) % group.exponent:
        return _hyp_fail("weight total not divisible by the exponent")
    if s.length < w.length + group.order - 1:
        return _hyp_fail("sequence shorter than |W| + |G| - 1")
    full = sigma_n(w, s, w.length)
    if full.contains_index(0):
        return Verdict(Status.HOLDS, {})
    return Verdict(Status.FAILS, {"sum_set": full})


def _subgroup_conjecture_hyp(inst: Instance) -> str | None:
    """Shared hypothesis block: length bounds, zero total, near-unit weights."""
    group, s, w = inst.group, inst.seq, inst.weights
    m = group.order
    if w.length < 2:
        return "needs |W| >= 2 so that |W| + |G| - 1 >= |G| + 1"
    if s.length < w.length + m - 1:
        return "sequence shorter than |W| + |G| - 1"
    if sum(w.raw) % m:
        return "weight total not divisible by the group order"
    if max(s.mult) > w.length:
        return "maximum multiplicity exceeds |W|"
    if _nonunit_count(w.raw, m) > 1:
        return "more than one weight shares a factor with the group order"
    return None


def _twin_weight_pattern(inst: Instance) -> int | None:
    """x such that the weights are x and -x in equal numbers plus one zero,
    with two-point support, |W| = |G| - 1, and G cyclic of 2-power order."""
    group, s, w = inst.group, inst.seq, inst.weights
    m = group.order
    if len(s.support_indices()) != 2:
        return None
    if w.length != m - 1:
        return None
    if group.rank != 1 or m & (m - 1):
        return None
    k = (w.length - 1) // 2
    counts = Counter(x % m for x in w.raw)
    for x in range(1, m):
        want: Counter = Counter({0: 1})
        want[x] += k
        want[(-x) % m] += k
        if counts == want:
            return x
    return None


def _subgroup_in_full_sum(inst: Instance) -> tuple[Subgroup | None, GSet | None]:
    """(subgroup, exact sum set or None) for the |W|-term weighted sums.

    First tries one balanced setpartition: its positional weighted block sum
    is a subset of the full sum set, so finding a subgroup there is already
    conclusive and skips the exact computation.
    """
    group, s, w = inst.group, inst.seq, inst.weights
    n = w.length
    if has_setpartition(s, n):
        part = balanced_setpartition(s, n)
        res = sorted(w.residues)
        quick = _positional_wsum(zip(res, part.blocks))
        sub = contained_subgroup(quick)
        if sub is not None:
            return sub, None
    full = sigma_n(w, s, n)
    return contained_subgroup(full), full


def _check_conj_hamidoune(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    reason = _subgroup_conjecture_hyp(inst)
    if reason:
        return _hyp_fail(reason)
    sub, full = _subgroup_in_full_sum(inst)
    if sub is not None:
        return Verdict(Status.HOLDS, {"subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_ham_char(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    reason = _subgroup_conjecture_hyp(inst)
    if reason:
        return _hyp_fail(reason)
    if 2 * inst.weights.length < inst.group.order:
        return _hyp_fail("needs |W| >= |G| / 2")
    sub, full = _subgroup_in_full_sum(inst)
    if sub is not None:
        return Verdict(Status.HOLDS, {"disjunct": "i", "subgroup": sub})
    x = _twin_weight_pattern(inst)
    if x is not None:
        return Verdict(Status.HOLDS, {"disjunct": "ii", "x": x})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_ham_var(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    e = group.exponent
    if w.length < 1:
        return _hyp_fail("weights are empty")
    if s.length < w.length + group.order - 1:
        return _hyp_fail("sequence shorter than |W| + |G| - 1")
    if sum(w.raw) % e:
        return _hyp_fail("weight total not divisible by the exponent")
    if max(s.mult) > w.length:
        return _hyp_fail("maximum multiplicity exceeds |W|")
    if w.length - _nonunit_count(w.raw, e) < dstar(group):
        return _hyp_fail("fewer than d*(G) weights coprime to the exponent")
    sub, full = _subgroup_in_full_sum(inst)
    if sub is not None:
        return Verdict(Status.HOLDS, {"subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_ordaz_quiroz(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    m = group.order
    d = _davenport_or_none(group, caps)
    if d is None:
        return _capped("Davenport constant above cap")
    if w.length != m:
        return _hyp_fail("needs |W| = |G|")
    if _nonunit_count(w.raw, m):
        return _hyp_fail("weights must all be coprime to the group order")
    if sum(w.raw) % m:
        return _hyp_fail("weight total not divisible by the group order")
    if s.length != m + d - 1:
        return _hyp_fail("needs |S| = |G| + D(G) - 1")
    full = sigma_n(w, s, m)
    if full.bits == group.full_mask:
        return Verdict(Status.HOLDS, {"disjunct": "i"})
    hit = coset_condition(s, cap=caps.subgroups)
    if hit is not None:
        rep, sub = hit
        return Verdict(Status.HOLDS, {"disjunct": "ii", "coset_rep": rep, "subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_specialcase(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    m = group.order
    d = _davenport_or_none(group, caps)
    if d is None:
        return _capped("Davenport constant above cap")
    if w.length != m:
        return _hyp_fail("needs |W| = |G|")
    if _nonunit_count(w.raw, m):
        return _hyp_fail("weights must all be coprime to the group order")
    if s.length < m + d - 1:
        return _hyp_fail("sequence shorter than |G| + D(G) - 1")
    h = max(s.mult)
    if not d - 1 <= h <= m:
        return _hyp_fail("needs D(G) - 1 <= h(S) <= |G|")
    full = sigma_n(w, s, m)
    if full.bits == group.full_mask:
        return Verdict(Status.HOLDS, {"disjunct": "i"})
    hit = coset_condition(s, cap=caps.subgroups)
    if hit is not None:
        rep, sub = hit
        return Verdict(Status.HOLDS, {"disjunct": "ii", "coset_rep": rep, "subgroup": sub})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_spud(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True, n=True)
    group, s, w, h = inst.group, inst.seq, inst.weights, inst.n
    if _nonunit_count(w.raw, group.exponent):
        return _hyp_fail("weights must all be coprime to the exponent")
    if h < max(max(s.mult), dstar(group)):
        return _hyp_fail("n below max(h(S), d*(G))")
    if h > s.length - group.order + 1:
        return _hyp_fail("n above |S| - |G| + 1")
    if w.length < h:
        return _hyp_fail("fewer weights than n")
    hit = coset_condition(s, cap=caps.subgroups)
    if hit is not None:
        rep, sub = hit
        return _hyp_fail("a coset holds all but at most |G/H| - 2 terms")
    full = sigma_n(w, s, h)
    if full.bits == group.full_mask:
        return Verdict(Status.HOLDS, {})
    return Verdict(Status.FAILS, {"sum_set": full})


def _check_david(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, seq=True, weights=True)
    group, s, w = inst.group, inst.seq, inst.weights
    d = _davenport_or_none(group, caps)
    if d is None:
        return _capped("Davenport constant above cap")
    if w.length < 1 or s.length < 1:
        return _hyp_fail("weights and sequence must be nonempty")
    if s.length < w.length + d - 1:
        return _hyp_fail("sequence shorter than |W| + D(G) - 1")
    h = max(s.mult)
    if s.mult[0] != h or h < d - 1:
        return _hyp_fail("needs multiplicity of 0 equal to h(S) and at least D(G) - 1")
    every = sigma_all(w, s)
    top = sigma_n(w, s, min(w.length, s.length))
    if every.bits == top.bits:
        return Verdict(Status.HOLDS, {})
    return Verdict(Status.FAILS, {"all_lengths": every, "full_length": top})


def _check_dstar_subadd(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, extra=("subgroup",))
    group = inst.group
    sub: Subgroup = inst.extra["subgroup"]
    lhs = dstar_of_factors(sub.iso_type) + dstar_of_factors(quotient_iso_type(group, sub))
    rhs = dstar(group)
    if lhs <= rhs:
        return Verdict(Status.HOLDS, {"lhs": lhs, "rhs": rhs})
    return Verdict(Status.FAILS, {"lhs": lhs, "rhs": rhs, "subgroup": sub})


def _check_split(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, weights=True, extra=("set", "base_index"))
    group, w = inst.group, inst.weights
    a: GSet = inst.extra["set"]
    a0: int = inst.extra["base_index"]
    if a.size < 2:
        return _hyp_fail("set must have at least 2 elements")
    if not a.contains_index(a0):
        return _hyp_fail("base point must lie in the set")
    shifted = [group.index_add(i, group.index_neg(a0)) for i in a.indices()]
    sub = subgroup_generated(group, [group.element_from_index(i) for i in shifted])
    d = sub.dstar()
    if w.length != d:
        return _hyp_fail("needs exactly d*(H) weights for H generated by the shifted set")
    if any(gcd(x, sub.exponent) != 1 for x in w.raw):
        return _hyp_fail("weights must all be coprime to exp(H)")
    total = _positional_wsum((x, a) for x in w.raw)
    shift = group.index_scalar(sum(w.raw) % group.exponent, a0)
    target = group.translate_mask(sub.mask, shift)
    if total.bits == target:
        return Verdict(Status.HOLDS, {"subgroup": sub, "coset_rep": shift})
    return Verdict(Status.FAILS, {"subgroup": sub, "got": total,
                                  "expected": GSet(group, target)})


def _check_dual(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, extra=("subgroup",))
    group = inst.group
    sub: Subgroup = inst.extra["subgroup"]
    try:
        lattice = all_subgroups(group, cap=caps.subgroups)
    except CapExceeded:
        return _capped("subgroup lattice above cap")
    want_k = quotient_iso_type(group, sub)
    want_q = sub.iso_type
    for cand in lattice:
        if cand.iso_type == want_k and quotient_iso_type(group, cand) == want_q:
            return Verdict(Status.HOLDS, {"partner": cand})
    return Verdict(Status.FAILS, {"subgroup": sub})


def check_self_duality(group: Group, caps: SearchCaps = DEFAULT_CAPS) -> Verdict:
    """For every subgroup H, some K has type(K) = type(G/H) and type(G/K) = type(H)."""
    try:
        lattice = all_subgroups(group, cap=caps.subgroups)
    except CapExceeded:
        return _capped("subgroup lattice above cap")
    typed = [(sub, sub.iso_type, quotient_iso_type(group, sub)) for sub in lattice]
    for sub, own, quo in typed:
        ok = any(c_own == quo and c_quo == own for _, c_own, c_quo in typed)
        if not ok:
            return Verdict(Status.FAILS, {"subgroup": sub})
    return Verdict(Status.HOLDS, {"subgroups": len(typed)})


def _check_align(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, extra=("subgroup",))
    group = inst.group
    sub: Subgroup = inst.extra["subgroup"]
    ambient = group.invariant_factors
    padded = sub.padded_iso_type()
    bad = [i for i, (a, b) in enumerate(zip(padded, ambient)) if b % a]
    if bad:
        return Verdict(Status.FAILS, {"subgroup": sub, "positions": bad})
    # per-prime refinement: aligned valuations never exceed the ambient ones,
    # and an equal factor pins every prime's valuation
    for i, (a, b) in enumerate(zip(padded, ambient)):
        va, vb = _prime_valuations(a), _prime_valuations(b)
        for p, k in va.items():
            if k > vb.get(p, 0):
                return Verdict(Status.FAILS, {"subgroup": sub, "prime": p, "position": i})
        if a == b and va != vb:
            return Verdict(Status.FAILS, {"subgroup": sub, "position": i})
    return Verdict(Status.HOLDS, {"padded": list(padded)})


def _check_pigeonhole(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, extra=("set_a", "set_b"))
    a: GSet = inst.extra["set_a"]
    b: GSet = inst.extra["set_b"]
    group = inst.group
    if a.is_empty() or b.is_empty():
        return _hyp_fail("both sets must be nonempty")
    if a.size + b.size < group.order + 1:
        return _hyp_fail("needs |A| + |B| >= |G| + 1")
    total = sumset(a, b)
    if total.bits == group.full_mask:
        return Verdict(Status.HOLDS, {})
    return Verdict(Status.FAILS, {"sum_set": total})


def _ap_difference_indices(a: GSet) -> set[int]:
    """Every nonzero d such that A is a progression with difference d.

    A qualifies for d when it sits inside one coset of the cyclic group
    generated by d and its positions along the d-cycle form a contiguous arc.
    A set can qualify for several unrelated differences (wrap-around
    progressions in small groups), so conclusions about a shared difference
    must intersect these sets rather than compare single canonical forms.
    """
    group = a.group
    idxs = a.indices()
    k = len(idxs)
    out: set[int] = set()
    for d in range(1, group.order):
        o = group.index_order(d)
        if k > o:
            continue
        pos = {}
        cur = idxs[0]
        for t in range(o):
            pos[cur] = t
            cur = group.index_add(cur, d)
        if any(i not in pos for i in idxs):
            continue
        ps = sorted(pos[i] for i in idxs)
        breaks = sum(1 for j in range(k) if (ps[(j + 1) % k] - ps[j]) % o != 1)
        if breaks <= 1:
            out.add(d)
    return out


def check_ap_structure(sets: list[GSet], caps: SearchCaps = DEFAULT_CAPS) -> Verdict:
    """Kneser-equality structure: the sets must be progressions with one
    common difference.

    Two hypothesis routes: n >= 3 spanning aperiodic-sum equality, or n = 2
    with one set of size exactly 2.  Either way every set must contain 0 and
    must not be quasi-periodic.
    """
    if len(sets) < 2:
        return _hyp_fail("needs at least two sets")
    group = sets[0].group
    if any(x.group != group for x in sets):
        return _hyp_fail("sets must share one group")
    if any(not x.contains_index(0) for x in sets):
        return _hyp_fail("every set must contain 0")
    if any(x.size < 2 for x in sets):
        return _hyp_fail("every set must have at least 2 elements")
    if any(stabilizer(x).quasi_period is not None for x in sets):
        return _hyp_fail("a set is quasi-periodic")
    n = len(sets)
    total: GSet | None = None
    for x in sets:
        total = x if total is None else sumset(total, x)
    equality = total.size == sum(x.size for x in sets) - n + 1
    if n == 2:
        if not any(x.size == 2 for x in sets):
            return _hyp_fail("the two-set route needs a set of size exactly 2")
        if not equality:
            return _hyp_fail("sum size must equal |A| + |B| - 1")
    else:
        if any(subgroup_generated(group, x.elements()).order != group.order for x in sets):
            return _hyp_fail("every set must generate the whole group")
        if stabilizer(total).periodic:
            return _hyp_fail("the sum of the sets must be aperiodic")
        if not equality:
            return _hyp_fail("sum size must equal the Kneser equality bound")
    diff_sets = [_ap_difference_indices(x) for x in sets]
    missing = [i for i, ds in enumerate(diff_sets) if not ds]
    if missing:
        return Verdict(Status.FAILS, {"not_progressions": missing})
    common = set.intersection(*diff_sets)
    if common:
        return Verdict(Status.HOLDS, {
            "difference": group.element_from_index(min(common))})
    return Verdict(Status.FAILS, {
        "difference_sets": [sorted(ds) for ds in diff_sets]})


def _check_ap_struct(inst: Instance, caps: SearchCaps) -> Verdict:
    _need(inst, extra=("sets",))
    return check_ap_structure(list(inst.extra["sets"]), caps)


# ---------------------------------------------------------------------------
# setpartition witness machinery


@dataclass(frozen=True)
class SetpartitionWitness:
    """Certificate data for a partition aligned to a subgroup.

    With C the common intersection of the translated blocks A_i + H:
    N = |C| / |H| and e = sum over blocks of |A_j| - |A_j intersect C|; the
    claimed size bound for the weighted block sum is ((N-1)n + e + 1)|H|.
    """

    subgroup: Subgroup
    partition: Setpartition
    n_common: int
    excess: int
    bound: int


def make_setpartition_witness(sub: Subgroup, partition: Setpartition) -> SetpartitionWitness:
    group = sub.group
    common = group.full_mask
    for block in partition.blocks:
        spread = 0
        for i in block.indices():
            spread |= _coset_mask(group, sub.mask, i)
        common &= spread
    n_common = common.bit_count() // sub.order
    excess = sum(block.size - (block.bits & common).bit_count()
                 for block in partition.blocks)
    n = len(partition.blocks)
    bound = ((n_common - 1) * n + excess + 1) * sub.order
    return SetpartitionWitness(sub, partition, n_common, excess, bound)


def _hyp_setpart(inst: Instance) -> str | None:
    group, s, w, n = inst.group, inst.seq, inst.weights, inst.n
    sprime: GSequence = inst.extra.get("sub_seq") or s
    if any(gcd(x, group.exponent) != 1 for x in w.raw):
        return "weights must all be coprime to the exponent"
    if w.length != n:
        return "needs exactly n weights"
    if n < dstar(group):
        return "needs n >= d*(G)"
    if not sprime.is_subsequence_of(s):
        return "designated subsequence is not contained in the sequence"
    if not max(sprime.mult) <= n <= sprime.length:
        return "needs h(S') <= n <= |S'|"
    return None


def _iter_assignments(w: WeightSeq, cap: int):
    return _distinct_perms(tuple(sorted(w.residues)), cap)


def _blocks_meet_coset(blocks, coset: int) -> bool:
    return all(block.bits & coset for block in blocks)


def _check_aligned_conclusion(inst: Instance, sub: Subgroup, caps: SearchCaps,
                              work: dict) -> Verdict | None:
    """Search S''/partition/assignment/coset satisfying clauses (a)-(d) for
    one fixed proper nontrivial subgroup.  None means nothing found."""
    group, s, w, n = inst.group, inst.seq, inst.weights, inst.n
    sprime: GSequence = inst.extra.get("sub_seq") or s
    d_h = sub.dstar()
    d_q = dstar_of_factors(quotient_iso_type(group, sub))
    tail_need = max(0, n - d_h - d_q)
    allowed_out = group.order // sub.order - 2
    if allowed_out < 0:
        return None
    reps = _coset_reps(group, sub.mask)
    subseq_seen = 0
    for mult2 in _sub_multisets(s.mult, sprime.length):
        if max(mult2) > n:
            continue
        subseq_seen += 1
        if subseq_seen > caps.subsequences:
            work["capped"] = True
            return None
        s2 = GSequence(group, mult2)
        removed = tuple(a - b for a, b in zip(s.mult, mult2))
        part_seen = 0
        for part in enum_setpartitions(s2, n, cap=caps.partitions + 1):
            part_seen += 1
            if part_seen > caps.partitions:
                work["capped"] = True
                break
            blocks = part.blocks
            for rep in reps:
                coset = _coset_mask(group, sub.mask, rep)
                if any(m and not (coset >> i) & 1 for i, m in enumerate(removed)):
                    continue
                if not _blocks_meet_coset(blocks, coset):
                    continue
                e_out = sum(m for i, m in enumerate(s.mult) if not (coset >> i) & 1)
                if e_out > allowed_out:
                    continue
                inside = [i for i, b in enumerate(blocks) if not (b.bits & ~coset)]
                if len(inside) < d_h or len(inside) - d_h < tail_need:
                    continue
                target_units = (e_out + 1) * sub.order
                asg_seen = 0
                for perm in _iter_assignments(w, caps.assignments + 1):
                    asg_seen += 1
                    if asg_seen > caps.assignments:
                        work["capped"] = True
                        break
                    total = _positional_wsum(zip(perm, blocks))
                    if total.size < target_units:
                        continue
                    # prefix: d*(H) blocks inside the coset whose weighted sum
                    # is exactly (sum of their weights)g + H
                    found_prefix = None
                    for combo in combinations(inside, d_h):
                        psum = _positional_wsum((perm[i], blocks[i]) for i in combo)
                        shift = group.index_scalar(
                            sum(perm[i] for i in combo) % group.exponent, rep)
                        if psum.bits == group.translate_mask(sub.mask, shift):
                            found_prefix = combo
                            break
                    if found_prefix is None:
                        continue
                    spw = make_setpartition_witness(sub, part)
                    return Verdict(Status.HOLDS, {
                        "disjunct": "ii",
                        "subgroup": sub,
                        "coset_rep": rep,
                        "partition": part,
                        "assignment": list(perm),
                        "prefix_blocks": list(found_prefix),
                        "outside_terms": e_out,
                        "common_blocks": spw.n_common,
                        "excess": spw.excess,
                        "size_bound": spw.bound,
                    })
    return None


def witness_search_setpartition(inst: Instance, caps: SearchCaps = DEFAULT_CAPS) -> Verdict:
    """Bounded search for the setpartition conclusion: a same-length
    subsequence with an n-setpartition whose weighted block sum is large
    (disjunct i) or aligned to a proper coset with clauses (a)-(d)
    (disjunct ii)."""
    _need(inst, seq=True, weights=True, n=True)
    reason = _hyp_setpart(inst)
    if reason:
        return _hyp_fail(reason)
    group, s, w, n = inst.group, inst.seq, inst.weights, inst.n
    sprime: GSequence = inst.extra.get("sub_seq") or s
    floor = min(group.order, sprime.length - n + 1)
    work: dict = {"capped": False}
    subseq_seen = 0
    for mult2 in _sub_multisets(s.mult, sprime.length):
        if max(mult2) > n:
            continue
        subseq_seen += 1
        if subseq_seen > caps.subsequences:
            work["capped"] = True
            break
        s2 = GSequence(group, mult2)
        part_seen = 0
        for part in enum_setpartitions(s2, n, cap=caps.partitions + 1):
            part_seen += 1
            if part_seen > caps.partitions:
                work["capped"] = True
                break
            asg_seen = 0
            for perm in _iter_assignments(w, caps.assignments + 1):
                asg_seen += 1
                if asg_seen > caps.assignments:
                    work["capped"] = True
                    break
                total = _positional_wsum(zip(perm, part.blocks))
                if total.size >= floor:
                    spw_sub = _trivial_or_full_subgroup(
                        group, full=total.bits == group.full_mask)
                    spw = make_setpartition_witness(spw_sub, part)
                    return Verdict(Status.HOLDS, {
                        "disjunct": "i",
                        "partition": part,
                        "assignment": list(perm),
                        "achieved": total.size,
                        "floor": floor,
                        "common_blocks": spw.n_common,
                        "excess": spw.excess,
                        "size_bound": spw.bound,
                    })
    try:
        lattice = all_subgroups(group, cap=caps.subgroups)
    except CapExceeded:
        return _capped("subgroup lattice above cap")
    for sub in lattice:
        if sub.is_trivial() or not sub.is_proper():
            continue
        verdict = _check_aligned_conclusion(inst, sub, caps, work)
        if verdict is not None:
            return verdict
    if work["capped"]:
        return _capped("search budget exhausted before a witness was found")
    return Verdict(Status.FAILS, {"floor": floor})


def _trivial_or_full_subgroup(group: Group, full: bool) -> Subgroup:
    if full:
        gens = [group.element_from_index(i) for i in range(1, group.order)]
        return subgroup_generated(group, gens)
    return subgroup_generated(group, [])


def _certificate_holds(group: Group, w_res: tuple[int, ...], s: GSequence,
                       sub: Subgroup, rep: int, t_mult: tuple[int, ...],
                       blocks: tuple[GSet, ...], need_left: int) -> bool:
    """Validity of one aligned-subgroup certificate against fixed weights."""
    d = sub.dstar()
    if len(blocks) != d or len(w_res) < d:
        return False
    coset = _coset_mask(group, sub.mask, rep)
    merged = [0] * group.order
    for b in blocks:
        for i in b.indices():
            merged[i] += 1
    if tuple(merged) != t_mult:
        return False
    if any(m and not (coset >> i) & 1 for i, m in enumerate(t_mult)):
        return False
    if any(a > b for a, b in zip(t_mult, s.mult)):
        return False
    psum = _positional_wsum(zip(w_res, blocks))
    shift = group.index_scalar(sum(w_res[:d]) % group.exponent, rep)
    if psum.bits != group.translate_mask(sub.mask, shift):
        return False
    left_in = sum((s.mult[i] - t_mult[i]) for i in range(group.order) if (coset >> i) & 1)
    return left_in >= need_left


def _larger_certificate_exists(inst: Instance, sub: Subgroup, caps: SearchCaps,
                               work: dict) -> bool:
    """Search any strictly larger subgroup admitting a certificate."""
    group, s, w, n = inst.group, inst.seq, inst.weights, inst.n
    sprime: GSequence = inst.extra.get("sub_seq") or s
    x = s.length - sprime.length
    try:
        lattice = all_subgroups(group, cap=caps.subgroups)
    except CapExceeded:
        work["capped"] = True
        return False
    for cand in lattice:
        if cand.mask == sub.mask or (cand.mask & sub.mask) != sub.mask:
            continue
        d = cand.dstar()
        if d > n:
            continue
        need_left = n - d + x
        for rep in _coset_reps(group, cand.mask):
            coset = _coset_mask(group, cand.mask, rep)
            in_coset = tuple(m if (coset >> i) & 1 else 0 for i, m in enumerate(s.mult))
            total_in = sum(in_coset)
            if total_in < d + need_left:
                continue
            tmax = total_in - need_left
            sub_seen = 0
            for tsize in range(d, tmax + 1):
                for t_mult in _sub_multisets(in_coset, tsize):
                    if max(t_mult) > d:
                        continue
                    sub_seen += 1
                    if sub_seen > caps.subsequences:
                        work["capped"] = True
                        return False
                    t_seq = GSequence(group, t_mult)
                    part_seen = 0
                    for part in enum_setpartitions(t_seq, d, cap=caps.partitions + 1):
                        part_seen += 1
                        if part_seen > caps.partitions:
                            work["capped"] = True
                            break
                        asg_seen = 0
                        for perm in _distinct_perms(tuple(sorted(w.residues)),
                                                    caps.assignments + 1, length=d):
                            asg_seen += 1
                            if asg_seen > caps.assignments:
                                work["capped"] = True
                                break
                            if _certificate_holds(group, perm, s, cand, rep,
                                                  t_mult, part.blocks, need_left):
                                return True
    return False


def check_max_subgroup_dichotomy(inst: Instance, caps: SearchCaps = DEFAULT_CAPS) -> Verdict:
    """Dichotomy for a supplied maximal certified subgroup.

    extra must carry the certificate: subgroup K, coset representative index,
    the partitioned subsequence (mult tuple), and its d*(K) blocks.  The
    certificate and K's maximality are verified first; then K = G demands an
    n-setpartition whose weighted block sum is all of G, and K < G demands
    the aligned conclusion with H = K.
    """
    _need(inst, seq=True, weights=True, n=True,
          extra=("subgroup", "coset_rep", "cert_seq", "cert_blocks"))
    reason = _hyp_setpart(inst)
    if reason:
        return _hyp_fail(reason)
    group, s, w, n = inst.group, inst.seq, inst.weights, inst.n
    sprime: GSequence = inst.extra.get("sub_seq") or s
    sub: Subgroup = inst.extra["subgroup"]
    rep: int = inst.extra["coset_rep"]
    cert_seq: GSequence = inst.extra["cert_seq"]
    blocks: tuple[GSet, ...] = tuple(inst.extra["cert_blocks"])
    if sub.is_trivial():
        return _hyp_fail("certificate subgroup must be nontrivial")
    x = s.length - sprime.length
    need_left = n - sub.dstar() + x
    if not _certificate_holds(group, tuple(w.residues), s, sub, rep,
                              cert_seq.mult, blocks, need_left):
        return _hyp_fail("certificate does not validate")
    work: dict = {"capped": False}
    if _larger_certificate_exists(inst, sub, caps, work):
        return _hyp_fail("a strictly larger subgroup also admits a certificate")
    if work["capped"]:
        return _capped("maximality search budget exhausted")
    if not sub.is_proper():
        # full group: some equal-length subsequence has an n-setpartition
        # whose weighted block sum covers G
        subseq_seen = 0
        for mult2 in _sub_multisets(s.mult, sprime.length):
            if max(mult2) > n:
                continue
            subseq_seen += 1
            if subseq_seen > caps.subsequences:
                return _capped("subsequence budget exhausted")
            s2 = GSequence(group, mult2)
            part_seen = 0
            for part in enum_setpartitions(s2, n, cap=caps.partitions + 1):
                part_seen += 1
                if part_seen > caps.partitions:
                    return _capped("partition budget exhausted")
                asg_seen = 0
                for perm in _distinct_perms(tuple(sorted(w.residues)), caps.assignments + 1):
                    asg_seen += 1
                    if asg_seen > caps.assignments:
                        return _capped("assignment budget exhausted")
                    total = _positional_wsum(zip(perm, part.blocks))
                    if total.bits == group.full_mask:
                        return Verdict(Status.HOLDS, {
                            "branch": "full",
                            "partition": part,
                            "assignment": list(perm),
                        })
        return Verdict(Status.FAILS, {"branch": "full"})
    verdict = _check_aligned_conclusion(inst, sub, caps, work)
    if verdict is not None:
        verdict.witness["branch"] = "proper"
        return verdict
    if work["capped"]:
        return _capped("aligned-conclusion search budget exhausted")
    return Verdict(Status.FAILS, {"branch": "proper", "subgroup": sub})


def _check_setpart_witness(inst: Instance, caps: SearchCaps) -> Verdict:
    return witness_search_setpartition(inst, caps)


def _check_setpart_maxk(inst: Instance, caps: SearchCaps) -> Verdict:
    return check_max_subgroup_dichotomy(inst, caps)


_CHECKERS: dict[StatementId, Callable[[Instance, SearchCaps], Verdict]] = {
    StatementId.EX1: _check_ex1,
    StatementId.EX2: _check_ex2,
    StatementId.THM_GAO_COSET: _check_gao_coset,
    StatementId.THM_WEGZ: _check_wegz,
    StatementId.CONJ_HAMIDOUNE: _check_conj_hamidoune,
    StatementId.CONJ_ORDAZ_QUIROZ: _check_ordaz_quiroz,
    StatementId.THM_HAM_CHAR: _check_ham_char,
    StatementId.LEM_DSTAR_SUBADD: _check_dstar_subadd,
    StatementId.LEM_SPLIT: _check_split,
    StatementId.PROP_DUAL: _check_dual,
    StatementId.PROP_ALIGN: _check_align,
    StatementId.THM_SETPART_WITNESS: _check_setpart_witness,
    StatementId.THM_SETPART_MAXK: _check_setpart_maxk,
    StatementId.PROP_PIGEONHOLE: _check_pigeonhole,
    StatementId.COR_GAO_DSTAR: _check_gao_dstar,
    StatementId.COR_SPUD: _check_spud,
    StatementId.LEM_DAVID: _check_david,
    StatementId.COR_SPECIALCASE: _check_specialcase,
    StatementId.COR_HAM_VAR: _check_ham_var,
    StatementId.AP_STRUCT: _check_ap_struct,
}

_ANCHORS: dict[StatementId, str] = {
    StatementId.EX1: (
        "over Z/p with p = 3 mod 4 prime, weights 1 and -1 each (n-1)/2 times plus one 0 "
        "against 0^n 1^n 2^n, n = (p-1)/2: the n-term weighted sums are Z/p minus "
        "{(p-1)/2, (p+1)/2}, so no nontrivial subgroup fits"),
    StatementId.EX2: (
        "over Z/2^r, weights 1 and -1 each (n-1)/2 times plus one 0 against 0^n 1^n, "
        "n = 2^r - 1: the n-term weighted sums miss exactly 2^(r-1), the unique "
        "involution, so no nontrivial subgroup fits"),
    StatementId.THM_GAO_COSET: (
        "|S| >= |G| + D(G) - 1 forces: the |G|-term subsums cover G, or some coset g+H "
        "holds all but at most |G/H| - 2 terms of S"),
    StatementId.THM_WEGZ: (
        "weight total divisible by exp(G) and |S| >= |W| + |G| - 1 force 0 into the "
        "|W|-term weighted sums"),
    StatementId.CONJ_HAMIDOUNE: (
        "|S| >= |W| + |G| - 1 >= |G| + 1, weight total divisible by |G|, h(S) <= |W|, "
        "all weights but at most one coprime to |G|: claimed to force a nontrivial "
        "subgroup inside the |W|-term weighted sums (false in general)"),
    StatementId.CONJ_ORDAZ_QUIROZ: (
        "all weights coprime to |G|, |W| = |G|, weight total divisible by |G|, "
        "|S| = |G| + D(G) - 1: claimed to force full coverage or the coset condition"),
    StatementId.THM_HAM_CHAR: (
        "under the subgroup-conjecture hypotheses with 2|W| >= |G|: a nontrivial "
        "subgroup lies in the |W|-term weighted sums, or |supp(S)| = 2, |W| = |G| - 1, "
        "G = Z/2^r, and the weights are x and -x in equal numbers plus one 0 mod |G|"),
    StatementId.LEM_DSTAR_SUBADD: (
        "d*(H) + d*(G/H) <= d*(G) for every subgroup H of G"),
    StatementId.LEM_SPLIT: (
        "for |A| >= 2, H generated by A - a0, and d*(H) weights coprime to exp(H): "
        "the positional weighted sum of A with itself is exactly (weight total)a0 + H"),
    StatementId.PROP_DUAL: (
        "every subgroup H admits a partner K with K of the type of G/H and G/K of the "
        "type of H"),
    StatementId.PROP_ALIGN: (
        "a subgroup's invariant factors, left-padded with 1s, divide the ambient "
        "factors position by position, and per prime the aligned valuations never "
        "exceed the ambient ones"),
    StatementId.THM_SETPART_WITNESS: (
        "unit weights, n >= d*(G), h(S') <= n <= |S'|: some equal-length subsequence "
        "has an n-setpartition whose weighted block sum reaches min(|G|, |S'| - n + 1) "
        "elements, or one aligned to a coset g+H with the four alignment clauses"),
    StatementId.THM_SETPART_MAXK: (
        "given a maximal certified subgroup K: K = G yields an n-setpartition whose "
        "weighted block sum is all of G; K < G yields the aligned conclusion with H = K"),
    StatementId.PROP_PIGEONHOLE: (
        "|A| + |B| >= |G| + 1 forces A + B = G"),
    StatementId.COR_GAO_DSTAR: (
        "|S| >= |G| + d*(G) forces: the |G|-term subsums cover G, or the coset "
        "condition"),
    StatementId.COR_SPUD: (
        "max(h(S), d*(G)) <= n <= |S| - |G| + 1, all weights coprime to exp(G), "
        "|W| >= n, and no coset holding all but at most |G/H| - 2 terms: the n-term "
        "weighted sums cover G"),
    StatementId.LEM_DAVID: (
        "multiplicity of 0 equal to h(S) and at least D(G) - 1, with "
        "|S| >= |W| + D(G) - 1: weighted sums of every length equal the |W|-term "
        "weighted sums"),
    StatementId.COR_SPECIALCASE: (
        "all weights coprime to |G|, |W| = |G|, |S| >= |G| + D(G) - 1, "
        "D(G) - 1 <= h(S) <= |G|: full coverage or the coset condition"),
    StatementId.COR_HAM_VAR: (
        "weight total divisible by exp(G), h(S) <= |W|, |S| >= |W| + |G| - 1, and at "
        "least d*(G) weights coprime to exp(G): a nontrivial subgroup lies in the "
        "|W|-term weighted sums"),
    StatementId.AP_STRUCT: (
        "three or more spanning, non-quasi-periodic sets containing 0 whose sum is "
        "aperiodic and meets the size equality are progressions with one common "
        "difference; likewise two sets when one has exactly 2 elements"),
}


def statement_anchor(sid: StatementId) -> str:
    return _ANCHORS[sid]


def check_instance(sid: StatementId, inst: Instance,
                   caps: SearchCaps = DEFAULT_CAPS) -> Verdict:
    """Evaluate one statement on one instance.

    Unmet hypotheses and exhausted budgets are verdict statuses, not errors;
    only genuinely malformed instances raise.
    """
    checker = _CHECKERS[sid]
    return checker(inst, caps)


# ---------------------------------------------------------------------------
# sweep domains and planning


@dataclass(frozen=True)
class SweepDomain:
    """Finite instance domain for a sweep.

    Exhaustive enumerators run over every group in groups crossed with every
    weight length in wlens; sequence lengths start at each statement's
    hypothesis threshold and stretch slen_extra further.  Sampled enumerators
    draw `samples` sequences per shard from a seeded generator.  When
    reduce_translation is set, sequence domains whose conclusion is
    translation-covariant keep one representative per translation orbit.
    """

    groups: tuple[Group, ...]
    wlens: tuple[int, ...] = ()
    slen_extra: int = 0
    samples: int = 200
    seed: int = 0
    set_size_max: int = 4
    reduce_translation: bool = True
    max_instances: int = 2_000_000
    subgroup_cap: int = 4096


@dataclass
class SweepPlan:
    shards: list[tuple[str, Callable[[], list[Instance]]]]
    estimate: int


@dataclass
class SweepReport:
    statement: StatementId
    domain: dict[str, Any]
    counts: dict[str, int]
    failures: list[tuple[Instance, Verdict]]
    flagged: list[tuple[Instance, Verdict]]
    anchor: str
    examined: int


_SEQ_POOL_CACHE: dict[tuple, tuple[tuple[int, ...], ...]] = {}
_LATTICE_CACHE: dict[tuple[Group, int], list[Subgroup]] = {}


def _subgroup_lattice(group: Group, cap: int) -> list[Subgroup]:
    key = (group, cap)
    got = _LATTICE_CACHE.get(key)
    if got is None:
        got = all_subgroups(group, cap=cap)
        _LATTICE_CACHE[key] = got
    return got


def _seq_pool(group: Group, size: int, hcap: int, reduced: bool) -> tuple[tuple[int, ...], ...]:
    key = (group, size, hcap, reduced)
    got = _SEQ_POOL_CACHE.get(key)
    if got is None:
        if reduced:
            _shift_tables(group)
            got = tuple(v for v in _mult_vectors(group.order, size, hcap)
                        if _is_canonical_translate(group, v))
        else:
            got = tuple(_mult_vectors(group.order, size, hcap))
        _SEQ_POOL_CACHE[key] = got
    return got


def _pool_estimate(group: Group, size: int, reduced: bool) -> int:
    raw = comb(group.order + size - 1, size)
    return max(1, raw // group.order) if reduced else raw


def _weight_lists(mod: int, size: int, *, zero_sum: int | None = None,
                  units_only: bool = False, max_nonunit: int | None = None,
                  min_units: int | None = None) -> list[tuple[int, ...]]:
    """Nondecreasing weight tuples over [0, mod) passing the given filters."""
    out = []
    for combo in combinations_with_replacement(range(mod), size):
        if zero_sum is not None and sum(combo) % zero_sum:
            continue
        nonunit = sum(1 for c in combo if gcd(c, mod) != 1)
        if units_only and nonunit:
            continue
        if max_nonunit is not None and nonunit > max_nonunit:
            continue
        if min_units is not None and size - nonunit < min_units:
            continue
        out.append(combo)
    return out


def _domain_dict(dom: SweepDomain, sampled: bool) -> dict[str, Any]:
    return {
        "groups": [format_group(g) for g in dom.groups],
        "wlens": list(dom.wlens),
        "slen_extra": dom.slen_extra,
        "samples": dom.samples if sampled else 0,
        "seed": dom.seed,
        "set_size_max": dom.set_size_max,
        "reduce_translation": dom.reduce_translation,
        "max_instances": dom.max_instances,
        "subgroup_cap": dom.subgroup_cap,
    }


def _seq_shards(dom: SweepDomain, weight_fn, slen_fn, hcap_fn, reduce_ok_fn) -> SweepPlan:
    """Shared planner for weights-cross-sequences statements.

    weight_fn(group, wlen) lists weight tuples; slen_fn(group, wlen) the base
    sequence length; hcap_fn(group, wlen) the multiplicity cap (None = no
    cap); reduce_ok_fn(group, wtuple) whether translation reduction is sound
    for that weight tuple.
    """
    shards: list[tuple[str, Callable[[], list[Instance]]]] = []
    estimate = 0
    jobs = []
    for group in dom.groups:
        for wlen in dom.wlens:
            base = slen_fn(group, wlen)
            if base is None:
                continue
            sizes = [base + extra for extra in range(dom.slen_extra + 1)]
            hcap = hcap_fn(group, wlen)
            for wtuple in weight_fn(group, wlen):
                reduced = dom.reduce_translation and reduce_ok_fn(group, wtuple)
                estimate += sum(_pool_estimate(group, size, reduced) for size in sizes)
                jobs.append((group, wtuple, sizes, hcap, reduced))
    for group, wtuple, sizes, hcap, reduced in jobs:
        for size in sizes:
            _seq_pool(group, size, hcap if hcap is not None else size, reduced)

    def make_factory(group: Group, wtuple: tuple[int, ...], sizes: list[int],
                     hcap: int | None, reduced: bool):
        def factory() -> list[Instance]:
            w = weight_seq(group, wtuple)
            out = []
            for size in sizes:
                pool = _seq_pool(group, size, hcap if hcap is not None else size, reduced)
                for mult in pool:
                    out.append(Instance(group, seq=GSequence(group, mult), weights=w))
            return out
        return factory

    for group, wtuple, sizes, hcap, reduced in jobs:
        key = f"{format_group(group)}|w={','.join(map(str, wtuple))}"
        shards.append((key, make_factory(group, wtuple, sizes, hcap, reduced)))
    return SweepPlan(shards, estimate)


def _plan_conj_hamidoune(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.order, k, zero_sum=g.order, max_nonunit=1),
        slen_fn=lambda g, k: k + g.order - 1 if k >= 2 else None,
        hcap_fn=lambda g, k: k,
        reduce_ok_fn=lambda g, wt: True,
    )


def _plan_ham_char(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.order, k, zero_sum=g.order, max_nonunit=1),
        slen_fn=lambda g, k: k + g.order - 1 if k >= 2 and 2 * k >= g.order else None,
        hcap_fn=lambda g, k: k,
        reduce_ok_fn=lambda g, wt: True,
    )


def _plan_ham_var(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(
            g.exponent, k, zero_sum=g.exponent, min_units=dstar(g)),
        slen_fn=lambda g, k: k + g.order - 1,
        hcap_fn=lambda g, k: k,
        reduce_ok_fn=lambda g, wt: True,
    )


def _plan_wegz(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.exponent, k, zero_sum=g.exponent),
        slen_fn=lambda g, k: k + g.order - 1,
        hcap_fn=lambda g, k: None,
        reduce_ok_fn=lambda g, wt: True,
    )


def _plan_ordaz_quiroz(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.order, g.order, zero_sum=g.order,
                                             units_only=True) if k == g.order else [],
        slen_fn=lambda g, k: g.order + davenport(g) - 1,
        hcap_fn=lambda g, k: None,
        reduce_ok_fn=lambda g, wt: True,
    )


def _plan_specialcase(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.order, g.order,
                                             units_only=True) if k == g.order else [],
        slen_fn=lambda g, k: g.order + davenport(g) - 1,
        hcap_fn=lambda g, k: g.order,
        reduce_ok_fn=lambda g, wt: sum(wt) % g.exponent == 0,
    )


def _plan_spud(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.exponent, k, units_only=True)
        if k >= dstar(g) else [],
        slen_fn=lambda g, k: k + g.order - 1,
        hcap_fn=lambda g, k: k,
        reduce_ok_fn=lambda g, wt: sum(wt) % g.exponent == 0,
    )


def _plan_david(dom: SweepDomain) -> SweepPlan:
    shards: list[tuple[str, Callable[[], list[Instance]]]] = []
    estimate = 0
    jobs = []
    for group in dom.groups:
        d = davenport(group)
        for wlen in dom.wlens:
            sizes = [wlen + d - 1 + extra for extra in range(dom.slen_extra + 1)]
            wlists = _weight_lists(group.exponent, wlen)
            estimate += len(wlists) * sum(
                _pool_estimate(group, size, False) for size in sizes)
            jobs.append((group, d, wlen, sizes, wlists))

    def david_pool(group: Group, size: int, dmin: int) -> list[tuple[int, ...]]:
        out = []
        for h in range(dmin, size + 1):
            for rest in _mult_vectors(group.order - 1, size - h, h):
                out.append((h,) + rest)
        return out

    def make_factory(group: Group, d: int, sizes: list[int], wtuple: tuple[int, ...]):
        def factory() -> list[Instance]:
            w = weight_seq(group, wtuple)
            out = []
            for size in sizes:
                for mult in david_pool(group, size, d - 1):
                    out.append(Instance(group, seq=GSequence(group, mult), weights=w))
            return out
        return factory

    for group, d, wlen, sizes, wlists in jobs:
        for wtuple in wlists:
            key = f"{format_group(group)}|w={','.join(map(str, wtuple))}"
            shards.append((key, make_factory(group, d, sizes, wtuple)))
    return SweepPlan(shards, estimate)


def _plan_unweighted_sampled(slen_fn):
    def plan(dom: SweepDomain) -> SweepPlan:
        shards = []
        estimate = 0
        for group in dom.groups:
            size = slen_fn(group) + dom.slen_extra
            estimate += dom.samples

            def make_factory(group: Group = group, size: int = size):
                def factory() -> list[Instance]:
                    rng = random.Random(f"{dom.seed}:{format_group(group)}:unweighted")
                    out = []
                    for _ in range(dom.samples):
                        mult = [0] * group.order
                        for idx in rng.choices(range(group.order), k=size):
                            mult[idx] += 1
                        out.append(Instance(group, seq=GSequence(group, tuple(mult))))
                    return out
                return factory

            shards.append((format_group(group), make_factory()))
        return SweepPlan(shards, estimate)
    return plan


def _plan_subgroup_instances(dom: SweepDomain) -> SweepPlan:
    shards = []
    estimate = 0
    for group in dom.groups:
        lattice = _subgroup_lattice(group, dom.subgroup_cap)
        estimate += len(lattice)

        def make_factory(group: Group = group, lattice=lattice):
            def factory() -> list[Instance]:
                return [Instance(group, extra={"subgroup": sub}) for sub in lattice]
            return factory

        shards.append((format_group(group), make_factory()))
    return SweepPlan(shards, estimate)


def _plan_split(dom: SweepDomain) -> SweepPlan:
    shards = []
    estimate = 0
    for group in dom.groups:
        for k in range(2, dom.set_size_max + 1):
            if k > group.order:
                continue
            for rest in combinations(range(1, group.order), k - 1):
                indices = (0,) + rest
                sub = subgroup_generated(
                    group, [group.element_from_index(i) for i in indices])
                d = sub.dstar()
                units = [u for u in range(1, sub.exponent + 1)
                         if gcd(u, sub.exponent) == 1]
                exhaustive = len(units) ** d <= 10_000
                count = (comb(len(units) + d - 1, d) if exhaustive else dom.samples)
                estimate += count

                def make_factory(group: Group = group, indices=indices,
                                 units=tuple(units), d: int = d,
                                 exhaustive: bool = exhaustive):
                    def factory() -> list[Instance]:
                        a = gset(group, [group.element_from_index(i) for i in indices])
                        extra = {"set": a, "base_index": 0}
                        out = []
                        if exhaustive:
                            for wt in combinations_with_replacement(units, d):
                                out.append(Instance(
                                    group, weights=weight_seq(group, wt), extra=extra))
                        else:
                            tag = ",".join(map(str, indices))
                            rng = random.Random(
                                f"{dom.seed}:{format_group(group)}:{tag}:split")
                            for _ in range(dom.samples):
                                wt = tuple(sorted(rng.choices(units, k=d)))
                                out.append(Instance(
                                    group, weights=weight_seq(group, wt), extra=extra))
                        return out
                    return factory

                key = f"{format_group(group)}|A={','.join(map(str, indices))}"
                shards.append((key, make_factory()))
    return SweepPlan(shards, estimate)


def _plan_pigeonhole(dom: SweepDomain) -> SweepPlan:
    shards = []
    estimate = 0
    for group in dom.groups:
        total = (1 << group.order) - 1
        estimate += (total * (total + 1)) // 2

        def make_factory(group: Group = group):
            def factory() -> list[Instance]:
                m = group.order
                out = []
                for abits in range(1, 1 << m):
                    asize = abits.bit_count()
                    for bbits in range(abits, 1 << m):
                        if asize + bbits.bit_count() < m + 1:
                            continue
                        out.append(Instance(group, extra={
                            "set_a": GSet(group, abits),
                            "set_b": GSet(group, bbits)}))
                return out
            return factory

        shards.append((format_group(group), make_factory()))
    return SweepPlan(shards, estimate)


def _plan_ap_struct(dom: SweepDomain) -> SweepPlan:
    shards = []
    estimate = 0
    for group in dom.groups:
        masks = [b for b in range(1, 1 << group.order) if b & 1 and b.bit_count() >= 2]
        estimate += len(masks) * (len(masks) + 1) // 2

        def make_factory(group: Group = group, masks=tuple(masks)):
            def factory() -> list[Instance]:
                out = []
                for i, abits in enumerate(masks):
                    for bbits in masks[i:]:
                        out.append(Instance(group, extra={
                            "sets": (GSet(group, abits), GSet(group, bbits))}))
                return out
            return factory

        shards.append((format_group(group), make_factory()))
    return SweepPlan(shards, estimate)


def _plan_ex1(dom: SweepDomain) -> SweepPlan:
    shards = []
    for group in dom.groups:
        p = group.order
        if group.rank != 1 or p % 4 != 3 or p < 7:
            continue
        if any(p % q == 0 for q in range(2, p) if q * q <= p):
            continue

        def make_factory(p: int = p):
            def factory() -> list[Instance]:
                return [example1_instance(p)]
            return factory

        shards.append((format_group(group), make_factory()))
    return SweepPlan(shards, len(shards))


def _plan_ex2(dom: SweepDomain) -> SweepPlan:
    shards = []
    for group in dom.groups:
        m = group.order
        if group.rank != 1 or m < 4 or m & (m - 1):
            continue

        def make_factory(r: int = m.bit_length() - 1):
            def factory() -> list[Instance]:
                return [example2_instance(r)]
            return factory

        shards.append((format_group(group), make_factory()))
    return SweepPlan(shards, len(shards))


def _plan_setpart_witness(dom: SweepDomain) -> SweepPlan:
    return _seq_shards(
        dom,
        weight_fn=lambda g, k: _weight_lists(g.exponent, k, units_only=True)
        if k >= dstar(g) else [],
        slen_fn=lambda g, k: k,
        hcap_fn=lambda g, k: k,
        reduce_ok_fn=lambda g, wt: False,
    )


def _with_n_equal_wlen(plan_fn):
    """Wrap a planner so each produced instance carries n = |W|."""
    def plan(dom: SweepDomain) -> SweepPlan:
        base = plan_fn(dom)
        shards = []
        for key, factory in base.shards:
            def make(factory=factory):
                def wrapped() -> list[Instance]:
                    return [
                        Instance(i.group, seq=i.seq, weights=i.weights,
                                 n=i.weights.length, extra=i.extra)
                        for i in factory()]
                return wrapped
            shards.append((key, make()))
        return SweepPlan(shards, base.estimate)
    return plan


_PLANNERS: dict[StatementId, Callable[[SweepDomain], SweepPlan]] = {
    StatementId.EX1: _plan_ex1,
    StatementId.EX2: _plan_ex2,
    StatementId.THM_GAO_COSET: _plan_unweighted_sampled(
        lambda g: g.order + davenport(g) - 1),
    StatementId.THM_WEGZ: _plan_wegz,
    StatementId.CONJ_HAMIDOUNE: _plan_conj_hamidoune,
    StatementId.CONJ_ORDAZ_QUIROZ: _plan_ordaz_quiroz,
    StatementId.THM_HAM_CHAR: _plan_ham_char,
    StatementId.LEM_DSTAR_SUBADD: _plan_subgroup_instances,
    StatementId.LEM_SPLIT: _plan_split,
    StatementId.PROP_DUAL: _plan_subgroup_instances,
    StatementId.PROP_ALIGN: _plan_subgroup_instances,
    StatementId.THM_SETPART_WITNESS: _with_n_equal_wlen(_plan_setpart_witness),
    StatementId.PROP_PIGEONHOLE: _plan_pigeonhole,
    StatementId.COR_GAO_DSTAR: _plan_unweighted_sampled(
        lambda g: g.order + dstar(g)),
    StatementId.COR_SPUD: _with_n_equal_wlen(_plan_spud),
    StatementId.LEM_DAVID: _plan_david,
    StatementId.COR_SPECIALCASE: _plan_specialcase,
    StatementId.COR_HAM_VAR: _plan_ham_var,
    StatementId.AP_STRUCT: _plan_ap_struct,
}

_FLAGS: dict[StatementId, Callable[[Instance, Verdict], bool]] = {
    StatementId.THM_HAM_CHAR:
        lambda inst, v: v.status is Status.HOLDS and v.witness.get("disjunct") == "ii",
}


def sweepable_statements() -> list[StatementId]:
    return sorted(_PLANNERS, key=lambda sid: sid.value)


def sweep(sid: StatementId, dom: SweepDomain, threads: int = 1,
          caps: SearchCaps = DEFAULT_CAPS) -> SweepReport:
    """Run one statement over a whole domain.

    Shards are merged in enumeration order, so the report is byte-identical
    for any thread count.  Raises DomainTooLarge when the estimated instance
    count exceeds dom.max_instances.
    """
    planner = _PLANNERS.get(sid)
    if planner is None:
        raise MissingField(f"{sid.value} takes explicit instances, not sweep domains")
    plan = planner(dom)
    if plan.estimate > dom.max_instances:
        raise DomainTooLarge(
            f"estimated {plan.estimate} instances exceed the cap {dom.max_instances}")
    flag = _FLAGS.get(sid)

    def run_shard(item: tuple[str, Callable[[], list[Instance]]]):
        _, factory = item
        return [(inst, check_instance(sid, inst, caps)) for inst in factory()]

    if threads <= 1:
        chunks = [run_shard(item) for item in plan.shards]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run_shard, plan.shards))
    counts = {status.value: 0 for status in Status}
    failures: list[tuple[Instance, Verdict]] = []
    flagged: list[tuple[Instance, Verdict]] = []
    examined = 0
    for chunk in chunks:
        for inst, verdict in chunk:
            examined += 1
            counts[verdict.status.value] += 1
            if verdict.status is Status.FAILS:
                failures.append((inst, verdict))
            if flag is not None and flag(inst, verdict):
                flagged.append((inst, verdict))
    sampled = sid in (StatementId.THM_GAO_COSET, StatementId.COR_GAO_DSTAR,
                      StatementId.LEM_SPLIT)
    return SweepReport(
        statement=sid,
        domain=_domain_dict(dom, sampled),
        counts=counts,
        failures=failures,
        flagged=flagged,
        anchor=_ANCHORS[sid],
        examined=examined,
    )


# ---------------------------------------------------------------------------
# serialization


def _format_iso(factors: tuple[int, ...]) -> str:
    if not factors:
        return "c1"
    return "x".join(f"c{n}" for n in factors)


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, Status):
        return obj.value
    if isinstance(obj, StatementId):
        return obj.value
    if isinstance(obj, Group):
        return format_group(obj)
    if isinstance(obj, Element):
        return format_element(obj)
    if isinstance(obj, Subgroup):
        return {
            "iso": _format_iso(obj.iso_type),
            "elements": obj.indices(),
        }
    if isinstance(obj, GSet):
        return obj.indices()
    if isinstance(obj, GSequence):
        return format_sequence(obj)
    if isinstance(obj, WeightSeq):
        return format_weights(obj)
    if isinstance(obj, Setpartition):
        return [block.indices() for block in obj.blocks]
    if isinstance(obj, SetpartitionWitness):
        return {
            "subgroup": to_jsonable(obj.subgroup),
            "partition": to_jsonable(obj.partition),
            "n_common": obj.n_common,
            "excess": obj.excess,
            "bound": obj.bound,
        }
    if isinstance(obj, Verdict):
        return verdict_to_dict(obj)
    if isinstance(obj, Instance):
        return instance_to_dict(obj)
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items)
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    return {
        "group": format_group(inst.group),
        "seq": format_sequence(inst.seq) if inst.seq is not None else None,
        "weights": format_weights(inst.weights) if inst.weights is not None else None,
        "n": inst.n,
        "extra": to_jsonable(inst.extra),
    }


def verdict_to_dict(verdict: Verdict) -> dict[str, Any]:
    return {"status": verdict.status.value, "witness": to_jsonable(verdict.witness)}


def report_to_json(report: SweepReport) -> str:
    payload: dict[str, Any] = {
        "statement": report.statement.value,
        "domain": report.domain,
        "counts": {
            "holds": report.counts.get(Status.HOLDS.value, 0),
            "fails": report.counts.get(Status.FAILS.value, 0),
            "hyp_not_met": report.counts.get(Status.HYPOTHESIS_NOT_MET.value, 0),
            "undecided": report.counts.get(Status.UNDECIDED_CAPPED.value, 0),
        },
        "failures": [
            {"instance": instance_to_dict(inst), "verdict": verdict_to_dict(v)}
            for inst, v in report.failures
        ],
        "registry_anchor": report.anchor,
    }
    if report.statement in _FLAGS:
        payload["flagged"] = [
            {"instance": instance_to_dict(inst), "verdict": verdict_to_dict(v)}
            for inst, v in report.flagged
        ]
    return json.dumps(payload, sort_keys=True, indent=2)


def report_to_csv(report: SweepReport) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "statement", "group", "weights", "seq", "n",
                     "status", "detail"])
    for kind, rows in (("failure", report.failures), ("flagged", report.flagged)):
        for inst, verdict in rows:
            writer.writerow([
                kind,
                report.statement.value,
                format_group(inst.group),
                format_weights(inst.weights) if inst.weights is not None else "",
                format_sequence(inst.seq) if inst.seq is not None else "",
                inst.n if inst.n is not None else "",
                verdict.status.value,
                json.dumps(to_jsonable(verdict.witness), sort_keys=True),
            ])
    return buf.getvalue()
