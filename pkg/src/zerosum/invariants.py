"""Group invariants: d*, the Davenport constant, and the derived length bound.

d*(G) = sum (n_i - 1) over invariant factors.  D(G) is the least L such that
every length-L sequence over G has a nonempty zero-sum subsequence, computed
exactly as 1 plus the longest zero-sum-free sequence found by depth-first
search; d*(G) + 1 <= D(G) <= |G| always holds.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import GroupTooLarge
from .groups import Group, Subgroup
from .sequences import GSequence, seq_from_indices
from .verdict import Status, Verdict

__all__ = [
    "InvariantReport",
    "dstar",
    "dstar_of_factors",
    "davenport",
    "davenport_report",
    "check_davenport_bounds",
    "ell",
]

DAVENPORT_CAP = 32


def dstar_of_factors(factors) -> int:
    return sum(n - 1 for n in factors)


def dstar(group: Group | Subgroup) -> int:
    if isinstance(group, Subgroup):
        return dstar_of_factors(group.iso_type)
    return dstar_of_factors(group.invariant_factors)


def _longest_zero_sum_free(group: Group, first: int | None = None) -> tuple[int, list[int]]:
    """DFS over sorted nonzero-index multisets, tracking achievable subsums as a mask.

    A branch dies as soon as the identity becomes a subsum.  Additional-length
    pruning uses |subsums| growing by at least one per appended term.
    """
    order = group.order
    translate = group.translate_mask
    best_len = 0
    best_seq: list[int] = []

    def dfs(min_idx: int, sums: int, seq: list[int]) -> None:
        nonlocal best_len, best_seq
        if len(seq) > best_len:
            best_len = len(seq)
            best_seq = list(seq)
        if len(seq) + (order - 1) - sums.bit_count() <= best_len:
            return
        for g in range(min_idx, order):
            new = sums | translate(sums, g) | (1 << g)
            if new & 1:
                continue
            seq.append(g)
            dfs(g, new, seq)
            seq.pop()

    if first is None:
        dfs(1, 0, [])
    else:
        new = 1 << first
        if not new & 1:
            dfs(first, new, [first])
    return best_len, best_seq


@lru_cache(maxsize=None)
def _davenport_value(group: Group, cap: int) -> int:
    return davenport_report(group, cap=cap)[0]


def davenport(group: Group, cap: int = DAVENPORT_CAP, threads: int = 1) -> int:
    if threads > 1:
        return davenport_report(group, cap=cap, threads=threads)[0]
    return _davenport_value(group, cap)


def davenport_report(
    group: Group, cap: int = DAVENPORT_CAP, threads: int = 1
) -> tuple[int, GSequence]:
    """(D(G), witness): witness is a longest zero-sum-free sequence.

    Branch roots (first element choices) can be searched concurrently; the
    merge keeps the witness from the smallest first index among maxima, so the
    result is deterministic for any thread count.
    """
    if group.order > cap:
        raise GroupTooLarge(f"order {group.order} above Davenport cap {cap}")
    if group.order == 1:
        return 1, seq_from_indices(group, [])
    if threads <= 1:
        best_len, best_seq = _longest_zero_sum_free(group)
    else:
        firsts = list(range(1, group.order))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: _longest_zero_sum_free(group, f), firsts))
        best_len, best_seq = 0, []
        for ln, seq in results:
            if ln > best_len:
                best_len, best_seq = ln, seq
    return best_len + 1, seq_from_indices(group, best_seq)


def ell(group: Group, cap: int = DAVENPORT_CAP) -> int:
    """|G| + D(G) - 1, the classical threshold length for full-length sums."""
    return group.order + davenport(group, cap=cap) - 1


@dataclass(frozen=True)
class InvariantReport:
    group: Group
    dstar: int
    davenport: int | None
    ell: int | None
    witness_zsf: GSequence | None


def invariant_report(group: Group, cap: int = DAVENPORT_CAP) -> InvariantReport:
    ds = dstar(group)
    try:
        d, witness = davenport_report(group, cap=cap)
    except GroupTooLarge:
        return InvariantReport(group, ds, None, None, None)
    return InvariantReport(group, ds, d, group.order + d - 1, witness)


def check_davenport_bounds(group: Group, cap: int = DAVENPORT_CAP) -> Verdict:
    """d*(G) + 1 <= D(G) <= |G|, with the computed value as witness."""
    try:
        d, witness = davenport_report(group, cap=cap)
    except GroupTooLarge:
        return Verdict(Status.UNDECIDED_CAPPED, {"reason": f"order {group.order} above cap {cap}"})
    lo = dstar(group) + 1
    hi = group.order
    ok = lo <= d <= hi
    return Verdict(
        Status.HOLDS if ok else Status.FAILS,
        {"davenport": d, "lower": lo, "upper": hi, "witness_zsf": witness},
    )
