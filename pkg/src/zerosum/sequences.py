"""Sequences over a group (finite multisets) and their setpartitions.

A sequence is a multiplicity vector over the element index space.  An
n-setpartition splits a sequence into n nonempty blocks each containing no
repeated element; one exists exactly when max-multiplicity <= n <= length,
and then block sizes can always be balanced to differ by at most one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BadN, GroupMismatch, NoSetpartition, ParseError
from .groups import Element, Group, format_element, parse_element
from .setsum import GSet

__all__ = [
    "GSequence",
    "Setpartition",
    "SeqStats",
    "sequence",
    "seq_from_indices",
    "parse_sequence",
    "format_sequence",
    "seq_stats",
    "has_setpartition",
    "balanced_setpartition",
    "enum_setpartitions",
]


@dataclass(frozen=True)
class GSequence:
    """A finite multiset of group elements, as a multiplicity vector."""

    group: Group
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mult) != self.group.order:
            raise GroupMismatch("multiplicity vector length must equal the group order")
        if any(m < 0 for m in self.mult):
            raise ParseError("negative multiplicity")

    @cached_property
    def length(self) -> int:
        return sum(self.mult)

    def __len__(self) -> int:
        return self.length

    def multiplicity(self, g: Element) -> int:
        return self.mult[g.index]

    def support_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.mult) if m]

    def terms(self) -> list[int]:
        """All terms as indices, ascending, with multiplicity."""
        out = []
        for i, m in enumerate(self.mult):
            out.extend([i] * m)
        return out

    def translate(self, g: Element) -> "GSequence":
        new = [0] * self.group.order
        for i, m in enumerate(self.mult):
            if m:
                new[self.group.index_add(i, g.index)] = m
        return GSequence(self.group, tuple(new))

    def remove(self, other: "GSequence") -> "GSequence":
        """Multiset difference self - other; other must divide self."""
        if other.group != self.group:
            raise GroupMismatch("sequences over different groups")
        new = []
        for a, b in zip(self.mult, other.mult):
            if b > a:
                raise ParseError("not a subsequence")
            new.append(a - b)
        return GSequence(self.group, tuple(new))

    def is_subsequence_of(self, other: "GSequence") -> bool:
        return self.group == other.group and all(a <= b for a, b in zip(self.mult, other.mult))

    def __repr__(self) -> str:
        return format_sequence(self)


def sequence(group: Group, items) -> GSequence:
    """Build from (element, mult) pairs, elements, indices, or literal strings."""
    mult = [0] * group.order
    for item in items:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int) and (
            isinstance(item[0], (Element, str)) or group.rank == 1
        ):
            g, m = item
        else:
            g, m = item, 1
        if isinstance(g, Element):
            if g.group != group:
                raise GroupMismatch("element from another group")
            idx = g.index
        elif isinstance(g, str):
            idx = parse_element(group, g).index
        else:
            idx = int(g) % group.order if group.rank == 1 else int(g)
        mult[idx] += m
    return GSequence(group, tuple(mult))


def seq_from_indices(group: Group, indices) -> GSequence:
    mult = [0] * group.order
    for i in indices:
        mult[i] += 1
    return GSequence(group, tuple(mult))


def _split_top_level(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    return parts


def parse_sequence(group: Group, text: str) -> GSequence:
    """Parse ``0^3,1^3,2^3`` (or ``(0,1)^2,...`` for rank >= 2) into a sequence."""
    mult = [0] * group.order
    for part in _split_top_level(text.strip()):
        part = part.strip()
        if not part:
            raise ParseError(f"empty term in sequence literal {text!r}")
        if "^" in part:
            elt_text, _, mult_text = part.rpartition("^")
            try:
                m = int(mult_text)
            except ValueError as exc:
                raise ParseError(f"bad multiplicity in {part!r}") from exc
            if m < 0:
                raise ParseError(f"negative multiplicity in {part!r}")
        else:
            elt_text, m = part, 1
        mult[parse_element(group, elt_text).index] += m
    return GSequence(group, tuple(mult))


def format_sequence(seq: GSequence) -> str:
    parts = [
        f"{format_element(seq.group.element_from_index(i))}^{m}"
        for i, m in enumerate(seq.mult)
        if m
    ]
    return ",".join(parts)


@dataclass(frozen=True)
class SeqStats:
    length: int
    max_multiplicity: int
    support: GSet
    total: Element  # sum of all terms


def seq_stats(seq: GSequence) -> SeqStats:
    bits = 0
    acc = 0
    group = seq.group
    for i, m in enumerate(seq.mult):
        if m:
            bits |= 1 << i
            acc = group.index_add(acc, group.index_scalar(m, i))
    return SeqStats(
        length=seq.length,
        max_multiplicity=max(seq.mult) if seq.length else 0,
        support=GSet(group, bits),
        total=group.element_from_index(acc),
    )


@dataclass(frozen=True)
class Setpartition:
    """Unordered blocks, stored sorted by their index lists for canonical identity."""

    blocks: tuple[GSet, ...]

    def sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    def as_sequence(self) -> GSequence:
        group = self.blocks[0].group
        mult = [0] * group.order
        for b in self.blocks:
            for i in b.indices():
                mult[i] += 1
        return GSequence(group, tuple(mult))

    def __repr__(self) -> str:
        return "[" + " | ".join(repr(b) for b in self.blocks) + "]"


def _canonical_blocks(group: Group, blocks: list[list[int]]) -> Setpartition:
    key = sorted(sorted(b) for b in blocks)
    return Setpartition(tuple(GSet(group, sum(1 << i for i in b)) for b in key))


def has_setpartition(seq: GSequence, n: int) -> bool:
    """An n-setpartition exists iff max-multiplicity <= n <= |S|."""
    if n < 1:
        raise BadN(f"block count {n} < 1")
    if seq.length == 0:
        return False
    return max(seq.mult) <= n <= seq.length


def balanced_setpartition(seq: GSequence, n: int) -> Setpartition:
    """A deterministic n-setpartition with block sizes differing by at most one.

    Terms are sorted by descending multiplicity (ties by element index) and
    dealt cyclically; copies of one element are fewer than or equal to n and
    consecutive, so they land in distinct blocks.
    """
    if not has_setpartition(seq, n):
        raise NoSetpartition(
            f"no {n}-setpartition: need max multiplicity <= {n} <= length {seq.length}"
        )
    order = sorted(seq.support_indices(), key=lambda i: (-seq.mult[i], i))
    dealt = []
    for i in order:
        dealt.extend([i] * seq.mult[i])
    blocks: list[list[int]] = [[] for _ in range(n)]
    pos = 0
    for idx in dealt:
        tried = 0
        while idx in blocks[pos % n]:  # defensive; unreachable for a sorted deal
            pos += 1
            tried += 1
            if tried > n:
                raise NoSetpartition("deal failed to place a term")
        blocks[pos % n].append(idx)
        pos += 1
    sizes = sorted(len(b) for b in blocks)
    if sizes[-1] - sizes[0] > 1:
        raise NoSetpartition("deal produced unbalanced blocks")
    return _canonical_blocks(seq.group, blocks)


def enum_setpartitions(seq: GSequence, n: int, cap: int = 10_000):
    """Yield distinct n-setpartitions (up to block order), at most cap of them.

    Enumeration is exhaustive when the total count is within cap.  Block labels
    follow first appearance and copies of one element take strictly increasing
    labels; assignments that still collide (blocks tied on their first term)
    are deduplicated on the lexicographically sorted block form.
    """
    if n < 1:
        raise BadN(f"block count {n} < 1")
    terms = seq.terms()
    total = len(terms)
    if not has_setpartition(seq, n):
        return
    group = seq.group
    blocks: list[list[int]] = [[] for _ in range(n)]

    def rec(pos: int, used: int, min_block_for_same: int):
        remaining = total - pos
        if remaining < n - used:
            return  # not enough terms left to make every block nonempty
        if pos == total:
            yield _canonical_blocks(group, blocks)
            return
        idx = terms[pos]
        same_as_prev = pos > 0 and terms[pos - 1] == idx
        start = min_block_for_same if same_as_prev else 0
        limit = min(n, used + 1)  # next unused block only, in order
        for b in range(start, limit):
            blocks[b].append(idx)
            nxt_min = b + 1 if pos + 1 < total and terms[pos + 1] == idx else 0
            yield from rec(pos + 1, max(used, b + 1), nxt_min)
            blocks[b].pop()

    seen: set[tuple] = set()
    emitted = 0
    for part in rec(0, 0, 0):
        key = tuple(b.bits for b in part.blocks)
        if key in seen:
            continue
        seen.add(key)
        yield part
        emitted += 1
        if emitted >= cap:
            return
