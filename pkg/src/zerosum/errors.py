"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "ZerosumError",
    "EmptyFactors",
    "FactorBelowTwo",
    "NonDivisibleChain",
    "GroupTooLarge",
    "NotASubgroup",
    "EmptySet",
    "GroupMismatch",
    "KneserViolation",
    "NoSetpartition",
    "BadN",
    "LengthMismatch",
    "MissingField",
    "CapExceeded",
    "DomainTooLarge",
    "ParseError",
]


class ZerosumError(Exception):
    """Base class for all library errors."""


class EmptyFactors(ZerosumError):
    """Group construction was given an empty invariant-factor list."""


class FactorBelowTwo(ZerosumError):
    """An invariant factor smaller than 2 was supplied."""


class NonDivisibleChain(ZerosumError):
    """Invariant factors do not form a divisibility chain n1 | n2 | ... | nr."""


class GroupTooLarge(ZerosumError):
    """Requested computation exceeds the configured order cap."""


class NotASubgroup(ZerosumError):
    """An element set that is not closed under the group operation."""


class EmptySet(ZerosumError):
    """An operation that requires a nonempty set received an empty one."""


class GroupMismatch(ZerosumError):
    """Operands live in different groups."""


class KneserViolation(ZerosumError):
    """Sumset audit found |sum of projections| below the lower bound.

    This can only happen through an implementation bug, never through input.
    """


class NoSetpartition(ZerosumError):
    """No n-setpartition exists for the requested sequence and block count."""


class BadN(ZerosumError):
    """Term count n outside 1 <= n <= min(|W|, |S|)."""


class LengthMismatch(ZerosumError):
    """Weight sequence length does not match the number of blocks."""


class MissingField(ZerosumError):
    """A statement instance lacks a field its checker requires."""


class CapExceeded(ZerosumError):
    """A bounded search ran out of budget before reaching a decision."""


class DomainTooLarge(ZerosumError):
    """A sweep domain enumerates more instances than its configured cap."""


class ParseError(ZerosumError):
    """Malformed group, element, sequence or weight literal."""
