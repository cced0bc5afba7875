"""Weighted n-term subsequence sums against the brute-force oracle."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from zerosum import (
    BadN,
    GSequence,
    LengthMismatch,
    gset,
    make_group,
    parse_group,
    parse_sequence,
    parse_weights,
    partition_wsum,
    balanced_setpartition,
    sigma_all,
    sigma_from,
    sigma_n,
    sigma_upto,
    sums_by_count,
    w_dot,
    weight_seq,
)
from oracles import naive_sigma_n, naive_sigma_range

GROUPS = ["c2", "c3", "c4", "c5", "c6", "c2xc2", "c2xc4"]


def as_coords(g, a):
    return {e.coords for e in a.elements()}


def seq_coords(g, s):
    out = []
    for i, m in enumerate(s.mult):
        out.extend([g.element_from_index(i).coords] * m)
    return out


def test_parse_weights_keeps_raw_and_canonicalizes():
    g = make_group((6,))
    w = parse_weights(g, "1^2,-1^2,0^1")
    assert sorted(w.raw) == [-1, -1, 0, 1, 1]
    assert sorted(w.residues) == [0, 1, 1, 5, 5]
    assert w.length == 5
    assert w.total() == 0


def test_units_classification():
    g = make_group((6,))
    w = weight_seq(g, [1, 5, 2, 3])
    assert w.units == (True, True, False, False)  # 1 and 5 are coprime to 6


def test_sigma_frozen_example():
    g = make_group((7,))
    w = parse_weights(g, "1^1,-1^1,0^1")
    s = parse_sequence(g, "0^3,1^3,2^3")
    out = sigma_n(w, s, 3)
    assert out.indices() == [0, 1, 2, 5, 6]


def test_sigma_validates_n():
    g = make_group((5,))
    w = weight_seq(g, [1, 2])
    s = parse_sequence(g, "0^1,1^1,2^1")
    with pytest.raises(BadN):
        sigma_n(w, s, 0)
    with pytest.raises(BadN):
        sigma_n(w, s, 3)  # n exceeds |W|


def test_sigma_matches_oracle_exhaustive_tiny():
    g = make_group((4,))
    terms = [(0,), (1,), (1,), (2,)]
    s = parse_sequence(g, "0^1,1^2,2^1")
    for wraw in [(1,), (1, 3), (1, 2, 3), (0, 1, 1, 2)]:
        w = weight_seq(g, list(wraw))
        for n in range(1, min(len(wraw), 4) + 1):
            got = as_coords(g, sigma_n(w, s, n))
            want = naive_sigma_n((4,), list(wraw), terms, n)
            assert got == want


def test_sigma_matches_oracle_seeded():
    rng = random.Random(4242)
    for _ in range(250):
        g = parse_group(rng.choice(GROUPS))
        wlen = rng.randint(1, 4)
        slen = rng.randint(wlen, 6)
        wraw = [rng.randrange(-g.exponent, g.exponent) for _ in range(wlen)]
        mult = [0] * g.order
        for _ in range(slen):
            mult[rng.randrange(g.order)] += 1
        s = GSequence(g, tuple(mult))
        w = weight_seq(g, wraw)
        n = rng.randint(1, wlen)
        got = as_coords(g, sigma_n(w, s, n))
        want = naive_sigma_n(g.invariant_factors, wraw, seq_coords(g, s), n)
        assert got == want


def test_sigma_all_is_union_over_n_seeded():
    rng = random.Random(11)
    g = make_group((6,))
    for _ in range(40):
        wlen = rng.randint(2, 4)
        w = weight_seq(g, [rng.randrange(6) for _ in range(wlen)])
        mult = [0] * 6
        for _ in range(rng.randint(wlen, 7)):
            mult[rng.randrange(6)] += 1
        s = GSequence(g, tuple(mult))
        acc = 0
        for n in range(1, wlen + 1):
            acc |= sigma_n(w, s, n).bits
        assert sigma_all(w, s).bits == acc


def test_sigma_windows_explicitly():
    g = make_group((6,))
    w = weight_seq(g, [1, 2, 3])
    s = parse_sequence(g, "1^2,2^2,4^1")
    by_n = {n: sigma_n(w, s, n).bits for n in (1, 2, 3)}
    assert sigma_upto(w, s, 2).bits == by_n[1] | by_n[2]
    assert sigma_from(w, s, 2).bits == by_n[2] | by_n[3]
    assert sigma_all(w, s).bits == by_n[1] | by_n[2] | by_n[3]


def test_sums_by_count_matches_unit_weight_sigma():
    g = make_group((5,))
    s = parse_sequence(g, "0^2,1^2,3^1")
    table = sums_by_count(s)
    for n in range(1, s.length + 1):
        w = weight_seq(g, [1] * s.length)
        assert table[n] == sigma_n(w, s, n).bits
    assert table[0] == 1  # the empty sum is {0}


def test_containment_in_longer_sequences():
    g = make_group((6,))
    w = weight_seq(g, [1, 4])
    s = parse_sequence(g, "1^1,2^1")
    t = parse_sequence(g, "1^1,2^1,5^2")
    for n in (1, 2):
        assert sigma_n(w, s, n).bits & ~sigma_n(w, t, n).bits == 0


def test_full_length_translation_covariance():
    # shifting every term by g moves the full-length sum set by total(W) * g
    rng = random.Random(5)
    grp = make_group((8,))
    for _ in range(30):
        wlen = rng.randint(1, 4)
        w = weight_seq(grp, [rng.randrange(8) for _ in range(wlen)])
        mult = [0] * 8
        for _ in range(rng.randint(wlen, 6)):
            mult[rng.randrange(8)] += 1
        s = GSequence(grp, tuple(mult))
        shift = rng.randrange(8)
        shifted = GSequence(grp, tuple(mult[(i - shift) % 8] for i in range(8)))
        lhs = sigma_n(w, shifted, wlen).bits
        rhs = grp.translate_mask(sigma_n(w, s, wlen).bits, (w.total() * shift) % 8)
        assert lhs == rhs


def test_unit_weight_translation_covariance_all_n():
    grp = make_group((5,))
    s = parse_sequence(grp, "0^2,1^1,3^1")
    w = weight_seq(grp, [1] * 4)
    for shift in range(5):
        shifted = GSequence(grp, tuple(s.mult[(i - shift) % 5] for i in range(5)))
        for n in range(1, 5):
            lhs = sigma_n(w, shifted, n).bits
            rhs = grp.translate_mask(sigma_n(w, s, n).bits, (n * shift) % 5)
            assert lhs == rhs


def test_partition_wsum_is_positional():
    g = make_group((7,))
    w = weight_seq(g, [2, 3])
    from zerosum import Setpartition

    part = Setpartition((gset(g, [1, 2]), gset(g, [0, 3])))
    blocks = part.blocks  # canonical order fixes which weight meets which block
    want = {
        (2 * x + 3 * y) % 7
        for x in blocks[0].indices()
        for y in blocks[1].indices()
    }
    assert set(partition_wsum(w, part).indices()) == want


def test_w_dot_is_full_length_sigma():
    g = make_group((7,))
    w = weight_seq(g, [2, 3])
    s = parse_sequence(g, "1^1,2^1,0^1,3^1")
    assert w_dot(w, s).bits == sigma_n(w, s, 2).bits


def test_weight_sequence_length_guard():
    g = make_group((5,))
    w = weight_seq(g, [1, 2, 3])
    s = parse_sequence(g, "0^2")
    with pytest.raises((LengthMismatch, BadN)):
        sigma_n(w, s, 3)


def test_complement_identity_spot():
    # unweighted: the n-term sums are the total minus the (|S|-n)-term sums
    g = make_group((6,))
    s = parse_sequence(g, "0^2,1^2,3^1,4^1")
    table = sums_by_count(s)
    total = seq_total_index(g, s)
    for n in range(0, s.length + 1):
        mirrored = 0
        for i in range(6):
            if table[s.length - n] >> i & 1:
                mirrored |= 1 << g.index_add(total, g.index_neg(i))
        assert table[n] == mirrored


def seq_total_index(g, s):
    acc = 0
    for i, m in enumerate(s.mult):
        acc = g.index_add(acc, g.index_scalar(m, i))
    return acc
