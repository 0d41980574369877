import random
from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from toric_volume.germ import GermParams, REFERENCE_GERM as G
from toric_volume.lattice_fan import WeightSequence
from toric_volume.snp import (
    MONOTONIC,
    NEF1,
    NEF2,
    PRIMITIVE,
    SLOPE,
    SnpError,
    check_membership,
    coprime_from,
    extend,
    nef2_numerators,
    q_threshold,
    raise_tail,
    random_member,
    seed,
    truncate,
)

W = WeightSequence


def test_single_pair_member():
    v = check_membership(W([(2, 1)]), G)
    assert v.member and v.failures == ()
    # 1 - a0*2 = 1 - 2/3
    assert nef2_numerators(W([(2, 1)]), G) == {1: F(1, 3)}


def test_two_pair_member_by_hand():
    # 3 > 2; 1/3 < 3/2; 3, 2 >= l = 2; 3 - 1 - (1/4)*7 = 1/4; 3 - 2 = 1
    assert nef2_numerators(W([(3, 1), (2, 3)]), G) == {1: F(1, 4), 2: F(1)}
    assert check_membership(W([(3, 1), (2, 3)]), G).member


def test_monotonic_failure_reported_first():
    v = check_membership(W([(2, 1), (3, 2)]), G)
    assert not v.member
    assert v.conditions[0] == MONOTONIC
    # all conditions are evaluated: p1 - p2 >= 0 is also part of NEF2 for n = 2
    assert set(v.conditions) == {MONOTONIC, NEF2}


def test_raw_pairs_expose_slope_and_primitive_failures():
    v = check_membership([(4, 2), (3, 1)], G)
    assert SLOPE in v.conditions and PRIMITIVE in v.conditions
    assert [f.index for f in v.failures if f.condition == PRIMITIVE] == [1]


def test_nef1_failure():
    v = check_membership(W([(3, 1), (1, 3)]), G)
    assert [(f.condition, f.index) for f in v.failures] == [(NEF1, 2)]
    # (3,1),(1,2) additionally has q2 - q1 - a0*5 = -1/4
    v = check_membership(W([(3, 1), (1, 2)]), G)
    assert [(f.condition, f.index) for f in v.failures] == [(NEF1, 2), (NEF2, 1)]
    assert "-1/4" in str(v.failures[1])


def test_nef2_middle_failure():
    # middle numerator (p1 q3 - p3 q1) - (p1 q2 - p2 q1) - (p2 q3 - p3 q2) for (9,1),(5,1),(2,1)
    ws = W([(9, 1), (5, 1), (2, 1)])
    assert nef2_numerators(ws, G)[2] == (9 - 2) - (9 - 5) - (5 - 2)
    # (5,1),(4,3),(3,4): (20 - 3) - 11 - 7 = -1
    ws = W([(5, 1), (4, 3), (3, 4)])
    num = nef2_numerators(ws, G)[2]
    assert num == -1
    assert (NEF2, 2) in [(f.condition, f.index) for f in check_membership(ws, G).failures]


def test_threshold_examples():
    assert q_threshold(W([(3, 1)]), 2, G) == 2
    with pytest.raises(SnpError):
        q_threshold(W([(3, 1), (2, 3)]), 2, G)
    with pytest.raises(SnpError):
        q_threshold(W([(3, 1), (2, 3)]), 1, G)
    assert q_threshold(W([]), 5, G) == 1


def test_extend_examples():
    assert extend(W([(3, 1)]), 2, G) == W([(3, 1), (2, 3)])
    assert extend(W([(3, 1)]), 2, G, 5) == W([(3, 1), (2, 5)])
    with pytest.raises(SnpError, match="gcd"):
        extend(W([(3, 1)]), 2, G, 2)
    with pytest.raises(SnpError, match="threshold"):
        extend(W([(3, 1)]), 2, G, 1)


def test_seed_examples():
    assert seed(1, G) == W([(2, 1)])
    assert seed(2, G) == W([(3, 1), (2, 3)])
    s5 = seed(5, G)
    assert [v.p for v in s5.pairs] == [6, 5, 4, 3, 2]
    assert check_membership(s5, G).member
    with pytest.raises(SnpError):
        seed(3, G, p1=3)


def test_raise_tail_examples():
    ws = W([(3, 1), (2, 3)])
    assert raise_tail(ws, 5, G) == W([(3, 1), (2, 5)])
    assert raise_tail(ws, 3, G) == ws
    with pytest.raises(SnpError):
        raise_tail(ws, 4, G)
    with pytest.raises(SnpError):
        raise_tail(ws, 1, G)


def test_truncate_examples():
    assert truncate(W([(3, 1), (2, 3)]), G) == W([(3, 1)])
    with pytest.raises(SnpError):
        truncate(W([(2, 1)]), G)
    ws = seed(5, G)
    for _ in range(4):
        ws = truncate(ws, G)
        assert check_membership(ws, G).member
    assert ws == W([(6, 1)])


def conditions_at_tail(prefix, p, q, g):
    """Slope and NEF2 conditions that involve the last index, evaluated directly."""
    ws = list(prefix.pairs) + [(p, q)]
    n = len(ws)
    nums = nef2_numerators(ws, g)
    ok = True
    if n >= 2:
        pp, qp = prefix.p(n - 1), prefix.q(n - 1)
        ok &= qp * p < q * pp
        ok &= nums[n - 1] >= 0
    else:
        ok &= nums[1] >= 0
    return ok


def brute_threshold(prefix, p, g, horizon=400):
    """Smallest q with every q' in [q, horizon] passing; the conditions are monotone in q."""
    last_bad = 0
    for q in range(1, horizon):
        if not conditions_at_tail(prefix, p, q, g):
            last_bad = q
    return last_bad + 1


germs = st.builds(
    lambda b, l: GermParams(-b, l, F(1), F(1)),
    st.fractions(min_value=F(1, 20), max_value=5).filter(lambda x: x > 0),
    st.integers(1, 3),
)


@settings(max_examples=60, deadline=None)
@given(germs, st.integers(1, 4), st.integers(0, 2**32))
def test_threshold_agrees_with_brute_force(g, n, rseed):
    rng = random.Random(rseed)
    prefix = random_member(n, g, rng, p_spread=3, q_slack=4) if n > 0 else W([])
    p_last = prefix.p(prefix.n)
    for p in range(g.l, p_last):
        qs = q_threshold(prefix, p, g)
        assert qs == brute_threshold(prefix, p, g)
        if qs - 1 >= 1 and gcd(p, qs - 1) == 1:
            assert not check_membership(prefix.appended(p, qs - 1), g).member
        q = coprime_from(qs, p, 1)[0]
        assert check_membership(prefix.appended(p, q), g).member


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_closure_laws(n, rseed):
    rng = random.Random(rseed)
    ws = random_member(n, G, rng)
    assert check_membership(ws, G).member
    if n >= 2:
        assert check_membership(truncate(ws, G), G).member
    for m in coprime_from(ws.q(n), ws.p(n), 5):
        assert check_membership(raise_tail(ws, m, G), G).member


@pytest.mark.parametrize("n", range(1, 9))
def test_seed_is_member(n):
    assert check_membership(seed(n, G), G).member
    assert check_membership(seed(n, G, p1=G.l + n + 3), G).member
