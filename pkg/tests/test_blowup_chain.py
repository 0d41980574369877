from fractions import Fraction as F

import pytest
from hypothesis import given

from toric_volume.blowup_chain import chain_multiplicities, factorize
from toric_volume.lattice_fan import WeightSequence

from conftest import weight_sequences


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (5, 3), (4, 9)])
def test_single_weighted_blowup(p, q):
    (step,) = factorize(WeightSequence([(p, q)]))
    assert step.smooth and (step.r, step.a) == (1, 0)
    assert step.weights == (p, q)
    assert step.integer_weights == (p, q)


def test_two_ray_factorization():
    s1, s2 = factorize(WeightSequence([(3, 1), (2, 3)]))
    assert s1.smooth and s1.weights == (3, 1)
    # -1 mod 3 = 2; 3*3 - 2*1 = 7; gcd(3, 2) = 1
    assert (s2.r, s2.a, s2.c) == (3, 2, 1)
    assert s2.weights == (F(2, 3), F(7, 3))
    assert s2.singularity() == "1/3(1,2)"


def test_common_factor():
    # gcd(4, 2) = 2: u'' = (1/4)(2/2, (4*3 - 2*1)/2) = (1/4)(1, 5)
    s = factorize(WeightSequence([(4, 1), (2, 3)]))[1]
    assert s.c == 2 and s.weights == (F(1, 4), F(5, 4)) and s.a == 3


def test_chain_multiplicities():
    assert chain_multiplicities(WeightSequence([(1, 1)])) == [1, 1]
    assert chain_multiplicities(WeightSequence([(3, 1), (2, 3)])) == [1, 7, 2]
    assert chain_multiplicities(WeightSequence([(2, 1)])) == [1, 2]


@given(weight_sequences(max_n=6, max_entry=1000))
def test_step_invariants(ws):
    steps = factorize(ws)
    mults = chain_multiplicities(ws)
    assert len(steps) == ws.n
    assert steps[0].smooth and steps[0].weights == (ws.p(1), ws.q(1))
    for s in steps:
        m = s.index
        assert s.weights[0] > 0 and s.weights[1] > 0
        assert (s.weights[0] * s.r).denominator == 1 and (s.weights[1] * s.r).denominator == 1
        assert ws.p(m - 1) * ws.q(m) - ws.p(m) * ws.q(m - 1) == mults[m - 1]
        assert s.integer_weights[1] * s.c == mults[m - 1]
        if s.r > 1:
            assert 0 < s.a < s.r and (s.a + ws.q(m - 1)) % s.r == 0
        if s.smooth:
            assert all(w.denominator == 1 for w in s.weights)
