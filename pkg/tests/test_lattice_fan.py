import pytest
from hypothesis import given

from toric_volume.lattice_fan import (
    Cone2D,
    FanValidationError,
    LatticeVector as V,
    WeightSequence,
    build_fan,
    cone_multiplicity,
    is_primitive,
)

from conftest import weight_sequences


@pytest.mark.parametrize("v,expected", [(V(1, 0), True), (V(2, 4), False), (V(3, 7), True), (V(-3, 6), False)])
def test_is_primitive(v, expected):
    assert is_primitive(v) is expected


def test_zero_vector_is_a_domain_error():
    with pytest.raises(ValueError):
        is_primitive(V(0, 0))


def test_cone_multiplicity_examples():
    assert cone_multiplicity(Cone2D(V(1, 0), V(0, 1))) == 1
    assert cone_multiplicity(Cone2D(V(2, 1), V(1, 2))) == 3
    for p, q in [(2, 1), (5, 3), (7, 11)]:
        assert cone_multiplicity(Cone2D(V(1, 0), V(p, q))) == q


@pytest.mark.parametrize("a,b", [((2, 4), (1, 3)), ((1, 2), (2, 1))])
def test_cone_multiplicity_rejects(a, b):
    with pytest.raises(ValueError):
        cone_multiplicity(Cone2D(V(*a), V(*b)))


def test_degenerate_cone():
    with pytest.raises(ValueError):
        Cone2D(V(1, 1), V(2, 2))


def test_build_fan_single_ray():
    fan = build_fan(WeightSequence([(5, 3)]))
    assert fan == [Cone2D(V(1, 0), V(5, 3)), Cone2D(V(5, 3), V(0, 1))]


def test_build_fan_two_rays():
    fan = build_fan(WeightSequence([(3, 1), (2, 3)]))
    assert [cone_multiplicity(c) for c in fan] == [1, 7, 2]


def test_slope_violation_names_condition_and_index():
    with pytest.raises(FanValidationError) as info:
        WeightSequence([(1, 1), (2, 1)])
    assert info.value.condition == "SLOPE" and info.value.index == 2
    WeightSequence([(2, 1), (1, 1)])  # 1/2 < 1 is fine


@pytest.mark.parametrize("pairs,condition,index", [
    ([(2, 2)], "PRIMITIVE", 1),
    ([(1, 0)], "POSITIVE", 1),
    ([(3, 1), (4, 2)], "PRIMITIVE", 2),
    ([(3, 2), (3, 2)], "SLOPE", 2),
])
def test_invalid_sequences(pairs, condition, index):
    with pytest.raises(FanValidationError) as info:
        WeightSequence(pairs)
    assert (info.value.condition, info.value.index) == (condition, index)


def test_sentinels_are_virtual():
    ws = WeightSequence([(3, 1), (2, 3)])
    assert ws.u(0) == V(1, 0) and ws.u(3) == V(0, 1)
    assert len(ws.pairs) == 2
    with pytest.raises(IndexError):
        ws.u(4)


def test_text_and_json_forms():
    ws = WeightSequence.from_text("3:1,2:3")
    assert ws == WeightSequence([(3, 1), (2, 3)])
    assert ws.to_text() == "3:1,2:3"
    assert WeightSequence.from_json(ws.as_lists()) == ws
    with pytest.raises(ValueError):
        WeightSequence.from_text("3-1")


@given(weight_sequences())
def test_fan_covers_quadrant(ws):
    fan = build_fan(ws)
    assert len(fan) == ws.n + 1
    assert fan[0].gen1 == V(1, 0) and fan[-1].gen2 == V(0, 1)
    for a, b in zip(fan, fan[1:]):
        assert a.gen2 == b.gen1
    mults = [cone_multiplicity(c) for c in fan]
    assert all(m >= 1 for m in mults)
    assert (mults[0] == 1) == (ws.q(1) == 1)
    assert (mults[-1] == 1) == (ws.p(ws.n) == 1)


@given(weight_sequences(max_n=6))
def test_truncation_and_extension_keep_validity(ws):
    if ws.n >= 2:
        WeightSequence(ws.pairs[:-1])
    WeightSequence(ws.pairs + ((1, ws.pairs[-1].q + 1),))
