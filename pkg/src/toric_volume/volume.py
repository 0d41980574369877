"""Volume defects ``f_n`` and the volume of the contracted pair.

Two independent routes are kept on purpose: :func:`f_value` transcribes the
closed form term by term, :func:`volume_via_intersection` expands
``(K_W + Bbar_W)^2`` bilinearly over the intersection matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .germ import GermParams, fraction_str
from .intersection import intersection_matrix
from .lattice_fan import WeightSequence
from .snp import SnpError, check_membership


class VolumeRefusal(SnpError):
    """Raised for tuples where ``(K_W + Bbar_W)^2`` is not a volume."""


@dataclass(frozen=True)
class VolumeReport:
    f_value: Fraction
    vol_z: Fraction
    vol_x: Fraction
    n: int
    weights: WeightSequence

    def to_json(self) -> dict:
        return {
            "f_value": fraction_str(self.f_value),
            "vol_z": fraction_str(self.vol_z),
            "vol_x": fraction_str(self.vol_x),
            "n": self.n,
            "weights": self.weights.as_lists(),
        }


def f_value(ws: WeightSequence, g: GermParams) -> Fraction:
    n = ws.n
    if n == 0:
        return Fraction(0)
    p, q = ws.p, ws.q
    a0_term = 1 / (p(1) - q(1) * g.b1_sq) / q(1)
    if n == 1:
        return Fraction(1, p(1) * q(1)) - a0_term
    if n == 2:
        d = p(1) * q(2) - p(2) * q(1)
        return (Fraction(q(2), q(1)) - 1) / d + (Fraction(p(1), p(2)) - 1) / d - a0_term
    first = (Fraction(q(2), q(1)) - 1) / (p(1) * q(2) - p(2) * q(1))
    last = (Fraction(p(n - 1), p(n)) - 1) / (p(n - 1) * q(n) - p(n) * q(n - 1))
    middle = Fraction(0)
    for k in range(2, n):
        outer = p(k - 1) * q(k + 1) - p(k + 1) * q(k - 1)
        left = p(k - 1) * q(k) - p(k) * q(k - 1)
        right = p(k) * q(k + 1) - p(k + 1) * q(k)
        middle += Fraction(outer - left - right, left * right)
    return first + last + middle - a0_term


def tail_increment(ws: WeightSequence, m: int) -> Fraction:
    """``f_n(..., p_n, m) - f_{n-1}(...)``, the gap to the limit of the tail family."""
    n = ws.n
    if n < 2:
        raise ValueError("tail increment needs n >= 2; the n = 1 family tends to f_0 = 0")
    if m < ws.q(n):
        raise ValueError(f"m = {m} < q{n} = {ws.q(n)}")
    pa, pb = ws.p(n - 1), ws.p(n)
    return Fraction((pa - pb) ** 2, pa * pb) / (pa * m - pb * ws.q(n - 1))


def _require_member(ws: WeightSequence, g: GermParams):
    verdict = check_membership(ws, g)
    if not verdict.member:
        raise VolumeRefusal(
            "not a volume: K_W + Bbar_W is only known to be nef on admissible tuples; "
            + "; ".join(map(str, verdict.failures))
        )


def volume_z(ws: WeightSequence, g: GermParams) -> VolumeReport:
    _require_member(ws, g)
    f = f_value(ws, g)
    return VolumeReport(f, g.vol_x - f, g.vol_x, ws.n, ws)


def _defect_divisor(ws: WeightSequence, g: GermParams):
    """Matrix and coefficients of ``a_0 C_0 + sum C_k``, with ``a_0`` read off
    the matrix via ``a_0 C_0^2 = -C_0.C_1``."""
    m = intersection_matrix(ws, g)
    a0 = -m[0, 1] / m[0, 0]
    return m, [a0] + [Fraction(1)] * ws.n + [Fraction(0)]


def volume_via_intersection(ws: WeightSequence, g: GermParams) -> Fraction:
    """``vol_x + (a_0 C_0 + sum C_k)^2``; the cross term with the pullback vanishes."""
    _require_member(ws, g)
    m, d = _defect_divisor(ws, g)
    return g.vol_x + m.pair(d, d)


def nef_pairing(ws: WeightSequence, g: GermParams, k: int) -> Fraction:
    """``(K_W + Bbar_W) . C_k`` for ``0 <= k <= n + 1``."""
    if not 0 <= k <= ws.n + 1:
        raise ValueError(f"curve index k={k} outside 0..{ws.n + 1}")
    m, d = _defect_divisor(ws, g)
    e = [0] * (ws.n + 2)
    e[k] = 1
    pulled = g.kb_dot_b2 if k == ws.n + 1 else Fraction(0)
    return pulled - m.pair(d, e)


def lift_to_dimension(d: int, v: Fraction) -> Fraction:
    """Volume of ``Z x X_{d+1}`` for a general degree-(d+1) hypersurface
    ``X_{d+1}`` in ``P^{d-1}``: ``d(d-1)(d+1)/2 * v``."""
    if d < 3:
        raise ValueError(f"d = {d}: lifting needs d >= 3 (for d = 2 the surface volume is used as is)")
    v = Fraction(v)
    if v <= 0:
        raise ValueError("volume must be positive")
    return Fraction(d * (d - 1) * (d + 1), 2) * v
