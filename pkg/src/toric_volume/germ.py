"""Surface-germ inputs and the quantities derived from them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Union

RationalLike = Union[int, str, Fraction]


class GermValidationError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid germ: " + "; ".join(violations))


class InexactValueError(TypeError, ValueError):
    pass


def to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InexactValueError(f"refusing inexact or boolean value {x!r}; pass an int, Fraction or 'num/den' string")
    if isinstance(x, dict):
        try:
            return Fraction(to_fraction(x["num"]), to_fraction(x["den"]))
        except KeyError as exc:
            raise ValueError(f"rational object needs 'num' and 'den', got {x!r}") from exc
    try:
        return Fraction(x)
    except TypeError as exc:
        raise ValueError(f"not a rational: {x!r}") from exc


@dataclass(frozen=True)
class GermParams:
    """What the germ ``(X, x, B)`` contributes to the volume formulas.

    ``b1_sq`` is ``B_1^2``, ``vol_x`` is ``vol(X, K_X+B)`` and ``kb_dot_b2``
    is ``(K_X+B).B_2``.  Bigness of ``K_X + B - (B_1+B_2)/l`` is taken on
    trust; only the numeric inequalities are checked.
    """

    b1_sq: Fraction
    l: int
    vol_x: Fraction
    kb_dot_b2: Fraction
    label: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {
            "b1_sq": fraction_str(self.b1_sq),
            "l": self.l,
            "vol_x": fraction_str(self.vol_x),
            "kb_dot_b2": fraction_str(self.kb_dot_b2),
            "label": self.label,
        }


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def germ_violations(b1_sq, l, vol_x, kb_dot_b2) -> list[str]:
    out = []
    if b1_sq >= 0:
        out.append(f"b1_sq < 0 fails: B1^2 = {b1_sq}")
    if not isinstance(l, int) or isinstance(l, bool) or l < 1:
        out.append(f"l >= 1 fails: l = {l!r}")
    if vol_x <= 0:
        out.append(f"vol_x > 0 fails: vol_x = {vol_x}")
    if isinstance(l, int) and l >= 1 and kb_dot_b2 < Fraction(1, l):
        out.append(f"kb_dot_b2 >= 1/l fails: {kb_dot_b2} < 1/{l}")
    return out


def validate_germ(b1_sq: RationalLike, l: int, vol_x: RationalLike, kb_dot_b2: RationalLike, label: str = "") -> GermParams:
    b1_sq, vol_x, kb_dot_b2 = to_fraction(b1_sq), to_fraction(vol_x), to_fraction(kb_dot_b2)
    bad = germ_violations(b1_sq, l, vol_x, kb_dot_b2)
    if bad:
        raise GermValidationError(bad)
    return GermParams(b1_sq, l, vol_x, kb_dot_b2, label)


def load_germ(path: Union[str, Path]) -> GermParams:
    with open(path) as fh:
        data = json.load(fh)
    return germ_from_json(data)


def germ_from_json(data: dict) -> GermParams:
    missing = [k for k in ("b1_sq", "l", "vol_x", "kb_dot_b2") if k not in data]
    if missing:
        raise GermValidationError([f"missing field {k!r}" for k in missing])
    return validate_germ(data["b1_sq"], data["l"], data["vol_x"], data["kb_dot_b2"], data.get("label", ""))


# blow-up of P^2 at the meeting point of two of four general lines
REFERENCE_GERM = GermParams(Fraction(-1), 2, Fraction(1), Fraction(1), "P2 + 4 lines, blown up")


def compute_a0(g: GermParams, p1: int, q1: int) -> Fraction:
    """Log discrepancy of ``C_0`` after contracting it: ``1/(p_1 - q_1 B_1^2)``."""
    if p1 < 1 or q1 < 1 or gcd(p1, q1) != 1:
        raise ValueError(f"(p1, q1) = ({p1}, {q1}) must be a primitive positive pair")
    a0 = 1 / (p1 - q1 * g.b1_sq)
    assert 0 < a0 < Fraction(1, p1)
    return a0


def log_discrepancy(p: int, q: int, l: int) -> Fraction:
    """Log discrepancy over the ray ``p e_1 + q e_2`` w.r.t. ``K_X + B - (B_1+B_2)/l``."""
    if p < 0 or q < 0 or (p, q) == (0, 0) or l < 1:
        raise ValueError(f"need p, q >= 0 not both zero and l >= 1, got ({p}, {q}, {l})")
    return Fraction(p + q, l)
