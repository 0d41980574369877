"""Factor the toric morphism ``W -> X`` into weighted blow-ups.

Step ``m`` inserts the ray ``u_m`` into the cone ``Cone(u_{m-1}, e_2)``,
which is the cyclic quotient point ``1/p_{m-1}(1, -q_{m-1} mod p_{m-1})``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .germ import fraction_str
from .lattice_fan import WeightSequence, build_fan, cone_multiplicity


@dataclass(frozen=True)
class FactorizationStep:
    index: int
    r: int
    a: int
    weights: tuple[Fraction, Fraction]
    c: int

    @property
    def integer_weights(self) -> tuple[int, int]:
        """The weights with the ``1/r`` orbifold factor stripped."""
        return (int(self.weights[0] * self.r), int(self.weights[1] * self.r))

    @property
    def smooth(self) -> bool:
        return self.r == 1

    def singularity(self) -> str:
        return f"1/{self.r}(1,{self.a})"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "singularity": {"r": self.r, "a": self.a},
            "weights": [fraction_str(w) for w in self.weights],
            "integer_weights": list(self.integer_weights),
            "c": self.c,
        }


def factorize(ws: WeightSequence) -> list[FactorizationStep]:
    steps = []
    for m in range(1, ws.n + 1):
        r, q_prev = ws.p(m - 1), ws.q(m - 1)
        p_m = ws.p(m)
        c = gcd(r, p_m)
        det = ws.mult(m)
        a = (-q_prev) % r
        steps.append(FactorizationStep(m, r, a, (Fraction(p_m, c * r), Fraction(det, c * r)), c))
    return steps


def chain_multiplicities(ws: WeightSequence) -> list[int]:
    return [cone_multiplicity(c) for c in build_fan(ws)]
