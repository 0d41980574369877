"""Admissible weight tuples for a fixed germ: membership, thresholds, generation.

A tuple is admissible when the ``p_k`` strictly decrease, the slopes
``q_k/p_k`` strictly increase, every ``p_k >= l`` (NEF1), the pairings of
``K_W + Bbar_W`` with the exceptional curves are non-negative (NEF2), and
every ``(p_k, q_k)`` is primitive.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Union

from .germ import GermParams
from .lattice_fan import LatticeVector, WeightSequence

MONOTONIC = "MONOTONIC"
SLOPE = "SLOPE"
NEF1 = "NEF1"
NEF2 = "NEF2"
PRIMITIVE = "PRIMITIVE"


class SnpError(ValueError):
    """Precondition or postcondition failure in the admissible-tuple calculus."""


class DegenerateThresholdError(SnpError):
    pass


@dataclass(frozen=True)
class Failure:
    condition: str
    index: Optional[int] = None
    detail: str = field(default="", compare=False)

    def __str__(self):
        tag = self.condition if self.index is None else f"{self.condition}(k={self.index})"
        return f"{tag} violated: {self.detail}" if self.detail else f"{tag} violated"


@dataclass(frozen=True)
class SnpVerdict:
    member: bool
    failures: tuple[Failure, ...]

    @property
    def conditions(self) -> list[str]:
        return [f.condition for f in self.failures]

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "failures": [
                {"condition": f.condition, "index": f.index, "detail": f.detail} for f in self.failures
            ],
        }


def _as_pairs(ws: Union[WeightSequence, Iterable]) -> tuple[LatticeVector, ...]:
    if isinstance(ws, WeightSequence):
        pairs = ws.pairs
    else:
        pairs = tuple(v if isinstance(v, LatticeVector) else LatticeVector(*v) for v in ws)
    for k, v in enumerate(pairs, start=1):
        if v.p < 1 or v.q < 1:
            raise ValueError(f"pair k={k} {tuple(v)} is not in Z>=1 x Z>=1")
    return pairs


def _a0(g: GermParams, p1: int, q1: int) -> Fraction:
    return 1 / (p1 - q1 * g.b1_sq)


def nef2_numerators(ws: Union[WeightSequence, Iterable], g: GermParams) -> dict[int, Fraction]:
    """Numerators of ``(K_W + Bbar_W) . C_k`` for ``k = 1..n``.

    Each pairing is this numerator over a denominator that is positive
    whenever the slopes increase, so NEF2 is the sign of these values.
    """
    seq = WeightSequence(_as_pairs(ws), validate=False)
    n = seq.n
    if n == 0:
        return {}
    a0 = _a0(g, seq.p(1), seq.q(1))
    if n == 1:
        return {1: 1 - a0 * seq.p(1)}
    out = {1: seq.q(2) - seq.q(1) - a0 * seq.mult(2)}
    for k in range(2, n):
        outer = seq.u(k - 1).cross(seq.u(k + 1))
        out[k] = Fraction(outer - seq.mult(k) - seq.mult(k + 1))
    out[n] = Fraction(seq.p(n - 1) - seq.p(n))
    return out


def _nef2_label(k: int, n: int) -> str:
    if n == 1:
        return "1-a0*p1"
    if k == 1:
        return "q2-q1-a0(p1q2-p2q1)"
    if k == n:
        return f"p{n-1}-p{n}"
    return f"(p{k-1}q{k+1}-p{k+1}q{k-1})-(p{k-1}q{k}-p{k}q{k-1})-(p{k}q{k+1}-p{k+1}q{k})"


def check_membership(ws: Union[WeightSequence, Iterable], g: GermParams) -> SnpVerdict:
    """Evaluate every admissibility condition; failures are returned, not raised."""
    pairs = _as_pairs(ws)
    n = len(pairs)
    failures: list[Failure] = []
    for k in range(2, n + 1):
        a, b = pairs[k - 2], pairs[k - 1]
        if not a.p > b.p:
            failures.append(Failure(MONOTONIC, k, f"p{k-1} = {a.p} is not > p{k} = {b.p}"))
    for k in range(2, n + 1):
        a, b = pairs[k - 2], pairs[k - 1]
        if not a.cross(b) > 0:
            failures.append(Failure(SLOPE, k, f"q{k-1}/p{k-1} = {a.q}/{a.p} is not < q{k}/p{k} = {b.q}/{b.p}"))
    for k, v in enumerate(pairs, start=1):
        if v.p < g.l:
            failures.append(Failure(NEF1, k, f"p{k} = {v.p} < l = {g.l}"))
    for k, num in nef2_numerators(pairs, g).items():
        if num < 0:
            failures.append(Failure(NEF2, k, f"{_nef2_label(k, n)} = {num} < 0"))
    for k, v in enumerate(pairs, start=1):
        if gcd(v.p, v.q) != 1:
            failures.append(Failure(PRIMITIVE, k, f"gcd({v.p}, {v.q}) = {gcd(v.p, v.q)}"))
    return SnpVerdict(not failures, tuple(failures))


def is_member(ws, g: GermParams) -> bool:
    return check_membership(ws, g).member


def _require_member(ws, g: GermParams, what: str):
    verdict = check_membership(ws, g)
    if not verdict.member:
        raise SnpError(f"{what} is not admissible: " + "; ".join(map(str, verdict.failures)))


def _check_next_p(prefix: WeightSequence, p_next: int, g: GermParams):
    if p_next < g.l:
        raise SnpError(f"p_next = {p_next} < l = {g.l}")
    if prefix.n and not prefix.p(prefix.n) > p_next:
        raise SnpError(f"p_next = {p_next} must be < p{prefix.n} = {prefix.p(prefix.n)}")


def q_threshold(prefix: WeightSequence, p_n: int, g: GermParams) -> int:
    """Smallest ``q*`` such that every ``q_n >= q*`` satisfies the slope and
    NEF2 inequalities that involve index ``n``.

    The slope bound is strict, so it is ``floor(p_n q_{n-1}/p_{n-1}) + 1``;
    the NEF2 bound is a ceiling.
    """
    if prefix.n:
        _require_member(prefix, g, "prefix")
    _check_next_p(prefix, p_n, g)
    n = prefix.n + 1
    if n == 1:
        # 1 - a0 p_1 = -q B_1^2 / (p_1 - q B_1^2): sign of q once B_1^2 < 0
        if g.b1_sq >= 0:
            raise SnpError("germ has B1^2 >= 0")
        return max(1, 0)
    p_prev, q_prev = prefix.p(n - 1), prefix.q(n - 1)
    slope_bound = (p_n * q_prev) // p_prev + 1
    if n == 2:
        a0 = _a0(g, p_prev, q_prev)
        denom = 1 - a0 * p_prev
        if denom == 0:
            raise DegenerateThresholdError("1 - a0*p1 = 0: the NEF2 bound on q2 is undefined")
        nef_bound = math.ceil((q_prev - a0 * p_n * q_prev) / denom)
    else:
        p_pp, q_pp = prefix.p(n - 2), prefix.q(n - 2)
        gap = p_pp - p_prev
        if gap == 0:
            raise DegenerateThresholdError(f"p{n-2} = p{n-1}: the NEF2 bound on q{n} is undefined")
        nef_bound = math.ceil(Fraction(prefix.mult(n - 1) + p_n * (q_pp - q_prev), gap))
    return max(slope_bound, nef_bound, 1)


def extend(prefix: WeightSequence, p_next: int, g: GermParams, q_choice: Union[str, int] = "smallest") -> WeightSequence:
    """Append ``(p_next, q)`` with ``q`` at or above the threshold and coprime to ``p_next``."""
    floor = q_threshold(prefix, p_next, g)
    if q_choice == "smallest":
        q = floor
        while gcd(p_next, q) != 1:
            q += 1
    else:
        q = int(q_choice)
        if q < floor:
            raise SnpError(f"q = {q} is below the threshold {floor}")
        if gcd(p_next, q) != 1:
            raise SnpError(f"gcd(p, q) = gcd({p_next}, {q}) = {gcd(p_next, q)} != 1")
    out = WeightSequence(prefix.pairs + (LatticeVector(p_next, q),))
    _require_member(out, g, "extension")
    return out


def seed(n: int, g: GermParams, p1: Optional[int] = None) -> WeightSequence:
    """A canonical admissible n-tuple with ``p_k = p_1 - k + 1``."""
    if n < 1:
        raise SnpError("n must be >= 1")
    lowest = g.l + n - 1
    if p1 is None:
        p1 = lowest
    if p1 < lowest:
        raise SnpError(f"p1 = {p1} < l + n - 1 = {lowest}")
    ws = WeightSequence([(p1, 1)])
    _require_member(ws, g, "seed start")
    for k in range(2, n + 1):
        ws = extend(ws, p1 - k + 1, g)
    return ws


def raise_tail(ws: WeightSequence, m: int, g: GermParams) -> WeightSequence:
    _require_member(ws, g, "input")
    last = ws.pairs[-1]
    if m < last.q:
        raise SnpError(f"m = {m} < q{ws.n} = {last.q}")
    if gcd(last.p, m) != 1:
        raise SnpError(f"gcd(p{ws.n}, m) = gcd({last.p}, {m}) != 1")
    out = ws.with_tail(m)
    _require_member(out, g, "raised tuple")
    return out


def truncate(ws: WeightSequence, g: GermParams) -> WeightSequence:
    if ws.n < 2:
        raise SnpError("cannot truncate a tuple with n < 2")
    _require_member(ws, g, "input")
    out = WeightSequence(ws.pairs[:-1])
    _require_member(out, g, "truncation")
    return out


def coprime_from(start: int, p: int, count: int) -> list[int]:
    """The first ``count`` integers ``>= start`` coprime to ``p``."""
    out, m = [], max(start, 1)
    while len(out) < count:
        if gcd(p, m) == 1:
            out.append(m)
        m += 1
    return out


def random_member(n: int, g: GermParams, rng: random.Random, p_spread: int = 6, q_slack: int = 20) -> WeightSequence:
    """A random admissible n-tuple: random strictly decreasing ``p >= l``, then
    random coprime ``q`` between each threshold and ``threshold + q_slack``."""
    ps = sorted(rng.sample(range(g.l, g.l + n + p_spread), n), reverse=True)
    ws = WeightSequence([])
    for p in ps:
        base = q_threshold(ws, p, g)
        q = rng.choice(coprime_from(base, p, q_slack))
        ws = extend(ws, p, g, q)
    return ws
