"""Intersection numbers of the torus-invariant curves ``C_0, ..., C_{n+1}``.

Adjacent curves meet in ``1/mult``; self-intersections come from the linear
relation ``(C_k.C_{k-1}) u_{k-1} + (C_k.C_{k+1}) u_{k+1} + (C_k^2) u_k = 0``.
``C_0^2`` needs the germ (``B_1^2``), ``C_{n+1}^2`` is never defined.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional, Union

from .germ import GermParams
from .lattice_fan import WeightSequence


class _Undefined(enum.Enum):
    UNDEFINED = "undefined"

    def __repr__(self):
        return "UNDEFINED"

    def __str__(self):
        return "undefined"


UNDEFINED = _Undefined.UNDEFINED
Entry = Union[Fraction, _Undefined]


def adjacent_intersection(ws: WeightSequence, k: int) -> Fraction:
    """``C_{k-1} . C_k`` for ``1 <= k <= n + 1``."""
    if not 1 <= k <= ws.n + 1:
        raise ValueError(f"adjacent index k={k} outside 1..{ws.n + 1}")
    return Fraction(1, ws.mult(k))


def self_intersection(ws: WeightSequence, k: int) -> Fraction:
    """``C_k^2`` for an exceptional curve, ``1 <= k <= n``.

    One formula for all k; the boundary cases use the sentinel rays.
    """
    if not 1 <= k <= ws.n:
        raise ValueError(f"self-intersection index k={k} outside 1..{ws.n}")
    outer = ws.u(k - 1).cross(ws.u(k + 1))
    return Fraction(-outer, ws.mult(k) * ws.mult(k + 1))


class IntersectionMatrix:
    """Dense symmetric table of ``C_i . C_j`` on curve indices ``0..n+1``."""

    def __init__(self, n: int, entries: list[list[Entry]], b1_sq: Optional[Fraction] = None):
        self.n = n
        self.entries = entries
        self.b1_sq = b1_sq

    @property
    def size(self) -> int:
        return self.n + 2

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self.entries[i][j]

    def defined(self, i: int, j: int) -> bool:
        return self.entries[i][j] is not UNDEFINED

    def copy(self) -> "IntersectionMatrix":
        return IntersectionMatrix(self.n, [row[:] for row in self.entries], self.b1_sq)

    def pair(self, x: list, y: list) -> Fraction:
        """Bilinear pairing of two divisor coefficient vectors.

        Raises if a nonzero coefficient hits an undefined entry.
        """
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                e = self.entries[i][j]
                if e is UNDEFINED:
                    raise ValueError(f"pairing needs undefined entry C_{i}.C_{j}")
                total += xi * yj * e
        return total

    def to_json(self) -> list[list]:
        return [
            ["undefined" if e is UNDEFINED else {"num": str(e.numerator), "den": str(e.denominator)} for e in row]
            for row in self.entries
        ]

    def __eq__(self, other):
        if not isinstance(other, IntersectionMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries and self.b1_sq == other.b1_sq


def intersection_matrix(ws: WeightSequence, germ: Optional[GermParams] = None) -> IntersectionMatrix:
    size = ws.n + 2
    m: list[list[Entry]] = [[Fraction(0)] * size for _ in range(size)]
    for k in range(1, ws.n + 2):
        v = adjacent_intersection(ws, k)
        m[k - 1][k] = m[k][k - 1] = v
    for k in range(1, ws.n + 1):
        m[k][k] = self_intersection(ws, k)
    m[size - 1][size - 1] = UNDEFINED
    b1_sq = None
    if germ is not None:
        b1_sq = germ.b1_sq
        m[0][0] = germ.b1_sq - Fraction(ws.p(1), ws.q(1)) if ws.n else UNDEFINED
    else:
        m[0][0] = UNDEFINED
    return IntersectionMatrix(ws.n, m, b1_sq)


def pullback_b1(ws: WeightSequence) -> list[int]:
    """Coefficients of ``pi^* B_1 = C_0 + sum p_k C_k`` on ``C_0..C_{n+1}``."""
    return [1] + [v.p for v in ws.pairs] + [0]


def verify_linear_relations(m: IntersectionMatrix, ws: WeightSequence) -> bool:
    """Check every entry of ``m`` against the lattice geometry of ``ws``.

    Rows ``1..n`` must satisfy ``sum_j (C_k.C_j) u_j = 0`` exactly; beyond
    that the table must be symmetric, ``C_{n+1}^2`` undefined, and a defined
    ``C_0^2`` must reproduce ``B_1^2`` through the pullback of ``B_1``.
    """
    n = ws.n
    if m.n != n or len(m.entries) != n + 2 or any(len(row) != n + 2 for row in m.entries):
        return False
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            if m[i, j] != m[j, i] or m[i, j] is UNDEFINED:
                return False
            if j - i >= 2 and m[i, j] != 0:
                return False
    if m[n + 1, n + 1] is not UNDEFINED:
        return False
    for k in range(1, n + 1):
        x = Fraction(0)
        y = Fraction(0)
        for j in range(n + 2):
            e = m[k, j]
            if e is UNDEFINED:
                return False
            u = ws.u(j)
            x += e * u.p
            y += e * u.q
        if x != 0 or y != 0:
            return False
    if m[0, 0] is not UNDEFINED:
        if m.b1_sq is None:
            return False
        col0 = [m[j, 0] for j in range(n + 1)]
        if sum(c * e for c, e in zip(pullback_b1(ws), col0)) != m.b1_sq:
            return False
    return True
