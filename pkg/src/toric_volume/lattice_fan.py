"""Rank-2 lattice vectors, cone multiplicities and fans over the first quadrant.

A fan is encoded by its interior rays only: the weight sequence
``(p_1, q_1), ..., (p_n, q_n)``.  The boundary rays ``u_0 = (1, 0)`` and
``u_{n+1} = (0, 1)`` are virtual and addressable as indices ``0`` and ``n + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence


class FanValidationError(ValueError):
    """A weight sequence violates one of the fan invariants."""

    def __init__(self, condition: str, index: int, message: str):
        self.condition = condition
        self.index = index
        super().__init__(f"{condition} (k={index}): {message}")


@dataclass(frozen=True, order=True)
class LatticeVector:
    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise TypeError("lattice vector coordinates must be integers")

    def cross(self, other: "LatticeVector") -> int:
        return self.p * other.q - other.p * self.q

    def __iter__(self) -> Iterator[int]:
        yield self.p
        yield self.q


E1 = LatticeVector(1, 0)
E2 = LatticeVector(0, 1)


def is_primitive(v: LatticeVector) -> bool:
    if v.p == 0 and v.q == 0:
        raise ValueError("the zero vector has no primitivity")
    return gcd(v.p, v.q) == 1


def slope_less(a: LatticeVector, b: LatticeVector) -> bool:
    """``q_a/p_a < q_b/p_b`` for vectors in the closed first quadrant.

    Compared by cross-multiplication; ``(1, 0)`` has slope 0 and ``(0, 1)``
    slope infinity.
    """
    return a.cross(b) > 0


@dataclass(frozen=True)
class Cone2D:
    gen1: LatticeVector
    gen2: LatticeVector

    def __post_init__(self):
        if self.gen1.cross(self.gen2) == 0:
            raise ValueError(f"degenerate cone: {tuple(self.gen1)} and {tuple(self.gen2)} are dependent")


def cone_multiplicity(c: Cone2D) -> int:
    """Index of the sublattice spanned by the two generators."""
    for g in (c.gen1, c.gen2):
        if g.p < 0 or g.q < 0:
            raise ValueError(f"generator {tuple(g)} is outside the first quadrant")
        if not is_primitive(g):
            raise ValueError(f"generator {tuple(g)} is not primitive")
    det = c.gen1.cross(c.gen2)
    if det <= 0:
        raise ValueError(f"generators of {c} are not in increasing slope order (det={det})")
    return det


@dataclass(frozen=True)
class WeightSequence:
    """The tuple ``(p_1, q_1, ..., p_n, q_n)`` of interior rays.

    Construction validates positivity, primitivity and strictly increasing
    slopes, raising :class:`FanValidationError` on the first violation.
    """

    pairs: tuple[LatticeVector, ...]

    def __init__(self, pairs: Iterable, validate: bool = True):
        vecs = tuple(v if isinstance(v, LatticeVector) else LatticeVector(*v) for v in pairs)
        object.__setattr__(self, "pairs", vecs)
        if validate:
            self._validate()

    def _validate(self):
        prev = None
        for k, v in enumerate(self.pairs, start=1):
            if v.p < 1 or v.q < 1:
                raise FanValidationError("POSITIVE", k, f"need p_k, q_k >= 1, got {tuple(v)}")
            if gcd(v.p, v.q) != 1:
                raise FanValidationError("PRIMITIVE", k, f"gcd{tuple(v)} = {gcd(v.p, v.q)}")
            if prev is not None and not slope_less(prev, v):
                raise FanValidationError(
                    "SLOPE", k, f"q_{k-1}/p_{k-1} = {prev.q}/{prev.p} is not < q_{k}/p_{k} = {v.q}/{v.p}"
                )
            prev = v

    @property
    def n(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def u(self, k: int) -> LatticeVector:
        """Ray generator ``u_k`` for ``0 <= k <= n + 1``, sentinels included."""
        if k == 0:
            return E1
        if k == self.n + 1:
            return E2
        if 1 <= k <= self.n:
            return self.pairs[k - 1]
        raise IndexError(f"ray index {k} outside 0..{self.n + 1}")

    def p(self, k: int) -> int:
        return self.u(k).p

    def q(self, k: int) -> int:
        return self.u(k).q

    def mult(self, k: int) -> int:
        """``p_{k-1} q_k - p_k q_{k-1}``, the multiplicity of the k-th maximal cone."""
        if not 1 <= k <= self.n + 1:
            raise IndexError(f"cone index {k} outside 1..{self.n + 1}")
        return self.u(k - 1).cross(self.u(k))

    def truncated(self) -> "WeightSequence":
        return WeightSequence(self.pairs[:-1], validate=False)

    def with_tail(self, q_last: int) -> "WeightSequence":
        """Same sequence with the last ``q`` replaced."""
        last = self.pairs[-1]
        return WeightSequence(self.pairs[:-1] + (LatticeVector(last.p, q_last),))

    def appended(self, p: int, q: int) -> "WeightSequence":
        return WeightSequence(self.pairs + (LatticeVector(p, q),))

    def as_lists(self) -> list[list[int]]:
        return [[v.p, v.q] for v in self.pairs]

    def to_text(self) -> str:
        return ",".join(f"{v.p}:{v.q}" for v in self.pairs)

    @classmethod
    def from_text(cls, text: str, validate: bool = True) -> "WeightSequence":
        text = text.strip()
        if not text:
            return cls((), validate=validate)
        pairs = []
        for chunk in text.split(","):
            try:
                p, q = chunk.split(":")
                pairs.append((int(p), int(q)))
            except ValueError:
                raise ValueError(f"cannot parse weight pair {chunk!r}; expected 'p:q'") from None
        return cls(pairs, validate=validate)

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]], validate: bool = True) -> "WeightSequence":
        pairs = []
        for item in data:
            if len(item) != 2 or not all(isinstance(x, int) for x in item):
                raise ValueError(f"weight pair must be two integers, got {item!r}")
            pairs.append(tuple(item))
        return cls(pairs, validate=validate)

    def __repr__(self) -> str:
        return f"WeightSequence({self.to_text()!r})"


def build_fan(ws: WeightSequence) -> list[Cone2D]:
    """Maximal cones ``Cone(u_{k-1}, u_k)`` for ``k = 1..n+1``."""
    ws._validate()
    return [Cone2D(ws.u(k - 1), ws.u(k)) for k in range(1, ws.n + 2)]
