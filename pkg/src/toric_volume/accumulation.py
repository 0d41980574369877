"""Finite certificates that ``0`` is an n-fold iterated accumulation point.

Level ``k`` of a certificate is the family ``f_k(prefix, p_k, m)`` over
``m >= m_start`` coprime to ``p_k``.  It strictly decreases to
``f_{k-1}(prefix)``, with gap ``c/(a m + b)`` for ``k >= 2``.  The limit point
is itself a member of the level ``k - 1`` family, down to level 1 whose
limit is ``f_0 = 0``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Optional

from .germ import GermParams, fraction_str, germ_from_json
from .lattice_fan import WeightSequence
from .snp import SnpError, coprime_from, extend, is_member, q_threshold
from .volume import f_value


class CertificateError(ValueError):
    """The certificate is structurally malformed."""


@dataclass(frozen=True)
class AccumulationCertificate:
    level: int
    limit_weights: WeightSequence
    limit_value: Fraction
    varying_p: int
    m_start: int
    m_coprime_to: int
    increment_coeff: Optional[Fraction]
    increment_linear: Optional[tuple[int, int]]
    germ: GermParams
    child: Optional["AccumulationCertificate"] = None

    def family(self, m: int) -> WeightSequence:
        return self.limit_weights.appended(self.varying_p, m)

    def valid_ms(self, count: int) -> list[int]:
        return coprime_from(self.m_start, self.m_coprime_to, count)

    def increment(self, m: int) -> Fraction:
        """The certified gap ``f(m) - limit_value``."""
        if self.level == 1:
            p, b1 = self.varying_p, self.germ.b1_sq
            return Fraction(1, p * m) - 1 / ((p - m * b1) * m)
        a, b = self.increment_linear
        return self.increment_coeff / (a * m + b)

    def levels(self) -> list["AccumulationCertificate"]:
        """Top level first."""
        out, c = [], self
        while c is not None:
            out.append(c)
            c = c.child
        return out

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "limit_weights": self.limit_weights.as_lists(),
            "limit_value": fraction_str(self.limit_value),
            "varying_p": self.varying_p,
            "m_start": self.m_start,
            "m_coprime_to": self.m_coprime_to,
            "increment_coeff": None if self.increment_coeff is None else fraction_str(self.increment_coeff),
            "increment_linear": None if self.increment_linear is None else list(self.increment_linear),
            "germ": self.germ.to_json(),
            "child": None if self.child is None else self.child.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AccumulationCertificate":
        try:
            coeff = data["increment_coeff"]
            lin = data["increment_linear"]
            return cls(
                level=int(data["level"]),
                limit_weights=WeightSequence.from_json(data["limit_weights"]),
                limit_value=Fraction(data["limit_value"]),
                varying_p=int(data["varying_p"]),
                m_start=int(data["m_start"]),
                m_coprime_to=int(data["m_coprime_to"]),
                increment_coeff=None if coeff is None else Fraction(coeff),
                increment_linear=None if lin is None else (int(lin[0]), int(lin[1])),
                germ=germ_from_json(data["germ"]),
                child=None if data.get("child") is None else cls.from_json(data["child"]),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise CertificateError(f"malformed certificate JSON: {exc!r}") from None


def build_chain(n: int, g: GermParams) -> AccumulationCertificate:
    """Nested certificate for ``p = (l+n-1, ..., l)`` with the smallest valid
    ``m`` fixed at every lower level."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prefix = WeightSequence([])
    cert = None
    for k in range(1, n + 1):
        p_k = g.l + n - k
        start = q_threshold(prefix, p_k, g)
        if k == 1:
            coeff, lin = None, None
        else:
            p_prev, q_prev = prefix.p(k - 1), prefix.q(k - 1)
            coeff = Fraction((p_prev - p_k) ** 2, p_prev * p_k)
            lin = (p_prev, -p_k * q_prev)
        cert = AccumulationCertificate(
            level=k,
            limit_weights=prefix,
            limit_value=f_value(prefix, g),
            varying_p=p_k,
            m_start=start,
            m_coprime_to=p_k,
            increment_coeff=coeff,
            increment_linear=lin,
            germ=g,
            child=cert,
        )
        prefix = extend(prefix, p_k, g)
    return cert


def _check_structure(cert: AccumulationCertificate):
    if cert.level < 1:
        raise CertificateError(f"level {cert.level} < 1")
    if cert.limit_weights.n != cert.level - 1:
        raise CertificateError(f"level {cert.level} needs {cert.level - 1} limit pairs, got {cert.limit_weights.n}")
    if cert.level == 1:
        if cert.child is not None:
            raise CertificateError("level 1 cannot have a child")
    else:
        if cert.child is None or cert.child.level != cert.level - 1:
            raise CertificateError(f"level {cert.level} needs a level {cert.level - 1} child")
        if cert.increment_coeff is None or cert.increment_linear is None:
            raise CertificateError(f"level {cert.level} is missing its closed-form increment")
    if cert.m_coprime_to != cert.varying_p:
        raise CertificateError("m must be taken coprime to the varying p")


def certificate_failures(cert: AccumulationCertificate, samples: int, parent_p: Optional[int] = None) -> list[str]:
    """Reasons the certificate does not hold; empty when it verifies.

    Checks, at every level: (i) stored invariants, (a) admissibility of the
    sampled tuples, (b) strict decrease, (c) exact gap to the limit, (d) the
    child certificate and its link to this limit, (e) that each sampled
    tuple still extends at the parent's ``p``.
    """
    if samples < 2:
        raise CertificateError("need at least 2 samples")
    _check_structure(cert)
    g = cert.germ
    k = cert.level
    bad: list[str] = []

    if cert.limit_value != f_value(cert.limit_weights, g):
        bad.append(f"(i) level {k}: limit_value {cert.limit_value} != f of limit weights")
    try:
        honest = q_threshold(cert.limit_weights, cert.varying_p, g)
    except SnpError as exc:
        bad.append(f"(i) level {k}: no threshold: {exc}")
        return bad
    if cert.m_start < honest:
        bad.append(f"(i) level {k}: m_start {cert.m_start} below threshold {honest}")
    if k == 1:
        if cert.limit_value != 0:
            bad.append("(c) level 1: limit must be f_0 = 0")
    else:
        p_prev, q_prev = cert.limit_weights.p(k - 1), cert.limit_weights.q(k - 1)
        a, b = cert.increment_linear
        if cert.increment_coeff != Fraction((p_prev - cert.varying_p) ** 2, p_prev * cert.varying_p):
            bad.append(f"(i) level {k}: increment coefficient {cert.increment_coeff} is not (p_(k-1)-p_k)^2/(p_(k-1) p_k)")
        if (a, b) != (p_prev, -cert.varying_p * q_prev):
            bad.append(f"(i) level {k}: increment denominator ({a}, {b}) is not (p_(k-1), -p_k q_(k-1))")
        if not (cert.increment_coeff > 0 and a * cert.m_start + b > 0):
            bad.append(f"(i) level {k}: increment not positive on its domain")

    prev = None
    for m in cert.valid_ms(samples):
        ws = cert.family(m)
        if not is_member(ws, g):
            bad.append(f"(a) level {k}, m={m}: {ws.to_text()} is not admissible")
            continue
        f = f_value(ws, g)
        if prev is not None and not f < prev:
            bad.append(f"(b) level {k}, m={m}: {f} does not decrease from {prev}")
        prev = f
        if f - cert.limit_value != cert.increment(m) or not f > cert.limit_value:
            bad.append(f"(c) level {k}, m={m}: f - limit = {f - cert.limit_value}, certified {cert.increment(m)}")
        if parent_p is not None:
            try:
                extend(ws, parent_p, g)
            except SnpError as exc:
                bad.append(f"(e) level {k}, m={m}: does not extend at p={parent_p}: {exc}")

    if cert.child is not None:
        child = cert.child
        head, tail = cert.limit_weights.pairs[:-1], cert.limit_weights.pairs[-1]
        linked = (
            head == child.limit_weights.pairs
            and tail.p == child.varying_p
            and tail.q >= child.m_start
            and gcd(tail.q, child.m_coprime_to) == 1
        )
        if not linked:
            bad.append(f"(d) level {k}: limit weights are not a member of the level {k - 1} family")
        bad.extend(certificate_failures(child, samples, parent_p=cert.varying_p))
    return bad


def verify_certificate(cert: AccumulationCertificate, samples: int) -> bool:
    return not certificate_failures(cert, samples)


def sample_values(cert: AccumulationCertificate, count: int, as_volumes: bool = False, g: Optional[GermParams] = None) -> list[Fraction]:
    """First ``count`` values of the top family, or their volumes ``vol_x - f``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    g = g or cert.germ
    values = [f_value(cert.family(m), g) for m in cert.valid_ms(count)]
    if as_volumes:
        return [g.vol_x - v for v in values]
    return values


def _row(job):
    cert, m, as_volumes = job
    f = f_value(cert.family(m), cert.germ)
    value = cert.germ.vol_x - f if as_volumes else f
    return (cert.level, m, value, f - cert.limit_value)


def chain_rows(cert: AccumulationCertificate, samples: int, as_volumes: bool = False, jobs: int = 1) -> list[tuple]:
    """``(level, m, f or vol, increment)`` rows, level 1 first.

    Order does not depend on ``jobs``.
    """
    work = []
    for c in reversed(cert.levels()):
        bare = replace(c, child=None)
        work.extend((bare, m, as_volumes) for m in c.valid_ms(samples))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, work, chunksize=8))
    return [_row(job) for job in work]
