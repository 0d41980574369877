from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .germ import fraction_str


def exact(x) -> str:
    return fraction_str(Fraction(x))


def approx(x, digits: int) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def show(x, digits: Optional[int] = None) -> str:
    """Exact ``num/den``, optionally followed by a labeled decimal."""
    text = exact(x)
    if digits:
        text += f" (APPROX {approx(x, digits)}, {digits} significant digits)"
    return text
