"""Scalar helpers shared by the float and the exact-rational code paths.

Inputs made only of ints and Fractions stay exact; anything containing a
float is summed with ``math.fsum``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Rational, Real
from typing import Iterable, Sequence

Scalar = Complex  # int, float, Fraction or complex


def is_rational(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def all_rational(values: Iterable) -> bool:
    return all(is_rational(v) for v in values)


def exactify(values: Sequence) -> tuple:
    """Promote ints to Fractions so later divisions stay exact."""
    return tuple(Fraction(v) for v in values)


def is_real_valued(x) -> bool:
    if isinstance(x, Real):
        return True
    return complex(x).imag == 0


def as_real(x):
    """Drop a zero imaginary part, keeping Fractions and floats as they are."""
    if isinstance(x, Real):
        return x
    z = complex(x)
    if z.imag != 0:
        raise ValueError(f"{x!r} is not real")
    return z.real


def total(values: Iterable):
    """Compensated sum; exact when every term is rational."""
    values = list(values)
    if all_rational(values):
        return sum(values, Fraction(0))
    if all(isinstance(v, Real) for v in values):
        return math.fsum(values)
    zs = [complex(v) for v in values]
    return complex(math.fsum(z.real for z in zs), math.fsum(z.imag for z in zs))


def sgn(x):
    """Sign of a real or complex scalar, with sgn(0) = 1."""
    if x == 0:
        return 1
    if isinstance(x, Real):
        return 1 if x > 0 else -1
    z = complex(x)
    if z.imag == 0:
        return 1 if z.real > 0 else -1
    return z / abs(z)


def conj(x):
    if isinstance(x, Real):
        return x
    return complex(x).conjugate()
