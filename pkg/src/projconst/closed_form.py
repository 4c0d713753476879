"""Closed-form projection constants for hyperplanes of l_inf.

All evaluators accept floats or Fractions; rational input gives an exact
Fraction result, float input is summed with ``math.fsum``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._numeric import all_rational, total
from .errors import DegenerateFunctionalError, DomainError, HypothesisViolation
from .functional import NORMALIZATION_TOL, HyperplaneFunctional


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of ``f_{n,a,b} = (1 - b) g + b h_{a,n}``."""

    n: int
    a: object
    b: object

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        _check_a(self.n, self.a)
        if not 0 < self.b <= 1:
            raise DomainError(f"b must lie in (0, 1], got {self.b!r}")


def _check_a(n: int, a) -> None:
    lower = Fraction(1, n - 1) if all_rational([a]) else 1 / (n - 1)
    if not lower <= a <= 1:
        raise DomainError(f"a must lie in [1/(n-1), 1] = [{float(lower)}, 1], got {a!r}")


def _summing_terms(moduli: Sequence) -> list:
    terms = []
    for x in moduli:
        if 2 * x >= 1:
            raise HypothesisViolation(
                f"coefficient of modulus {x!r} >= 1/2; the closed form needs every |h_i| < 1/2"
            )
        terms.append(x / (1 - 2 * x))
    return terms


def blatter_cheney(h: Sequence) -> object:
    """Projection constant of ``ker h`` in l_inf for a finitely supported ``h``.

    Returns ``1 + (sum_k |h_k| / (1 - 2|h_k|))^-1``.  Requires ``||h||_1 = 1``
    and ``||h||_inf < 1/2``.
    """
    moduli = [abs(x) for x in h]
    if not moduli or all(x == 0 for x in moduli):
        raise DegenerateFunctionalError("degenerate functional: h = 0")
    if abs(total(moduli) - 1) > NORMALIZATION_TOL:
        raise DomainError(f"||h||_1 must be 1, got {float(total(moduli))!r}")
    return 1 + 1 / total(_summing_terms(moduli))


def mixed_lambda(f: HyperplaneFunctional) -> object:
    """Projection constant of ``ker f`` for ``f = h + g`` with singular weight ``gamma``.

    ``1 + (gamma + sum_i |h_i| / (1 - 2|h_i|))^-1``, valid when every
    ``|h_i| < 1/2``.  The value lies in (1, 2]; ``h = ()``, ``gamma = 1``
    gives 2.
    """
    f.require_normalized()
    if not f.is_real:
        raise DomainError("closed form is evaluated on real coefficients; sign-normalize first")
    moduli = [abs(x) for x in f.atomic]
    terms = _summing_terms(moduli)
    return 1 + 1 / total(terms + [f.gamma])


def h_an(n: int, a) -> tuple:
    """The vector ``(1, a, ..., a) / (1 + (n-1) a)`` of length ``n``."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    _check_a(n, a)
    if all_rational([a]):
        a = Fraction(a)
    scale = 1 + (n - 1) * a
    return (1 / scale,) + (a / scale,) * (n - 1)


def curve_g(n: int, a) -> object:
    """Projection constant of ``ker h_{a,n}`` as a function of ``a``.

    ``1 + (1/((n-1)a - 1) + (n-1)a/(1 + (n-3)a))^-1``; at the left endpoint
    ``a = 1/(n-1)`` the first term blows up and the continuous value 1 is
    returned.

    A float ``a`` is evaluated exactly at the rational value it represents
    and rounded once, so the endpoint values come out correctly rounded.
    """
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"curve_g needs an integer n >= 3, got {n!r}")
    _check_a(n, a)
    as_float = isinstance(a, float)
    x = Fraction(a)
    first_den = (n - 1) * x - 1
    if first_den <= 0:
        value = Fraction(1)
    else:
        value = 1 + 1 / (1 / first_den + (n - 1) * x / (1 + (n - 3) * x))
    return float(value) if as_float else value


def family_functional(p: FamilyParams) -> HyperplaneFunctional:
    """``f_{n,a,b}``: atomic part ``b h_{a,n}``, non-attaining singular part of weight ``1 - b``."""
    b = p.b
    if all_rational([p.a, b]):
        b = Fraction(b)
    return HyperplaneFunctional(tuple(b * x for x in h_an(p.n, p.a)), 1 - b, False)


def lambda_f_nab(p: FamilyParams) -> object:
    """Projection constant of ``ker f_{n,a,b}``."""
    return mixed_lambda(family_functional(p))
