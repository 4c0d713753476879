"""Projection constant of ``ker f`` as a minimax problem, and whether it is attained.

Every projection onto ``ker f`` is ``P_y = I - f (x) y`` with ``<f, y> = 1``,
so the constant is the infimum over such ``y`` of the largest row norm
``phi_j(y_j) = |1 - h_j y_j| + |y_j|(1 - |h_j|)`` and the tail row ``1 + t``.

For a candidate norm ``tau`` each coordinate can push ``h_j y_j`` up to an
explicit maximum (``phi_j`` is convex and piecewise linear, ``phi_j(0) = 1``)
and the tail can contribute up to ``gamma (tau - 1)`` through ``s <= t``.
``tau`` is feasible iff these capacities reach 1.  Capacity is
nondecreasing in ``tau``, so the constant is found by bisection on
``[1, 2]``; the final bracket contains no kink of the capacity, where one
affine solve gives the root.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._numeric import sgn, total
from .errors import DomainError, SolverError
from .functional import ExtendedVector, HyperplaneFunctional

log = logging.getLogger(__name__)

MAX_BISECTIONS = 200
DEFAULT_LEVELS = (10, 100, 1000, 10000)

FINITE_DIMENSIONAL = "finite-dimensional"
SINGULAR_ATTAINING = "singular-attaining"
SINGULAR_NON_ATTAINING = "singular-non-attaining"
SINGULAR_UNUSED = "singular-unused"


@dataclass(frozen=True)
class SolverResult:
    lam: object
    attained: bool
    minimizer: ExtendedVector | None
    iterations: int
    tolerance: float
    justification: str = ""
    closed_form_regime: bool = True


@dataclass(frozen=True)
class GapSequence:
    """Excess ``lambda_m - lambda`` of the restricted problems ``|s| <= (1 - 1/m) t``."""

    levels: tuple
    gaps: tuple

    def is_evidence(self, threshold: float = 1e-3) -> bool:
        """Strictly positive, nonincreasing, and small at the last level."""
        if not self.gaps or len(self.gaps) != len(self.levels):
            return False
        if any(d <= 0 for d in self.gaps):
            return False
        if any(later > earlier for earlier, later in zip(self.gaps, self.gaps[1:])):
            return False
        return self.gaps[-1] < threshold


def _coordinate_reach(h, tau):
    """Largest ``y`` with ``phi(y) <= tau`` for a coefficient ``h > 0``.

    Below ``h y = 1`` the row norm is ``1 + y (1 - 2h)``, above it ``y - 1``.
    The kink sits at ``tau = 1/h - 1``; for ``h >= 1/2`` it is at or below 1.
    """
    if tau >= 1 / h - 1:
        return tau + 1
    return (tau - 1) / (1 - 2 * h)


def _group(moduli: Sequence) -> tuple:
    """Nonzero moduli as ``(value, multiplicity)`` pairs; families repeat one value many times."""
    return tuple(sorted(Counter(h for h in moduli if h != 0).items()))


def _capacity(groups: tuple, weight, tau):
    parts = [k * (h * _coordinate_reach(h, tau)) for h, k in groups]
    parts.append(weight * (tau - 1))
    return total(parts)


def _affine_root(groups: tuple, weight, lo, hi):
    """Root of ``capacity = 1`` in a bracket, solved exactly on its linear piece."""
    kinks = sorted({1 / h - 1 for h, _ in groups if lo < 1 / h - 1 < hi})
    edges = [lo] + kinks + [hi]
    for p, q in zip(edges, edges[1:]):
        if _capacity(groups, weight, q) >= 1:
            break
    # on (p, q) no coordinate changes regime
    slow = [k * (h / (1 - 2 * h)) for h, k in groups if 1 / h - 1 > p]
    fast = [k * h for h, k in groups if 1 / h - 1 <= p]
    s1 = total(slow + [weight])
    s2 = total(fast)
    root = (1 + s1 - s2) / (s1 + s2)
    return min(max(root, p), q)


def _minimize(groups: tuple, weight, tol, upper):
    """Return ``(lambda, iterations)`` for grouped moduli and tail weight ``weight``."""
    one = Fraction(1) if isinstance(upper, Fraction) else 1.0
    if _capacity(groups, weight, one) >= 1:
        return one, 0
    if _capacity(groups, weight, upper) < 1:
        raise SolverError(f"no feasible norm in [1, {float(upper)}]; bracket failed")
    lo, hi = one, upper
    iterations = 0
    while hi - lo > tol and iterations < MAX_BISECTIONS:
        mid = (lo + hi) / 2
        if _capacity(groups, weight, mid) >= 1:
            hi = mid
        else:
            lo = mid
        iterations += 1
    return _affine_root(groups, weight, lo, hi), iterations


def _prepare(f: HyperplaneFunctional, tol, exact: bool = False):
    f.require_normalized()
    if not f.is_real:
        raise DomainError("solver works on real data; sign-normalize and reduce complex input first")
    if not 1e-14 < tol < 1e-2:
        raise DomainError(f"tolerance must lie in (1e-14, 1e-2), got {tol!r}")
    f = f.real_part()
    if exact or f.is_exact:
        moduli = [Fraction(abs(x)) for x in f.atomic]
        return f, moduli, _group(moduli), Fraction(f.gamma), Fraction(2)
    moduli = [float(abs(x)) for x in f.atomic]
    return f, moduli, _group(moduli), float(f.gamma), 2.0


def capacity(f: HyperplaneFunctional, tau):
    """Largest ``<f, y>`` reachable by a ``y`` with ``||P_y|| <= tau`` (real ``f``)."""
    f = f.real_part()
    return _capacity(_group([abs(x) for x in f.atomic]), f.gamma, tau)


def feasible(f: HyperplaneFunctional, tau) -> bool:
    """Whether norms ``<= tau`` are reachable (approached, if ``g`` does not attain)."""
    return tau >= 1 and capacity(f, tau) >= 1


def min_projection_norm(f: HyperplaneFunctional, tol: float = 1e-9) -> SolverResult:
    """Projection constant of ``ker f`` together with an attainment verdict.

    The infimum is attained when there is no singular part, when the
    singular part attains its norm, or when the atomic part alone reaches
    pairing 1 at the optimum (then ``s = 0`` works).  Otherwise the optimum
    needs ``|s| = t > 0``, which a non-attaining ``g`` cannot realise.

    Rational input is solved exactly; the returned ``lam`` is then a Fraction.
    """
    f, moduli, groups, weight, upper = _prepare(f, tol)
    lam, iterations = _minimize(groups, weight, tol, upper)
    regime = all(2 * h < 1 for h in moduli)
    if not regime:
        log.info("outside closed-form regime, result numerical only")

    singular_unused = weight > 0 and _capacity(groups, 0, lam) >= 1
    if f.gamma == 0:
        tag = FINITE_DIMENSIONAL
    elif singular_unused:
        log.info("optimum reachable with s = 0; singular part unused (lambda = %s)", float(lam))
        tag = SINGULAR_UNUSED
    elif f.singular_attains:
        tag = SINGULAR_ATTAINING
    else:
        tag = SINGULAR_NON_ATTAINING
    attained = tag != SINGULAR_NON_ATTAINING

    minimizer = None
    if attained:
        tail_weight = weight if tag == SINGULAR_ATTAINING else 0
        minimizer = _build_minimizer(f, moduli, groups, tail_weight, lam)
    return SolverResult(lam, attained, minimizer, iterations, tol, tag, regime)


def _build_minimizer(f, moduli: Sequence, groups: tuple, weight, lam) -> ExtendedVector:
    # at the optimum every coordinate with h_j != 0 sits at its reach; h_j = 0
    # coordinates are free in [-(lam - 1), lam - 1] and take the midpoint 0
    theta = 1 / _capacity(groups, weight, lam)
    prefix = tuple(
        sgn(x) * (theta * _coordinate_reach(h, lam)) if h != 0 else 0 * lam
        for x, h in zip(f.atomic, moduli)
    )
    if weight == 0:
        return ExtendedVector(prefix, 0 * lam, 0 * lam)
    s = theta * (lam - 1)
    return ExtendedVector(prefix, max(lam - 1, s), s)


def attainment_decision(f: HyperplaneFunctional) -> tuple[bool, str]:
    """Whether a minimal projection onto ``ker f`` exists, with the reason."""
    result = min_projection_norm(f)
    return result.attained, result.justification


def truncation_gaps(
    f: HyperplaneFunctional,
    levels: Sequence[int] = DEFAULT_LEVELS,
    tol: float = 1e-12,
    exact: bool = False,
) -> GapSequence:
    """Gaps ``lambda_m - lambda`` where level ``m`` only allows ``|s| <= (1 - 1/m) t``.

    Each restricted problem is closed and attains its minimum, so positive
    gaps shrinking to zero show the infimum is approached but never reached.

    With ``exact=True`` float coefficients are converted to the Fractions
    they represent and the gaps come back as Fractions; this keeps gaps far
    below the float resolution of ``lambda`` from cancelling to zero.
    """
    if f.gamma == 0 or f.singular_attains:
        raise DomainError("gap sequence undefined: minimal projection may exist")
    levels = tuple(levels)
    if not levels:
        raise DomainError("at least one level is required")
    if any(not isinstance(m, int) or m < 2 for m in levels):
        raise DomainError(f"levels must be integers >= 2, got {levels!r}")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise DomainError(f"levels must be strictly increasing, got {levels!r}")
    f, _, groups, weight, upper = _prepare(f, tol, exact)
    lam, _ = _minimize(groups, weight, tol, upper)
    gaps = []
    for m in levels:
        shrink = 1 - (Fraction(1, m) if isinstance(weight, Fraction) else 1 / m)
        # at tau >= 1 + 1/shrink the tail alone gives gamma and y_j = 1 gives
        # ||h||_1; one extra unit keeps the bracket clear of rounding
        lam_m, _ = _minimize(groups, weight * shrink, tol, 2 + 1 / shrink)
        gaps.append(lam_m - lam)
    return GapSequence(levels, tuple(gaps))
