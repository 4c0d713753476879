"""Hyperplanes of l_inf with a prescribed projection constant and no minimal projection.

For a target in (1, 2) the kernel of ``f_{n,a,b} = (1 - b) g + b h_{a,n}``
is used, with ``g`` singular and non-attaining.  As ``a`` runs over
``[1/(n-1), 1]`` the constant moves continuously between values that, for
``b`` close to 1, straddle the target; the right ``a`` is found by
bisection.  The target 2 uses a purely singular non-attaining functional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closed_form import FamilyParams, family_functional, lambda_f_nab, mixed_lambda
from .errors import DomainError, ProjconstError, SolverError
from .functional import HyperplaneFunctional
from .solver import DEFAULT_LEVELS, GapSequence, min_projection_norm, truncation_gaps

MAX_K = 40
MAX_BISECTIONS = 200

MIXED = "mixed"
PURE_SINGULAR = "pure_singular"


@dataclass(frozen=True)
class ExampleCertificate:
    target: float
    kind: str
    functional: HyperplaneFunctional
    lambda_closed_form: float
    lambda_solver: float
    gap_evidence: GapSequence
    tolerance: float
    n: int | None = None
    a: float | None = None
    b: float | None = None

    @property
    def params(self) -> FamilyParams | None:
        if self.kind != MIXED:
            return None
        return FamilyParams(self.n, self.a, self.b)


def smallest_n(target: float) -> int:
    """Least ``n >= 3`` with ``2 - 2/n > target``."""
    n = max(3, math.floor(2 / (2 - target)))
    while 2 - 2 / n <= target:
        n += 1
    while n > 3 and 2 - 2 / (n - 1) > target:
        n -= 1
    return n


def _check_target(target: float, tol: float) -> None:
    if not 1 < target <= 2:
        raise DomainError(f"target must lie in (1, 2], got {target!r}")
    if not 1e-12 < tol < 1e-4:
        raise DomainError(f"tolerance must lie in (1e-12, 1e-4), got {tol!r}")


def bracket_b(n: int, target: float) -> tuple[float, int]:
    """First ``b = 1 - 2^-k`` whose curve endpoints straddle ``target``."""
    for k in range(1, MAX_K + 1):
        b = 1 - 2.0**-k
        left = lambda_f_nab(FamilyParams(n, 1 / (n - 1), b))
        right = lambda_f_nab(FamilyParams(n, 1.0, b))
        if left < target < right:
            return b, k
    raise SolverError(f"no b = 1 - 2^-k with k <= {MAX_K} brackets {target} for n = {n}")


def solve_a(n: int, b: float, target: float, tol: float) -> float:
    """Bisection on ``a -> lambda(ker f_{n,a,b})`` until within ``tol / 4`` of ``target``."""
    lo, hi = 1 / (n - 1), 1.0
    a = lo
    for _ in range(MAX_BISECTIONS):
        a = (lo + hi) / 2
        value = lambda_f_nab(FamilyParams(n, a, b))
        if abs(value - target) <= tol / 4:
            return a
        if value < target:
            lo = a
        else:
            hi = a
        if hi - lo <= 0:
            break
    raise SolverError(f"bisection in a did not reach {target} to {tol}")


def _exact_gaps(f: HyperplaneFunctional, levels) -> GapSequence:
    gaps = truncation_gaps(f, levels, exact=True)
    return GapSequence(gaps.levels, tuple(float(d) for d in gaps.gaps))


def design_for_target(target: float, tol: float = 1e-9, levels=DEFAULT_LEVELS) -> ExampleCertificate:
    """Build a functional whose kernel has projection constant ``target`` and no minimal projection."""
    _check_target(target, tol)
    if target == 2:
        f = HyperplaneFunctional((), 1.0, False)
        closed = mixed_lambda(f)
        return ExampleCertificate(
            target=target,
            kind=PURE_SINGULAR,
            functional=f,
            lambda_closed_form=closed,
            lambda_solver=min_projection_norm(f, tol).lam,
            gap_evidence=_exact_gaps(f, levels),
            tolerance=tol,
        )
    n = smallest_n(target)
    b, _ = bracket_b(n, target)
    a = solve_a(n, b, target, tol)
    p = FamilyParams(n, a, b)
    f = family_functional(p)
    return ExampleCertificate(
        target=target,
        kind=MIXED,
        functional=f,
        lambda_closed_form=lambda_f_nab(p),
        lambda_solver=min_projection_norm(f, tol).lam,
        gap_evidence=_exact_gaps(f, levels),
        tolerance=tol,
        n=n,
        a=a,
        b=b,
    )


def certificate_problems(c: ExampleCertificate) -> list[str]:
    """Every invariant the certificate fails; empty when it verifies."""
    problems = []
    tol = c.tolerance
    f = c.functional
    if not isinstance(tol, float) or not 0 < tol < 1e-4:
        return [f"tolerance {tol!r} is not a usable float"]
    if not 1 < c.target <= 2:
        problems.append(f"target {c.target} outside (1, 2]")
    if not f.is_real:
        problems.append("functional has complex coefficients")
    elif not f.is_normalized:
        problems.append("functional is not normalized")
    if f.gamma == 0 or f.singular_attains:
        problems.append("functional has no non-attaining singular part")
    if problems:
        # recomputation below assumes a normalized non-attaining functional
        return problems

    if c.kind == MIXED:
        try:
            p = c.params
        except DomainError as exc:
            return problems + [f"invalid family parameters: {exc}"]
        if not p.b < 1:
            problems.append("b must be < 1 so that a singular part is present")
        expected = family_functional(p)
        if len(expected.h) != f.m or any(
            abs(x - y) > 1e-15 for x, y in zip(expected.h, f.h)
        ) or abs(expected.gamma - f.gamma) > 1e-15:
            problems.append("functional does not match (n, a, b)")
        recomputed = lambda_f_nab(p)
        n = p.n
        if not (n == 3 or 2 - 2 / (n - 1) <= c.target) or not c.target < 2 - 2 / n:
            problems.append(f"n = {n} is not the least admissible value")
    elif c.kind == PURE_SINGULAR:
        if f.m != 0 or c.target != 2:
            problems.append("pure singular certificate must have h = () and target 2")
        recomputed = mixed_lambda(f) if f.is_normalized else math.nan
    else:
        return problems + [f"unknown kind {c.kind!r}"]

    if not abs(recomputed - c.lambda_closed_form) <= 1e-15 * 4:
        problems.append("stored closed-form value does not match recomputation")
    if not abs(recomputed - c.target) <= tol:
        problems.append(f"closed form {recomputed!r} misses target {c.target!r} by more than {tol}")
    solver = min_projection_norm(f, tol)
    if solver.attained:
        problems.append("solver reports an attained minimum")
    if not abs(solver.lam - recomputed) <= 10 * tol:
        problems.append("solver value disagrees with the closed form")
    if not abs(c.lambda_solver - solver.lam) <= 10 * tol:
        problems.append("stored solver value does not match recomputation")

    gaps = c.gap_evidence
    if not gaps.is_evidence():
        problems.append("gap sequence is not strictly positive, nonincreasing and below 1e-3")
    else:
        fresh = _exact_gaps(f, gaps.levels)
        if any(abs(x - y) > 1e-9 for x, y in zip(fresh.gaps, gaps.gaps)):
            problems.append("stored gaps do not match recomputation")
    return problems


def verify_certificate(c: ExampleCertificate) -> bool:
    try:
        return not certificate_problems(c)
    except ProjconstError:
        return False
