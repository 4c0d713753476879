"""Functionals f = h + g on l_inf, model vectors y, and the norm-preserving reductions.

A norm-one functional on l_inf splits as an l_1 part ``h`` plus a singular
part ``g`` vanishing on c_0.  Only finitely supported ``h`` is represented.
The singular part is described by its weight ``gamma = ||g||`` and whether it
attains its norm; nothing else about a Banach limit is needed.

A vector ``y`` is described by its first ``m`` coordinates, the magnitude
``t = limsup |y_j|`` of its tail and the normalised singular pairing
``s = <g, y> / gamma``.  Every singular functional of norm one satisfies
``|<g, y>| <= ||g|| limsup |y_j|``, hence ``|s| <= t``; a non-attaining one
never reaches equality with ``s != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._numeric import all_rational, as_real, conj, exactify, is_real_valued, sgn, total
from .errors import DegenerateFunctionalError, DomainError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class HyperplaneFunctional:
    """Functional ``f = h + g`` with finite atomic part ``h`` and singular weight ``gamma``."""

    atomic: tuple = ()
    singular_weight: object = 0
    singular_attains: bool = True

    def __post_init__(self):
        object.__setattr__(self, "atomic", tuple(self.atomic))
        gamma = self.singular_weight
        if not is_real_valued(gamma):
            raise DomainError("singular weight must be real")
        gamma = as_real(gamma)
        if gamma < 0:
            raise DomainError(f"singular weight must be nonnegative, got {gamma}")
        object.__setattr__(self, "singular_weight", gamma)
        if gamma == 0:
            # without a singular part the flag carries no information
            object.__setattr__(self, "singular_attains", True)
        else:
            object.__setattr__(self, "singular_attains", bool(self.singular_attains))

    @property
    def h(self) -> tuple:
        return self.atomic

    @property
    def gamma(self):
        return self.singular_weight

    @property
    def m(self) -> int:
        return len(self.atomic)

    @property
    def atomic_norm(self):
        """The l_1 norm of the atomic part."""
        return total(abs(x) for x in self.atomic)

    @property
    def norm(self):
        return total([self.atomic_norm, self.singular_weight])

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm - 1) <= NORMALIZATION_TOL

    @property
    def is_real(self) -> bool:
        return all(is_real_valued(x) for x in self.atomic)

    @property
    def is_exact(self) -> bool:
        return all_rational(self.atomic) and all_rational([self.singular_weight])

    def require_normalized(self) -> None:
        if not self.is_normalized:
            raise DomainError(
                f"functional is not normalized: ||h||_1 + gamma = {float(self.norm)!r}"
            )

    def real_part(self) -> "HyperplaneFunctional":
        """Same functional with real-valued complex coefficients cast to reals."""
        if not self.is_real:
            raise DomainError("atomic coefficients are not real; sign-normalize first")
        return HyperplaneFunctional(
            tuple(as_real(x) for x in self.atomic), self.singular_weight, self.singular_attains
        )


@dataclass(frozen=True)
class ExtendedVector:
    """Model of ``y`` in l_inf: prefix, tail magnitude ``t`` and singular pairing ``s``."""

    prefix: tuple = ()
    tail_mag: object = 0.0
    tail_pair: object = 0.0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if not is_real_valued(self.tail_mag):
            raise DomainError("tail magnitude must be real")
        t = as_real(self.tail_mag)
        if t < 0:
            raise DomainError(f"tail magnitude must be nonnegative, got {t}")
        object.__setattr__(self, "tail_mag", t)
        if abs(self.tail_pair) > t:
            raise DomainError(
                f"|s| = {abs(self.tail_pair)!r} exceeds the tail magnitude t = {t!r}"
            )

    @property
    def y(self) -> tuple:
        return self.prefix

    @property
    def t(self):
        return self.tail_mag

    @property
    def s(self):
        return self.tail_pair

    @property
    def sup_norm(self):
        return max([abs(v) for v in self.prefix] + [self.tail_mag])

    @property
    def is_real(self) -> bool:
        return all(is_real_valued(v) for v in self.prefix) and is_real_valued(self.tail_pair)

    def feasible_for(self, f: HyperplaneFunctional) -> bool:
        """Whether some sequence with this prefix and tail pairs with ``g`` as recorded.

        A singular functional that does not attain its norm cannot reach
        ``|<g, y>| = ||g|| limsup |y_j|`` except at zero.
        """
        if len(self.prefix) != f.m:
            return False
        if f.gamma == 0 or f.singular_attains or self.tail_pair == 0:
            return True
        return abs(self.tail_pair) < self.tail_mag


@dataclass(frozen=True)
class DiagonalIsometry:
    """Coordinatewise multiplication ``x -> (a_1 x_1, ..., a_m x_m, x_{m+1}, ...)``."""

    signs: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        for a in self.signs:
            if abs(abs(a) - 1) > 1e-12:
                raise DomainError(f"isometry entries must be unimodular, got {a!r}")


def normalize(h: Sequence, gamma=0, attains: bool = True) -> HyperplaneFunctional:
    """Scale ``(h, gamma)`` so that ``||h||_1 + gamma = 1``.

    Rational input (ints and Fractions) is normalized exactly.  Input that is
    already normalized (total exactly 1) is returned unchanged.

    Raises:
        DegenerateFunctionalError: if both parts vanish.
    """
    h = tuple(h)
    if all_rational(h) and all_rational([gamma]):
        h = exactify(h)
        gamma = exactify([gamma])[0]
    if gamma < 0:
        raise DomainError(f"singular weight must be nonnegative, got {gamma}")
    scale = total([total(abs(x) for x in h), gamma])
    if scale == 0:
        raise DegenerateFunctionalError("degenerate functional: h = 0 and gamma = 0")
    if scale != 1:
        h = tuple(x / scale for x in h)
        gamma = gamma / scale
    return HyperplaneFunctional(h, gamma, attains)


def sign_normalize(f: HyperplaneFunctional) -> tuple[HyperplaneFunctional, DiagonalIsometry]:
    """Rotate every atomic coefficient onto the nonnegative real axis.

    Returns the functional with coefficients ``|h_i|`` and the isometry
    record ``a_i = conj(sgn h_i)`` (``a_i = 1`` where ``h_i = 0``), so that
    ``h_i * a_i = |h_i|``.
    """
    signs = tuple(conj(sgn(x)) for x in f.atomic)
    moduli = tuple(abs(x) for x in f.atomic)
    return HyperplaneFunctional(moduli, f.singular_weight, f.singular_attains), DiagonalIsometry(signs)


def conjugate_functional(T: DiagonalIsometry, f: HyperplaneFunctional) -> HyperplaneFunctional:
    """Coefficients ``h_i -> a_i h_i``; with the record from ``sign_normalize`` this gives ``|h_i|``."""
    if len(T.signs) != f.m:
        raise DomainError(f"isometry has {len(T.signs)} entries, functional has {f.m}")
    return HyperplaneFunctional(
        tuple(a * x for a, x in zip(T.signs, f.atomic)), f.singular_weight, f.singular_attains
    )


def conjugate_vector(T: DiagonalIsometry, y: ExtendedVector) -> ExtendedVector:
    """Carry ``y`` along with the functional so pairings are preserved.

    Coordinate ``i`` becomes ``conj(a_i) y_i``; for real signs this is
    ``a_i y_i``.  Then ``<a h, conj(a) y> = <h, y>`` coordinatewise, and all
    moduli are unchanged.  The tail is untouched.
    """
    if len(T.signs) != len(y.prefix):
        raise DomainError(f"isometry has {len(T.signs)} entries, vector has {len(y.prefix)}")
    return ExtendedVector(
        tuple(conj(a) * v for a, v in zip(T.signs, y.prefix)), y.tail_mag, y.tail_pair
    )


def clip_to_ball(y: ExtendedVector) -> ExtendedVector:
    """Replace every prefix entry with ``|y_j| > 1`` by ``sgn(y_j)``.

    Only finitely many coordinates move, so the difference lies in c_0 and
    the singular pairing is unchanged.
    """
    if y.tail_mag > 1:
        raise DomainError(f"clipping needs t <= 1, got t = {y.tail_mag!r}")
    clipped = tuple(sgn(v) if abs(v) > 1 else v for v in y.prefix)
    return ExtendedVector(clipped, y.tail_mag, y.tail_pair)
