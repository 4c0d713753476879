"""Norm of the projection ``P_y x = x - <f, x> y`` onto ``ker f``.

For a norm-one ``f = h + g`` the j-th row of ``P_y`` is the functional
``e_j - y_j f`` whose norm in ``l_1 (+)_1 c_0^perp`` is
``|1 - h_j y_j| + |y_j| (1 - |h_j|)``.  Rows outside the atomic support
contribute ``1 + |y_j|``, whose supremum over the tail is ``1 + t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import as_real, total
from .errors import DomainError, InfeasibleVectorError, NotAProjectionError
from .functional import ExtendedVector, HyperplaneFunctional

PAIRING_TOL = 1e-10
MAX_ENUMERATION_COORDS = 24


@dataclass(frozen=True)
class NormReport:
    per_coord: tuple
    tail_value: object
    norm: object
    pairing: object


@dataclass(frozen=True)
class Witness:
    """Unit vector ``x^1 = w + x`` whose image has a large coordinate.

    ``w`` lives on the entries up to the chosen coordinate, with
    ``w_j = -sgn(<g, x>) sgn(y_j)``, recorded for ``<g, x> > 0`` and
    ``y_j > 0``; ``x`` is a unit tail vector vanishing up to that coordinate
    with ``<g, x> = g_pairing``.
    """

    coordinate: str
    y_j_modulus: object
    w_j: object
    g_pairing: object
    row_value: object


def _check_lengths(f: HyperplaneFunctional, y: ExtendedVector) -> None:
    if len(y.prefix) != f.m:
        raise DomainError(f"vector prefix has {len(y.prefix)} entries, functional has {f.m}")


def pairing(f: HyperplaneFunctional, y: ExtendedVector):
    """``<f, y> = sum_j h_j y_j + gamma s``."""
    _check_lengths(f, y)
    return total([h * v for h, v in zip(f.atomic, y.prefix)] + [f.gamma * y.tail_pair])


def operator_norm(f: HyperplaneFunctional, y: ExtendedVector) -> NormReport:
    """Exact norm of ``P_y`` on the modelled space.

    Raises:
        NotAProjectionError: if ``<f, y>`` differs from 1 by more than 1e-10.
        InfeasibleVectorError: if ``y`` claims a singular pairing that a
            non-attaining ``g`` cannot realise.
    """
    f.require_normalized()
    p = pairing(f, y)
    if abs(p - 1) > PAIRING_TOL:
        raise NotAProjectionError(f"not a projection onto ker f: <f, y> = {p!r}")
    if not y.feasible_for(f):
        raise InfeasibleVectorError(
            "singular part does not attain its norm, so |s| < t is required when s != 0"
        )
    per_coord = tuple(
        abs(1 - h * v) + abs(v) * (1 - abs(h)) for h, v in zip(f.atomic, y.prefix)
    )
    tail_value = 1 + y.tail_mag
    return NormReport(per_coord, tail_value, max(per_coord + (tail_value,)), p)


def brute_force_norm(f: HyperplaneFunctional, y: ExtendedVector, tail_coords: int = 0) -> float:
    """``max ||P_y x||_inf`` over the sign vectors of a finite truncation.

    The tail is materialised as ``tail_coords`` coordinates ``+t, -t, ...``
    on which ``h`` vanishes; the singular part vanishes on finitely supported
    vectors, so for ``gamma > 0`` this is only a lower bound.  With
    ``tail_coords = 0`` one coordinate with ``h_j = y_j = 0`` stands in for
    the rest of the space, where ``P_y`` acts as the identity.  Real data only.
    """
    _check_lengths(f, y)
    if f.gamma != 0 and tail_coords < 1:
        raise DomainError("a singular part needs at least one materialised tail coordinate")
    if not (f.is_real and y.is_real):
        raise DomainError("enumeration over sign vectors needs real data")
    k = f.m + tail_coords
    if k > MAX_ENUMERATION_COORDS:
        raise DomainError(f"refusing to enumerate 2^{k} sign vectors")
    if tail_coords:
        t = float(y.tail_mag)
        tail = [t if i % 2 == 0 else -t for i in range(tail_coords)]
    else:
        tail = [0.0]
        k += 1
    h = np.array([float(as_real(x)) for x in f.atomic] + [0.0] * len(tail))
    yy = np.array([float(as_real(v)) for v in y.prefix] + tail)
    bits = np.arange(k, dtype=np.int64)
    best = 0.0
    chunk = 1 << min(k, 16)
    for start in range(0, 1 << k, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        x = ((idx[:, None] >> bits) & 1) * 2.0 - 1.0
        px = x - np.outer(x @ h, yy)
        best = max(best, float(np.abs(px).max()))
    return best


def real_part_reduce(f: HyperplaneFunctional, w: ExtendedVector) -> ExtendedVector:
    """Replace a complex ``w`` by its real part on the prefix and singular pairing.

    With real coefficients ``|1 - h Re w| <= |1 - h w|`` and
    ``|Re w| <= |w|``, so the norm can only drop; the pairing keeps value 1.
    """
    if not f.is_real:
        raise DomainError("real-part reduction needs real atomic coefficients")
    _check_lengths(f, w)
    p = pairing(f, w)
    if abs(p - 1) > PAIRING_TOL:
        raise NotAProjectionError(f"not a projection onto ker f: <f, w> = {p!r}")
    prefix = tuple(v.real if isinstance(v, complex) else v for v in w.prefix)
    s = w.tail_pair.real if isinstance(w.tail_pair, complex) else w.tail_pair
    return ExtendedVector(prefix, w.tail_mag, s)


def lower_bound_witness(f: HyperplaneFunctional, y: ExtendedVector, eps) -> tuple[Witness, object]:
    """Finite witness that ``||P_y|| >= 1 + (1 - eps)(t - eps)`` for a purely singular ``f``.

    Pick a tail coordinate with ``|y_j| > t - eps`` and a unit vector ``x``
    supported past it with ``<g, x> > 1 - eps``.  Putting
    ``w_j = -sgn(<g, x>) sgn(y_j)`` in front gives
    ``|(P x^1)_j| = 1 + |<g, x>| |y_j|``.
    """
    if f.gamma != 1:
        raise DomainError("the witness is built for a purely singular functional (gamma = 1)")
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    p = pairing(f, y)
    if abs(p - 1) > PAIRING_TOL:
        raise NotAProjectionError(f"not a projection onto ker f: <f, y> = {p!r}")
    y_j = max(y.tail_mag - eps, 0)
    g_x = 1 - eps
    row = 1 + g_x * y_j
    witness = Witness(
        coordinate="tail coordinate j with |y_j| > t - eps",
        y_j_modulus=y_j,
        w_j=-1,
        g_pairing=g_x,
        row_value=row,
    )
    return witness, row
