"""Numeric certification of the operator-product identities.

The reduced correlator ODE carries solution bases at its regular
singular points 0 and 1.  The change of basis between them (the fusing
matrix) realizes the associativity isomorphism in coordinates; the
product-vs-iterate equality is then checked pointwise on a grid.
Commutativity is checked by continuing the point-0 basis along an
explicit half-circle below z = 1 and comparing against the fused basis
transported with the half-monodromy phases e^{i pi s}, and the no-log
structure of the expansions is certified by continuing solutions
around a full circle at 0 and comparing with the diagonal action
e^{2 pi i rho}.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .blocks import (
    EvaluationResult,
    FrobeniusSeries,
    eval_local,
    eval_local_derivatives,
    frobenius_expand,
)
from .bpz import CorrelatorSpec, ODESpec, allowed_channels, indicial_exponents, reduced_ode
from .continuation import circle_path, continue_along, lower_arc_path
from .errors import ConditioningError, DomainError, FusionError, LogarithmicCaseError
from .fusion import fusion_rule
from .models import KacLabel, MinimalModel, TensorModel, conformal_weight
from .verma import Partition  # noqa: F401


@dataclass(frozen=True)
class ChannelBasis:
    """One Frobenius solution per indicial root at a singular point."""

    ode: ODESpec
    point: int
    solutions: tuple[FrobeniusSeries, ...]

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(s.exponent for s in self.solutions)


def channel_basis(ode: ODESpec, point: int, order: int = 60) -> ChannelBasis:
    roots = indicial_exponents(ode, point)
    if len(set(roots)) != len(roots):
        raise LogarithmicCaseError(
            f"repeated indicial root at {point}; log-extended bases are out of scope"
        )
    sols = tuple(frobenius_expand(ode, point, rho, order) for rho in roots)
    return ChannelBasis(ode, point, sols)


@dataclass(frozen=True)
class FusingMatrix:
    """Coordinates of the associativity isomorphism: row i expands the
    point-0 solution i in the point-1 basis."""

    entries: tuple[tuple[complex, ...], ...]
    residual: float
    fit_points: tuple[float, ...]
    heldout_points: tuple[float, ...]
    exponents0: tuple[Fraction, ...]
    exponents1: tuple[Fraction, ...]
    order: int

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def _chebyshev_points(n: int, lo: float = 0.35, hi: float = 0.65) -> list[float]:
    mid, half = (hi + lo) / 2, (hi - lo) / 2
    return [mid + half * float(np.cos(np.pi * (2 * i + 1) / (2 * n))) for i in range(n)]


def fusing_matrix(
    ode: ODESpec,
    order: int = 60,
    samples=None,
    swap: bool = False,
    cond_limit: float = 1e8,
) -> FusingMatrix:
    """Least-squares change of basis between the points 0 and 1.

    With swap=True the roles of the two points are exchanged (useful
    for the roundtrip identity F' F = 1).  The residual is the largest
    relative mismatch on held-out points distinct from the fit points.
    """
    k = ode.order
    basis0 = channel_basis(ode, 0, order)
    basis1 = channel_basis(ode, 1, order)
    if swap:
        basis0, basis1 = basis1, basis0
    fit = list(samples) if samples is not None else _chebyshev_points(max(2 * k, 8))
    held = [x for x in _chebyshev_points(max(2 * k, 8) + 5) if x not in fit]

    def local(s: FrobeniusSeries, x: float) -> complex:
        return eval_local(s, complex(x if s.base_point == 0 else 1 - x))

    a = np.array([[local(s, x) for s in basis1.solutions] for x in fit], dtype=complex)
    cond = np.linalg.cond(a)
    if cond > cond_limit:
        raise ConditioningError(
            f"basis collocation matrix has condition number {cond:.3g}; "
            "use different samples or a higher order"
        )
    rows = []
    for s0 in basis0.solutions:
        b = np.array([local(s0, x) for x in fit], dtype=complex)
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        rows.append(tuple(complex(v) for v in sol))
    resid = 0.0
    for i, s0 in enumerate(basis0.solutions):
        for x in held:
            lhs = local(s0, x)
            rhs = sum(rows[i][j] * local(s1, x) for j, s1 in enumerate(basis1.solutions))
            resid = max(resid, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    return FusingMatrix(
        entries=tuple(rows),
        residual=resid,
        fit_points=tuple(fit),
        heldout_points=tuple(held),
        exponents0=basis0.exponents,
        exponents1=basis1.exponents,
        order=order,
    )


@dataclass(frozen=True)
class BraidingPhase:
    """Half-monodromy factor picked up when two insertions are exchanged."""

    exponent: Fraction
    phase: complex


def braiding_phase(
    model: MinimalModel, a: KacLabel, b: KacLabel, c: KacLabel
) -> BraidingPhase:
    """e^{i pi (h_c - h_a - h_b)} for a fusion-allowed channel c."""
    if not fusion_rule(model, a, b, c):
        raise FusionError(f"channel {c} not allowed in {a} x {b}")
    exponent = (
        conformal_weight(model, c)
        - conformal_weight(model, a)
        - conformal_weight(model, b)
    )
    return BraidingPhase(exponent, cmath.exp(1j * cmath.pi * float(exponent)))


@lru_cache(maxsize=None)
def _pipeline(spec: CorrelatorSpec, order: int):
    """Shared ODE, anchor, bases, fusing matrix and channel indices."""
    ode, anchor, anchor_channel = reduced_ode(spec)
    basis0 = channel_basis(ode, 0, order)
    basis1 = channel_basis(ode, 1, order)
    fm = fusing_matrix(ode, order)
    channel_index = {}
    for c in allowed_channels(spec):
        rho = conformal_weight(spec.model, c) - spec.h2 - spec.h3 - anchor.t2
        channel_index[c] = basis0.exponents.index(rho)
    return ode, anchor, basis0, basis1, fm, channel_index


def associativity_residual(
    spec: CorrelatorSpec, z1: float, z2: float, order: int = 60
) -> float:
    """Relative product-vs-iterate mismatch at one admissible point.

    The product side is evaluated through the point-0 basis in
    z = z2/z1 and the iterate side through the point-1 basis (local in
    z1 - z2), transported with the fusing matrix; the worst relative
    discrepancy across the allowed channels is returned.
    """
    z1c, z2c = complex(z1), complex(z2)
    if not (abs(z1c) > abs(z2c) > abs(z1c - z2c) > 0):
        raise DomainError(
            f"(z1, z2) = ({z1}, {z2}) violates |z1| > |z2| > |z1 - z2| > 0"
        )
    ode, anchor, basis0, basis1, fm, channel_index = _pipeline(spec, order)
    z = z2c / z1c
    pref = cmath.exp(float(anchor.t1 + anchor.t2) * cmath.log(z1c)) * cmath.exp(
        float(anchor.t2) * cmath.log(z)
    )
    f = fm.as_array()
    worst = 0.0
    for c, i in channel_index.items():
        prod = pref * eval_local(basis0.solutions[i], z)
        iterate = pref * sum(
            f[i, j] * eval_local(s1, 1 - z) for j, s1 in enumerate(basis1.solutions)
        )
        worst = max(worst, abs(prod - iterate) / max(abs(prod), abs(iterate), 1e-300))
    return worst


def monodromy_check(
    ode: ODESpec,
    basis: ChannelBasis,
    radius: float = 0.35,
    steps: int = 24,
    taylor_order: int = 40,
    exponent_offset: float = 0.0,
) -> float:
    """Residual between numeric continuation once around 0 and the
    predicted diagonal action e^{2 pi i rho} on each basis solution.

    exponent_offset shifts the predicted exponents; a nonzero offset is
    the injected-fault negative control.
    """
    if basis.point != 0:
        raise DomainError("monodromy_check expects the basis at the point 0")
    k = ode.order
    path = circle_path(radius, steps)
    worst = 0.0
    for s in basis.solutions:
        state0 = eval_local_derivatives(s, complex(radius), k)
        final = continue_along(ode, complex(radius), state0, path, taylor_order)
        phase = cmath.exp(2j * cmath.pi * (float(s.exponent) + exponent_offset))
        scale = max(max(abs(v) for v in state0), 1e-300)
        for got, want in zip(final, state0):
            worst = max(worst, abs(got - phase * want) / scale)
    return worst


def commutativity_residual(
    spec: CorrelatorSpec,
    order: int = 60,
    targets: tuple[float, ...] = (1.35, 1.5, 1.65),
    flip_phases: bool = False,
) -> float:
    """Half-monodromy transport check for the exchange of the two
    middle insertions.

    Each allowed product-channel solution is continued numerically from
    z = 0.5 along the half circle below z = 1 out to real z > 1, where
    the swapped-product expansion lives.  The prediction on that side
    is sum_j F_ij e^{i pi s_j} R_j(z) with R_j the point-1 series
    evaluated on the real branch (z - 1 > 0); the phases are exactly
    the braiding factors e^{i pi (h_c - h_a - h_b)} for the physical
    intermediate channels.  flip_phases=True conjugates them, which
    must break the match (negative control).
    """
    ode, anchor, basis0, basis1, fm, channel_index = _pipeline(spec, order)
    k = ode.order
    start = 0.5
    f = fm.as_array()

    def swapped_side_prediction(i: int, x: float) -> complex:
        pred = 0j
        for j, s1 in enumerate(basis1.solutions):
            sgn = -1.0 if flip_phases else 1.0
            phase = cmath.exp(sgn * 1j * cmath.pi * float(s1.exponent))
            mag = (x - 1) ** float(s1.exponent)  # real branch, x > 1
            series_sum = 0j
            for c in reversed(s1.coefficients):
                series_sum = series_sum * (1 - x) + complex(c)
            pred += f[i, j] * phase * mag * series_sum
        return pred

    worst = 0.0
    for c, i in channel_index.items():
        cur = eval_local_derivatives(basis0.solutions[i], complex(start), k)
        pos = complex(start)
        waypoints = sorted(targets)
        path = lower_arc_path(0.5, 16) + [complex(waypoints[0])]
        for target, leg in zip(waypoints, [path] + [[complex(x)] for x in waypoints[1:]]):
            cur = continue_along(ode, pos, cur, leg, 40)
            pos = complex(target)
            pred = swapped_side_prediction(i, target)
            worst = max(worst, abs(cur[0] - pred) / max(abs(pred), 1e-300))
    return worst


def tensor_block(
    tmodel: TensorModel,
    specs,
    channels,
    z: complex,
    order: int = 50,
) -> EvaluationResult:
    """Product of per-factor blocks (intertwining maps factor through
    the tensor decomposition, so exponents add and values multiply)."""
    from .blocks import block
    from .errors import ShapeError

    specs = list(specs)
    channels = list(channels)
    if len(specs) != len(tmodel.factors) or len(channels) != len(specs):
        raise ShapeError("need one correlator spec and one channel per factor")
    results = [block(s, c, z, order) for s, c in zip(specs, channels)]
    value = 1 + 0j
    for r in results:
        value *= r.value
    tail = 0.0
    for i, r in enumerate(results):
        others = 1.0
        for j, r2 in enumerate(results):
            if j != i:
                others *= abs(r2.value)
        tail += r.tail_bound * others
    return EvaluationResult(value, tail, min(r.order_used for r in results))
