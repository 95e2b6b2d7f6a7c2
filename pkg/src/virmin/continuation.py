"""Numeric analytic continuation of ODE solutions by Taylor re-expansion.

Given the state (value and derivatives) of a solution at an ordinary
point, a step re-expands the solution as a Taylor series there using
the ODE recursion and evaluates the series at the next point.  Chained
along a polyline this continues solutions around singular points
without any reference to the local exponents, which is what makes the
monodromy and commutativity checks independent of the Frobenius
construction they certify.
"""

from __future__ import annotations

from math import comb

from .bpz import ODESpec
from .errors import DomainError


def _shifted_coeffs(c, p: complex) -> list[complex]:
    """Coefficients of c(p + t) as a polynomial in t."""
    n = len(c)
    out = [0j] * n
    for big in range(n):
        cb = complex(c[big])
        if cb == 0:
            continue
        pw = 1.0 + 0j
        for d in range(big, -1, -1):
            out[d] += comb(big, d) * cb * pw
            pw *= p
    return out


def taylor_step(
    ode: ODESpec, p: complex, state: list[complex], target: complex, order: int = 40
) -> list[complex]:
    """Advance the solution state from the ordinary point p to target."""
    k = ode.order
    gamma = [_shifted_coeffs(c, p) for c in ode.coefficients]
    lead = gamma[k][0] if gamma[k] else 0j
    if abs(lead) < 1e-300:
        raise DomainError(f"{p} is too close to a singular point for a Taylor step")

    def falling(x: int, i: int) -> float:
        out = 1.0
        for d in range(i):
            out *= x - d
        return out

    from math import factorial

    b = [state[t] / factorial(t) for t in range(k)]
    for n in range(order - k + 1):
        rhs = 0j
        for i in range(k + 1):
            gi = gamma[i]
            for d in range(len(gi)):
                if gi[d] == 0:
                    continue
                if i == k and d == 0:
                    continue
                idx = n - d + i
                if 0 <= idx < len(b):
                    rhs += gi[d] * falling(idx, i) * b[idx]
        b.append(-rhs / (lead * falling(n + k, k)))

    dz = target - p
    out = []
    for t in range(k):
        acc = 0j
        power = 1.0 + 0j
        for n in range(t, len(b)):
            acc += b[n] * falling(n, t) * power
            power *= dz
        out.append(acc)
    return out


def continue_along(
    ode: ODESpec, start: complex, state: list[complex], path, order: int = 40
) -> list[complex]:
    """Chain Taylor steps through the given waypoints."""
    p = complex(start)
    cur = list(state)
    for target in path:
        cur = taylor_step(ode, p, cur, complex(target), order)
        p = complex(target)
    return cur


def circle_path(radius: float, steps: int) -> list[complex]:
    """Counterclockwise circle around 0 starting and ending at +radius."""
    import cmath

    return [radius * cmath.exp(2j * cmath.pi * t / steps) for t in range(1, steps + 1)]


def lower_arc_path(radius: float, steps: int) -> list[complex]:
    """Half-circle around 1 through the lower half plane, from 1-radius
    to 1+radius; the argument of (z1 - z2) gains +pi along it."""
    import cmath

    return [
        1 + radius * cmath.exp(1j * cmath.pi * (1 + t / steps)) for t in range(1, steps + 1)
    ]
