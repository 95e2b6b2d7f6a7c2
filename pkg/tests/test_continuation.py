import cmath
import math
from fractions import Fraction

import pytest

from virmin.bpz import ODESpec
from virmin.continuation import circle_path, continue_along, lower_arc_path, taylor_step
from virmin.errors import DomainError

F = Fraction


def test_exponential_ode():
    # y' = y from 0 to 1 in four steps
    ode = ODESpec(((F(-1),), (F(1),)))
    out = continue_along(ode, 0.0, [1.0 + 0j], [0.25, 0.5, 0.75, 1.0], order=30)
    assert abs(out[0] - math.e) < 1e-12


def test_fractional_power_monodromy():
    # z y' = (1/3) y; solution z^{1/3} picks up e^{2 pi i/3} around 0
    ode = ODESpec(((F(-1, 3),), (F(0), F(1))))
    r = 0.5
    state = [r ** (1 / 3) + 0j]
    out = continue_along(ode, complex(r), state, circle_path(r, 16), order=30)
    want = state[0] * cmath.exp(2j * cmath.pi / 3)
    assert abs(out[0] - want) < 1e-12


def test_second_order_state_transport():
    # y'' + y = 0: transport (sin, cos) a quarter period
    ode = ODESpec(((F(1),), (), (F(1),)))
    out = continue_along(
        ode, 0.0, [0j, 1 + 0j], [0.4, 0.8, 1.2, math.pi / 2], order=40
    )
    assert abs(out[0] - 1) < 1e-12
    assert abs(out[1]) < 1e-12


def test_step_at_singular_point_rejected():
    ode = ODESpec(((F(-1, 3),), (F(0), F(1))))  # leading coefficient z
    with pytest.raises(DomainError):
        taylor_step(ode, 0.0, [1.0 + 0j], 0.1)


def test_lower_arc_geometry():
    path = lower_arc_path(0.5, 16)
    assert abs(path[-1] - 1.5) < 1e-12
    assert all(p.imag <= 1e-12 for p in path)  # passes below the singular point
    assert min(p.imag for p in path) < -0.4
