import math

import numpy as np
import pytest

from trio_osc.angles import (
    POLE_GUARD,
    MixingAngle,
    check_angle_consistency,
    euler_angles,
    mu_Phi_from_theta,
    mu_phi_from_theta,
    phi_direction,
)
from trio_osc.errors import DomainError, PoleError


def test_mu_phi_values():
    assert mu_phi_from_theta(0.0) == -1.0
    assert math.isclose(mu_phi_from_theta(0.5), (1 - 0.5 * math.sqrt(1.75)) / (-0.75), rel_tol=1e-15)


def test_mu_phi_removable_limit():
    lo, hi = mu_phi_from_theta(1 - 1e-6 * 1.5), mu_phi_from_theta(1 + 1e-6 * 1.5)
    assert abs(mu_phi_from_theta(1.0) - 0.5 * (lo + hi)) < 1e-8
    assert mu_phi_from_theta(1.0) == 0.0


def test_mu_phi_true_pole():
    with pytest.raises(PoleError):
        mu_phi_from_theta(-1.0)
    # finite direction even there: phi -> -pi/2
    s, c = phi_direction(-1.0)
    assert math.isclose(s, -1.0) and abs(c) < 1e-15


def test_domain():
    for bad in (math.sqrt(2), -1.5, float("inf")):
        with pytest.raises(DomainError):
            mu_phi_from_theta(bad)
    with pytest.raises(DomainError):
        MixingAngle.from_mu(1.5)
    with pytest.raises(DomainError):
        mu_Phi_from_theta(1.8)


def test_mu_Phi_values():
    assert math.isclose(mu_Phi_from_theta(0.0), (1 - math.sqrt(3)) / math.sqrt(2), rel_tol=1e-15)
    assert math.isclose(mu_Phi_from_theta(1.0), -1.0, rel_tol=1e-15)
    assert mu_Phi_from_theta(-1.0) == mu_Phi_from_theta(1.0)


def test_mu_Phi_even():
    for a in np.linspace(0.01, 1.4, 30):
        assert mu_Phi_from_theta(a) == mu_Phi_from_theta(-a)


def test_branch_relation_holds():
    # the printed branch satisfies tan(theta) = +(sin phi + cos phi)
    worst = 0.0
    for mu in np.linspace(-0.99, 0.99, 100):
        if abs(abs(mu) - 1) <= POLE_GUARD or abs(mu) < 1e-3:
            continue
        worst = max(worst, check_angle_consistency(mu).tan_theta)
    assert worst < 1e-10


def test_printed_sign_residual_is_twice_mu():
    for mu in (-0.7, -0.2, 0.3, 0.9):
        assert math.isclose(check_angle_consistency(mu).tan_theta_printed, 2 * abs(mu), rel_tol=1e-9)


def test_tan_2Phi_identity():
    assert check_angle_consistency(0.5).tan_2Phi < 1e-10


def test_continuity_on_grid():
    for mu in np.linspace(-1.4, 1.4, 201):
        if abs(mu + 1) < 2 * POLE_GUARD:
            continue
        assert math.isfinite(mu_phi_from_theta(mu)) and math.isfinite(mu_Phi_from_theta(mu))


def test_euler_angles_branch():
    ang = euler_angles(0.3)
    assert math.isclose(math.tan(ang.phi), mu_phi_from_theta(0.3), rel_tol=1e-12)
    assert math.isclose(math.tan(ang.phi_cap), mu_Phi_from_theta(0.3), rel_tol=1e-12)
    assert math.isclose(euler_angles(0.0).phi, -math.pi / 4, rel_tol=1e-15)
