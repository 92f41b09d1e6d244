import math
import random

import numpy as np
import pytest

from trio_osc import closed_forms as cf
from trio_osc.angles import mu_Phi_from_theta
from trio_osc.errors import PoleError
from trio_osc.purity import purity_mu, two_oscillator_purity


def test_falling_factorial():
    assert cf.falling_factorial(3.7, 0) == 1.0
    assert cf.falling_factorial(-1, 2) == 2.0
    for n in range(11):
        assert cf.falling_factorial(-1, n) / math.factorial(n) == (-1) ** n


def test_jacobi_low_orders():
    assert cf.jacobi(0, -1, 0, 0.3) == 1.0
    for x in (-0.7, 0.2, 1.0):
        assert math.isclose(cf.jacobi(1, -3, 0, x), -(3 + x) / 2, rel_tol=1e-15)
    assert cf.jacobi(1, -3, 0, 1.0) == -2.0


def test_jacobi_against_standard_recurrence_for_positive_parameters():
    # where the textbook recurrence is safe, the finite sum must agree with it
    def rec(n, a, b, x):
        p0, p1 = 1.0, (a - b) / 2 + (a + b + 2) * x / 2
        if n == 0:
            return p0
        for k in range(2, n + 1):
            c1 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
            c2 = (2 * k + a + b - 1) * (a * a - b * b)
            c3 = (2 * k + a + b - 2) * (2 * k + a + b - 1) * (2 * k + a + b)
            c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
            p0, p1 = p1, ((c2 + c3 * x) * p1 - c4 * p0) / c1
        return p1

    for n in range(6):
        for x in (-0.8, 0.1, 0.9):
            assert math.isclose(cf.jacobi(n, 1.5, 0.5, x), rec(n, 1.5, 0.5, x), rel_tol=1e-12, abs_tol=1e-14)


def test_jacobi_binomial_at_one():
    for n in range(9):
        a = -2 * n - 1
        gen_binom = cf.falling_factorial(n + a, n) / math.factorial(n)
        assert math.isclose(cf.jacobi(n, a, 0, 1.0), gen_binom, rel_tol=1e-14)
        assert math.isclose(gen_binom, (-1) ** n * math.comb(2 * n, n), rel_tol=1e-14)


def test_jacobi_is_degree_n():
    xs = np.linspace(-1, 1, 12)
    for n in range(1, 7):
        vals = np.array([cf.jacobi(n, -2 * n - 1, 0, x) for x in xs])
        assert np.max(np.abs(np.diff(vals, n + 1))) < 1e-8


def test_kappa_values():
    ks = cf.kappa_set(0.0)
    assert math.isclose(ks.kappa2, math.sqrt(3), rel_tol=1e-15)
    assert math.isclose(ks.kappa1, (2 + math.sqrt(3)) / math.sqrt(3), rel_tol=1e-15)
    assert math.isclose(ks.kappa5, (mu_Phi_from_theta(0.0) ** 2 + 1) * 2, rel_tol=1e-15)


def test_kappa7_printed_agrees_only_at_zero():
    assert math.isclose(cf.kappa_set(0.0).kappa7, cf.kappa_set(0.0).kappa7_printed, rel_tol=1e-14)
    ks = cf.kappa_set(0.4)
    assert abs(ks.kappa7 - ks.kappa7_printed) > 0.1


def test_printed_kappa7_misses_engine():
    mu = 0.4
    ks = cf.kappa_set(mu)
    a, b = ks.kappa3, ks.kappa7_printed
    printed = cf._entropy(1, ((a + b) / a) ** 2, 2 * b * b / (a + b) ** 2 - 1)
    engine = 1 - purity_mu("y", (0, 0, 1), mu)
    assert abs(printed - engine) > 1e-3
    assert abs(cf.entropy_y_single("l", 1, mu) - engine) < 1e-12


def test_poles_guarded():
    for mu in (1.0, -1.0, 1 + 5e-7):
        with pytest.raises(PoleError):
            cf.kappa_set(mu)


def test_ground_term_zero():
    for fam in "nml":
        for fn in (cf.entropy_x_single, cf.entropy_y_single, cf.entropy_z_single):
            assert fn(fam, 0, 0.3) == 0.0


def test_family_coercion():
    assert cf.Family.coerce((0, 4, 0)) is cf.Family.M
    assert cf.Family.coerce("00l") is cf.Family.L
    with pytest.raises(ValueError):
        cf.Family.coerce((1, 1, 0))


def test_z_is_mirrored_y():
    for fam in range(3):
        for k in range(4):
            assert cf.entropy_z_single(fam, k, 0.35) == cf.entropy_y_single(fam, k, -0.35)


@pytest.mark.parametrize("bip,fn", [("x", cf.entropy_x_single), ("y", cf.entropy_y_single), ("z", cf.entropy_z_single)])
def test_single_families_match_engine(bip, fn):
    for t in np.linspace(-0.9, 0.9, 13):
        mu = math.tan(t)
        for fam in range(3):
            for k in range(7):
                st = [0, 0, 0]
                st[fam] = k
                assert abs(1 - purity_mu(bip, st, mu) - fn(fam, k, mu)) < 1e-9


def test_x_single_family_entropy_bounds():
    for t in np.linspace(-0.9, 0.9, 21):
        for fam in range(3):
            for k in range(1, 7):
                assert -1e-12 <= cf.entropy_x_single(fam, k, math.tan(t)) < 1.0


def test_double_purities_match_engine():
    rng = random.Random(2)
    for _ in range(20):
        mu = math.tan(rng.uniform(-0.95, 0.95))
        for which in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]:
            assert abs(cf.purity_x_double(which, mu) - purity_mu("x", which, mu)) < 1e-10


def test_double_purity_value_at_zero():
    f = mu_Phi_from_theta(0.0) ** 2
    expect = 2 / (f + 1) ** 4 * ((f + 1) ** 2 - (f + 1) ** 3) + 1
    assert math.isclose(cf.purity_x_double((1, 0, 1), 0.0), expect, rel_tol=1e-15)


def test_double_purities_swap_under_theta_factor_exchange():
    # (1,1,0) and (0,1,1) exchange the polynomial multiplying mu_theta^4 with the constant one
    for mu in (0.2, 0.7):
        t, f = mu * mu, mu_Phi_from_theta(mu) ** 2
        pa = (f**4 - 4 * f**3 + 14 * f**2 - 4 * f + 1)
        pb = (f + 1) ** 2 * (f * f + 1)
        lhs = cf.purity_x_double((1, 1, 0), mu) * (t + 1) ** 2 * (f + 1) ** 4 - t * t * pb - pa
        rhs = cf.purity_x_double((0, 1, 1), mu) * (t + 1) ** 2 * (f + 1) ** 4 - t * t * pa - pb
        assert math.isclose(lhs, rhs, rel_tol=1e-12)


def test_two_osc_closed_form():
    assert cf.two_osc_purity_n0(0, 0.4) == 1.0
    assert math.isclose(cf.two_osc_purity_n0(1, 1.0), 0.5, rel_tol=1e-15)
    for n in range(7):
        for t in (0.15, 0.6, -0.8):
            assert abs(cf.two_osc_purity_n0(n, math.tan(t)) - two_oscillator_purity(n, 0, t)) < 1e-10
