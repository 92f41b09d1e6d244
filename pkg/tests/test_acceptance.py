"""Acceptance criteria; each check prints one PASS/FAIL line with its measurement.

Run ``pytest tests/test_acceptance.py -v`` to see the lines in the log.  A
criterion that cannot be met is left failing with the measured value.
"""

import itertools
import math
import random
import time

import numpy as np
import pytest

from trio_osc import closed_forms as cf
from trio_osc import oracle
from trio_osc.angles import check_angle_consistency, euler_angles, near_pole
from trio_osc.oscillator import EulerAngles, OscillatorParams, diagonalize, rotation_matrix
from trio_osc.purity import (
    Bipartition,
    entropies,
    purity,
    purity_at_angles,
    purity_mu,
    tradeoff,
    two_oscillator_purities,
    two_oscillator_purity,
)

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  [{criterion}] {detail}")
        return ok

    return emit


def _states(max_total):
    return [s for s in itertools.product(range(max_total + 1), repeat=3) if sum(s) <= max_total]


def _single(fam, k):
    st = [0, 0, 0]
    st[fam] = k
    return tuple(st)


def _in_domain(theta):
    mu = math.tan(theta)
    return abs(mu) < SQRT2 and not near_pole(mu)


def test_c1_closed_form_equivalence(report):
    start = time.perf_counter()
    grid = [t for t in np.linspace(-0.99, 0.99, 41) if _in_domain(t)]
    worst = 0.0
    for t in grid:
        mu = math.tan(t)
        for fam in range(3):
            for k in range(7):
                st = _single(fam, k)
                worst = max(
                    worst,
                    abs(1 - purity_mu("x", st, mu) - cf.entropy_x_single(fam, k, mu)),
                    abs(1 - purity_mu("y", st, mu) - cf.entropy_y_single(fam, k, mu)),
                )
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 30
    report(1, ok, f"single families x {{S_Lx,S_Ly}}, k<=6, {len(grid)} theta: max |diff| {worst:.2e} (tol 1e-9), {elapsed:.1f} s (< 30 s)")
    assert ok


def _entropy_y_l_printed(k, mu):
    # S_Ly(0,0,k) evaluated with the literal published kappa_7
    ks = cf.kappa_set(mu)
    a, b = ks.kappa3, ks.kappa7_printed
    return cf._entropy(k, ((a + b) / a) ** 2, 2 * b * b / (a + b) ** 2 - 1)


def test_c1_closed_form_printed_kappa7(report):
    grid = [t for t in np.linspace(-0.99, 0.99, 41) if _in_domain(t)]
    worst, where = 0.0, None
    for t in grid:
        mu = math.tan(t)
        for k in range(1, 7):
            d = abs(1 - purity_mu("y", (0, 0, k), mu) - _entropy_y_l_printed(k, mu))
            if d > worst:
                worst, where = d, (k, t)
    ok = worst <= 1e-9
    report(
        1, ok,
        f"S_Ly(0,0,l) with the kappa_7 expression as printed: max |diff| {worst:.3e} at l={where[0]}, theta={where[1]:.3f} "
        "(tol 1e-9; the corrected kappa_7 passes above)",
    )
    assert ok


def test_c2_double_excitation_purities(report):
    rng = random.Random(2)
    worst = 0.0
    for _ in range(20):
        mu = math.tan(rng.uniform(-0.95, 0.95))
        for which in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]:
            worst = max(worst, abs(purity_mu("x", which, mu) - cf.purity_x_double(which, mu)))
    ok = worst <= 1e-10
    report(2, ok, f"P_x(1,1,0), P_x(1,0,1), P_x(0,1,1) at 20 random theta: max |diff| {worst:.2e} (tol 1e-10)")
    assert ok


def test_c3_reflection_symmetry(report):
    thetas = [t for t in np.linspace(-0.95, 0.95, 21) if _in_domain(t)]
    s_eng = s_gen = m_eng = 0.0
    for st in _states(4):
        for t in thetas:
            s_eng = max(s_eng, abs(entropies(st, t)[1] - entropies(st, -t)[2]))
            m_eng = max(m_eng, abs(tradeoff(st, t)[2] - tradeoff(st, -t)[1]))
            # the general rotation path does not share the mirrored direction trick
            py = purity_at_angles("y", st, euler_angles(math.tan(t)))
            pz = purity_at_angles("z", st, euler_angles(math.tan(-t)))
            s_gen = max(s_gen, abs(py - pz))
    ok = max(s_eng, s_gen, m_eng) <= 1e-10
    report(
        3, ok,
        f"n+m+l<=4, {len(thetas)} theta: S_Ly/S_Lz {s_eng:.2e} (engine), {s_gen:.2e} (rotation rows); "
        f"M_z/M_y {m_eng:.2e} (tol 1e-10)",
    )
    assert ok


# -- criterion 4: one check per feature ----------------------------------------


def _sweep(state, idx, lo, hi, samples):
    ths = np.linspace(lo, hi, samples)
    return ths, np.array([entropies(state, t)[idx] for t in ths])


def _refined_min(state, idx, lo, hi, interior=False):
    # grid minimum (or the first interior local minimum), then a dense local sweep around it
    ths, s = _sweep(state, idx, lo, hi, 381)
    if interior:
        local = [j for j in range(1, len(s) - 1) if s[j] < s[j - 1] and s[j] <= s[j + 1]]
        if not local:
            return math.nan, math.nan
        i = local[0]
    else:
        i = int(np.argmin(s))
    step = ths[1] - ths[0]
    ths, s = _sweep(state, idx, ths[i] - step, ths[i] + step, 201)
    i = int(np.argmin(s))
    return float(ths[i]), float(s[i])


def test_c4_argmax_s_lx(report):
    target = (math.sqrt(5) - 1) / 2
    # 401-point sweep in mu_theta over the positive half of the domain
    mus = np.linspace(0.0, 1.4, 401)
    vals = [1 - purity_mu("x", (1, 0, 0), mu) for mu in mus]
    found = float(mus[int(np.argmax(vals))])
    step = mus[1] - mus[0]
    ok = abs(found - target) <= step
    report(4, ok, f"argmax S_Lx(1,0,0) at mu_theta {found:.5f}, expected {target:.5f} +- {step:.4f}")
    assert ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c4_zero_s_ly(report, n):
    target = -2 * math.pi / 21
    found, val = _refined_min((n, 0, 0), 1, -0.9, 0.9)
    ok = abs(found - target) <= 0.02 and val < 1e-8
    report(4, ok, f"zero of S_Ly({n},0,0) at theta {found:.5f} (S={val:.1e}), expected {target:.5f} +- 0.02")
    assert ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c4_zero_s_lz(report, n):
    target = 2 * math.pi / 11
    found, val = _refined_min((n, 0, 0), 2, -0.9, 0.9)
    ok = abs(found - target) <= 0.02 and val < 1e-8
    report(4, ok, f"zero of S_Lz({n},0,0) at theta {found:.5f} (S={val:.1e}), expected {target:.5f} +- 0.02")
    assert ok


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c4_min_s_ly_0m0(report, m):
    target = 11 * math.pi / 62
    # the interior minimum on theta > 0; the zero at -pi/4 is a separate feature
    found, val = _refined_min((0, m, 0), 1, 0.0, 0.9, interior=True)
    ok = abs(found - target) <= 0.02
    report(4, ok, f"minimum of S_Ly(0,{m},0) at theta {found:.5f} (S={val:.4f}), expected {target:.5f} +- 0.02")
    assert ok


def test_c5_oracle_equivalence(report):
    start = time.perf_counter()
    thetas = (-0.8, -0.35, 0.1, 0.5, 0.85)
    wq = wf = 0.0
    for t in thetas:
        mu = math.tan(t)
        ang = euler_angles(mu)
        for st in _states(3):
            for b in Bipartition:
                p = purity_mu(b, st, mu)
                wq = max(wq, abs(p - oracle.quadrature_marginal_purity(st, ang, b)))
                wf = max(wf, abs(p - oracle.fock_network_purity(st, ang, b)))
    elapsed = time.perf_counter() - start
    ok = wq <= 1e-5 and wf <= 1e-5 and elapsed < 180
    report(5, ok, f"n+m+l<=3, 3 bipartitions, 5 theta: quadrature {wq:.2e}, Fock network {wf:.2e} (tol 1e-5), {elapsed:.1f} s (< 180 s)")
    assert ok


def test_c6_two_oscillator_limit(report):
    y_dev = 0.0
    for st in _states(4):
        for t in (-0.7, 0.2, 0.6):
            y_dev = max(y_dev, abs(two_oscillator_purities(st, t)[1] - 1.0))
    sym = jac = 0.0
    for t in (-0.6, 0.15, 0.45, 0.7):
        for n in range(6):
            for l in range(6):
                sym = max(sym, abs(two_oscillator_purity(n, l, t) - two_oscillator_purity(l, n, t)))
            jac = max(jac, abs(two_oscillator_purity(n, 0, t) - cf.two_osc_purity_n0(n, math.tan(t))))
    at_one = two_oscillator_purity(1, 0, math.pi / 4)
    ok = y_dev == 0.0 and sym <= 1e-12 and jac <= 1e-10 and abs(at_one - 0.5) <= 1e-12
    report(6, ok, f"|P_y-1| {y_dev:.1e} (exact), P(n,l)-P(l,n) {sym:.2e} (tol 1e-12), Jacobi {jac:.2e} (tol 1e-10), P(1,0) at mu=1 {at_one!r}")
    assert ok


def test_c7_structural_invariants(report):
    grid = [t for t in np.linspace(-0.95, 0.95, 41) if _in_domain(t)]
    ground = max(abs(s) for t in grid for s in entropies((0, 0, 0), t))
    pmin, pmax = 1.0, 0.0
    for st in _states(4):
        for t in grid[::4]:
            for b in Bipartition:
                p = purity(b, st, t)
                pmin, pmax = min(pmin, p), max(pmax, p)
    rng = random.Random(7)
    orth = 0.0
    for _ in range(200):
        r = rotation_matrix(EulerAngles(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-1.5, 1.5)))
        orth = max(orth, float(np.max(np.abs(r @ r.T - np.eye(3)))))
    quint = 0.0
    for _ in range(10):
        params = OscillatorParams(*(rng.uniform(0.8, 1.5) for _ in range(3)), *(rng.uniform(-0.2, 0.2) for _ in range(3)))
        _, roots, results = diagonalize(params)
        assert not roots.degenerate and results
        quint = max(quint, max(r.residual for r in results))
    ff = max(abs(cf.falling_factorial(-1, n) / math.factorial(n) - (-1) ** n) for n in range(13))
    # exact zero up to the last bit of the 1 - P subtraction
    ok = ground <= 1e-15 and 0.0 < pmin and pmax <= 1.0 and orth <= 1e-13 and quint <= 1e-8 and ff == 0.0
    report(
        7, ok,
        f"ground S {ground:.1e}; purities in [{pmin:.4f}, {pmax!r}]; R R^T-1 {orth:.1e} (tol 1e-13); "
        f"quintic residual {quint:.1e} (tol 1e-8); falling factorial {ff:.1e}",
    )
    assert ok


def _angle_residuals(field):
    worst = 0.0
    for mu in np.linspace(-0.99, 0.99, 41):
        if near_pole(mu) or abs(mu) < 1e-3:
            continue
        worst = max(worst, getattr(check_angle_consistency(mu), field))
    return worst


def test_c7_angle_relations(report):
    tan2 = _angle_residuals("tan_2Phi")
    tant = _angle_residuals("tan_theta")
    ok = tan2 <= 1e-10 and tant <= 1e-10
    report(7, ok, f"angle relations: tan 2Phi {tan2:.1e}, tan theta = sin phi + cos phi {tant:.1e} (tol 1e-10)")
    assert ok


def test_c7_angle_relation_printed_sign(report):
    # the published relation reads tan theta = -(sin phi + cos phi)
    res = _angle_residuals("tan_theta_printed")
    ok = res <= 1e-10
    report(7, ok, f"angle relation with printed sign, tan theta = -(sin phi + cos phi): residual {res:.3f} (tol 1e-10; equals 2|mu_theta|)")
    assert ok


def test_c8_monotonic_s_lx(report):
    vals = [entropies(_single(0, n), 0.3)[0] for n in range(7)]
    bad = [(n, n + 1) for n in range(6) if vals[n + 1] < vals[n]]
    ok = not bad
    detail = ", ".join(f"{v:.6f}" for v in vals)
    report(8, ok, f"S_Lx(n,0,0) at theta=0.3 for n=0..6: {detail}" + (f"; decreasing pairs {bad}" if bad else ""))
    assert ok
