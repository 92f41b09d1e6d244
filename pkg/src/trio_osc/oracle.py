"""Independent ground truth for the marginal purities.

Two routes that share nothing with the generating functions:

* position-space quadrature: the eigenfunction is a Gaussian times Hermite
  polynomials of the normal coordinates Q = R^T q, so with Gauss-Hermite
  nodes in the lab frame the reduced density kernel and its square are
  integrated exactly once the order is high enough;
* a Fock-space network: positions and momenta rotate with the same
  orthogonal matrix, so the state is mapped by the passive unitary of R,
  built as three two-mode beamsplitters.

The Wigner helpers check the separable phase-space form of the state and
the Laguerre / generating-function representations of a single mode.
"""

import math

import numpy as np
from numpy.polynomial import hermite, laguerre

from .errors import CutoffTooSmall, GridTooCoarse
from .oscillator import planar_rotations, rotation_matrix
from .purity import FockState, _bip

CONVERGENCE_TOL = 1e-7
ORDER_STEP = 4
CUTOFF_MARGIN = 6


def _hermite_function_poly(n, x, vartheta):
    """psi_n(x) exp(vartheta x^2 / 2): the normalised polynomial part."""
    c = np.zeros(n + 1)
    c[n] = 1.0
    norm = (vartheta / math.pi) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    return norm * hermite.hermval(math.sqrt(vartheta) * x, c)


def _quadrature_purity(state, rot, row, order, vartheta):
    t, w = hermite.hermgauss(order)
    x = t / math.sqrt(vartheta)
    # lab-frame grid with the kept mode on axis 0
    grids = np.meshgrid(x, x, x, indexing="ij")
    lab = [None, None, None]
    others = [k for k in range(3) if k != row]
    lab[row], lab[others[0]], lab[others[1]] = grids
    amp = np.ones_like(grids[0])
    for mode, k in enumerate(state):
        qn = rot[0, mode] * lab[0] + rot[1, mode] * lab[1] + rot[2, mode] * lab[2]
        amp = amp * _hermite_function_poly(k, qn, vartheta)
    # Gaussian factors cancel against the Hermite weight; sqrt of weights per axis
    sw = np.sqrt(w) * vartheta**-0.25
    amp = amp * sw[:, None, None] * sw[None, :, None] * sw[None, None, :]
    mat = amp.reshape(order, order * order)
    rho = mat @ mat.T
    return float(np.sum(rho * rho))


def quadrature_marginal_purity(state, angles, bipartition, vartheta=1.0, order=None):
    """Tr rho_a^2 of lab mode a by Gauss-Hermite quadrature of the position kernel.

    ``order`` defaults to 2 (n+m+l) + 12 nodes per axis; the result is
    recomputed with four more nodes and GridTooCoarse is raised if the two
    differ by more than 1e-7.
    """
    st = FockState.coerce(state)
    if vartheta <= 0:
        raise ValueError("vartheta must be positive")
    if order is None:
        order = 2 * sum(st) + 12
    rot = rotation_matrix(angles)
    row = _bip(bipartition).row
    p = _quadrature_purity(st, rot, row, order, vartheta)
    p_check = _quadrature_purity(st, rot, row, order + ORDER_STEP, vartheta)
    if abs(p - p_check) > CONVERGENCE_TOL:
        raise GridTooCoarse(f"order {order}: {p!r} vs {p_check!r}")
    return p


# -- Fock network --------------------------------------------------------------


def beamsplitter_block(block, total):
    """Fock matrix of the substitution (y_i, y_j) = block @ (x_i, x_j) on N = ``total`` photons.

    Entry [p, k] maps |k, N-k> to |p, N-p>, from the binomial expansion of
    (b00 x_i + b01 x_j)^k (b10 x_i + b11 x_j)^(N-k).
    """
    (b00, b01), (b10, b11) = block
    out = np.zeros((total + 1, total + 1))
    for k in range(total + 1):
        scale_in = math.sqrt(math.factorial(k) * math.factorial(total - k))
        for r in range(k + 1):
            left = math.comb(k, r) * b00**r * b01 ** (k - r)
            for s in range(total - k + 1):
                right = math.comb(total - k, s) * b10**s * b11 ** (total - k - s)
                p = r + s
                out[p, k] += left * right * math.sqrt(math.factorial(p) * math.factorial(total - p)) / scale_in
    return out


def _apply_pair(psi, i, j, block, cutoff):
    # bring the pair to the last two axes
    third = 3 - i - j
    arr = np.moveaxis(psi, (third, i, j), (0, 1, 2))
    out = np.zeros_like(arr)
    for total in range(cutoff + 1):
        u = beamsplitter_block(block, total)
        k = np.arange(total + 1)
        out[:, k, total - k] = arr[:, k, total - k] @ u.T
    return np.moveaxis(out, (0, 1, 2), (third, i, j))


def _network_state(state, angles, cutoff):
    psi = np.zeros((cutoff + 1,) * 3)
    if all(k <= cutoff for k in state):
        psi[tuple(state)] = 1.0
    r1, r2, r3 = planar_rotations(angles)
    # amplitudes transform as P(x) -> P(M^T x); R3 acts first
    for m, (i, j) in ((r3, (0, 2)), (r2, (0, 1)), (r1, (1, 2))):
        block = m.T[np.ix_((i, j), (i, j))]
        psi = _apply_pair(psi, i, j, block, cutoff)
    return psi


def _fock_purity(state, angles, row, cutoff):
    psi = _network_state(state, angles, cutoff)
    mat = np.moveaxis(psi, row, 0).reshape(cutoff + 1, -1)
    rho = mat @ mat.T
    return float(np.sum(rho * rho))


def fock_network_purity(state, angles, bipartition, cutoff=None):
    """Tr rho_a^2 from the beamsplitter network; checked against cutoff + 4."""
    st = FockState.coerce(state)
    if cutoff is None:
        cutoff = sum(st) + CUTOFF_MARGIN
    row = _bip(bipartition).row
    p = _fock_purity(st, angles, row, cutoff)
    p_check = _fock_purity(st, angles, row, cutoff + ORDER_STEP)
    if abs(p - p_check) > CONVERGENCE_TOL:
        raise CutoffTooSmall(f"cutoff {cutoff}: {p!r} vs {p_check!r}")
    return p


def fock_network_amplitudes(state, angles, cutoff=None):
    """Lab-frame Fock amplitudes psi[n_x, n_y, n_z] of the rotated state."""
    st = FockState.coerce(state)
    return _network_state(st, angles, sum(st) + CUTOFF_MARGIN if cutoff is None else cutoff)


# -- Wigner functions ----------------------------------------------------------


def wigner_single_mode(n, q, p, vartheta=1.0):
    """Laguerre form (-1)^n / pi exp(-E) L_n(2E), E = (vartheta^2 q^2 + p^2) / vartheta."""
    e = (vartheta * vartheta * np.asarray(q, float) ** 2 + np.asarray(p, float) ** 2) / vartheta
    c = np.zeros(n + 1)
    c[n] = 1.0
    return (-1) ** n / math.pi * np.exp(-e) * laguerre.lagval(2 * e, c)


def _series_exp(f):
    # exp of a univariate truncated series via k g_k = sum_j j f_j g_{k-j}
    g = np.zeros_like(f)
    g[0] = math.exp(f[0])
    for k in range(1, len(f)):
        j = np.arange(1, k + 1)
        g[k] = np.dot(j * f[j], g[k - j]) / k
    return g


def wigner_generating_form(n, q, p, vartheta=1.0):
    """W_n from the u-derivative at 0 of -exp((u+1) E / (u-1)) / (u-1)."""
    e = (vartheta * vartheta * q * q + p * p) / vartheta
    # (u+1)/(u-1) = -(1+u) * sum u^k = -1 - 2u - 2u^2 - ...
    ratio = np.full(n + 1, -2.0)
    ratio[0] = -1.0
    g = _series_exp(e * ratio)
    # -1/(u-1) = sum u^k
    coeff_n = float(np.sum(g))
    return (-1) ** n / math.pi * coeff_n


def _wigner_square_integral(n, nodes):
    # W_n depends on E = q^2 + p^2 only: int int W^2 = pi int W^2 dE, and with
    # t = 2E the integrand is e^-t times a polynomial
    t, w = laguerre.laggauss(nodes)
    wn = wigner_single_mode(n, np.sqrt(t / 2.0), 0.0)
    return float(np.dot(w * np.exp(t), wn * wn)) * math.pi / 2.0


def wigner_single_mode_integral(n, nodes=None):
    """int int W_n dq dp = (-1)^n int e^-t L_n(2t) dt; must equal 1."""
    t, w = laguerre.laggauss(nodes or n + 2)
    c = np.zeros(n + 1)
    c[n] = 1.0
    return (-1) ** n * float(np.dot(w, laguerre.lagval(2 * t, c)))


def wigner_normalization_check(state, angles=None):
    """(2 pi)^3 int W^2 over phase space for the separable product form; 1 for a pure state.

    The lab frame enters only through |det R| = 1; the integral itself is
    done mode by mode with Gauss-Laguerre and checked at a higher order.
    """
    st = FockState.coerce(state)
    jac = 1.0 if angles is None else abs(np.linalg.det(rotation_matrix(angles)))

    def total(extra):
        out = jac
        for k in st:
            out *= 2 * math.pi * _wigner_square_integral(k, k + 1 + extra)
        return out

    val, check = total(0), total(ORDER_STEP)
    if abs(val - check) > CONVERGENCE_TOL:
        raise GridTooCoarse(f"Gauss-Laguerre: {val!r} vs {check!r}")
    return val
