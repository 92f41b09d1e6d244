"""Marginal purities and linear entropies of Fock states (n, m, l).

The purity of a marginal is a sixth-order mixed derivative at the origin of
a rational generating function in (u, s, v, a, b, c), scaled by
(n! m! l!)^-2.  The derivative factorials cancel that prefactor exactly, so
the purity is the single Taylor coefficient of u^n s^m v^l a^n b^m c^l.
Caps are set to (n, m, l, n, m, l); nothing beyond that coefficient is
computed.

The phi-dependent pieces of the (y|xz) and (xy|z) denominators are quadratic
forms in (tan phi, 1).  They are evaluated as forms in (sin phi, cos phi),
which is the same function multiplied by cos^2 phi in numerator and
denominator, so the ratio stays finite through mu_theta = +-1.
"""

from dataclasses import dataclass
from enum import Enum
import math
from typing import NamedTuple

import numpy as np

from .angles import MixingAngle, mu_Phi_from_theta, phi_direction
from .errors import CapError, DomainError, PurityRangeError
from .oscillator import EulerAngles, rotation_matrix
from .series import TruncatedSeries, variables

MAX_EXCITATION = 12
# purities above 1 by less than this are rounding, not physics
PURITY_SLACK = 1e-9

VAR_NAMES = ("u", "s", "v", "a", "b", "c")


class FockState(NamedTuple):
    n: int
    m: int
    l: int

    @classmethod
    def coerce(cls, state, max_total=MAX_EXCITATION):
        st = cls(*(int(k) for k in state))
        if any(k < 0 for k in st):
            raise CapError(f"excitations must be non-negative: {tuple(st)}")
        if sum(st) > max_total:
            raise CapError(f"n+m+l = {sum(st)} exceeds the limit {max_total}")
        return st

    def __str__(self):
        return f"({self.n},{self.m},{self.l})"


class Bipartition(str, Enum):
    X_VS_YZ = "x"
    Y_VS_XZ = "y"
    XY_VS_Z = "z"

    @property
    def row(self):
        return "xyz".index(self.value)


def _bip(b):
    return b if isinstance(b, Bipartition) else Bipartition(str(b).lower()[0])


@dataclass(frozen=True)
class SweepRow:
    theta: float
    mu_theta: float
    state: FockState
    s_lx: float
    s_ly: float
    s_lz: float
    m_x: float
    m_y: float
    m_z: float


def _bracket(u, s, v, a, b, c):
    # shared by the cross terms of the y and z denominators
    return a * (c * (u - v) + u * v + 2 * u + 1) - c * v * (u + 2) + u - c - v


def omega_denominator(bipartition, mu_theta, caps, direction=None):
    """Denominator Omega_1+Omega_2, Omega_3+..+Omega_6 or Omega_7+..+Omega_10 as a series.

    ``direction`` = (p, q) encodes the phi-like tangent as p/q: phi itself for
    (xy|z), its mirror image phi(-theta) for (y|xz).  The default is the
    normalised (sin, cos) pair; passing (mu, 1.0) gives the tangent form.
    Unused for (x|yz).
    """
    bip = _bip(bipartition)
    t2 = mu_theta * mu_theta
    cap2 = mu_Phi_from_theta(mu_theta) ** 2
    u, s, v, a, b, c = variables(caps, VAR_NAMES)
    if bip is Bipartition.X_VS_YZ:
        o1 = (c + 1) * (v + 1) * ((a + 1) * (u + 1) * (1 - b * s) * cap2 + (b + 1) * (s + 1) * (1 - a * u))
        o2 = (a + 1) * (u + 1) * t2 * ((c + 1) * (v + 1) * (1 - b * s) * cap2 + (b + 1) * (s + 1) * (1 - c * v))
        return o1 + o2

    if direction is None:
        direction = phi_direction(-mu_theta if bip is Bipartition.Y_VS_XZ else mu_theta)
    p, q = direction
    root = math.sqrt(cap2 + 1)
    mu_cap = mu_Phi_from_theta(mu_theta)
    w_v = t2 * cap2 * p * p + (cap2 + 1) * q * q
    w_u = cap2 * p * p + (cap2 * t2 + t2) * q * q
    w_s = (t2 + 1) * p * p
    cross = 2 * mu_theta * mu_cap * root * p * q
    common = (
        (a + 1) * (b + 1) * (s + 1) * (u + 1) * (c * v - 1) * w_v
        + (b + 1) * (c + 1) * (s + 1) * (v + 1) * (a * u - 1) * w_u
        + (a + 1) * (c + 1) * (u + 1) * (v + 1) * (b * s - 1) * w_s
    )
    br = (b + 1) * (s + 1) * _bracket(u, s, v, a, b, c)
    if bip is Bipartition.Y_VS_XZ:
        return common + cross * br
    return common - cross * br


def omega_numerator(bipartition, mu_theta, direction=None):
    bip = _bip(bipartition)
    t2 = mu_theta * mu_theta
    cap2 = mu_Phi_from_theta(mu_theta) ** 2
    if bip is Bipartition.X_VS_YZ:
        return (t2 + 1) * (cap2 + 1)
    if direction is None:
        direction = phi_direction(-mu_theta if bip is Bipartition.Y_VS_XZ else mu_theta)
    p, q = direction
    return -(t2 + 1) * (cap2 + 1) * (p * p + q * q)


def generating_function(bipartition, mu_theta, caps, direction=None):
    den = omega_denominator(bipartition, mu_theta, caps, direction)
    return omega_numerator(bipartition, mu_theta, direction) * den.reciprocal()


def _caps(state):
    n, m, l = state
    return (n, m, l, n, m, l)


def _checked(value, what):
    if not (0.0 < value <= 1.0 + PURITY_SLACK) or not math.isfinite(value):
        raise PurityRangeError(f"{what} = {value!r} outside (0, 1]")
    return min(value, 1.0)


def purity_mu(bipartition, state, mu_theta):
    """Marginal purity as a function of mu_theta = tan(theta)."""
    MixingAngle.from_mu(mu_theta)
    st = FockState.coerce(state)
    f = generating_function(bipartition, mu_theta, _caps(st))
    return _checked(f.coeff(_caps(st)), f"P_{_bip(bipartition).value}{st}")


def purity(bipartition, state, theta):
    return purity_mu(bipartition, state, math.tan(theta))


def linear_entropy(bipartition, state, theta):
    return 1.0 - purity(bipartition, state, theta)


def entropies(state, theta):
    """(S_Lx, S_Ly, S_Lz) at one mixing angle."""
    mu = math.tan(theta)
    return tuple(1.0 - purity_mu(b, state, mu) for b in Bipartition)


def tradeoff_from_entropies(sx, sy, sz):
    """(M_x, M_y, M_z) with M_k = S_Li + S_Lj - S_Lk."""
    return (sy + sz - sx, sx + sz - sy, sx + sy - sz)


def tradeoff(state, theta):
    return tradeoff_from_entropies(*entropies(state, theta))


def sweep_row(state, theta):
    st = FockState.coerce(state)
    sx, sy, sz = entropies(st, theta)
    return SweepRow(theta, math.tan(theta), st, sx, sy, sz, *tradeoff_from_entropies(sx, sy, sz))


# -- arbitrary rotations -------------------------------------------------------


def weight_denominator(weights, caps):
    """sum_i w_i (1 - u_i a_i) prod_{j != i} (1 + u_j)(1 + a_j) for mode weights w."""
    u, s, v, a, b, c = variables(caps, VAR_NAMES)
    pairs = ((u, a), (s, b), (v, c))
    total = TruncatedSeries.zeros(caps, VAR_NAMES)
    for i, w in enumerate(weights):
        if w == 0.0:
            continue
        term = 1 - pairs[i][0] * pairs[i][1]
        for j, (x, y) in enumerate(pairs):
            if j != i:
                term = term * (1 + x) * (1 + y)
        total = total + w * term
    return total


def purity_at_angles(bipartition, state, angles):
    """Marginal purity for any rotation; the lab mode's weights are its squared rotation row.

    On the reduced regime this coincides with :func:`purity`; off it (for
    instance Phi = phi = 0) it is the general form of the same generating
    function.
    """
    bip = _bip(bipartition)
    st = FockState.coerce(state)
    weights = rotation_matrix(angles)[bip.row] ** 2
    weights = weights / weights.sum()
    f = weight_denominator(weights, _caps(st)).reciprocal()
    return _checked(f.coeff(_caps(st)), f"P_{bip.value}{st}")


def two_oscillator_purity(n, l, theta):
    """P(n, l) of the Phi = phi = 0 limit from -(mu^2 + 1) / Sigma in (u, v, a, c)."""
    if n < 0 or l < 0:
        raise CapError("excitations must be non-negative")
    if n + l > MAX_EXCITATION:
        raise CapError(f"n+l = {n + l} exceeds the limit {MAX_EXCITATION}")
    t2 = math.tan(theta) ** 2
    if not math.isfinite(t2):
        raise DomainError("theta on the tangent pole")
    caps = (n, l, n, l)
    u, v, a, c = variables(caps, ("u", "v", "a", "c"))
    sigma = (c + 1) * (v + 1) * (a * u - 1) * t2 + (a + 1) * (u + 1) * (c * v - 1)
    f = -(t2 + 1) * sigma.reciprocal()
    return _checked(f.coeff(caps), f"P({n},{l})")


def two_oscillator_purities(state, theta):
    """(P_x, P_y, P_z) of the three-mode engine with Phi and phi forced to zero."""
    ang = EulerAngles(theta, 0.0, 0.0)
    return tuple(purity_at_angles(b, state, ang) for b in Bipartition)


def purity_table(states, thetas, bipartition):
    """Purities on a (state, theta) grid; returns an array of shape (len(states), len(thetas))."""
    out = np.empty((len(states), len(thetas)))
    for i, st in enumerate(states):
        for j, th in enumerate(thetas):
            out[i, j] = purity(bipartition, st, th)
    return out
