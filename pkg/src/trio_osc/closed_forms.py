"""Closed-form entropies and purities for single-excitation families.

All formulas share one shape,

    S = 1 - (-1)^{(k)} / k!  *  c^k  *  P_k^{(-2k-1, 0)}(x),

with (-1)^{(k)} the falling factorial (-1)(-2)...(-k) = (-1)^k k!, so the
prefactor is just (-1)^k c^k.  The Jacobi polynomial has a negative integer
alpha, where three-term recurrences divide by zero; it is evaluated from its
finite sum with falling-factorial binomials instead.

The kappa quantities depend on mu_theta directly and through the tangents of
the reduced angle relations.  Every one of them has a pole at |mu_theta| = 1,
so the closed forms raise PoleError inside the pole guard; the generating
function engine is the path that covers those points.
"""

from dataclasses import dataclass
from enum import IntEnum
import math

from .angles import MixingAngle, mu_Phi_from_theta, mu_phi_from_theta, near_pole
from .errors import PoleError


def falling_factorial(x, n):
    """x (x-1) ... (x-n+1); the empty product for n = 0 is 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1.0
    for k in range(n):
        out *= x - k
    return out


def jacobi(n, alpha, beta, x):
    """P_n^{(alpha, beta)}(x) from the explicit finite sum.

    >>> jacobi(1, -3, 0, 1.0)
    -2.0
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    lo, hi = (x - 1.0) / 2.0, (x + 1.0) / 2.0
    total = 0.0
    for s in range(n + 1):
        left = falling_factorial(n + alpha, n - s) / math.factorial(n - s)
        right = falling_factorial(n + beta, s) / math.factorial(s)
        total += left * right * lo**s * hi ** (n - s)
    return total


def _sign_prefactor(k):
    # (-1)^{(k)} / k!
    return falling_factorial(-1.0, k) / math.factorial(k)


def _entropy(k, base, arg):
    return 1.0 - _sign_prefactor(k) * base**k * jacobi(k, -2 * k - 1, 0, arg)


class Family(IntEnum):
    """Which normal mode carries the k excitations: (k,0,0), (0,k,0) or (0,0,k)."""

    N = 0
    M = 1
    L = 2

    @classmethod
    def coerce(cls, family):
        if isinstance(family, (tuple, list)):
            nonzero = [i for i, k in enumerate(family) if k]
            if len(nonzero) > 1:
                raise ValueError(f"not a single-excitation state: {tuple(family)}")
            return cls(nonzero[0]) if nonzero else cls.N
        if isinstance(family, str):
            names = {"n": cls.N, "n00": cls.N, "m": cls.M, "0m0": cls.M, "l": cls.L, "00l": cls.L}
            return names[family.lower()]
        return cls(family)


@dataclass(frozen=True)
class KappaSet:
    """kappa_1..kappa_7 at one mixing angle.

    ``kappa7`` is the value consistent with the generating functions;
    ``kappa7_printed`` keeps the literal published expression, which differs
    in the sign of its cross term and its last bracket.
    """

    mu_theta: float
    kappa1: float
    kappa2: float
    kappa3: float
    kappa4: float
    kappa5: float
    kappa6: float
    kappa7: float
    kappa7_printed: float


def _guard(mu_theta):
    MixingAngle.from_mu(mu_theta)
    if near_pole(mu_theta):
        raise PoleError(f"closed forms are singular at |mu_theta| = 1 (got {mu_theta})")


def _mirror_tangent(mu_theta):
    return 2.0 / (mu_theta * mu_theta - 1.0) - mu_phi_from_theta(mu_theta)


def _kappa7(g, mu_theta, mu_cap):
    t2, c2 = mu_theta * mu_theta, mu_cap * mu_cap
    return -2 * g * mu_theta * mu_cap * math.sqrt(c2 + 1) - g * g * (t2 + c2 + 1) - t2 * (c2 + 1)


def _kappa7_printed(g, mu_theta, mu_cap):
    t2, c2 = mu_theta * mu_theta, mu_cap * mu_cap
    return 2 * g * mu_theta * mu_cap * math.sqrt(c2 + 1) + g * g * (-t2 - c2 - 1) - t2 * (c2 - 1)


def kappa_set(mu_theta):
    _guard(mu_theta)
    t2 = mu_theta * mu_theta
    mu_cap = mu_Phi_from_theta(mu_theta)
    c2 = mu_cap * mu_cap
    root3 = math.sqrt(3.0 - t2)
    rootc = math.sqrt(c2 + 1.0)
    g = _mirror_tangent(mu_theta)
    return KappaSet(
        mu_theta=mu_theta,
        kappa1=(1 - t2) * (root3 + 2) / (root3 * (1 + t2)),
        kappa2=root3 / (1 - t2),
        kappa3=(t2 + 1) * (c2 + 1) * (g * g + 1),
        kappa4=-g * g * (t2 * (c2 + 1) + 1) + 2 * g * mu_theta * mu_cap * rootc - c2 - 1,
        kappa5=(c2 + 1) * (g * g + 1),
        kappa6=-g * g * c2 - c2 - 1,
        kappa7=_kappa7(g, mu_theta, mu_cap),
        kappa7_printed=_kappa7_printed(g, mu_theta, mu_cap),
    )


def entropy_x_single(family, k, mu_theta):
    """S_Lx for (k,0,0), (0,k,0) or (0,0,k) from kappa_1 and kappa_2."""
    fam = Family.coerce(family)
    ks = kappa_set(mu_theta)
    k1, k2 = ks.kappa1, ks.kappa2
    if fam is Family.N:
        return _entropy(k, (k1 + 1) ** 2 / 16.0, 1 - 16 * (k1 - 1) / (k1 + 1) ** 2)
    if fam is Family.M:
        return _entropy(k, ((k2 - 1) / k2) ** 2 / 4.0, (k2 * (k2 + 6) + 1) / (k2 - 1) ** 2)
    base = ((k1 * k2 - k2 - 2) / k2) ** 2 / 16.0
    return _entropy(k, base, 16 * k2 * (k1 * k2 + k2 - 2) / (-k1 * k2 + k2 + 2) ** 2 + 1)


def entropy_y_single(family, k, mu_theta):
    """S_Ly for a single-excitation family from kappa_3..kappa_7."""
    fam = Family.coerce(family)
    ks = kappa_set(mu_theta)
    a, b = {
        Family.N: (ks.kappa3, ks.kappa4),
        Family.M: (ks.kappa5, ks.kappa6),
        Family.L: (ks.kappa3, ks.kappa7),
    }[fam]
    return _entropy(k, ((a + b) / a) ** 2, 2 * b * b / (a + b) ** 2 - 1)


def entropy_z_single(family, k, mu_theta):
    """S_Lz, the mirror image of S_Ly under theta -> -theta."""
    return entropy_y_single(family, k, -mu_theta)


def purity_x_double(which, mu_theta):
    """P_x for (1,1,0), (1,0,1) or (0,1,1) as explicit rational functions."""
    MixingAngle.from_mu(mu_theta)
    which = tuple(which)
    t = mu_theta * mu_theta
    f = mu_Phi_from_theta(mu_theta) ** 2
    poly_a = f**3 - f**2 + f + 3
    poly_b = f**4 - 4 * f**3 + 14 * f**2 - 4 * f + 1
    den = (t + 1) ** 2 * (f + 1) ** 4
    if which == (1, 1, 0):
        return (2 * t * poly_a * f + t * t * (f + 1) ** 2 * (f * f + 1) + poly_b) / den
    if which == (0, 1, 1):
        return (2 * t * f * poly_a + t * t * poly_b + (f + 1) ** 2 * (f * f + 1)) / den
    if which == (1, 0, 1):
        inner = (
            -6 * t * (f + 1) / (t + 1) ** 2
            + (t * t + 4 * t + 1) * (f + 1) ** 2 / (t + 1) ** 2
            + 12 * t * t / (t + 1) ** 4
            - (f + 1) ** 3
        )
        return 2 / (f + 1) ** 4 * inner + 1
    raise ValueError(f"no closed form for {which}")


def two_osc_purity_n0(n, mu_theta):
    """P(n,0) = P(0,n) of the two-oscillator limit."""
    if n < 0:
        raise ValueError("n must be non-negative")
    t = mu_theta * mu_theta
    return _sign_prefactor(n) * (1.0 / (t + 1)) ** (2 * n) * jacobi(n, -2 * n - 1, 0, 2 * t * t - 1)
