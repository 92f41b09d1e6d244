"""Three coupled oscillators: potential matrix, the quintic angle condition,
Euler-angle reconstruction and diagonalisation checks.

Units: hbar = m = 1, frequencies dimensionless, couplings in frequency^2.
"""

from dataclasses import dataclass, field
import math
from typing import NamedTuple

import numpy as np

from .errors import BranchError, DegenerateEigenvalues, DomainError

# relative zero test for "all quintic coefficients vanish"
DEGENERACY_RTOL = 1e-12
# imaginary parts below this (relative to max(1, |root|)) count as real
REAL_ROOT_TOL = 1e-9


@dataclass(frozen=True)
class OscillatorParams:
    omega_x: float
    omega_y: float
    omega_z: float
    j_xy: float = 0.0
    j_xz: float = 0.0
    j_yz: float = 0.0

    def __post_init__(self):
        for name in ("omega_x", "omega_y", "omega_z", "j_xy", "j_xz", "j_yz"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise DomainError(f"{name} must be finite, got {val}")
        for name in ("omega_x", "omega_y", "omega_z"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be strictly positive")

    @property
    def omegas(self):
        return (self.omega_x, self.omega_y, self.omega_z)

    @property
    def couplings(self):
        return (self.j_xy, self.j_xz, self.j_yz)

    @property
    def scale(self):
        """Largest magnitude among squared frequencies and couplings."""
        return max(max(w * w for w in self.omegas), max(abs(j) for j in self.couplings))

    @property
    def is_weak(self):
        """Weak-coupling predicate: max |J| < min omega^2."""
        return max(abs(j) for j in self.couplings) < min(w * w for w in self.omegas)


@dataclass(frozen=True)
class EulerAngles:
    """Rotation angles (theta, Phi, phi) in radians.

    ``phi`` lives in [-pi/2, pi/2]; the endpoints are only reached on the
    pole of the reduced-angle relations, where tan(phi) diverges.
    """

    theta: float
    phi_cap: float
    phi: float

    def __post_init__(self):
        if not all(math.isfinite(a) for a in (self.theta, self.phi_cap, self.phi)):
            raise DomainError("Euler angles must be finite")
        if abs(self.phi) > math.pi / 2 + 1e-12:
            raise DomainError(f"phi must lie in [-pi/2, pi/2], got {self.phi}")


IDENTITY_ANGLES = EulerAngles(0.0, 0.0, 0.0)


class PhiRoots(NamedTuple):
    roots: tuple
    degenerate: bool


@dataclass(frozen=True)
class DiagonalizationResult:
    angles: EulerAngles
    eigenvalues: tuple
    residual: float
    mu_phi: float = float("nan")
    branch: dict = field(default_factory=dict)


def build_potential_matrix(params):
    wx, wy, wz = (w * w for w in params.omegas)
    jxy, jxz, jyz = params.couplings
    return np.array([[wx, jxy, jxz], [jxy, wy, jyz], [jxz, jyz, wz]], dtype=float)


def quintic_coefficients(params):
    """Coefficients a_0..a_5 of the quintic in tan(phi), lowest order first."""
    wx, wy, wz = (w * w for w in params.omegas)
    xy, xz, yz = params.couplings
    a0 = xy * yz * (wz - wx) + xy**2 * xz - xz * yz**2
    a1 = xy * (-2 * xz**2 + yz**2 + (wx - wz) * (wz - wy)) + xz * yz * (wx - 2 * wy + wz) + xy**3
    a2 = xz * (wx - wy) * (wy - wz) - xy**2 * xz + xy * yz * (wy - wz) + xz**3
    a3 = -xy * (xz**2 + (wx - wz) * (wy - wz)) + xy**3 + xz * yz * (wz - wy)
    a4 = xy * yz * (wx + wy - 2 * wz) + xz * (xz**2 + yz**2 + (wx - wy) * (wy - wz)) - 2 * xy**2 * xz
    a5 = xz * yz * (wy - wx) + xy * (xz**2 - yz**2)
    return np.array([a0, a1, a2, a3, a4, a5])


def _companion_roots(coeffs):
    """Roots of sum c_n x^n via the eigenvalues of the (LAPACK-balanced) companion matrix."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    deg = len(c) - 1
    if deg < 1:
        return np.array([], dtype=complex)
    comp = np.zeros((deg, deg))
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    return np.linalg.eigvals(comp)


def _horner(coeffs, x):
    p = 0.0
    dp = 0.0
    for c in coeffs[::-1]:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def real_polynomial_roots(coeffs):
    """Distinct real roots of sum a_n x^n (lowest order first), Newton-polished once.

    >>> real_polynomial_roots([0, 0, 0, 0, 0, 1])
    (0.0,)
    """
    a = np.asarray(coeffs, dtype=float)
    big = np.max(np.abs(a))
    if big == 0.0:
        raise ValueError("zero polynomial has no isolated roots")
    # drop coefficients that are zero at this scale
    a = np.where(np.abs(a) < 1e-15 * big, 0.0, a)
    roots = []
    for z in _companion_roots(a):
        if abs(z.imag) > REAL_ROOT_TOL * max(1.0, abs(z)):
            continue
        x = z.real
        p, dp = _horner(a, x)
        if dp != 0.0:
            x -= p / dp
        x = float(x) + 0.0
        if not any(abs(x - r) <= REAL_ROOT_TOL * max(1.0, abs(r)) for r in roots):
            roots.append(x)
    return tuple(sorted(roots))


def solve_phi_roots(params):
    """Real roots mu_phi = tan(phi) of the quintic; flagged degenerate when all a_n vanish."""
    a = quintic_coefficients(params)
    if np.max(np.abs(a)) < DEGENERACY_RTOL * params.scale**3:
        return PhiRoots((), True)
    return PhiRoots(real_polynomial_roots(a), False)


def planar_rotations(angles):
    """The three factors R1(phi), R2(Phi), R3(theta) whose product is the full rotation."""
    cp, sp = math.cos(angles.phi), math.sin(angles.phi)
    cP, sP = math.cos(angles.phi_cap), math.sin(angles.phi_cap)
    ct, st = math.cos(angles.theta), math.sin(angles.theta)
    r1 = np.array([[1.0, 0.0, 0.0], [0.0, cp, sp], [0.0, -sp, cp]])
    r2 = np.array([[cP, sP, 0.0], [-sP, cP, 0.0], [0.0, 0.0, 1.0]])
    r3 = np.array([[ct, 0.0, st], [0.0, 1.0, 0.0], [-st, 0.0, ct]])
    return r1, r2, r3


def rotation_matrix(angles):
    """Explicit rotation R(phi, Phi, theta); equals R1 @ R2 @ R3.

    Its columns are the normal-mode directions: lab coordinates are
    ``q = R @ Q``, so the normal coordinate X is ``R[:, 0] @ q``.
    """
    ct, st = math.cos(angles.theta), math.sin(angles.theta)
    cP, sP = math.cos(angles.phi_cap), math.sin(angles.phi_cap)
    cp, sp = math.cos(angles.phi), math.sin(angles.phi)
    return np.array(
        [
            [ct * cP, sP, st * cP],
            [-cp * sP * ct - sp * st, cp * cP, -cp * sP * st + sp * ct],
            [sp * sP * ct - cp * st, -sp * cP, sp * sP * st + cp * ct],
        ]
    )


def diagonalizing_rotation(angles):
    """R1(phi) @ R3(theta) @ R2(Phi), the frame in which the quintic and the angle identities hold.

    The auxiliary matrix R1^T K R1 is written as R3 R2 Sigma R2^T R3^T, so a
    quintic root together with the recovered (theta, Phi) diagonalises K with
    this factor order, not with :func:`rotation_matrix`.
    """
    r1, r2, r3 = planar_rotations(angles)
    return r1 @ r3 @ r2


def auxiliary_matrix(params, phi):
    """A_phi = R1(-phi) K R1(phi)."""
    r1, _, _ = planar_rotations(EulerAngles(0.0, 0.0, phi))
    k = build_potential_matrix(params)
    return r1.T @ k @ r1


def symmetric_eigenvalues(k):
    """Eigenvalues of a real symmetric 3x3 matrix, descending (trigonometric closed form)."""
    k = np.asarray(k, dtype=float)
    p1 = k[0, 1] ** 2 + k[0, 2] ** 2 + k[1, 2] ** 2
    if p1 == 0.0:
        return tuple(sorted(np.diag(k).tolist(), reverse=True))
    q = np.trace(k) / 3.0
    p2 = (k[0, 0] - q) ** 2 + (k[1, 1] - q) ** 2 + (k[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (k - q * np.eye(3)) / p
    r = min(1.0, max(-1.0, np.linalg.det(b) / 2.0))
    ang = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(ang)
    e3 = q + 2.0 * p * math.cos(ang + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return (e1, e2, e3)


def diagonalization_residual(params, angles):
    """Largest off-diagonal magnitude of R^T K R for the solver-frame rotation."""
    r = diagonalizing_rotation(angles)
    d = r.T @ build_potential_matrix(params) @ r
    return float(np.max(np.abs(d - np.diag(np.diag(d)))))


def _angles_for_assignment(params, phi, a, x, y, z):
    """theta and Phi from the two representations of A_phi, given an eigenvalue labelling."""
    scale = params.scale
    if abs(x - y) <= 1e-12 * scale:
        raise DegenerateEigenvalues(f"eigenvalues {x} and {y} coincide")
    a12, a23 = a[0, 1], a[1, 2]
    if abs(a12) <= 1e-14 * scale:
        raise BranchError("J_xy cos(phi) - J_xz sin(phi) vanishes; tan(theta) undefined")
    theta = math.atan(-a23 / a12)
    sin2 = 2.0 * math.hypot(a12, a23) / (x - y)
    # the square root drops the sign of sin(Phi)cos(Phi); A12 = C_theta S_Phi C_Phi (y - x) restores it
    if a12 * math.cos(theta) * (y - x) < 0:
        sin2 = -sin2
    cos2 = (a[0, 0] - a[1, 1] + a[2, 2] - z) / (x - y)
    phi_cap = 0.5 * math.atan2(sin2, cos2)
    return EulerAngles(theta, phi_cap, phi)


def angles_from_phi(params, phi):
    """Recover (theta, Phi) for a given phi; returns the best eigenvalue labelling.

    The eigenvalues are sorted descending and each one is tried as the z
    eigenvalue, the remaining pair keeping x > y.  The labelling with the
    smallest diagonalisation residual wins and is reported in ``branch``.
    """
    a = auxiliary_matrix(params, phi)
    ev = symmetric_eigenvalues(build_potential_matrix(params))
    best = None
    errors = []
    for iz in range(3):
        x, y = [ev[i] for i in range(3) if i != iz]
        try:
            ang = _angles_for_assignment(params, phi, a, x, y, ev[iz])
        except (DegenerateEigenvalues, BranchError) as exc:
            errors.append(exc)
            continue
        res = diagonalization_residual(params, ang)
        if best is None or res < best.residual:
            best = DiagonalizationResult(
                angles=ang,
                eigenvalues=(x, y, ev[iz]),
                residual=res,
                mu_phi=math.tan(phi),
                branch={"z_eigenvalue_index": iz},
            )
    if best is None:
        raise errors[0]
    return best


def diagonalize(params):
    """Full pipeline: quintic, real roots, per-root angles and residuals.

    Returns ``(coefficients, PhiRoots, [DiagonalizationResult, ...])``.  In
    the degenerate case (all coefficients vanish) the identity rotation and
    phi = 0 are tried instead of roots.
    """
    coeffs = quintic_coefficients(params)
    roots = solve_phi_roots(params)
    results = []
    if roots.degenerate:
        ev = symmetric_eigenvalues(build_potential_matrix(params))
        res = diagonalization_residual(params, IDENTITY_ANGLES)
        results.append(DiagonalizationResult(IDENTITY_ANGLES, tuple(ev), res, 0.0, {"degenerate": True}))
        if res > 0.0:
            try:
                results.append(angles_from_phi(params, 0.0))
            except (DegenerateEigenvalues, BranchError):
                pass
    else:
        for mu in roots.roots:
            try:
                results.append(angles_from_phi(params, math.atan(mu)))
            except (DegenerateEigenvalues, BranchError):
                continue
    return coeffs, roots, results


def eigenenergy(state, theta_common):
    """Energy of Fock level (n, m, l) when all normal modes share the frequency theta_common."""
    if theta_common <= 0:
        raise DomainError("common frequency must be positive")
    n, m, l = state
    return theta_common * (n + m + l + 1.5)
