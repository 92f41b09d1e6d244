"""Single-angle reduction of the weak-coupling regime.

Everything is parameterised by the mixing angle theta through
mu_theta = tan(theta).  The companion tangents are

    mu_phi = (1 - mu_theta sqrt(2 - mu_theta^2)) / (mu_theta^2 - 1)
    mu_Phi = (1 - mu_theta^2 - sqrt(3 - mu_theta^2)) / sqrt(2 + mu_theta^2 - mu_theta^4)

which are real for |mu_theta| < sqrt(2).  ``mu_phi`` has a removable
singularity at mu_theta = 1 and a genuine pole at mu_theta = -1 (phi -> -pi/2).
The same branch is phi = asin(mu_theta / sqrt 2) - pi/4, which
:func:`phi_direction` uses to stay finite across both points.
"""

from dataclasses import dataclass
import math

from .errors import DomainError, PoleError
from .oscillator import EulerAngles

POLE_GUARD = 1e-6
SQRT2 = math.sqrt(2.0)


def _check_domain(mu_theta):
    if not math.isfinite(mu_theta) or abs(mu_theta) >= SQRT2:
        raise DomainError(f"|mu_theta| must be < sqrt(2), got {mu_theta}")


def near_pole(mu_theta, guard=POLE_GUARD):
    return abs(abs(mu_theta) - 1.0) <= guard


@dataclass(frozen=True)
class MixingAngle:
    theta: float
    mu_theta: float

    def __post_init__(self):
        _check_domain(self.mu_theta)

    @classmethod
    def from_theta(cls, theta):
        return cls(theta, math.tan(theta))

    @classmethod
    def from_mu(cls, mu_theta):
        return cls(math.atan(mu_theta), mu_theta)

    @property
    def near_pole(self):
        return near_pole(self.mu_theta)


def mu_phi_from_theta(mu_theta):
    _check_domain(mu_theta)
    t2 = mu_theta * mu_theta
    if abs(t2 - 1.0) <= POLE_GUARD * 2.0:
        if mu_theta < 0:
            raise PoleError(f"mu_phi diverges at mu_theta = -1 (got {mu_theta})")
        # series of tan(asin(mu/sqrt2) - pi/4) about mu = 1
        h = mu_theta - 1.0
        return h + 0.5 * h * h
    return (1.0 - mu_theta * math.sqrt(2.0 - t2)) / (t2 - 1.0)


def mu_Phi_from_theta(mu_theta):
    if not math.isfinite(mu_theta):
        raise DomainError("mu_theta must be finite")
    t2 = mu_theta * mu_theta
    rad = 2.0 + t2 - t2 * t2
    if t2 >= 3.0 or rad <= 0.0:
        raise DomainError(f"mu_Phi undefined for mu_theta = {mu_theta}")
    return (1.0 - t2 - math.sqrt(3.0 - t2)) / math.sqrt(rad)


def phi_from_theta(mu_theta):
    """phi on the same branch as :func:`mu_phi_from_theta`, folded into [-pi/2, pi/2)."""
    _check_domain(mu_theta)
    phi = math.asin(mu_theta / SQRT2) - math.pi / 4
    if phi < -math.pi / 2:
        phi += math.pi
    return phi


def phi_direction(mu_theta):
    """(sin phi, cos phi); finite everywhere on the domain, including mu_theta = -1."""
    _check_domain(mu_theta)
    phi = math.asin(mu_theta / SQRT2) - math.pi / 4
    return math.sin(phi), math.cos(phi)


def euler_angles(mu_theta):
    """Full (theta, Phi, phi) triple of the reduced regime."""
    return EulerAngles(math.atan(mu_theta), math.atan(mu_Phi_from_theta(mu_theta)), phi_from_theta(mu_theta))


@dataclass(frozen=True)
class AngleConsistency:
    """Residuals of the angle relations for one mu_theta.

    tan_theta:         |tan(theta) - sin(phi) - cos(phi)|, the relation the
                       mu_phi branch actually satisfies
    tan_theta_printed: |tan(theta) + sin(phi) + cos(phi)|, the sign as
                       written next to the reduced relations; equals
                       2|mu_theta| on this branch
    tan_2Phi:          relative residual of
                       tan(2 Phi) = sqrt(1 - sin 2phi) sqrt(sin 2phi + 2) / sin 2phi
    """

    tan_theta: float
    tan_theta_printed: float
    tan_2Phi: float


def check_angle_consistency(mu_theta):
    mu_phi = mu_phi_from_theta(mu_theta)
    mu_cap = mu_Phi_from_theta(mu_theta)
    phi = math.atan(mu_phi)
    s, c = math.sin(phi), math.cos(phi)
    s2 = math.sin(2 * phi)
    if s2 == 0.0:
        raise PoleError("sin(2 phi) vanishes; tan(2 Phi) relation singular")
    lhs = math.tan(2 * math.atan(mu_cap))
    rhs = math.sqrt(1 - 2 * s * c) * math.sqrt(s2 + 2) / s2
    return AngleConsistency(
        tan_theta=abs(mu_theta - s - c),
        tan_theta_printed=abs(mu_theta + s + c),
        tan_2Phi=abs(lhs - rhs) / max(1.0, abs(lhs)),
    )
