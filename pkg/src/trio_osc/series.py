"""Truncated multivariate power series.

A :class:`TruncatedSeries` stores the Taylor coefficients of a function of
up to six variables, with an independent degree cap per variable.  The
purity generating functions are rational, so ring operations plus a
reciprocal are all that is needed; a mixed derivative at the origin is then
a single stored coefficient times the factorials of its orders.

    >>> u, a = variables((2, 2))
    >>> f = (1 + u) * (1 + a)
    >>> f.coeff((1, 1))
    1.0
    >>> (1 / (1 - u)).coeff((2, 0))
    1.0
"""

from math import factorial, prod

import numpy as np

from . import _kernels
from .errors import CapMismatch, OutOfCaps, ZeroConstantTerm

MAX_VARS = 6


class TruncatedSeries:
    """Dense truncated power series; treat instances as immutable."""

    __slots__ = ("caps", "coeffs", "names")

    def __init__(self, coeffs, names=None):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim == 0:
            raise ValueError("series needs at least one variable")
        if coeffs.ndim > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported, got {coeffs.ndim}")
        self.coeffs = coeffs
        self.caps = tuple(s - 1 for s in coeffs.shape)
        if names is not None:
            names = tuple(names)
            if len(names) != coeffs.ndim:
                raise ValueError("one name per variable required")
        self.names = names

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, caps, names=None):
        _check_caps(caps)
        return cls(np.zeros(tuple(c + 1 for c in caps)), names)

    @classmethod
    def constant(cls, value, caps, names=None):
        s = cls.zeros(caps, names)
        s.coeffs.flat[0] = value
        return s

    @classmethod
    def from_terms(cls, terms, caps, names=None):
        """Polynomial from ``{exponent tuple: coefficient}``; terms beyond the caps are dropped."""
        s = cls.zeros(caps, names)
        for exp, val in terms.items():
            exp = tuple(exp)
            if len(exp) != len(s.caps):
                raise ValueError(f"exponent {exp} has wrong length for caps {s.caps}")
            if all(0 <= e <= c for e, c in zip(exp, s.caps)):
                s.coeffs[exp] += val
        return s

    @classmethod
    def from_affine(cls, constant, linear, caps, names=None):
        s = cls.constant(constant, caps, names)
        for var, val in linear.items():
            i = s._index(var)
            if s.caps[i] >= 1:
                exp = [0] * len(s.caps)
                exp[i] = 1
                s.coeffs[tuple(exp)] += val
        return s

    def _index(self, var):
        if isinstance(var, str):
            if self.names is None or var not in self.names:
                raise KeyError(f"unknown variable {var!r}")
            return self.names.index(var)
        if not 0 <= var < len(self.caps):
            raise KeyError(f"variable index {var} out of range")
        return var

    def _wrap(self, coeffs):
        return TruncatedSeries(coeffs, self.names)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.caps != self.caps:
                raise CapMismatch(f"caps {self.caps} vs {other.caps}")
            return other
        return TruncatedSeries.constant(float(other), self.caps, self.names)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._wrap(self.coeffs + self._coerce(other).coeffs)
        out = self.coeffs.copy()
        out.flat[0] += other
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._wrap(_kernels.mul(self.coeffs, self._coerce(other).coeffs))
        return self._wrap(self.coeffs * other)

    __rmul__ = __mul__

    def reciprocal(self):
        f0 = self.coeffs.flat[0]
        if f0 == 0.0:
            raise ZeroConstantTerm("constant term is zero")
        return self._wrap(_kernels.reciprocal(self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * self._coerce(other).reciprocal()
        return self._wrap(self.coeffs / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = TruncatedSeries.constant(1.0, self.caps, self.names)
        for _ in range(k):
            out = out * self
        return out

    # -- access -------------------------------------------------------------

    def coeff(self, exponent):
        exponent = tuple(exponent)
        if len(exponent) != len(self.caps):
            raise OutOfCaps(f"exponent {exponent} has wrong length for caps {self.caps}")
        if any(e < 0 or e > c for e, c in zip(exponent, self.caps)):
            raise OutOfCaps(f"exponent {exponent} outside caps {self.caps}")
        return float(self.coeffs[exponent])

    def derivative_at_zero(self, orders):
        """Mixed partial derivative at the origin: coefficient times the product of factorials."""
        return self.coeff(orders) * prod(factorial(o) for o in orders)

    def __repr__(self):
        return f"TruncatedSeries(caps={self.caps}, nnz={np.count_nonzero(self.coeffs)})"


def _check_caps(caps):
    caps = tuple(caps)
    if not caps or len(caps) > MAX_VARS:
        raise ValueError(f"need 1..{MAX_VARS} caps, got {len(caps)}")
    if any(int(c) != c or c < 0 for c in caps):
        raise ValueError(f"caps must be non-negative integers: {caps}")


def variables(caps, names=None):
    """The generator series ``x_i`` for every variable under the given caps."""
    out = []
    for i in range(len(caps)):
        out.append(TruncatedSeries.from_affine(0.0, {i: 1.0}, caps, names))
    return tuple(out)


def series_from_affine(constant, linear, caps, names=None):
    return TruncatedSeries.from_affine(constant, linear, caps, names)


def mul(f, g):
    return f * g


def reciprocal(f):
    return f.reciprocal()


def coeff(f, exponent):
    return f.coeff(exponent)
