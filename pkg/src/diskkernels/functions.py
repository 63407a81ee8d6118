"""Symbols in the closed unit ball of H-infinity on the unit disk.

Finite Blaschke products, one-atom singular inner functions, polynomial
and constant symbols, their Taylor expansions, and the scalar quantities
derived from them (zero-normalized kernel factor, boundary growth ratio).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

UNIMODULAR_TOL = 1e-12
UNIT_BALL_TOL = 1e-10
ATOM_GUARD = 1e-12

_CERT_GRID_RADII = 64
_CERT_GRID_ANGLES = 64


class UnitDiskError(ValueError):
    """A point that must lie strictly inside the unit disk does not."""


class SchurBoundError(ValueError):
    """A symbol that must lie in the closed unit ball of H-infinity does not."""


def ensure_in_disk(z: complex) -> complex:
    """Validate |z| < 1 and return z as a complex number."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise UnitDiskError("point %r is not strictly inside the unit disk" % z)
    return z


def mobius_factor(a: complex, z):
    """Single Blaschke factor: (a - z)/(1 - conj(a) z), or z when a = 0."""
    if a == 0:
        return np.asarray(z, dtype=complex) + 0.0
    return (a - z) / (1.0 - np.conj(a) * z)


def mobius_factor_series(a: complex, order: int) -> np.ndarray:
    """Taylor coefficients of a single Blaschke factor up to the given order."""
    out = np.zeros(order + 1, dtype=complex)
    if a == 0:
        if order >= 1:
            out[1] = 1.0
        return out
    # (a - z) * sum_n conj(a)^n z^n
    geo = np.conj(a) ** np.arange(order + 1)
    out = a * geo
    out[1:] -= geo[:-1]
    return out


def _truncated_product(series_list, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0
    for s in series_list:
        out = np.convolve(out, s)[: order + 1]
    return out


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product with factors (a - z)/(1 - conj(a) z).

    The factor for a zero at the origin is plain z. Any alternative sign
    or phase convention is absorbed by ``unimodular_constant``.
    """

    zeros: tuple
    unimodular_constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        c = complex(self.unimodular_constant)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "unimodular_constant", c)
        if len(zeros) == 0:
            raise ValueError("a Blaschke product needs at least one zero")
        if any(abs(a) >= 1.0 for a in zeros):
            raise UnitDiskError("Blaschke zeros must lie strictly inside the unit disk")
        if abs(abs(c) - 1.0) > UNIMODULAR_TOL:
            raise ValueError(
                "|unimodular_constant| must equal 1 within %g" % UNIMODULAR_TOL
            )

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.unimodular_constant, dtype=complex)
        for a in self.zeros:
            out = out * mobius_factor(a, z)
        return out

    def taylor(self, order: int) -> np.ndarray:
        series = [mobius_factor_series(a, order) for a in self.zeros]
        return self.unimodular_constant * _truncated_product(series, order)


@dataclass(frozen=True)
class AtomicSingularInner:
    """Singular inner function exp(-mass (atom + z)/(atom - z)), one boundary atom."""

    mass: float
    boundary_atom: complex = 1.0 + 0.0j

    def __post_init__(self):
        mass = float(self.mass)
        atom = complex(self.boundary_atom)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "boundary_atom", atom)
        if not mass > 0.0:
            raise ValueError("mass must be positive")
        if abs(abs(atom) - 1.0) > UNIMODULAR_TOL:
            raise ValueError("|boundary_atom| must equal 1 within %g" % UNIMODULAR_TOL)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        xi = self.boundary_atom
        gap = np.abs(xi - z)
        if np.min(gap) < ATOM_GUARD:
            raise UnitDiskError(
                "evaluation within %g of the boundary atom is refused" % ATOM_GUARD
            )
        return np.exp(-self.mass * (xi + z) / (xi - z))

    def taylor(self, order: int) -> np.ndarray:
        # exponent g(z) = -mass (1 + 2 sum_{n>=1} (z/atom)^n)
        u = 1.0 / self.boundary_atom
        g = np.zeros(order + 1, dtype=complex)
        g[0] = -self.mass
        if order >= 1:
            g[1:] = -2.0 * self.mass * u ** np.arange(1, order + 1)
        # h = exp(g) via h' = g' h
        h = np.zeros(order + 1, dtype=complex)
        h[0] = np.exp(g[0])
        for n in range(1, order + 1):
            k = np.arange(1, n + 1)
            h[n] = np.sum(k * g[k] * h[n - k]) / n
        return h


@dataclass(frozen=True)
class TaylorPolynomial:
    """Polynomial symbol, by default grid-certified to lie in the unit ball.

    Certification samples a 64x64 radial-angular grid at construction and
    re-checks lazily on every evaluation; a modulus exceeding 1 + 1e-10
    raises. ``unit_ball_check=False`` skips both (needed for deliberately
    non-Schur symbols when refuting multiplier bounds).
    """

    coefficients: tuple
    unit_ball_check: bool = True

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        if self.unit_ball_check:
            radii = (np.arange(_CERT_GRID_RADII) + 1.0) / (_CERT_GRID_RADII + 1.0)
            angles = np.exp(
                2j * np.pi * np.arange(_CERT_GRID_ANGLES) / _CERT_GRID_ANGLES
            )
            pts = np.outer(radii, angles).ravel()
            worst = np.max(np.abs(self._raw_eval(pts)))
            if worst > 1.0 + UNIT_BALL_TOL:
                raise SchurBoundError(
                    "polynomial exceeds the unit ball on the certification grid "
                    "(max modulus %.6g)" % worst
                )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _raw_eval(self, z):
        return np.polynomial.polynomial.polyval(
            np.asarray(z, dtype=complex), np.asarray(self.coefficients)
        )

    def eval(self, z):
        vals = self._raw_eval(z)
        if self.unit_ball_check:
            worst = np.max(np.abs(vals))
            if worst > 1.0 + UNIT_BALL_TOL:
                raise SchurBoundError(
                    "polynomial exceeds the unit ball at an evaluation point "
                    "(modulus %.6g)" % worst
                )
        return vals

    def taylor(self, order: int) -> np.ndarray:
        out = np.zeros(order + 1, dtype=complex)
        take = min(order + 1, len(self.coefficients))
        out[:take] = self.coefficients[:take]
        return out


@dataclass(frozen=True)
class ConstantFunction:
    """Constant symbol with modulus at most 1."""

    value: complex

    def __post_init__(self):
        value = complex(self.value)
        object.__setattr__(self, "value", value)
        if abs(value) > 1.0:
            raise SchurBoundError("|constant| must be at most 1")

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return np.full(z.shape, self.value, dtype=complex)

    def taylor(self, order: int) -> np.ndarray:
        out = np.zeros(order + 1, dtype=complex)
        out[0] = self.value
        return out


SchurFunction = Union[
    BlaschkeProduct, AtomicSingularInner, TaylorPolynomial, ConstantFunction
]


@dataclass(frozen=True)
class NormalizedZeroKernel:
    """f0(z) = (1 - conj(b(0)) b(z)) / sqrt(1 - |b(0)|^2) for a Schur symbol b.

    f0 is bounded and invertible in H-infinity with
    ||1/f0||_inf <= sqrt((1 + |b(0)|)/(1 - |b(0)|)) = ``inverse_sup_bound``.
    """

    base: SchurFunction
    value_at_zero: complex
    inverse_sup_bound: float

    def eval(self, z):
        b0 = self.value_at_zero
        scale = 1.0 / math.sqrt(1.0 - abs(b0) ** 2)
        return scale * (1.0 - np.conj(b0) * self.base.eval(z))


def normalized_zero_kernel(b: SchurFunction) -> NormalizedZeroKernel:
    """Build f0 for b; error when |b(0)| = 1 (b a unimodular constant)."""
    b0 = complex(b.eval(0.0))
    if abs(b0) >= 1.0:
        raise ValueError("|b(0)| = 1 is degenerate (b is a unimodular constant)")
    bound = math.sqrt((1.0 + abs(b0)) / (1.0 - abs(b0)))
    return NormalizedZeroKernel(base=b, value_at_zero=b0, inverse_sup_bound=bound)


def evaluate(f, z: complex) -> complex:
    """Evaluate a symbol at a point strictly inside the unit disk."""
    z = ensure_in_disk(z)
    return complex(f.eval(z))


def taylor_coefficients(f, order: int) -> np.ndarray:
    """Taylor coefficients of f at 0 through degree ``order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return f.taylor(int(order))


def ratio_values(b, z) -> np.ndarray:
    """(1 - |b(z)|^2)/(1 - |z|^2) on an array of points inside the disk."""
    z = np.asarray(z, dtype=complex)
    if z.size and np.max(np.abs(z)) >= 1.0:
        raise UnitDiskError("ratio points must lie strictly inside the unit disk")
    num = 1.0 - np.abs(b.eval(z)) ** 2
    den = 1.0 - np.abs(z) ** 2
    return num / den


def blaschke_ratio(b, z: complex) -> float:
    """Scalar boundary-growth ratio (1 - |b(z)|^2)/(1 - |z|^2)."""
    z = ensure_in_disk(z)
    return float(ratio_values(b, np.asarray([z]))[0])


def ratio_sup_estimate(b, radii, angles_per_radius: int = 64) -> float:
    """Max of the boundary-growth ratio over a radial-angular grid."""
    radii = tuple(float(r) for r in radii)
    if len(radii) == 0:
        raise ValueError("need at least one radius")
    if any(not 0.0 < r < 1.0 for r in radii):
        raise UnitDiskError("radii must lie in (0, 1)")
    m = int(angles_per_radius)
    if m < 1:
        raise ValueError("need at least one angle per radius")
    angles = np.exp(2j * np.pi * np.arange(m) / m)
    best = -math.inf
    for r in radii:
        best = max(best, float(np.max(ratio_values(b, r * angles))))
    return best
