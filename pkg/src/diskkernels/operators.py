"""Truncated Toeplitz operators and defect square roots on weighted spaces.

All matrices act on the orthonormal monomial basis e_n = z^n/||z^n|| of the
degree-N polynomial truncation of H^2 (alpha = -1) or a weighted Bergman
space (alpha > -1). Truncation is a finite-section approximation; claims
made from these matrices should be re-checked at doubled N.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .formatting import fmt_real
from .functions import SchurFunction, ensure_in_disk, taylor_coefficients
from .kernels import weighted_bergman_coefficients

CLIP_LIMIT = 1e-8
RANGE_CUTOFF = 1e-10
RANGE_RESIDUAL = 1e-8
EIGENVECTOR_RADIUS = 0.9


def monomial_norms(alpha: float, degree: int) -> np.ndarray:
    """Squared norms ||z^n||^2 for n = 0..degree.

    alpha = -1 is the Hardy space (all ones); alpha > -1 uses
    n! Gamma(alpha + 2)/Gamma(n + alpha + 2), evaluated by recurrence.
    """
    alpha = float(alpha)
    if alpha < -1.0:
        raise ValueError("alpha must be at least -1")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if alpha == -1.0:
        return np.ones(degree + 1)
    return 1.0 / weighted_bergman_coefficients(alpha, degree)


@dataclass(frozen=True, eq=False)
class SpaceWeight:
    """Weight parameter alpha together with its squared monomial norms."""

    alpha: float
    norms_sq: np.ndarray

    def __post_init__(self):
        self.norms_sq.setflags(write=False)

    @classmethod
    def for_degree(cls, alpha: float, degree: int) -> "SpaceWeight":
        return cls(alpha=float(alpha), norms_sq=monomial_norms(alpha, degree))

    @property
    def degree(self) -> int:
        return len(self.norms_sq) - 1


def _check_degree(weight: SpaceWeight, degree: int) -> None:
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if weight.degree < degree:
        raise ValueError(
            "weight covers degree %d but degree %d was requested"
            % (weight.degree, degree)
        )


@dataclass(frozen=True, eq=False)
class TruncatedToeplitz:
    """Compression of a Toeplitz operator to polynomials of degree <= N."""

    degree: int
    weight: SpaceWeight
    matrix: np.ndarray
    symbol: SchurFunction
    analytic: bool

    def __post_init__(self):
        self.matrix.setflags(write=False)


def toeplitz_analytic(
    b: SchurFunction, weight: SpaceWeight, degree: int
) -> TruncatedToeplitz:
    """Multiplication by b compressed to degree <= N (lower triangular).

    Entry (n, m) is bhat_{n-m} ||z^n||/||z^m|| in the orthonormal basis,
    with the symbol's Taylor expansion truncated at N.
    """
    _check_degree(weight, degree)
    coeffs = taylor_coefficients(b, degree)
    norms = np.sqrt(weight.norms_sq[: degree + 1])
    M = np.zeros((degree + 1, degree + 1), dtype=complex)
    for d in range(degree + 1):
        if coeffs[d] == 0:
            continue
        idx = np.arange(degree + 1 - d)
        M[idx + d, idx] = coeffs[d] * norms[idx + d] / norms[idx]
    return TruncatedToeplitz(
        degree=int(degree), weight=weight, matrix=M, symbol=b, analytic=True
    )


def toeplitz_coanalytic(
    b: SchurFunction, weight: SpaceWeight, degree: int
) -> TruncatedToeplitz:
    """Adjoint compression (multiplication by conj(b), upper triangular)."""
    analytic = toeplitz_analytic(b, weight, degree)
    return TruncatedToeplitz(
        degree=analytic.degree,
        weight=weight,
        matrix=analytic.matrix.conj().T.copy(),
        symbol=b,
        analytic=False,
    )


@dataclass(frozen=True, eq=False)
class DefectOperator:
    """D = I - T_b T_b* with its PSD square root S = D^(1/2).

    ``clip_magnitude`` records how much negative spectrum was clipped to
    zero when forming S; anything above 1e-8 raises at construction.
    ``sqrt_eigenvalues``/``eigenvectors`` hold the spectral data of S used
    for pseudo-inversion.
    """

    degree: int
    weight: SpaceWeight
    matrix: np.ndarray
    sqrt_matrix: np.ndarray
    clip_magnitude: float
    sqrt_eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)
        self.sqrt_matrix.setflags(write=False)
        self.sqrt_eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    def range_norm(self, f_taylor) -> float:
        """Norm of f in the range space M(S): ||S^+ f||.

        ``f_taylor`` are Taylor coefficients of a polynomial of degree at
        most N. Components on numerically null directions of S (eigenvalue
        below 1e-10) larger than 1e-8 mean f leaves the space: returns inf.
        """
        f_taylor = np.asarray(f_taylor, dtype=complex)
        if f_taylor.ndim != 1 or len(f_taylor) == 0:
            raise ValueError("expected a nonempty coefficient vector")
        if len(f_taylor) > self.degree + 1:
            raise ValueError(
                "coefficient vector of degree %d exceeds truncation degree %d"
                % (len(f_taylor) - 1, self.degree)
            )
        f_onb = np.zeros(self.degree + 1, dtype=complex)
        norms = np.sqrt(self.weight.norms_sq[: self.degree + 1])
        f_onb[: len(f_taylor)] = f_taylor * norms[: len(f_taylor)]
        coords = self.eigenvectors.conj().T @ f_onb
        in_range = self.sqrt_eigenvalues >= RANGE_CUTOFF
        outside = float(np.linalg.norm(coords[~in_range]))
        if outside > RANGE_RESIDUAL:
            return math.inf
        return float(np.linalg.norm(coords[in_range] / self.sqrt_eigenvalues[in_range]))


def defect(b: SchurFunction, weight: SpaceWeight, degree: int) -> DefectOperator:
    """Defect operator I - T_b T_b* and its PSD square root."""
    T = toeplitz_analytic(b, weight, degree).matrix
    D = np.eye(degree + 1, dtype=complex) - T @ T.conj().T
    D = 0.5 * (D + D.conj().T)
    evals, vecs = np.linalg.eigh(D)
    clip = float(max(0.0, -np.min(evals)))
    if clip > CLIP_LIMIT:
        raise ValueError(
            "defect operator has negative spectrum %.3g beyond the clip limit; "
            "the symbol violates the Schur bound or the truncation is too small"
            % clip
        )
    clipped = np.clip(evals, 0.0, None)
    sqrt_evals = np.sqrt(clipped)
    S = (vecs * sqrt_evals) @ vecs.conj().T
    S = 0.5 * (S + S.conj().T)
    return DefectOperator(
        degree=int(degree),
        weight=weight,
        matrix=D,
        sqrt_matrix=S,
        clip_magnitude=clip,
        sqrt_eigenvalues=sqrt_evals,
        eigenvectors=vecs,
    )


def range_norm(f_taylor, b: SchurFunction, weight: SpaceWeight, degree: int) -> float:
    """Norm of the polynomial f in the range space of the defect square root."""
    return defect(b, weight, degree).range_norm(f_taylor)


def kernel_section_taylor(
    b: SchurFunction, alpha: float, w: complex, degree: int
) -> np.ndarray:
    """Taylor coefficients in z of the sub-Bergman kernel section at w."""
    w = ensure_in_disk(w)
    bw = complex(b.eval(w))
    numer = -np.conj(bw) * taylor_coefficients(b, degree)
    numer[0] += 1.0
    base = weighted_bergman_coefficients(alpha, degree) * (
        np.conj(w) ** np.arange(degree + 1)
    )
    return np.convolve(numer, base)[: degree + 1]


def eigenvector_check(
    b: SchurFunction, weight: SpaceWeight, degree: int, w: complex
) -> float:
    """Relative residual of T_b* applied to a truncated kernel section.

    The section kappa_w (coefficients conj(w)^n/||z^n|| in the orthonormal
    basis) is an eigenvector of the co-analytic compression with eigenvalue
    conj(b(w)) up to truncation tail; returns
    ||T_b* kappa - conj(b(w)) kappa|| / ||kappa||. Restricted to |w| <= 0.9
    so the tail stays meaningful at moderate N.
    """
    w = ensure_in_disk(w)
    if abs(w) > EIGENVECTOR_RADIUS:
        raise ValueError("kernel-section points are restricted to |w| <= 0.9")
    _check_degree(weight, degree)
    norms = np.sqrt(weight.norms_sq[: degree + 1])
    kappa = np.conj(w) ** np.arange(degree + 1) / norms
    T = toeplitz_analytic(b, weight, degree).matrix
    bw = complex(b.eval(w))
    residual = T.conj().T @ kappa - np.conj(bw) * kappa
    return float(np.linalg.norm(residual) / np.linalg.norm(kappa))


def write_matrix_csv(op: TruncatedToeplitz, path: str) -> None:
    """Dump the matrix as CSV of "re,im" cells plus a JSON sidecar.

    The sidecar (same path with .json appended) records dimensions, the
    weight parameter, and the basis convention.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in op.matrix:
            writer.writerow(
                ["%s,%s" % (fmt_real(v.real), fmt_real(v.imag)) for v in row]
            )
    sidecar = {
        "rows": op.matrix.shape[0],
        "cols": op.matrix.shape[1],
        "alpha": op.weight.alpha,
        "kind": "analytic" if op.analytic else "coanalytic",
        "basis": "orthonormal monomials z^n/||z^n||_alpha, degree 0..N",
        "cell": "re,im",
    }
    with open(path + ".json", "w") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=2)
        fh.write("\n")
