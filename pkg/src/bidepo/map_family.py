"""The three-parameter bipartite depolarizing family and its relatives.

The central object is the map on a dA x dB system

    Phi[alpha, beta, gamma](X) = Tr(X) 1  +  alpha 1_A ⊗ Tr_A(X)
                                +  beta Tr_B(X) ⊗ 1_B  +  gamma X ,

together with the reduced single-system family

    chi[a, c](X) = Tr(X) 1 + a diag(X) + c X ,

ordinary depolarizing maps, and Hadamard (entrywise multiplication)
channels.  Choi matrices follow the state-normalized convention: the map
is applied to half of the normalized maximally entangled state of the
doubled space, ordered AB ⊗ A'B' with primed (untouched) factors second.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tensor_core import (
    DimensionMismatchError,
    Dims,
    as_complex,
    kron,
    max_entangled,
    min_eig,
    partial_trace,
    permute_systems,
    proj,
)


@dataclass(frozen=True)
class PhiParams:
    """Parameter triple (alpha, beta, gamma) plus local dimensions."""

    alpha: float
    beta: float
    gamma: float
    dims: Dims

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def n(self) -> int:
        return self.dims.n


@dataclass(frozen=True)
class ChiParams:
    """Parameter pair (a, c) plus the system dimension n."""

    a: float
    c: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.c)):
            raise ValueError("a and c must be finite")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class DepolParams:
    """Depolarizing map parameters: D_q(X) = q X + (1-q) Tr(X) 1/d."""

    q: float
    d: int

    def __post_init__(self):
        if not np.isfinite(self.q):
            raise ValueError("q must be finite")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")


@dataclass(frozen=True)
class SuperOp:
    """A map represented by its Choi matrix.

    ``choi`` is (dim^2 x dim^2) in the state-normalized convention
    (built from the normalized maximally entangled vector).  ``dims``
    carries the bipartite input structure when there is one.
    """

    choi: np.ndarray
    dim: int
    dims: Dims | None = None
    normalized: bool = True

    def __post_init__(self):
        if self.choi.shape != (self.dim**2, self.dim**2):
            raise DimensionMismatchError(
                f"Choi matrix shape {self.choi.shape} does not match dim {self.dim}"
            )


def phi_apply(p: PhiParams, X) -> np.ndarray:
    """Apply Phi[alpha, beta, gamma] to an operator on the dA x dB space."""
    dA, dB = p.dims.dA, p.dims.dB
    X = as_complex(X)
    if X.shape != (dA * dB, dA * dB):
        raise DimensionMismatchError(f"input must be {dA * dB}x{dA * dB}, got {X.shape}")
    trA = partial_trace(X, (dA, dB), keep="second")
    trB = partial_trace(X, (dA, dB), keep="first")
    out = np.trace(X) * np.eye(dA * dB, dtype=complex)
    out += p.alpha * kron(np.eye(dA), trA)
    out += p.beta * kron(trB, np.eye(dB))
    out += p.gamma * X
    return out


def chi_apply(p: ChiParams, X) -> np.ndarray:
    """Apply chi[a, c] to an operator on the n-dimensional space."""
    X = as_complex(X)
    if X.shape != (p.n, p.n):
        raise DimensionMismatchError(f"input must be {p.n}x{p.n}, got {X.shape}")
    return np.trace(X) * np.eye(p.n, dtype=complex) + p.a * np.diag(np.diag(X)) + p.c * X


def coeffs_apply(coeffs: tuple[float, float, float, float], X, dims: Dims) -> np.ndarray:
    """Apply c0 Tr(.)1 + c1 1_A ⊗ Tr_A + c2 Tr_B ⊗ 1_B + c3 I with raw coefficients.

    This is the same linear span as Phi but without the unit normalization
    of the first term, which is needed for degenerate compositions.
    """
    c0, c1, c2, c3 = coeffs
    dA, dB = dims.dA, dims.dB
    X = as_complex(X)
    if X.shape != (dA * dB, dA * dB):
        raise DimensionMismatchError(f"input must be {dA * dB}x{dA * dB}, got {X.shape}")
    trA = partial_trace(X, (dA, dB), keep="second")
    trB = partial_trace(X, (dA, dB), keep="first")
    out = c0 * np.trace(X) * np.eye(dA * dB, dtype=complex)
    out += c1 * kron(np.eye(dA), trA)
    out += c2 * kron(trB, np.eye(dB))
    out += c3 * X
    return out


@lru_cache(maxsize=64)
def _choi_basis(dA: int, dB: int):
    """The four commuting operators spanning all Choi matrices of the family.

    Returned in the ordering AB ⊗ A'B' (primes second): identity,
    1_{AA'}/dA ⊗ P_eps(BB'), P_eps(AA') ⊗ 1_{BB'}/dB, P_eps ⊗ P_eps.
    """
    PA = proj(max_entangled(dA))
    PB = proj(max_entangled(dB))
    D = dA * dB
    grouped = [
        np.eye(D * D, dtype=complex),
        np.kron(np.eye(dA * dA), PB) / dA,
        np.kron(PA, np.eye(dB * dB)) / dB,
        np.kron(PA, PB),
    ]
    # regroup (A A' B B') -> (A B A' B')
    perm = [0, 2, 1, 3]
    sizes = [dA, dA, dB, dB]
    return tuple(permute_systems(g, sizes, perm) for g in grouped)


def choi_from_coeffs(coeffs: tuple[float, float, float, float], dims: Dims) -> np.ndarray:
    """State-normalized Choi matrix of the raw-coefficient map."""
    c0, c1, c2, c3 = coeffs
    T0, T1, T2, T3 = _choi_basis(dims.dA, dims.dB)
    D = dims.total
    return (c0 * T0 / D) + c1 * T1 + c2 * T2 + c3 * T3


def phi_choi(p: PhiParams) -> SuperOp:
    """Choi matrix of Phi[alpha, beta, gamma], ordered AB ⊗ A'B'."""
    choi = choi_from_coeffs((1.0, p.alpha, p.beta, p.gamma), p.dims)
    return SuperOp(choi=choi, dim=p.dims.total, dims=p.dims)


def choi_of_map(apply_fn, d: int, dims: Dims | None = None) -> SuperOp:
    """State-normalized Choi matrix of an arbitrary map given by its action.

    Applies the map to every matrix unit: R = (1/d) sum_ij f(|i><j|) ⊗ |i><j|.
    Slower than the closed forms but independent of them, which makes it
    the reference construction in tests.
    """
    R = np.zeros((d * d, d * d), dtype=complex)
    unit = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit[i, j] = 1.0
            R += np.kron(apply_fn(unit), unit)
            unit[i, j] = 0.0
    return SuperOp(choi=R / d, dim=d, dims=dims)


def chi_choi(p: ChiParams) -> SuperOp:
    """State-normalized Choi matrix of chi[a, c]."""
    return choi_of_map(lambda X: chi_apply(p, X), p.n)


def phi_choi_spectrum(p: PhiParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form Choi eigenvalues and multiplicities.

    The four distinct values are 1/(dA dB), 1/(dA dB) + alpha/dA,
    1/(dA dB) + beta/dB and their joint shift by gamma, with
    multiplicities (dA^2-1)(dB^2-1), dA^2-1, dB^2-1 and 1.
    """
    dA, dB = p.dims.dA, p.dims.dB
    base = 1.0 / (dA * dB)
    vals = np.array(
        [
            base,
            base + p.alpha / dA,
            base + p.beta / dB,
            base + p.alpha / dA + p.beta / dB + p.gamma,
        ]
    )
    mults = np.array([(dA * dA - 1) * (dB * dB - 1), dA * dA - 1, dB * dB - 1, 1])
    return vals, mults


def choi_pt_spectrum(p: PhiParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form spectrum of the Choi matrix partially transposed on A'B'.

    In units of 1/(dA dB) the four values are 1 ± alpha ± beta ± gamma with
    correlated signs; multiplicities come from the symmetric/antisymmetric
    splitting of the two swap operators.
    """
    dA, dB = p.dims.dA, p.dims.dB
    a, b, g = p.alpha, p.beta, p.gamma
    sA, aA = dA * (dA + 1) // 2, dA * (dA - 1) // 2
    sB, aB = dB * (dB + 1) // 2, dB * (dB - 1) // 2
    vals = np.array([1 + a + b + g, 1 + a - b - g, 1 - a + b - g, 1 - a - b + g])
    mults = np.array([sA * sB, aA * sB, sA * aB, aA * aB])
    return vals / (dA * dB), mults


def spectrum_from_multiplicities(vals: np.ndarray, mults: np.ndarray) -> np.ndarray:
    """Expand (values, multiplicities) into a full ascending spectrum."""
    return np.sort(np.repeat(vals, mults))


def apply_one_sided(X, dims: Dims, side: str, u: float, v: float) -> np.ndarray:
    """Apply I ⊗ (u 1Tr + v I) (side "B") or (u 1Tr + v I) ⊗ I (side "A")."""
    dA, dB = dims.dA, dims.dB
    X = as_complex(X)
    if X.shape != (dA * dB, dA * dB):
        raise DimensionMismatchError(f"input must be {dA * dB}x{dA * dB}, got {X.shape}")
    if side == "B":
        trB = partial_trace(X, (dA, dB), keep="first")
        return u * kron(trB, np.eye(dB)) + v * X
    if side == "A":
        trA = partial_trace(X, (dA, dB), keep="second")
        return u * kron(np.eye(dA), trA) + v * X
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


@dataclass(frozen=True)
class LocalComposition:
    """Result of composing Phi with a one-sided map u 1Tr + v I.

    The composition equals ``scale * Phi[params]`` when non-degenerate;
    ``coeffs`` always holds the raw coefficients of the composed map in
    the (Tr 1, 1_A ⊗ Tr_A, Tr_B ⊗ 1_B, I) basis, which remains valid even
    when ``scale`` vanishes (then ``params`` is None and ``degenerate``
    is set).
    """

    scale: float
    params: PhiParams | None
    coeffs: tuple[float, float, float, float]
    degenerate: bool


def compose_local(p: PhiParams, side: str, u: float, v: float, tol: float = 1e-12) -> LocalComposition:
    """Compose Phi with a local map u 1Tr + v I on one side.

    For side "B": (I ⊗ (u 1Tr + v I)) ∘ Phi[alpha, beta, gamma]
    = K Phi[alpha', beta', gamma'] with

        K        = u dB + v + u alpha
        K alpha' = v alpha
        K beta'  = (u dB + v) beta + u gamma
        K gamma' = v gamma

    and symmetrically for side "A".  The family is closed under these
    compositions, which is what reduces entanglement-breaking tests to
    complete-positivity tests of composed parameters.
    """
    a, b, g = p.alpha, p.beta, p.gamma
    dA, dB = p.dims.dA, p.dims.dB
    if side == "B":
        coeffs = (u * (dB + a) + v, v * a, (u * dB + v) * b + u * g, v * g)
    elif side == "A":
        coeffs = (u * (dA + b) + v, (u * dA + v) * a + u * g, v * b, v * g)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    K = coeffs[0]
    if abs(K) <= tol:
        return LocalComposition(scale=0.0, params=None, coeffs=coeffs, degenerate=True)
    params = PhiParams(coeffs[1] / K, coeffs[2] / K, coeffs[3] / K, p.dims)
    return LocalComposition(scale=K, params=params, coeffs=coeffs, degenerate=False)


@dataclass(frozen=True)
class DepolarizingMap:
    """Single-system depolarizing map D_q(X) = q X + (1-q) Tr(X) 1/d."""

    params: DepolParams

    def apply(self, X) -> np.ndarray:
        d, q = self.params.d, self.params.q
        X = as_complex(X)
        if X.shape != (d, d):
            raise DimensionMismatchError(f"input must be {d}x{d}, got {X.shape}")
        return q * X + (1.0 - q) * np.trace(X) * np.eye(d, dtype=complex) / d

    def choi(self) -> SuperOp:
        d, q = self.params.d, self.params.q
        choi = q * proj(max_entangled(d)) + (1.0 - q) * np.eye(d * d, dtype=complex) / (d * d)
        return SuperOp(choi=choi, dim=d)


def depolarizing(p: DepolParams) -> DepolarizingMap:
    return DepolarizingMap(p)


@dataclass(frozen=True)
class LocalProduct:
    """D_{q1} ⊗ D_{q2} expressed inside the Phi family when possible.

    Non-degenerate case (q1, q2 both different from 1, q1 q2 != 0):
    D_{q1} ⊗ D_{q2} = scale * Phi[d q2/(1-q2), d q1/(1-q1),
    d^2 q1 q2 / ((1-q1)(1-q2))] with scale = (1-q1)(1-q2)/d^2.  At the
    degenerate parameter values the product is handled directly and
    ``params`` is None.
    """

    scale: float
    params: PhiParams | None
    degenerate: bool
    q1: float
    q2: float
    d: int

    def apply(self, X) -> np.ndarray:
        """Apply D_{q1} ⊗ D_{q2} directly (valid for every q1, q2)."""
        d, q1, q2 = self.d, self.q1, self.q2
        dims = Dims(d, d)
        X = as_complex(X)
        if X.shape != (d * d, d * d):
            raise DimensionMismatchError(f"input must be {d * d}x{d * d}, got {X.shape}")
        trA = partial_trace(X, (d, d), keep="second")
        trB = partial_trace(X, (d, d), keep="first")
        out = q1 * q2 * X
        out += q1 * (1 - q2) / d * kron(trB, np.eye(d))
        out += (1 - q1) * q2 / d * kron(np.eye(d), trA)
        out += (1 - q1) * (1 - q2) / (d * d) * np.trace(X) * np.eye(d * d, dtype=complex)
        return out


def local_product_as_phi(q1: float, q2: float, d: int) -> LocalProduct:
    """Express a product of local depolarizing maps inside the Phi family.

    Returns a degenerate-flagged result when q1 or q2 equals 1 or when
    q1 q2 = 0; those points are served by the direct ``apply`` path
    instead of the interior-point formula.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if q1 == 1.0 or q2 == 1.0 or q1 * q2 == 0.0:
        return LocalProduct(scale=0.0, params=None, degenerate=True, q1=q1, q2=q2, d=d)
    scale = (1 - q1) * (1 - q2) / (d * d)
    params = PhiParams(
        d * q2 / (1 - q2),
        d * q1 / (1 - q1),
        d * d * q1 * q2 / ((1 - q1) * (1 - q2)),
        Dims(d, d),
    )
    return LocalProduct(scale=scale, params=params, degenerate=False, q1=q1, q2=q2, d=d)


@dataclass(frozen=True)
class HadamardChannel:
    """Entrywise-multiplication channel zeta_A(X) = A ∘ X in the canonical basis."""

    matrix: np.ndarray

    def apply(self, X) -> np.ndarray:
        X = as_complex(X)
        if X.shape != self.matrix.shape:
            raise DimensionMismatchError(
                f"input shape {X.shape} does not match channel matrix {self.matrix.shape}"
            )
        return self.matrix * X

    def choi(self) -> SuperOp:
        d = self.matrix.shape[0]
        choi = np.zeros((d * d, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                choi[i * d + i, j * d + j] = self.matrix[i, j] / d
        return SuperOp(choi=choi, dim=d)


def hadamard_channel(A, psd_tol: float = 1e-10) -> HadamardChannel:
    """Build the Hadamard channel for A; warns when A is not PSD.

    Complete positivity of the channel holds exactly when A is positive
    semidefinite (Schur product theorem), so non-PSD inputs are allowed
    but flagged.
    """
    A = as_complex(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"A must be square, got {A.shape}")
    try:
        low = min_eig(A)
    except ValueError:
        low = -np.inf
    if low < -psd_tol * max(1.0, float(np.abs(A).max())):
        warnings.warn(
            f"Hadamard channel matrix is not PSD (min eigenvalue {low:.3e}); "
            "the channel is not completely positive",
            stacklevel=2,
        )
    return HadamardChannel(matrix=A)
