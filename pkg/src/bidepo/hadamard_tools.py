"""Hadamard (Schur) product machinery for states and maps.

The entrywise product is always taken in the canonical product basis.
Its three headline features implemented here: a bipartite Hadamard
product of states is realized stochastically by local projections on a
doubled system; entrywise multiplication of Choi matrices preserves
complete copositivity; and Schmidt ranks multiply, with saturation
witnessed by Vandermonde-structured states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .map_family import SuperOp
from .tensor_core import DimensionMismatchError, as_complex, kron


def locc_hadamard(rho, sigma, dims: tuple[int, int]) -> np.ndarray:
    """Entrywise product of two states via the doubled-space projection.

    Builds rho ⊗ sigma on (A B)(A' B'), applies the local projectors
    Pi0 = sum_i |ii><ii| on AA' and on BB', and compresses through the
    isometry |ii> -> |i| on each doubled side.  The result equals the
    entrywise product rho ∘ sigma; its trace is at most one for states,
    reflecting the stochastic (postselected) implementation.
    """
    dA, dB = dims
    rho, sigma = as_complex(rho), as_complex(sigma)
    D = dA * dB
    for M in (rho, sigma):
        if M.shape != (D, D):
            raise DimensionMismatchError(f"states must be {D}x{D}, got {M.shape}")
    big = kron(rho, sigma)  # ordering A B A' B'
    # Diagonal-pair index of (i, j, i, j) in the flattened A B A' B' space.
    sel = np.array([((i * dB + j) * dA + i) * dB + j for i in range(dA) for j in range(dB)])
    return np.ascontiguousarray(big[np.ix_(sel, sel)])


def cocp_hadamard_product(phi1: SuperOp, phi2: SuperOp) -> SuperOp:
    """Hadamard product of two maps, defined on their Choi matrices.

    The Choi matrices are multiplied entrywise in the canonical basis.
    Partial transposition acts entrywise-compatibly, so the product of
    two completely copositive maps is completely copositive (the partial
    transposes multiply entrywise and the Schur product of PSD matrices
    is PSD).
    """
    if phi1.dim != phi2.dim:
        raise DimensionMismatchError(
            f"maps act on different dimensions: {phi1.dim} vs {phi2.dim}"
        )
    dims = phi1.dims if phi1.dims == phi2.dims else None
    return SuperOp(choi=phi1.choi * phi2.choi, dim=phi1.dim, dims=dims)


def schmidt_rank(v, dims: tuple[int, int], tol: float = 1e-8) -> int:
    """Number of Schmidt coefficients above ``tol`` relative to the largest."""
    d1, d2 = dims
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != d1 * d2:
        raise DimensionMismatchError(f"vector length {v.size} != {d1} * {d2}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"input vector must be normalized, |v| = {nrm}")
    s = np.linalg.svd(v.reshape(d1, d2), compute_uv=False)
    return int(np.count_nonzero(s > tol * s[0]))


@dataclass(frozen=True)
class VandermondeSpec:
    """Construction data for Schmidt-rank-saturating state pairs.

    ``n`` is the local dimension, ``r`` and ``s`` the target Schmidt
    ranks, and ``N`` the root-of-unity order (defaults to max(n, r s),
    the smallest admissible choice).
    """

    n: int
    r: int
    s: int
    N: int | None = None

    def __post_init__(self):
        if not (1 <= self.r <= self.n and 1 <= self.s <= self.n):
            raise ValueError(f"need 1 <= r, s <= n, got r={self.r}, s={self.s}, n={self.n}")
        if self.N is not None and self.N < max(self.n, self.r * self.s):
            raise ValueError(f"N must be >= max(n, r*s) = {max(self.n, self.r * self.s)}")

    @property
    def order(self) -> int:
        return self.N if self.N is not None else max(self.n, self.r * self.s)


def vandermonde_states(spec: VandermondeSpec) -> tuple[np.ndarray, np.ndarray]:
    """Normalized pure states (psi, phi) on n ⊗ n with Schmidt ranks (r, s)
    whose entrywise product has Schmidt rank min(n, r s).

    With omega = exp(2 pi i / N), psi sums |a_i>|a_i*> over the local
    vectors a_i = sum_l omega^{i l} |l> for i < r, and phi does the same
    with generators omega^{j r} for j < s.  Entrywise products of the
    local vectors are again geometric sequences with rs distinct
    generators, so the product rank follows from the rank of a
    Vandermonde matrix.
    """
    n, r, s, N = spec.n, spec.r, spec.s, spec.order
    omega = np.exp(2j * np.pi / N)
    ls = np.arange(n)

    def pair_state(generators: np.ndarray) -> np.ndarray:
        out = np.zeros(n * n, dtype=complex)
        for gexp in generators:
            local = omega ** (gexp * ls)
            out += np.kron(local, local.conj())
        return out / np.linalg.norm(out)

    psi = pair_state(np.arange(r))
    phi = pair_state(r * np.arange(s))
    return psi, phi


def hadamard_vector_product(psi, phi, normalize: bool = True) -> np.ndarray:
    """Entrywise product of two state vectors (|psi><psi| ∘ |phi><phi| is
    the projector onto this vector)."""
    psi = np.asarray(psi, dtype=complex).ravel()
    phi = np.asarray(phi, dtype=complex).ravel()
    if psi.size != phi.size:
        raise DimensionMismatchError("vectors must have equal length")
    out = psi * phi
    if normalize:
        nrm = np.linalg.norm(out)
        if nrm == 0:
            raise ValueError("entrywise product vanishes; cannot normalize")
        out = out / nrm
    return out


def geometric_inequality_slack(z) -> float:
    """Slack of sum |z_i|^2 <= ((sum |z_i|)^2 + |sum z_i|^2) / 2."""
    z = np.asarray(z, dtype=complex).ravel()
    lhs = float(np.sum(np.abs(z) ** 2))
    rhs = 0.5 * (float(np.sum(np.abs(z))) ** 2 + abs(np.sum(z)) ** 2)
    return rhs - lhs
