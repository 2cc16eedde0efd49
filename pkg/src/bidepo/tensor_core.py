"""Dense complex linear-algebra primitives shared by the whole package.

Index convention
----------------
A bipartite system with local dimensions (d1, d2) is flattened row-major:
the product basis vector |i>|k> sits at composite index ``i * d2 + k``.
This is the numpy ``kron`` convention and it is used everywhere; no other
ordering appears in the package.

All operators are plain ``numpy.ndarray`` of complex128.  Randomness is
always driven by an explicit ``numpy.random.Generator`` (or an integer
seed converted with :func:`as_rng`); no function touches global RNG state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

#: Largest matrix dimension any constructor is allowed to produce.
DIM_CAP = 4096

#: Relative tolerance for accepting a matrix as Hermitian.
HERM_RTOL = 1e-10


class DimensionMismatchError(ValueError):
    """Operator shape does not match the declared subsystem dimensions."""


class ResourceLimitError(RuntimeError):
    """A constructed operator would exceed the configured dimension cap."""


@dataclass(frozen=True)
class Dims:
    """Local dimensions of a bipartite system; ``n`` is min(dA, dB)."""

    dA: int
    dB: int

    def __post_init__(self):
        if self.dA < 2 or self.dB < 2:
            raise ValueError(f"local dimensions must be >= 2, got ({self.dA}, {self.dB})")

    @property
    def n(self) -> int:
        return min(self.dA, self.dB)

    @property
    def total(self) -> int:
        return self.dA * self.dB


def as_rng(seed) -> np.random.Generator:
    """Coerce an int seed (or pass through a Generator) to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def as_complex(M) -> np.ndarray:
    """View input as a complex128 2-D array without copying when possible."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got ndim={A.ndim}")
    return A


def kron(A, B) -> np.ndarray:
    """Tensor product with the (i,k),(j,l) -> (i*d2+k, j*d2+l) convention."""
    A, B = as_complex(A), as_complex(B)
    if A.shape[0] * B.shape[0] > DIM_CAP or A.shape[1] * B.shape[1] > DIM_CAP:
        raise ResourceLimitError(
            f"kron result {A.shape[0] * B.shape[0]} exceeds dimension cap {DIM_CAP}"
        )
    return np.kron(A, B)


def kron_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    """Left-to-right tensor product of a sequence of matrices."""
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = kron(out, m)
    return out


def _check_square(M: np.ndarray, size: int, what: str = "matrix"):
    if M.shape != (size, size):
        raise DimensionMismatchError(f"{what} must be {size}x{size}, got {M.shape}")


def is_hermitian(M, rtol: float = HERM_RTOL) -> bool:
    M = as_complex(M)
    scale = max(np.abs(M).max(), 1e-300)
    return bool(np.abs(M - M.conj().T).max() <= rtol * scale)


def herm_spectrum(M, rtol: float = HERM_RTOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    The input is symmetrized as (M + M†)/2 before diagonalization; inputs
    that deviate from Hermiticity by more than ``rtol`` (relative to the
    largest entry) are rejected.
    """
    M = as_complex(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"expected square matrix, got {M.shape}")
    if not is_hermitian(M, rtol):
        raise ValueError("matrix is not Hermitian within tolerance")
    H = (M + M.conj().T) / 2.0
    if not H.imag.any():  # exactly real symmetric: the real solver is ~3x faster
        return np.linalg.eigvalsh(H.real)
    return np.linalg.eigvalsh(H)


def min_eig(M) -> float:
    """Smallest eigenvalue of a (numerically) Hermitian matrix."""
    return float(herm_spectrum(M)[0])


def permute_systems(M, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square operator.

    ``dims`` lists the current subsystem sizes; ``perm`` lists which old
    factor lands at each new position (new factor j = old factor perm[j]).
    """
    M = as_complex(M)
    dims = list(dims)
    k = len(dims)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"perm must be a permutation of 0..{k - 1}, got {perm}")
    D = int(np.prod(dims))
    _check_square(M, D)
    t = M.reshape(dims + dims)
    t = t.transpose(list(perm) + [p + k for p in perm])
    return np.ascontiguousarray(t.reshape(D, D))


def partial_transpose(M, dims: tuple[int, int], side: str = "second") -> np.ndarray:
    """Transpose one tensor factor of a bipartite operator.

    ``side`` selects which factor is transposed ("first" or "second").
    The operation is an involution and preserves Hermiticity and trace.
    """
    d1, d2 = dims
    M = as_complex(M)
    _check_square(M, d1 * d2)
    t = M.reshape(d1, d2, d1, d2)
    if side == "second":
        t = t.transpose(0, 3, 2, 1)
    elif side == "first":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    return np.ascontiguousarray(t.reshape(d1 * d2, d1 * d2))


def partial_trace(M, dims: tuple[int, int], keep: str = "first") -> np.ndarray:
    """Trace out one tensor factor, keeping the other."""
    d1, d2 = dims
    M = as_complex(M)
    _check_square(M, d1 * d2)
    t = M.reshape(d1, d2, d1, d2)
    if keep == "first":
        return np.ascontiguousarray(np.einsum("abcb->ac", t))
    if keep == "second":
        return np.ascontiguousarray(np.einsum("abad->bd", t))
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")


def max_entangled(d: int) -> np.ndarray:
    """The maximally entangled vector (1/sqrt(d)) sum_i |ii> on d x d."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0
    return v / np.sqrt(d)


def embedded_max_entangled(dA: int, dB: int) -> np.ndarray:
    """(1/sqrt(m)) sum_{i<m} |ii> on dA x dB with m = min(dA, dB)."""
    m = min(dA, dB)
    v = np.zeros(dA * dB, dtype=complex)
    for i in range(m):
        v[i * dB + i] = 1.0
    return v / np.sqrt(m)


def proj(v) -> np.ndarray:
    """Rank-one projector |v><v| (input need not be normalized)."""
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def swap_operator(d: int) -> np.ndarray:
    """The swap S = sum_ij |ij><ji| on a d x d bipartite space."""
    S = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            S[i * d + j, j * d + i] = 1.0
    return S


class Schmidt(NamedTuple):
    """Schmidt data of a bipartite vector: v = sum_i sqrt(coeffs[i]) a_i ⊗ b_i."""

    coeffs: np.ndarray  # squared Schmidt coefficients, descending, sum == 1
    left: np.ndarray    # columns a_i, orthonormal on the first factor
    right: np.ndarray   # columns b_i, orthonormal on the second factor


def schmidt(v, dims: tuple[int, int], norm_tol: float = 1e-12) -> Schmidt:
    """Schmidt decomposition of a unit vector on d1 x d2.

    Squared coefficients are returned in descending order.  Phases are
    canonicalized so the first nonzero entry of each left vector is real
    and positive, which makes the decomposition reproducible.
    """
    d1, d2 = dims
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != d1 * d2:
        raise DimensionMismatchError(f"vector length {v.size} != {d1} * {d2}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > norm_tol:
        raise ValueError(f"input vector must be normalized, |v| = {nrm}")
    U, s, Vh = np.linalg.svd(v.reshape(d1, d2))
    k = min(d1, d2)
    left = U[:, :k].copy()
    right = Vh[:k, :].T.copy()  # columns b_i with components Vh[i, :]
    for i in range(k):
        col = left[:, i]
        nz = np.flatnonzero(np.abs(col) > 1e-14)
        if nz.size:
            phase = col[nz[0]] / abs(col[nz[0]])
            left[:, i] = col / phase
            right[:, i] = right[:, i] * phase
    lam = s[:k] ** 2
    lam = lam / lam.sum()
    return Schmidt(lam, left, right)


def random_pure(dim: int, seed) -> np.ndarray:
    """Haar-random unit vector: normalized i.i.d. standard complex Gaussians."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    rng = as_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    rng = as_rng(seed)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def check_prob_vector(lam, tol: float = 1e-12) -> np.ndarray:
    """Validate a probability vector (nonnegative, sums to one)."""
    lam = np.asarray(lam, dtype=float).ravel()
    if lam.min() < -tol:
        raise ValueError(f"negative entry in probability vector: {lam.min()}")
    if abs(lam.sum() - 1.0) > tol:
        raise ValueError(f"probability vector sums to {lam.sum()}, not 1")
    return np.clip(lam, 0.0, None)
