"""Dense complex vector and operator arithmetic for finite-dimensional state spaces.

States are unit-norm 1-D complex arrays, density operators and projectors are
square complex arrays. All sampling goes through an explicit numpy Generator
(PCG64 bit generator) so that every randomized run is reproducible from its
seed alone.
"""

from __future__ import annotations

import numpy as np

# Full tensor representations are capped at this total dimension; larger
# spaces must be handled in reduced coordinates by the caller.
DIM_CAP = 2**20

# Bit generator behind make_rng, fixed so that stored seeds stay meaningful.
RNG_ALGORITHM = "pcg64"

DEFAULT_ATOL = 1e-9

__all__ = [
    "DIM_CAP",
    "RNG_ALGORITHM",
    "DEFAULT_ATOL",
    "SizeCapExceeded",
    "DegeneratePairError",
    "make_rng",
    "basis_state",
    "as_state",
    "check_density",
    "check_projector",
    "inner_product",
    "projector_onto",
    "tensor_product",
    "tensor_power",
    "gram_schmidt_pair",
    "partial_trace",
    "matrix_sqrt_psd",
    "random_state",
    "random_unitary",
    "random_projector",
    "random_density",
]


class SizeCapExceeded(ValueError):
    """A requested tensor dimension exceeds DIM_CAP."""


class DegeneratePairError(ValueError):
    """The operation is undefined for collinear state pairs."""


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator; identical seeds yield identical sample streams."""
    return np.random.Generator(np.random.PCG64(seed))


def basis_state(index: int, dim: int) -> np.ndarray:
    """Computational basis vector |index> in a dim-dimensional space."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return vec


def as_state(amplitudes, atol: float = DEFAULT_ATOL) -> np.ndarray:
    """Coerce input to a complex 1-D array and enforce the unit-norm contract."""
    vec = np.asarray(amplitudes, dtype=np.complex128)
    if vec.ndim != 1 or vec.size < 1:
        raise ValueError("a state must be a nonempty 1-D array of amplitudes")
    nrm = float(np.linalg.norm(vec))
    if abs(nrm - 1.0) > atol:
        raise ValueError(f"state norm {nrm!r} deviates from 1 beyond {atol}")
    return vec


def check_density(matrix, atol: float = DEFAULT_ATOL) -> np.ndarray:
    """Validate a density operator: Hermitian, unit trace, positive semidefinite."""
    rho = np.asarray(matrix, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("a density operator must be a square matrix")
    if float(np.max(np.abs(rho - rho.conj().T))) > atol:
        raise ValueError("density operator is not Hermitian within tolerance")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > atol:
        raise ValueError(f"density operator trace {trace!r} deviates from 1")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -atol:
        raise ValueError(f"density operator has negative eigenvalue {smallest!r}")
    return rho


def check_projector(matrix, atol: float = DEFAULT_ATOL) -> np.ndarray:
    """Validate an orthogonal projector: Hermitian and idempotent."""
    proj = np.asarray(matrix, dtype=np.complex128)
    if proj.ndim != 2 or proj.shape[0] != proj.shape[1]:
        raise ValueError("a projector must be a square matrix")
    if float(np.max(np.abs(proj - proj.conj().T))) > atol:
        raise ValueError("projector is not Hermitian within tolerance")
    if float(np.max(np.abs(proj @ proj - proj))) > atol:
        raise ValueError("projector is not idempotent within tolerance")
    return proj


def inner_product(a, b) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def projector_onto(state) -> np.ndarray:
    """Rank-1 projector |state><state|."""
    vec = as_state(state)
    return np.outer(vec, vec.conj())


def _capped_size(size_a: int, size_b: int) -> int:
    total = int(size_a) * int(size_b)
    if total > DIM_CAP:
        raise SizeCapExceeded(
            f"tensor dimension {total} exceeds the cap {DIM_CAP}"
        )
    return total


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two state vectors, capped at DIM_CAP amplitudes."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("tensor_product expects 1-D state vectors")
    _capped_size(a.size, b.size)
    return np.kron(a, b)


def tensor_power(state, n: int) -> np.ndarray:
    """n-fold Kronecker power state^(x n), capped at DIM_CAP amplitudes."""
    vec = np.asarray(state, dtype=np.complex128)
    if vec.ndim != 1:
        raise ValueError("tensor_power expects a 1-D state vector")
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"tensor power requires a positive integer, got {n!r}")
    size = 1
    for _ in range(int(n)):
        size = _capped_size(size, vec.size)
    out = vec
    for _ in range(int(n) - 1):
        out = np.kron(out, vec)
    return out


def gram_schmidt_pair(v1, v2, atol: float = DEFAULT_ATOL):
    """Orthonormal frame (e1, e2) of span{v1, v2} with e1 = v1.

    The orientation is fixed so that the coefficient of v2 along e2 is real
    and strictly positive. Raises DegeneratePairError for collinear inputs.
    """
    e1 = as_state(v1, atol)
    v2 = as_state(v2, atol)
    if e1.size != v2.size:
        raise ValueError("gram_schmidt_pair requires equal dimensions")
    overlap = np.vdot(e1, v2)
    if abs(overlap) >= 1.0 - 1e-12:
        raise DegeneratePairError(
            f"inputs are collinear within tolerance (|overlap| = {abs(overlap)!r})"
        )
    residual = v2 - overlap * e1
    coeff = float(np.linalg.norm(residual))
    e2 = residual / coeff
    return e1.copy(), e2


def partial_trace(rho, dims, keep: str) -> np.ndarray:
    """Partial trace of a bipartite operator.

    Args:
        rho: operator on the tensor product space, shape (dA*dB, dA*dB).
        dims: pair (dA, dB) of subsystem dimensions.
        keep: "A" to trace out the second factor, "B" to trace out the first.
    """
    dim_a, dim_b = int(dims[0]), int(dims[1])
    rho = np.asarray(rho, dtype=np.complex128)
    expected = dim_a * dim_b
    if rho.shape != (expected, expected):
        raise ValueError(
            f"operator shape {rho.shape} does not match dims {dim_a}x{dim_b}"
        )
    four = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    label = str(keep).upper()
    if label == "A":
        return np.einsum("ijkj->ik", four)
    if label == "B":
        return np.einsum("ijil->jl", four)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def matrix_sqrt_psd(matrix, atol: float = DEFAULT_ATOL) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in [-atol, 0) are clamped to zero; anything below -atol is a
    contract violation and raises. Non-Hermitian input raises as well.
    """
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix_sqrt_psd expects a square matrix")
    if float(np.max(np.abs(mat - mat.conj().T))) > atol:
        raise ValueError("matrix_sqrt_psd requires a Hermitian matrix")
    vals, vecs = np.linalg.eigh(mat)
    if float(vals[0]) < -atol:
        raise ValueError(
            f"matrix has eigenvalue {float(vals[0])!r} below -{atol}"
        )
    vals = np.clip(vals, 0.0, None)
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state: normalized standard complex Gaussian vector."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase correction.

    The R factor's diagonal phases are absorbed into Q so that the implied R
    has a positive diagonal, which makes the distribution exactly Haar.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    gin = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gin)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_projector(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random orthogonal projector of the given rank.

    Orthonormalizes rank Ginibre columns (thin QR with the same positive
    diagonal phase correction as random_unitary); the span is distributed
    exactly as the first rank columns of a Haar unitary.
    """
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must satisfy 1 <= rank <= {dim}, got {rank}")
    gin = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    q, r = np.linalg.qr(gin)
    diag = np.diagonal(r)
    cols = q * (diag / np.abs(diag))
    proj = cols @ cols.conj().T
    return 0.5 * (proj + proj.conj().T)


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density operator from a normalized Ginibre product."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    gin = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = gin @ gin.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)
