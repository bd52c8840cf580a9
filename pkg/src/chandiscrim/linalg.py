"""Dense complex linear algebra for small quantum systems.

Everything here works on plain ``numpy`` arrays of ``complex128``. Matrices
are row-major and never exceed a few dozen rows (bipartite systems up to
local dimension 6), so clarity and numerical robustness win over asymptotic
cleverness.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Absolute entrywise tolerances for structural checks.
HERMITIAN_ATOL = 1e-10
UNITARY_ATOL = 1e-10

# Off-diagonal residual accepted when diagonalizing a unitary.
_UNITARY_DIAG_RESIDUAL = 1e-8
_UNITARY_DIAG_ATTEMPTS = 8


class EigenDecomposition(NamedTuple):
    """Spectrum of a Hermitian matrix, eigenvalues sorted descending."""

    values: np.ndarray   # real, shape (d,), descending
    vectors: np.ndarray  # unitary, column k pairs with values[k]


def as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex(a).conj().T


def hermiticity_defect(a) -> float:
    """Largest entrywise deviation of ``a`` from its own adjoint."""
    a = as_complex(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(a, atol: float = HERMITIAN_ATOL) -> bool:
    return hermiticity_defect(a) <= atol


def unitarity_defect(u) -> float:
    """Largest entrywise deviation of ``u†u`` from the identity."""
    u = as_complex(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))))


def is_unitary(u, atol: float = UNITARY_ATOL) -> bool:
    u = as_complex(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return unitarity_defect(u) <= atol


def ket(dim: int, index: int) -> np.ndarray:
    """Computational basis vector |index> in dimension ``dim``."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(vec) -> np.ndarray:
    """Rank-one projector |v><v| for a (not necessarily normalized) vector."""
    v = as_complex(vec).reshape(-1)
    return np.outer(v, v.conj())


def tensor(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_complex(a), as_complex(b))


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on C^dim_a (x) C^dim_b.

    ``keep`` selects the surviving subsystem, "A" or "B". The input must be
    square of size dim_a*dim_b; the full trace is preserved.
    """
    m = as_complex(m)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ValueError(
            f"partial_trace expects a {n}x{n} matrix for dims ({dim_a},{dim_b}), "
            f"got {m.shape}"
        )
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    tag = keep.upper()
    if tag == "A":
        return np.einsum("abcb->ac", t)
    if tag == "B":
        return np.einsum("abac->bc", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def hermitian_eig(a) -> EigenDecomposition:
    """Full spectrum of a Hermitian matrix, eigenvalues descending.

    The input is required to be Hermitian within ``HERMITIAN_ATOL`` and is
    symmetrized as (A + A†)/2 before solving to absorb roundoff.
    """
    a = as_complex(a)
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_ATOL:
        raise ValueError(
            f"matrix is not Hermitian: max|A - A†| = {defect:.3e} "
            f"exceeds {HERMITIAN_ATOL:.0e}"
        )
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return EigenDecomposition(values=w[::-1].copy(), vectors=v[:, ::-1].copy())


def trace_norm_hermitian(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eig(a).values).sum())


def unitary_eigenphases(u, seed: int = 0) -> list[tuple[float, np.ndarray]]:
    """Eigenphases and orthonormal eigenvectors of a unitary matrix.

    Returns ``[(theta_0, v_0), ...]`` with phases in [0, 2*pi), sorted
    ascending, such that ``u @ v_k == exp(1j*theta_k) * v_k``.

    A unitary is normal, so it shares an eigenbasis with the Hermitian
    combination cos(a)(U+U†)/2 + sin(a)(U-U†)/(2i). We diagonalize that
    combination for a randomly drawn angle ``a`` and keep the basis if it
    diagonalizes U itself; a degenerate draw (two distinct eigenphases
    collapsing onto one eigenvalue of the combination) is retried with a
    fresh angle.
    """
    u = as_complex(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary_eigenphases expects a square matrix, got {u.shape}")
    defect = unitarity_defect(u)
    if defect > UNITARY_ATOL:
        raise ValueError(
            f"matrix is not unitary: max|U†U - I| = {defect:.3e} "
            f"exceeds {UNITARY_ATOL:.0e}"
        )
    rng = np.random.default_rng(seed)
    re = (u + u.conj().T) / 2.0
    im = (u - u.conj().T) / 2.0j
    for _ in range(_UNITARY_DIAG_ATTEMPTS):
        alpha = rng.uniform(0.0, 2.0 * np.pi)
        h = np.cos(alpha) * re + np.sin(alpha) * im
        _, v = np.linalg.eigh(h)
        d = v.conj().T @ u @ v
        if np.max(np.abs(d - np.diag(np.diagonal(d)))) < _UNITARY_DIAG_RESIDUAL:
            phases = np.mod(np.angle(np.diagonal(d)), 2.0 * np.pi)
            order = np.argsort(phases)
            return [(float(phases[k]), v[:, k].copy()) for k in order]
    raise ValueError(
        f"failed to resolve a common eigenbasis for the unitary after "
        f"{_UNITARY_DIAG_ATTEMPTS} attempts"
    )


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    # Fix the gauge so the distribution is exactly Haar.
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def to_pairs(a) -> list:
    """Encode a complex vector or matrix as nested [re, im] pairs (row-major)."""
    a = as_complex(a)
    if a.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in a]
    if a.ndim == 2:
        return [[[float(z.real), float(z.imag)] for z in row] for row in a]
    raise ValueError(f"expected a vector or matrix, got ndim={a.ndim}")


def from_pairs(data) -> np.ndarray:
    """Decode nested [re, im] pairs into a complex vector or matrix."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 2 and arr.shape[-1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[:, :, 0] + 1j * arr[:, :, 1]
    raise ValueError(
        "expected nested [re, im] pairs encoding a vector or matrix, "
        f"got array of shape {arr.shape}"
    )
