"""Truncated Bargmann-Fock spaces and their canonical operators.

The fiber model is the space of holomorphic polynomials in ``n`` complex
variables with the Gaussian inner product ``<f, g> = pi^-n int conj(f) g
exp(-|z|^2) dz``, truncated to total degree at most ``N``.  The monomial
basis ``z^k / sqrt(k!)`` is orthonormal; we order it by total degree first,
then lexicographically in the exponent tuple.  This ordering is frozen:
all matrices produced here are reproducible bit-for-bit, and the leading
``binomial(M+n, n)`` basis vectors of a degree-``N`` truncation with
``M <= N`` are exactly the degree-``M`` truncation.

Conjugation is realized entrywise in this basis (the basis corresponds to
real-valued Hermite functions), so the transpose involution ``P -> CP*C``
is the plain matrix transpose with no conjugation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

__all__ = [
    "FockTruncation",
    "FockOperator",
    "build_truncation",
    "creation",
    "annihilation",
    "number_operator",
    "vacuum_projector",
    "identity",
    "transpose_dagger",
    "pad_entries",
]

_MAX_DIM = 4096  # dense desk-scale guard


def _basis_indices(n: int, N: int) -> tuple[tuple[int, ...], ...]:
    """Multi-indices k with |k| <= N, ordered by (|k|, lexicographic)."""
    out: list[tuple[int, ...]] = []
    for deg in range(N + 1):
        # exponent tuples of total degree `deg`, lexicographically increasing
        level = []
        for combo in combinations_with_replacement(range(n), deg):
            k = [0] * n
            for axis in combo:
                k[axis] += 1
            level.append(tuple(k))
        out.extend(sorted(level))
    return tuple(out)


@dataclass(frozen=True)
class FockTruncation:
    """Degree-truncated Fock space: n complex fiber dimensions, degrees <= N."""

    n: int
    N: int
    basis: tuple[tuple[int, ...], ...] = field(repr=False)
    index: dict[tuple[int, ...], int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_dim(self, M: int) -> int:
        """Dimension of the sub-block spanned by degrees <= M."""
        if M < 0:
            return 0
        return math.comb(min(M, self.N) + self.n, self.n)


def build_truncation(n: int, N: int) -> FockTruncation:
    """Build the truncation with ``dim = binomial(N+n, n)``.

    Parameters
    ----------
    n : int
        Complex fiber dimension (contact rank 2n).  Must be >= 1.
    N : int
        Maximal total symmetric degree kept.  Must be >= 0.
    """
    if n < 1:
        raise ValueError(f"fiber dimension must be >= 1, got n={n}")
    if N < 0:
        raise ValueError(f"truncation degree must be >= 0, got N={N}")
    dim = math.comb(N + n, n)
    if dim > _MAX_DIM:
        raise ValueError(f"truncation dimension {dim} exceeds desk-scale cap {_MAX_DIM}")
    basis = _basis_indices(n, N)
    assert len(basis) == dim
    return FockTruncation(n=n, N=N, basis=basis, index={k: i for i, k in enumerate(basis)})


@dataclass(frozen=True)
class FockOperator:
    """A dense matrix on a truncated Fock space, in the frozen number basis."""

    trunc: FockTruncation
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.trunc.dim, self.trunc.dim):
            raise ValueError(
                f"entries shape {m.shape} does not match truncation dim {self.trunc.dim}"
            )
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("entries contain NaN/Inf")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.trunc.dim


def _ladder(trunc: FockTruncation, j: int, raise_degree: bool) -> np.ndarray:
    if not 1 <= j <= trunc.n:
        raise ValueError(f"axis index must satisfy 1 <= j <= {trunc.n}, got {j}")
    a = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    axis = j - 1
    for col, k in enumerate(trunc.basis):
        if raise_degree:
            target = list(k)
            target[axis] += 1
            row = trunc.index.get(tuple(target))
            if row is not None:  # otherwise the image leaves the truncation
                a[row, col] = math.sqrt(k[axis] + 1)
        else:
            if k[axis] > 0:
                target = list(k)
                target[axis] -= 1
                a[trunc.index[tuple(target)], col] = math.sqrt(k[axis])
    return a


def creation(trunc: FockTruncation, j: int = 1) -> FockOperator:
    """Multiplication by z_j: e_k -> sqrt(k_j + 1) e_{k+delta_j}, clipped at degree N."""
    return FockOperator(trunc, _ladder(trunc, j, raise_degree=True))


def annihilation(trunc: FockTruncation, j: int = 1) -> FockOperator:
    """d/dz_j, the adjoint of :func:`creation`: e_k -> sqrt(k_j) e_{k-delta_j}."""
    return FockOperator(trunc, _ladder(trunc, j, raise_degree=False))


def number_operator(trunc: FockTruncation) -> FockOperator:
    """Total degree operator, diagonal with entries |k|."""
    diag = np.array([sum(k) for k in trunc.basis], dtype=complex)
    return FockOperator(trunc, np.diag(diag))


def vacuum_projector(trunc: FockTruncation) -> FockOperator:
    """Rank-one orthogonal projector onto the vacuum vector e_0."""
    s = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    s[0, 0] = 1.0
    return FockOperator(trunc, s)


def identity(trunc: FockTruncation) -> FockOperator:
    return FockOperator(trunc, np.eye(trunc.dim, dtype=complex))


def transpose_dagger(op: FockOperator) -> FockOperator:
    """Entrywise transpose, no conjugation: the involution P -> CP*C.

    Complex-linear, involutive, and anti-multiplicative.  In the number
    basis it swaps each ladder operator with its adjoint and negates the
    Fredholm index of stabilized operator families.
    """
    return FockOperator(op.trunc, op.entries.T.copy())


def pad_entries(entries: np.ndarray, dim: int) -> np.ndarray:
    """Zero-pad a square matrix into the leading block of a dim x dim matrix.

    Because the basis ordering is degree-first, padding realizes the same
    finite-rank correction at a larger truncation order.
    """
    d = entries.shape[0]
    if d > dim:
        raise ValueError(f"cannot pad a {d}-dim matrix into dim {dim}")
    out = np.zeros((dim, dim), dtype=complex)
    out[:d, :d] = entries
    return out
