import math

import numpy as np
import pytest

from exheis import fock


def gaussian_moment_ladder(trunc, j):
    """Oracle: matrix elements <e_b, z_j e_a> from the Gaussian-measure integrals.

    <z^b, z_j z^a> = delta_{b, a+d_j} * (a+d_j)!  against the normalization
    sqrt(a! b!), all evaluated with exact integer factorials.
    """
    dim = trunc.dim
    m = np.zeros((dim, dim), dtype=complex)
    for col, a in enumerate(trunc.basis):
        target = list(a)
        target[j - 1] += 1
        row = trunc.index.get(tuple(target))
        if row is None:
            continue
        b = tuple(target)
        num = math.prod(math.factorial(x) for x in b)
        den = math.sqrt(
            math.prod(math.factorial(x) for x in a) * math.prod(math.factorial(x) for x in b)
        )
        m[row, col] = num / den
    return m


def test_dimension_formula_exact():
    for n in (1, 2, 3):
        for N in range(13):
            t = fock.build_truncation(n, N)
            assert t.dim == math.comb(N + n, n)


def test_basis_ordering_frozen():
    t = fock.build_truncation(2, 3)
    assert t.dim == 10  # count of multi-indices |k| <= 3 by enumeration
    assert t.basis[:6] == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    # degree-first ordering makes sub-truncations prefixes
    s = fock.build_truncation(2, 2)
    assert t.basis[: s.dim] == s.basis


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        fock.build_truncation(0, 4)
    with pytest.raises(ValueError):
        fock.build_truncation(1, -1)
    with pytest.raises(ValueError):
        fock.build_truncation(3, 200)  # dimension overflow


def test_trivial_dims():
    assert fock.build_truncation(1, 0).dim == 1
    assert fock.build_truncation(1, 5).dim == 6


def test_ladder_matches_gaussian_moment_oracle():
    for n, N in ((1, 6), (2, 4), (3, 3)):
        t = fock.build_truncation(n, N)
        for j in range(1, n + 1):
            c = fock.creation(t, j).entries
            np.testing.assert_allclose(c, gaussian_moment_ladder(t, j), atol=1e-14)
            a = fock.annihilation(t, j).entries
            np.testing.assert_allclose(a, c.conj().T, atol=1e-14)


def test_creation_explicit_n1():
    t = fock.build_truncation(1, 2)
    c = fock.creation(t).entries
    e0, e1, e2 = np.eye(3)
    np.testing.assert_allclose(c @ e0, 1.0 * e1)
    np.testing.assert_allclose(c @ e1, math.sqrt(2) * e2)
    np.testing.assert_allclose(c @ e2, 0 * e2)  # leaves the truncation
    a = fock.annihilation(t).entries
    np.testing.assert_allclose(a @ e0, 0 * e0)


def test_commutators_on_safe_block():
    for n, N in ((1, 8), (2, 5)):
        t = fock.build_truncation(n, N)
        d = t.degree_dim(N - 1)
        for i in range(1, n + 1):
            ai = fock.annihilation(t, i).entries
            ci = fock.creation(t, i).entries
            comm = (ai @ ci - ci @ ai)[:d, :d]
            np.testing.assert_allclose(comm, np.eye(d), atol=1e-12)
            for j in range(1, n + 1):
                aj = fock.annihilation(t, j).entries
                np.testing.assert_allclose(ai @ aj - aj @ ai, 0, atol=1e-12)
                if j != i:
                    cj = fock.creation(t, j).entries
                    np.testing.assert_allclose(
                        (ai @ cj - cj @ ai)[:d, :d], 0, atol=1e-12
                    )


def test_vacuum_projector():
    t = fock.build_truncation(1, 2)
    s = fock.vacuum_projector(t).entries
    np.testing.assert_allclose(s, np.diag([1.0, 0.0, 0.0]))
    np.testing.assert_allclose(s @ s, s)
    assert s.trace() == 1.0
    assert np.linalg.matrix_rank(s) == 1
    np.testing.assert_allclose(s.conj().T, s)
    a = fock.annihilation(t).entries
    np.testing.assert_allclose(a @ s, 0, atol=0)


def test_transpose_dagger_involution_and_antimultiplicativity():
    t = fock.build_truncation(2, 4)
    rng = np.random.default_rng(7)
    A = fock.FockOperator(t, rng.standard_normal((t.dim, t.dim)) + 1j * rng.standard_normal((t.dim, t.dim)))
    B = fock.FockOperator(t, rng.standard_normal((t.dim, t.dim)) + 1j * rng.standard_normal((t.dim, t.dim)))
    assert np.array_equal(fock.transpose_dagger(fock.transpose_dagger(A)).entries, A.entries)
    ident = fock.identity(t)
    assert np.array_equal(fock.transpose_dagger(ident).entries, ident.entries)
    c = fock.creation(t, 1)
    assert np.array_equal(fock.transpose_dagger(c).entries, c.entries.T)
    lhs = fock.transpose_dagger(fock.FockOperator(t, A.entries @ B.entries)).entries
    rhs = fock.transpose_dagger(B).entries @ fock.transpose_dagger(A).entries
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    # complex linearity: dagger(i*A) = i*dagger(A)
    np.testing.assert_allclose(
        fock.transpose_dagger(fock.FockOperator(t, 1j * A.entries)).entries,
        1j * fock.transpose_dagger(A).entries,
    )


def test_operator_invariants_enforced():
    t = fock.build_truncation(1, 3)
    with pytest.raises(ValueError):
        fock.FockOperator(t, np.zeros((2, 2)))
    bad = np.zeros((t.dim, t.dim))
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        fock.FockOperator(t, bad)


def test_pad_entries_degree_consistent():
    small = fock.build_truncation(2, 2)
    big = fock.build_truncation(2, 4)
    m = np.arange(small.dim * small.dim, dtype=float).reshape(small.dim, small.dim)
    p = fock.pad_entries(m, big.dim)
    np.testing.assert_allclose(p[: small.dim, : small.dim], m)
    assert np.all(p[small.dim :, :] == 0) and np.all(p[:, small.dim :] == 0)
