import math

import numpy as np
import pytest

from exheis import fock
from exheis.errors import DegenerateBoundary, NotSymplectic
from exheis.weyl import (
    KAPPA,
    BoundaryFunction,
    PolySymbol,
    SymplecticMap,
    boundary_symbol,
    complex_structure,
    metaplectic_rotation,
    pullback,
    quantize_opposite,
    rotation_homotopy,
    sharp,
    sharp_damped_series,
    sharp_quadrature,
    symplectic_form_matrix,
    weyl_quantize,
)


def coeff_distance(a, b):
    keys = set(a.coeffs) | set(b.coeffs)
    if not keys:
        return 0.0
    return max(abs(a.coeffs.get(k, 0) - b.coeffs.get(k, 0)) for k in keys)


def random_symbol(rng, n=1, degree=3):
    terms = {}
    for _ in range(6):
        p = tuple(int(rng.integers(0, degree + 1)) for _ in range(n))
        q = tuple(int(rng.integers(0, degree + 1)) for _ in range(n))
        if sum(p) + sum(q) > degree:
            continue
        terms[(p, q)] = complex(rng.standard_normal(), rng.standard_normal())
    terms[((0,) * n, (0,) * n)] = complex(rng.standard_normal(), rng.standard_normal())
    return PolySymbol(n, terms)


# --- orthonormal Hermite functions on the Gauss-Hermite grid (oracle path) --


def hermite_polys(kmax, x):
    """Gaussian-free parts of the orthonormal Hermite functions h_k."""
    H = [np.full_like(x, np.pi ** -0.25)]
    if kmax >= 1:
        H.append(np.sqrt(2.0) * x * H[0])
    for k in range(1, kmax):
        H.append(np.sqrt(2.0 / (k + 1)) * x * H[k] - np.sqrt(k / (k + 1)) * H[k - 1])
    return np.array(H)


def position_matrix_quadrature(dim):
    """<h_j, x h_k> by pure Gauss-Hermite quadrature, no ladder identities."""
    nodes, wts = np.polynomial.hermite.hermgauss(2 * dim + 6)
    H = hermite_polys(dim - 1, nodes)
    return np.einsum("i,ji,i,ki->jk", wts, H, nodes, H)


def position_sq_matrix_quadrature(dim):
    nodes, wts = np.polynomial.hermite.hermgauss(2 * dim + 8)
    H = hermite_polys(dim - 1, nodes)
    return np.einsum("i,ji,i,ki->jk", wts, H, nodes**2, H)


def fourier_phase(dim):
    """i^{j-k} phases: h_k are Fourier eigenfunctions with eigenvalue (-i)^k."""
    j = np.arange(dim)
    return 1j ** (j[:, None] - j[None, :])


# --- sharp product -----------------------------------------------------------


def test_kappa_frozen_value():
    x, p = PolySymbol.x(1), PolySymbol.p(1)
    comm_plus = sharp(x, p, +1) - sharp(p, x, +1)
    assert coeff_distance(comm_plus, PolySymbol.constant(1, KAPPA)) < 1e-14
    comm_minus = sharp(x, p, -1) - sharp(p, x, -1)
    assert coeff_distance(comm_minus, PolySymbol.constant(1, -KAPPA)) < 1e-14
    assert KAPPA.real == 0 and KAPPA.imag != 0


def test_unit_and_bilinearity():
    rng = np.random.default_rng(3)
    one = PolySymbol.constant(1, 1.0)
    for _ in range(5):
        b = random_symbol(rng)
        assert coeff_distance(sharp(one, b, +1), b) < 1e-14
        assert coeff_distance(sharp(b, one, -1), b) < 1e-14


def test_leading_part_multiplicative():
    w, wb = PolySymbol.w(1), PolySymbol.wbar(1)
    prod = sharp(w, wb, +1)
    assert coeff_distance(prod.homogeneous_part(2), PolySymbol.modulus_squared(1)) < 1e-14
    # full value fixed by the convention: w #+ wbar = |w|^2 + 1
    assert coeff_distance(prod, PolySymbol.modulus_squared(1) + PolySymbol.constant(1, 1.0)) < 1e-14


def test_associativity_exact_tables():
    rng = np.random.default_rng(11)
    for n in (1, 2):
        for _ in range(6):
            a, b, c = (random_symbol(rng, n=n, degree=3) for _ in range(3))
            for sign in (+1, -1):
                lhs = sharp(sharp(a, b, sign), c, sign)
                rhs = sharp(a, sharp(b, c, sign), sign)
                scale = max(1.0, max(abs(v) for v in lhs.coeffs.values()))
                assert coeff_distance(lhs, rhs) / scale < 1e-12


def test_degree_bound():
    rng = np.random.default_rng(5)
    a = random_symbol(rng, degree=3)
    b = random_symbol(rng, degree=2)
    assert sharp(a, b, +1).degree <= a.degree + b.degree


def test_sign_duality():
    x, p = PolySymbol.x(1), PolySymbol.p(1)
    plus = sharp(x, p, +1) - sharp(p, x, +1)
    minus = sharp(x, p, -1) - sharp(p, x, -1)
    assert coeff_distance(plus, (-1.0) * minus) == 0.0


def test_opposite_product_relation():
    rng = np.random.default_rng(17)
    a, b = random_symbol(rng), random_symbol(rng)
    assert coeff_distance(sharp(a, b, -1), sharp(b, a, +1)) < 1e-13


# --- quadrature oracle -------------------------------------------------------


def test_damped_commutator_closed_form():
    # (x G) #+ (p G) - (p G) #+ (x G) at the origin equals i/(gamma^2+1)^2
    gamma = 0.5
    x, p = PolySymbol.x(1), PolySymbol.p(1)
    pts = np.array([0.0 + 0.0j])
    for sign in (+1, -1):
        comm = sharp_quadrature(x, p, sign, pts, gamma) - sharp_quadrature(p, x, sign, pts, gamma)
        expected = sign * 1j / (gamma**2 + 1) ** 2
        assert abs(comm[0] - expected) < 1e-10


def test_sharp_series_agrees_with_quadrature():
    rng = np.random.default_rng(23)
    pts = 0.8 * (rng.standard_normal(5) + 1j * rng.standard_normal(5))
    for trial in range(4):
        a = random_symbol(rng, degree=3)
        b = random_symbol(rng, degree=3)
        for sign in (+1, -1):
            sv = sharp_damped_series(a, b, sign, pts)
            qv = sharp_quadrature(a, b, sign, pts)
            scale = max(1.0, float(np.max(np.abs(qv))))
            assert np.max(np.abs(sv - qv)) / scale < 1e-8, (trial, sign)


def test_quadrature_gaussian_product_value():
    gamma = 0.5
    one = PolySymbol.constant(1, 1.0)
    pts = np.array([0.0, 0.7 - 0.3j], dtype=complex)
    got = sharp_quadrature(one, one, +1, pts, gamma)
    r2 = np.abs(pts) ** 2
    expected = np.exp(-2 * gamma * r2 / (1 + gamma**2)) / (1 + gamma**2)
    np.testing.assert_allclose(got, expected, atol=1e-10)


# --- boundary ----------------------------------------------------------------


def test_boundary_of_coordinate_and_modulus():
    th = 2 * np.pi * np.arange(256) / 256
    f = boundary_symbol(PolySymbol.w(1))
    np.testing.assert_allclose(f.samples, np.exp(1j * th), atol=1e-12)
    g = boundary_symbol(PolySymbol.modulus_squared(1))
    np.testing.assert_allclose(g.samples, 1.0, atol=1e-12)


def test_boundary_multiplicative():
    rng = np.random.default_rng(29)
    for _ in range(5):
        a = random_symbol(rng, degree=2) + PolySymbol(1, {((2,), (0,)): 2.0})
        b = random_symbol(rng, degree=1) + PolySymbol(1, {((1,), (0,)): 1.5})
        try:
            fa, fb = boundary_symbol(a), boundary_symbol(b)
        except DegenerateBoundary:
            continue
        fab = boundary_symbol(sharp(a, b, +1))
        np.testing.assert_allclose(fab.samples, (fa * fb).samples, atol=1e-10)


def test_boundary_degenerate_raises():
    # top part w + wbar = 2x vanishes on the circle at theta = pi/2
    a = PolySymbol.w(1) + PolySymbol.wbar(1)
    with pytest.raises(DegenerateBoundary):
        boundary_symbol(a)


def test_boundary_grid_invariants():
    with pytest.raises(ValueError):
        BoundaryFunction(np.ones(12, dtype=complex))
    with pytest.raises(ValueError):
        BoundaryFunction(np.ones(48, dtype=complex))  # not a power of two
    f = BoundaryFunction.from_fourier({1: 1.0}, 64)
    np.testing.assert_allclose(f.antipode().samples, -f.samples, atol=1e-14)
    np.testing.assert_allclose(f.reflect().samples, np.conj(f.samples), atol=1e-14)
    np.testing.assert_allclose(f.rotate(0.3).samples, np.exp(0.3j) * f.samples, atol=1e-12)


# --- symplectic maps ---------------------------------------------------------


def random_sp2(rng):
    a, b = rng.standard_normal(2) * 0.8
    c = np.exp(rng.standard_normal() * 0.5)
    shear1 = np.array([[1.0, a], [0.0, 1.0]])
    shear2 = np.array([[1.0, 0.0], [b, 1.0]])
    scale = np.array([[c, 0.0], [0.0, 1.0 / c]])
    return SymplecticMap(shear1 @ shear2 @ scale)


def test_pullback_identity_and_reflection():
    rng = np.random.default_rng(31)
    a = random_symbol(rng)
    assert coeff_distance(pullback(a, SymplecticMap.identity(1)), a) < 1e-14
    minus = SymplecticMap(-np.eye(2))
    w = PolySymbol.w(1)
    assert coeff_distance(pullback(w, minus), (-1.0) * w) < 1e-14


def test_pullback_equivariance():
    rng = np.random.default_rng(37)
    maps = [random_sp2(rng) for _ in range(20)]
    maps.append(SymplecticMap(np.array([[2.0, 0.0], [0.0, 0.5]])))
    for alpha in maps:
        a = random_symbol(rng, degree=3)
        b = random_symbol(rng, degree=3)
        for sign in (+1, -1):
            lhs = sharp(pullback(a, alpha), pullback(b, alpha), sign)
            rhs = pullback(sharp(a, b, sign), alpha)
            scale = max(1.0, max(abs(v) for v in rhs.coeffs.values()))
            assert coeff_distance(lhs, rhs) / scale < 1e-10


def test_not_symplectic_raises():
    bad = SymplecticMap(np.array([[2.0, 0.0], [0.0, 2.0]]))
    with pytest.raises(NotSymplectic):
        pullback(PolySymbol.w(1), bad)


def test_rotation_homotopy_endpoints():
    for n in (1, 2):
        np.testing.assert_allclose(rotation_homotopy(0.0, n).matrix, np.eye(2 * n), atol=1e-15)
        np.testing.assert_allclose(rotation_homotopy(1.0, n).matrix, -np.eye(2 * n), atol=1e-12)
        np.testing.assert_allclose(rotation_homotopy(0.5, n).matrix, complex_structure(n), atol=1e-12)
        for t in np.linspace(0, 1, 11):
            assert rotation_homotopy(float(t), n).symplectic_defect() < 1e-12


def test_complex_structure_compatible():
    for n in (1, 2):
        J = complex_structure(n)
        np.testing.assert_allclose(J @ J, -np.eye(2 * n), atol=1e-15)
        O = symplectic_form_matrix(n)
        # dtheta(u, Ju) > 0: the induced bilinear form is the identity
        np.testing.assert_allclose(O @ J, np.eye(2 * n), atol=1e-15)


# --- quantization ------------------------------------------------------------


def test_quantize_constant_is_identity():
    t = fock.build_truncation(1, 6)
    op = weyl_quantize(PolySymbol.constant(1, 1.0), t)
    np.testing.assert_allclose(op.entries, np.eye(t.dim), atol=1e-15)


def test_quantize_linear_matches_hermite_quadrature_oracle():
    t = fock.build_truncation(1, 9)
    X = position_matrix_quadrature(t.dim)
    P = fourier_phase(t.dim) * X
    np.testing.assert_allclose(weyl_quantize(PolySymbol.x(1), t).entries, X, atol=1e-12)
    np.testing.assert_allclose(weyl_quantize(PolySymbol.p(1), t).entries, P, atol=1e-12)
    W = weyl_quantize(PolySymbol.w(1), t).entries
    np.testing.assert_allclose(W, X + 1j * P, atol=1e-12)
    np.testing.assert_allclose(W, math.sqrt(2) * fock.annihilation(t).entries, atol=1e-12)


def test_quantize_modulus_squared_spectrum():
    t = fock.build_truncation(1, 8)
    H = weyl_quantize(PolySymbol.modulus_squared(1), t).entries
    np.testing.assert_allclose(H, np.diag(2.0 * np.arange(t.dim) + 1.0), atol=1e-12)
    X2 = position_sq_matrix_quadrature(t.dim)
    P2 = fourier_phase(t.dim) * X2
    np.testing.assert_allclose(H, X2 + P2, atol=1e-11)


def test_quantize_real_symbol_self_adjoint():
    rng = np.random.default_rng(41)
    t = fock.build_truncation(1, 7)
    a = random_symbol(rng, degree=3)
    real_sym = a + a.conjugate()
    op = weyl_quantize(real_sym, t).entries
    np.testing.assert_allclose(op, op.conj().T, atol=1e-12)


def test_quantization_homomorphism_on_safe_block():
    rng = np.random.default_rng(43)
    N = 14
    t = fock.build_truncation(1, N)
    for _ in range(6):
        a = random_symbol(rng, degree=3)
        b = random_symbol(rng, degree=3)
        d = t.degree_dim(N - a.degree - b.degree)
        lhs = (weyl_quantize(a, t).entries @ weyl_quantize(b, t).entries)[:d, :d]
        rhs = weyl_quantize(sharp(a, b, +1), t).entries[:d, :d]
        scale = max(1.0, np.abs(rhs).max())
        assert np.max(np.abs(lhs - rhs)) / scale < 1e-9


def test_opposite_quantization_homomorphism():
    rng = np.random.default_rng(47)
    N = 14
    t = fock.build_truncation(1, N)
    a = random_symbol(rng, degree=2)
    b = random_symbol(rng, degree=2)
    d = t.degree_dim(N - a.degree - b.degree)
    lhs = (quantize_opposite(a, t).entries @ quantize_opposite(b, t).entries)[:d, :d]
    rhs = quantize_opposite(sharp(a, b, -1), t).entries[:d, :d]
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_quantize_rejects_mismatched_n():
    t = fock.build_truncation(2, 3)
    with pytest.raises(ValueError):
        weyl_quantize(PolySymbol.w(1), t)


def test_transpose_is_reflection_pullback():
    # frozen fiber reflection: transpose of Op(m) quantizes m o (x, -p).
    # The reflection is anti-symplectic, so compose at the exponent level
    # (it swaps the roles of w and wbar as variables).
    rng = np.random.default_rng(53)
    t = fock.build_truncation(1, 8)
    for _ in range(5):
        a = random_symbol(rng, degree=3)
        lhs = fock.transpose_dagger(weyl_quantize(a, t)).entries
        reflected = PolySymbol(1, {(q, p): c for (p, q), c in a.coeffs.items()})
        rhs = weyl_quantize(reflected, t).entries
        np.testing.assert_allclose(lhs, rhs, atol=1e-11)


def test_reflection_is_antisymplectic():
    refl = SymplecticMap(np.diag([1.0, -1.0]))
    assert refl.symplectic_defect() > 1.0


# --- metaplectic rotations ---------------------------------------------------


def test_metaplectic_trivial_angles():
    t = fock.build_truncation(1, 6)
    np.testing.assert_allclose(metaplectic_rotation(0.0, t).entries, np.eye(t.dim), atol=1e-15)
    np.testing.assert_allclose(metaplectic_rotation(2 * np.pi, t).entries, np.eye(t.dim), atol=1e-12)


def test_metaplectic_conjugation_matches_pullback():
    t = fock.build_truncation(1, 10)
    phi = np.pi / 3
    U = metaplectic_rotation(phi, t).entries
    w2 = PolySymbol(1, {((2,), (0,)): 1.0})
    lhs = U @ weyl_quantize(w2, t).entries @ np.conj(U.T)
    alpha = SymplecticMap(
        math.cos(phi) * np.eye(2) + math.sin(phi) * complex_structure(1)
    )
    rhs = weyl_quantize(pullback(w2, alpha), t).entries
    np.testing.assert_allclose(lhs, rhs, atol=1e-8)
    # parity: rotation by pi is the diagonal (-1)^k
    Upi = metaplectic_rotation(np.pi, t).entries
    np.testing.assert_allclose(Upi, np.diag((-1.0) ** np.arange(t.dim)), atol=1e-12)
