r"""Polynomial symbols on the symplectic fiber and their quantization.

Frozen coordinate conventions
-----------------------------

All modules inherit the conventions fixed here.  The fiber is R^{2n} with
coordinates ``xi = (x_1..x_n, p_1..p_n)`` and complex coordinates
``w_j = x_j + i p_j``.  The symplectic form is

    omega(u, v) = sum_j u_{x_j} v_{p_j} - u_{p_j} v_{x_j},

with matrix ``Omega = [[0, I], [-I, 0]]`` (this is the matrix written for
the contact form differential in the type invariants).  The compatible
complex structure is ``Jc = [[0, -I], [I, 0]]``, i.e. ``Jc(x, p) = (-p, x)``,
which multiplies ``w`` by ``i``.

Sharp products
--------------

The hemisphere composition laws are the two Weyl-type products

    (a #s b)(xi) = pi^{-2n} iint exp(s * 2i * omega(u, v))
                   a(xi + u) b(xi + v) du dv,      s = +1 or -1,

evaluated in closed form on polynomials by the equivalent bidifferential
series (in the complex coordinates)

    a #+ b = sum_{A,B} (-1)^{|B|} / (A! B!)
             (d_w^A d_wbar^B a) (d_wbar^A d_w^B b),

with ``(-1)^{|A|}`` instead for ``#-``.  The series fixes the commutator

    x #+ p - p #+ x = KAPPA = i,

and the opposite sign for ``#-``.  The sign and normalization are pinned
against the defining integral by the Gauss-Hermite oracle
:func:`sharp_quadrature` (see ``tests``), then frozen here.

Quantization
------------

``weyl_quantize`` maps ``w_j -> sqrt(2) a_j`` (annihilation) and
``wbar_j -> sqrt(2) a_j^+``, extended to monomials by the exact identity
``Op(l * m) = (Op(l) Op(m) + Op(m) Op(l)) / 2`` for linear ``l``.  Matrices
are computed with degree headroom and cropped, so every returned entry is
the exact compression ``P_N Op(sym) P_N`` of the untruncated operator.
Under this convention ``Op(|w|^2)`` is diagonal with entries ``2k + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np
from numpy.polynomial.hermite import hermgauss

from . import fock
from .errors import DegenerateBoundary, NotSymplectic, ZeroOnCircle

__all__ = [
    "KAPPA",
    "PolySymbol",
    "BoundaryFunction",
    "SymplecticMap",
    "sharp",
    "sharp_quadrature",
    "sharp_damped_series",
    "weyl_quantize",
    "quantize_opposite",
    "boundary_symbol",
    "pullback",
    "rotation_homotopy",
    "metaplectic_rotation",
    "symplectic_form_matrix",
    "complex_structure",
]

#: Frozen commutator constant: x #+ p - p #+ x.  Pinned by the quadrature
#: oracle; flipping its sign must make the sharp-product suite fail.
KAPPA = 1j

#: Default boundary sample count (power of two).
BOUNDARY_GRID = 256

_PRUNE_REL = 1e-14

MultiIndex = tuple[int, ...]
TermKey = tuple[MultiIndex, MultiIndex]


def _multi_factorial(k: MultiIndex) -> int:
    return math.prod(math.factorial(x) for x in k)


@dataclass(frozen=True)
class PolySymbol:
    """Polynomial function on the fiber, as a table of (w, wbar) monomials.

    ``coeffs`` maps exponent pairs ``(p, q)`` (each a length-``n`` tuple) to
    complex coefficients; explicit zeros are dropped on construction.
    """

    n: int
    coeffs: Mapping[TermKey, complex]

    def __post_init__(self):
        clean: dict[TermKey, complex] = {}
        for (p, q), c in self.coeffs.items():
            p, q = tuple(p), tuple(q)
            if len(p) != self.n or len(q) != self.n:
                raise ValueError(f"exponent tuples must have length n={self.n}")
            if any(e < 0 for e in p + q):
                raise ValueError("negative exponents")
            c = complex(c)
            if c != 0:
                clean[(p, q)] = clean.get((p, q), 0) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(n: int, value: complex) -> "PolySymbol":
        z = (0,) * n
        return PolySymbol(n, {(z, z): value})

    @staticmethod
    def w(n: int, j: int = 1) -> "PolySymbol":
        p = tuple(1 if i == j - 1 else 0 for i in range(n))
        return PolySymbol(n, {(p, (0,) * n): 1.0})

    @staticmethod
    def wbar(n: int, j: int = 1) -> "PolySymbol":
        q = tuple(1 if i == j - 1 else 0 for i in range(n))
        return PolySymbol(n, {((0,) * n, q): 1.0})

    @staticmethod
    def x(n: int, j: int = 1) -> "PolySymbol":
        return 0.5 * (PolySymbol.w(n, j) + PolySymbol.wbar(n, j))

    @staticmethod
    def p(n: int, j: int = 1) -> "PolySymbol":
        return (-0.5j) * (PolySymbol.w(n, j) - PolySymbol.wbar(n, j))

    @staticmethod
    def modulus_squared(n: int) -> "PolySymbol":
        terms = {}
        for j in range(n):
            p = tuple(1 if i == j else 0 for i in range(n))
            terms[(p, p)] = 1.0
        return PolySymbol(n, terms)

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(p) + sum(q) for p, q in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous_part(self, deg: int) -> "PolySymbol":
        return PolySymbol(
            self.n, {k: c for k, c in self.coeffs.items() if sum(k[0]) + sum(k[1]) == deg}
        )

    def prune(self, rel: float = _PRUNE_REL) -> "PolySymbol":
        """Drop coefficients below ``rel`` times the largest one."""
        if not self.coeffs:
            return self
        cut = rel * max(abs(c) for c in self.coeffs.values())
        return PolySymbol(self.n, {k: c for k, c in self.coeffs.items() if abs(c) > cut})

    def conjugate(self) -> "PolySymbol":
        """The pointwise complex conjugate function."""
        return PolySymbol(self.n, {(q, p): c.conjugate() for (p, q), c in self.coeffs.items()})

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "PolySymbol") -> "PolySymbol":
        if self.n != other.n:
            raise ValueError("fiber dimensions differ")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return PolySymbol(self.n, out)

    def __sub__(self, other: "PolySymbol") -> "PolySymbol":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "PolySymbol":
        return PolySymbol(self.n, {k: scalar * c for k, c in self.coeffs.items()})

    def __mul__(self, other: "PolySymbol") -> "PolySymbol":
        """Pointwise (commutative) product."""
        if self.n != other.n:
            raise ValueError("fiber dimensions differ")
        out: dict[TermKey, complex] = {}
        for (p1, q1), c1 in self.coeffs.items():
            for (p2, q2), c2 in other.coeffs.items():
                k = (
                    tuple(a + b for a, b in zip(p1, p2)),
                    tuple(a + b for a, b in zip(q1, q2)),
                )
                out[k] = out.get(k, 0) + c1 * c2
        return PolySymbol(self.n, out)

    def derivative(self, var: str, axis: int = 1) -> "PolySymbol":
        """d/dw_axis (var="w") or d/dwbar_axis (var="wbar")."""
        slot = 0 if var == "w" else 1
        j = axis - 1
        out: dict[TermKey, complex] = {}
        for (p, q), c in self.coeffs.items():
            e = (p, q)[slot][j]
            if e == 0:
                continue
            new = list((p, q)[slot])
            new[j] -= 1
            key = (tuple(new), q) if slot == 0 else (p, tuple(new))
            out[key] = out.get(key, 0) + c * e
        return PolySymbol(self.n, out)

    def __call__(self, w: np.ndarray) -> np.ndarray:
        """Evaluate at points ``w`` of shape (npts, n) (or (npts,) when n=1)."""
        w = np.asarray(w, dtype=complex)
        if w.ndim == 1:
            w = w[:, None]
        if w.shape[1] != self.n:
            raise ValueError(f"points must have {self.n} complex columns")
        out = np.zeros(w.shape[0], dtype=complex)
        wb = np.conj(w)
        for (p, q), c in self.coeffs.items():
            term = np.full(w.shape[0], c, dtype=complex)
            for j in range(self.n):
                if p[j]:
                    term *= w[:, j] ** p[j]
                if q[j]:
                    term *= wb[:, j] ** q[j]
            out += term
        return out


# ---------------------------------------------------------------------------
# sharp products
# ---------------------------------------------------------------------------


def _derivative_table(sym: PolySymbol, dw: MultiIndex, dwb: MultiIndex) -> PolySymbol:
    out = sym
    for j, r in enumerate(dw):
        for _ in range(r):
            out = out.derivative("w", j + 1)
    for j, r in enumerate(dwb):
        for _ in range(r):
            out = out.derivative("wbar", j + 1)
    return out


def _multi_indices_upto(n: int, total: int) -> Iterable[MultiIndex]:
    if n == 1:
        for k in range(total + 1):
            yield (k,)
        return
    for k in range(total + 1):
        for rest in _multi_indices_upto(n - 1, total - k):
            yield (k,) + rest


def sharp(a: PolySymbol, b: PolySymbol, sign: int = +1) -> PolySymbol:
    """Closed-form hemisphere product ``a #+- b`` of polynomial symbols.

    The bidifferential series terminates after ``min(deg a, deg b)`` orders.
    Bilinear, associative, degree-additive, and multiplicative at top
    degree; the unit is the constant symbol 1.
    """
    if a.n != b.n:
        raise ValueError("fiber dimensions differ")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    n = a.n
    da, db = a.degree, b.degree
    acc = PolySymbol.constant(n, 0.0)
    for alpha in _multi_indices_upto(n, da):
        ta_w = _derivative_table(a, alpha, (0,) * n)
        if ta_w.is_zero() and sum(alpha) > 0:
            continue
        for beta in _multi_indices_upto(n, da - sum(alpha)):
            ta = _derivative_table(ta_w, (0,) * n, beta)
            if ta.is_zero():
                continue
            tb = _derivative_table(b, beta, alpha)
            if tb.is_zero():
                continue
            if sign > 0:
                s = -1.0 if sum(beta) % 2 else 1.0
            else:
                s = -1.0 if sum(alpha) % 2 else 1.0
            coeff = s / (_multi_factorial(alpha) * _multi_factorial(beta))
            acc = acc + coeff * (ta * tb)
    return acc.prune()


# ---------------------------------------------------------------------------
# quadrature oracle (n = 1)
# ---------------------------------------------------------------------------

#: Damping exponent for the oracle inputs a(xi) exp(-gamma |xi|^2).  At this
#: value the damped bidifferential series converges geometrically while the
#: node count below resolves the oscillatory phase to well under 1e-8.
ORACLE_GAMMA = 0.5

#: Gauss-Hermite nodes per real dimension for the oracle integral.
ORACLE_NODES = 128


def _require_n1(sym: PolySymbol, what: str) -> None:
    if sym.n != 1:
        raise ValueError(f"{what} is implemented for the n=1 fiber only")


def sharp_quadrature(
    a: PolySymbol,
    b: PolySymbol,
    sign: int,
    points: np.ndarray,
    gamma: float = ORACLE_GAMMA,
    nodes: int = ORACLE_NODES,
) -> np.ndarray:
    """Evaluate the defining sharp integral for Gaussian-damped inputs.

    Computes ``(a G) #s (b G)`` at the complex sample ``points``, where
    ``G = exp(-gamma |xi|^2)``, by Gauss-Hermite quadrature of the double
    phase-space integral.  Oracle path only: it pins the sign convention of
    :func:`sharp` and is not a public API guarantee.
    """
    _require_n1(a, "sharp_quadrature")
    _require_n1(b, "sharp_quadrature")
    t, wq = hermgauss(nodes)
    s = t / math.sqrt(gamma)
    ww = wq / math.sqrt(gamma)
    AX, AP = np.meshgrid(s, s, indexing="ij")
    grid = (AX + 1j * AP).ravel()
    weight = np.outer(ww, ww)
    U = (a(grid).reshape(AX.shape)) * weight
    V = (b(grid).reshape(AX.shape)) * weight
    points = np.asarray(points, dtype=complex).ravel()
    out = np.empty(points.shape, dtype=complex)
    for i, w0 in enumerate(points):
        dx = s - w0.real
        dp = s - w0.imag
        # phase exp(s*2i*omega(u - xi, v - xi)) factorizes across the two
        # conjugate coordinate pairings
        E1 = np.exp(-sign * 2j * np.outer(dp, dx))  # [a_p, b_x]
        E2 = np.exp(+sign * 2j * np.outer(dx, dp))  # [a_x, b_p]
        out[i] = np.sum(U * (E2 @ (E1 @ V).T)) / np.pi**2
    return out


def _coeff_array(sym: PolySymbol) -> np.ndarray:
    d = sym.degree
    C = np.zeros((d + 1, d + 1), dtype=complex)
    for (p, q), c in sym.coeffs.items():
        C[p[0], q[0]] = c
    return C


def _damped_dw(C: np.ndarray, gamma: float) -> np.ndarray:
    # d/dw of P(w,wbar) exp(-gamma w wbar) at the coefficient level
    p, q = C.shape
    out = np.zeros((p, q + 1), dtype=complex)
    if p > 1:
        out[: p - 1, :q] += C[1:, :] * np.arange(1, p)[:, None]
    out[:, 1:] -= gamma * C
    return out


def _damped_dwb(C: np.ndarray, gamma: float) -> np.ndarray:
    p, q = C.shape
    out = np.zeros((p + 1, q), dtype=complex)
    if q > 1:
        out[:p, : q - 1] += C[:, 1:] * np.arange(1, q)[None, :]
    out[1:, :] -= gamma * C
    return out


def _damped_eval(C: np.ndarray, w: np.ndarray, gamma: float) -> np.ndarray:
    p, q = C.shape
    W = w[:, None] ** np.arange(p)[None, :]
    Wb = np.conj(w)[:, None] ** np.arange(q)[None, :]
    return np.einsum("ip,pq,iq->i", W, C, Wb) * np.exp(-gamma * np.abs(w) ** 2)


def sharp_damped_series(
    a: PolySymbol,
    b: PolySymbol,
    sign: int,
    points: np.ndarray,
    gamma: float = ORACLE_GAMMA,
    max_order: int = 140,
    tol: float = 1e-15,
) -> np.ndarray:
    """The closed-form series of :func:`sharp`, extended to damped inputs.

    Same bidifferential expansion and sign convention as :func:`sharp`,
    applied to ``a G`` and ``b G`` and summed numerically at the sample
    points until three consecutive orders fall below ``tol`` relative to
    the running scale.  Must agree with :func:`sharp_quadrature`.
    """
    _require_n1(a, "sharp_damped_series")
    _require_n1(b, "sharp_damped_series")
    points = np.asarray(points, dtype=complex).ravel()
    dA: dict[tuple[int, int], np.ndarray] = {(0, 0): _coeff_array(a)}
    dB: dict[tuple[int, int], np.ndarray] = {(0, 0): _coeff_array(b)}

    def table(cache, r, s, first: Callable, second: Callable):
        if (r, s) not in cache:
            if s > 0:
                cache[(r, s)] = second(table(cache, r, s - 1, first, second))
            else:
                cache[(r, s)] = first(table(cache, r - 1, 0, first, second))
        return cache[(r, s)]

    dw = lambda C: _damped_dw(C, gamma)
    dwb = lambda C: _damped_dwb(C, gamma)
    total = np.zeros(points.shape, dtype=complex)
    scale = 0.0
    quiet = 0
    for k in range(max_order + 1):
        term = np.zeros(points.shape, dtype=complex)
        for r in range(k + 1):
            s = k - r
            # a carries d_w^r d_wbar^s, b carries d_wbar^r d_w^s
            ta = table(dA, r, s, dw, dwb)
            tb = table(dB, r, s, dwb, dw)
            sgn = (-1.0) ** (s if sign > 0 else r)
            coeff = sgn / (math.factorial(r) * math.factorial(s))
            term += coeff * _damped_eval(ta, points, gamma) * _damped_eval(tb, points, gamma)
        total += term
        m = float(np.max(np.abs(term)))
        scale = max(scale, m, 1e-30)
        quiet = quiet + 1 if m < tol * scale else 0
        if quiet >= 3:
            break
    return total


# ---------------------------------------------------------------------------
# boundary restriction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryFunction:
    """Complex samples of a circle function at theta_j = 2 pi j / grid_size."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        g = s.shape[0]
        if s.ndim != 1 or g < 16 or g & (g - 1):
            raise ValueError("grid size must be a power of two, at least 16")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def grid_size(self) -> int:
        return self.samples.shape[0]

    @property
    def thetas(self) -> np.ndarray:
        g = self.grid_size
        return 2 * np.pi * np.arange(g) / g

    def min_modulus(self) -> float:
        return float(np.min(np.abs(self.samples)))

    def fourier(self) -> np.ndarray:
        """Coefficients c_m of f = sum c_m e^{i m theta}, fftfreq ordering."""
        return np.fft.fft(self.samples) / self.grid_size

    def __mul__(self, other: "BoundaryFunction") -> "BoundaryFunction":
        return BoundaryFunction(self.samples * other.samples)

    def reciprocal(self) -> "BoundaryFunction":
        if self.min_modulus() < 1e-12:
            raise ZeroOnCircle("cannot invert a circle function vanishing on the grid")
        return BoundaryFunction(1.0 / self.samples)

    def antipode(self) -> "BoundaryFunction":
        """f(theta + pi); sample-exact on the power-of-two grid."""
        return BoundaryFunction(np.roll(self.samples, -self.grid_size // 2))

    def reflect(self) -> "BoundaryFunction":
        """f(-theta); sample-exact."""
        s = self.samples
        return BoundaryFunction(np.concatenate([s[:1], s[:0:-1]]))

    def rotate(self, phi: float) -> "BoundaryFunction":
        """f(theta + phi) by spectral phase shift (exact on band-limited data)."""
        g = self.grid_size
        m = np.fft.fftfreq(g, d=1.0 / g)
        return BoundaryFunction(np.fft.ifft(np.fft.fft(self.samples) * np.exp(1j * m * phi)))

    @staticmethod
    def from_fourier(coeffs: Mapping[int, complex], grid_size: int = BOUNDARY_GRID) -> "BoundaryFunction":
        th = 2 * np.pi * np.arange(grid_size) / grid_size
        s = np.zeros(grid_size, dtype=complex)
        for m, c in coeffs.items():
            s += complex(c) * np.exp(1j * m * th)
        return BoundaryFunction(s)

    @staticmethod
    def constant(value: complex, grid_size: int = BOUNDARY_GRID) -> "BoundaryFunction":
        return BoundaryFunction(np.full(grid_size, complex(value)))


def boundary_symbol(a: PolySymbol, grid_size: int = BOUNDARY_GRID) -> BoundaryFunction:
    """Top-degree homogeneous part of ``a`` sampled on the equatorial circle.

    Multiplicative across sharp products: the boundary of ``a # b`` is the
    pointwise product of the boundaries.  Raises
    :class:`DegenerateBoundary` when the top part dips below 1e-12 in
    modulus anywhere on the grid.
    """
    _require_n1(a, "boundary_symbol")
    top = a.prune().homogeneous_part(a.prune().degree)
    th = 2 * np.pi * np.arange(grid_size) / grid_size
    vals = top(np.exp(1j * th))
    f = BoundaryFunction(vals)
    if f.min_modulus() < 1e-12:
        raise DegenerateBoundary(
            f"top-degree part vanishes on the sample grid (min modulus {f.min_modulus():.2e})"
        )
    return f


# ---------------------------------------------------------------------------
# symplectic fiber maps
# ---------------------------------------------------------------------------


def symplectic_form_matrix(n: int) -> np.ndarray:
    """Matrix of the fiber symplectic form in the frozen (x, p) coordinates."""
    O = np.zeros((2 * n, 2 * n))
    O[:n, n:] = np.eye(n)
    O[n:, :n] = -np.eye(n)
    return O


def complex_structure(n: int) -> np.ndarray:
    """The standard compatible complex structure: (x, p) -> (-p, x)."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


@dataclass(frozen=True)
class SymplecticMap:
    """A real linear map of the fiber preserving the symplectic form."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("matrix must be square of even size")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    def symplectic_defect(self) -> float:
        O = symplectic_form_matrix(self.n)
        return float(np.max(np.abs(self.matrix.T @ O @ self.matrix - O)))

    @staticmethod
    def identity(n: int) -> "SymplecticMap":
        return SymplecticMap(np.eye(2 * n))


def rotation_homotopy(t: float, n: int = 1) -> SymplecticMap:
    """The path cos(pi t) Id + sin(pi t) Jc from Id (t=0) to -Id (t=1).

    Every point of the path is symplectic; at t = 1/2 it is the complex
    structure itself.
    """
    return SymplecticMap(
        math.cos(math.pi * t) * np.eye(2 * n) + math.sin(math.pi * t) * complex_structure(n)
    )


def pullback(a: PolySymbol, alpha: SymplecticMap, tol: float = 1e-10) -> PolySymbol:
    """Compose a symbol with a symplectic fiber map: (a o alpha).

    Compatible with the sharp products: pulling back a sharp product equals
    the sharp product of the pullbacks.  Raises :class:`NotSymplectic` when
    the invariant check on ``alpha`` fails.
    """
    if alpha.n != a.n:
        raise ValueError("fiber dimensions differ")
    defect = alpha.symplectic_defect()
    if defect > tol:
        raise NotSymplectic(f"symplectic defect {defect:.3e} exceeds tolerance {tol:.0e}")
    n = a.n
    # complex change of basis: rows give w_j o alpha, wbar_j o alpha as
    # linear combinations of (w_k, wbar_k)
    S = np.block([[np.eye(n), 1j * np.eye(n)], [np.eye(n), -1j * np.eye(n)]])
    Sinv = 0.5 * np.block([[np.eye(n), np.eye(n)], [-1j * np.eye(n), 1j * np.eye(n)]])
    C = S @ alpha.matrix @ Sinv

    def linear_form(row: np.ndarray) -> PolySymbol:
        terms: dict[TermKey, complex] = {}
        z = (0,) * n
        for k in range(n):
            if row[k] != 0:
                pk = tuple(1 if i == k else 0 for i in range(n))
                terms[(pk, z)] = terms.get((pk, z), 0) + row[k]
            if row[n + k] != 0:
                qk = tuple(1 if i == k else 0 for i in range(n))
                terms[(z, qk)] = terms.get((z, qk), 0) + row[n + k]
        return PolySymbol(n, terms)

    w_forms = [linear_form(C[j]) for j in range(n)]
    wb_forms = [linear_form(C[n + j]) for j in range(n)]
    out = PolySymbol.constant(n, 0.0)
    for (p, q), c in a.coeffs.items():
        term = PolySymbol.constant(n, c)
        for j in range(n):
            for _ in range(p[j]):
                term = term * w_forms[j]
            for _ in range(q[j]):
                term = term * wb_forms[j]
        out = out + term
    return out.prune()


def metaplectic_rotation(phi: float, trunc: fock.FockTruncation) -> fock.FockOperator:
    """Unitary diag(exp(-i |k| phi)) implementing fiber rotation by phi.

    Conjugation by it agrees exactly with quantizing the rotated symbol:
    U Op(f) U^{-1} = Op(f o rotation_phi), including on truncations, since
    the diagonal unitary commutes with the degree projections.
    """
    diag = np.exp(-1j * phi * np.array([sum(k) for k in trunc.basis]))
    return fock.FockOperator(trunc, np.diag(diag))


# ---------------------------------------------------------------------------
# quantization
# ---------------------------------------------------------------------------


def weyl_quantize(sym: PolySymbol, trunc: fock.FockTruncation) -> fock.FockOperator:
    """Quantize a polynomial symbol on the truncated Fock space.

    Linear in the symbol; the constant 1 maps to the identity, real symbols
    map to self-adjoint matrices, and ``Op(a # b) = Op(a) Op(b)`` holds
    exactly on the degree block left untouched by truncation.  Entries are
    exact: the matrix is the compression of the untruncated operator.
    """
    if sym.n != trunc.n:
        raise ValueError(f"symbol fiber dimension {sym.n} != truncation n {trunc.n}")
    deg = sym.degree
    ambient = fock.build_truncation(trunc.n, trunc.N + deg)
    ladders_a = [math.sqrt(2) * fock.annihilation(ambient, j + 1).entries for j in range(trunc.n)]
    ladders_c = [math.sqrt(2) * fock.creation(ambient, j + 1).entries for j in range(trunc.n)]
    eye = np.eye(ambient.dim, dtype=complex)
    memo: dict[TermKey, np.ndarray] = {}

    def monomial(p: MultiIndex, q: MultiIndex) -> np.ndarray:
        key = (p, q)
        got = memo.get(key)
        if got is not None:
            return got
        for j in range(trunc.n):
            if p[j] > 0:
                rest = monomial(tuple(e - (i == j) for i, e in enumerate(p)), q)
                L = ladders_a[j]
                out = 0.5 * (L @ rest + rest @ L)
                break
            if q[j] > 0:
                rest = monomial(p, tuple(e - (i == j) for i, e in enumerate(q)))
                L = ladders_c[j]
                out = 0.5 * (L @ rest + rest @ L)
                break
        else:
            out = eye
        memo[key] = out
        return out

    total = np.zeros((ambient.dim, ambient.dim), dtype=complex)
    for (p, q), c in sym.coeffs.items():
        total += c * monomial(p, q)
    d = trunc.dim
    return fock.FockOperator(trunc, total[:d, :d].copy())


def quantize_opposite(sym: PolySymbol, trunc: fock.FockTruncation) -> fock.FockOperator:
    """Quantize for the opposite (lower-hemisphere) product: the transpose.

    ``quantize_opposite(a) quantize_opposite(b) = quantize_opposite(a #- b)``
    on the reliable block, because transposition reverses matrix products
    and ``a #- b`` is the opposite product of ``#+``.
    """
    return fock.transpose_dagger(weyl_quantize(sym, trunc))
