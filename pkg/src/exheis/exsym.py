r"""The extended symbol algebra: glued hemisphere operators and classical arcs.

An extended symbol is a triple (upper, lower, classical).  The hemisphere
components are realized concretely at a finite Fock truncation as

    represented = lift(boundary) + finite,

where ``lift`` is the frozen Berezin-Toeplitz lift of the circle function:
quantize ``f(w/|w|) chi(|w|)`` with ``chi`` a fixed smooth radial cutoff
vanishing for ``r <= 1`` and equal to 1 for ``r >= 2``.  In the number
basis the lift is the weighted Toeplitz matrix

    lift(f)[j, k] = fourier(f)[j - k] * R[j, k],

with radial weights ``R[j,k] = 2 int chi(r) r^{j+k+1} e^{-r^2} dr /
sqrt(j! k!)`` tending to 1 away from low indices, so the boundary function
is recoverable from far-diagonal asymptotics and the circle function is an
exact boundary extraction.

The two hemispheres carry opposite composition laws.  Both are realized by
plain matrix products: a lower element with hemisphere function ``f`` is
stored as the transpose representation (``quantize_opposite``), whose
Toeplitz coefficients read the boundary through the reflected
identification.  Consequently the involutions are exact matrix maps:

* ``op``:      (A, B, arc)  ->  (B^T, A^T, arc flipped in t)
* ``dagger``:  (A, B, arc)  ->  (Pi B^T Pi, Pi A^T Pi, arc antipodal and
  flipped), with ``Pi`` the parity unitary diag((-1)^k),

where A, B are the represented matrices; the stored finite parts transform
by the same formulas.  ``dagger`` reverses products; ``op`` re-reads each
hemisphere in the opposite algebra.

The compactified classical coordinate ``t`` runs over a uniform odd-length
grid on [-1, 1], symmetric about 0 so the ``t -> -t`` reflection is
sample-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import fock
from .errors import (
    CornerNotNullhomotopic,
    LowerHalfNotInvertible,
    NotInvertible,
    PathDegenerate,
    UnstableCertificate,
    ZeroOnCircle,
)
from .fock import FockOperator, FockTruncation, build_truncation, pad_entries
from .weyl import BOUNDARY_GRID, BoundaryFunction, metaplectic_rotation

__all__ = [
    "DEFAULT_DELTA",
    "T_GRID",
    "STABILITY_STRIDE",
    "WeylElement",
    "ClassicalArc",
    "ExtendedSymbol",
    "InvertibilityCertificate",
    "ValidationReport",
    "HomotopyPath",
    "HermiteReduction",
    "berezin_toeplitz_lift",
    "element_from_matrix",
    "element_product",
    "element_inverse",
    "recover_boundary",
    "validate",
    "compose",
    "inverse",
    "is_invertible",
    "dagger",
    "op_involution",
    "homotopy_dagger_to_op",
    "symmetrize_tilde",
    "hermite_reduction",
    "symbol_distance",
]

#: Default invertibility threshold: invertibility in a C*-algebra is open,
#: so a strict margin plus a two-order stability window guards against
#: truncation artifacts.
DEFAULT_DELTA = 1e-4

#: Truncation stability window: verdicts are required at N and N + 4.
STABILITY_STRIDE = 4

#: Default number of samples of the compactified classical coordinate.
T_GRID = 65


# ---------------------------------------------------------------------------
# Berezin-Toeplitz lift
# ---------------------------------------------------------------------------


def _radial_cutoff(r: np.ndarray) -> np.ndarray:
    # C-infinity bump transition: 0 for r <= 1, 1 for r >= 2
    def psi(t):
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = np.exp(-1.0 / t[pos])
        return out

    up = psi(r - 1.0)
    down = psi(2.0 - r)
    return up / (up + down)


_LIFT_CACHE: dict[int, np.ndarray] = {}
_GL_NODES = 96


def _radial_weights(dim: int) -> np.ndarray:
    """R[j, k] for 0 <= j, k < dim, computed once per dimension."""
    got = _LIFT_CACHE.get(dim)
    if got is not None:
        return got
    mmax = 2 * (dim - 1)
    nodes, wts = leggauss(_GL_NODES)
    r = 1.0 + 0.5 * (nodes + 1.0)  # the cutoff differs from 1 only on [1, 2]
    w = 0.5 * wts
    one_minus_chi = 1.0 - _radial_cutoff(r)
    # ratio[m] = int (1-chi) r^{m+1} e^{-r^2} dr / (Gamma(m/2+1)/2), in log space
    log_r = np.log(r)
    ratio = np.empty(mmax + 1)
    for m in range(mmax + 1):
        log_full = math.lgamma(m / 2.0 + 1.0) - math.log(2.0)
        ratio[m] = float(
            np.sum(w * one_minus_chi * np.exp((m + 1) * log_r - r * r - log_full))
        )
    j = np.arange(dim)
    lg = np.array([math.lgamma(x + 1.0) for x in j])
    m_grid = j[:, None] + j[None, :]
    log_R = (
        np.vectorize(lambda m: math.lgamma(m / 2.0 + 1.0))(m_grid)
        - 0.5 * (lg[:, None] + lg[None, :])
        + np.log1p(-ratio[m_grid])
    )
    R = np.exp(log_R)
    R.setflags(write=False)
    _LIFT_CACHE[dim] = R
    return R


def berezin_toeplitz_lift(
    boundary: BoundaryFunction, hemisphere: int, trunc: FockTruncation
) -> np.ndarray:
    """Matrix of the frozen lift of a circle function at a truncation order.

    ``hemisphere`` is +1 or -1; the lower lift reads the Fourier
    coefficients through the reflected identification (index sign flip),
    matching the transpose representation of the opposite product.
    """
    if trunc.n != 1:
        raise ValueError("the extended symbol algebra is realized on the n=1 fiber")
    if hemisphere not in (+1, -1):
        raise ValueError("hemisphere must be +1 or -1")
    dim = trunc.dim
    g = boundary.grid_size
    if dim - 1 >= g // 2:
        raise ValueError(
            f"truncation dim {dim} too large for boundary grid {g}; raise the grid size"
        )
    c = boundary.fourier()
    R = _radial_weights(dim)
    out = np.zeros((dim, dim), dtype=complex)
    j = np.arange(dim)
    for m in range(-(dim - 1), dim):
        rows = j[max(0, m) : dim + min(0, m)]
        cols = rows - m
        coeff = c[(hemisphere * m) % g]
        if coeff != 0:
            out[rows, cols] = coeff * R[rows, cols]
    return out


# ---------------------------------------------------------------------------
# Weyl elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """Hemisphere operator: boundary circle function plus finite correction."""

    hemisphere: int
    boundary: BoundaryFunction
    finite: FockOperator

    def __post_init__(self):
        if self.hemisphere not in (+1, -1):
            raise ValueError("hemisphere must be +1 or -1")

    @property
    def trunc(self) -> FockTruncation:
        return self.finite.trunc

    def represented(self, trunc: FockTruncation | None = None) -> np.ndarray:
        """The matrix lift(boundary) + finite, optionally rebuilt at a larger order."""
        if trunc is None:
            trunc = self.trunc
        if trunc.N < self.trunc.N:
            raise ValueError("cannot rebuild at a smaller truncation order")
        lift = berezin_toeplitz_lift(self.boundary, self.hemisphere, trunc)
        return lift + pad_entries(self.finite.entries, trunc.dim)

    def min_singular(self, trunc: FockTruncation | None = None) -> float:
        return float(np.linalg.svd(self.represented(trunc), compute_uv=False)[-1])


def element_from_matrix(
    hemisphere: int, boundary: BoundaryFunction, matrix: np.ndarray, trunc: FockTruncation
) -> WeylElement:
    """Split a represented matrix into lift(boundary) + finite."""
    lift = berezin_toeplitz_lift(boundary, hemisphere, trunc)
    return WeylElement(hemisphere, boundary, FockOperator(trunc, matrix - lift))


def element_product(e1: WeylElement, e2: WeylElement) -> WeylElement:
    """Compose two same-hemisphere elements: boundaries multiply pointwise."""
    if e1.hemisphere != e2.hemisphere:
        raise ValueError("cannot compose elements of opposite hemispheres")
    if e1.trunc != e2.trunc:
        raise ValueError("truncation orders differ")
    b = e1.boundary * e2.boundary
    return element_from_matrix(
        e1.hemisphere, b, e1.represented() @ e2.represented(), e1.trunc
    )


def element_inverse(e: WeylElement) -> WeylElement:
    if e.boundary.min_modulus() < 1e-12:
        raise ZeroOnCircle("boundary function vanishes on the grid")
    return element_from_matrix(
        e.hemisphere, e.boundary.reciprocal(), np.linalg.inv(e.represented()), e.trunc
    )


def unit_element(hemisphere: int, trunc: FockTruncation, grid_size: int = BOUNDARY_GRID) -> WeylElement:
    return element_from_matrix(
        hemisphere,
        BoundaryFunction.constant(1.0, grid_size),
        np.eye(trunc.dim, dtype=complex),
        trunc,
    )


def recover_boundary(element: WeylElement, grid_size: int | None = None) -> BoundaryFunction:
    """Estimate the boundary from far-diagonal asymptotics of the matrix.

    Reads each Fourier coefficient off a mid-to-far window of its diagonal
    after dividing out the known radial weights; the finite part decays
    there, so lift-consistent elements reproduce their stored boundary.
    """
    m_matrix = element.represented()
    dim = element.trunc.dim
    g = grid_size or element.boundary.grid_size
    R = _radial_weights(dim)
    mmax = min(dim // 3, g // 2 - 1)
    coeffs: dict[int, complex] = {}
    for m in range(-mmax, mmax + 1):
        j = np.arange(max(0, m), dim + min(0, m))
        window = j[(j >= dim // 2) & (j - m >= dim // 2)]
        if window.size == 0:
            continue
        vals = m_matrix[window, window - m] / R[window, window - m]
        coeffs[element.hemisphere * m] = complex(np.mean(vals))
    return BoundaryFunction.from_fourier(coeffs, g)


# ---------------------------------------------------------------------------
# classical arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalArc:
    """Samples on the equatorial circle times the compactified t-grid [-1, 1].

    ``values`` has shape (circle grid, t grid); the t grid is uniform with
    an odd number of points, symmetric about 0.  ``modulus`` is the
    declared bound on adjacent-sample jumps (a continuity surrogate).
    """

    values: np.ndarray
    modulus: float = 0.75

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2:
            raise ValueError("arc values must be a (circle, t) array")
        g, T = v.shape
        if g < 16 or g & (g - 1):
            raise ValueError("circle grid must be a power of two, at least 16")
        if T < 3 or T % 2 == 0:
            raise ValueError("t grid must have an odd number of points, at least 3")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def grid_sizes(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def t_grid(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.values.shape[1])

    def slice_at(self, t_end: int) -> np.ndarray:
        """Boundary restriction at t = -1 (t_end=-1) or t = +1 (t_end=+1)."""
        return self.values[:, 0] if t_end < 0 else self.values[:, -1]

    def continuity_residual(self) -> float:
        v = self.values
        dtheta = np.max(np.abs(np.roll(v, -1, axis=0) - v))
        dt = np.max(np.abs(np.diff(v, axis=1)))
        return float(max(dtheta, dt))

    def min_modulus(self) -> float:
        return float(np.min(np.abs(self.values)))

    def flip_t(self) -> "ClassicalArc":
        return ClassicalArc(self.values[:, ::-1], self.modulus)

    def antipode_theta(self) -> "ClassicalArc":
        g = self.values.shape[0]
        return ClassicalArc(np.roll(self.values, -g // 2, axis=0), self.modulus)

    def rotate_theta(self, phi: float) -> "ClassicalArc":
        g = self.values.shape[0]
        m = np.fft.fftfreq(g, d=1.0 / g)
        spec = np.fft.fft(self.values, axis=0)
        return ClassicalArc(
            np.fft.ifft(spec * np.exp(1j * m * phi)[:, None], axis=0), self.modulus
        )

    def __mul__(self, other: "ClassicalArc") -> "ClassicalArc":
        return ClassicalArc(self.values * other.values, max(self.modulus, other.modulus))

    def reciprocal(self) -> "ClassicalArc":
        return ClassicalArc(1.0 / self.values, self.modulus)

    @staticmethod
    def constant(value: complex, grid_size: int = BOUNDARY_GRID, t_size: int = T_GRID) -> "ClassicalArc":
        return ClassicalArc(np.full((grid_size, t_size), complex(value)))

    @staticmethod
    def interpolate_boundaries(
        lower: BoundaryFunction, upper: BoundaryFunction, t_size: int = T_GRID
    ) -> "ClassicalArc":
        """Linear interpolation in t between the two corner functions."""
        s = 0.5 * (np.linspace(-1.0, 1.0, t_size) + 1.0)
        vals = lower.samples[:, None] * (1 - s)[None, :] + upper.samples[:, None] * s[None, :]
        return ClassicalArc(vals)


# ---------------------------------------------------------------------------
# extended symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedSymbol:
    """Triple (upper, lower, classical arc) with corner-matching invariants."""

    upper: WeylElement
    lower: WeylElement
    classical: ClassicalArc

    def __post_init__(self):
        if self.upper.hemisphere != +1 or self.lower.hemisphere != -1:
            raise ValueError("upper/lower components carry the wrong hemisphere tags")
        g = self.classical.values.shape[0]
        if self.upper.boundary.grid_size != g or self.lower.boundary.grid_size != g:
            raise ValueError("boundary and arc circle grids differ")
        if self.upper.trunc != self.lower.trunc:
            raise ValueError("hemisphere truncations differ")

    @property
    def trunc(self) -> FockTruncation:
        return self.upper.trunc

    def corner_residuals(self) -> tuple[float, float]:
        up = float(np.max(np.abs(self.upper.boundary.samples - self.classical.slice_at(+1))))
        lo = float(np.max(np.abs(self.lower.boundary.samples - self.classical.slice_at(-1))))
        return up, lo

    @staticmethod
    def unit(
        trunc: FockTruncation, grid_size: int = BOUNDARY_GRID, t_size: int = T_GRID
    ) -> "ExtendedSymbol":
        return ExtendedSymbol(
            unit_element(+1, trunc, grid_size),
            unit_element(-1, trunc, grid_size),
            ClassicalArc.constant(1.0, grid_size, t_size),
        )

    @staticmethod
    def constant(
        value: complex,
        trunc: FockTruncation,
        grid_size: int = BOUNDARY_GRID,
        t_size: int = T_GRID,
    ) -> "ExtendedSymbol":
        eye = np.eye(trunc.dim, dtype=complex)
        b = BoundaryFunction.constant(value, grid_size)
        return ExtendedSymbol(
            element_from_matrix(+1, b, value * eye, trunc),
            element_from_matrix(-1, b, value * eye, trunc),
            ClassicalArc.constant(value, grid_size, t_size),
        )


def symbol_distance(s1: ExtendedSymbol, s2: ExtendedSymbol) -> float:
    """Max over components of the entrywise distance (diagnostic metric)."""
    return float(
        max(
            np.max(np.abs(s1.upper.represented() - s2.upper.represented())),
            np.max(np.abs(s1.lower.represented() - s2.lower.represented())),
            np.max(np.abs(s1.upper.boundary.samples - s2.upper.boundary.samples)),
            np.max(np.abs(s1.lower.boundary.samples - s2.lower.boundary.samples)),
            np.max(np.abs(s1.classical.values - s2.classical.values)),
        )
    )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    corner_upper_residual: float
    corner_lower_residual: float
    continuity_residual: float
    declared_modulus: float
    corner_tolerance: float = 1e-8

    @property
    def corners_ok(self) -> bool:
        return (
            self.corner_upper_residual <= self.corner_tolerance
            and self.corner_lower_residual <= self.corner_tolerance
        )

    @property
    def continuity_ok(self) -> bool:
        return self.continuity_residual <= self.declared_modulus

    @property
    def passed(self) -> bool:
        return self.corners_ok and self.continuity_ok

    def residuals(self) -> dict[str, float]:
        return {
            "corner_upper": self.corner_upper_residual,
            "corner_lower": self.corner_lower_residual,
            "arc_continuity": self.continuity_residual,
        }


def validate(symbol: ExtendedSymbol) -> ValidationReport:
    """Report-only diagnostic of the corner-matching and continuity invariants."""
    up, lo = symbol.corner_residuals()
    return ValidationReport(
        corner_upper_residual=up,
        corner_lower_residual=lo,
        continuity_residual=symbol.classical.continuity_residual(),
        declared_modulus=symbol.classical.modulus,
    )


# ---------------------------------------------------------------------------
# algebra operations
# ---------------------------------------------------------------------------


def compose(s1: ExtendedSymbol, s2: ExtendedSymbol) -> ExtendedSymbol:
    """Hemispheres compose in their own algebras; the arc multiplies pointwise."""
    return ExtendedSymbol(
        element_product(s1.upper, s2.upper),
        element_product(s1.lower, s2.lower),
        s1.classical * s2.classical,
    )


@dataclass(frozen=True)
class InvertibilityCertificate:
    delta: float
    orders: tuple[int, int]
    classical_min: float
    upper_min_singular: tuple[float, float]
    lower_min_singular: tuple[float, float]

    @property
    def passed(self) -> bool:
        return (
            self.classical_min > self.delta
            and all(s > self.delta for s in self.upper_min_singular)
            and all(s > self.delta for s in self.lower_min_singular)
        )

    def failing_component(self) -> str | None:
        if self.classical_min <= self.delta:
            return "classical"
        if not all(s > self.delta for s in self.upper_min_singular):
            return "upper"
        if not all(s > self.delta for s in self.lower_min_singular):
            return "lower"
        return None


def is_invertible(
    symbol: ExtendedSymbol, delta: float = DEFAULT_DELTA
) -> tuple[bool, InvertibilityCertificate]:
    """Certificate: arc bounded below and hemispheres stably invertible.

    The hemisphere matrices are rebuilt at orders N and N + 4; disagreement
    of the two verdicts raises :class:`UnstableCertificate`.
    """
    trunc = symbol.trunc
    bigger = build_truncation(trunc.n, trunc.N + STABILITY_STRIDE)
    cert = InvertibilityCertificate(
        delta=delta,
        orders=(trunc.N, bigger.N),
        classical_min=symbol.classical.min_modulus(),
        upper_min_singular=(
            symbol.upper.min_singular(),
            symbol.upper.min_singular(bigger),
        ),
        lower_min_singular=(
            symbol.lower.min_singular(),
            symbol.lower.min_singular(bigger),
        ),
    )
    for name, pair in (
        ("upper", cert.upper_min_singular),
        ("lower", cert.lower_min_singular),
    ):
        if (pair[0] > delta) != (pair[1] > delta):
            raise UnstableCertificate(
                f"{name} hemisphere verdict flips between orders {cert.orders}: "
                f"min singular values {pair[0]:.3e} vs {pair[1]:.3e} at delta {delta:.0e}"
            )
    return cert.passed, cert


def inverse(symbol: ExtendedSymbol, delta: float = DEFAULT_DELTA) -> ExtendedSymbol:
    ok, cert = is_invertible(symbol, delta)
    if not ok:
        comp = cert.failing_component() or "unknown"
        raise NotInvertible(comp, f"certificate minimum at delta {delta:.0e}")
    return ExtendedSymbol(
        element_inverse(symbol.upper),
        element_inverse(symbol.lower),
        symbol.classical.reciprocal(),
    )


def _parity(trunc: FockTruncation) -> np.ndarray:
    return np.diag((-1.0) ** np.array([sum(k) for k in trunc.basis]))


def dagger(symbol: ExtendedSymbol) -> ExtendedSymbol:
    """The transpose involution: reflect the full fiber variable.

    Swaps hemispheres with the fiber reflected (parity-conjugated
    transpose), and pulls the arc back by the antipodal map with the
    t-axis reversed.  Involutive and anti-multiplicative; negates the
    Fredholm index of stabilized families.
    """
    P = _parity(symbol.trunc)
    up = WeylElement(
        +1,
        symbol.lower.boundary.antipode(),
        FockOperator(symbol.trunc, P @ symbol.lower.finite.entries.T @ P),
    )
    lo = WeylElement(
        -1,
        symbol.upper.boundary.antipode(),
        FockOperator(symbol.trunc, P @ symbol.upper.finite.entries.T @ P),
    )
    return ExtendedSymbol(up, lo, symbol.classical.antipode_theta().flip_t())


def op_involution(symbol: ExtendedSymbol) -> ExtendedSymbol:
    """Swap hemispheres with the fiber variable unchanged; flip the arc in t."""
    up = WeylElement(
        +1, symbol.lower.boundary, FockOperator(symbol.trunc, symbol.lower.finite.entries.T)
    )
    lo = WeylElement(
        -1, symbol.upper.boundary, FockOperator(symbol.trunc, symbol.upper.finite.entries.T)
    )
    return ExtendedSymbol(up, lo, symbol.classical.flip_t())


# ---------------------------------------------------------------------------
# homotopy from dagger to op
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomotopyPath:
    ts: np.ndarray
    symbols: list = field(repr=False)
    certificates: list = field(repr=False)
    endpoint_op_residual: float = 0.0
    endpoint_dagger_residual: float = 0.0

    def all_positive(self) -> bool:
        return all(c.passed for c in self.certificates)


def _rotate_symbol(symbol: ExtendedSymbol, t: float) -> ExtendedSymbol:
    """The path sample: precompose with (rotation by pi*t) + (N reflection)."""
    trunc = symbol.trunc
    phi = math.pi * t
    U = metaplectic_rotation(phi, trunc).entries
    Uinv = np.conj(U)
    A = symbol.upper.represented()
    B = symbol.lower.represented()
    up = element_from_matrix(
        +1, symbol.lower.boundary.rotate(phi), U @ B.T @ Uinv, trunc
    )
    lo = element_from_matrix(
        -1, symbol.upper.boundary.rotate(phi), Uinv @ A.T @ U, trunc
    )
    return ExtendedSymbol(up, lo, symbol.classical.rotate_theta(phi).flip_t())


def homotopy_dagger_to_op(
    symbol: ExtendedSymbol, steps: int = 101, delta: float = DEFAULT_DELTA
) -> HomotopyPath:
    """Sample the rotation path joining op(symbol) (t=0) to dagger(symbol) (t=1).

    Every sample is certified invertible; a failing sample raises
    :class:`PathDegenerate`.  Endpoint residuals against the exact
    involutions are reported (sample-exact up to rounding).
    """
    ok, cert = is_invertible(symbol, delta)
    if not ok:
        raise NotInvertible(cert.failing_component() or "unknown", "homotopy input")
    ts = np.linspace(0.0, 1.0, steps)
    samples = []
    certs = []
    for i, t in enumerate(ts):
        s_t = _rotate_symbol(symbol, float(t))
        try:
            ok_t, cert_t = is_invertible(s_t, delta)
        except UnstableCertificate as exc:
            raise PathDegenerate(f"sample t={t:.3f}: {exc}") from exc
        if not ok_t:
            raise PathDegenerate(
                f"sample t={t:.3f} fails invertibility ({cert_t.failing_component()})"
            )
        samples.append(s_t)
        certs.append(cert_t)
    return HomotopyPath(
        ts=ts,
        symbols=samples,
        certificates=certs,
        endpoint_op_residual=symbol_distance(samples[0], op_involution(symbol)),
        endpoint_dagger_residual=symbol_distance(samples[-1], dagger(symbol)),
    )


# ---------------------------------------------------------------------------
# symmetrization and Hermite reduction
# ---------------------------------------------------------------------------


def symmetrize_tilde(symbol: ExtendedSymbol, delta: float = DEFAULT_DELTA) -> ExtendedSymbol:
    """Extend the lower half to an op-symmetric symbol.

    Keeps the lower hemisphere and the t <= 0 samples (the t = 0 slice is
    shared; the reflected copy agrees there by construction), re-reads the
    lower hemisphere in the upper algebra, and mirrors the arc.
    """
    low = symbol.lower
    bigger = build_truncation(symbol.trunc.n, symbol.trunc.N + STABILITY_STRIDE)
    pair = (low.min_singular(), low.min_singular(bigger))
    arc_lower_min = float(
        np.min(np.abs(symbol.classical.values[:, : symbol.classical.values.shape[1] // 2 + 1]))
    )
    if not all(s > delta for s in pair) or arc_lower_min <= delta:
        raise LowerHalfNotInvertible(
            f"lower-half certificate failed: min singular {min(pair):.3e}, "
            f"arc minimum {arc_lower_min:.3e} at delta {delta:.0e}"
        )
    up = WeylElement(+1, low.boundary, FockOperator(symbol.trunc, low.finite.entries.T))
    vals = symbol.classical.values
    T = vals.shape[1]
    half = T // 2
    mirrored = np.concatenate([vals[:, : half + 1], vals[:, :half][:, ::-1]], axis=1)
    return ExtendedSymbol(up, low, ClassicalArc(mirrored, symbol.classical.modulus))


@dataclass(frozen=True)
class CornerHomotopyCertificate:
    """Invertibility of the arc path joining the corner circle function to 1."""

    slice_minima: np.ndarray
    delta: float

    @property
    def passed(self) -> bool:
        return bool(np.all(self.slice_minima > self.delta))


@dataclass(frozen=True)
class HermiteReduction:
    tau_plus: WeylElement
    certificate: CornerHomotopyCertificate
    tau: ExtendedSymbol
    lower_identity_residual: float
    lower_arc_exact: bool


def hermite_reduction(
    symbol: ExtendedSymbol, delta: float = DEFAULT_DELTA
) -> HermiteReduction:
    """Divide out the op-symmetric extension: tau = symbol o tilde^{-1}.

    The result is identically 1 on the lower half; its upper component is
    the hemisphere quotient upper #+ lower^{-1}.  The returned certificate
    verifies that the corner circle function is joined to 1 through
    invertibles by the arc restricted to t >= 0.
    """
    ok, cert = is_invertible(symbol, delta)
    if not ok:
        raise NotInvertible(cert.failing_component() or "unknown", "hermite reduction input")
    tilde = symmetrize_tilde(symbol, delta)
    tau = compose(symbol, inverse(tilde, delta))
    dim = symbol.trunc.dim
    lower_res = float(np.max(np.abs(tau.lower.represented() - np.eye(dim))))
    if lower_res > 1e-8:
        raise NotInvertible("lower", f"reduction lower residual {lower_res:.3e}")
    T = tau.classical.values.shape[1]
    half = T // 2
    lower_arc = tau.classical.values[:, : half + 1]
    lower_arc_exact = bool(np.all(lower_arc == 1.0))
    upper_arc = tau.classical.values[:, half:]
    minima = np.min(np.abs(upper_arc), axis=0)
    corner_cert = CornerHomotopyCertificate(slice_minima=minima, delta=delta)
    if not corner_cert.passed:
        raise CornerNotNullhomotopic(
            f"corner-to-identity arc dips to {float(minima.min()):.3e} at delta {delta:.0e}"
        )
    return HermiteReduction(
        tau_plus=tau.upper,
        certificate=corner_cert,
        tau=tau,
        lower_identity_residual=lower_res,
        lower_arc_exact=lower_arc_exact,
    )
