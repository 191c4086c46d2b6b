"""Complex-coefficient polynomials in the Chebyshev basis on [-1, 1].

The Chebyshev basis is used everywhere; monomial coefficients are far worse
conditioned on [-1, 1] and are never stored.  This module supplies the
polynomial arithmetic the rest of the package needs: Lagrange fundamental
polynomials over a node set, conversion of Lagrange combinations into
Chebyshev coefficients, sup-norm estimation over [-1, 1], and bracketed
bisection for real roots.
"""

from dataclasses import dataclass

import numpy as np
import numpy.polynomial.chebyshev as cheb

_BISECT_WIDTH = 1e-14
_GOLDEN_WIDTH = 1e-12
_REAL_COEFF_TOL = 1e-13


class ChebPoly:
    """Polynomial sum_k c[k] T_k(z) with complex coefficients c."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        nz = np.nonzero(c)[0]
        # drop exactly-zero trailing coefficients; the zero polynomial keeps [0]
        self.coeffs = c[: nz[-1] + 1].copy() if nz.size else np.zeros(1, dtype=complex)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return bool(np.all(self.coeffs == 0))

    def __call__(self, z):
        return cheb.chebval(z, self.coeffs)

    def __repr__(self):
        return f"ChebPoly({self.coeffs.tolist()})"

    def scaled(self, factor):
        return ChebPoly(self.coeffs * factor)

    def reflected(self):
        """The polynomial p(-z); flips the sign of odd Chebyshev coefficients."""
        signs = (-1.0) ** np.arange(len(self.coeffs))
        return ChebPoly(self.coeffs * signs)

    def coeffs_padded(self, length):
        if length < len(self.coeffs):
            raise ValueError("cannot pad below current length")
        return np.pad(self.coeffs, (0, length - len(self.coeffs)))

    def max_imag_coeff(self):
        return float(np.abs(self.coeffs.imag).max())

    def is_real_on_real(self, tol=_REAL_COEFF_TOL):
        return self.max_imag_coeff() <= tol

    def to_json(self):
        return {
            "basis": "chebyshev",
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data):
        if data.get("basis") != "chebyshev":
            raise ValueError(f"unsupported basis {data.get('basis')!r}")
        return cls([complex(re, im) for re, im in data["coeffs"]])


def as_nodes(nodes):
    """Validate and return a node set: >= 2 strictly increasing reals in [-1, 1]."""
    x = np.atleast_1d(np.asarray(nodes, dtype=float))
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need at least 2 nodes")
    if x[0] < -1.0 or x[-1] > 1.0:
        raise ValueError(f"nodes must lie in [-1, 1], got range [{x[0]}, {x[-1]}]")
    if np.any(np.diff(x) <= 0):
        raise ValueError("nodes must be strictly increasing")
    return x


def lagrange_eval(nodes, i, z):
    """The i-th fundamental Lagrange polynomial at z:

        l_i(z) = prod_{j != i} (z - x_j) / (x_i - x_j),

    so that l_i(x_j) = delta_ij.  z may be a scalar or array.
    """
    x = as_nodes(nodes)
    if not 0 <= i < len(x):
        raise IndexError(f"node index {i} out of range for {len(x)} nodes")
    out = 1.0 + 0 * z
    for j in range(len(x)):
        if j != i:
            out = out * (z - x[j]) / (x[i] - x[j])
    return out


def lagrange_values(nodes, z):
    """All fundamental Lagrange polynomials l_0(z), ..., l_n(z) at a scalar z.

    Uses the pairwise-ratio product, which never divides by z - x_j and is
    therefore exact (up to rounding) even when z coincides with a node.
    """
    x = as_nodes(nodes)
    ratios = (z - x[None, :]) / (x[:, None] - x[None, :] + np.eye(len(x)))
    np.fill_diagonal(ratios, 1.0)
    return ratios.prod(axis=1)


def from_lagrange_combination(nodes, coefficients):
    """Chebyshev coefficients of sum_i c_i l_i(z), i.e. the polynomial of
    degree <= n interpolating the values c_i at the nodes x_i."""
    x = as_nodes(nodes)
    c = np.atleast_1d(np.asarray(coefficients, dtype=complex))
    if c.shape != x.shape:
        raise ValueError(f"expected {len(x)} coefficients, got {len(c)}")
    V = cheb.chebvander(x, len(x) - 1)
    return ChebPoly(np.linalg.solve(V, c))


@dataclass(frozen=True)
class SupNormEstimate:
    """max |p| over [-1, 1] plus where it is (nearly) attained."""

    value: float
    argmax: float
    near_extreme_points: list


def _golden_max(f, lo, hi, width=_GOLDEN_WIDTH):
    """Golden-section search for the maximum of f on [lo, hi]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > width:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def sup_norm_interval(p, near_tol=1e-9):
    """Estimate max_{x in [-1,1]} |p(x)| for a ChebPoly.

    Samples |p|^2 on a Chebyshev-spaced grid of max(1024, 32*deg) points,
    refines every interior grid local maximum by golden-section search, and
    always includes the endpoints +-1 as exact candidates.  Points within
    near_tol of the maximum modulus are reported as near-extreme.
    """
    if not isinstance(p, ChebPoly):
        p = ChebPoly(p)
    if p.is_zero():
        raise ValueError("sup norm of the zero polynomial is not estimated")

    npts = max(1024, 32 * p.degree)
    grid = np.cos(np.linspace(np.pi, 0.0, npts))
    vals = np.abs(p(grid)) ** 2

    def f(x):
        v = p(x)
        return (v * v.conjugate()).real

    candidates = [(-1.0, f(-1.0)), (1.0, f(1.0))]
    interior = np.nonzero(
        (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    )[0] + 1
    for j in interior:
        candidates.append(_golden_max(f, grid[j - 1], grid[j + 1]))

    candidates.sort(key=lambda t: t[0])
    merged = []
    for x, v in candidates:
        if merged and x - merged[-1][0] < 1e-9:
            if v > merged[-1][1]:
                merged[-1] = (x, v)
        else:
            merged.append((x, v))

    best_x, best_v = max(merged, key=lambda t: t[1])
    value = float(np.sqrt(best_v))
    near = [float(x) for x, v in merged if np.sqrt(v) >= value - near_tol]
    return SupNormEstimate(value=value, argmax=float(best_x), near_extreme_points=near)


def real_roots_bracketed(p, brackets):
    """One real root per sign-changing bracket, by plain bisection.

    p must be real-valued on the real axis (imaginary parts of the Chebyshev
    coefficients below 1e-13).  Each bracket (lo, hi) must satisfy
    p(lo) * p(hi) < 0; bisection then shrinks it to width <= 1e-14.
    Returns the roots in strictly increasing order.
    """
    if not isinstance(p, ChebPoly):
        p = ChebPoly(p)
    if not p.is_real_on_real():
        raise ValueError(
            f"polynomial is not real on the real axis "
            f"(max imaginary coefficient {p.max_imag_coeff():.3e})"
        )
    c = p.coeffs.real

    def f(x):
        return cheb.chebval(x, c)

    roots = []
    for k, (lo, hi) in enumerate(brackets):
        lo, hi = float(lo), float(hi)
        if not lo < hi:
            raise ValueError(f"bracket {k} is not an interval: ({lo}, {hi})")
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            roots.append(lo)
            continue
        if fhi == 0.0:
            roots.append(hi)
            continue
        if flo * fhi > 0:
            raise ValueError(
                f"bracket {k} = ({lo}, {hi}) has no sign change: "
                f"p(lo) = {flo:.6e}, p(hi) = {fhi:.6e}"
            )
        while hi - lo > _BISECT_WIDTH:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            fm = f(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if flo * fm < 0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
        roots.append(0.5 * (lo + hi))

    roots.sort()
    if np.any(np.diff(roots) <= 0):
        raise ValueError("brackets produced non-distinct roots")
    return np.asarray(roots)
