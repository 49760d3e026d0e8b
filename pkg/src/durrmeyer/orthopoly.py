"""Orthonormal polynomial eigenbasis, projections, partial sums, Cesaro means.

Functions are represented blockwise by total degree: block ell spans the
degree-ell eigenspace of the Durrmeyer operator, so every operator downstream
acts on a coefficient vector by scalar factors per block.  Any orthonormal
basis of each block works for that purpose.

On [0,1] the basis comes from the classical three-term recurrence whose
coefficients are generated by a discretized Stieltjes sweep over an exact
Gauss-Jacobi rule.  On the triangle we use a Koornwinder-style product basis;
the inner factor is kept in homogenized form so evaluation has no division
by 1 - x1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_jacobi_rule, interval_rule, simplex_rule_2d
from .spectrum import WeightConfig

_DEFAULT_BAND = {1: 64, 2: 24}


def default_band(cfg: WeightConfig) -> int:
    """Spectral truncation degree used when callers do not pick one."""
    return _DEFAULT_BAND[cfg.d]


def block_size(cfg: WeightConfig, ell) -> int:
    return 1 if cfg.d == 1 else ell + 1


@dataclass(frozen=True)
class SpectralCoefficients:
    """Coefficients of a function against the orthonormal degree basis.

    blocks[ell] holds the degree-ell coefficients: one number for d = 1,
    ell + 1 numbers for d = 2.  Instances are immutable; arithmetic returns
    new objects and requires matching weight config and band.
    """

    cfg: WeightConfig
    blocks: tuple

    def __post_init__(self):
        cleaned = []
        for ell, block in enumerate(self.blocks):
            arr = np.array(block, dtype=float, copy=True).reshape(-1)
            if arr.shape[0] != block_size(self.cfg, ell):
                raise ValueError(
                    "block %d must have %d entries, got %d"
                    % (ell, block_size(self.cfg, ell), arr.shape[0]))
            arr.flags.writeable = False
            cleaned.append(arr)
        if not cleaned:
            raise ValueError("need at least the degree-0 block")
        object.__setattr__(self, "blocks", tuple(cleaned))

    @property
    def max_degree(self) -> int:
        return len(self.blocks) - 1

    @classmethod
    def zeros(cls, cfg, L):
        return cls(cfg, tuple(np.zeros(block_size(cfg, ell))
                              for ell in range(L + 1)))

    @classmethod
    def from_flat(cls, cfg, values):
        """Rebuild blocks from a flat vector ordered by degree."""
        values = np.asarray(values, dtype=float).reshape(-1)
        blocks, pos, ell = [], 0, 0
        while pos < values.size:
            size = block_size(cfg, ell)
            if pos + size > values.size:
                raise ValueError("flat vector length does not fill block %d" % ell)
            blocks.append(values[pos:pos + size])
            pos += size
            ell += 1
        return cls(cfg, tuple(blocks))

    def flat(self) -> np.ndarray:
        return np.concatenate(self.blocks)

    def block_norms(self) -> np.ndarray:
        """Euclidean norm of each degree block."""
        return np.array([np.sqrt(np.dot(b, b)) for b in self.blocks])

    def norm2(self) -> float:
        """L2 norm against the weight, by Parseval."""
        flat = self.flat()
        return float(np.sqrt(np.dot(flat, flat)))

    def scaled(self, factors) -> "SpectralCoefficients":
        """Multiply block ell by factors[ell]."""
        factors = np.asarray(factors, dtype=float)
        if factors.shape != (len(self.blocks),):
            raise ValueError("need one factor per block")
        return SpectralCoefficients(
            self.cfg, tuple(f * b for f, b in zip(factors, self.blocks)))

    def _binary(self, other, op):
        if not isinstance(other, SpectralCoefficients):
            return NotImplemented
        if other.cfg != self.cfg or other.max_degree != self.max_degree:
            raise ValueError("operands differ in weight config or band")
        return SpectralCoefficients(
            self.cfg, tuple(op(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return SpectralCoefficients(self.cfg, tuple(scalar * b for b in self.blocks))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def _stieltjes_recurrence(nodes, weights, L):
    """Monic three-term recurrence coefficients from a discrete measure.

    Returns (a, b) with b[0] the total mass; exact when the quadrature
    integrates degree 2L+1.
    """
    a = np.empty(L + 1)
    b = np.empty(L + 1)
    p_prev = np.zeros_like(nodes)
    p_cur = np.ones_like(nodes)
    norm_prev = 1.0
    for k in range(L + 1):
        norm_cur = np.dot(weights, p_cur * p_cur)
        if norm_cur <= 0.0:
            raise ArithmeticError("lost positivity in Stieltjes sweep at k=%d" % k)
        a[k] = np.dot(weights, nodes * p_cur * p_cur) / norm_cur
        b[k] = norm_cur if k == 0 else norm_cur / norm_prev
        p_next = (nodes - a[k]) * p_cur
        if k > 0:
            p_next -= b[k] * p_prev
        p_prev, p_cur, norm_prev = p_cur, p_next, norm_cur
    return a, b


class IntervalBasis:
    """Orthonormal polynomials on [0,1] for the weight x^a1 (1-x)^a2."""

    def __init__(self, cfg: WeightConfig, L):
        if cfg.d != 1:
            raise ValueError("IntervalBasis needs d = 1")
        self.cfg = cfg
        self.L = int(L)
        rule = gauss_jacobi_rule(cfg.alphas[0], cfg.alphas[1], self.L + 2)
        self._rec_a, rec_b = _stieltjes_recurrence(rule.nodes, rule.weights, self.L)
        self._rec_sqb = np.sqrt(rec_b)
        self.size = self.L + 1

    def eval_all(self, x) -> np.ndarray:
        """Matrix of basis values, shape (npoints, L+1)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty((x.size, self.L + 1))
        a, sqb = self._rec_a, self._rec_sqb
        out[:, 0] = 1.0 / sqb[0]
        if self.L >= 1:
            out[:, 1] = (x - a[0]) * out[:, 0] / sqb[1]
        for k in range(1, self.L):
            out[:, k + 1] = ((x - a[k]) * out[:, k] - sqb[k] * out[:, k - 1]) / sqb[k + 1]
        return out

    def flat_index(self, ell, j):
        if not 0 <= ell <= self.L:
            raise ValueError("degree index out of range")
        if j != 0:
            raise ValueError("d = 1 blocks have a single basis polynomial")
        return ell


def _jacobi_recurrence_terms(m, A, B):
    """Coefficients of P_{m+1} = ((c2 + c3 u) P_m - c4 P_{m-1}) / c1, m >= 1."""
    s = 2.0 * m + A + B
    c1 = 2.0 * (m + 1.0) * (m + A + B + 1.0) * s
    c2 = (s + 1.0) * (A * A - B * B)
    c3 = s * (s + 1.0) * (s + 2.0)
    c4 = 2.0 * (m + A) * (m + B) * (s + 2.0)
    return c1, c2, c3, c4


class TriangleBasis:
    """Orthonormal total-degree basis on the triangle for d = 2 weights.

    phi_{ell,j} is built as an outer Jacobi polynomial in x1 times a
    homogenized Jacobi factor in (1-x1, x2) of degree j; the blocks are
    mutually orthogonal by construction and normalization constants come
    from an exact simplex rule.
    """

    def __init__(self, cfg: WeightConfig, L):
        if cfg.d != 2:
            raise ValueError("TriangleBasis needs d = 2")
        self.cfg = cfg
        self.L = int(L)
        self.size = (self.L + 1) * (self.L + 2) // 2
        rule = simplex_rule_2d(cfg, 2 * self.L + 2)
        raw = self._eval_raw(rule.nodes)
        norms = np.sqrt(np.einsum("q,qb,qb->b", rule.weights, raw, raw))
        if np.any(norms <= 0.0):
            raise ArithmeticError("nonpositive basis norm on the triangle")
        self._inv_norms = 1.0 / norms

    def flat_index(self, ell, j):
        if not 0 <= ell <= self.L:
            raise ValueError("degree index out of range")
        if not 0 <= j <= ell:
            raise ValueError("intra-degree index out of range")
        return ell * (ell + 1) // 2 + j

    def _eval_raw(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        x1, x2 = pts[:, 0], pts[:, 1]
        a1, a2, a3 = self.cfg.alphas
        npts, L = x1.size, self.L

        # homogenized inner factors R_j(s, y) = s^j P_j^{(a3,a2)}(2y/s - 1)
        s = 1.0 - x1
        v = 2.0 * x2 - s
        inner = np.empty((L + 1, npts))
        inner[0] = 1.0
        if L >= 1:
            inner[1] = 0.5 * (a3 + a2 + 2.0) * v + 0.5 * (a3 - a2) * s
        for j in range(1, L):
            c1, c2, c3, c4 = _jacobi_recurrence_terms(j, a3, a2)
            inner[j + 1] = ((c2 * s + c3 * v) * inner[j]
                            - c4 * (s * s) * inner[j - 1]) / c1

        u = 2.0 * x1 - 1.0
        out = np.empty((npts, self.size))
        for j in range(L + 1):
            A = 2.0 * j + a2 + a3 + 1.0
            B = a1
            p_prev = np.zeros(npts)
            p_cur = np.ones(npts)
            for m in range(L - j + 1):
                out[:, self.flat_index(j + m, j)] = p_cur * inner[j]
                if m == 0:
                    p_next = (0.5 * (A + B + 2.0) * u + 0.5 * (A - B)) * p_cur
                else:
                    c1, c2, c3, c4 = _jacobi_recurrence_terms(m, A, B)
                    p_next = ((c2 + c3 * u) * p_cur - c4 * p_prev) / c1
                p_prev, p_cur = p_cur, p_next
        return out

    def eval_all(self, pts) -> np.ndarray:
        """Matrix of basis values, shape (npoints, (L+1)(L+2)/2)."""
        return self._eval_raw(pts) * self._inv_norms


_BASIS_CACHE: dict = {}


def get_basis(cfg: WeightConfig, L):
    """Basis table for (cfg, L), built once and shared."""
    key = (cfg, int(L))
    basis = _BASIS_CACHE.get(key)
    if basis is None:
        basis = IntervalBasis(cfg, L) if cfg.d == 1 else TriangleBasis(cfg, L)
        _BASIS_CACHE[key] = basis
    return basis


def basis_eval(cfg: WeightConfig, ell, j, x):
    """Value of the j-th orthonormal basis polynomial of degree ell."""
    ell, j = int(ell), int(j)
    if ell < 0:
        raise ValueError("degree index must be >= 0")
    basis = get_basis(cfg, max(ell, default_band(cfg)))
    col = basis.flat_index(ell, j)
    if cfg.d == 1:
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        vals = basis.eval_all(x_arr)[:, col]
        return float(vals[0]) if np.ndim(x) == 0 else vals
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    vals = basis.eval_all(pts.reshape(-1, 2))[:, col]
    return float(vals[0]) if single else vals


def projection_rule(cfg: WeightConfig, L, f_degree=None, splits=()):
    """Quadrature rule adequate for projecting f onto degrees <= L.

    For polynomial f pass its degree; for functions with interior kinks pass
    the kink locations so each smooth piece gets its own panel.
    """
    fdeg = int(f_degree) if f_degree is not None else int(L) + 40
    need = int(L) + fdeg + 8
    if cfg.d == 1:
        return interval_rule(cfg.alphas, need, splits=tuple(splits))
    return simplex_rule_2d(cfg, need)


def project(f, cfg: WeightConfig, L, rule=None) -> SpectralCoefficients:
    """Coefficients of f against the orthonormal basis up to degree L.

    f may be a plain callable on the domain or a test-function object with
    optional `degree` and `kinks` attributes, which steer the default rule.
    """
    if rule is None:
        rule = projection_rule(cfg, L, getattr(f, "degree", None),
                               tuple(getattr(f, "kinks", ()) or ()))
    basis = get_basis(cfg, L)
    vals = np.asarray(f(rule.nodes), dtype=float)
    if vals.shape != (rule.weights.size,):
        raise ValueError("test function returned a wrong-shaped value array")
    flat = basis.eval_all(rule.nodes).T @ (rule.weights * vals)
    return SpectralCoefficients.from_flat(cfg, flat)


def synthesize(coeffs: SpectralCoefficients, x):
    """Point values of the function with the given coefficients."""
    basis = get_basis(coeffs.cfg, coeffs.max_degree)
    if coeffs.cfg.d == 1:
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        vals = basis.eval_all(x_arr) @ coeffs.flat()
        return float(vals[0]) if np.ndim(x) == 0 else vals
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    vals = basis.eval_all(pts.reshape(-1, 2)) @ coeffs.flat()
    return float(vals[0]) if single else vals


def _check_truncation(coeffs, n):
    n = int(n)
    if not 0 <= n <= coeffs.max_degree:
        raise ValueError(
            "truncation degree %d outside the stored band 0..%d"
            % (n, coeffs.max_degree))
    return n


def partial_sum(coeffs: SpectralCoefficients, n) -> SpectralCoefficients:
    """Truncation to degrees <= n; blocks above n are zeroed."""
    n = _check_truncation(coeffs, n)
    factors = np.zeros(coeffs.max_degree + 1)
    factors[:n + 1] = 1.0
    return coeffs.scaled(factors)


def cesaro_factors(n, ells) -> np.ndarray:
    """First-order Cesaro damping (n+1-ell)/(n+1), zero above ell = n."""
    ells = np.asarray(ells, dtype=float)
    return np.clip((n + 1.0 - ells) / (n + 1.0), 0.0, None)


def cesaro_mean(coeffs: SpectralCoefficients, n) -> SpectralCoefficients:
    """Average of the partial sums S_0..S_n, in closed form per block."""
    n = _check_truncation(coeffs, n)
    return coeffs.scaled(cesaro_factors(n, np.arange(coeffs.max_degree + 1)))
