"""Gauss-Jacobi rules on [0,1], tensorized simplex rules for d = 2, weighted
Lp norms, and the dense grids used for sup norms.

Rule weights always include the Jacobi weight itself, so integrating f against
the weighted measure is a plain dot product with f at the nodes.  Univariate
rules come from the Golub-Welsch eigenproblem (scipy's Jacobi nodes, mapped to
[0,1]); the simplex rule is the standard substitution x2 = t (1 - x1), which
turns the weighted triangle integral into a product of two univariate Jacobi
integrals with the extra (1-x1) factor absorbed into the outer exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .specfun import log_gamma
from .spectrum import WeightConfig

__all__ = [
    "ConstructionError",
    "QuadratureRule",
    "gauss_jacobi_rule",
    "interval_rule",
    "simplex_rule_2d",
    "lp_norm",
    "sup_grid",
    "sup_grid_2d",
    "weight_mass",
]


class ConstructionError(RuntimeError):
    """Raised when the underlying eigen-solver fails to build a rule."""


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray            # (m,) on [0,1] for d=1, (m,2) in the triangle for d=2
    weights: np.ndarray          # (m,), positive, Jacobi weight included
    exact_degree: int            # polynomials up to this total degree are exact
    weight_tag: tuple = field(default=(1, (0.0, 0.0)))  # (d, alphas)

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)


def weight_mass(alphas) -> float:
    """Total mass of the Jacobi weight: the Dirichlet integral
    prod Gamma(a_i + 1) / Gamma(sum (a_i + 1))."""
    alphas = tuple(float(a) for a in alphas)
    num = sum(log_gamma(a + 1.0) for a in alphas)
    return float(np.exp(num - log_gamma(sum(alphas) + len(alphas))))


def _check_exponent(a, name):
    a = float(a)
    if a <= -1.0:
        raise ValueError(f"{name} must be > -1")
    return a


def gauss_jacobi_rule(a, b, m) -> QuadratureRule:
    """m-node Gauss rule on [0,1] for the weight x^a (1-x)^b, exact through
    degree 2m - 1."""
    a = _check_exponent(a, "a")
    b = _check_exponent(b, "b")
    if int(m) != m or m < 1:
        raise ValueError("node count m must be a positive integer")
    m = int(m)
    try:
        # scipy weight is (1-x)^alpha (1+x)^beta on [-1,1]; our x^a maps to
        # the (1+x) factor and (1-x)^b to the (1-x) factor.
        t, w = roots_jacobi(m, b, a)
    except Exception as exc:  # pragma: no cover - solver failure path
        raise ConstructionError(f"Jacobi eigen-solver failed: {exc}") from exc
    nodes = 0.5 * (t + 1.0)
    weights = w * 2.0 ** (-(a + b + 1.0))
    return QuadratureRule(nodes, weights, 2 * m - 1, (1, (a, b)))


def interval_rule(alphas, m, splits=()) -> QuadratureRule:
    """Composite rule on [0,1] for the weight x^a1 (1-x)^a2, subdivided at the
    interior points in `splits` (kinks or jumps of the integrand).

    Each outer piece keeps its endpoint singularity exact via a mapped Jacobi
    rule; the weight factor belonging to the far endpoint is smooth on the
    piece and is folded into the weights pointwise.  With exponents (0, 0) the
    composite rule is exact for piecewise polynomials of degree <= 2m-1.
    """
    a1, a2 = (_check_exponent(v, "alpha") for v in alphas)
    splits = tuple(sorted(float(s) for s in splits))
    if any(not 0.0 < s < 1.0 for s in splits):
        raise ValueError("split points must be interior to (0, 1)")
    if not splits:
        return gauss_jacobi_rule(a1, a2, m)
    edges = (0.0,) + splits + (1.0,)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        length = hi - lo
        pa = a1 if lo == 0.0 else 0.0
        pb = a2 if hi == 1.0 else 0.0
        base = gauss_jacobi_rule(pa, pb, m)
        x = lo + length * base.nodes
        w = base.weights * length ** (pa + pb + 1.0)
        # fold in the weight factors not represented by the piece rule
        if lo != 0.0:
            w = w * x ** a1
        if hi != 1.0:
            w = w * (1.0 - x) ** a2
        nodes.append(x)
        weights.append(w)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights),
                          2 * m - 1, (1, (a1, a2)))


def simplex_rule_2d(cfg: WeightConfig, m) -> QuadratureRule:
    """Tensor rule on the triangle {x1, x2 >= 0, x1 + x2 <= 1}, exact for
    total degree <= m against the weight x1^a1 x2^a2 (1-x1-x2)^a3."""
    if cfg.d != 2:
        raise ValueError("simplex_rule_2d needs a d = 2 weight config")
    if int(m) != m or m < 0:
        raise ValueError("target degree m must be a nonnegative integer")
    m = int(m)
    a1, a2, a3 = cfg.alphas
    nodes_1d = m // 2 + 1
    outer = gauss_jacobi_rule(a1, a2 + a3 + 1.0, nodes_1d)
    inner = gauss_jacobi_rule(a2, a3, nodes_1d)
    s = outer.nodes[:, None]
    t = inner.nodes[None, :]
    x1 = np.broadcast_to(s, (nodes_1d, nodes_1d)).ravel()
    x2 = (t * (1.0 - s)).ravel()
    w = (outer.weights[:, None] * inner.weights[None, :]).ravel()
    return QuadratureRule(np.column_stack([x1, x2]), w, m, (2, cfg.alphas))


def _values_on(f, points):
    if callable(f):
        vals = f(points)
    else:
        vals = f
    vals = np.asarray(vals, dtype=float)
    n_points = points.shape[0] if points.ndim > 1 else points.shape[0]
    if vals.shape != (n_points,):
        raise ValueError("function values do not match the node count")
    return vals


def lp_norm(f, rule, p, cfg: WeightConfig | None = None) -> float:
    """Weighted Lp norm of f.

    For finite p, `rule` is a QuadratureRule and the norm is
    (sum w_i |f(x_i)|^p)^(1/p).  For p = inf, pass a dense grid (an ndarray of
    points) instead of a rule; the sup norm is the max of |f| over the grid.
    """
    if p == np.inf or p == "inf":
        if isinstance(rule, QuadratureRule):
            raise ValueError("p = inf takes a dense grid, not a QuadratureRule")
        grid = np.asarray(rule, dtype=float)
        return float(np.max(np.abs(_values_on(f, grid))))
    p = float(p)
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if not isinstance(rule, QuadratureRule):
        raise ValueError("finite p needs a QuadratureRule")
    if cfg is not None and rule.weight_tag != (cfg.d, cfg.alphas):
        raise ValueError("rule weight does not match the supplied config")
    vals = np.abs(_values_on(f, rule.nodes))
    return float(np.dot(rule.weights, vals ** p) ** (1.0 / p))


_GRID_SIZE = 4097


def _chebyshev(lo, hi, count):
    k = np.arange(count, dtype=float)
    pts = 0.5 * (1.0 - np.cos(np.pi * k / (count - 1)))
    return lo + (hi - lo) * pts


def sup_grid() -> np.ndarray:
    """Fixed dense grid on [0,1] for sup norms: 4097 Chebyshev-spaced points
    with 4x extra density in a window at each endpoint."""
    base = _chebyshev(0.0, 1.0, _GRID_SIZE)
    window = base[128]
    left = _chebyshev(0.0, window, 513)
    right = 1.0 - left[::-1]
    grid = np.unique(np.concatenate([base, left, right]))
    grid.setflags(write=False)
    return grid


def sup_grid_2d() -> np.ndarray:
    """Chebyshev tensor grid clipped to the triangle, hypotenuse included."""
    g = _chebyshev(0.0, 1.0, 129)
    x1, x2 = np.meshgrid(g, g, indexing="ij")
    keep = x1 + x2 <= 1.0 + 1e-12
    pts = np.column_stack([x1[keep], x2[keep]])
    hyp = np.column_stack([g, 1.0 - g])
    grid = np.vstack([pts, hyp])
    grid.setflags(write=False)
    return grid
