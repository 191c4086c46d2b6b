"""Optimal prediction designs for an exterior point z0.

For a fixed support -1 = x_0 < ... < x_n = +1 the best weights are
w_i = |l_i(z0)| / sum_j |l_j(z0)| (Hoel-Levine), and the kernel value then
collapses to the squared Lebesgue function, K = (sum_i |l_i(z0)|)^2.  The
remaining problem is placing the n-1 interior nodes to minimize the Lebesgue
function at z0, which is done numerically here by multi-start Nelder-Mead
over log-gap coordinates.

Optimality of a candidate design is not taken on faith: the signed Lagrange
combination P = sum_i sgn(l_i(z0)) l_i (complex sign conventions such that
P(z0) is real positive) is a certificate.  If its sup-norm on [-1, 1] is 1
and |P(z0)|^2 reproduces K, the design is optimal; both checks are recorded
in a Certificate rather than asserted.
"""

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .measure import DiscreteMeasure, christoffel
from .polynomial import (
    ChebPoly,
    as_nodes,
    from_lagrange_combination,
    lagrange_values,
    sup_norm_interval,
)

_EXTERIOR_IM_TOL = 1e-12
_CERT_TOL = 1e-8
_NEAR_TOL = 1e-9


def require_exterior(z0):
    """Reject z0 on [-1, 1]; the prediction problem is exterior by definition.

    Points with |Im z0| < 1e-12 and Re z0 in [-1, 1] count as on the interval.
    """
    z0 = complex(z0)
    if abs(z0.imag) < _EXTERIOR_IM_TOL and -1.0 <= z0.real <= 1.0:
        raise ValueError(f"z0 = {z0} lies on [-1, 1]; need an exterior point")
    return z0


def _lagrange_at(nodes, z0):
    ell = lagrange_values(nodes, z0)
    if np.any(np.abs(ell) == 0.0):
        raise ValueError("some fundamental polynomial vanishes at z0")
    return ell


def hoel_levine_weights(nodes, z0):
    """Weights proportional to |l_i(z0)|; optimal among weightings of nodes."""
    x = as_nodes(nodes)
    z0 = complex(z0)
    if np.min(np.abs(z0 - x)) == 0.0:
        raise ValueError("z0 coincides with a node; weights undefined")
    moduli = np.abs(_lagrange_at(x, z0))
    return moduli / moduli.sum()


def lebesgue_at(nodes, z0):
    """Lebesgue function sum_i |l_i(z0)|; its square is K under the weights above."""
    return float(np.sum(np.abs(lagrange_values(as_nodes(nodes), complex(z0)))))


def extremal_signed_poly(nodes, z0):
    """P = sum_i sgn(l_i(z0)) l_i with the conjugate sign sgn(z) = conj(z)/|z|.

    The conjugation makes P(z0) = sum |l_i(z0)| real and positive.  On an
    optimal support this is the polynomial of extremal growth at z0.
    """
    x = as_nodes(nodes)
    z0 = complex(z0)
    if np.min(np.abs(z0 - x)) == 0.0:
        raise ValueError("z0 coincides with a node")
    ell = _lagrange_at(x, z0)
    signs = np.conj(ell) / np.abs(ell)
    return from_lagrange_combination(x, signs)


@dataclass(frozen=True)
class Certificate:
    sup_norm: float
    max_violation: float
    l2_mu_norm: float
    on_support_moduli: list
    duality_gap: float

    @property
    def certified(self):
        return self.max_violation <= _CERT_TOL and self.duality_gap <= _CERT_TOL

    def to_json(self):
        return {
            "sup_norm": self.sup_norm,
            "max_violation": self.max_violation,
            "l2_mu_norm": self.l2_mu_norm,
            "on_support_moduli": list(self.on_support_moduli),
            "duality_gap": self.duality_gap,
            "certified": self.certified,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            sup_norm=float(data["sup_norm"]),
            max_violation=float(data["max_violation"]),
            l2_mu_norm=float(data["l2_mu_norm"]),
            on_support_moduli=[float(v) for v in data["on_support_moduli"]],
            duality_gap=float(data["duality_gap"]),
        )


@dataclass(frozen=True)
class Design:
    measure: DiscreteMeasure
    z0: complex
    n: int
    K_value: float
    extremal_poly: ChebPoly
    certificate: Certificate

    def __post_init__(self):
        x = self.measure.nodes
        if len(x) != self.n + 1:
            raise ValueError(f"degree {self.n} design needs {self.n + 1} nodes")
        if x[0] != -1.0 or x[-1] != 1.0:
            raise ValueError("design support must include both endpoints -1, +1")

    @property
    def certified(self):
        return self.certificate.certified

    def to_json(self):
        return {
            "n": self.n,
            "z0": [self.z0.real, self.z0.imag],
            "nodes": self.measure.nodes.tolist(),
            "weights": self.measure.weights.tolist(),
            "K_value": self.K_value,
            "poly": self.extremal_poly.to_json(),
            "certificate": self.certificate.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            measure=DiscreteMeasure(
                np.asarray(data["nodes"], float), np.asarray(data["weights"], float)
            ),
            z0=complex(data["z0"][0], data["z0"][1]),
            n=int(data["n"]),
            K_value=float(data["K_value"]),
            extremal_poly=ChebPoly.from_json(data["poly"]),
            certificate=Certificate.from_json(data["certificate"]),
        )


def _certificate(P, mu, z0, K):
    est = sup_norm_interval(P, near_tol=_NEAR_TOL)
    moduli = np.abs(P(mu.nodes))
    l2 = float(np.sqrt(np.sum(mu.weights * moduli**2)))
    gap = float(abs(K - abs(P(z0)) ** 2) / K)
    return Certificate(
        sup_norm=est.value,
        max_violation=max(0.0, est.value - 1.0),
        l2_mu_norm=l2,
        on_support_moduli=moduli.tolist(),
        duality_gap=gap,
    )


def certify(design):
    """Measure the two optimality conditions; thresholds live in Certificate.

    sup_norm of the extremal polynomial over [-1, 1] (violation is the excess
    over 1), its L^2(mu) norm (1 by construction, recomputed not assumed),
    its moduli on the support, and the relative gap between K and |P(z0)|^2.
    """
    return _certificate(
        design.extremal_poly, design.measure, design.z0, design.K_value
    )


def design_from_support(n, z0, nodes):
    """Assemble the full Design for a given support: Hoel-Levine weights,
    Gram-route kernel value, signed extremal polynomial, certificate."""
    z0 = require_exterior(z0)
    x = as_nodes(nodes)
    if len(x) != n + 1:
        raise ValueError(f"degree {n} needs {n + 1} nodes, got {len(x)}")
    mu = DiscreteMeasure(x, hoel_levine_weights(x, z0))
    K = christoffel(mu, n, z0).value
    P = extremal_signed_poly(x, z0)
    return Design(
        measure=mu, z0=z0, n=n, K_value=K, extremal_poly=P,
        certificate=_certificate(P, mu, z0, K),
    )


@dataclass(frozen=True)
class OptimizerOptions:
    starts: int = 8
    dither: float = 0.05
    xatol: float = 1e-12
    max_evals: int = 20000
    max_restarts: int = 3
    seed: int = 0
    workers: int = field(default_factory=lambda: int(os.environ.get("OPTPRED_THREADS", "1")))


def _nodes_from_gaps(u):
    """Interior nodes from log-gap coordinates u in R^{n-1}.

    Gaps between the n+1 ordered nodes are proportional to
    (e^{u_0}, ..., e^{u_{n-2}}, 1); cumulative sums rescaled to [-1, 1] give
    nodes that are ordered by construction, so the optimizer is unconstrained.
    """
    g = np.empty(len(u) + 1)
    with np.errstate(over="ignore"):
        g[:-1] = np.exp(u)
    g[-1] = 1.0
    total = g.sum()
    if not np.isfinite(total):
        return None
    x = -1.0 + 2.0 * np.cumsum(g[:-1]) / total
    if np.any(np.diff(x) <= 0) or x[0] <= -1.0 or x[-1] >= 1.0:
        return None
    return x


def _gaps_from_nodes(interior):
    full = np.concatenate(([-1.0], interior, [1.0]))
    g = np.diff(full)
    return np.log(g[:-1] / g[-1])


def _lebesgue_objective(z0):
    def objective(u):
        interior = _nodes_from_gaps(u)
        if interior is None:
            return np.inf
        x = np.concatenate(([-1.0], interior, [1.0]))
        # barycentric form: l_i(z0) = omega(z0) * b_i / (z0 - x_i)
        diffs = x[:, None] - x[None, :]
        np.fill_diagonal(diffs, 1.0)
        b = 1.0 / diffs.prod(axis=1)
        omega = np.prod(z0 - x)
        val = np.sum(np.abs(omega * b / (z0 - x)))
        return val if np.isfinite(val) else np.inf

    return objective


def _run_start(objective, u0, opts):
    f0 = objective(u0)
    res = minimize(
        objective,
        u0,
        method="Nelder-Mead",
        options={
            "xatol": opts.xatol,
            "fatol": 1e-12 * (1.0 + f0),
            "maxfev": opts.max_evals,
            "maxiter": opts.max_evals,
        },
    )
    return res.fun, res.x


def optimize_support(n, z0, opts=None):
    """Minimize the Lebesgue function at z0 over interior node placement.

    Endpoints are pinned at -1 and +1; the n-1 interior nodes are optimized
    in log-gap coordinates by Nelder-Mead from `opts.starts` initial points
    (Chebyshev extreme points plus dithered copies).  If the best design
    fails certification, up to `opts.max_restarts` further batches of dithered
    starts are tried; a still-uncertified result is returned with a warning,
    the certificate carrying the evidence.  Deterministic for a given seed.
    """
    z0 = require_exterior(z0)
    if n < 1:
        raise ValueError("degree must be >= 1")
    if opts is None:
        opts = OptimizerOptions()
    if n == 1:
        return design_from_support(1, z0, [-1.0, 1.0])

    objective = _lebesgue_objective(z0)
    u_cheb = _gaps_from_nodes(np.cos(np.pi * np.arange(n - 1, 0, -1) / n))
    rng = np.random.default_rng(opts.seed)
    workers = max(1, opts.workers)

    best = None
    for batch in range(opts.max_restarts + 1):
        starts = [u_cheb] if batch == 0 else []
        while len(starts) < opts.starts:
            starts.append(u_cheb + opts.dither * rng.standard_normal(n - 1))

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda u: _run_start(objective, u, opts), starts))
        else:
            results = [_run_start(objective, u, opts) for u in starts]

        # deterministic merge regardless of execution order
        for fun, u in results:
            if np.isfinite(fun) and (best is None or fun < best[0]):
                best = (fun, u)
        if best is None:
            continue
        candidate = design_from_support(n, z0, np.concatenate(([-1.0], _nodes_from_gaps(best[1]), [1.0])))
        if candidate.certified:
            return candidate

    if best is None:
        raise RuntimeError("optimizer produced no finite Lebesgue value")
    warnings.warn(
        f"optimize_support(n={n}, z0={z0}): best design failed certification "
        f"after {opts.max_restarts + 1} batches "
        f"(max_violation={candidate.certificate.max_violation:.3e}, "
        f"duality_gap={candidate.certificate.duality_gap:.3e})"
    )
    return candidate
