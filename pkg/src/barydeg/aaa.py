"""Relative-error AAA with an optional relative-degree constraint.

Support points are picked greedily at the sample of largest relative error;
after each pick the barycentric weights are recomputed as the minimal
singular vector of the Loewner least-squares problem over the remaining
samples, restricted to the null space that encodes the degree constraint.
The iteration stops as soon as the freshly picked point is already matched
to tolerance by the current model, which is then returned unchanged.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    BarycentricModel,
    degree_diagnostics,
    nullspace_basis,
    solve_constrained_weights,
    support_scale,
    vandermonde,
)
from .errors import ConfigurationError
from .util import relative_errors, resolve_zero_guard

DEFAULT_MAX_TERMS = 120


@dataclass(frozen=True)
class AaaConfig:
    """Knobs for :func:`aaa`.

    ``target_degree`` is the relative degree to impose (0 recovers the
    unconstrained algorithm; negative degrees constrain the numerator
    side).  ``max_terms`` caps the number of barycentric terms; ``None``
    selects ``min(len(samples) - 1, 120)``.  ``zero_guard`` floors the
    denominators of relative errors; ``None`` selects a data-scaled value
    that only matters for exact zeros.
    """

    tol: float
    target_degree: int = 0
    max_terms: int = None
    zero_guard: float = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms is not None and self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.zero_guard is not None and not self.zero_guard > 0:
            raise ValueError("zero_guard must be positive")


@dataclass(frozen=True)
class FitReport:
    """Diagnostics of a single fit.

    ``linf_rel_error`` and ``l2_rel_error`` are taken over the full sample
    set (max, resp. Euclidean norm, of the pointwise relative errors).
    ``effective_degree`` is the degree actually imposed on the returned
    model, sign(target) * min(|target|, terms - 1).  ``constraint_residual``
    is the largest scaled power sum that the constraints force to zero, and
    ``leading_sum_magnitudes`` the two power sums that must stay away from
    zero for the imposed degree to be exact.  ``greedy_rel_error`` is the
    relative error at the last greedily examined point (AAA only).
    """

    terms: int
    linf_rel_error: float
    l2_rel_error: float
    converged: bool
    constraint_residual: float
    leading_sum_magnitudes: tuple
    effective_degree: int
    greedy_rel_error: float = None


def aaa(samples, config):
    """Fit a degree-constrained interpolatory rational model to the samples.

    Returns ``(model, report)``.  Non-convergence within the term cap is
    reported, not raised, so callers can still compare the result against
    other fits.
    """
    pts, vals = samples.points, samples.values
    mprime = pts.size
    if mprime < 2:
        raise ConfigurationError("AAA needs at least 2 samples")
    delta = int(config.target_degree)
    if mprime < abs(delta) + 1:
        raise ConfigurationError(
            f"target degree {delta} needs at least {abs(delta) + 1} samples, got {mprime}"
        )
    tol = config.tol
    guard = resolve_zero_guard(vals, config.zero_guard)
    cap = DEFAULT_MAX_TERMS if config.max_terms is None else config.max_terms
    # keep at least one sample outside the support set so the least-squares
    # problem never loses all of its rows
    cap = min(cap, mprime - 1)

    mean = complex(np.mean(vals))
    approx = np.full(mprime, mean, dtype=complex)
    in_pool = np.ones(mprime, dtype=bool)
    sup_idx = []
    model = None
    converged = False
    greedy_err = np.inf
    j = 0

    for m in range(cap + 1):
        rel = relative_errors(vals, approx, guard)
        rel[~in_pool] = -np.inf
        j = int(np.argmax(rel))
        greedy_err = float(rel[j])
        in_pool[j] = False
        if greedy_err <= tol:
            converged = True
            break
        if m == cap:
            break
        sup_idx.append(j)
        sj = pts[sup_idx]
        fj = vals[sup_idx]
        depth = min(abs(delta), m)
        if depth:
            V = vandermonde(sj, depth, support_scale(sj))
            Q = nullspace_basis(V, left_scaling=fj if delta < 0 else None)
        else:
            Q = np.eye(m + 1, dtype=complex)
        L = (vals[in_pool, None] - fj[None, :]) / (pts[in_pool, None] - sj[None, :])
        w = solve_constrained_weights(L, Q)
        model = BarycentricModel.from_weights(sj, fj, w)
        with np.errstate(divide="ignore", invalid="ignore"):
            cauchy = 1.0 / (pts[in_pool, None] - sj[None, :])
            approx[in_pool] = (cauchy @ (w * fj)) / (cauchy @ w)
        approx[sup_idx] = fj

    if model is None:
        # the initial constant already matches the worst point: return it as
        # a single-term model anchored at that point
        model = BarycentricModel([pts[j]], [mean], [1.0])

    report = _build_report(samples, model, approx, guard, delta, converged, greedy_err)
    return model, report


def _build_report(samples, model, approx, guard, delta, converged, greedy_err):
    rel = relative_errors(samples.values, approx, guard)
    effective = int(np.sign(delta)) * min(abs(delta), model.terms - 1)
    residual, leading = degree_diagnostics(model, effective)
    return FitReport(
        terms=model.terms,
        linf_rel_error=float(np.max(rel)),
        l2_rel_error=float(np.linalg.norm(rel)),
        converged=converged,
        constraint_residual=residual,
        leading_sum_magnitudes=leading,
        effective_degree=effective,
        greedy_rel_error=greedy_err,
    )
