"""Simplified non-interpolatory vector fitting with degree constraints.

Support points are placed on a fixed geometric grid (never relocated: a
single Sanathanan-Koerner pass with unit weights), and the numerator and
denominator weights are found from one linearized least-squares solve.
Degree constraints restrict the coefficients to the null space of a
Vandermonde block, exactly as in the interpolatory case but acting on the
numerator weights (negative degree) or denominator weights (positive
degree) directly.  Model complexity grows one support at a time until the
fit is uniformly below tolerance.
"""

from dataclasses import dataclass

import numpy as np

from .aaa import FitReport
from .core import (
    GeneralBarycentricModel,
    degree_diagnostics,
    eval_general,
    nullspace_basis,
    support_scale,
    vandermonde,
)
from .errors import ConfigurationError, ConstraintError, GridError
from .util import relative_errors, resolve_zero_guard

DEFAULT_MAX_TERMS = 60


@dataclass(frozen=True)
class VfConfig:
    """Knobs for :func:`vf_adaptive`; see :class:`barydeg.aaa.AaaConfig`."""

    tol: float = 1e-4
    target_degree: int = 0
    max_terms: int = DEFAULT_MAX_TERMS
    zero_guard: float = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.zero_guard is not None and not self.zero_guard > 0:
            raise ValueError("zero_guard must be positive")


def geometric_supports(samples, m):
    """Geometrically spaced support points covering the sampled band.

    Returns the m+1 points 0.9 * s_min * (1.2 T / t)^(k/m), where s_min is
    the sample of smallest magnitude t and T the largest magnitude.  The
    0.9 and 1.2 factors push the grid slightly past both ends of the band,
    keeping the supports disjoint from the sample points.
    """
    mags = np.abs(samples.points)
    t = float(np.min(mags))
    T = float(np.max(mags))
    if t == 0.0:
        raise GridError("geometric support grid needs samples away from the origin")
    anchor = 0.9 * samples.points[int(np.argmin(mags))]
    if m == 0:
        return np.array([anchor])
    ratio = 1.2 * T / t
    return anchor * ratio ** (np.arange(m + 1) / m)


def vf_solve(samples, supports, target_degree):
    """One linearized least-squares fit over fixed supports.

    Minimizes the linearized residual sum |f(s'_j) d(s'_j) - n(s'_j)|^2
    under the normalization ||d|| = 1, with power sums of d (positive
    degree) or n (negative degree) constrained to zero.  Normalizing the
    denominator weights alone keeps the minimizer away from the degenerate
    d -> 0 corner that a jointly normalized solve can fall into when the
    data magnitudes are large.  The numerator weights are eliminated by
    projection, leaving a small singular-value problem for d.  The returned
    model stores [n; d] jointly rescaled to unit norm, which leaves the
    represented function unchanged.
    """
    supports = np.asarray(supports, dtype=complex).ravel()
    mp1 = supports.size
    delta = int(target_degree)
    if abs(delta) >= mp1:
        raise ConstraintError(
            f"degree {delta} needs more than {mp1} supports"
        )
    pts, vals = samples.points, samples.values
    diff = pts[:, None] - supports[None, :]
    if np.any(diff == 0):
        raise ValueError("supports must be disjoint from the sample points")
    cauchy = 1.0 / diff
    basis_n = basis_d = np.eye(mp1, dtype=complex)
    if delta:
        V = vandermonde(supports, abs(delta), support_scale(supports))
        if delta > 0:
            basis_d = nullspace_basis(V)
        else:
            basis_n = nullspace_basis(V)
    A_n = cauchy @ basis_n
    A_d = (vals[:, None] * cauchy) @ basis_d
    # project the d-side columns onto the orthogonal complement of range(A_n)
    u_l, sing, _ = np.linalg.svd(A_n, full_matrices=False)
    rank = int(np.sum(sing > sing[0] * max(A_n.shape) * np.finfo(float).eps))
    u_l = u_l[:, :rank]
    resid = A_d - u_l @ (u_l.conj().T @ A_d)
    _, _, vh = np.linalg.svd(resid, full_matrices=True)
    v = np.conj(vh[-1, :])
    den = basis_d @ v
    num = basis_n @ np.linalg.lstsq(A_n, A_d @ v, rcond=None)[0]
    return GeneralBarycentricModel.from_weights(supports, num, den)


def vf_adaptive(samples, config):
    """Grow the geometric support grid until the fit meets tolerance.

    Complexity starts at the smallest grid admitting the degree constraint
    (m = |target_degree|) and increases one support per round.  Returns
    ``(model, report)`` with ``converged=False`` when the term cap is hit.
    """
    delta = int(config.target_degree)
    if config.max_terms < abs(delta) + 1:
        raise ConfigurationError(
            f"max_terms={config.max_terms} cannot accommodate degree {delta}"
        )
    guard = resolve_zero_guard(samples.values, config.zero_guard)
    model = None
    rel = None
    converged = False
    for m in range(abs(delta), config.max_terms):
        model = vf_solve(samples, geometric_supports(samples, m), delta)
        rel = relative_errors(samples.values, eval_general(model, samples.points), guard)
        if float(np.max(rel)) <= config.tol:
            converged = True
            break
    residual, leading = degree_diagnostics(model, delta)
    report = FitReport(
        terms=model.terms,
        linf_rel_error=float(np.max(rel)),
        l2_rel_error=float(np.linalg.norm(rel)),
        converged=converged,
        constraint_residual=residual,
        leading_sum_magnitudes=leading,
        effective_degree=delta,
    )
    return model, report
