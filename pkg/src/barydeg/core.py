"""Complex barycentric rational models and their linear-algebra machinery.

A rational function is represented either in interpolatory form,

    r(s) = sum_k w_k f_k / (s - s_k)  /  sum_k w_k / (s - s_k),

or in the general (non-interpolatory) form with independent numerator and
denominator weights,

    r(s) = sum_k n_k / (s - s_k)  /  sum_k d_k / (s - s_k).

Both forms share the support points ``s_k``.  The exact polynomial degrees
of numerator and denominator are encoded in the weights: the numerator
degree drops below the maximal ``m`` exactly when leading power sums of the
numerator coefficients vanish, and likewise for the denominator.  This
module provides the models, their stable evaluation, the Loewner and
Vandermonde matrices used by the fitting routines, null-space extraction
for degree constraints, and the degree classification itself.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstraintError,
    PoleEvaluationError,
    TrivialModelError,
    UndefinedValueError,
)

_NORM_TOL = 1e-12


def _as_complex_vector(x, name):
    arr = np.asarray(x, dtype=complex).ravel().copy()
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


def _check_distinct(points, name):
    if np.unique(points).size != points.size:
        raise ValueError(f"{name} must be pairwise distinct")


def support_scale(supports):
    """Scaling constant for power sums: max |s_k|, or 1 if all supports are 0."""
    shat = float(np.max(np.abs(supports)))
    return shat if shat > 0.0 else 1.0


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Training data: distinct complex frequency points with complex values."""

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _as_complex_vector(self.points, "points"))
        object.__setattr__(self, "values", _as_complex_vector(self.values, "values"))
        if self.points.size != self.values.size:
            raise ValueError("points and values must have equal length")
        _check_distinct(self.points, "sample points")

    def __len__(self):
        return self.points.size


@dataclass(frozen=True, eq=False)
class BarycentricModel:
    """Interpolatory barycentric rational function.

    Attains ``r(s_k) = f_k`` at every support point.  The weight vector is
    kept at unit Euclidean norm, matching the normalization under which the
    fitting problems are solved.
    """

    supports: np.ndarray
    support_values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "supports", _as_complex_vector(self.supports, "supports"))
        object.__setattr__(
            self, "support_values", _as_complex_vector(self.support_values, "support_values")
        )
        object.__setattr__(self, "weights", _as_complex_vector(self.weights, "weights"))
        if not (self.supports.size == self.support_values.size == self.weights.size):
            raise ValueError("supports, support_values and weights must have equal length")
        _check_distinct(self.supports, "supports")
        norm = np.linalg.norm(self.weights)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError("weight vector must have unit Euclidean norm")

    @classmethod
    def from_weights(cls, supports, support_values, weights):
        """Build a model from an unnormalized (nonzero) weight vector."""
        weights = np.asarray(weights, dtype=complex)
        norm = np.linalg.norm(weights)
        if norm == 0.0:
            raise ValueError("weight vector must be nonzero")
        return cls(supports, support_values, weights / norm)

    def __call__(self, s):
        return eval_barycentric(self, s)

    @property
    def terms(self):
        """Number m+1 of barycentric terms."""
        return self.supports.size


@dataclass(frozen=True, eq=False)
class GeneralBarycentricModel:
    """Non-interpolatory barycentric rational function.

    Numerator and denominator carry independent weights; the stacked
    coefficient vector [num_weights; den_weights] has unit Euclidean norm.
    """

    supports: np.ndarray
    num_weights: np.ndarray
    den_weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "supports", _as_complex_vector(self.supports, "supports"))
        object.__setattr__(
            self, "num_weights", _as_complex_vector(self.num_weights, "num_weights")
        )
        object.__setattr__(
            self, "den_weights", _as_complex_vector(self.den_weights, "den_weights")
        )
        if not (self.supports.size == self.num_weights.size == self.den_weights.size):
            raise ValueError("supports, num_weights and den_weights must have equal length")
        _check_distinct(self.supports, "supports")
        if not np.any(self.den_weights != 0):
            raise ValueError("denominator weights must not all be zero")
        norm = np.linalg.norm(np.concatenate([self.num_weights, self.den_weights]))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError("stacked coefficient vector must have unit Euclidean norm")

    @classmethod
    def from_weights(cls, supports, num_weights, den_weights):
        """Build a model from unnormalized coefficients (jointly rescaled)."""
        num_weights = np.asarray(num_weights, dtype=complex)
        den_weights = np.asarray(den_weights, dtype=complex)
        norm = np.linalg.norm(np.concatenate([num_weights.ravel(), den_weights.ravel()]))
        if norm == 0.0:
            raise ValueError("coefficient vector must be nonzero")
        return cls(supports, num_weights / norm, den_weights / norm)

    def __call__(self, s):
        return eval_general(self, s)

    @property
    def terms(self):
        return self.supports.size


@dataclass(frozen=True)
class DegreeSignature:
    """Result of degree classification.

    ``mu`` and ``nu`` are the numerator and denominator degree defects: the
    exact rational type is (m - mu, m - nu) and the relative degree is
    ``rdeg = nu - mu``.  ``lead_num`` and ``lead_den`` are the first
    non-vanishing power sums of the numerator and denominator coefficients.
    ``borderline`` flags a leading sum small enough in absolute terms that
    the classification should be treated with suspicion.
    """

    mu: int
    nu: int
    rdeg: int
    lead_num: complex
    lead_den: complex
    borderline: bool = field(default=False)


def eval_barycentric(model, s):
    """Evaluate an interpolatory model at scalar or array ``s``.

    Points that hit a support exactly (bitwise) return the stored support
    value; everywhere else the ratio of the two barycentric sums is used.
    """
    return _eval_ratio(model.supports, model.weights * model.support_values,
                       model.weights, s, on_support=_interp_hit(model))


def eval_general(model, s):
    """Evaluate a general model at scalar or array ``s``.

    At a support point the value is ``n_k / d_k`` by construction; a zero
    ``d_k`` there means the function value is undefined.
    """
    return _eval_ratio(model.supports, model.num_weights, model.den_weights,
                       s, on_support=_general_hit(model))


def _interp_hit(model):
    def hit(k, s):
        return model.support_values[k]
    return hit


def _general_hit(model):
    def hit(k, s):
        dk = model.den_weights[k]
        if dk == 0:
            raise UndefinedValueError(
                f"model value undefined at support {model.supports[k]}: zero denominator weight"
            )
        return model.num_weights[k] / dk
    return hit


def _eval_ratio(supports, num_coeffs, den_coeffs, s, on_support):
    scalar = np.isscalar(s) or np.ndim(s) == 0
    sv = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    if not np.all(np.isfinite(sv)):
        raise ValueError("evaluation points must be finite")
    diff = sv[:, None] - supports[None, :]
    hit_i, hit_k = np.nonzero(diff == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        diff_safe = diff.copy()
        diff_safe[hit_i, hit_k] = 1.0
        cauchy = 1.0 / diff_safe
        num = cauchy @ num_coeffs
        den = cauchy @ den_coeffs
        out = num / den
    for i, k in zip(hit_i, hit_k):
        out[i] = on_support(k, sv[i])
    bad = den == 0
    bad[hit_i] = False
    if np.any(bad):
        point = sv[np.argmax(bad)]
        raise PoleEvaluationError(f"denominator vanishes at {point}", point=point)
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(s))


def loewner_matrix(samples, supports, support_values):
    """Divided-difference matrix (f(s'_j) - f_k) / (s'_j - s_k).

    Rows run over the sample points, columns over the supports.  Sample and
    support points must be disjoint.
    """
    pts = np.asarray(samples.points, dtype=complex)
    vals = np.asarray(samples.values, dtype=complex)
    sj = np.asarray(supports, dtype=complex).ravel()
    fj = np.asarray(support_values, dtype=complex).ravel()
    if sj.size != fj.size:
        raise ValueError("supports and support_values must have equal length")
    diff = pts[:, None] - sj[None, :]
    if np.any(diff == 0):
        j, k = np.argwhere(diff == 0)[0]
        raise ValueError(f"sample point {pts[j]} coincides with support {sj[k]}")
    return (vals[:, None] - fj[None, :]) / diff


def vandermonde(supports, cols, scale):
    """Scaled-monomial Vandermonde block: entry (k, l) = (s_k / scale)**l."""
    sj = np.asarray(supports, dtype=complex).ravel()
    if cols > sj.size:
        raise ValueError(f"cannot build {cols} columns from {sj.size} supports")
    if cols < 0:
        raise ValueError("column count must be nonnegative")
    if not scale > 0.0:
        raise ValueError("scale must be positive")
    return np.power.outer(sj / scale, np.arange(cols))


def nullspace_basis(V, left_scaling=None):
    """Orthonormal basis of the plain-transpose null space of (F V).

    Returns Q with orthonormal columns such that every column q satisfies
    (F V)^T q = 0 where F = diag(left_scaling) (identity if omitted).  Note
    the plain transpose: the degree conditions are linear relations over C
    without conjugation, so the QR factorization is applied to the
    entrywise conjugate of F V.
    """
    A = np.asarray(V, dtype=complex)
    if A.ndim != 2:
        raise ValueError("V must be a matrix")
    rows, cols = A.shape
    if cols > rows - 1:
        raise ConstraintError(
            f"{cols} constraints on {rows} coefficients leave no nonzero solution"
        )
    if left_scaling is not None:
        f = np.asarray(left_scaling, dtype=complex).ravel()
        if f.size != rows:
            raise ValueError("left_scaling length must match the row count of V")
        A = f[:, None] * A
    Qfull, _ = np.linalg.qr(np.conj(A), mode="complete")
    return Qfull[:, cols:]


def solve_constrained_weights(L, Q):
    """Unit-norm weight vector minimizing ||L w|| over the range of Q.

    Q must have orthonormal columns (typically a null-space basis encoding
    degree constraints); the minimizer is Q v with v a minimal right
    singular vector of L Q.
    """
    L = np.asarray(L, dtype=complex)
    Q = np.asarray(Q, dtype=complex)
    if Q.shape[1] == 0:
        raise ConstraintError("constraint basis has no columns")
    _, _, vh = np.linalg.svd(L @ Q, full_matrices=True)
    v = np.conj(vh[-1, :])
    return Q @ v


def _power_sum_scan(supports, num_coeffs, den_coeffs, rel_tol, warn_tol, extra_orders=0):
    """Locate the degree defects mu, nu and return the scaled power sums.

    Scans l = 0, 1, ... for the first index where the power sum of the
    coefficients (in the scaled variable s_k / shat) is significant relative
    to the sum of its term magnitudes.  Returns
    (mu, nu, num_sums, den_sums, shat, borderline) with num_sums[i] =
    sum_k c_k (s_k/shat)^(mu+i) for i = 0..extra_orders, and likewise for
    den_sums from nu.
    """
    supports = np.asarray(supports, dtype=complex)
    shat = support_scale(supports)
    z = supports / shat
    mu, num_sums = _first_significant(z, num_coeffs, rel_tol, extra_orders, "numerator")
    nu, den_sums = _first_significant(z, den_coeffs, rel_tol, extra_orders, "denominator")
    borderline = (warn_tol < abs(num_sums[0]) <= rel_tol * 10) or (
        warn_tol < abs(den_sums[0]) <= rel_tol * 10
    )
    return mu, nu, num_sums, den_sums, shat, borderline


def _first_significant(z, coeffs, rel_tol, extra_orders, what):
    coeffs = np.asarray(coeffs, dtype=complex)
    mags = np.abs(coeffs)
    zl = np.ones_like(z)
    for l in range(z.size):
        total = np.sum(coeffs * zl)
        weight = np.sum(mags * np.abs(zl))
        if abs(total) > rel_tol * weight:
            sums = np.empty(extra_orders + 1, dtype=complex)
            sums[0] = total
            for i in range(1, extra_orders + 1):
                zl = zl * z
                sums[i] = np.sum(coeffs * zl)
            return l, sums
        zl = zl * z
    raise TrivialModelError(f"all {what} power sums are negligible; model is trivial")


def _rescale_sums(sums, shat, start):
    """Undo the s_k/shat scaling: sums[i] * shat**(start+i), elementwise."""
    return sums * shat ** (start + np.arange(sums.size))


def classify_degree(model, rel_tol=1e-8, warn_tol=1e-15):
    """Degree defects and relative degree of an interpolatory model.

    The defect ``mu`` is the smallest l with a numerator power sum that is
    significant relative to its term magnitudes (threshold ``rel_tol``);
    ``nu`` is the analogue for the denominator.  The relative test makes
    the classification invariant under rescaling of the data.  A leading
    sum whose absolute (scaled) magnitude falls in (warn_tol, 10*rel_tol]
    sets the ``borderline`` flag.
    """
    return _classify(model.supports, model.weights * model.support_values,
                     model.weights, rel_tol, warn_tol)


def classify_degree_general(model, rel_tol=1e-8, warn_tol=1e-15):
    """Degree classification for the non-interpolatory form.

    Identical to :func:`classify_degree` with the numerator and denominator
    weights taking the roles of ``w_k f_k`` and ``w_k``.
    """
    return _classify(model.supports, model.num_weights, model.den_weights,
                     rel_tol, warn_tol)


def classify(model, rel_tol=1e-8, warn_tol=1e-15):
    """Dispatch degree classification on the model kind."""
    if isinstance(model, GeneralBarycentricModel):
        return classify_degree_general(model, rel_tol, warn_tol)
    return classify_degree(model, rel_tol, warn_tol)


def _classify(supports, num_coeffs, den_coeffs, rel_tol, warn_tol):
    mu, nu, num_sums, den_sums, shat, borderline = _power_sum_scan(
        supports, num_coeffs, den_coeffs, rel_tol, warn_tol
    )
    lead_num = complex(_rescale_sums(num_sums, shat, mu)[0])
    lead_den = complex(_rescale_sums(den_sums, shat, nu)[0])
    return DegreeSignature(
        mu=mu, nu=nu, rdeg=nu - mu, lead_num=lead_num, lead_den=lead_den,
        borderline=borderline,
    )


def numerator_coefficients(model):
    """Numerator-side barycentric coefficients (w_k f_k, or n_k)."""
    if isinstance(model, GeneralBarycentricModel):
        return model.num_weights
    return model.weights * model.support_values


def denominator_coefficients(model):
    """Denominator-side barycentric coefficients (w_k, or d_k)."""
    if isinstance(model, GeneralBarycentricModel):
        return model.den_weights
    return model.weights


def evaluate(model, s):
    """Evaluate either model kind at ``s``."""
    if isinstance(model, GeneralBarycentricModel):
        return eval_general(model, s)
    return eval_barycentric(model, s)


def degree_diagnostics(model, effective_degree):
    """Constraint residual and leading-sum magnitudes of a constrained fit.

    For an imposed degree d, the fit forces the first |d| power sums of one
    coefficient side to vanish; the returned residual is the largest of
    those sums (in the scaled variable).  The leading-sum pair holds the
    magnitudes of the two power sums that are expected to be *nonzero* for
    the imposed degree to be exact: at order |d| on the constrained side
    and at order 0 on the other.
    """
    u = numerator_coefficients(model)
    w = denominator_coefficients(model)
    z = model.supports / support_scale(model.supports)
    depth = abs(effective_degree)
    powers = np.power.outer(z, np.arange(depth + 1))
    num_sums = np.abs(powers.T @ u)
    den_sums = np.abs(powers.T @ w)
    if effective_degree > 0:
        residual = float(np.max(den_sums[:depth]))
        leading = (float(num_sums[0]), float(den_sums[depth]))
    elif effective_degree < 0:
        residual = float(np.max(num_sums[:depth]))
        leading = (float(num_sums[depth]), float(den_sums[0]))
    else:
        residual = 0.0
        leading = (float(num_sums[0]), float(den_sums[0]))
    return residual, leading
