"""Stable evaluation of fitted models far outside the sampled band.

A barycentric form with nonzero relative degree suffers catastrophic
cancellation at large |s|: the leading power sums of its coefficients are
(numerically) zero, so the two barycentric sums are evaluated orders of
magnitude above their true size.  The fix is a truncated Laurent-type
expansion around infinity,

    r(s) ~ (sum_l c_l s^-l) / (sum_l d_l s^-l) * s^rdeg,

with moment coefficients c_l, d_l given by power sums of the barycentric
coefficients starting at the degree defects.  A piecewise model switches
from the barycentric form to this asymptotic form at a cutoff radius where
the two forms' heuristic error models balance.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    BarycentricModel,
    GeneralBarycentricModel,
    _power_sum_scan,
    _rescale_sums,
    denominator_coefficients,
    evaluate,
    numerator_coefficients,
)
from .errors import PoleEvaluationError
from .util import relative_errors, resolve_zero_guard

DEFAULT_ORDER = 10
EPS_FLOOR = 1e-16


@dataclass(frozen=True, eq=False)
class AsymptoticModel:
    """Truncated expansion of a rational model at infinity.

    The moment arrays are stored in the scaled variable s / scale (scale is
    the largest support magnitude) so that they stay representable for
    supports of any magnitude; the unscaled moments are exposed as
    properties.  ``num_moments_scaled[i]`` is the power sum of the
    numerator coefficients at order mu + i, and the expansion truncates
    after ``order + 1`` terms.
    """

    mu: int
    nu: int
    rdeg: int
    order: int
    scale: float
    num_moments_scaled: np.ndarray
    den_moments_scaled: np.ndarray

    def __post_init__(self):
        num = np.asarray(self.num_moments_scaled, dtype=complex).copy()
        den = np.asarray(self.den_moments_scaled, dtype=complex).copy()
        num.setflags(write=False)
        den.setflags(write=False)
        object.__setattr__(self, "num_moments_scaled", num)
        object.__setattr__(self, "den_moments_scaled", den)
        if num.size != self.order + 1 or den.size != self.order + 1:
            raise ValueError("moment arrays must have order + 1 entries")
        if num[0] == 0 or den[0] == 0:
            raise ValueError("leading moments must be nonzero")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def num_moments(self):
        """Unscaled numerator moments; may overflow for extreme scales."""
        return _rescale_sums(self.num_moments_scaled, self.scale, self.mu)

    @property
    def den_moments(self):
        """Unscaled denominator moments; may overflow for extreme scales."""
        return _rescale_sums(self.den_moments_scaled, self.scale, self.nu)

    def __call__(self, s):
        return eval_asymptotic(self, s)


@dataclass(frozen=True, eq=False)
class PiecewiseModel:
    """A fitted model plus its asymptotic continuation.

    Evaluation uses the barycentric form up to ``cutoff`` (inclusive) and
    the asymptotic form beyond it.  ``train_T`` is the largest sampled
    frequency magnitude and ``train_eps`` the largest training relative
    error that entered the cutoff formula.
    """

    bary: object
    asym: AsymptoticModel
    cutoff: float
    train_T: float
    train_eps: float

    def __post_init__(self):
        if not isinstance(self.bary, (BarycentricModel, GeneralBarycentricModel)):
            raise TypeError("bary must be a barycentric model")
        if not (self.cutoff > 0 and self.train_T > 0 and self.train_eps > 0):
            raise ValueError("cutoff, train_T and train_eps must be positive")
        if self.train_eps <= 1.0 and self.cutoff < self.train_T:
            raise ValueError("cutoff must not fall inside the sampled band")

    def __call__(self, s):
        return eval_piecewise(self, s)


def moments(model, order=DEFAULT_ORDER, rel_tol=1e-8, warn_tol=1e-15):
    """Asymptotic expansion of a model, truncated after ``order + 1`` terms.

    Works for both model kinds; the degree defects are located with the
    same scan as degree classification, so the leading moments coincide
    bit-for-bit with the classified leading sums.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    mu, nu, num_sums, den_sums, shat, _ = _power_sum_scan(
        model.supports,
        numerator_coefficients(model),
        denominator_coefficients(model),
        rel_tol,
        warn_tol,
        extra_orders=order,
    )
    return AsymptoticModel(
        mu=mu, nu=nu, rdeg=nu - mu, order=order, scale=shat,
        num_moments_scaled=num_sums, den_moments_scaled=den_sums,
    )


def eval_asymptotic(asym, s):
    """Evaluate the truncated expansion at scalar or array ``s`` (s != 0)."""
    scalar = np.isscalar(s) or np.ndim(s) == 0
    sv = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    if np.any(sv == 0):
        raise ValueError("asymptotic form is undefined at s = 0")
    inv = asym.scale / sv
    num = _horner(asym.num_moments_scaled, inv)
    den = _horner(asym.den_moments_scaled, inv)
    if np.any(den == 0):
        point = sv[np.argmax(den == 0)]
        raise PoleEvaluationError(
            f"truncated denominator series vanishes at {point}", point=point
        )
    out = num / den * (sv / asym.scale) ** asym.rdeg
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(s))


def _horner(coeffs, x):
    acc = np.full_like(x, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * x + c
    return acc


def cutoff_radius(T, eps, rdeg, order):
    """Radius where the barycentric and asymptotic error heuristics balance.

    The barycentric extrapolation error is modeled as eps * (|s|/T)^|rdeg|
    and the truncation error of the asymptotic form as (T/|s|)^(order+1);
    they are equal at T * eps^(-1/(|rdeg| + order + 1)).
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not T > 0:
        raise ValueError("T must be positive")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return float(T * eps ** (-1.0 / (abs(rdeg) + order + 1)))


def make_piecewise(model, samples, order=DEFAULT_ORDER, zero_guard=None):
    """Attach the asymptotic continuation and cutoff to a fitted model.

    The training error that enters the cutoff formula is the largest
    relative error of the model over the samples, floored at 1e-16 so an
    exact fit still yields a finite cutoff.
    """
    asym = moments(model, order)
    guard = resolve_zero_guard(samples.values, zero_guard)
    rel = relative_errors(samples.values, evaluate(model, samples.points), guard)
    eps = max(float(np.max(rel)), EPS_FLOOR)
    T = float(np.max(np.abs(samples.points)))
    return PiecewiseModel(
        bary=model,
        asym=asym,
        cutoff=cutoff_radius(T, eps, asym.rdeg, order),
        train_T=T,
        train_eps=eps,
    )


def eval_piecewise(pm, s):
    """Barycentric evaluation for |s| <= cutoff, asymptotic beyond."""
    scalar = np.isscalar(s) or np.ndim(s) == 0
    sv = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    near = np.abs(sv) <= pm.cutoff
    out = np.empty(sv.shape, dtype=complex)
    if np.any(near):
        out[near] = evaluate(pm.bary, sv[near])
    if np.any(~near):
        out[~near] = eval_asymptotic(pm.asym, sv[~near])
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(s))
