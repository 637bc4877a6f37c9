"""Mass-chain benchmark systems, sampling grids, noise, and sample-file I/O.

The benchmark is a frictionless chain of n >= 2 point masses coupled by
springs, driven by a force on the last mass and observed at the position of
the first.  The force-to-position map has relative degree -2n; the inverted
position-to-force map has relative degree +2n.
"""

from dataclasses import dataclass

import numpy as np

from .core import SampleSet
from .errors import PoleEvaluationError

CSV_HEADER = "s_re,s_im,f_re,f_im"


@dataclass(frozen=True, eq=False)
class MassChainSystem:
    """Chain of n masses with n-1 springs.

    ``lengths`` are the spring rest lengths; they only enter the affine load
    term, which the transfer functions here ignore (rest lengths are taken
    as zero for the linear part).
    """

    n: int
    masses: np.ndarray = None
    springs: np.ndarray = None
    lengths: np.ndarray = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a mass chain needs at least 2 masses")
        masses = np.ones(self.n) if self.masses is None else np.asarray(self.masses, float)
        springs = np.ones(self.n - 1) if self.springs is None else np.asarray(self.springs, float)
        lengths = np.zeros(self.n - 1) if self.lengths is None else np.asarray(self.lengths, float)
        if masses.size != self.n:
            raise ValueError("need one mass per node")
        if springs.size != self.n - 1 or lengths.size != self.n - 1:
            raise ValueError("need n-1 springs and rest lengths")
        if not (np.all(masses > 0) and np.all(springs > 0)):
            raise ValueError("masses and spring constants must be positive")
        if np.any(lengths < 0):
            raise ValueError("rest lengths must be nonnegative")
        for name, arr in (("masses", masses), ("springs", springs), ("lengths", lengths)):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def chain_matrices(sys):
    """State matrices (M, A, B, C) of the second-order chain model.

    M is the diagonal mass matrix, A the symmetric tridiagonal stiffness
    matrix with zero row sums, B selects the forced (last) mass and C reads
    the first mass's position.
    """
    n, k = sys.n, sys.springs
    M = np.diag(sys.masses)
    A = np.zeros((n, n))
    for j in range(n - 1):
        A[j, j] -= k[j]
        A[j + 1, j + 1] -= k[j]
        A[j, j + 1] += k[j]
        A[j + 1, j] += k[j]
    B = np.zeros((n, 1))
    B[n - 1, 0] = 1.0
    C = np.zeros((1, n))
    C[0, 0] = 1.0
    return M, A, B, C


def forward_tf(sys, s):
    """Force-to-position transfer function C (s^2 M - A)^{-1} B.

    Accepts scalar or array ``s``; raises at exact resonances where the
    system matrix is singular.
    """
    M, A, B, C = chain_matrices(sys)
    scalar = np.isscalar(s) or np.ndim(s) == 0
    sv = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    lhs = sv[:, None, None] ** 2 * M[None, :, :] - A[None, :, :]
    try:
        sol = np.linalg.solve(lhs, np.broadcast_to(B, (sv.size, sys.n, 1)))
    except np.linalg.LinAlgError:
        # fall back pointwise to report which frequency is resonant
        out = np.empty(sv.size, dtype=complex)
        for i, si in enumerate(sv):
            try:
                out[i] = (C @ np.linalg.solve(si**2 * M - A, B))[0, 0]
            except np.linalg.LinAlgError:
                raise PoleEvaluationError(
                    f"system matrix singular at {si}", point=si
                ) from None
        return complex(out[0]) if scalar else out.reshape(np.shape(s))
    out = (C[None, :, :] @ sol)[:, 0, 0]
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(s))


def inverse_tf(sys, s):
    """Position-to-force map, the reciprocal of :func:`forward_tf`."""
    h = forward_tf(sys, s)
    if np.any(np.asarray(h) == 0):
        raise ZeroDivisionError("forward transfer function vanishes at the requested point")
    return 1.0 / h


def sample_grid(omega_min, omega_max, count, spacing="log"):
    """Points i*omega on the positive imaginary axis, endpoints included."""
    if not (omega_min > 0 and omega_min < omega_max):
        raise ValueError("need 0 < omega_min < omega_max")
    if count < 2:
        raise ValueError("need at least 2 grid points")
    if spacing == "log":
        omega = np.geomspace(omega_min, omega_max, count)
    elif spacing == "linear":
        omega = np.linspace(omega_min, omega_max, count)
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    return 1j * omega


def add_noise(values, level, seed):
    """Multiplicative uniform noise: value * (1 + level * xi), xi ~ U[-1, 1]."""
    if level < 0:
        raise ValueError("noise level must be nonnegative")
    values = np.asarray(values, dtype=complex)
    xi = np.random.default_rng(seed).uniform(-1.0, 1.0, values.size)
    return values * (1.0 + level * xi.reshape(values.shape))


def mass_chain_samples(n, forward=True, omega_min=1e-2, omega_max=1.0, count=200,
                       spacing="log", noise=0.0, seed=0):
    """Convenience: sample a mass-chain transfer function on a frequency grid."""
    sys = MassChainSystem(n)
    pts = sample_grid(omega_min, omega_max, count, spacing)
    vals = forward_tf(sys, pts) if forward else inverse_tf(sys, pts)
    if noise > 0.0:
        vals = add_noise(vals, noise, seed)
    return SampleSet(pts, vals)


def save_samples(samples, path):
    """Write a sample set as CSV with full decimal precision."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for s, f in zip(samples.points, samples.values):
            fh.write(f"{s.real:.17g},{s.imag:.17g},{f.real:.17g},{f.imag:.17g}\n")


def load_samples(path):
    """Read a sample set written by :func:`save_samples`.

    Lines starting with ``#`` are ignored; the header row is required.
    Malformed rows raise with the offending line number.
    """
    points, values = [], []
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line.replace(" ", "") != CSV_HEADER:
                    raise ValueError(
                        f"{path}: line {lineno}: expected header {CSV_HEADER!r}, got {line!r}"
                    )
                header_seen = True
                continue
            fields = line.split(",")
            if len(fields) != 4:
                raise ValueError(f"{path}: line {lineno}: expected 4 fields, got {len(fields)}")
            try:
                s_re, s_im, f_re, f_im = (float(x) for x in fields)
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric field in {line!r}") from None
            points.append(complex(s_re, s_im))
            values.append(complex(f_re, f_im))
    if not header_seen:
        raise ValueError(f"{path}: missing header row")
    return SampleSet(points, values)
