"""Kernel certification: conditional negativity, positive definiteness, decay.

A length function ``l`` on a group induces the symmetric kernel
``K[i, j] = l(x_i^-1 x_j)`` on any finite point set.  Conditional negativity
of ``l`` means the quadratic form ``c K c`` is nonpositive on every mean-zero
vector ``c``; by Schoenberg's classical equivalence this holds exactly when
``exp(-r * l)`` is a positive-definite kernel for every ``r > 0``.  This
module checks both sides numerically, reports an explicit failure witness for
the negativity side, and computes the closed-form decay envelopes

    K   = sup_{x >= 0} exp(-r x) (1 + x)^s
    K_n = sup_{x > n}  exp(-r x) (1 + x)^s

that later modules use to bound multiplier norms and truncation tails.

All verdicts are tolerance-relative: they certify eigenvalue bounds up to the
stated tolerance in double precision, not exact-arithmetic statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .groups import Group

__all__ = [
    "KernelMatrix",
    "CnVerdict",
    "PsdVerdict",
    "DecayCertificate",
    "length_kernel",
    "schoenberg_kernel",
    "cn_check",
    "cn_check_matrix",
    "psd_check",
    "decay_certificate",
]

DEFAULT_TOL = 1e-8


@dataclass
class KernelMatrix:
    """Symmetric kernel on an ordered point set.

    ``entries[i, j]`` holds ``k(x_i^-1 x_j)`` when the kernel comes from a
    group; imported matrices may carry no points.
    """

    entries: np.ndarray
    points: Optional[list] = None

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("kernel entries must form a square matrix")
        if not np.allclose(self.entries, self.entries.T, atol=1e-12, rtol=0.0):
            raise ValueError("kernel matrix must be symmetric")
        if self.points is not None and len(self.points) != self.entries.shape[0]:
            raise ValueError("point list length must match matrix size")

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass
class CnVerdict:
    """Outcome of a conditional-negativity check.

    ``witness`` is present exactly when the check fails; it is a mean-zero
    vector with ``witness @ K @ witness > tol``, re-checkable by the caller.
    """

    passed: bool
    max_mean_zero_eigenvalue: float
    witness: Optional[np.ndarray] = None


@dataclass
class PsdVerdict:
    passed: bool
    min_eigenvalue: float


def _pairwise(group: Group, points: list, fn) -> np.ndarray:
    """Symmetric matrix fn(x_i^-1 x_j); computed once per pair and mirrored."""
    pts = [group.parse(p) for p in points]
    m = len(pts)
    inv = [group.inverse(p) for p in pts]
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(i, m):
            v = fn(group.multiply(inv[i], pts[j]))
            out[i, j] = v
            out[j, i] = v
    return out


def length_kernel(group: Group, points: list) -> KernelMatrix:
    """Kernel ``l(x_i^-1 x_j)`` of the group's word length on ``points``."""
    entries = _pairwise(group, points, lambda g: float(group.length(g)))
    return KernelMatrix(entries, points=list(points))


def schoenberg_kernel(group: Group, points: list, r: float) -> KernelMatrix:
    """Heat kernel ``exp(-r * l(x_i^-1 x_j))`` on ``points``; requires r > 0."""
    if r <= 0:
        raise ValueError(f"heat parameter r must be positive, got {r}")
    entries = _pairwise(group, points, lambda g: math.exp(-r * group.length(g)))
    return KernelMatrix(entries, points=list(points))


def _mean_zero_basis(m: int) -> np.ndarray:
    """Orthonormal basis of the mean-zero subspace via a Householder reflector."""
    e1 = np.zeros(m)
    e1[0] = 1.0
    u = np.full(m, 1.0 / math.sqrt(m))
    w = u - e1
    w /= np.linalg.norm(w)
    house = np.eye(m) - 2.0 * np.outer(w, w)
    return house[:, 1:]


def _nice_witness(c: np.ndarray, entries: np.ndarray, tol: float) -> np.ndarray:
    """Canonicalize a failing eigenvector into a readable witness.

    The unit eigenvector is sign-fixed, rescaled so its smallest significant
    entry is 1, and snapped to integers when that is exact; each step keeps
    (and the last step re-verifies) mean zero and positivity of the form.
    """
    mags = np.abs(c)
    lead = int(np.argmax(mags > 1e-3 * mags.max()))
    if c[lead] < 0:
        c = -c
    significant = mags[mags > 1e-3 * mags.max()]
    scaled = c / significant.min()
    snapped = np.round(scaled)
    if (
        np.max(np.abs(scaled - snapped)) < 1e-6 * max(1.0, np.max(np.abs(snapped)))
        and math.fsum(snapped) == 0.0
        and snapped @ entries @ snapped > tol
    ):
        return snapped
    return c


def cn_check_matrix(kernel, tol: float = DEFAULT_TOL) -> CnVerdict:
    """Check a symmetric kernel for conditional negativity.

    Passes iff the largest eigenvalue of the kernel compressed to the
    mean-zero subspace is at most ``tol``.  On failure the offending
    direction is returned as an explicit witness.  A single point passes
    trivially (the mean-zero subspace is zero).
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if not isinstance(kernel, KernelMatrix):
        kernel = KernelMatrix(kernel)
    m = kernel.size
    if m == 1:
        return CnVerdict(passed=True, max_mean_zero_eigenvalue=0.0)
    basis = _mean_zero_basis(m)
    compressed = basis.T @ kernel.entries @ basis
    compressed = 0.5 * (compressed + compressed.T)
    evals, evecs = np.linalg.eigh(compressed)
    top = float(evals[-1])
    if top <= tol:
        return CnVerdict(passed=True, max_mean_zero_eigenvalue=top)
    witness = _nice_witness(basis @ evecs[:, -1], kernel.entries, tol)
    return CnVerdict(passed=False, max_mean_zero_eigenvalue=top, witness=witness)


def cn_check(group: Group, points: list, tol: float = DEFAULT_TOL) -> CnVerdict:
    """Conditional-negativity check of the word length over ``points``."""
    pts = [group.parse(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    return cn_check_matrix(length_kernel(group, pts), tol)


def psd_check(kernel, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """Positive-semidefiniteness check: passes iff min eigenvalue >= -tol."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if not isinstance(kernel, KernelMatrix):
        kernel = KernelMatrix(kernel)
    smallest = float(np.linalg.eigvalsh(kernel.entries)[0])
    return PsdVerdict(passed=smallest >= -tol, min_eigenvalue=smallest)


@dataclass(frozen=True)
class DecayCertificate:
    """Closed-form envelope for ``exp(-r x)(1 + x)^s`` over real ``x >= 0``.

    ``K`` is the global supremum; :meth:`tail` gives the supremum over
    ``x > n``, which is nonincreasing once ``n`` passes the peak at
    ``x = s/r - 1`` and tends to zero.  The real-variable supremum is used
    even for integer-valued lengths: slightly conservative, always valid.
    """

    r: float
    s: float
    K: float
    integer_lengths: bool = False

    @property
    def peak(self) -> float:
        """Location of the maximum of the envelope (clamped to 0)."""
        return max(self.s / self.r - 1.0, 0.0)

    def envelope(self, x: float) -> float:
        return math.exp(-self.r * x) * (1.0 + x) ** self.s

    def tail(self, n: float) -> float:
        """Supremum of the envelope over ``x > n`` (the truncation tail)."""
        if n < 0:
            raise ValueError(f"tail index must be nonnegative, got {n}")
        if n >= self.peak:
            return self.envelope(n)
        return self.K


def decay_certificate(r: float, s: float, integer_lengths: bool = False) -> DecayCertificate:
    """Decay certificate for the weight ``exp(-r x)(1 + x)^s``, r, s > 0."""
    if r <= 0 or s <= 0:
        raise ValueError(f"r and s must be positive, got r={r}, s={s}")
    xstar = s / r - 1.0
    peak_value = math.exp(-r * xstar) * (1.0 + xstar) ** s if xstar > 0 else 1.0
    return DecayCertificate(r=r, s=s, K=peak_value, integer_lengths=integer_lengths)
