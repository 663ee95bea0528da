"""Brute-force sampling of spectral radii over segments and polytopes.

Sampling can falsify stability (a sampled point outside the disk is a
genuine counterexample) but never certify it: an unstable window narrower
than the grid spacing goes unseen. The checkers in :mod:`segstab.segment`
and :mod:`segstab.polytope` are the decision procedures; this module is an
independent cross-check for them.
"""

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import EigenSolverError
from .linalg import DEFAULT_TOL
from .polytope import Orientation
from .segment import UNIT_DISK, SegmentProblem

DEFAULT_SEED = 20240521
_CHUNK = 4096


class SampleVerdict(enum.Enum):
    ALL_INSIDE = "AllInside"
    VIOLATION = "Violation"
    NEAR_BOUNDARY = "NearBoundary"


@dataclass(frozen=True)
class SamplingReport:
    """Result of a sampling sweep.

    ``max_rho`` is the largest normalized radius ``|lambda - delta| / r``
    seen (the spectral radius for the unit disk). ``argmax`` is the alpha
    of the worst segment point, or the simplex weights of the worst
    polytope point; ``edge`` names the polytope edge it lies on, if any.
    """

    max_rho: float
    argmax: object
    samples: int
    verdict: SampleVerdict
    edge: Optional[tuple] = None

    def to_dict(self):
        argmax = self.argmax.tolist() if isinstance(self.argmax, np.ndarray) else self.argmax
        return {
            "verdict": self.verdict.value,
            "max_rho": self.max_rho,
            "argmax": argmax,
            "samples": self.samples,
            "edge": None if self.edge is None else list(self.edge),
        }


def _classify(max_rho, tol):
    if max_rho >= 1.0 + tol.one_tol:
        return SampleVerdict.VIOLATION
    if max_rho > 1.0 - tol.one_tol:
        return SampleVerdict.NEAR_BOUNDARY
    return SampleVerdict.ALL_INSIDE


def batch_radii(mats, disk=UNIT_DISK):
    """Normalized spectral radius of each matrix in a ``(K, n, n)`` stack."""
    mats = np.asarray(mats, dtype=float)
    out = np.empty(mats.shape[0])
    for start in range(0, mats.shape[0], _CHUNK):
        block = mats[start:start + _CHUNK]
        try:
            ev = np.linalg.eigvals(block)
        except np.linalg.LinAlgError as exc:
            # locate the offending sample for the error message
            for k, A in enumerate(block):
                try:
                    np.linalg.eigvals(A)
                except np.linalg.LinAlgError:
                    raise EigenSolverError(f"eigensolver failed at sample {start + k}") from exc
            raise EigenSolverError(str(exc)) from exc
        out[start:start + block.shape[0]] = np.max(np.abs(ev - disk.delta), axis=1) / disk.r
    return out


def segment_grid(A1, A2, K):
    alphas = np.linspace(0.0, 1.0, K)
    return alphas, alphas[:, None, None] * A1 + (1.0 - alphas)[:, None, None] * A2


def sample_segment(A1, A2, K=10_000, tol=DEFAULT_TOL, disk=UNIT_DISK):
    """Evaluate the normalized spectral radius of ``C(alpha)`` on a uniform grid.

    ``alpha = k/(K-1)`` for ``k = 0..K-1``. Ties in the maximum resolve to
    the smaller alpha.
    """
    if K < 2:
        raise ValueError(f"need at least 2 samples, got {K}")
    p = SegmentProblem(A1, A2)
    alphas, mats = segment_grid(p.A1, p.A2, K)
    rho = batch_radii(mats, disk)
    k = int(np.argmax(rho))
    return SamplingReport(float(rho[k]), float(alphas[k]), K, _classify(rho[k], tol))


def simplex_weights(N, K, seed=DEFAULT_SEED):
    """``K`` uniform points on the ``N``-simplex via normalized exponential spacings."""
    rng = np.random.default_rng(seed)
    e = rng.exponential(size=(K, N))
    return e / e.sum(axis=1, keepdims=True)


def sample_polytope(P, K_edges=1_000, K_interior=1_000, tol=DEFAULT_TOL, seed=DEFAULT_SEED):
    """Grid every edge with ``K_edges`` points and add ``K_interior`` random points."""
    if P.N == 1:
        rho = batch_radii(P.vertex(0)[None])
        return SamplingReport(float(rho[0]), np.ones(1), 1, _classify(rho[0], tol))
    if K_edges < 2:
        raise ValueError(f"need at least 2 samples per edge, got {K_edges}")
    best = (-1.0, None, None)
    total = 0
    for i, j in itertools.combinations(range(P.N), 2):
        alphas, mats = segment_grid(P.vertex(i), P.vertex(j), K_edges)
        rho = batch_radii(mats)
        total += K_edges
        k = int(np.argmax(rho))
        if rho[k] > best[0]:
            w = np.zeros(P.N)
            w[i], w[j] = alphas[k], 1.0 - alphas[k]
            best = (float(rho[k]), w, (i, j))
    if K_interior > 0:
        W = simplex_weights(P.N, K_interior, seed)
        cs = W @ P.C
        if P.orientation is Orientation.COLUMN_SHARED:
            mats = P.B0 + P.b[None, :, None] * cs[:, None, :]
        else:
            mats = P.B0 + cs[:, :, None] * P.b[None, None, :]
        rho = batch_radii(mats)
        total += K_interior
        k = int(np.argmax(rho))
        if rho[k] > best[0]:
            best = (float(rho[k]), W[k], None)
    return SamplingReport(best[0], best[1], total, _classify(best[0], tol), best[2])


def _sorted_spectrum(values):
    return values[np.lexsort((values.imag, values.real))]


def eigen_locus(A1, A2, K):
    """Eigenvalues of ``C(alpha)`` on ``alpha = k/(K-1)``, ordered into curves.

    Returns ``(alphas, table)`` with ``table[k]`` the spectrum at
    ``alphas[k]``. Row 0 is sorted by real then imaginary part; each later
    row is permuted to minimize the total squared distance to the row
    before it.
    """
    if K < 2:
        raise ValueError(f"need at least 2 samples, got {K}")
    p = SegmentProblem(A1, A2)
    alphas, mats = segment_grid(p.A1, p.A2, K)
    raw = np.linalg.eigvals(mats).astype(complex)
    table = np.empty_like(raw)
    table[0] = _sorted_spectrum(raw[0])
    for k in range(1, K):
        cost = np.abs(table[k - 1][:, None] - raw[k][None, :]) ** 2
        _, cols = linear_sum_assignment(cost)
        table[k] = raw[k][cols]
    return alphas, table

