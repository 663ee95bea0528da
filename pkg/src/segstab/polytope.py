"""Polytopes of matrices whose pairwise differences have rank one.

For vertices ``A_i = B0 + b c_i^T`` (a shared column factor ``b``) or
``A_i = B0 + b_i c^T`` (a shared row factor ``c``) the characteristic
polynomial is affine along the polytope, so stability of the whole hull
reduces to stability of its edges. On each edge ``F2`` vanishes and the
complex-crossing test shrinks to the ``d x d`` matrix ``-F0^{-1} F1``.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionError, NotRankOneStructured, StructureCheckFailed
from .linalg import DEFAULT_TOL, as_square, characteristic_polynomial, solve_left
from .segment import (
    Condition,
    SegmentVerdict,
    Status,
    UNIT_DISK,
    build_F,
    condition_matrices,
    dimension_report,
    evaluate_conditions,
    summarize_checks,
)
from .stability import Verdict, has_negative_real_eigenvalue, has_real_eigenvalue_geq_one, is_schur_stable

logger = logging.getLogger(__name__)

RANK_RATIO = 1e-9
F2_TOL = 1e-10


class Orientation(enum.Enum):
    COLUMN_SHARED = "ColumnShared"
    ROW_SHARED = "RowShared"


@dataclass(frozen=True)
class RankOnePolytope:
    """Vertices ``B0 + outer(b, C[i])`` (column-shared) or ``B0 + outer(C[i], b)``.

    ``b`` is always the shared factor and ``C`` holds one per-vertex factor
    per row, whatever the orientation.
    """

    B0: np.ndarray
    b: np.ndarray
    C: np.ndarray
    orientation: Orientation = Orientation.COLUMN_SHARED

    def __post_init__(self):
        B0 = as_square(self.B0, "B0")
        n = B0.shape[0]
        b = np.asarray(self.b, dtype=float).reshape(-1)
        C = np.atleast_2d(np.asarray(self.C, dtype=float))
        if b.shape != (n,):
            raise DimensionError(f"b must have length {n}, got shape {b.shape}")
        if C.ndim != 2 or C.shape[1] != n or C.shape[0] < 1:
            raise DimensionError(f"C must be an N x {n} array with N >= 1, got shape {C.shape}")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(C))):
            raise ValueError("b and C must be finite")
        if not np.any(b):
            raise ValueError("shared factor b must be nonzero")
        object.__setattr__(self, "B0", B0)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @property
    def n(self):
        return self.B0.shape[0]

    @property
    def N(self):
        return self.C.shape[0]

    def vertex(self, i):
        if self.orientation is Orientation.COLUMN_SHARED:
            return self.B0 + np.outer(self.b, self.C[i])
        return self.B0 + np.outer(self.C[i], self.b)

    @property
    def vertices(self):
        return [self.vertex(i) for i in range(self.N)]

    def combine(self, weights):
        """The polytope point with the given simplex weights."""
        w = _check_weights(weights, self.N)
        c = w @ self.C
        if self.orientation is Orientation.COLUMN_SHARED:
            return self.B0 + np.outer(self.b, c)
        return self.B0 + np.outer(c, self.b)


@dataclass
class PolytopeVerdict:
    status: Status
    failing_edge: Optional[tuple] = None
    edge_verdict: Optional[SegmentVerdict] = None
    failing_vertex: Optional[int] = None
    edges_checked: int = 0
    dims: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "status": self.status.value,
            "failing_edge": None if self.failing_edge is None else list(self.failing_edge),
            "failing_vertex": self.failing_vertex,
            "edge_verdict": None if self.edge_verdict is None else self.edge_verdict.to_dict(),
            "edges_checked": self.edges_checked,
            "dims": dict(self.dims),
        }


def _check_weights(weights, N):
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.shape != (N,):
        raise ValueError(f"expected {N} weights, got {w.shape[0]}")
    if np.any(w < 0) or not np.isfinite(w).all() or abs(w.sum() - 1.0) > 1e-12 * N:
        raise ValueError("weights must be nonnegative and sum to 1")
    return w


def _sigma_ratio(D):
    s = np.linalg.svd(D, compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[1] / s[0]) if s.size > 1 else 0.0


def _sign_fix(v):
    k = int(np.argmax(np.abs(v) > 1e-12 * np.abs(v).max()))
    return -v if v[k] < 0 else v


def validate_rank_one_structure(matrices, base=0):
    """Factor a vertex list as a :class:`RankOnePolytope`.

    ``B0`` is ``matrices[base]``. The shared factor is found from the SVD of
    the stacked differences ``A_i - B0`` (side by side for a shared column
    space, on top of each other for a shared row space), tried in that
    order. ``b`` is returned with unit norm and its first significant entry
    positive. Raises :class:`NotRankOneStructured` when some difference has
    numerical rank two or more (``sigma_2/sigma_1 > 1e-9``), or when every
    difference is rank one but no single factor is shared.
    """
    mats = [as_square(A, f"A{i + 1}") for i, A in enumerate(matrices)]
    if len(mats) < 1:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[0]
    if any(A.shape != (n, n) for A in mats):
        raise DimensionError("all vertices must have the same dimension")
    B0 = mats[base]
    diffs = [A - B0 for A in mats]
    scale = max(1.0, max(float(np.abs(A).max()) for A in mats))

    wide = np.hstack(diffs)
    s = np.linalg.svd(wide, compute_uv=False)
    if s[0] <= 1e-14 * scale:
        # all vertices coincide; any direction works
        b = np.eye(n)[0]
        return RankOnePolytope(B0, b, np.zeros((len(mats), n)))

    for i, j in itertools.combinations(range(len(mats)), 2):
        ratio = _sigma_ratio(mats[i] - mats[j])
        if ratio > RANK_RATIO:
            raise NotRankOneStructured(
                f"vertices {i} and {j} differ by a matrix of numerical rank >= 2 "
                f"(sigma2/sigma1 = {ratio:.3e})",
                pair=(i, j),
                ratio=ratio,
            )

    if s.size < 2 or s[1] / s[0] <= RANK_RATIO:
        U, _, _ = np.linalg.svd(wide, full_matrices=False)
        b = _sign_fix(U[:, 0])
        C = np.array([D.T @ b for D in diffs])
        return RankOnePolytope(B0, b, C, Orientation.COLUMN_SHARED)

    tall = np.vstack(diffs)
    U, s_tall, Vt = np.linalg.svd(tall, full_matrices=False)
    if s_tall.size < 2 or s_tall[1] / s_tall[0] <= RANK_RATIO:
        c = _sign_fix(Vt[0])
        C = np.array([D @ c for D in diffs])
        return RankOnePolytope(B0, c, C, Orientation.ROW_SHARED)

    raise NotRankOneStructured(
        "pairwise differences are rank one but share neither a column nor a row factor",
        ratio=float(min(s[1] / s[0], s_tall[1] / s_tall[0])),
    )


def edge_F_matrices(P, i, j):
    """``(F0, F1)`` for the edge between vertices ``i`` and ``j`` (``i < j``).

    Raises :class:`StructureCheckFailed` if the quadratic coefficient ``F2``
    of the edge is not numerically zero, which means the vertices were not
    truly rank-one related.
    """
    if not 0 <= i < j < P.N:
        raise ValueError(f"need 0 <= i < j < {P.N}, got ({i}, {j})")
    Ai, Aj = P.vertex(i), P.vertex(j)
    F0, F1, F2 = build_F(Ai, Aj)
    scale = max(1.0, float(np.abs(Ai).max()), float(np.abs(Aj).max())) ** 2
    worst = float(np.abs(F2).max()) if F2.size else 0.0
    if worst > F2_TOL * scale:
        raise StructureCheckFailed(f"edge ({i}, {j}): max |F2| = {worst:.3e}, expected 0")
    return F0, F1


def _edge_tests(P, i, j, tol):
    Ai, Aj = P.vertex(i), P.vertex(j)
    cache = {}

    def cond_mats():
        if "cm" not in cache:
            cache["cm"] = condition_matrices(Ai, Aj, UNIT_DISK, tol.cond_max)
        return cache["cm"]

    def complex_test():
        if P.n < 2:
            return has_real_eigenvalue_geq_one([], tol, spectrum=True)
        F0, F1 = edge_F_matrices(P, i, j)
        return has_real_eigenvalue_geq_one(-solve_left(F1, F0, tol.cond_max).x, tol)

    return [
        (Condition.REAL_PLUS_ONE, lambda: has_negative_real_eigenvalue(cond_mats()[0], tol)),
        (Condition.REAL_MINUS_ONE, lambda: has_negative_real_eigenvalue(cond_mats()[1], tol)),
        (Condition.COMPLEX_UNIT_CIRCLE, complex_test),
    ]


def check_edge(P, i, j, tol=DEFAULT_TOL, *, full_report=False):
    """Segment verdict for one edge using the reduced ``d x d`` test."""
    checks = evaluate_conditions(_edge_tests(P, i, j, tol), full_report)
    return summarize_checks(checks, dimension_report(P.n), full_report)


def check_polytope(P, tol=DEFAULT_TOL, *, full_report=False):
    """Decide robust Schur stability of the convex hull of ``P``'s vertices.

    Every vertex must be Schur stable; then every edge ``i < j`` is checked.
    The first unstable edge (in lexicographic order) is reported. Edges
    that are only Marginal make the whole verdict Marginal unless another
    edge is outright unstable.
    """
    dims = dimension_report(P.n)
    for k in range(P.N):
        res = is_schur_stable(P.vertex(k), tol)
        if res.verdict is not Verdict.HOLDS:
            status = Status.UNSTABLE if res.verdict is Verdict.FAILS else Status.MARGINAL
            edge = SegmentVerdict(
                status, Condition.ENDPOINT_UNSTABLE, res.witness,
                failures=(Condition.ENDPOINT_UNSTABLE,) if status is Status.UNSTABLE else (),
                dims=dims,
            )
            return PolytopeVerdict(status, None, edge, k, 0, dims)

    marginal = None
    count = 0
    for i, j in itertools.combinations(range(P.N), 2):
        count += 1
        verdict = check_edge(P, i, j, tol, full_report=full_report)
        if verdict.status is Status.UNSTABLE:
            return PolytopeVerdict(Status.UNSTABLE, (i, j), verdict, None, count, dims)
        if verdict.status is Status.MARGINAL and marginal is None:
            marginal = ((i, j), verdict)
    if marginal is not None:
        return PolytopeVerdict(Status.MARGINAL, marginal[0], marginal[1], None, count, dims)
    return PolytopeVerdict(Status.ROBUST_STABLE, None, None, None, count, dims)


def rank_one_spectrum(u, v):
    """Eigenvalues of ``outer(u, v)``: ``n - 1`` zeros and ``u . v``."""
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    if u.shape != v.shape:
        raise DimensionError(f"u and v differ in length: {u.size} vs {v.size}")
    out = np.zeros(u.size, dtype=complex)
    out[-1] = float(u @ v)
    return out


def charpoly_convex_combination(vertices, weights):
    """Weighted sum of the vertices' characteristic polynomials.

    ``vertices`` is a :class:`RankOnePolytope` or any list of equal-size
    matrices. For rank-one-structured vertices the result equals the
    characteristic polynomial of the weighted matrix; for general vertices
    it does not.
    """
    mats = vertices.vertices if isinstance(vertices, RankOnePolytope) else [as_square(A) for A in vertices]
    w = _check_weights(weights, len(mats))
    return sum(wi * characteristic_polynomial(A) for wi, A in zip(w, mats))
