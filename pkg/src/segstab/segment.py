"""Robust Schur (and disk) stability of a matrix segment.

The segment ``[A1, A2]`` is the set ``C(alpha) = alpha*A1 + (1-alpha)*A2``
for ``alpha`` in ``[0, 1]``. With both endpoints stable, an eigenvalue can
only leave the disk by crossing its boundary, and there are three ways to
do so: through the rightmost real point, through the leftmost real point,
or through a conjugate pair on the circle. Each crossing is detected by a
fixed-size eigenvalue test, so no sampling in ``alpha`` is needed:

* ``+1``: ``(I - A1)(I - A2)^{-1}`` has a negative real eigenvalue.
* ``-1``: ``(I + A1)(I + A2)^{-1}`` has a negative real eigenvalue.
* complex pair: the companion matrix ``M`` of the quadratic pencil
  ``I - C(alpha).C(alpha) = F0 + alpha*F1 + alpha^2*F2`` (bialternate
  products, size ``d = n(n-1)/2``) has a real eigenvalue ``mu >= 1``;
  the crossing happens at ``alpha = 1/mu``.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionError, PreconditionViolated, VerificationError
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_square,
    bialternate_dim,
    bialternate_product,
    companion_from_quadratic,
    eigenvalues,
    solve_left,
    solve_right,
)
from .stability import (
    Verdict,
    has_negative_real_eigenvalue,
    has_real_eigenvalue_geq_one,
    is_disk_stable,
    is_metzler,
    is_neg_metzler,
)

logger = logging.getLogger(__name__)

LOCATE_TOL = 1e-6


class Status(enum.Enum):
    ROBUST_STABLE = "RobustStable"
    UNSTABLE = "Unstable"
    MARGINAL = "Marginal"


class Condition(enum.Enum):
    REAL_PLUS_ONE = "RealPlusOne"
    REAL_MINUS_ONE = "RealMinusOne"
    COMPLEX_UNIT_CIRCLE = "ComplexUnitCircle"
    ENDPOINT_UNSTABLE = "EndpointUnstable"


@dataclass(frozen=True)
class DiskRegion:
    """Open disk ``|z - delta| < r``; ``DiskRegion()`` is the unit disk."""

    delta: float = 0.0
    r: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.delta):
            raise ValueError(f"disk center must be finite, got {self.delta!r}")
        if not (np.isfinite(self.r) and self.r > 0):
            raise ValueError(f"disk radius must be positive and finite, got {self.r!r}")

    @property
    def is_unit(self):
        return self.delta == 0.0 and self.r == 1.0

    @property
    def right(self):
        return self.delta + self.r

    @property
    def left(self):
        return self.delta - self.r


UNIT_DISK = DiskRegion()


@dataclass(frozen=True)
class SegmentProblem:
    A1: np.ndarray
    A2: np.ndarray
    tol: ToleranceConfig = DEFAULT_TOL

    def __post_init__(self):
        A1 = as_square(self.A1, "A1")
        A2 = as_square(self.A2, "A2")
        if A1.shape != A2.shape:
            raise DimensionError(f"A1 is {A1.shape} but A2 is {A2.shape}")
        object.__setattr__(self, "A1", A1)
        object.__setattr__(self, "A2", A2)

    @property
    def n(self):
        return self.A1.shape[0]

    def at(self, alpha):
        """The segment point ``C(alpha)``."""
        return alpha * self.A1 + (1.0 - alpha) * self.A2


@dataclass
class SegmentVerdict:
    status: Status
    failed_condition: Optional[Condition] = None
    witness: Optional[object] = None
    alpha_witness: Optional[float] = None
    failures: tuple = ()
    checks: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "status": self.status.value,
            "failed_condition": None if self.failed_condition is None else self.failed_condition.value,
            "failures": [c.value for c in self.failures],
            "witness": None if self.witness is None else self.witness.to_dict(),
            "alpha_witness": self.alpha_witness,
            "checks": {
                c.value: {
                    "verdict": r.verdict.value,
                    "witness": None if r.witness is None else r.witness.to_dict(),
                }
                for c, r in self.checks.items()
            },
            "dims": dict(self.dims),
        }


def dimension_report(n):
    d = bialternate_dim(n)
    return {"n": n, "bialternate": d, "companion": 2 * d, "kronecker": n * n}


def build_F(A1, A2):
    """Coefficients of ``I - C(alpha).C(alpha) = F0 + alpha*F1 + alpha^2*F2``."""
    p = SegmentProblem(A1, A2)
    A1, A2, n = p.A1, p.A2, p.n
    if n < 2:
        empty = np.zeros((0, 0))
        return empty, empty.copy(), empty.copy()
    P22 = bialternate_product(A2, A2)
    P12 = bialternate_product(A1, A2)
    P11 = bialternate_product(A1, A1)
    F0 = np.eye(P22.shape[0]) - P22
    F1 = -2.0 * (P12 - P22)
    F2 = -(P11 + P22 - 2.0 * P12)
    return F0, F1, F2


def build_F_disk(A1, A2, disk):
    """Pencil coefficients for the disk ``|z - delta| < r``.

    Obtained by applying :func:`build_F` to the shifted endpoints
    ``A - delta*I`` with ``r^2 I`` in place of ``I`` in the constant term.
    """
    p = SegmentProblem(A1, A2)
    n = p.n
    if n < 2:
        empty = np.zeros((0, 0))
        return empty, empty.copy(), empty.copy()
    shift = disk.delta * np.eye(n)
    S1 = p.A1 - shift
    S2 = p.A2 - shift
    P22 = bialternate_product(S2, S2)
    P12 = bialternate_product(S1, S2)
    P11 = bialternate_product(S1, S1)
    F0 = disk.r**2 * np.eye(P22.shape[0]) - P22
    F1 = -2.0 * (P12 - P22)
    F2 = -(P11 + P22 - 2.0 * P12)
    return F0, F1, F2


def build_M(F0, F1, F2, cond_max=DEFAULT_TOL.cond_max):
    """Companion matrix ``[[0, I], [-F0^{-1} F2, -F0^{-1} F1]]`` of size ``2d``."""
    F0 = np.asarray(F0, dtype=float)
    if F0.shape == (0, 0):
        return np.zeros((0, 0))
    X = solve_left(F2, F0, cond_max).x
    Y = solve_left(F1, F0, cond_max).x
    return companion_from_quadratic(X, Y)


def condition_matrices(A1, A2, disk=UNIT_DISK, cond_max=DEFAULT_TOL.cond_max):
    """The two real-crossing test matrices for ``disk``.

    ``[(delta+r)I - A1][(delta+r)I - A2]^{-1}`` detects crossings at the
    right real point ``delta + r``; ``[A1 - (delta-r)I][A2 - (delta-r)I]^{-1}``
    detects crossings at the left real point ``delta - r``. For the unit
    disk these are ``(I - A1)(I - A2)^{-1}`` and ``(I + A1)(I + A2)^{-1}``.
    """
    eye = np.eye(np.asarray(A1).shape[0])
    plus = solve_right(disk.right * eye - A1, disk.right * eye - A2, cond_max).x
    minus = solve_right(A1 - disk.left * eye, A2 - disk.left * eye, cond_max).x
    return plus, minus


def summarize_checks(checks, dims, full_report):
    failures = tuple(c for c, r in checks.items() if r.verdict is Verdict.HOLDS)
    marginal = tuple(c for c, r in checks.items() if r.verdict is Verdict.MARGINAL)
    report_checks = checks if full_report else {}
    if failures:
        first = failures[0]
        return SegmentVerdict(Status.UNSTABLE, first, checks[first].witness, None, failures, report_checks, dims)
    if marginal:
        first = marginal[0]
        return SegmentVerdict(Status.MARGINAL, first, checks[first].witness, None, (), report_checks, dims)
    return SegmentVerdict(Status.ROBUST_STABLE, None, None, None, (), report_checks, dims)


def _endpoint_verdict(A1, A2, disk, tol, dims):
    for A in (A1, A2):
        res = is_disk_stable(A, disk.delta, disk.r, tol)
        if res.verdict is Verdict.FAILS:
            return SegmentVerdict(
                Status.UNSTABLE, Condition.ENDPOINT_UNSTABLE, res.witness,
                failures=(Condition.ENDPOINT_UNSTABLE,), dims=dims,
            )
        if res.verdict is Verdict.MARGINAL:
            return SegmentVerdict(Status.MARGINAL, Condition.ENDPOINT_UNSTABLE, res.witness, dims=dims)
    return None


def evaluate_conditions(tests, full_report):
    """Run ``(condition, thunk)`` tests in order.

    Each thunk returns a :class:`PredicateResult` whose ``HOLDS`` means the
    crossing exists. Evaluation stops at the first crossing unless
    ``full_report`` is set.
    """
    checks = {}
    for cond, thunk in tests:
        res = thunk()
        checks[cond] = res
        if res.verdict is Verdict.HOLDS and not full_report:
            break
    return checks


def _segment_tests(A1, A2, disk, tol, F_builder):
    cache = {}

    def cond_mats():
        if "cm" not in cache:
            cache["cm"] = condition_matrices(A1, A2, disk, tol.cond_max)
        return cache["cm"]

    def complex_test():
        F0, F1, F2 = F_builder()
        M = build_M(F0, F1, F2, tol.cond_max)
        return has_real_eigenvalue_geq_one(M, tol) if M.size else has_real_eigenvalue_geq_one([], tol, spectrum=True)

    return [
        (Condition.REAL_PLUS_ONE, lambda: has_negative_real_eigenvalue(cond_mats()[0], tol)),
        (Condition.REAL_MINUS_ONE, lambda: has_negative_real_eigenvalue(cond_mats()[1], tol)),
        (Condition.COMPLEX_UNIT_CIRCLE, complex_test),
    ]


def _check(p, disk, full_report, locate, F_builder, only_real=False):
    dims = dimension_report(p.n)
    logger.info(
        "segment check: n=%d, bialternate d=%d (Kronecker would be n^2=%d), companion 2d=%d",
        dims["n"], dims["bialternate"], dims["kronecker"], dims["companion"],
    )
    verdict = _endpoint_verdict(p.A1, p.A2, disk, p.tol, dims)
    if verdict is not None:
        return verdict
    tests = _segment_tests(p.A1, p.A2, disk, p.tol, F_builder)
    if only_real:
        tests = tests[:2]
    checks = evaluate_conditions(tests, full_report)
    verdict = summarize_checks(checks, dims, full_report)
    if locate and verdict.status is Status.UNSTABLE and verdict.failed_condition is not Condition.ENDPOINT_UNSTABLE:
        verdict.alpha_witness = locate_crossing(p, verdict.failed_condition, disk)
    return verdict


def check_segment(p, *, full_report=False, locate=False):
    """Decide whether every matrix of the segment is Schur stable.

    Both endpoints are checked first. The three crossing conditions run in
    the order +1, -1, complex pair; the first violated one is reported.
    ``full_report`` evaluates all three and keeps every predicate result;
    ``locate`` fills ``alpha_witness`` via :func:`locate_crossing`.
    """
    return _check(p, UNIT_DISK, full_report, locate, lambda: build_F(p.A1, p.A2))


def check_segment_disk(p, disk, *, full_report=False, locate=False):
    """Like :func:`check_segment` for eigenvalues in ``|z - delta| < r``."""
    if disk.is_unit:
        return check_segment(p, full_report=full_report, locate=locate)
    return _check(p, disk, full_report, locate, lambda: build_F_disk(p.A1, p.A2, disk))


def check_segment_metzler2x2(p, *, full_report=False, locate=False):
    """Shortcut for 2x2 endpoints that are both Metzler (or both -Metzler).

    Such segments have only real eigenvalues, so the complex-pair test is
    skipped.
    """
    if p.n != 2:
        raise PreconditionViolated(f"Metzler shortcut needs 2x2 endpoints, got n={p.n}")
    metzler = is_metzler(p.A1) and is_metzler(p.A2)
    neg_metzler = is_neg_metzler(p.A1) and is_neg_metzler(p.A2)
    if not (metzler or neg_metzler):
        raise PreconditionViolated("endpoints are not both Metzler or both negated-Metzler")
    return _check(p, UNIT_DISK, full_report, locate, None, only_real=True)


def crossing_alpha(beta):
    """Segment parameter of a real crossing from a negative eigenvalue ``beta``.

    Inverts ``beta = -(1 - alpha)/alpha``.
    """
    if not beta < 0:
        raise ValueError(f"beta must be negative, got {beta!r}")
    return 1.0 / (1.0 - beta)


def locate_crossing(p, which, disk=UNIT_DISK):
    """Return ``alpha`` at which ``C(alpha)`` has an eigenvalue on the boundary.

    For the real crossings the most negative eigenvalue ``beta`` of the
    corresponding test matrix maps to ``alpha = 1/(1 - beta)``. For the
    complex crossing the largest real eigenvalue ``mu >= 1`` of the
    companion matrix maps to ``alpha = 1/mu``. The result is checked by a
    direct eigenvalue computation of ``C(alpha)``; :class:`VerificationError`
    is raised if no eigenvalue lies within ``1e-6`` (relative to ``r``) of
    the expected boundary point.
    """
    tol = p.tol
    if which in (Condition.REAL_PLUS_ONE, Condition.REAL_MINUS_ONE):
        plus, minus = condition_matrices(p.A1, p.A2, disk, tol.cond_max)
        mat = plus if which is Condition.REAL_PLUS_ONE else minus
        res = has_negative_real_eigenvalue(mat, tol)
        if res.verdict is not Verdict.HOLDS:
            raise PreconditionViolated(f"{which.value}: test matrix has no negative real eigenvalue")
        alpha = crossing_alpha(res.witness.value.real)
        target = disk.right if which is Condition.REAL_PLUS_ONE else disk.left
        gap = float(np.min(np.abs(eigenvalues(p.at(alpha)) - target)))
    elif which is Condition.COMPLEX_UNIT_CIRCLE:
        F0, F1, F2 = build_F(p.A1, p.A2) if disk.is_unit else build_F_disk(p.A1, p.A2, disk)
        res = has_real_eigenvalue_geq_one(build_M(F0, F1, F2, tol.cond_max), tol)
        if res.verdict is not Verdict.HOLDS:
            raise PreconditionViolated("companion matrix has no real eigenvalue in [1, inf)")
        alpha = 1.0 / res.witness.value.real
        gap = float(np.min(np.abs(np.abs(eigenvalues(p.at(alpha)) - disk.delta) - disk.r)))
    else:
        raise PreconditionViolated(f"cannot locate a crossing for {which}")
    if not gap <= LOCATE_TOL * disk.r:
        raise VerificationError(
            f"alpha={alpha:.12g} recovered for {which.value} but C(alpha) is {gap:.3e} from the boundary"
        )
    return float(alpha)

