"""Dense real matrix kernels: bialternate products, eigenvalues, solves.

Square matrices are plain ``numpy.ndarray`` objects of shape ``(n, n)``;
:func:`as_square` validates and normalizes anything array-like.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import linalg as sla

from .errors import DimensionError, EigenSolverError, IllConditioned, InvalidMatrixError


@dataclass(frozen=True)
class ToleranceConfig:
    """Classification thresholds used by the eigenvalue predicates.

    ``imag_tol`` is relative: an eigenvalue counts as real when
    ``|Im z| <= imag_tol * (1 + |z|)``.
    """

    imag_tol: float = 1e-8
    sign_tol: float = 1e-9
    one_tol: float = 1e-9
    cond_max: float = 1e12

    def __post_init__(self):
        for name in ("imag_tol", "sign_tol", "one_tol"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite nonnegative number, got {value!r}")
        if not self.cond_max > 0:
            raise ValueError(f"cond_max must be positive, got {self.cond_max!r}")

    def is_real(self, z):
        return abs(z.imag) <= self.imag_tol * (1.0 + abs(z))


DEFAULT_TOL = ToleranceConfig()


def as_square(A, name="matrix"):
    """Return ``A`` as a finite float64 ``(n, n)`` array, or raise."""
    arr = np.asarray(A, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"{name} must be a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrixError(f"{name} contains NaN or Inf")
    return arr


def _same_dim(A, B, names=("A", "B")):
    A = as_square(A, names[0])
    B = as_square(B, names[1])
    if A.shape != B.shape:
        raise DimensionError(f"{names[0]} is {A.shape} but {names[1]} is {B.shape}")
    return A, B


@lru_cache(maxsize=64)
def _pair_index(n):
    p, q = np.triu_indices(n, k=1)
    p.setflags(write=False)
    q.setflags(write=False)
    return p, q


def index_pairs(n):
    """Lexicographically ordered pairs ``(p, q)``, ``0 <= p < q < n``."""
    p, q = _pair_index(n)
    return list(zip(p.tolist(), q.tolist()))


def bialternate_dim(n):
    return n * (n - 1) // 2


def bialternate_product(A, B):
    """Bialternate product ``A . B`` of two ``n x n`` matrices.

    Rows and columns are indexed by the pairs of :func:`index_pairs`. Entry
    ``((i, j), (k, l))`` is half the sum of the two mixed 2x2 minors::

        | a_ik a_il |   | b_ik b_il |
        | b_jk b_jl | + | a_jk a_jl |

    For ``n == 1`` the result is the empty ``0 x 0`` matrix.
    """
    A, B = _same_dim(A, B)
    n = A.shape[0]
    p, q = _pair_index(n)
    rows_i, cols_k = np.ix_(p, p)
    rows_j, cols_l = np.ix_(q, q)
    first = A[rows_i, cols_k] * B[rows_j, cols_l] - A[rows_i, cols_l] * B[rows_j, cols_k]
    second = B[rows_i, cols_k] * A[rows_j, cols_l] - B[rows_i, cols_l] * A[rows_j, cols_k]
    # swapping A and B swaps the two minors, so the sum is bitwise symmetric
    return 0.5 * (first + second)


def eigenvalues(A):
    """All eigenvalues of a real square matrix, as a complex array."""
    A = as_square(A)
    try:
        values = sla.eigvals(A, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"eigenvalue iteration failed: {exc}") from exc
    if values.shape != (A.shape[0],) or not np.all(np.isfinite(values)):
        raise EigenSolverError("eigensolver returned an incomplete or non-finite spectrum")
    return values.astype(complex)


def spectral_radius(A):
    return float(np.max(np.abs(eigenvalues(A))))


class Solved(NamedTuple):
    x: np.ndarray
    cond: float


def _factor(B, cond_max, what):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            lu, piv = sla.lu_factor(B, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise IllConditioned(np.inf, cond_max, what) from exc
    if np.any(np.diag(lu) == 0.0):
        raise IllConditioned(np.inf, cond_max, what)
    anorm = np.linalg.norm(B, 1)
    gecon = sla.get_lapack_funcs("gecon", (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    cond = np.inf if rcond == 0.0 else 1.0 / rcond
    if info != 0 or not cond <= cond_max:
        raise IllConditioned(cond, cond_max, what)
    return (lu, piv), float(cond)


def solve_right(A, B, cond_max=DEFAULT_TOL.cond_max):
    """Return ``X = A B^{-1}`` (so ``X B = A``) with a 1-norm condition estimate of B."""
    A, B = _same_dim(A, B)
    factors, cond = _factor(B, cond_max, "right divisor")
    x = sla.lu_solve(factors, A.T, trans=1, check_finite=False).T
    return Solved(x, cond)


def solve_left(A, B, cond_max=DEFAULT_TOL.cond_max):
    """Return ``X = B^{-1} A`` (so ``B X = A``) with a 1-norm condition estimate of B."""
    A, B = _same_dim(A, B)
    factors, cond = _factor(B, cond_max, "left divisor")
    x = sla.lu_solve(factors, A, check_finite=False)
    return Solved(x, cond)


def companion_from_quadratic(X, Y):
    """Linearization ``[[0, I], [-X, -Y]]`` of ``det(lam^2 I + lam Y + X)``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape != Y.shape:
        raise DimensionError(f"X and Y must be equal-size square matrices, got {X.shape}, {Y.shape}")
    d = X.shape[0]
    Z = np.zeros((2 * d, 2 * d))
    Z[:d, d:] = np.eye(d)
    Z[d:, :d] = -X
    Z[d:, d:] = -Y
    return Z


def characteristic_polynomial(A):
    """Monic coefficients of ``det(sI - A)``, highest degree first.

    Uses the Faddeev-LeVerrier recurrence, so it shares no code path with
    :func:`eigenvalues`. Accuracy degrades for large ``n``; intended for
    the small matrices used in cross-checks.
    """
    A = as_square(A)
    n = A.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    M = np.eye(n)
    for k in range(1, n + 1):
        AM = A @ M
        c = -np.trace(AM) / k
        coeffs[k] = c
        M = AM + c * np.eye(n)
    return coeffs
