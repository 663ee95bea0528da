"""Eigenvalue-location predicates with an explicit marginal band.

Every predicate returns a :class:`PredicateResult`. The boundary cases that
floating point cannot decide land in ``Verdict.MARGINAL`` instead of being
resolved by rounding noise.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import DEFAULT_TOL, as_square, eigenvalues


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class EigClass:
    """An eigenvalue with its real/complex classification.

    ``margin`` is the signed distance to the boundary the predicate tests;
    positive means the safe side.
    """

    value: complex
    is_real: bool
    margin: float

    def to_dict(self):
        return {
            "re": float(self.value.real),
            "im": float(self.value.imag),
            "is_real": bool(self.is_real),
            "margin": float(self.margin),
        }


@dataclass(frozen=True)
class PredicateResult:
    verdict: Verdict
    witness: Optional[EigClass] = None

    def __post_init__(self):
        if self.verdict is Verdict.MARGINAL and self.witness is None:
            raise ValueError("a Marginal result needs a witness")

    @property
    def holds(self):
        return self.verdict is Verdict.HOLDS


def _spectrum(A_or_values, spectrum):
    if spectrum:
        return np.asarray(A_or_values, dtype=complex).ravel()
    return eigenvalues(as_square(A_or_values))


def _real_parts(values, tol):
    mask = np.abs(values.imag) <= tol.imag_tol * (1.0 + np.abs(values))
    return values[mask]


def _nearest_to_axis(values, margin):
    # witness for a spectrum with no real eigenvalue: the one closest to the real axis
    if values.size == 0:
        return None
    z = values[int(np.argmin(np.abs(values.imag)))]
    return EigClass(complex(z), False, float(margin(z)))


def modulus_test(values, radius=1.0, center=0.0, tol=DEFAULT_TOL):
    """Three-way test of ``max |z - center| < radius`` over a spectrum.

    The marginal band is ``one_tol`` on the normalized distance
    ``|z - center| / radius``.
    """
    values = np.asarray(values, dtype=complex).ravel()
    if values.size == 0:
        return PredicateResult(Verdict.HOLDS)
    dist = np.abs(values - center) / radius
    k = int(np.argmax(dist))
    z = values[k]
    witness = EigClass(complex(z), bool(tol.is_real(z)), float(radius * (1.0 - dist[k])))
    if dist[k] < 1.0 - tol.one_tol:
        return PredicateResult(Verdict.HOLDS, witness)
    if dist[k] <= 1.0 + tol.one_tol:
        return PredicateResult(Verdict.MARGINAL, witness)
    return PredicateResult(Verdict.FAILS, witness)


def is_schur_stable(A, tol=DEFAULT_TOL, *, spectrum=False):
    """Holds iff every eigenvalue lies strictly inside the unit disk.

    The witness is the eigenvalue of largest modulus; its margin is
    ``1 - |lambda|``.
    """
    return modulus_test(_spectrum(A, spectrum), tol=tol)


def is_disk_stable(A, delta, r, tol=DEFAULT_TOL, *, spectrum=False):
    """Holds iff every eigenvalue satisfies ``|lambda - delta| < r``."""
    if not r > 0:
        raise ValueError(f"disk radius must be positive, got {r!r}")
    return modulus_test(_spectrum(A, spectrum), radius=r, center=delta, tol=tol)


def has_negative_real_eigenvalue(A, tol=DEFAULT_TOL, *, spectrum=False):
    """Holds iff some eigenvalue is real and strictly below ``-sign_tol``.

    Real eigenvalues within ``sign_tol`` of zero make the result Marginal
    when no eigenvalue is clearly negative. Pass ``spectrum=True`` to give
    the eigenvalues directly instead of a matrix.
    """
    values = _spectrum(A, spectrum)
    reals = _real_parts(values, tol)
    if reals.size == 0:
        return PredicateResult(Verdict.FAILS, _nearest_to_axis(values, lambda z: z.real))
    re = reals.real
    k = int(np.argmin(re))
    if re[k] < -tol.sign_tol:
        return PredicateResult(Verdict.HOLDS, EigClass(complex(reals[k]), True, float(re[k])))
    j = int(np.argmin(np.abs(re)))
    witness = EigClass(complex(reals[j]), True, float(re[j]))
    if abs(re[j]) <= tol.sign_tol:
        return PredicateResult(Verdict.MARGINAL, witness)
    return PredicateResult(Verdict.FAILS, witness)


def has_real_eigenvalue_geq_one(A, tol=DEFAULT_TOL, *, spectrum=False):
    """Holds iff some real eigenvalue lies in ``[1, inf)``.

    Real eigenvalues with ``|lambda - 1| < one_tol`` are Marginal unless a
    clearly larger one exists; with ``one_tol == 0`` the band is empty and
    ``lambda == 1`` holds. The witness is the largest real eigenvalue, with
    margin ``1 - lambda``.
    """
    values = _spectrum(A, spectrum)
    reals = _real_parts(values, tol)
    if reals.size == 0:
        return PredicateResult(Verdict.FAILS, _nearest_to_axis(values, lambda z: 1.0 - z.real))
    re = reals.real
    k = int(np.argmax(re))
    witness = EigClass(complex(reals[k]), True, float(1.0 - re[k]))
    if re[k] >= 1.0 + tol.one_tol:
        return PredicateResult(Verdict.HOLDS, witness)
    if abs(re[k] - 1.0) < tol.one_tol:
        return PredicateResult(Verdict.MARGINAL, witness)
    return PredicateResult(Verdict.FAILS, witness)


def is_metzler(A):
    A = as_square(A)
    off = ~np.eye(A.shape[0], dtype=bool)
    return bool(np.all(A[off] >= 0))


def is_neg_metzler(A):
    return is_metzler(-as_square(A))
