"""JSON problem files.

Three kinds are accepted::

    {"kind": "segment", "A1": [[...]], "A2": [[...]]}
    {"kind": "disk-segment", "A1": ..., "A2": ..., "disk": {"delta": 0.5, "r": 0.6}}
    {"kind": "polytope", "matrices": [[[...]], ...]}
    {"kind": "polytope", "B0": [[...]], "b": [...], "C": [[...], ...],
     "orientation": "ColumnShared"}

Any kind may carry ``"tol": {"imag_tol": ..., "sign_tol": ..., "one_tol": ...,
"cond_max": ...}``.
"""

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SegstabError
from .linalg import DEFAULT_TOL, ToleranceConfig
from .polytope import Orientation, RankOnePolytope, validate_rank_one_structure
from .segment import DiskRegion, SegmentProblem

KINDS = ("segment", "disk-segment", "polytope")
TOL_FIELDS = tuple(f.name for f in dataclasses.fields(ToleranceConfig))


class ProblemFileError(SegstabError, ValueError):
    pass


@dataclass
class ProblemFile:
    kind: str
    segment: Optional[SegmentProblem] = None
    polytope: Optional[RankOnePolytope] = None
    matrices: Optional[list] = None
    disk: Optional[DiskRegion] = None
    tol: ToleranceConfig = DEFAULT_TOL

    def with_tol(self, tol):
        seg = None if self.segment is None else SegmentProblem(self.segment.A1, self.segment.A2, tol)
        return dataclasses.replace(self, segment=seg, tol=tol)


def _matrix(data, name):
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f"{name}: not a numeric matrix ({exc})") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ProblemFileError(f"{name}: expected a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ProblemFileError(f"{name}: contains non-finite values")
    return arr


def _vector(data, name):
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f"{name}: not a numeric array ({exc})") from exc
    if not np.all(np.isfinite(arr)):
        raise ProblemFileError(f"{name}: contains non-finite values")
    return arr


def _tolerances(data):
    if data is None:
        return DEFAULT_TOL
    if not isinstance(data, dict):
        raise ProblemFileError("tol: expected an object")
    unknown = set(data) - set(TOL_FIELDS)
    if unknown:
        raise ProblemFileError(f"tol: unknown fields {sorted(unknown)}")
    try:
        return ToleranceConfig(**{k: float(v) for k, v in data.items()})
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f"tol: {exc}") from exc


def problem_from_dict(data):
    if not isinstance(data, dict):
        raise ProblemFileError("top level must be a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ProblemFileError(f"kind must be one of {KINDS}, got {kind!r}")
    tol = _tolerances(data.get("tol"))
    try:
        if kind in ("segment", "disk-segment"):
            for key in ("A1", "A2"):
                if key not in data:
                    raise ProblemFileError(f"{kind} problem needs {key}")
            A1, A2 = _matrix(data["A1"], "A1"), _matrix(data["A2"], "A2")
            if A1.shape != A2.shape:
                raise ProblemFileError(f"A1 is {A1.shape} but A2 is {A2.shape}")
            disk = None
            if kind == "disk-segment":
                spec = data.get("disk")
                if not isinstance(spec, dict) or "delta" not in spec or "r" not in spec:
                    raise ProblemFileError('disk-segment problem needs "disk": {"delta": ..., "r": ...}')
                disk = DiskRegion(float(spec["delta"]), float(spec["r"]))
            return ProblemFile(kind, segment=SegmentProblem(A1, A2, tol), disk=disk, tol=tol)

        if "matrices" in data:
            raw = data["matrices"]
            if not isinstance(raw, list) or not raw:
                raise ProblemFileError("matrices: expected a nonempty list")
            mats = [_matrix(m, f"matrices[{i}]") for i, m in enumerate(raw)]
            if any(m.shape != mats[0].shape for m in mats):
                raise ProblemFileError("matrices: dimensions differ")
            return ProblemFile(kind, polytope=validate_rank_one_structure(mats), matrices=mats, tol=tol)
        for key in ("B0", "b", "C"):
            if key not in data:
                raise ProblemFileError(f'polytope needs either "matrices" or B0, b and C (missing {key})')
        poly = RankOnePolytope(
            _matrix(data["B0"], "B0"),
            _vector(data["b"], "b"),
            _vector(data["C"], "C"),
            Orientation(data.get("orientation", Orientation.COLUMN_SHARED.value)),
        )
        return ProblemFile(kind, polytope=poly, tol=tol)
    except ProblemFileError:
        raise
    except (ValueError, TypeError) as exc:
        # dimension and structure errors from the domain constructors
        raise ProblemFileError(str(exc)) from exc


def problem_to_dict(problem):
    out = {"kind": problem.kind}
    if problem.segment is not None:
        out["A1"] = problem.segment.A1.tolist()
        out["A2"] = problem.segment.A2.tolist()
    if problem.disk is not None:
        out["disk"] = {"delta": problem.disk.delta, "r": problem.disk.r}
    if problem.matrices is not None:
        out["matrices"] = [m.tolist() for m in problem.matrices]
    elif problem.polytope is not None:
        P = problem.polytope
        out.update(B0=P.B0.tolist(), b=P.b.tolist(), C=P.C.tolist(), orientation=P.orientation.value)
    if problem.tol != DEFAULT_TOL:
        out["tol"] = dataclasses.asdict(problem.tol)
    return out


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"malformed JSON: {exc}") from exc
    return problem_from_dict(data)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dumps(problem):
    return json.dumps(problem_to_dict(problem), indent=2)
