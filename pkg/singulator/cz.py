"""
Conley-Zehnder (Robbin-Salamon) index of piecewise-exponential paths of
symplectic matrices.

A path is a chain of segments; on a segment of duration T the path is
A(t) = start @ expm(t * J0 @ S) for 0 <= t <= T with S symmetric, so
A'(t) = A(t) @ J0 @ S. Crossings are the times where det(A(t) - I) = 0.
"""

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq, minimize_scalar

from .config import default_config
from .errors import DegenerateCrossingError, InputError, PathMismatchError

logger = logging.getLogger(__name__)

ENDPOINT_MATCH_TOL = 1e-9


def standard_j(n: int) -> np.ndarray:
    """J0 = [[0, -I], [I, 0]] on R^{2n}"""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def is_symplectic(a: np.ndarray, tol: float = 1e-9) -> bool:
    j0 = standard_j(a.shape[0] // 2)
    return bool(np.max(np.abs(a.T @ j0 @ a - j0)) <= tol)


@dataclass(frozen=True)
class Segment:
    generator: np.ndarray
    duration: float
    start: np.ndarray

    @property
    def dimension(self) -> int:
        return self.generator.shape[0]

    def velocity_generator(self) -> np.ndarray:
        return standard_j(self.dimension // 2) @ self.generator

    def at(self, t: float) -> np.ndarray:
        return self.start @ expm(t * self.velocity_generator())

    def derivative(self, t: float) -> np.ndarray:
        return self.at(t) @ self.velocity_generator()

    def end(self) -> np.ndarray:
        return self.at(self.duration)


@dataclass(frozen=True)
class SymplecticPath:
    dimension: int
    segments: Tuple[Segment, ...]

    @classmethod
    def from_segments(cls, specs: Sequence[Dict[str, Any]],
                      symplectic_tol: float = 1e-9) -> "SymplecticPath":
        """
        Build a path from segment dictionaries

        Args:
            specs: Each {"generator": rows, "duration": value, "start": rows?};
                entries may be numbers or strings such as "1/2" or "2*pi".
                A missing start continues from the previous segment's end
                (identity for the first segment).
            symplectic_tol: Tolerance for the start-matrix check

        Returns:
            SymplecticPath
        """
        if not specs:
            raise InputError("a path needs at least one segment")
        segments: List[Segment] = []
        previous_end: Optional[np.ndarray] = None
        for index, spec in enumerate(specs):
            generator = _parse_matrix(spec.get("generator"), f"segment {index} generator")
            size = generator.shape[0]
            if generator.shape != (size, size) or size % 2:
                raise InputError(f"segment {index}: generator must be a 2n x 2n matrix")
            if not np.allclose(generator, generator.T, atol=1e-12):
                raise InputError(f"segment {index}: generator is not symmetric")
            duration = _parse_number(spec.get("duration"), f"segment {index} duration")
            if duration <= 0:
                raise InputError(f"segment {index}: duration must be positive, got {duration}")
            if "start" in spec:
                start = _parse_matrix(spec["start"], f"segment {index} start")
            elif previous_end is not None:
                start = previous_end
            else:
                start = np.eye(size)
            if start.shape != generator.shape:
                raise InputError(f"segment {index}: start and generator shapes differ")
            if not is_symplectic(start, symplectic_tol):
                raise InputError(f"segment {index}: start matrix is not symplectic")
            if previous_end is not None and np.max(np.abs(start - previous_end)) > ENDPOINT_MATCH_TOL:
                raise PathMismatchError(f"segment {index} does not start where segment {index - 1} ends")
            segment = Segment(generator, duration, start)
            segments.append(segment)
            previous_end = segment.end()
        dims = {s.dimension for s in segments}
        if len(dims) != 1:
            raise InputError(f"segments have different dimensions: {sorted(dims)}")
        return cls(dims.pop(), tuple(segments))

    @classmethod
    def from_json(cls, path: Union[str, Path], symplectic_tol: float = 1e-9) -> "SymplecticPath":
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        specs = data.get("segments") if isinstance(data, dict) else data
        if not isinstance(specs, list):
            raise InputError(f"{path}: expected a list of segments")
        return cls.from_segments(specs, symplectic_tol)

    @property
    def n(self) -> int:
        return self.dimension // 2

    @property
    def duration(self) -> float:
        return sum(s.duration for s in self.segments)

    def start(self) -> np.ndarray:
        return self.segments[0].start

    def end(self) -> np.ndarray:
        return self.segments[-1].end()


def rotation_path(duration: float, speed: float = 1.0, n: int = 1) -> SymplecticPath:
    """t -> exp(i * speed * t) on each of n complex coordinates"""
    return SymplecticPath(2 * n, (Segment(speed * np.eye(2 * n), float(duration), np.eye(2 * n)),))


def constant_path(matrix: Sequence[Sequence[float]], duration: float = 1.0) -> SymplecticPath:
    a = np.asarray(matrix, dtype=float)
    if not is_symplectic(a):
        raise InputError("constant path value is not symplectic")
    return SymplecticPath(a.shape[0], (Segment(np.zeros_like(a), float(duration), a),))


def concatenate(first: SymplecticPath, second: SymplecticPath) -> SymplecticPath:
    if first.dimension != second.dimension:
        raise PathMismatchError(f"dimensions differ: {first.dimension} vs {second.dimension}")
    if np.max(np.abs(first.end() - second.start())) > ENDPOINT_MATCH_TOL:
        raise PathMismatchError("the second path does not start where the first ends")
    return SymplecticPath(first.dimension, first.segments + second.segments)


def _interleave(n1: int, n2: int) -> np.ndarray:
    """Permutation from (x1, y1, x2, y2) block order to (x1, x2, y1, y2)"""
    order = list(range(n1)) + list(range(2 * n1, 2 * n1 + n2)) \
        + list(range(n1, 2 * n1)) + list(range(2 * n1 + n2, 2 * n1 + 2 * n2))
    return np.eye(2 * (n1 + n2))[order]


def _block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0],) * 2)
    out[:a.shape[0], :a.shape[0]] = a
    out[a.shape[0]:, a.shape[0]:] = b
    return out


def direct_sum(first: SymplecticPath, second: SymplecticPath) -> SymplecticPath:
    """A_t + B_t on R^{2n1} + R^{2n2}; segment durations must agree pairwise"""
    if len(first.segments) != len(second.segments) or any(
            not math.isclose(a.duration, b.duration, rel_tol=1e-12)
            for a, b in zip(first.segments, second.segments)):
        raise PathMismatchError("direct sum needs the same segmentation on both paths")
    p = _interleave(first.n, second.n)
    segments = tuple(
        Segment(p @ _block(a.generator, b.generator) @ p.T, a.duration, p @ _block(a.start, b.start) @ p.T)
        for a, b in zip(first.segments, second.segments)
    )
    return SymplecticPath(first.dimension + second.dimension, segments)


def reparameterized(path: SymplecticPath, factor: float) -> SymplecticPath:
    """Same image traversed factor times slower"""
    if factor <= 0:
        raise ValueError("reparameterization factor must be positive")
    segments = tuple(Segment(s.generator / factor, s.duration * factor, s.start) for s in path.segments)
    return SymplecticPath(path.dimension, segments)


# ---------- Crossings ----------

@dataclass(frozen=True)
class Crossing:
    time: float
    kernel_dim: int
    signature: int
    endpoint: bool = False

    @property
    def weight(self) -> Fraction:
        return Fraction(self.signature, 2) if self.endpoint else Fraction(self.signature)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "time": round(self.time, 9),
            "kernel_dim": self.kernel_dim,
            "signature": self.signature,
            "endpoint": self.endpoint,
        }


@dataclass
class CrossingFinder:
    """Locates and classifies crossings segment by segment"""

    samples: int = 256
    root_tol: float = 1e-10
    kernel_tol: float = 1e-6
    degenerate_tol: float = 1e-8
    touch_tol: float = 1e-7

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]] = None) -> "CrossingFinder":
        config = config or default_config()
        return cls(
            samples=config.get("cz_samples", 256),
            root_tol=config.get("cz_root_tol", 1e-10),
            kernel_tol=config.get("cz_kernel_tol", 1e-6),
            degenerate_tol=config.get("cz_degenerate_tol", 1e-8),
        )

    def classify(self, segment: Segment, t: float, offset: float, endpoint: bool) -> Optional[Crossing]:
        shifted = segment.at(t) - np.eye(segment.dimension)
        _, sigma, vt = np.linalg.svd(shifted)
        kernel = vt[sigma < self.kernel_tol].T
        if kernel.shape[1] == 0:
            return None
        j0 = standard_j(segment.dimension // 2)
        form = kernel.T @ j0.T @ segment.derivative(t) @ kernel
        eigenvalues = np.linalg.eigvalsh((form + form.T) / 2)
        if np.any(np.abs(eigenvalues) < self.degenerate_tol):
            raise DegenerateCrossingError(
                f"degenerate crossing at t={offset + t:.10g}: crossing form eigenvalues {eigenvalues}"
            )
        signature = int(np.sum(eigenvalues > 0) - np.sum(eigenvalues < 0))
        return Crossing(offset + t, kernel.shape[1], signature, endpoint)

    def interior_times(self, segment: Segment) -> List[float]:
        duration = segment.duration
        speed = np.linalg.norm(segment.velocity_generator(), 2)
        count = max(self.samples, int(math.ceil(20 * speed * duration / (2 * math.pi))) + 1)
        grid = np.linspace(0.0, duration, count + 1)
        eye = np.eye(segment.dimension)

        def det(t: float) -> float:
            return float(np.linalg.det(segment.at(t) - eye))

        def smallest(t: float) -> float:
            return float(np.linalg.svd(segment.at(t) - eye, compute_uv=False)[-1])

        dets = [det(t) for t in grid]
        sigmas = [smallest(t) for t in grid]
        roots: List[float] = []
        for i in range(count):
            if dets[i] * dets[i + 1] < 0:
                roots.append(brentq(det, grid[i], grid[i + 1], xtol=self.root_tol))
        # touching roots (no sign change) show up as local minima of sigma_min
        for i in range(count + 1):
            left, right = max(i - 1, 0), min(i + 1, count)
            if sigmas[i] > sigmas[left] or sigmas[i] > sigmas[right]:
                continue
            if sigmas[i] == sigmas[left] == sigmas[right]:
                continue  # flat, e.g. a constant segment
            if i in (0, count) and sigmas[i] < self.kernel_tol:
                continue  # endpoint crossing, classified separately
            result = minimize_scalar(smallest, bounds=(grid[left], grid[right]), method="bounded",
                                     options={"xatol": self.root_tol})
            if result.fun < self.touch_tol:
                roots.append(float(result.x))
        margin = 1e-6
        interior = sorted(t for t in roots if margin < t < duration - margin)
        merged: List[float] = []
        for t in interior:
            if not merged or t - merged[-1] > 1e-6:
                merged.append(t)
        return merged

    def scan(self, path: SymplecticPath) -> List[Crossing]:
        crossings: List[Crossing] = []
        offset = 0.0
        for segment in path.segments:
            times = [(0.0, True)] + [(t, False) for t in self.interior_times(segment)] \
                + [(segment.duration, True)]
            for t, endpoint in times:
                crossing = self.classify(segment, t, offset, endpoint)
                if crossing is not None:
                    crossings.append(crossing)
            offset += segment.duration
        logger.debug("found %d crossings on %d segments", len(crossings), len(path.segments))
        return crossings


def find_crossings(path: SymplecticPath, config: Optional[Dict[str, Any]] = None) -> List[Crossing]:
    """
    All crossings of the path, in time order

    Segment endpoints are reported with endpoint=True; at a junction of two
    segments the crossing appears twice, once per segment, each counted
    with half weight.
    """
    return CrossingFinder.from_config(config).scan(path)


def cz_index(path: SymplecticPath, config: Optional[Dict[str, Any]] = None) -> Fraction:
    """Robbin-Salamon index: half signatures at endpoints plus full signatures inside"""
    return sum((c.weight for c in find_crossings(path, config)), Fraction(0))


def parity_holds(path: SymplecticPath, index: Fraction) -> Optional[bool]:
    """(-1)^(n - CZ) = sign det(I - A_1); None when the endpoint is degenerate"""
    d = float(np.linalg.det(np.eye(path.dimension) - path.end()))
    if abs(d) < 1e-9 or index.denominator != 1:
        return None
    return (-1) ** ((path.n - int(index)) % 2) == (1 if d > 0 else -1)


# ---------- Input parsing ----------

def _parse_number(value: Any, what: str) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        import sympy

        try:
            return float(sympy.sympify(value, rational=True))
        except (sympy.SympifyError, TypeError, ValueError) as e:
            raise InputError(f"{what}: cannot read number {value!r}") from e
    raise InputError(f"{what}: expected a number, got {value!r}")


def _parse_matrix(rows: Any, what: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what}: expected a list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"{what}: rows have different lengths")
    return np.array([[_parse_number(x, what) for x in row] for row in rows], dtype=float)
