"""Case classification of bounded travelling waves.

The cubic ``P`` has roots labelled ``m <= M`` and ``z0 = c - c0 - M - m``.
For ``alpha = 0`` the wave type depends only on the sign of ``gamma`` and the
ordering of the roots. For ``alpha != 0`` the position of the pole relative
to the roots decides between smooth, peaked and cusped waves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .codes import CASE_BY_CODE, CUSPON_KINDS, KIND_BY_CODE, PEAKON_KINDS, WaveKind
from .errors import NoPole
from .model import (
    DEFAULT_CLUSTER_TOL,
    ModelParams,
    TravelingWaveProblem,
    constants_from_roots,
    potential_eval,
    spectrum as _spectrum,
)


@dataclass(frozen=True)
class WaveClass:
    """Outcome of a classification.

    ``interval`` is the range ``[min phi, max phi]`` of the wave (for cuspons
    one end is the pole, not a root). ``m``, ``M`` and ``z0`` are the roots in
    the roles used by the case tables.
    """

    kind: WaveKind
    interval: Optional[tuple]
    m: Optional[float]
    M: Optional[float]
    z0: Optional[float]
    pole: Optional[float]
    theorem_case: str

    @property
    def bounded(self) -> bool:
        return self.kind is not WaveKind.NoBoundedWave

    @property
    def nontrivial(self) -> bool:
        return self.kind not in (WaveKind.NoBoundedWave, WaveKind.Constant)


def _opt(v):
    return None if v is None or math.isnan(v) else float(v)


def _make_class(kind_code, case_code, m, M, z0, lo, hi, pole):
    interval = None if math.isnan(lo) else (float(lo), float(hi))
    return WaveClass(
        kind=KIND_BY_CODE[int(kind_code)],
        interval=interval,
        m=_opt(m),
        M=_opt(M),
        z0=_opt(z0),
        pole=pole,
        theorem_case=CASE_BY_CODE[int(case_code)],
    )


def _pole_args(params: ModelParams, c: float):
    pole = c + params.gamma / params.alpha ** 2 if params.has_pole else 0.0
    return pole, params.has_pole


def classify(problem: TravelingWaveProblem, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> WaveClass:
    """Classify the bounded travelling wave defined by ``problem``."""
    p = problem
    pole, has_pole = _pole_args(p.params, p.c)
    out = kernels.classify_coeffs(
        p.c - p.params.c0, p.A, p.B, pole, has_pole, p.params.gamma, cluster_tol)
    kind, case, m, M, z0, lo, hi = out
    return _make_class(kind, case, m, M, z0, lo, hi, p.pole)


def classify_kdv(problem: TravelingWaveProblem, spectrum=None,
                 cluster_tol: float = DEFAULT_CLUSTER_TOL) -> WaveClass:
    if problem.params.alpha != 0.0:
        raise ValueError("classify_kdv requires alpha = 0")
    return _classify_spectrum(problem, spectrum, cluster_tol)


def classify_dgh(problem: TravelingWaveProblem, spectrum=None, pole=None,
                 cluster_tol: float = DEFAULT_CLUSTER_TOL) -> WaveClass:
    if problem.params.alpha == 0.0:
        raise ValueError("classify_dgh requires alpha != 0")
    return _classify_spectrum(problem, spectrum, cluster_tol)


def _classify_spectrum(problem, spec, cluster_tol):
    if spec is None:
        spec = _spectrum(problem, cluster_tol)
    flat = spec.flat()
    pole, has_pole = _pole_args(problem.params, problem.c)
    g = problem.params.gamma
    if len(flat) == 1:
        return WaveClass(WaveKind.NoBoundedWave, None, None, None, None, problem.pole, "none")
    r1, r2, r3 = flat
    for m, M, z0 in ((r2, r3, r1), (r1, r2, r3)):
        kind, case, lo, hi = kernels.classify_roles(m, M, z0, pole, has_pole, g, cluster_tol)
        if kind > 1:
            return _make_class(kind, case, m, M, z0, lo, hi, problem.pole)
    for v, k in spec.roots:
        if k >= 2:
            others = [x for x in flat if x != v] or [v]
            return WaveClass(WaveKind.Constant, (v, v), v, v, others[0], problem.pole, "constant")
    return WaveClass(WaveKind.NoBoundedWave, None, r2, r3, r1, problem.pole, "none")


def classify_roots(params: ModelParams, c: float, m: float, M: float,
                   cluster_tol: float = DEFAULT_CLUSTER_TOL) -> WaveClass:
    """Classify with the roots in fixed roles ``m <= M``, ``z0 = c - c0 - M - m``."""
    z0 = c - params.c0 - M - m
    pole, has_pole = _pole_args(params, c)
    kind, case, lo, hi = kernels.classify_roles(m, M, z0, pole, has_pole, params.gamma, cluster_tol)
    return _make_class(kind, case, m, M, z0, lo, hi, pole_location_or_none(params, c))


def pole_location_or_none(params, c):
    return c + params.gamma / params.alpha ** 2 if params.has_pole else None


def stumpon_constant(params: ModelParams, c: float) -> float:
    """The value of A that admits plateaus ``phi == pole`` of positive length.

    It is the A for which ``P'(pole) = 0``.
    """
    if not params.has_pole:
        raise NoPole("the stumpon constant needs alpha != 0")
    ct = c + params.gamma / params.alpha ** 2
    return 3.0 * ct ** 2 + 2.0 * (params.c0 - c) * ct


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def composite_compatible(problems: Sequence[TravelingWaveProblem],
                         classes: Sequence[WaveClass],
                         tol: float = 1e-9) -> bool:
    """Whether peakon/cuspon segments can be joined at ``phi == pole``.

    All segments must share the model, the speed and A; B may differ.
    """
    if len(problems) != len(classes) or not problems:
        return False
    first = problems[0]
    for p, wc in zip(problems, classes):
        if p.params != first.params or not _close(p.c, first.c, tol):
            return False
        if not _close(p.A, first.A, tol):
            return False
        if wc.kind not in PEAKON_KINDS and wc.kind not in CUSPON_KINDS:
            return False
        lo, hi = wc.interval
        pole = p.pole
        if not (_close(lo, pole, tol) or _close(hi, pole, tol)):
            return False
    return True


@dataclass(frozen=True)
class PhaseDiagram:
    axes: tuple  # ("m", "M") or ("A", "B")
    x: np.ndarray  # first-axis values
    y: np.ndarray  # second-axis values
    kinds: np.ndarray  # object array of WaveKind, shape (len(x), len(y))
    cases: np.ndarray  # object array of theorem-case labels
    fixed: dict

    def rows(self):
        """Yield ``(axis1, axis2, kind, theorem_case)`` in row-major order."""
        for i, a in enumerate(self.x):
            for j, b in enumerate(self.y):
                yield float(a), float(b), self.kinds[i, j], self.cases[i, j]


def sweep(params: ModelParams, c: float, axes: str, grid_spec,
          cluster_tol: float = DEFAULT_CLUSTER_TOL) -> PhaseDiagram:
    """Classify every cell of a grid over the ``(m, M)`` or ``(A, B)`` plane.

    ``grid_spec`` is ``((lo1, hi1, n1), (lo2, hi2, n2))``. Cells with ``m > M``
    are NoBoundedWave and cells with ``m == M`` are Constant by convention.
    """
    (a0, a1, na), (b0, b1, nb) = grid_spec
    if not (na >= 1 and nb >= 1):
        raise ValueError("grid resolutions must be >= 1")
    for v in (a0, a1, b0, b1):
        if not math.isfinite(v):
            raise ValueError("grid ranges must be finite")
    if a1 <= a0 or b1 <= b0:
        raise ValueError("grid ranges must have positive extent")
    x = np.linspace(a0, a1, int(na))
    y = np.linspace(b0, b1, int(nb))
    X, Y = np.meshgrid(x, y, indexing="ij")
    pole, has_pole = _pole_args(params, c)
    axes = axes.replace(",", "").replace(" ", "")
    if axes == "mM":
        z0 = c - params.c0 - X - Y
        kind, case, _, _ = kernels.classify_roles_batch(
            X.ravel(), Y.ravel(), z0.ravel(), pole, has_pole, params.gamma, cluster_tol)
        axes_t = ("m", "M")
    elif axes == "AB":
        s = np.full(X.size, c - params.c0)
        kind, case, _, _ = kernels.classify_batch(
            s, X.ravel(), Y.ravel(), pole, has_pole, params.gamma, cluster_tol)
        axes_t = ("A", "B")
    else:
        raise ValueError(f"unknown axes {axes!r}; expected 'mM' or 'AB'")
    kinds = np.array([KIND_BY_CODE[k] for k in kind], dtype=object).reshape(X.shape)
    cases = np.array([CASE_BY_CODE[k] for k in case], dtype=object).reshape(X.shape)
    fixed = dict(alpha=params.alpha, c0=params.c0, gamma=params.gamma, c=c)
    return PhaseDiagram(axes_t, x, y, kinds, cases, fixed)


def sign_oracle(problem: TravelingWaveProblem, lo: float, hi: float, n: int) -> bool:
    """True iff F > 0 at ``n`` Chebyshev points inside ``(lo, hi)``.

    Points that coincide with the pole are skipped.
    """
    if not lo < hi:
        raise ValueError("expected lo < hi")
    if n < 2:
        raise ValueError("expected n >= 2")
    k = np.arange(1, n + 1)
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * k - 1) * np.pi / (2 * n))
    pole = problem.pole
    if pole is not None:
        x = x[x != pole]
    return bool(np.all(potential_eval(problem, x) > 0.0))


def problem_from_roots(params: ModelParams, c: float, m: float, M: float) -> TravelingWaveProblem:
    A, B, _ = constants_from_roots(params, c, m, M)
    return TravelingWaveProblem(params, c, A, B)
