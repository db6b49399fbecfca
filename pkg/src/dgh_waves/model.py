"""Parameters, the cubic potential and the quadrature function.

A travelling wave ``u(t, x) = phi(x - c t)`` of the DGH equation satisfies

    (phi')**2 = F(phi) = P(phi) / (alpha**2 * (c - phi) + gamma),
    P(phi)    = -phi**3 + (c - c0) * phi**2 + A * phi + B.

For ``alpha != 0`` the denominator is ``alpha**2 * (pole - phi)`` with
``pole = c + gamma / alpha**2``; for ``alpha == 0`` it is the constant ``gamma``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import BurgersCaseExcluded, PoleEvaluation

DEFAULT_CLUSTER_TOL = 1e-9


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class ModelParams:
    alpha: float
    c0: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "c0", "gamma"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite(alpha=self.alpha, c0=self.c0, gamma=self.gamma)
        if self.alpha == 0.0 and self.gamma == 0.0:
            raise BurgersCaseExcluded("alpha = gamma = 0 (inviscid Burgers) is not supported")

    @property
    def has_pole(self) -> bool:
        return self.alpha != 0.0


@dataclass(frozen=True)
class TravelingWaveProblem:
    params: ModelParams
    c: float
    A: float
    B: float

    def __post_init__(self):
        for name in ("c", "A", "B"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite(c=self.c, A=self.A, B=self.B)

    @property
    def pole(self) -> Optional[float]:
        return pole_location(self.params, self.c)

    def replace(self, **changes) -> "TravelingWaveProblem":
        fields = dict(params=self.params, c=self.c, A=self.A, B=self.B)
        fields.update(changes)
        return TravelingWaveProblem(**fields)


@dataclass(frozen=True)
class Cubic:
    """Coefficients of P, degree-descending; the leading one is always -1."""

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != 4 or self.coefficients[0] != -1.0:
            raise ValueError("expected 4 coefficients with leading coefficient -1")

    def __call__(self, phi):
        return np.polyval(self.coefficients, phi)


@dataclass(frozen=True)
class PotentialSpectrum:
    roots: tuple  # ((value, multiplicity), ...) ascending
    pole: Optional[float]
    leading_sign: int = -1

    @property
    def n_real(self) -> int:
        return sum(k for _, k in self.roots)

    def flat(self) -> list:
        """Roots repeated by multiplicity, ascending."""
        return [v for v, k in self.roots for _ in range(k)]


def make_problem(params: ModelParams, c: float, A: float, B: float) -> TravelingWaveProblem:
    return TravelingWaveProblem(params, c, A, B)


def cubic_of(problem: TravelingWaveProblem) -> Cubic:
    p = problem
    return Cubic((-1.0, p.c - p.params.c0, p.A, p.B))


def solve_cubic(cubic: Cubic, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> tuple:
    """Real roots of ``cubic`` with multiplicities.

    Roots are computed in closed form and polished by Newton's method. Double
    roots are detected at the critical points of P, where they are
    well-conditioned, and roots closer than ``cluster_tol * max(1, |root|)``
    are merged.
    """
    if not cluster_tol > 0:
        raise ValueError("cluster_tol must be positive")
    _, s, A, B = cubic.coefficients
    vals, ks = kernels.cubic_roots(float(s), float(A), float(B), float(cluster_tol))
    return tuple((float(v), int(k)) for v, k in zip(vals, ks))


def spectrum(problem: TravelingWaveProblem, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> PotentialSpectrum:
    return PotentialSpectrum(solve_cubic(cubic_of(problem), cluster_tol), problem.pole)


def constants_from_roots(params: ModelParams, c: float, m: float, M: float):
    """Integration constants ``(A, B, z0)`` for which P has roots m, M, z0.

    ``z0 = c - c0 - M - m`` is forced by the quadratic coefficient of P.
    """
    if m > M:
        raise ValueError("expected m <= M")
    z0 = c - params.c0 - M - m
    A = -(M * m + M * z0 + m * z0)
    B = M * m * z0
    return A, B, z0


def pole_location(params: ModelParams, c: float) -> Optional[float]:
    if params.alpha == 0.0:
        return None
    return c + params.gamma / params.alpha ** 2


def potential_eval(problem: TravelingWaveProblem, phi, removable: bool = False):
    """Evaluate F at ``phi`` (scalar or array).

    At the pole, ``removable=True`` returns the limit when P vanishes there
    (the peakon case); otherwise :class:`PoleEvaluation` is raised.
    """
    p = problem
    alpha, c0, gamma = p.params.alpha, p.params.c0, p.params.gamma
    x = np.asarray(phi, dtype=float)
    num = ((p.c - c0 - x) * x + p.A) * x + p.B
    if alpha == 0.0:
        out = num / gamma
    else:
        pole = p.c + gamma / alpha ** 2
        den = alpha ** 2 * (pole - x)
        at_pole = den == 0.0
        if np.any(at_pole):
            if not removable:
                raise PoleEvaluation(f"F evaluated at its pole {pole!r}")
            # P(x) = (pole - x) * Q(x) when P(pole) = 0; Q by synthetic division
            q2 = -1.0
            q1 = (p.c - c0) - pole
            q0 = p.A + pole * q1
            rem = p.B + pole * q0
            scale = max(1.0, abs(pole)) ** 3
            if abs(rem) > 1e-9 * scale:
                raise PoleEvaluation(f"pole {pole!r} is not removable (P(pole) = {rem!r})")
            q = -((q2 * x + q1) * x + q0)
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(at_pole, q / alpha ** 2, num / np.where(at_pole, 1.0, den))
        else:
            out = num / den
    if np.ndim(out) == 0:
        return float(out)
    return out
