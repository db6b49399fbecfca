"""Wave profiles from the quadrature ``(phi')**2 = F(phi)``.

Every bounded wave is assembled from *arcs*: half-profiles running from an
extremum at ``z = 0`` (a simple zero of F, a corner or a cusp at the pole) to
the other end of the range (a simple zero, or a double zero approached
exponentially). On an arc we write ``phi = e1 + D*x`` with ``D = e0 - e1``
and ``x`` running from 1 (start ``e0``) to 0 (end ``e1``), and factor

    F = x**pe * (1 - x)**ps * R(phi)

where ``pe`` is 1 or 2 (simple/double end), ``ps`` is 1, 0 or -1 (simple zero,
corner, cusp) and ``R`` is smooth and positive. A change of variable
``x = x(t)`` tailored to ``(ps, pe)`` makes ``dz/dt = |D| j(t) / sqrt(R)``
bounded, so ``z(t)`` is computed by composite Gauss-Legendre quadrature with
no endpoint singularity. Profiles are parametrized as ``z(phi)``; the ODE is
never integrated in ``z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .classify import WaveClass, classify, composite_compatible, stumpon_constant
from .codes import (
    ANTI_KINDS,
    CUSPON_KINDS,
    DECAY_KINDS,
    PEAKON_KINDS,
    PERIODIC_KINDS,
    SMOOTH_KINDS,
    WaveKind,
)
from .errors import (
    IncompatibleSegments,
    InvalidInterval,
    StumponConstantViolated,
    WrongClass,
)
from .model import (
    DEFAULT_CLUSTER_TOL,
    ModelParams,
    TravelingWaveProblem,
    potential_eval,
    spectrum,
)

DEFAULT_N = 512
DEFAULT_TAIL_TOL = 1e-6
GEOMETRIC_RATIO = 1.5
# tails are continued until |phi - limit| drops to about this fraction of the range
TAIL_FLOOR = 1e-15
# geometric refinement towards a cusp/corner stops at this relative distance in phi
CUSP_FLOOR = 1e-9
CORNER_FLOOR = 1e-6

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)

SIMPLE, DOUBLE, CORNER, CUSP = "simple", "double", "corner", "cusp"


@dataclass(frozen=True)
class Segment:
    """Samples ``start:stop`` of a profile; corner/cusp segments hold one sample."""

    start: int
    stop: int
    z_lo: float
    z_hi: float
    kind: str  # smooth | corner | cusp | plateau
    B: Optional[float] = None  # integration constant of this piece, if not the profile's


@dataclass(frozen=True, eq=False)
class WaveProfile:
    z: np.ndarray
    phi: np.ndarray
    segments: tuple
    problem: TravelingWaveProblem
    wave_class: WaveClass
    period: Optional[float] = None
    decay: Optional[tuple] = None  # (limit, rate)
    tail_start: Optional[float] = None
    _evaluator: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        if z.shape != phi.shape or z.ndim != 1:
            raise ValueError("z and phi must be 1-D arrays of equal length")
        if np.any(np.diff(z) <= 0):
            raise ValueError("z must be strictly increasing")
        if not np.all(np.isfinite(phi)):
            raise ValueError("phi must be finite")
        z.setflags(write=False)
        phi.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def samples(self):
        return np.column_stack([self.z, self.phi])

    @property
    def singular_points(self):
        return [(s.z_lo, s.kind) for s in self.segments if s.kind in (CORNER, CUSP)]

    def segment_ids(self):
        ids = np.empty(self.z.size, dtype=int)
        for k, s in enumerate(self.segments):
            ids[s.start:s.stop] = k
        return ids

    def evaluate(self, z):
        """phi at arbitrary ``z`` (periodic profiles wrap around)."""
        if self._evaluator is None:
            raise ValueError("this profile carries samples only")
        return self._evaluator(np.asarray(z, dtype=float))

    def with_samples(self, phi, evaluator=None) -> "WaveProfile":
        """Copy with replaced phi samples, e.g. for negative controls."""
        return WaveProfile(self.z, phi, self.segments, self.problem, self.wave_class,
                           self.period, self.decay, self.tail_start, evaluator)


# ----------------------------------------------------------------- arc kernel

class _Arc:
    """Half-profile from ``e0`` (at z = 0) towards ``e1``."""

    def __init__(self, problem, e0, start, e1, end, rest):
        if start not in (SIMPLE, CORNER, CUSP) or end not in (SIMPLE, DOUBLE):
            raise InvalidInterval(f"unsupported arc {start}->{end}")
        self.problem = problem
        self.e0 = float(e0)
        self.e1 = float(e1)
        self.start = start
        self.end = end
        self.rest = [float(r) for r in rest]
        self.delta = self.e0 - self.e1
        if self.delta == 0.0:
            raise InvalidInterval("degenerate arc")
        params = problem.params
        self.a2 = params.alpha ** 2
        self.pole = problem.pole
        pe = 2 if end == DOUBLE else 1
        d = self.delta
        if start == SIMPLE:
            self.coef = d ** (pe + 1)
            self.pole_in_den = params.has_pole
            self.coef = self.coef / (params.gamma if not params.has_pole else 1.0)
        elif start == CORNER:
            self.coef = d ** pe / self.a2
            self.pole_in_den = False
        else:
            self.coef = -(d ** (pe - 1)) / self.a2
            self.pole_in_den = False
        if end == DOUBLE:
            self.t_max = math.inf
        elif start == CORNER:
            self.t_max = 1.0
        else:
            self.t_max = 0.5 * math.pi

    # x: normalized distance to the end; y = 1 - x
    def xy(self, t):
        t = np.asarray(t, dtype=float)
        if self.start == CORNER:
            if self.end == SIMPLE:
                return (1.0 - t) ** 2, t * (2.0 - t)
            return np.exp(-t), -np.expm1(-t)
        if self.end == SIMPLE:
            return np.cos(t) ** 2, np.sin(t) ** 2
        sech = 1.0 / np.cosh(t)
        return sech ** 2, np.tanh(t) ** 2

    def jac(self, t):
        t = np.asarray(t, dtype=float)
        if self.start == CUSP:
            return 2.0 * (np.sin(t) ** 2 if self.end == SIMPLE else np.tanh(t) ** 2)
        if self.start == CORNER and self.end == DOUBLE:
            return np.ones_like(t)
        return 2.0 * np.ones_like(t)

    def phi_of(self, t):
        x, y = self.xy(t)
        return np.where(x < y, self.e1 + self.delta * x, self.e0 - self.delta * y)

    def R(self, phi):
        val = self.coef * np.ones_like(phi)
        for r in self.rest:
            val = val * (phi - r)
        if self.pole_in_den:
            val = val / (self.a2 * (self.pole - phi))
        return val

    def dzdt(self, t):
        R = self.R(self.phi_of(t))
        if np.any(R <= 0.0):
            raise InvalidInterval("F is not positive inside the interval")
        return abs(self.delta) * self.jac(t) / np.sqrt(R)

    @property
    def kappa(self):
        """lim F / (phi - e1)**2 at a double end."""
        return float(self.R(np.array(self.e1))) / self.delta ** 2

    def t_cut(self, tail_tol):
        if self.start == CORNER:
            return -math.log(tail_tol)
        return math.acosh(1.0 / math.sqrt(tail_tol))

    def integrate(self, t):
        """Cumulative z at the increasing nodes ``t`` (``t[0]`` maps to z = 0 when 0)."""
        t = np.asarray(t, dtype=float)
        a, b = t[:-1], t[1:]
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
        vals = self.dzdt(nodes.ravel()).reshape(nodes.shape)
        panels = half * (vals @ _GL_W)
        return np.concatenate([[0.0], np.cumsum(panels)])

    def length(self, panels=128):
        """Total z-extent for arcs with a simple end."""
        if math.isinf(self.t_max):
            return math.inf
        t = np.linspace(0.0, self.t_max, panels + 1)
        return float(self.integrate(t)[-1])

    def grid(self, n, tail_tol):
        t_end = self.t_max if not math.isinf(self.t_max) else self.t_cut(tail_tol)
        t = np.linspace(0.0, t_end, n)
        if self.start in (CUSP, CORNER):
            # geometric clustering in phi towards the pole: y ~ t**2 (cusp), y ~ t (corner)
            t1 = t[1]
            y1 = float(self.xy(t1)[1])
            floor, power = (CUSP_FLOOR, 0.5) if self.start == CUSP else (CORNER_FLOOR, 1.0)
            k = int(math.ceil(math.log(y1 / floor) / math.log(GEOMETRIC_RATIO)))
            extra = t1 * GEOMETRIC_RATIO ** (-power * np.arange(k, 0, -1))
            t = np.concatenate([[0.0], extra, t[1:]])
        return t


class _ArcSamples:
    """Sampled arc with an exact evaluator for ``phi(z)``, ``z >= 0``."""

    def __init__(self, arc: _Arc, n: int, tail_tol: float):
        self.arc = arc
        t = arc.grid(n, tail_tol)
        zq = arc.integrate(t)
        self.t = t
        self.zq = zq
        phi = arc.phi_of(t)
        if arc.start in (CORNER, CUSP):
            phi[0] = arc.pole
        self.z_quad_end = float(zq[-1])
        self.limit = None
        self.rate = None
        if arc.end == DOUBLE:
            self.limit = arc.e1
            self.rate = math.sqrt(arc.kappa)
            self.phi_cut = float(phi[-1])
            span = math.log(tail_tol / TAIL_FLOOR) / self.rate
            n_tail = max(32, n // 8)
            zt = self.z_quad_end + np.linspace(0.0, span, n_tail + 1)[1:]
            self.z = np.concatenate([zq, zt])
            self.phi = np.concatenate([phi, self._tail(zt)])
        else:
            self.z = zq
            self.phi = phi
        self.z_end = float(self.z[-1])

    def _tail(self, z):
        return self.limit + (self.phi_cut - self.limit) * np.exp(-self.rate * (z - self.z_quad_end))

    def _invert(self, zz):
        """t with z(t) = zz inside the quadrature range (safeguarded Newton)."""
        arc, t, zq = self.arc, self.t, self.zq
        idx = np.clip(np.searchsorted(zq, zz, side="right") - 1, 0, len(t) - 2)
        lo = t[idx].copy()
        hi = t[idx + 1].copy()
        z_lo = zq[idx]
        w = np.where(zq[idx + 1] > z_lo, (zz - z_lo) / (zq[idx + 1] - z_lo), 0.0)
        tt = lo + w * (hi - lo)
        base = t[idx]
        for _ in range(60):
            half = 0.5 * (tt - base)
            mid = 0.5 * (tt + base)
            nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
            vals = arc.dzdt(nodes.ravel()).reshape(nodes.shape)
            f = z_lo + half * (vals @ _GL_W) - zz
            lo = np.where(f <= 0.0, tt, lo)
            hi = np.where(f > 0.0, tt, hi)
            g = arc.dzdt(tt)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = tt - f / g
            ok = np.isfinite(step) & (step > lo) & (step < hi)
            tn = np.where(ok, step, 0.5 * (lo + hi))
            if np.all(np.abs(tn - tt) <= 1e-15 * np.maximum(1.0, np.abs(tt))):
                tt = tn
                break
            tt = tn
        return tt

    def phi_at(self, a):
        """phi at distance ``a >= 0`` from the start of the arc."""
        a = np.asarray(a, dtype=float)
        out = np.empty_like(a)
        inq = a <= self.z_quad_end
        if np.any(inq):
            aa = np.clip(a[inq], 0.0, self.z_quad_end)
            if math.isinf(self.arc.t_max):
                res = self.arc.phi_of(self._invert(aa))
            else:
                res = self.arc.phi_of(self._invert(aa))
            out[inq] = res
        if np.any(~inq):
            if self.limit is not None:
                out[~inq] = self._tail(a[~inq])
            else:
                out[~inq] = self.phi[-1]
        if self.arc.start in (CORNER, CUSP):
            out = np.where(a == 0.0, self.arc.pole, out)
        return out


# ------------------------------------------------------------ arc selection

def _arc_for(problem: TravelingWaveProblem, wc: WaveClass) -> _Arc:
    k = wc.kind
    m, M, z0, pole = wc.m, wc.M, wc.z0, wc.pole
    if k is WaveKind.SmoothPeriodic:
        return _Arc(problem, M, SIMPLE, m, SIMPLE, [z0])
    if k is WaveKind.SmoothDecayDown:
        return _Arc(problem, M, SIMPLE, m, DOUBLE, [])
    if k is WaveKind.SmoothDecayUp:
        return _Arc(problem, m, SIMPLE, M, DOUBLE, [])
    if k is WaveKind.PeriodicPeakon:
        return _Arc(problem, pole, CORNER, m, SIMPLE, [z0])
    if k is WaveKind.PeakonDecay:
        return _Arc(problem, pole, CORNER, m, DOUBLE, [])
    if k is WaveKind.PeriodicAntiPeakon:
        return _Arc(problem, pole, CORNER, M, SIMPLE, [z0])
    if k is WaveKind.AntiPeakonDecay:
        return _Arc(problem, pole, CORNER, M, DOUBLE, [])
    if k is WaveKind.PeriodicCuspon:
        return _Arc(problem, pole, CUSP, m, SIMPLE, [M, z0])
    if k is WaveKind.CusponDecay:
        return _Arc(problem, pole, CUSP, m, DOUBLE, [M])
    if k is WaveKind.PeriodicAntiCuspon:
        return _Arc(problem, pole, CUSP, M, SIMPLE, [m, z0])
    if k is WaveKind.AntiCusponDecay:
        return _Arc(problem, pole, CUSP, M, DOUBLE, [m])
    raise WrongClass(f"no arc for {k}")


def _endpoint_type(problem, spec, e, tol):
    pole = problem.pole
    close = lambda a, b: abs(a - b) <= tol * max(1.0, abs(a), abs(b))
    if pole is not None and close(e, pole):
        on_root = any(close(v, pole) for v, _ in spec.roots)
        return (CORNER if on_root else CUSP), pole
    for v, k in spec.roots:
        if close(v, e):
            if k == 1:
                return SIMPLE, v
            if k == 2:
                return DOUBLE, v
            raise InvalidInterval("triple root: constant wave")
    raise InvalidInterval(f"{e!r} is neither a zero nor the pole of F")


def _arc_between(problem, lo, hi, tol=DEFAULT_CLUSTER_TOL):
    if not lo < hi:
        raise InvalidInterval("expected lo < hi")
    spec = spectrum(problem, tol)
    tlo, vlo = _endpoint_type(problem, spec, lo, tol)
    thi, vhi = _endpoint_type(problem, spec, hi, tol)
    probe = lo + (hi - lo) * np.array([0.25, 0.5, 0.75])
    if np.any(potential_eval(problem, probe) <= 0.0):
        raise InvalidInterval(f"F is not positive on ({lo!r}, {hi!r})")
    if tlo in (CORNER, CUSP) or thi == DOUBLE:
        start, e0, end, e1 = tlo, vlo, thi, vhi
    else:
        start, e0, end, e1 = thi, vhi, tlo, vlo
    if start == DOUBLE:
        return None
    rest = spec.flat()

    def drop(v):
        j = int(np.argmin([abs(r - v) for r in rest]))
        rest.pop(j)

    drop(e1)
    if end == DOUBLE:
        drop(e1)
    if start in (SIMPLE, CORNER):
        drop(e0)
    return _Arc(problem, e0, start, e1, end, rest)


def half_period(problem: TravelingWaveProblem, m: float, M: float, method: str = "theta",
                cluster_tol: float = DEFAULT_CLUSTER_TOL) -> float:
    """``L = integral of dphi / sqrt(F)`` over ``(m, M)``.

    ``method="theta"`` uses the endpoint-regularizing substitution with
    Gauss-Legendre panels; ``method="adaptive"`` uses QUADPACK's algebraic
    endpoint weights with the factored remainder of F. Returns ``inf`` when an endpoint is
    a double zero of F.
    """
    arc = _arc_between(problem, m, M, cluster_tol)
    if arc is None or arc.end == DOUBLE:
        return math.inf
    if method == "theta":
        return arc.length()
    if method != "adaptive":
        raise ValueError(f"unknown method {method!r}")
    # QUADPACK supplies |phi - lo|**a_lo |hi - phi|**a_hi; what remains is
    # |delta|**((1 + ps)/2) / sqrt(R), smooth and free of cancellation near the roots
    ps = {SIMPLE: 1, CORNER: 0, CUSP: -1}[arc.start]
    weight = -0.5 * ps
    (lo, a_lo), (hi, a_hi) = sorted([(arc.e0, weight), (arc.e1, -0.5)])
    scale = abs(arc.delta) ** (0.5 * (1 + ps))

    def regular(phi):
        return scale / math.sqrt(float(arc.R(np.array(phi))))

    val, _ = integrate.quad(regular, lo, hi, weight="alg", wvar=(a_lo, a_hi),
                            epsabs=0.0, epsrel=1e-13, limit=200)
    return float(val)


# -------------------------------------------------------------- assembly

@dataclass
class _Builder:
    z: list = field(default_factory=list)
    phi: list = field(default_factory=list)
    segments: list = field(default_factory=list)
    pieces: list = field(default_factory=list)  # (z_lo, z_hi, f)
    count: int = 0

    last: float = -math.inf

    def add(self, z, phi, kind, f=None, z_lo=None, z_hi=None, B=None):
        z = np.atleast_1d(np.asarray(z, dtype=float))
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        # after shifting, samples packed near a junction can collide in floating point
        keep = np.empty(z.size, dtype=bool)
        prev = self.last
        for i, v in enumerate(z):
            keep[i] = prev == -math.inf or v - prev > 4.0 * np.spacing(max(abs(v), abs(prev)))
            if keep[i]:
                prev = v
        z, phi = z[keep], phi[keep]
        if z.size == 0:
            return
        self.last = float(z[-1])
        self.z.append(z)
        self.phi.append(phi)
        # plateaus report their closed interval, not the span of interior samples
        lo, hi = (z_lo, z_hi) if kind == "plateau" else (z[0], z[-1])
        self.segments.append(Segment(self.count, self.count + z.size,
                                     float(lo), float(hi), kind, B))
        self.count += z.size
        if f is not None:
            self.pieces.append((z_lo, z_hi, f))

    def arrays(self):
        return np.concatenate(self.z), np.concatenate(self.phi)


def _piecewise_evaluator(pieces, period=None, center=0.0):
    los = np.array([p[0] for p in pieces])

    def evaluate(z):
        z = np.asarray(z, dtype=float)
        zz = z
        if period is not None:
            zz = np.mod(z - center + 0.5 * period, period) - 0.5 * period + center
        flat = np.atleast_1d(zz).ravel()
        out = np.empty_like(flat)
        idx = np.clip(np.searchsorted(los, flat, side="right") - 1, 0, len(pieces) - 1)
        for k in np.unique(idx):
            sel = idx == k
            out[sel] = pieces[k][2](flat[sel])
        return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])

    return evaluate


def _mirror_profile(problem, wc, arcs: _ArcSamples, periodic: bool):
    """Smooth profile even about its extremum at z = 0."""
    zh, ph = arcs.z, arcs.phi
    z = np.concatenate([-zh[:0:-1], zh])
    phi = np.concatenate([ph[:0:-1], ph])
    seg = (Segment(0, z.size, float(z[0]), float(z[-1]), "smooth"),)
    f = lambda s: arcs.phi_at(np.abs(s))
    period = 2.0 * arcs.z_end if periodic else None
    ev = _piecewise_evaluator([(-math.inf, math.inf, f)], period=period)
    decay = None if periodic else (arcs.limit, arcs.rate)
    tail = None if periodic else arcs.z_quad_end
    return WaveProfile(z, phi, seg, problem, wc, period, decay, tail, ev)


def _constant_profile(problem, wc, n):
    v = wc.interval[0]
    z = np.linspace(-1.0, 1.0, n)
    phi = np.full(n, v)
    seg = (Segment(0, n, -1.0, 1.0, "smooth"),)
    ev = lambda s: np.full(np.shape(s), v) if np.ndim(s) else v
    return WaveProfile(z, phi, seg, problem, wc, None, None, None, ev)


def _check_kind(wc, allowed, what):
    if wc.kind not in allowed:
        raise WrongClass(f"{what} does not apply to {wc.kind}")


def _resolve(problem, wave_class):
    return wave_class if wave_class is not None else classify(problem)


def synth_periodic(problem, wave_class=None, n=DEFAULT_N) -> WaveProfile:
    """One full period of a smooth periodic wave, crest at z = 0."""
    wc = _resolve(problem, wave_class)
    if n < 16:
        raise ValueError("n must be >= 16")
    if wc.kind is WaveKind.Constant:
        return _constant_profile(problem, wc, n)
    _check_kind(wc, {WaveKind.SmoothPeriodic}, "synth_periodic")
    arcs = _ArcSamples(_arc_for(problem, wc), n, DEFAULT_TAIL_TOL)
    return _mirror_profile(problem, wc, arcs, periodic=True)


def synth_decay(problem, wave_class=None, tail_tol=DEFAULT_TAIL_TOL, n=DEFAULT_N) -> WaveProfile:
    """Smooth homoclinic wave: quadrature core plus an analytic exponential tail."""
    wc = _resolve(problem, wave_class)
    _check_kind(wc, {WaveKind.SmoothDecayDown, WaveKind.SmoothDecayUp}, "synth_decay")
    if not 0.0 < tail_tol < 1.0:
        raise ValueError("tail_tol must lie in (0, 1)")
    arcs = _ArcSamples(_arc_for(problem, wc), n, tail_tol)
    return _mirror_profile(problem, wc, arcs, periodic=False)


def _singular_profile(problem, wc, n, tail_tol, kind):
    arcs = _ArcSamples(_arc_for(problem, wc), n, tail_tol)
    b = _Builder()
    zh, ph = arcs.z, arcs.phi
    f = lambda s: arcs.phi_at(np.abs(s))
    b.add(-zh[:0:-1], ph[:0:-1], "smooth", f, -math.inf, 0.0)
    b.add(0.0, wc.pole, kind)
    b.add(zh[1:], ph[1:], "smooth")
    z, phi = b.arrays()
    periodic = wc.kind in PERIODIC_KINDS
    period = 2.0 * arcs.z_end if periodic else None
    ev = _piecewise_evaluator([(-math.inf, math.inf, f)], period=period)
    decay = None if periodic else (arcs.limit, arcs.rate)
    tail = None if periodic else arcs.z_quad_end
    return WaveProfile(z, phi, b.segments, problem, wc, period, decay, tail, ev)


def _p_at_pole(problem):
    p = problem
    x = p.pole
    return ((p.c - p.params.c0 - x) * x + p.A) * x + p.B, max(1.0, abs(x)) ** 3


def synth_peakon(problem, wave_class=None, n=DEFAULT_N, tail_tol=DEFAULT_TAIL_TOL) -> WaveProfile:
    """Peaked wave with a corner at phi = pole placed at z = 0."""
    wc = _resolve(problem, wave_class)
    if problem.pole is not None:
        val, scale = _p_at_pole(problem)
        if abs(val) > 1e-8 * scale:
            raise WrongClass("P(pole) != 0: the pole is not removable")
    _check_kind(wc, PEAKON_KINDS, "synth_peakon")
    return _singular_profile(problem, wc, n, tail_tol, CORNER)


def synth_cuspon(problem, wave_class=None, n=DEFAULT_N, tail_tol=DEFAULT_TAIL_TOL) -> WaveProfile:
    """Cusped wave with the cusp phi = pole at z = 0."""
    wc = _resolve(problem, wave_class)
    if problem.pole is not None:
        val, scale = _p_at_pole(problem)
        if abs(val) <= 1e-12 * scale:
            raise WrongClass("P(pole) = 0: this is a peakon")
    _check_kind(wc, CUSPON_KINDS, "synth_cuspon")
    return _singular_profile(problem, wc, n, tail_tol, CUSP)


def synthesize(problem, wave_class=None, n=DEFAULT_N, tail_tol=DEFAULT_TAIL_TOL) -> WaveProfile:
    """Dispatch to the synthesizer for the class of ``problem``."""
    wc = _resolve(problem, wave_class)
    k = wc.kind
    if k is WaveKind.NoBoundedWave:
        raise WrongClass("no bounded wave to synthesize")
    if k is WaveKind.Constant or k is WaveKind.SmoothPeriodic:
        return synth_periodic(problem, wc, n)
    if k in SMOOTH_KINDS:
        return synth_decay(problem, wc, tail_tol, n)
    if k in PEAKON_KINDS:
        return synth_peakon(problem, wc, n, tail_tol)
    return synth_cuspon(problem, wc, n, tail_tol)


# ------------------------------------------------------------- composites

def _close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def glue_composite(segment_problems: Sequence[TravelingWaveProblem], lengths=None,
                   params: Optional[ModelParams] = None, c: Optional[float] = None,
                   n: int = DEFAULT_N, tail_tol: float = DEFAULT_TAIL_TOL,
                   check: bool = True) -> WaveProfile:
    """Join peakon/cuspon pieces at points where phi equals the pole.

    Periodic pieces contribute one full excursion pole -> extremum -> pole.
    A decay piece may only come first (its left half) or last (its right
    half); a single decay problem yields both halves. ``lengths`` gives the
    plateau length inserted at each junction (zeros by default); positive
    lengths require A to equal the stumpon constant. The first junction sits
    at z = 0. ``check=False`` skips the compatibility checks (used to build
    negative controls).
    """
    probs = list(segment_problems)
    if not probs:
        raise IncompatibleSegments("no segments")
    params = params if params is not None else probs[0].params
    c = probs[0].c if c is None else c
    if not params.has_pole:
        raise IncompatibleSegments("composites need alpha != 0")
    classes = [classify(p) for p in probs]
    if check:
        if any(p.params != params or not _close(p.c, c) for p in probs):
            raise IncompatibleSegments("segments must share parameters and speed")
        if not composite_compatible(probs, classes):
            raise IncompatibleSegments("segments must be peakons/cuspons with a common A")
    else:
        for wc in classes:
            if wc.kind not in PEAKON_KINDS and wc.kind not in CUSPON_KINDS:
                raise IncompatibleSegments(f"cannot glue {wc.kind}")

    blocks = []  # (side, problem, class)
    nprob = len(probs)
    for i, (p, wc) in enumerate(zip(probs, classes)):
        if wc.kind in DECAY_KINDS:
            if nprob == 1:
                blocks += [("left", p, wc), ("right", p, wc)]
            elif i == 0:
                blocks.append(("left", p, wc))
            elif i == nprob - 1:
                blocks.append(("right", p, wc))
            else:
                raise IncompatibleSegments("decay pieces can only end a composite")
        else:
            blocks.append(("full", p, wc))
    gaps = [0.0] * (len(blocks) - 1) if lengths is None else [float(v) for v in lengths]
    if len(gaps) != len(blocks) - 1:
        raise IncompatibleSegments(f"expected {len(blocks) - 1} junction lengths, got {len(gaps)}")
    if any(g < 0 or not math.isfinite(g) for g in gaps):
        raise IncompatibleSegments("junction lengths must be finite and >= 0")
    pole = probs[0].pole
    if check and any(g > 0 for g in gaps):
        astar = stumpon_constant(params, c)
        if any(not _close(p.A, astar) for p in probs):
            raise StumponConstantViolated(f"plateaus need A = {astar!r}")

    samplers = {}
    for side, p, wc in blocks:
        if id(p) not in samplers:
            samplers[id(p)] = _ArcSamples(_arc_for(p, wc), n, tail_tol)

    def junction_kind(*wcs):
        return CUSP if any(w.kind in CUSPON_KINDS for w in wcs if w is not None) else CORNER

    b = _Builder()
    cursor = 0.0
    spacing = []
    for side, p, wc in blocks:
        s = samplers[id(p)]
        spacing.append(float(np.median(np.diff(s.z[: max(3, len(s.z) // 2)]))))
    h_plateau = min(spacing)

    def put_junction(prev_wc, next_wc):
        b.add(cursor, pole, junction_kind(prev_wc, next_wc), lambda s: np.full_like(s, pole),
              cursor, cursor)

    first = blocks[0]
    if first[0] != "left":
        put_junction(None, first[2])
    for i, (side, p, wc) in enumerate(blocks):
        s = samplers[id(p)]
        zh, ph = s.z, s.phi
        if side == "left":
            z0 = cursor
            f = (lambda s_, z0=z0: lambda zz: s_.phi_at(z0 - zz))(s)
            b.add(cursor - zh[:0:-1], ph[:0:-1], "smooth", f, -math.inf, cursor, p.B)
        elif side == "right":
            z0 = cursor
            f = (lambda s_, z0=z0: lambda zz: s_.phi_at(zz - z0))(s)
            b.add(cursor + zh[1:], ph[1:], "smooth", f, cursor, math.inf, p.B)
            cursor += s.z_end
        else:
            L = s.z_end
            z0 = cursor
            zz = np.concatenate([zh[1:], 2.0 * L - zh[-2:0:-1]])
            pp = np.concatenate([ph[1:], ph[-2:0:-1]])
            f = (lambda s_, z0=z0, L=L: lambda q: s_.phi_at(L - np.abs(q - z0 - L)))(s)
            b.add(cursor + zz, pp, "smooth", f, cursor, cursor + 2.0 * L, p.B)
            cursor += 2.0 * L
        if i < len(blocks) - 1:
            nxt = blocks[i + 1][2]
            put_junction(wc, nxt)
            g = gaps[i]
            if g > 0:
                m_pts = max(8, int(math.ceil(g / h_plateau)))
                zp = np.linspace(cursor, cursor + g, m_pts + 2)[1:-1]
                b.add(zp, np.full(zp.size, pole), "plateau",
                      lambda q: np.full_like(q, pole), cursor, cursor + g)
                cursor += g
                put_junction(wc, nxt)
    if blocks[-1][0] != "right":
        put_junction(blocks[-1][2], None)
    z, phi = b.arrays()
    pieces = sorted(b.pieces, key=lambda p: p[0])
    # drop zero-width junction pieces except where needed; ties resolve to the later piece
    ev = _piecewise_evaluator([pc for pc in pieces if pc[1] > pc[0]] or pieces)
    wc0 = classes[0]
    return WaveProfile(z, phi, b.segments, probs[0], wc0, None, None, None, ev)


def synth_stumpon(problem: TravelingWaveProblem, plateau_lengths, n: int = DEFAULT_N,
                  tail_tol: float = DEFAULT_TAIL_TOL) -> WaveProfile:
    """Cuspon arcs separated by plateaus phi == pole of the given lengths."""
    params = problem.params
    astar = stumpon_constant(params, problem.c)
    if not _close(problem.A, astar):
        raise StumponConstantViolated(f"A = {problem.A!r} but plateaus need A = {astar!r}")
    wc = classify(problem)
    if wc.kind not in CUSPON_KINDS:
        raise WrongClass(f"stumpons are built from cuspons, got {wc.kind}")
    lengths = [float(v) for v in plateau_lengths]
    if not lengths:
        raise ValueError("at least one plateau length is required")
    if wc.kind in DECAY_KINDS:
        if len(lengths) != 1:
            raise WrongClass("a decaying cuspon admits exactly one plateau")
        probs = [problem, problem]
    else:
        probs = [problem] * (len(lengths) + 1)
    return glue_composite(probs, lengths, params, problem.c, n, tail_tol)
