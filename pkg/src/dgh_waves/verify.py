"""Independent checks of sampled wave profiles.

The checks use only the samples, the segment labels and the problem
constants; none of the synthesis machinery is reused. Inside a smooth
segment the profile is re-parametrized by ``tau in [0, 1]`` so that it is
smooth up to the segment ends: next to a cusp ``z - z_cusp ~ tau**3``,
which turns ``|z|**(2/3)`` behaviour into ``tau**2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import make_interp_spline

from . import kernels
from .errors import WrongClass
from .model import TravelingWaveProblem, potential_eval

STENCIL_HALF = 3  # 7-point differences
EXCLUDE = 3  # samples skipped next to a singular point
RESOLVE = 1e-8  # relative z-offset below which a sample is treated as unresolved
BUMP_MASS = 0.4439938161680794  # integral of exp(-1/(1-s**2)) over (-1, 1)
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)
_QUAD_PANELS = 48


@dataclass(frozen=True)
class TestFunctionSpec:
    center: float
    radius: float
    kind: str = "smooth-bump"
    index: int = 0
    straddles: bool = False

    __test__ = False  # not a pytest class

    def support(self):
        return self.center - self.radius, self.center + self.radius

    def __call__(self, z):
        s = (np.asarray(z, dtype=float) - self.center) / self.radius
        if self.kind == "hat":
            return np.clip(1.0 - np.abs(s), 0.0, None)
        inside = np.abs(s) < 1.0
        q = np.where(inside, 1.0 - s * s, 1.0)
        return np.where(inside, np.exp(-1.0 / q), 0.0)

    def derivative(self, z):
        s = (np.asarray(z, dtype=float) - self.center) / self.radius
        if self.kind == "hat":
            return np.where(np.abs(s) < 1.0, -np.sign(s) / self.radius, 0.0)
        inside = np.abs(s) < 1.0
        q = np.where(inside, 1.0 - s * s, 1.0)
        return np.where(inside, np.exp(-1.0 / q) * (-2.0 * s / q ** 2) / self.radius, 0.0)

    def mass(self):
        return self.radius * (1.0 if self.kind == "hat" else BUMP_MASS)


@dataclass(frozen=True)
class ResidualReport:
    max_strong: float
    max_weak: float
    n_tests: int
    straddling_tests: int
    passed: bool
    strong_tol: float = 1e-5
    weak_tol: float = 1e-5
    per_test: tuple = field(default=(), repr=False)

    def to_text(self) -> str:
        rows = [
            ("max_strong", repr(self.max_strong)),
            ("max_weak", repr(self.max_weak)),
            ("n_tests", str(self.n_tests)),
            ("straddling_tests", str(self.straddling_tests)),
            ("strong_tol", repr(self.strong_tol)),
            ("weak_tol", repr(self.weak_tol)),
            ("pass", "true" if self.passed else "false"),
        ]
        return "".join(f"{k}: {v}\n" for k, v in rows)


# ------------------------------------------------------------ tau maps

def _S(kind, u):
    if kind == "left":
        return u ** 3
    if kind == "right":
        return 1.0 - (1.0 - u) ** 3
    if kind == "both":
        return u ** 3 * (10.0 - 15.0 * u + 6.0 * u * u)
    return u


def _dS(kind, u):
    if kind == "left":
        return 3.0 * u * u
    if kind == "right":
        return 3.0 * (1.0 - u) ** 2
    if kind == "both":
        return 30.0 * u * u * (1.0 - u) ** 2
    return np.ones_like(u)


def _S_inv_left(kind, w):
    """Inverse of the left-anchored maps for ``w`` in [0, 1]."""
    w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
    if kind == "left":
        return np.cbrt(w)
    if kind == "both":
        # smootherstep is monotone; bisection-safeguarded Newton
        lo, hi = np.zeros_like(w), np.ones_like(w)
        u = np.cbrt(w / 10.0)
        for _ in range(80):
            f = _S(kind, u) - w
            lo = np.where(f <= 0, u, lo)
            hi = np.where(f > 0, u, hi)
            d = _dS(kind, u)
            with np.errstate(divide="ignore", invalid="ignore"):
                un = u - f / d
            bad = ~np.isfinite(un) | (un <= lo) | (un >= hi)
            un = np.where(bad, 0.5 * (lo + hi), un)
            if np.all(np.abs(un - u) <= 1e-16 * np.maximum(u, 1e-300)):
                u = un
                break
            u = un
        return u
    return w


def _tau_of(kind, z, za, zb):
    """tau(z), computed from the nearer end to keep relative accuracy there."""
    L = zb - za
    wl = (z - za) / L
    wr = (zb - z) / L
    if kind == "left":
        return _S_inv_left("left", wl)
    if kind == "right":
        # S(u) = 1 - (1 - u)**3
        return 1.0 - np.cbrt(np.clip(wr, 0.0, 1.0))
    if kind == "both":
        # smootherstep is odd about (1/2, 1/2)
        return np.where(wl <= 0.5, _S_inv_left("both", np.minimum(wl, 0.5)),
                        1.0 - _S_inv_left("both", np.minimum(wr, 0.5)))
    return np.clip(wl, 0.0, 1.0)


class _Piece:
    """Smooth interpolant of one segment, extended by adjacent singular samples."""

    def __init__(self, z, phi, cusp_left, cusp_right, kind="smooth"):
        self.z = np.asarray(z, dtype=float)
        self.phi = np.asarray(phi, dtype=float)
        self.kind = kind
        self.za, self.zb = float(self.z[0]), float(self.z[-1])
        self.L = self.zb - self.za
        self.map = ("both" if cusp_left and cusp_right else
                    "left" if cusp_left else "right" if cusp_right else "id")
        if kind == "plateau" or self.z.size < 2:
            self.spline = None
            self.tau = None
            return
        self.tau = _tau_of(self.map, self.z, self.za, self.zb)
        self.tau[0], self.tau[-1] = 0.0, 1.0
        k = min(5, self.z.size - 1)
        if k % 2 == 0:
            k -= 1
        self.spline = make_interp_spline(self.tau, self.phi, k=k)
        self.dspline = self.spline.derivative()

    def fd_derivative(self):
        """phi' at the samples by centred differences in tau (NaN near the ends)."""
        dtau = kernels.fd_first_derivative(self.tau, self.phi, STENCIL_HALF)
        return dtau / (self.L * _dS(self.map, self.tau))

    def eval(self, z):
        z = np.asarray(z, dtype=float)
        if self.spline is None:
            return np.full_like(z, self.phi[0]), np.zeros_like(z)
        u = _tau_of(self.map, z, self.za, self.zb)
        with np.errstate(divide="ignore", invalid="ignore"):
            dphi = self.dspline(u) / (self.L * _dS(self.map, u))
        return self.spline(u), dphi


def _pieces(profile):
    """Smooth/plateau pieces with their flanking singular samples attached."""
    z, phi, segs = profile.z, profile.phi, profile.segments
    out = []
    for k, s in enumerate(segs):
        if s.kind in ("corner", "cusp"):
            continue
        lo, hi = s.start, s.stop
        left = segs[k - 1] if k > 0 else None
        right = segs[k + 1] if k + 1 < len(segs) else None
        cl = left is not None and left.kind in ("corner", "cusp")
        cr = right is not None and right.kind in ("corner", "cusp")
        if cl:
            lo -= 1
        if cr:
            hi += 1
        out.append(dict(
            piece=_Piece(z[lo:hi], phi[lo:hi],
                         cl and left.kind == "cusp", cr and right.kind == "cusp", s.kind),
            sing_left=cl, sing_right=cr, start=lo, stop=hi, kind=s.kind,
            B=getattr(s, "B", None)))
    return out


def _scale(profile, problem):
    pole = problem.pole
    vals = [1.0, float(np.max(np.abs(profile.phi)))]
    if pole is not None:
        vals.append(abs(pole))
    return max(vals)


def _dP(problem, x):
    p = problem
    return (-3.0 * x + 2.0 * (p.c - p.params.c0)) * x + p.A


def _one_sided_slope(z, phi, i, direction):
    idx = [i + direction * j for j in range(4)]
    if min(idx) < 0 or max(idx) >= z.size:
        return float("nan")
    zs = z[idx]
    return float(np.dot(_fornberg(float(z[i]), zs), phi[idx]))


def _fornberg(x0, xs):
    """First-derivative weights at ``x0`` for a few nodes (Lagrange form)."""
    xs = np.asarray(xs, dtype=float)
    n = xs.size
    w = np.zeros(n)
    for j in range(n):
        others = np.delete(xs, j)
        denom = np.prod(xs[j] - others)
        s = 0.0
        for k in range(n - 1):
            s += np.prod(np.delete(x0 - others, k))
        w[j] = s / denom
    return w


def quadrature_residual(profile, problem: TravelingWaveProblem, relative: bool = True) -> float:
    """Largest violation of ``(phi')**2 = F(phi)`` over the samples.

    In smooth segments the residual is ``|(phi')**2 - F|`` with ``phi'`` from
    7-point centred differences, skipping the 3 samples next to each
    singular point; it is divided by ``max(scale**2, |F|)`` when ``relative``.
    Plateaus contribute ``|P'(phi)| / 2`` (a constant solves the equation
    only at a double zero of P). A corner or cusp sample contributes the
    point mass ``|D(phi_s)| * |jump of phi'|`` of the flux ``D phi'`` with
    ``D = alpha**2 (pole - phi)``, which vanishes only at the pole.
    """
    scale2 = _scale(profile, problem) ** 2
    worst = 0.0
    for rec in _pieces(profile):
        pc = rec["piece"]
        if rec["kind"] == "plateau":
            r = np.abs(_dP(problem, pc.phi)) / 2.0
            worst = max(worst, float(np.max(r / scale2 if relative else r)))
            continue
        if pc.z.size < 2 * STENCIL_HALF + 2:
            continue
        d = pc.fd_derivative()
        keep = np.isfinite(d)
        # besides the nearest samples, skip those whose offset from the singular
        # point is not resolved by the floating-point z values
        if rec["sing_left"]:
            keep[: EXCLUDE + 1] = False
            keep &= pc.z - pc.za > RESOLVE * max(1.0, abs(pc.za))
        if rec["sing_right"]:
            keep[-EXCLUDE - 1:] = False
            keep &= pc.zb - pc.z > RESOLVE * max(1.0, abs(pc.zb))
        if not np.any(keep):
            continue
        prob = problem if rec["B"] is None else problem.replace(B=rec["B"])
        F = potential_eval(prob, pc.phi[keep])
        r = np.abs(d[keep] ** 2 - F)
        if relative:
            r = r / np.maximum(scale2, np.abs(F))
        worst = max(worst, float(np.max(r)))
    params = problem.params
    if params.has_pole:
        z, phi = profile.z, profile.phi
        segs = profile.segments
        for k, s in enumerate(segs):
            if s.kind not in ("corner", "cusp"):
                continue
            i = s.start
            D = params.alpha ** 2 * (problem.pole - phi[i])
            if D == 0.0:
                continue
            sl = [0.0 if (kk < 0 or kk >= len(segs) or segs[kk].kind == "plateau")
                  else _one_sided_slope(z, phi, i, -1 if kk < k else 1)
                  for kk in (k - 1, k + 1)]
            if not all(math.isfinite(v) for v in sl):
                continue
            r = abs(D) * abs(sl[1] - sl[0])
            worst = max(worst, r / scale2 if relative else r)
    return worst


# ------------------------------------------------------------ weak form

def _graded_nodes(a, b, grade):
    """Quadrature nodes/weights on [a, b], graded towards singular ends."""
    edges = np.linspace(0.0, 1.0, _QUAD_PANELS + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    u = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    wu = (half[:, None] * _GL_W[None, :]).ravel()
    zz = a + (b - a) * _S(grade, u)
    return zz, wu * (b - a) * _dS(grade, u)


def _weak_integrand(problem, phi, dphi, psi, dpsi):
    prm = problem.params
    D = prm.alpha ** 2 * (problem.c - phi) + prm.gamma
    # the constant of integration is A/2 in the normalization where P carries A
    src = 0.5 * prm.alpha ** 2 * dphi ** 2 + (prm.c0 - problem.c) * phi + 1.5 * phi ** 2 - 0.5 * problem.A
    return -D * dphi * dpsi + src * psi


def _bump_integral(problem, recs, bump):
    a, b = bump.support()
    # hats have a kink at the apex; integrate each smooth side separately
    parts = [(a, bump.center), (bump.center, b)] if bump.kind == "hat" else [(a, b)]
    total = 0.0
    for pa, pb in parts:
        for rec in recs:
            pc = rec["piece"]
            lo, hi = max(pa, pc.za), min(pb, pc.zb)
            if hi <= lo:
                continue
            gl = rec["sing_left"] and lo == pc.za
            gr = rec["sing_right"] and hi == pc.zb
            grade = "both" if gl and gr else "left" if gl else "right" if gr else "id"
            zz, ww = _graded_nodes(lo, hi, grade)
            phi, dphi = pc.eval(zz)
            f = _weak_integrand(problem, phi, dphi, bump(zz), bump.derivative(zz))
            total += float(np.dot(ww, f))
    return total


def place_test_functions(profile, n_tests: int, seed: int, kind: str = "smooth-bump"):
    """Random bumps inside the sampled range; one per singular point is forced
    to straddle it (cycling through the singular points).

    Radii stay within a narrow band (4-6% of the range) so that a point-mass
    defect, whose normalized residual scales like 1/radius, reads the same
    for every seed."""
    if n_tests < 1:
        raise ValueError("n_tests must be >= 1")
    rng = np.random.default_rng(seed)
    z0, z1 = float(profile.z[0]), float(profile.z[-1])
    span = z1 - z0
    sing = [zs for zs, _ in profile.singular_points if z0 < zs < z1]
    n_str = min(n_tests, max(len(sing), n_tests // 2)) if sing else 0
    order = rng.permutation(len(sing)) if sing else []
    specs = []
    for i in range(n_tests):
        r = span * rng.uniform(0.04, 0.06)
        if i < n_str:
            zs = sing[order[i % len(sing)]]
            room = min(zs - z0, z1 - zs)
            r = min(r, 0.99 * room)
            c = zs + r * rng.uniform(-0.3, 0.3)
            specs.append(TestFunctionSpec(float(c), float(r), kind, i, True))
        else:
            c = rng.uniform(z0 + r, z1 - r)
            straddles = any(c - r < zs < c + r for zs in sing)
            specs.append(TestFunctionSpec(float(c), float(r), kind, i, straddles))
    return specs


def weak_residual(profile, problem: TravelingWaveProblem, n_tests: int = 20, seed: int = 0,
                  tol: float = 1e-5, strong_tol: float = 1e-5, tests=None) -> ResidualReport:
    """Distributional residual of the once-integrated wave equation.

    For each bump ``psi`` computes
    ``|int -D phi' psi' + (alpha**2/2 phi'**2 + (c0 - c) phi + 3/2 phi**2 - A/2) psi dz|``
    divided by ``int |psi| * scale**2``. The strong residual is reported
    alongside; ``passed`` requires both to be within tolerance.
    """
    specs = list(tests) if tests is not None else place_test_functions(profile, n_tests, seed)
    recs = _pieces(profile)
    scale2 = _scale(profile, problem) ** 2
    vals = tuple(abs(_bump_integral(problem, recs, t)) / (t.mass() * scale2) for t in specs)
    strong = quadrature_residual(profile, problem)
    weak = max(vals) if vals else 0.0
    return ResidualReport(
        max_strong=float(strong), max_weak=float(weak), n_tests=len(specs),
        straddling_tests=sum(t.straddles for t in specs),
        passed=bool(strong <= strong_tol and weak <= tol),
        strong_tol=strong_tol, weak_tol=tol, per_test=vals)


# ------------------------------------------------------------ decay / regularity

def decay_rate(profile, problem: TravelingWaveProblem = None):
    """``(fitted, predicted)`` exponential rate of approach to the limit.

    The fit is a log-linear regression of ``|phi - limit|`` over the outer half
    of the pre-tail samples on the right. The prediction is ``sqrt(kappa)``
    with ``kappa = (P''(d) / 2) / den(d)`` at the double root ``d``.
    """
    if profile.decay is None or profile.tail_start is None:
        raise WrongClass("profile has no decay metadata")
    problem = profile.problem if problem is None else problem
    d = profile.decay[0]
    zc = profile.tail_start
    sel = (profile.z >= 0.5 * zc) & (profile.z <= zc)
    y = np.abs(profile.phi[sel] - d)
    ok = y > 0
    slope = np.polyfit(profile.z[sel][ok], np.log(y[ok]), 1)[0]
    p = problem
    half_ddP = -3.0 * d + (p.c - p.params.c0)
    prm = p.params
    den = prm.gamma if not prm.has_pole else prm.alpha ** 2 * (p.pole - d)
    return float(-slope), float(math.sqrt(half_ddP / den))


def _junction_jumps(z, g, segs):
    jumps = []
    for k, s in enumerate(segs):
        if s.kind not in ("corner", "cusp"):
            continue
        i = s.start
        sl = []
        for direction, kk in ((-1, k - 1), (1, k + 1)):
            if kk < 0 or kk >= len(segs):
                continue
            if segs[kk].kind == "plateau":
                sl.append(0.0)
            else:
                sl.append(_one_sided_slope(z, g, i, direction))
        if len(sl) == 2 and all(math.isfinite(v) for v in sl):
            jumps.append(abs(sl[1] - sl[0]))
    return jumps


def _total_variation_of_slope(z, g):
    d = np.diff(g) / np.diff(z)
    return float(np.sum(np.abs(np.diff(d))))


def regularity_check(profile, pole: float, jump_tol: float = 1e-3, ratio_tol: float = 1.1,
                     details: bool = False):
    """Whether ``g = (phi - pole)**2`` has a continuous derivative and an
    integrable second derivative.

    The derivative jump across each corner/cusp (one-sided 4-point
    differences, divided by the problem scale) must be at most
    ``jump_tol``; the total variation of the sampled ``g'`` must be stable
    when every other sample is dropped (ratio at most ``ratio_tol``).
    """
    if pole is None:
        raise ValueError("regularity needs a pole (alpha != 0)")
    z, phi = profile.z, profile.phi
    scale = max(1.0, float(np.max(np.abs(phi))), abs(pole))
    g = (phi - pole) ** 2
    jumps = [j / scale for j in _junction_jumps(z, g, profile.segments)]
    tv_fine = _total_variation_of_slope(z, g)
    tv_coarse = _total_variation_of_slope(z[::2], g[::2])
    ratio = tv_fine / tv_coarse if tv_coarse > 0 else (1.0 if tv_fine == 0 else math.inf)
    ok = (max(jumps, default=0.0) <= jump_tol) and ratio <= ratio_tol
    if details:
        return ok, dict(max_jump=max(jumps, default=0.0), tv_ratio=ratio)
    return ok
