"""Pure-Python scalar kernels.

These are the reference semantics for the compiled ``_ckernels`` module: both
expose the same three batch functions and must return identical results.

* ``solve_cubic_batch`` -- real roots and multiplicities of
  ``P(x) = -x**3 + s*x**2 + A*x + B``.
* ``classify_roles_batch`` / ``classify_batch`` -- the travelling-wave case
  tables, with integer kind/case codes (see ``dgh_waves.codes``).
* ``fd_first_derivative`` -- first derivative on a nonuniform grid from
  centred Fornberg stencils.
"""
import math

import numpy as np

EPS = 2.220446049250313e-16
NOISE_FACTOR = 64.0

# kind codes
K_NONE = 0
K_CONSTANT = 1
K_SMOOTH_PERIODIC = 2
K_SMOOTH_DECAY_DOWN = 3
K_SMOOTH_DECAY_UP = 4
K_PERIODIC_PEAKON = 5
K_PEAKON_DECAY = 6
K_PERIODIC_CUSPON = 7
K_CUSPON_DECAY = 8
K_PERIODIC_ANTI_PEAKON = 9
K_ANTI_PEAKON_DECAY = 10
K_PERIODIC_ANTI_CUSPON = 11
K_ANTI_CUSPON_DECAY = 12

# case codes: 0 none, 1 constant, 2..5 KdV (i)..(iv),
# 6..11 DGH (i)..(vi), 12..17 DGH (i')..(vi')
C_NONE = 0
C_CONSTANT = 1
C_KDV = 2
C_DGH = 6
C_DGH_PRIME = 12


def _peval(s, A, B, x):
    return ((s - x) * x + A) * x + B


def _cbrt(v):
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _newton(s, A, B, x, lo, hi):
    # at most two guarded steps; a step must stay in the bracket and not grow |P|
    for _ in range(2):
        px = _peval(s, A, B, x)
        d = (2.0 * s - 3.0 * x) * x + A
        if d == 0.0 or px == 0.0:
            break
        xn = x - px / d
        if not (lo <= xn <= hi):
            break
        if abs(_peval(s, A, B, xn)) > abs(px):
            break
        x = xn
    return x


def _one_real_root(s, A, B, lo, hi):
    dq = s * s + 3.0 * A
    p = -dq / 3.0
    q = -2.0 * s * s * s / 27.0 - s * A / 3.0 - B
    disc = q * q / 4.0 + p * p * p / 27.0
    if disc < 0.0:
        disc = 0.0
    u = _cbrt(-q / 2.0 - math.copysign(math.sqrt(disc), q))
    t = u - p / (3.0 * u) if u != 0.0 else 0.0
    return _newton(s, A, B, t + s / 3.0, lo, hi)


def _is_double(pv, x, curv, tol, noise):
    # merge when the implied root separation 2*sqrt(2|P|/|P''|) is below
    # tol*max(1,|x|), or when |P| is indistinguishable from rounding noise
    sep = tol * max(1.0, abs(x))
    return abs(pv) <= max(noise, curv * sep * sep / 8.0)


def cubic_roots(s, A, B, tol):
    """Return ``(values, multiplicities)`` sorted ascending."""
    scale = max(1.0, abs(s), math.sqrt(abs(A)), abs(B) ** (1.0 / 3.0))
    noise = NOISE_FACTOR * EPS * scale ** 3
    xi = s / 3.0
    dq = s * s + 3.0 * A
    out = []
    if dq <= 0.0 or 2.0 * math.sqrt(dq) / 3.0 <= tol * max(1.0, abs(xi)):
        pv = _peval(s, A, B, xi)
        spread = tol * max(1.0, abs(xi))
        if abs(pv) <= max(noise, spread ** 3):
            out = [[xi, 3]]
        else:
            out = [[_one_real_root(s, A, B, -math.inf, math.inf), 1]]
    else:
        sq = math.sqrt(dq)
        qq = s + math.copysign(sq, s) if s != 0.0 else sq
        xa = qq / 3.0
        xb = -A / qq
        x1 = min(xa, xb)
        x2 = max(xa, xb)
        p1 = _peval(s, A, B, x1)
        p2 = _peval(s, A, B, x2)
        curv = 2.0 * sq
        d1 = _is_double(p1, x1, curv, tol, noise)
        d2 = _is_double(p2, x2, curv, tol, noise)
        if d1 and d2:
            out = [[xi, 3]]
        elif d1:
            out = [[x1, 2], [s - 2.0 * x1, 1]]
        elif d2:
            out = [[s - 2.0 * x2, 1], [x2, 2]]
        elif p1 < 0.0 < p2:
            r = 2.0 * sq / 3.0
            p = -dq / 3.0
            q = -2.0 * s * s * s / 27.0 - s * A / 3.0 - B
            arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
            arg = min(1.0, max(-1.0, arg))
            th = math.acos(arg) / 3.0
            ts = sorted(r * math.cos(th - 2.0 * math.pi * k / 3.0) + xi for k in range(3))
            brackets = ((-math.inf, x1), (x1, x2), (x2, math.inf))
            out = [[_newton(s, A, B, t, lo, hi), 1] for t, (lo, hi) in zip(ts, brackets)]
        elif p1 > 0.0:
            out = [[_one_real_root(s, A, B, x2, math.inf), 1]]
        else:
            out = [[_one_real_root(s, A, B, -math.inf, x1), 1]]
    out.sort(key=lambda e: e[0])
    merged = [out[0]]
    for v, k in out[1:]:
        pv, pk = merged[-1]
        if _close(pv, v, tol):
            merged[-1] = [(pv * pk + v * k) / (pk + k), pk + k]
        else:
            merged.append([v, k])
    return [e[0] + 0.0 for e in merged], [e[1] for e in merged]


def solve_cubic_batch(s, A, B, tol):
    s = np.ascontiguousarray(s, dtype=float)
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    n = s.shape[0]
    roots = np.full((n, 3), np.nan)
    mult = np.zeros((n, 3), dtype=np.int64)
    count = np.zeros(n, dtype=np.int64)
    for i in range(n):
        vals, ks = cubic_roots(s[i], A[i], B[i], tol)
        count[i] = len(vals)
        for j, (v, k) in enumerate(zip(vals, ks)):
            roots[i, j] = v
            mult[i, j] = k
    return roots, mult, count


def classify_roles(m, M, z0, pole, has_pole, gamma, tol):
    """Apply the case tables to roots in given roles.

    Returns ``(kind, case, lo, hi)`` with ``[lo, hi]`` the range of the wave.
    """
    nan = math.nan
    if _close(m, M, tol):
        return K_CONSTANT, C_CONSTANT, m, m
    if M < m:
        return K_NONE, C_NONE, nan, nan
    below = _close(z0, m, tol) or z0 < m
    above = _close(z0, M, tol) or z0 > M
    if not has_pole:
        if gamma > 0.0 and below:
            if _close(z0, m, tol):
                return K_SMOOTH_DECAY_DOWN, C_KDV + 1, m, M
            return K_SMOOTH_PERIODIC, C_KDV, m, M
        if gamma < 0.0 and above:
            if _close(z0, M, tol):
                return K_SMOOTH_DECAY_UP, C_KDV + 3, m, M
            return K_SMOOTH_PERIODIC, C_KDV + 2, m, M
        return K_NONE, C_NONE, nan, nan
    p = pole
    if below:
        dec = 1 if _close(z0, m, tol) else 0
        if _close(M, p, tol):
            return (K_PEAKON_DECAY if dec else K_PERIODIC_PEAKON), C_DGH + 2 + dec, m, M
        if M < p:
            return (K_SMOOTH_DECAY_DOWN if dec else K_SMOOTH_PERIODIC), C_DGH + dec, m, M
        if m < p and not _close(m, p, tol):
            return (K_CUSPON_DECAY if dec else K_PERIODIC_CUSPON), C_DGH + 4 + dec, m, p
    if above:
        dec = 1 if _close(z0, M, tol) else 0
        if _close(m, p, tol):
            return ((K_ANTI_PEAKON_DECAY if dec else K_PERIODIC_ANTI_PEAKON),
                    C_DGH_PRIME + 2 + dec, m, M)
        if p < m:
            return (K_SMOOTH_DECAY_UP if dec else K_SMOOTH_PERIODIC), C_DGH_PRIME + dec, m, M
        if p < M and not _close(M, p, tol):
            return ((K_ANTI_CUSPON_DECAY if dec else K_PERIODIC_ANTI_CUSPON),
                    C_DGH_PRIME + 4 + dec, p, M)
    return K_NONE, C_NONE, nan, nan


def _nontrivial(kind):
    return kind != K_NONE and kind != K_CONSTANT


def classify_coeffs(s, A, B, pole, has_pole, gamma, tol):
    """Classify from cubic coefficients.

    Returns ``(kind, case, m, M, z0, lo, hi)``; role fields are NaN when the
    cubic has a single real root.
    """
    nan = math.nan
    vals, ks = cubic_roots(s, A, B, tol)
    if len(vals) == 1:
        if ks[0] == 3:
            v = vals[0]
            return K_CONSTANT, C_CONSTANT, v, v, v, v, v
        return K_NONE, C_NONE, nan, nan, nan, nan, nan
    flat = []
    for v, k in zip(vals, ks):
        flat.extend([v] * k)
    r1, r2, r3 = flat
    # unprimed roles: z0 lowest; primed roles: z0 highest
    kind, case, lo, hi = classify_roles(r2, r3, r1, pole, has_pole, gamma, tol)
    if _nontrivial(kind):
        return kind, case, r2, r3, r1, lo, hi
    kind, case, lo, hi = classify_roles(r1, r2, r3, pole, has_pole, gamma, tol)
    if _nontrivial(kind):
        return kind, case, r1, r2, r3, lo, hi
    if len(vals) == 2:
        d = vals[0] if ks[0] == 2 else vals[1]
        other = vals[1] if ks[0] == 2 else vals[0]
        return K_CONSTANT, C_CONSTANT, d, d, other, d, d
    return K_NONE, C_NONE, r2, r3, r1, nan, nan


def classify_roles_batch(m, M, z0, pole, has_pole, gamma, tol):
    m = np.ascontiguousarray(m, dtype=float)
    n = m.shape[0]
    M = np.ascontiguousarray(M, dtype=float)
    z0 = np.ascontiguousarray(z0, dtype=float)
    kind = np.zeros(n, dtype=np.int64)
    case = np.zeros(n, dtype=np.int64)
    lo = np.full(n, np.nan)
    hi = np.full(n, np.nan)
    for i in range(n):
        kind[i], case[i], lo[i], hi[i] = classify_roles(
            m[i], M[i], z0[i], pole, has_pole, gamma, tol)
    return kind, case, lo, hi


def classify_batch(s, A, B, pole, has_pole, gamma, tol):
    s = np.ascontiguousarray(s, dtype=float)
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    n = s.shape[0]
    kind = np.zeros(n, dtype=np.int64)
    case = np.zeros(n, dtype=np.int64)
    roles = np.full((n, 3), np.nan)
    rng = np.full((n, 2), np.nan)
    for i in range(n):
        k, c, m, M, z0, lo, hi = classify_coeffs(s[i], A[i], B[i], pole, has_pole, gamma, tol)
        kind[i] = k
        case[i] = c
        roles[i] = (m, M, z0)
        rng[i] = (lo, hi)
    return kind, case, roles, rng


def _fornberg_first(x0, xs):
    n = len(xs)
    c = [[0.0, 0.0] for _ in range(n)]
    c1 = 1.0
    c4 = xs[0] - x0
    c[0][0] = 1.0
    for i in range(1, n):
        mn = min(i, 1)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - x0
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2
            for k in range(mn, 0, -1):
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3
            c[j][0] = c4 * c[j][0] / c3
        c1 = c2
    return [row[1] for row in c]


def fd_first_derivative(t, f, half):
    """Centred ``2*half+1``-point derivative df/dt; NaN within ``half`` of the ends."""
    t = np.ascontiguousarray(t, dtype=float)
    f = np.ascontiguousarray(f, dtype=float)
    n = t.shape[0]
    out = np.full(n, np.nan)
    for i in range(half, n - half):
        xs = t[i - half:i + half + 1].tolist()
        w = _fornberg_first(t[i], xs)
        acc = 0.0
        for j in range(2 * half + 1):
            acc += w[j] * f[i - half + j]
        out[i] = acc
    return out
