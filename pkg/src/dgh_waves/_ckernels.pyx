# cython: language_level=3
"""Compiled scalar kernels; same API and results as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, acos, cos, pow, copysign, INFINITY, NAN, M_PI

cnp.import_array()

cdef double EPS = 2.220446049250313e-16
cdef double NOISE_FACTOR = 64.0

cdef enum:
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
    C_NONE = 0
    C_CONSTANT = 1
    C_KDV = 2
    C_DGH = 6
    C_DGH_PRIME = 12


cdef inline double _peval(double s, double A, double B, double x) nogil:
    return ((s - x) * x + A) * x + B


cdef inline double _fmax3(double a, double b, double c) nogil:
    cdef double r = a
    if b > r:
        r = b
    if c > r:
        r = c
    return r


cdef inline bint _close(double a, double b, double tol) nogil:
    return fabs(a - b) <= tol * _fmax3(1.0, fabs(a), fabs(b))


cdef double _newton(double s, double A, double B, double x, double lo, double hi) nogil:
    cdef int it
    cdef double px, d, xn
    for it in range(2):
        px = _peval(s, A, B, x)
        d = (2.0 * s - 3.0 * x) * x + A
        if d == 0.0 or px == 0.0:
            break
        xn = x - px / d
        if not (lo <= xn <= hi):
            break
        if fabs(_peval(s, A, B, xn)) > fabs(px):
            break
        x = xn
    return x


cdef double _one_real_root(double s, double A, double B, double lo, double hi) nogil:
    cdef double dq = s * s + 3.0 * A
    cdef double p = -dq / 3.0
    cdef double q = -2.0 * s * s * s / 27.0 - s * A / 3.0 - B
    cdef double disc = q * q / 4.0 + p * p * p / 27.0
    cdef double u, t
    if disc < 0.0:
        disc = 0.0
    u = -q / 2.0 - copysign(sqrt(disc), q)
    u = copysign(pow(fabs(u), 1.0 / 3.0), u)
    if u != 0.0:
        t = u - p / (3.0 * u)
    else:
        t = 0.0
    return _newton(s, A, B, t + s / 3.0, lo, hi)


cdef inline bint _is_double(double pv, double x, double curv, double tol, double noise) nogil:
    cdef double sep = tol * (1.0 if fabs(x) < 1.0 else fabs(x))
    cdef double lim = curv * sep * sep / 8.0
    if noise > lim:
        lim = noise
    return fabs(pv) <= lim


cdef int _cubic_roots(double s, double A, double B, double tol,
                      double* vals, long* ks) nogil:
    """Fill sorted distinct roots and multiplicities; return their count."""
    cdef double scale = _fmax3(1.0, fabs(s), sqrt(fabs(A)))
    cdef double cb = fabs(B) ** (1.0 / 3.0)
    cdef double noise, xi, dq, pv, spread, sq, qq, xa, xb, x1, x2, p1, p2, curv
    cdef double r, p, q, arg, th, tmp, lo, hi
    cdef double ts[3]
    cdef bint d1, d2
    cdef int n = 0, i, j, k
    if cb > scale:
        scale = cb
    noise = NOISE_FACTOR * EPS * scale * scale * scale
    xi = s / 3.0
    dq = s * s + 3.0 * A
    if dq <= 0.0 or 2.0 * sqrt(dq) / 3.0 <= tol * (1.0 if fabs(xi) < 1.0 else fabs(xi)):
        pv = _peval(s, A, B, xi)
        spread = tol * (1.0 if fabs(xi) < 1.0 else fabs(xi))
        if fabs(pv) <= (noise if noise > spread * spread * spread else spread * spread * spread):
            vals[0] = xi
            ks[0] = 3
            n = 1
        else:
            vals[0] = _one_real_root(s, A, B, -INFINITY, INFINITY)
            ks[0] = 1
            n = 1
    else:
        sq = sqrt(dq)
        if s != 0.0:
            qq = s + copysign(sq, s)
        else:
            qq = sq
        xa = qq / 3.0
        xb = -A / qq
        x1 = xa if xa < xb else xb
        x2 = xb if xa < xb else xa
        p1 = _peval(s, A, B, x1)
        p2 = _peval(s, A, B, x2)
        curv = 2.0 * sq
        d1 = _is_double(p1, x1, curv, tol, noise)
        d2 = _is_double(p2, x2, curv, tol, noise)
        if d1 and d2:
            vals[0] = xi
            ks[0] = 3
            n = 1
        elif d1:
            vals[0] = x1
            ks[0] = 2
            vals[1] = s - 2.0 * x1
            ks[1] = 1
            n = 2
        elif d2:
            vals[0] = s - 2.0 * x2
            ks[0] = 1
            vals[1] = x2
            ks[1] = 2
            n = 2
        elif p1 < 0.0 < p2:
            r = 2.0 * sq / 3.0
            p = -dq / 3.0
            q = -2.0 * s * s * s / 27.0 - s * A / 3.0 - B
            arg = (3.0 * q / (2.0 * p)) * sqrt(-3.0 / p)
            if arg > 1.0:
                arg = 1.0
            if arg < -1.0:
                arg = -1.0
            th = acos(arg) / 3.0
            for k in range(3):
                ts[k] = r * cos(th - 2.0 * M_PI * k / 3.0) + xi
            # insertion sort of three values
            for i in range(1, 3):
                tmp = ts[i]
                j = i - 1
                while j >= 0 and ts[j] > tmp:
                    ts[j + 1] = ts[j]
                    j -= 1
                ts[j + 1] = tmp
            vals[0] = _newton(s, A, B, ts[0], -INFINITY, x1)
            vals[1] = _newton(s, A, B, ts[1], x1, x2)
            vals[2] = _newton(s, A, B, ts[2], x2, INFINITY)
            ks[0] = 1
            ks[1] = 1
            ks[2] = 1
            n = 3
        elif p1 > 0.0:
            vals[0] = _one_real_root(s, A, B, x2, INFINITY)
            ks[0] = 1
            n = 1
        else:
            vals[0] = _one_real_root(s, A, B, -INFINITY, x1)
            ks[0] = 1
            n = 1
    # sort (n <= 3)
    for i in range(1, n):
        tmp = vals[i]
        k = ks[i]
        j = i - 1
        while j >= 0 and vals[j] > tmp:
            vals[j + 1] = vals[j]
            ks[j + 1] = ks[j]
            j -= 1
        vals[j + 1] = tmp
        ks[j + 1] = k
    # merge adjacent clusters
    cdef int m = 1
    for i in range(1, n):
        if _close(vals[m - 1], vals[i], tol):
            vals[m - 1] = (vals[m - 1] * ks[m - 1] + vals[i] * ks[i]) / (ks[m - 1] + ks[i])
            ks[m - 1] += ks[i]
        else:
            vals[m] = vals[i]
            ks[m] = ks[i]
            m += 1
    for i in range(m):
        vals[i] = vals[i] + 0.0
    return m


def cubic_roots(double s, double A, double B, double tol):
    cdef double vals[3]
    cdef long ks[3]
    cdef int n = _cubic_roots(s, A, B, tol, vals, ks)
    return [vals[i] for i in range(n)], [int(ks[i]) for i in range(n)]


def solve_cubic_batch(s, A, B, double tol):
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef const double[::1] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] Bv = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t n = sv.shape[0], i
    cdef int j, c
    roots_a = np.full((n, 3), np.nan)
    mult_a = np.zeros((n, 3), dtype=np.int64)
    count_a = np.zeros(n, dtype=np.int64)
    cdef double[:, ::1] roots = roots_a
    cdef long[:, ::1] mult = mult_a
    cdef long[::1] count = count_a
    cdef double vals[3]
    cdef long ks[3]
    with nogil:
        for i in range(n):
            c = _cubic_roots(sv[i], Av[i], Bv[i], tol, vals, ks)
            count[i] = c
            for j in range(c):
                roots[i, j] = vals[j]
                mult[i, j] = ks[j]
    return roots_a, mult_a, count_a


cdef void _classify_roles(double m, double M, double z0, double p, bint has_pole,
                          double gamma, double tol, long* kind, long* case,
                          double* lo, double* hi) nogil:
    cdef bint below, above
    cdef int dec
    kind[0] = K_NONE
    case[0] = C_NONE
    lo[0] = NAN
    hi[0] = NAN
    if _close(m, M, tol):
        kind[0] = K_CONSTANT
        case[0] = C_CONSTANT
        lo[0] = m
        hi[0] = m
        return
    if M < m:
        return
    below = _close(z0, m, tol) or z0 < m
    above = _close(z0, M, tol) or z0 > M
    if not has_pole:
        if gamma > 0.0 and below:
            lo[0] = m
            hi[0] = M
            if _close(z0, m, tol):
                kind[0] = K_SMOOTH_DECAY_DOWN
                case[0] = C_KDV + 1
            else:
                kind[0] = K_SMOOTH_PERIODIC
                case[0] = C_KDV
        elif gamma < 0.0 and above:
            lo[0] = m
            hi[0] = M
            if _close(z0, M, tol):
                kind[0] = K_SMOOTH_DECAY_UP
                case[0] = C_KDV + 3
            else:
                kind[0] = K_SMOOTH_PERIODIC
                case[0] = C_KDV + 2
        return
    if below:
        dec = 1 if _close(z0, m, tol) else 0
        if _close(M, p, tol):
            kind[0] = K_PEAKON_DECAY if dec else K_PERIODIC_PEAKON
            case[0] = C_DGH + 2 + dec
            lo[0] = m
            hi[0] = M
            return
        if M < p:
            kind[0] = K_SMOOTH_DECAY_DOWN if dec else K_SMOOTH_PERIODIC
            case[0] = C_DGH + dec
            lo[0] = m
            hi[0] = M
            return
        if m < p and not _close(m, p, tol):
            kind[0] = K_CUSPON_DECAY if dec else K_PERIODIC_CUSPON
            case[0] = C_DGH + 4 + dec
            lo[0] = m
            hi[0] = p
            return
    if above:
        dec = 1 if _close(z0, M, tol) else 0
        if _close(m, p, tol):
            kind[0] = K_ANTI_PEAKON_DECAY if dec else K_PERIODIC_ANTI_PEAKON
            case[0] = C_DGH_PRIME + 2 + dec
            lo[0] = m
            hi[0] = M
            return
        if p < m:
            kind[0] = K_SMOOTH_DECAY_UP if dec else K_SMOOTH_PERIODIC
            case[0] = C_DGH_PRIME + dec
            lo[0] = m
            hi[0] = M
            return
        if p < M and not _close(M, p, tol):
            kind[0] = K_ANTI_CUSPON_DECAY if dec else K_PERIODIC_ANTI_CUSPON
            case[0] = C_DGH_PRIME + 4 + dec
            lo[0] = p
            hi[0] = M
            return


def classify_roles(double m, double M, double z0, double pole, bint has_pole,
                   double gamma, double tol):
    cdef long kind, case
    cdef double lo, hi
    _classify_roles(m, M, z0, pole, has_pole, gamma, tol, &kind, &case, &lo, &hi)
    return int(kind), int(case), lo, hi


cdef inline bint _nontrivial(long kind) nogil:
    return kind != K_NONE and kind != K_CONSTANT


cdef void _classify_coeffs(double s, double A, double B, double pole, bint has_pole,
                           double gamma, double tol, long* kind, long* case,
                           double* roles, double* rng) nogil:
    cdef double vals[3]
    cdef long ks[3]
    cdef double flat[3]
    cdef int n = _cubic_roots(s, A, B, tol, vals, ks)
    cdef int i, j, f = 0
    cdef double lo, hi, d, other
    if n == 1:
        if ks[0] == 3:
            kind[0] = K_CONSTANT
            case[0] = C_CONSTANT
            for i in range(3):
                roles[i] = vals[0]
            rng[0] = vals[0]
            rng[1] = vals[0]
        else:
            kind[0] = K_NONE
            case[0] = C_NONE
            for i in range(3):
                roles[i] = NAN
            rng[0] = NAN
            rng[1] = NAN
        return
    for i in range(n):
        for j in range(ks[i]):
            flat[f] = vals[i]
            f += 1
    _classify_roles(flat[1], flat[2], flat[0], pole, has_pole, gamma, tol, kind, case, &lo, &hi)
    if _nontrivial(kind[0]):
        roles[0] = flat[1]
        roles[1] = flat[2]
        roles[2] = flat[0]
        rng[0] = lo
        rng[1] = hi
        return
    _classify_roles(flat[0], flat[1], flat[2], pole, has_pole, gamma, tol, kind, case, &lo, &hi)
    if _nontrivial(kind[0]):
        roles[0] = flat[0]
        roles[1] = flat[1]
        roles[2] = flat[2]
        rng[0] = lo
        rng[1] = hi
        return
    if n == 2:
        if ks[0] == 2:
            d = vals[0]
            other = vals[1]
        else:
            d = vals[1]
            other = vals[0]
        kind[0] = K_CONSTANT
        case[0] = C_CONSTANT
        roles[0] = d
        roles[1] = d
        roles[2] = other
        rng[0] = d
        rng[1] = d
        return
    kind[0] = K_NONE
    case[0] = C_NONE
    roles[0] = flat[1]
    roles[1] = flat[2]
    roles[2] = flat[0]
    rng[0] = NAN
    rng[1] = NAN


def classify_coeffs(double s, double A, double B, double pole, bint has_pole,
                    double gamma, double tol):
    cdef long kind, case
    cdef double roles[3]
    cdef double rng[2]
    _classify_coeffs(s, A, B, pole, has_pole, gamma, tol, &kind, &case, roles, rng)
    return int(kind), int(case), roles[0], roles[1], roles[2], rng[0], rng[1]


def classify_roles_batch(m, M, z0, double pole, bint has_pole, double gamma, double tol):
    cdef const double[::1] mv = np.ascontiguousarray(m, dtype=np.float64)
    cdef const double[::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef const double[::1] zv = np.ascontiguousarray(z0, dtype=np.float64)
    cdef Py_ssize_t n = mv.shape[0], i
    kind_a = np.zeros(n, dtype=np.int64)
    case_a = np.zeros(n, dtype=np.int64)
    lo_a = np.full(n, np.nan)
    hi_a = np.full(n, np.nan)
    cdef long[::1] kind = kind_a
    cdef long[::1] case = case_a
    cdef double[::1] lo = lo_a
    cdef double[::1] hi = hi_a
    with nogil:
        for i in range(n):
            _classify_roles(mv[i], Mv[i], zv[i], pole, has_pole, gamma, tol,
                            &kind[i], &case[i], &lo[i], &hi[i])
    return kind_a, case_a, lo_a, hi_a


def classify_batch(s, A, B, double pole, bint has_pole, double gamma, double tol):
    cdef const double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef const double[::1] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] Bv = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t n = sv.shape[0], i
    kind_a = np.zeros(n, dtype=np.int64)
    case_a = np.zeros(n, dtype=np.int64)
    roles_a = np.full((n, 3), np.nan)
    rng_a = np.full((n, 2), np.nan)
    cdef long[::1] kind = kind_a
    cdef long[::1] case = case_a
    cdef double[:, ::1] roles = roles_a
    cdef double[:, ::1] rng = rng_a
    with nogil:
        for i in range(n):
            _classify_coeffs(sv[i], Av[i], Bv[i], pole, has_pole, gamma, tol,
                             &kind[i], &case[i], &roles[i, 0], &rng[i, 0])
    return kind_a, case_a, roles_a, rng_a


def fd_first_derivative(t, f, int half):
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef const double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0], i
    cdef int w = 2 * half + 1, a, b, k, mn
    out_a = np.full(n, np.nan)
    cdef double[::1] out = out_a
    cdef double[:, ::1] c = np.zeros((w, 2))
    cdef double c1, c2, c3, c4, c5, x0, acc
    if half < 1:
        raise ValueError("half must be >= 1")
    with nogil:
        for i in range(half, n - half):
            x0 = tv[i]
            for a in range(w):
                c[a, 0] = 0.0
                c[a, 1] = 0.0
            c1 = 1.0
            c4 = tv[i - half] - x0
            c[0, 0] = 1.0
            for a in range(1, w):
                mn = 1
                c2 = 1.0
                c5 = c4
                c4 = tv[i - half + a] - x0
                for b in range(a):
                    c3 = tv[i - half + a] - tv[i - half + b]
                    c2 = c2 * c3
                    if b == a - 1:
                        c[a, 1] = c1 * (c[a - 1, 0] - c5 * c[a - 1, 1]) / c2
                        c[a, 0] = -c1 * c5 * c[a - 1, 0] / c2
                    c[b, 1] = (c4 * c[b, 1] - c[b, 0]) / c3
                    c[b, 0] = c4 * c[b, 0] / c3
                c1 = c2
            acc = 0.0
            for a in range(w):
                acc = acc + c[a, 1] * fv[i - half + a]
            out[i] = acc
    return out_a
