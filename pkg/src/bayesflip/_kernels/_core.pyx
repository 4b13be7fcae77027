# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled kernel backend; twin of ``bayesflip._kernels.pure``.

Same callables, same algorithms, same evaluation order.  See the pure
module for the contracts; keep the two in lockstep when editing.
"""

from libc.math cimport HUGE_VAL, cos, exp, fabs, log, log1p, sqrt, tan

BACKEND_NAME = "compiled"

PRIOR_NORMAL = 0
PRIOR_CAUCHY = 1

cdef double _LOG_SQRT_2PI = 0.9189385332046727
cdef double _LOG_PI = 1.1447298858494002
cdef double _TINY = 1e-300
cdef double _THETA_HI = 1.5707963267948966  # pi/2; tan stays finite here
cdef double _E = 2.718281828459045


def lambert_w0(double x, double rel_tol=1e-12, int max_iter=64):
    """Principal-branch Lambert W via Halley iteration (caller validates
    x >= -1/e)."""
    cdef double q, p, w, l1, l2, ew, f, wp1, dw
    cdef int i
    if x == 0.0:
        return 0.0
    q = _E * x + 1.0
    if q <= 0.0:
        return -1.0
    if x < -0.25:
        p = sqrt(2.0 * q)
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    elif x < 3.0:
        w = x / (1.0 + x)
    else:
        l1 = log(x)
        l2 = log(l1)
        w = l1 - l2 + l2 / l1
    for i in range(max_iter):
        ew = exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            wp1 = _TINY
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if fabs(dw) <= rel_tol * (fabs(w) + _TINY):
            return w
    raise ArithmeticError("Lambert W iteration did not converge")


cdef struct Ctx:
    double z
    double sqrt_n
    int kind
    double scale
    double tail_scale
    double log_tail_scale
    double shift


cdef double _log_integrand(double mu, Ctx *c):
    cdef double d = c.z - c.sqrt_n * mu
    cdef double ll = -_LOG_SQRT_2PI - 0.5 * d * d
    cdef double t, a, lsq
    if c.kind == PRIOR_NORMAL:
        t = mu / c.scale
        return ll - _LOG_SQRT_2PI - log(c.scale) - 0.5 * t * t
    a = fabs(mu)
    if a > c.scale:
        t = c.scale / a
        lsq = 2.0 * log(a) + log1p(t * t)
    else:
        t = a / c.scale
        lsq = 2.0 * log(c.scale) + log1p(t * t)
    return ll + log(c.scale) - _LOG_PI - lsq


cdef double _log_g(int mode, double edge, double t, Ctx *c):
    cdef double mu
    if mode == 0:
        return _log_integrand(t, c)
    mu = edge + mode * c.tail_scale * tan(t)
    return _log_integrand(mu, c) + c.log_tail_scale - 2.0 * log(cos(t))


cdef double _shifted_exp(double e):
    if e > 700.0:
        e = 700.0
    return exp(e)


cdef struct QR:
    double val
    double err
    bint ok


cdef QR _simpson_split(int mode, double edge, Ctx *c, double a, double b,
                       double fa, double fm, double fb, double whole,
                       double eps, int depth):
    cdef double m = 0.5 * (a + b)
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = _shifted_exp(_log_g(mode, edge, lm, c) - c.shift)
    cdef double frm = _shifted_exp(_log_g(mode, edge, rm, c) - c.shift)
    cdef double left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    cdef double right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    cdef double delta = left + right - whole
    cdef QR out, lres, rres
    if fabs(delta) <= 15.0 * eps or depth <= 0:
        out.val = left + right + delta / 15.0
        out.err = fabs(delta) / 15.0
        out.ok = fabs(delta) <= 15.0 * eps
        return out
    lres = _simpson_split(mode, edge, c, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
    rres = _simpson_split(mode, edge, c, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    out.val = lres.val + rres.val
    out.err = lres.err + rres.err
    out.ok = lres.ok and rres.ok
    return out


def marginal_loglik(double z, double n, int kind, double scale,
                    double rel_tol, int max_depth=48):
    """Log marginal likelihood of the data under a scale prior on the
    mean; mirrors pure.marginal_loglik (split points around the
    likelihood spike and the prior body, tan-mapped tails, max-shift)."""
    cdef double sqrt_n = sqrt(n)
    cdef double xbar = z / sqrt_n
    cdef double sig = 1.0 / sqrt_n
    cdef Ctx c
    c.z = z
    c.sqrt_n = sqrt_n
    c.kind = kind
    c.scale = scale
    c.tail_scale = scale if scale > sig else sig
    c.log_tail_scale = log(c.tail_scale)
    c.shift = 0.0

    # sorted, deduplicated split points (insertion sort on a fixed array)
    cdef double raw[6]
    cdef double pts[6]
    cdef int i, j, npts
    raw[0] = xbar - 8.0 * sig
    raw[1] = xbar
    raw[2] = xbar + 8.0 * sig
    raw[3] = -8.0 * scale
    raw[4] = 0.0
    raw[5] = 8.0 * scale
    cdef double key
    for i in range(1, 6):
        key = raw[i]
        j = i - 1
        while j >= 0 and raw[j] > key:
            raw[j + 1] = raw[j]
            j -= 1
        raw[j + 1] = key
    npts = 0
    for i in range(6):
        if npts == 0 or raw[i] != pts[npts - 1]:
            pts[npts] = raw[i]
            npts += 1

    # spans: left tail, finite pieces, right tail
    cdef int nspans = npts + 1
    cdef int smode[7]
    cdef double sa[7]
    cdef double sb[7]
    cdef double sedge[7]
    smode[0] = -1
    sa[0] = 0.0
    sb[0] = _THETA_HI
    sedge[0] = pts[0]
    for i in range(npts - 1):
        smode[i + 1] = 0
        sa[i + 1] = pts[i]
        sb[i + 1] = pts[i + 1]
        sedge[i + 1] = 0.0
    smode[nspans - 1] = 1
    sa[nspans - 1] = 0.0
    sb[nspans - 1] = _THETA_HI
    sedge[nspans - 1] = pts[npts - 1]

    # max-shift scan: mode candidates plus 33 coarse nodes per span
    cdef double k_eff = n * scale * scale
    cdef double cand[3]
    cand[0] = 0.0
    cand[1] = xbar
    cand[2] = xbar * k_eff / (1.0 + k_eff)
    cdef double shift = -HUGE_VAL
    cdef double v
    for i in range(3):
        v = _log_integrand(cand[i], &c)
        if v > shift:
            shift = v
    cdef double nodes[7][33]
    cdef double h
    for i in range(nspans):
        h = (sb[i] - sa[i]) / 32.0
        for j in range(33):
            v = _log_g(smode[i], sedge[i], sa[i] + j * h, &c)
            nodes[i][j] = v
            if v > shift:
                shift = v
    if shift == -HUGE_VAL or shift != shift:
        return -HUGE_VAL
    c.shift = shift

    cdef double total_coarse = 0.0
    cdef double acc
    for i in range(nspans):
        h = (sb[i] - sa[i]) / 32.0
        acc = 0.5 * (_shifted_exp(nodes[i][0] - shift) + _shifted_exp(nodes[i][32] - shift))
        for j in range(1, 32):
            acc += _shifted_exp(nodes[i][j] - shift)
        total_coarse += acc * h
    cdef double eps = rel_tol * (total_coarse if total_coarse > _TINY else _TINY) / nspans

    cdef double total = 0.0
    cdef bint ok = True
    cdef double fa, fb, fm, m, whole
    cdef QR qr
    for i in range(nspans):
        fa = _shifted_exp(_log_g(smode[i], sedge[i], sa[i], &c) - shift)
        fb = _shifted_exp(_log_g(smode[i], sedge[i], sb[i], &c) - shift)
        m = 0.5 * (sa[i] + sb[i])
        fm = _shifted_exp(_log_g(smode[i], sedge[i], m, &c) - shift)
        whole = (sb[i] - sa[i]) * (fa + 4.0 * fm + fb) / 6.0
        qr = _simpson_split(smode[i], sedge[i], &c, sa[i], sb[i],
                            fa, fm, fb, whole, eps, max_depth)
        total += qr.val
        ok = ok and qr.ok
    if not ok:
        raise ArithmeticError("adaptive quadrature did not reach the requested tolerance")
    if total <= 0.0:
        return -HUGE_VAL
    return shift + log(total)
