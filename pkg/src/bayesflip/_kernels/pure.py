"""Pure-Python kernel backend.

Twin of the optional compiled extension ``bayesflip._kernels._core``.
Both expose the same callables and mirror each other step for step, so
their results agree to rounding error; an equivalence test enforces
this.  The hot kernel is ``marginal_loglik``: the adaptive quadrature
behind every heavy-tailed-prior Bayes factor, flip-scale search, and
sweep.

Kernels assume domain-valid inputs (the wrappers in
``bayesflip.numerics`` validate) and signal non-convergence with plain
ArithmeticError; callers translate that into the package exception
hierarchy.
"""

import math

BACKEND_NAME = "pure"

PRIOR_NORMAL = 0
PRIOR_CAUCHY = 1

_LOG_SQRT_2PI = 0.9189385332046727
_LOG_PI = 1.1447298858494002
_TINY = 1e-300
# tan is finite in float64 at pi/2, so tail pieces can include the endpoint
_THETA_HI = math.pi / 2.0


def lambert_w0(x, rel_tol=1e-12, max_iter=64):
    """Principal-branch Lambert W (the w >= -1 solution of w*e^w = x).

    Initial guess from the branch-point series near -1/e and the log-log
    asymptote for large x, refined by Halley iteration.  The caller
    guarantees x >= -1/e.
    """
    if x == 0.0:
        return 0.0
    q = math.e * x + 1.0  # vanishes at the branch point
    if q <= 0.0:
        return -1.0
    if x < -0.25:
        p = math.sqrt(2.0 * q)
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    elif x < 3.0:
        w = x / (1.0 + x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            wp1 = _TINY
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= rel_tol * (abs(w) + _TINY):
            return w
    raise ArithmeticError("Lambert W iteration did not converge")


def log_marginal_integrand(mu, z, sqrt_n, kind, scale):
    """Log of N(z; sqrt(n)*mu, 1) times the prior density at mu.

    The Cauchy branch splits log(scale^2 + mu^2) so neither factor can
    underflow for extreme scales.
    """
    d = z - sqrt_n * mu
    ll = -_LOG_SQRT_2PI - 0.5 * d * d
    if kind == PRIOR_NORMAL:
        t = mu / scale
        return ll - _LOG_SQRT_2PI - math.log(scale) - 0.5 * t * t
    a = abs(mu)
    if a > scale:
        t = scale / a
        lsq = 2.0 * math.log(a) + math.log1p(t * t)
    else:
        t = a / scale
        lsq = 2.0 * math.log(scale) + math.log1p(t * t)
    return ll + math.log(scale) - _LOG_PI - lsq


def _shifted_exp(e):
    # the shift candidates should make e <= 0 near the max; clamp defensively
    if e > 700.0:
        e = 700.0
    return math.exp(e)


def adaptive_simpson(g, a, b, eps, max_depth):
    """Adaptive Simpson with Richardson acceptance on [a, b].

    Returns (value, error_estimate, converged); eps is the absolute
    error budget for the interval and halves on each split.
    """
    fa = g(a)
    fb = g(b)
    m = 0.5 * (a + b)
    fm = g(m)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _simpson_split(g, a, b, fa, fm, fb, whole, eps, max_depth)


def _simpson_split(g, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = g(lm)
    frm = g(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps or depth <= 0:
        return left + right + delta / 15.0, abs(delta) / 15.0, abs(delta) <= 15.0 * eps
    lv, le, lok = _simpson_split(g, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
    rv, re, rok = _simpson_split(g, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    return lv + rv, le + re, lok and rok


def _spans(points):
    """Split the real line at ``points``: tan-mapped tails plus the finite
    pieces between consecutive split points.

    Each span is (mode, a, b, edge) where mode is 0 for a finite piece in
    mu, -1/+1 for the left/right tail integrated over theta in [0, pi/2]
    with mu = edge + mode * tail_scale * tan(theta).
    """
    spans = [(-1, 0.0, _THETA_HI, points[0])]
    for a, b in zip(points, points[1:]):
        spans.append((0, a, b, 0.0))
    spans.append((1, 0.0, _THETA_HI, points[-1]))
    return spans


def integrate_log(log_f, points, tail_scale, candidates, rel_tol, max_depth=48):
    """Log of the integral of exp(log_f) over the real line.

    ``points`` isolate the integrand's features into their own pieces;
    ``candidates`` are extra abscissae (at or near the modes) included in
    the max-shift scan so the shifted exponent never overflows.  The
    coarse 33-node scan per piece doubles as the error-budget estimate.
    """
    pts = sorted(set(points))
    spans = _spans(pts)
    log_ts = math.log(tail_scale)

    def log_g(mode, edge, t):
        if mode == 0:
            return log_f(t)
        mu = edge + mode * tail_scale * math.tan(t)
        return log_f(mu) + log_ts - 2.0 * math.log(math.cos(t))

    shift = -math.inf
    for c in candidates:
        v = log_f(c)
        if v > shift:
            shift = v
    node_vals = []
    for mode, a, b, edge in spans:
        h = (b - a) / 32.0
        vals = [log_g(mode, edge, a + j * h) for j in range(33)]
        node_vals.append(vals)
        vm = max(vals)
        if vm > shift:
            shift = vm
    if shift == -math.inf or math.isnan(shift):
        return -math.inf

    total_coarse = 0.0
    for (mode, a, b, edge), vals in zip(spans, node_vals):
        h = (b - a) / 32.0
        acc = 0.5 * (_shifted_exp(vals[0] - shift) + _shifted_exp(vals[32] - shift))
        for j in range(1, 32):
            acc += _shifted_exp(vals[j] - shift)
        total_coarse += acc * h
    eps = rel_tol * max(total_coarse, _TINY) / len(spans)

    total = 0.0
    ok = True
    for mode, a, b, edge in spans:
        def g(t, _m=mode, _e=edge):
            return _shifted_exp(log_g(_m, _e, t) - shift)

        v, _, converged = adaptive_simpson(g, a, b, eps, max_depth)
        total += v
        ok = ok and converged
    if not ok:
        raise ArithmeticError("adaptive quadrature did not reach the requested tolerance")
    if total <= 0.0:
        return -math.inf
    return shift + math.log(total)


def integrate_linear(f, points, tail_scale, candidates, rel_tol, max_depth=48):
    """Integral of an arbitrary (possibly signed) callable over the real
    line, same piece scheme as integrate_log; values are normalized by
    the largest magnitude seen in the coarse scan instead of log-shifted.
    """
    pts = sorted(set(points))
    spans = _spans(pts)

    def g_raw(mode, edge, t):
        if mode == 0:
            return f(t)
        mu = edge + mode * tail_scale * math.tan(t)
        sec = 1.0 / math.cos(t)
        return f(mu) * tail_scale * sec * sec

    fmax = 0.0
    for c in candidates:
        fmax = max(fmax, abs(f(c)))
    node_vals = []
    for mode, a, b, edge in spans:
        h = (b - a) / 32.0
        vals = [g_raw(mode, edge, a + j * h) for j in range(33)]
        node_vals.append(vals)
        for v in vals:
            fmax = max(fmax, abs(v))
    if fmax == 0.0:
        return 0.0
    if math.isnan(fmax) or math.isinf(fmax):
        raise ArithmeticError("integrand is not finite on the scan grid")

    total_coarse = 0.0
    for (mode, a, b, edge), vals in zip(spans, node_vals):
        h = (b - a) / 32.0
        acc = 0.5 * (vals[0] + vals[32])
        for j in range(1, 32):
            acc += vals[j]
        total_coarse += acc * h / fmax
    eps = rel_tol * max(abs(total_coarse), _TINY) / len(spans)

    total = 0.0
    ok = True
    for mode, a, b, edge in spans:
        def g(t, _m=mode, _e=edge):
            return g_raw(_m, _e, t) / fmax

        v, _, converged = adaptive_simpson(g, a, b, eps, max_depth)
        total += v
        ok = ok and converged
    if not ok:
        raise ArithmeticError("adaptive quadrature did not reach the requested tolerance")
    return fmax * total


def marginal_loglik(z, n, kind, scale, rel_tol, max_depth=48):
    """Log marginal likelihood of the data under a scale prior on the mean:
    log of the integral over mu of N(z; sqrt(n)*mu, 1) * prior(mu; scale).

    Split points isolate the likelihood spike (width 1/sqrt(n) around the
    sample mean) and the prior body (width ``scale``); the tail map scale
    is matched to the wider of the two.
    """
    sqrt_n = math.sqrt(n)
    xbar = z / sqrt_n
    sig = 1.0 / sqrt_n

    def log_f(mu):
        return log_marginal_integrand(mu, z, sqrt_n, kind, scale)

    points = (
        xbar - 8.0 * sig,
        xbar,
        xbar + 8.0 * sig,
        -8.0 * scale,
        0.0,
        8.0 * scale,
    )
    k_eff = n * scale * scale
    candidates = (0.0, xbar, xbar * k_eff / (1.0 + k_eff))
    return integrate_log(log_f, points, max(scale, sig), candidates, rel_tol, max_depth)
