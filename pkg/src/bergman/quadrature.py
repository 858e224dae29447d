"""Quadrature for radial integrals with endpoint singularities at r = 1.

Every integrand in this library lives on [0, 1) and is well behaved away
from the right endpoint, where power/log type singularities (or just very
sharp decay of the weight tail) concentrate all the action on the scale of
1 - r.  We therefore always integrate in the variable

    u = 1 - r,

splitting the domain into the geometric panels [u0/2^{j+1}, u0/2^j].  On
each panel the integrand is a mild perturbation of a pure power u^s, which
a fixed-order Gauss rule resolves to near machine precision; an adaptive
bisection fallback handles the few genuinely rough panels (oscillatory
densities).  Working in u keeps full relative precision arbitrarily close
to the endpoint: u = 2^{-400} is a perfectly good double even though
1 - 2^{-400} rounds to 1.

For improper integrals toward u = 0 the panel contributions of a power-law
integrand form an exact geometric sequence, so the loop stops once the
contribution ratio stabilizes and closes the remaining tail with the
geometric sum.  A ratio that refuses to drop below 1 is reported as
divergence together with the implied local exponent.
"""

import math

import numpy as np

from .errors import QuadratureDivergence

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(16)

#: levels after which a stable contribution ratio is trusted for
#: geometric extrapolation of the remaining tail
_MIN_LEVELS_BEFORE_EXTRAPOLATION = 24


def gauss_panel(f, a, b):
    """Fixed 16-node Gauss-Legendre estimate of ``integral of f on [a, b]``."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid + half * _NODES
    return half * float(np.sum(_WEIGHTS * f(x)))


def adaptive_panel(f, a, b, rel_tol=1e-13, max_depth=30):
    """Bisection-adaptive Gauss quadrature on a single finite panel.

    Only needed for integrands with structure below the panel scale
    (e.g. trigonometric oscillation of the `osc` weight family); for the
    power-law panels of the geometric scheme the first estimate already
    agrees with its refinement and no recursion happens.
    """
    whole = gauss_panel(f, a, b)
    stack = [(a, b, whole, 0)]
    total = 0.0
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = gauss_panel(f, lo, mid)
        right = gauss_panel(f, mid, hi)
        refined = left + right
        # the absolute floor keeps subnormal-magnitude panels (pure rounding
        # noise, relative error O(1)) from being subdivided to max_depth;
        # non-finite estimates cannot improve under bisection either
        if depth >= max_depth or not math.isfinite(refined - est) \
                or abs(refined - est) <= max(rel_tol * abs(refined), 1e-290):
            total += refined
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


def integrate_geometric(f, u_lo, u_hi, rel_tol=1e-12, max_levels=400,
                        adaptive=False, panel_tol=1e-13):
    """Integrate f(u) du over (u_lo, u_hi] with geometric panels toward 0.

    ``u_lo = 0`` makes the integral improper; convergence is then decided
    from the decay of the panel contributions as described in the module
    docstring.  Raises :class:`QuadratureDivergence` when the contributions
    fail to decay.
    """
    if u_hi <= u_lo:
        return 0.0
    panel = (lambda g, a, b: adaptive_panel(g, a, b, panel_tol)) if adaptive else gauss_panel

    total = 0.0
    hi = u_hi
    contribs = []
    for level in range(max_levels):
        lo = u_hi * 0.5 ** (level + 1)
        if lo <= u_lo:
            total += panel(f, max(u_lo, lo), hi)
            return total
        c = panel(f, lo, hi)
        total += c
        contribs.append(c)
        hi = lo

        if len(contribs) >= 2 and abs(total) > 0:
            if abs(contribs[-1]) < rel_tol * abs(total) and abs(contribs[-2]) < rel_tol * abs(total):
                # tail closed geometrically (harmless if already negligible)
                ratio = _stable_ratio(contribs)
                if ratio is not None and 0 < ratio < 1:
                    total += contribs[-1] * ratio / (1.0 - ratio)
                return total

        # ratio-based extrapolation / divergence detection only applies to
        # improper integrals; with u_lo > 0 growing contributions are simply
        # integrated until the lower limit is reached
        if u_lo <= 0.0 and level >= _MIN_LEVELS_BEFORE_EXTRAPOLATION:
            ratio = _stable_ratio(contribs)
            if ratio is not None:
                if ratio >= 1.0 - 1e-12:
                    raise QuadratureDivergence(
                        "panel contributions do not decay (local exponent ~ %.4f)"
                        % (1.0 + np.log2(ratio)),
                        exponent=1.0 + np.log2(ratio))
                total += contribs[-1] * ratio / (1.0 - ratio)
                return total

    # Ran out of levels: close with a geometric tail if plausible, else give up.
    ratio = _stable_ratio(contribs, window=6, agree=1e-3)
    if ratio is not None and ratio < 1:
        return total + contribs[-1] * ratio / (1.0 - ratio)
    raise QuadratureDivergence("no convergence after %d geometric levels" % max_levels)


def _stable_ratio(contribs, window=4, agree=1e-8):
    """Common ratio of the last few panel contributions, if they agree."""
    if len(contribs) < window + 1:
        return None
    tail = contribs[-(window + 1):]
    if any(c == 0 for c in tail[:-1]):
        return None
    ratios = [tail[i + 1] / tail[i] for i in range(window)]
    if any(r <= 0 for r in ratios):
        return None
    lo, hi = min(ratios), max(ratios)
    if hi - lo <= agree * max(hi, 1e-300):
        return ratios[-1]
    return None


def integrate_geometric_vec(f, u_lo, u_hi, rel_tol=1e-12, max_levels=200):
    """Vector-valued version of :func:`integrate_geometric`.

    ``f(u_nodes)`` must return an array of shape ``(len(u_nodes), dim)``.
    Convergence is judged on the max-norm of the panel contribution, so all
    components stop together (they share the quadrature nodes).  No
    divergence detection: callers use it for manifestly convergent moment
    integrals.
    """
    hi = u_hi
    total = None
    prev_small = False
    for level in range(max_levels):
        lo = u_hi * 0.5 ** (level + 1)
        a = max(u_lo, lo)
        mid = 0.5 * (a + hi)
        half = 0.5 * (hi - a)
        x = mid + half * _NODES
        vals = f(x)
        c = half * (_WEIGHTS[:, None] * vals).sum(axis=0)
        total = c if total is None else total + c
        hi = lo
        if lo <= u_lo:
            return total
        scale = float(np.max(np.abs(total))) + 1e-300
        small = float(np.max(np.abs(c))) < rel_tol * scale
        if small and prev_small:
            return total
        prev_small = small
    return total


def geometric_u_grid(j_max=40, per_level=4):
    """Diagnostic grid u_i = 2^{-(j + i/per_level)}, descending from 1.

    Covers r = 1 - u from 0 up to 1 - 2^{-j_max} with ``per_level`` points
    in every dyadic level, the resolution at which all weight conditions in
    this library vary.
    """
    exps = np.arange(0, j_max * per_level + 1) / per_level
    return 2.0 ** (-exps)
