"""Weight-adapted block decompositions and lacunary-series criteria.

Given a normalized radial weight omega and a block exponent alpha > 0, the
radii r_n are defined by

    what(r_n) = integral of omega over [r_n, 1) = 2^(-n alpha),

the integer marks are M_n = floor(1/(1 - r_n)), and the index blocks are
I(n) = {k : M_n <= k < M_(n+1)}.  The block projection of an analytic
function f = sum a_k z^k is Delta_n f = sum over k in I(n) of a_k z^k.

The central equivalences realized here compare weighted mixed norms of f
with weighted l^q sums of the Hardy norms of its blocks,

    ||f||_(p,q,omega) ~ (sum_n 2^(-n alpha) ||Delta_n f||_{H^p}^q)^(1/q),

together with sup variants, a gamma-weighted variant for derivatives, a
block growth criterion for membership in the Lipschitz-type symbol class,
omega-lacunary gap tests, and two auxiliary positive-series bounds
(the eta_gamma majorant and the positive-coefficient norm comparison).

All radii are stored and solved in the variable u = 1 - r, which keeps
full relative precision as r_n crowds toward 1 (for rapidly increasing
weights u_n underflows long before r_n distinguishes itself from 1.0).
"""

import math
import warnings

import numpy as np

from .analytic import AnalyticFunction, hardy_norm_poly, weighted_radial_integral
from .errors import DomainError
from .results import NormValue, finite

#: marks above this are not materialized as integer blocks
_MARK_CAP = 2 ** 31

#: relative distance at which 1/u_n counts as a near-integer tie
_TIE_TOL = 1e-9


def _solve_radius_u(w, target):
    """Solve tail(w, 1-u) = target for u in (0, 1], by bisection in log u.

    The tail is increasing in u, so the bracket is monotone.  Tolerance is
    1e-12 absolute in r (i.e. in u) or 1e-10 relative in the tail value,
    whichever binds first; for rapidly increasing weights the radius
    tolerance alone cannot separate consecutive radii, the tail tolerance
    can.  Returns u; underflow to 0.0 signals "beyond double precision".
    """
    if target >= w.tail_u(1.0):
        return 1.0
    s_hi = 0.0       # u = 1
    s_lo = -1.0
    while w.tail_u(math.exp(s_lo)) > target:
        s_lo *= 2.0
        if s_lo < -745.0:          # exp underflows: radius indistinguishable from 1
            return 0.0
    for _ in range(200):
        s_mid = 0.5 * (s_lo + s_hi)
        u_mid = math.exp(s_mid)
        t = w.tail_u(u_mid)
        if abs(t - target) <= 1e-12 * target:
            return u_mid
        if t > target:
            s_hi = s_mid
        else:
            s_lo = s_mid
        if s_hi - s_lo < 1e-13:
            break
    return math.exp(0.5 * (s_lo + s_hi))


def _mark_from_u(u):
    """M = floor(1/u) with deterministic near-tie handling.

    When 1/u sits within relative 1e-9 of an integer the floor is
    discontinuous under quadrature noise; we snap to the nearest integer
    and flag the tie so fixtures stay stable.
    """
    if u <= 0.0:
        return None, False
    x = 1.0 / u
    nearest = round(x)
    if nearest >= 1 and abs(x - nearest) <= _TIE_TOL * max(1.0, x):
        return int(nearest), True
    return int(math.floor(x)), False


class BlockPartition:
    """Radii, marks and index blocks of an (omega, alpha) decomposition.

    Immutable after construction.  ``marks`` lists M_0..M_K with
    M_K > max_degree when the partition fully covers the requested degree
    range; for rapidly increasing weights the marks explode doubly
    exponentially and the partition stops at the cap, reporting partial
    coverage via ``complete`` and ``covered_degree``.
    """

    def __init__(self, weight, alpha, us, marks, max_degree, near_ties, complete):
        self.weight = weight
        self.alpha = float(alpha)
        self.us = tuple(us)                      # u_n = 1 - r_n
        self.radii = tuple(1.0 - u for u in us)
        self.marks = tuple(marks)
        self.max_degree = int(max_degree)
        self.near_ties = tuple(near_ties)        # indices n where 1/u_n was a tie
        self.complete = bool(complete)
        self._mark_cache = {}                    # continuation marks beyond K
        self._validate()

    def _validate(self):
        if self.marks[0] != 1:
            raise DomainError("partition must start at M_0 = 1")
        if any(b < a for a, b in zip(self.marks, self.marks[1:])):
            raise DomainError("marks must be nondecreasing")
        if any(b > a for a, b in zip(self.us, self.us[1:])):
            raise DomainError("radii must be nondecreasing")
        for n, u in enumerate(self.us):
            target = 2.0 ** (-n * self.alpha)
            t = float(self.weight.tail_u(u))
            if not math.isclose(t, target, rel_tol=1e-9):
                raise DomainError("tail(r_%d) = %g misses 2^(-%d alpha) = %g"
                                  % (n, t, n, target))

    @property
    def block_count(self):
        return len(self.marks) - 1

    @property
    def covered_degree(self):
        """Largest degree d such that every k <= d lies in some block."""
        return self.marks[-1] - 1

    def blocks(self):
        """Half-open index ranges [M_n, M_(n+1)); block 0 starts at k = 0."""
        out = []
        for n in range(self.block_count):
            lo = 0 if n == 0 else self.marks[n]
            out.append((lo, self.marks[n + 1]))
        return out

    def block_index(self, k):
        if not 0 <= k <= self.covered_degree:
            raise DomainError("index %d not covered (partition reaches %d)"
                              % (k, self.covered_degree))
        for n in range(self.block_count):
            if k < self.marks[n + 1]:
                return n
        raise AssertionError("unreachable")

    def mark_float(self, n):
        """M_n continued past the stored blocks as a float (may be huge).

        Used by the series majorants, which only ever need r^(M_n): values
        past 1/u underflowing are returned as inf and the corresponding
        power r^(M_n) is exactly 0 for r < 1.
        """
        if n < len(self.marks):
            return float(self.marks[n])
        m = self._mark_cache.get(n)
        if m is None:
            u = _solve_radius_u(self.weight, 2.0 ** (-n * self.alpha))
            m = math.inf if u <= 0.0 else math.floor(1.0 / u)
            self._mark_cache[n] = m
        return m

    def __repr__(self):
        return ("BlockPartition(%s, alpha=%g, %d blocks, covers degree %d%s)"
                % (self.weight, self.alpha, self.block_count,
                   self.covered_degree, "" if self.complete else ", partial"))


def radii(w, alpha, count):
    """First ``count`` radii r_n solving tail(w, r_n) = 2^(-n alpha).

    The weight must be normalized (unit mass) so that r_0 = 0.
    """
    w = _require_normalized(w)
    if alpha <= 0:
        raise DomainError("block exponent alpha must be positive")
    out = []
    for n in range(count):
        u = _solve_radius_u(w, 2.0 ** (-n * alpha))
        if u <= 0.0:
            break
        out.append(1.0 - u)
    return out


def _require_normalized(w):
    if abs(w.total_mass - 1.0) > 1e-9:
        raise DomainError("weight must be normalized to unit mass "
                          "(total mass = %g); call .normalized()" % w.total_mass)
    return w


def partition(w, alpha, max_degree):
    """Build the (omega, alpha) block partition covering degrees <= max_degree.

    Marks are capped at 2^31; if the cap is reached before max_degree is
    covered the partition is returned with ``complete = False`` and callers
    must check coverage.
    """
    w = _require_normalized(w)
    if alpha <= 0:
        raise DomainError("block exponent alpha must be positive")
    if max_degree < 0:
        raise DomainError("max_degree must be nonnegative")
    us = [1.0]
    marks = [1]
    ties = []
    complete = True
    n = 0
    while marks[-1] <= max_degree:
        n += 1
        u = _solve_radius_u(w, 2.0 ** (-n * alpha))
        m, tie = _mark_from_u(u)
        if m is None or m > _MARK_CAP:
            complete = False
            break
        us.append(u)
        marks.append(m)
        if tie:
            ties.append(n)
    return BlockPartition(w, alpha, us, marks, max_degree, ties, complete)


def block(f, part, n):
    """Delta_n f: the exact coefficient slice of f over I(n)."""
    if not 0 <= n < part.block_count:
        raise DomainError("block index %d out of range [0, %d)"
                          % (n, part.block_count))
    lo = 0 if n == 0 else part.marks[n]
    hi = part.marks[n + 1]
    c = np.zeros(min(hi, len(f.coefficients)), dtype=complex)
    top = min(hi, len(f.coefficients))
    if lo < top:
        c[lo:top] = f.coefficients[lo:top]
    return AnalyticFunction(c if len(c) else [0.0])


def _block_hardy_norms(f, p, part):
    """||Delta_n f||_{H^p} for every block, skipping all-zero blocks.

    Hardy means on the circle are invariant under the coefficient shift
    z^(-M_n), so each block is evaluated as a polynomial of its own length
    rather than at its true degree offset.
    """
    if f.degree > part.covered_degree:
        raise DomainError("function degree %d exceeds partition coverage %d"
                          % (f.degree, part.covered_degree))
    coeffs = f.coefficients
    norms = np.zeros(part.block_count)
    for n, (lo, hi) in enumerate(part.blocks()):
        top = min(hi, len(coeffs))
        if lo >= top:
            continue
        sl = coeffs[lo:top]
        if not np.any(sl):
            continue
        norms[n] = hardy_norm_poly(AnalyticFunction(sl), p)
    return norms


def decomposition_norm(f, p, q, part):
    """(sum_n 2^(-n alpha q . beta) ... ) — the block l^q norm.

    Computes (sum_n 2^(-n alpha) ||Delta_n f||_{H^p}^q)^(1/q) with exact
    per-block Hardy norms; equivalent (with weight-dependent constants) to
    the mixed norm of f against omega with the same (p, q).
    """
    if p <= 1:
        raise DomainError("decomposition_norm requires p > 1")
    if q <= 0:
        raise DomainError("q must be positive")
    norms = _block_hardy_norms(f, p, part)
    ns = np.arange(part.block_count)
    s = float(np.sum(2.0 ** (-ns * part.alpha) * norms ** q))
    return finite(s ** (1.0 / q), method="truncation",
                  blocks=part.block_count)


def decomposition_norm_sup(f, p, beta, part):
    """sup_n 2^(-n alpha beta) ||Delta_n f||_{H^p} — the block sup norm."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    norms = _block_hardy_norms(f, p, part)
    ns = np.arange(part.block_count)
    vals = 2.0 ** (-ns * part.alpha * beta) * norms
    n_star = int(np.argmax(vals)) if len(vals) else 0
    return finite(float(np.max(vals)) if len(vals) else 0.0,
                  method="sup-grid", argmax_block=n_star)


def decomposition_norm_gamma(g, q, p, gamma, part):
    """sum_n 2^(-n) ||Delta_n g||_{H^q}^p / M_n^gamma, for alpha = 1 partitions.

    Returns the raw sum (not its p-th root): it is the quantity compared
    against the p-th power of the gamma-weighted mixed norm.  At gamma = 0
    the sum equals decomposition_norm(g, q, p, part)**p.
    """
    if q <= 1:
        raise DomainError("decomposition_norm_gamma requires q > 1")
    if abs(part.alpha - 1.0) > 1e-12:
        raise DomainError("partition must be built with alpha = 1")
    norms = _block_hardy_norms(g, q, part)
    ns = np.arange(part.block_count)
    ms = np.array(part.marks[:-1], dtype=float)
    ms[0] = 1.0                                   # block 0 uses M_0 = 1
    s = float(np.sum(2.0 ** (-ns) * norms ** p / ms ** gamma))
    return finite(s, method="truncation", blocks=part.block_count)


def block_criterion_lambda(g, q, p, eta, part):
    """Block growth functional for the Lipschitz-type symbol class.

    Returns (sup_n 2^(n eta) ||Delta_n g'||_{H^q} / M_n^(1-1/p), profile),
    where the profile lists the per-block values; decay of the profile to 0
    is the compactness-side (little-lambda) criterion.
    """
    if abs(part.alpha - 1.0) > 1e-12:
        raise DomainError("partition must be built with alpha = 1")
    if not 0 <= eta < 1.0 / p:
        raise DomainError("eta must lie in [0, 1/p)")
    gp = g.derivative()
    norms = _block_hardy_norms(gp, q, part) if gp.degree <= part.covered_degree \
        else None
    if norms is None:
        raise DomainError("derivative degree exceeds partition coverage")
    ns = np.arange(part.block_count)
    ms = np.array(part.marks[:-1], dtype=float)
    ms[0] = 1.0
    profile = 2.0 ** (ns * eta) * norms / ms ** (1.0 - 1.0 / p)
    return float(np.max(profile)) if len(profile) else 0.0, profile


# ---------------------------------------------------------------------------
# omega-lacunary series

def is_omega_lacunary(exponents, w, lam):
    """Gap test: tail(1 - 1/n_k) / tail(1 - 1/n_(k+1)) >= lam for all k.

    Returns (ok, witness) where witness is the first violating index k (or
    None), plus the ratio list for diagnostics.
    """
    if lam <= 1:
        raise DomainError("gap threshold must exceed 1")
    exps = [int(n) for n in exponents]
    if any(b <= a for a, b in zip(exps, exps[1:])) or (exps and exps[0] < 1):
        raise DomainError("exponents must be strictly increasing and >= 1")
    tails = [float(w.tail_u(1.0 / n)) for n in exps]
    ratios = [tails[k] / tails[k + 1] for k in range(len(exps) - 1)]
    for k, r in enumerate(ratios):
        if r < lam:
            return False, k, ratios
    return True, None, ratios


def lacunary_norm(coeffs, exponents, q, w, gap=1.05):
    """sum_k |a_k|^q omega_(n_k) with omega_n the odd radial moment.

    The sum characterizes (up to constants) the q-th power of every mixed
    norm of the gap series sum a_k z^(n_k); the gap hypothesis is checked
    and a warning issued when it fails (the identity then loses meaning,
    but the sum is still returned).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    exps = [int(n) for n in exponents]
    if len(coeffs) != len(exps):
        raise DomainError("coefficients and exponents must align")
    ok, k_bad, _ = is_omega_lacunary(exps, w, gap)
    if not ok:
        warnings.warn("series is not omega-lacunary (gap fails at k=%d); "
                      "the moment sum no longer bounds the norm" % k_bad,
                      stacklevel=2)
    s = 0.0
    for a, n in zip(coeffs, exps):
        if a == 0:
            continue
        s += abs(a) ** q * w.moment(n)
    return finite(s, method="truncation", terms=len(exps), lacunary=ok)


def lacunary_sup_test(coeffs, exponents, w, beta, slope_tol=0.2):
    """Coefficient criterion |a_k| <= C (integral of r^(n_k) omega)^(-beta).

    Computes b_k = |a_k| * moment_plain(n_k)^beta; the series belongs to
    the corresponding sup-norm space iff b_k stays bounded.  A finite
    sample cannot see boundedness directly, so membership is decided by
    the trend: the fitted log-log slope of b_k over the second half of the
    indices must not exceed ``slope_tol``.  Returns (member, margin) with
    margin = max_k b_k.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    exps = [int(n) for n in exponents]
    if len(coeffs) != len(exps):
        raise DomainError("coefficients and exponents must align")
    b = np.array([abs(a) * w.moment_plain(n) ** beta
                  for a, n in zip(coeffs, exps)])
    margin = float(np.max(b)) if len(b) else 0.0
    nz = np.nonzero(b)[0]
    if len(nz) < 4:
        return True, margin
    half = nz[len(nz) // 2:]
    slope = np.polyfit(np.log(half + 1.0), np.log(b[half]), 1)[0]
    return bool(slope <= slope_tol), margin


# ---------------------------------------------------------------------------
# auxiliary positive series

def eta_gamma_series(part, gamma, r):
    """eta_gamma(r) = sum_n 2^(n gamma) r^(M_n), summed to relative 1e-16.

    Majorized by a constant times tail(r)^(-gamma/alpha); the partition's
    marks are continued past the stored blocks as floats, so the series is
    summed to full precision for every r < 1.
    """
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    if not 0 <= r < 1:
        raise DomainError("r must lie in [0, 1)")
    if r == 0:
        return 0.0                               # every mark is >= 1
    log_r = math.log(r)
    total = 0.0
    n = 0
    while True:
        m = part.mark_float(n)
        e = m * log_r
        term = 0.0 if e < -745.0 else 2.0 ** (n * gamma) * math.exp(e)
        total += term
        n += 1
        if n > 4 and term <= 1e-16 * total:
            break
        if n > 100000:
            break
    return total


def positive_series_norm(t, p, alpha, w, max_degree_hint=None):
    """Both sides of the positive-coefficient norm comparison.

    For the lacunary positive series f(r) = sum_n t_n r^(M_n) built on the
    (omega, alpha) marks, returns the pair

        (sum_n 2^(-n alpha) t_n^p,  integral of f(r)^p omega(r) dr).

    Valid for all p > 0 including p <= 1.  The integral is evaluated by
    endpoint-adapted quadrature on the truncated series.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("coefficients t_n must be nonnegative")
    if p <= 0:
        raise DomainError("p must be positive")
    w = _require_normalized(w)
    part = partition(w, alpha, 0)           # marks fetched lazily below
    ms = np.array([part.mark_float(n) for n in range(len(t))])
    usable = np.isfinite(ms) & (t > 0)
    ns = np.arange(len(t))
    block_sum = float(np.sum(np.where(usable, 2.0 ** (-ns * alpha) * t ** p, 0.0)))
    if not np.any(usable):
        return block_sum, 0.0
    t_use = t[usable]
    ms_f = ms[usable]

    def gfn(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            lr = np.log1p(-u)
        vals = t_use[None, :] * np.exp(np.outer(lr, ms_f))
        return np.sum(vals, axis=1) ** p

    integral, _ = weighted_radial_integral(gfn, w)
    return block_sum, integral
