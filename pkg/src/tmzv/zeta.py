"""Characteristic-p multiple zeta values and their deformed L-series.

Power sums over monic polynomials are computed from the coefficients of the
linearized polynomial e_d(x) = prod_{deg b < d} (x - b): the monics of degree
d are the roots of e_d(x) - D_d, whose logarithmic derivative collapses to a
single term in characteristic p, giving

    sum_{k>=1} S_d(k) u^k = g_0 * u * (1 - sum_i g_i u^{q^i})^{-1}

with g_i = c_{d,i}/D_d.  The normalized ratios g_i satisfy the first-order
recursion g'_{i} = (g_{i-1}^q - g_i)/[d+1] coming from
e_{d+1} = e_d^q - D_d^{q-1} e_d, so no large polynomial is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import (APoly, FieldSpec, PrecisionError, PrecisionLaurent,
                      RatFunc, monic_enumerate)
from .tlayer import (LocalJet, TPoly, TateTrunc, anderson_thakur,
                     gamma_factorial, l_poly)

# ---------------------------------------------------------------------------
# power sums S_d(k) = sum over monic a of degree d of a^(-k)
# ---------------------------------------------------------------------------


def inv_bracket(fs: FieldSpec, k: int, N: int) -> PrecisionLaurent:
    """Expansion of 1/(theta^{q^k} - theta) to guaranteed precision N,
    built directly (the bracket polynomial itself may be astronomically
    large and is never materialized)."""
    if k <= 0:
        raise ValueError("bracket index must be positive")
    Q = fs.q**k
    if Q >= N:
        return PrecisionLaurent.zero(fs, N=N)
    coeffs = [0] * (N - Q)
    j = 0
    while Q + j * (Q - 1) < N:
        coeffs[j * (Q - 1)] = fs.one
        j += 1
    return PrecisionLaurent(fs, Q, coeffs, N=N)


_GAMMA_CACHE: dict = {}


def _gamma_row(fs: FieldSpec, d: int, imax: int, N: int):
    """Ratios g_i = c_{d,i}/D_d for i = 0..min(d, imax), as series to
    precision N."""
    key = (id(fs), d, imax, N)
    row = _GAMMA_CACHE.get(key)
    if row is not None:
        return row
    if d == 0:
        row = (PrecisionLaurent.one(fs, N=N),)
    else:
        prev = _gamma_row(fs, d - 1, imax, N)
        ib = inv_bracket(fs, d, N)
        row = []
        for i in range(min(d, imax) + 1):
            acc = PrecisionLaurent.zero(fs, N=N)
            if 1 <= i <= len(prev):
                acc = acc + prev[i - 1].frobenius(1).truncate(N)
            if i < len(prev):
                acc = acc - prev[i]
            row.append((acc * ib).truncate(N))
        row = tuple(row)
    _GAMMA_CACHE[key] = row
    return row


_POWER_SUM_CACHE: dict = {}


def power_sum(fs: FieldSpec, d: int, k: int, prec: int) -> PrecisionLaurent:
    """S_d(k) = sum_{a monic, deg a = d} a^(-k), to guaranteed precision."""
    if d < 0 or k < 1:
        raise ValueError("need d >= 0 and k >= 1")
    key = (id(fs), d, k, prec)
    val = _POWER_SUM_CACHE.get(key)
    if val is not None:
        return val
    N = prec
    imax = 0
    while fs.q ** (imax + 1) <= k:
        imax += 1
    g = _gamma_row(fs, d, imax, N)
    # b_j = coefficients of (1 - sum_i g_i u^{q^i})^{-1}
    b = [PrecisionLaurent.one(fs, N=N)]
    for j in range(1, k):
        acc = PrecisionLaurent.zero(fs, N=N)
        i = 0
        while i < len(g) and fs.q**i <= j:
            acc = acc + g[i] * b[j - fs.q**i]
            i += 1
        b.append(acc.truncate(N))
    val = (g[0] * b[k - 1]).truncate(N)
    _POWER_SUM_CACHE[key] = val
    return val


def power_sum_enum(fs: FieldSpec, d: int, k: int, prec: int) -> PrecisionLaurent:
    """Oracle route: literal sum over all monics of degree d (q^d terms)."""
    acc = PrecisionLaurent.zero(fs, N=prec)
    window = prec + d * k + 1
    for a in monic_enumerate(fs, d):
        la = RatFunc(APoly.one(fs), a).laurent(window)
        term = PrecisionLaurent.one(fs)
        for _ in range(k):
            term = (term * la).truncate(window)
        acc = acc + term.truncate(prec)
    return acc.truncate(prec)


# ---------------------------------------------------------------------------
# multiple zeta values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MZVIndex:
    s: tuple

    def __post_init__(self):
        if not self.s or any(si < 1 for si in self.s):
            raise ValueError("index entries must be positive")

    @property
    def weight(self):
        return sum(self.s)

    @property
    def depth(self):
        return len(self.s)


@dataclass
class MZVValue:
    value: PrecisionLaurent
    index: MZVIndex
    route: str
    star: bool


def mzv_cutoff(s, prec: int) -> int:
    return prec // min(s) + 2 + 1


def mzv(fs: FieldSpec, s, star: bool = False, prec: int = 40) -> MZVValue:
    """zeta_A(s_1,...,s_r) = sum over deg a_1 > ... > deg a_r >= 0 of
    1/(a_1^{s_1} ... a_r^{s_r}); star variant uses >=.  Dynamic program
    over power sums; tail of top degree d has valuation >= d*min(s)."""
    idx = MZVIndex(tuple(s))
    s = idx.s
    D = mzv_cutoff(s, prec)
    N = prec
    r = len(s)
    # G[d] for the innermost factor, then fold outward with prefix sums
    G = [power_sum(fs, d, s[r - 1], N) for d in range(D)]
    for j in range(r - 2, -1, -1):
        # prefix[d] = sum_{d' < d} G[d']   (strict; star shifts by one)
        prefix = [PrecisionLaurent.zero(fs, N=N)]
        for d in range(1, D):
            prefix.append((prefix[-1] + G[d - 1]).truncate(N))
        nxt = []
        for d in range(D):
            low = prefix[d] + G[d] if star else prefix[d]
            nxt.append((power_sum(fs, d, s[j], N) * low).truncate(N))
        G = nxt
    acc = PrecisionLaurent.zero(fs, N=N)
    for d in range(D):
        acc = acc + G[d]
    return MZVValue(acc.truncate(prec), idx, "PowerSumDP", star)


def mzv_brute(fs: FieldSpec, s, star: bool = False, prec: int = 20,
              D: int = None) -> MZVValue:
    """Oracle route: literal nested sum over chains of monic polynomials
    with (strictly, or weakly for star) decreasing degrees below cutoff."""
    idx = MZVIndex(tuple(s))
    s = idx.s
    if D is None:
        D = mzv_cutoff(s, prec)
    N = prec
    T = {(j, d): power_sum_enum(fs, d, s[j], N)
         for j in range(len(s)) for d in range(D)}

    def rec(j: int, dmax: int) -> PrecisionLaurent:
        # literal loop over degree chains for s[j:], degrees < dmax
        acc = PrecisionLaurent.zero(fs, N=N)
        for d in range(dmax):
            term = T[(j, d)]
            if j + 1 < len(s):
                term = term * rec(j + 1, d + 1 if star else d)
            acc = acc + term.truncate(N)
        return acc.truncate(N)

    return MZVValue(rec(0, D).truncate(prec), idx, "BruteForce", star)


# ---------------------------------------------------------------------------
# deformed L-series: shell sums over i_1 > ... > i_k >= 0 (>= for star) of
# prod_m Q_m^{(i_m)} / LL_{i_m}^{s_m}, the Omega-free normalization.  All
# scalars carry a *relative* precision window: factors with huge opposite
# valuations (Q^{(i)} against LL_i^{-s}) then multiply without precision
# collapse, because N - v is preserved under multiplication.
# ---------------------------------------------------------------------------


def _rel_guard(fs: FieldSpec, s) -> int:
    """Extra relative digits absorbing the bounded shell norms."""
    q = fs.q
    return sum((si * q) // (q - 1) + 1 for si in s) + 10


def _laurent_rel(c: RatFunc, rel: int) -> PrecisionLaurent:
    """Laurent expansion keeping `rel` digits past the leading exponent."""
    if c.is_zero():
        return PrecisionLaurent.zero(c.fs)
    v = c.den.degree() - c.num.degree()
    return c.laurent(N=v + rel)


def _frob_laurent_rel(c: RatFunc, i: int, rel: int) -> PrecisionLaurent:
    """c^{q^i} to relative precision rel, exploiting sparsity: a polynomial's
    q^i-th power has support on multiples of q^i, so only the top few
    monomials land inside the window."""
    if c.is_zero():
        return PrecisionLaurent.zero(c.fs)
    if i == 0:
        return _laurent_rel(c, rel)
    if not c.is_poly():
        return _laurent_rel(c.frobenius(i), rel)
    fs = c.fs
    a = c.num
    d = a.degree()
    k = fs.q**i
    v = -d * k
    coeffs = [0] * rel
    for j in range(d, -1, -1):
        off = (d - j) * k
        if off >= rel:
            break
        coeffs[off] = a[j]
    return PrecisionLaurent(fs, v, coeffs, N=v + rel)


_LINV_JET_CACHE: dict = {}


def _linv_jet(fs: FieldSpec, j: int, D: int, rel: int) -> LocalJet:
    """Jet at t = theta of 1/(t - theta^{q^j}), order D: the coefficient of
    u^m is (-1)^m c0^{m+1} with c0 = 1/(theta - theta^{q^j})."""
    key = (id(fs), j, D, rel)
    got = _LINV_JET_CACHE.get(key)
    if got is not None:
        return got
    c0 = -inv_bracket(fs, j, fs.q**j + rel)
    cs = []
    p = c0
    for m in range(D):
        cs.append(p if m % 2 == 0 else -p)
        if m + 1 < D:
            p = p * c0
    got = LocalJet(cs, 0, D, PrecisionLaurent.zero(fs))
    _LINV_JET_CACHE[key] = got
    return got


_LL_INV_JET_CACHE: dict = {}


def _ll_inv_jet(fs: FieldSpec, i: int, s: int, D: int, rel: int) -> LocalJet:
    """Jet at t = theta of LL_i^{-s}."""
    key = (id(fs), i, s, D, rel)
    got = _LL_INV_JET_CACHE.get(key)
    if got is not None:
        return got
    if i == 0:
        got = LocalJet.const_jet(
            PrecisionLaurent.one(fs), D, PrecisionLaurent.zero(fs))
    else:
        got = _ll_inv_jet(fs, i - 1, s, D, rel)
        f = _linv_jet(fs, i, D, rel)
        for _ in range(s):
            got = got * f
    _LL_INV_JET_CACHE[key] = got
    return got


_QJET_CACHE: dict = {}


def _tpoly_jet_rel(Q: TPoly, i: int, D: int, rel: int) -> LocalJet:
    """Jet at t = theta of Q^{(i)}, Horner in u = t - theta, without ever
    densifying the twisted coefficients."""
    fs = Q.fs
    key = (id(Q), id(fs), i, D, rel)
    got = _QJET_CACHE.get(key)
    if got is not None:
        return got
    z = PrecisionLaurent.zero(fs)
    if Q.is_zero():
        got = LocalJet.zero_jet(D, z)
    else:
        tjet = LocalJet(
            [PrecisionLaurent.theta_pow(fs, 1), PrecisionLaurent.one(fs)], 0, D, z)
        acc = LocalJet.zero_jet(D, z)
        for c in reversed(Q.coeffs):
            acc = acc * tjet
            if not c.is_zero():
                acc = acc + LocalJet.const_jet(_frob_laurent_rel(c, i, rel), D, z)
        got = acc
    _QJET_CACHE[key] = got
    return got


_LINV_TATE_CACHE: dict = {}


def _linv_tate(fs: FieldSpec, j: int, M: int) -> TateTrunc:
    """1/(t - theta^{q^j}) in the Tate algebra, exactly:
    -sum_k theta^{-q^j (k+1)} t^k."""
    key = (id(fs), j, M)
    got = _LINV_TATE_CACHE.get(key)
    if got is not None:
        return got
    neg = fs.neg(fs.one)
    cs = [PrecisionLaurent(fs, fs.q**j * (k + 1), (neg,)) for k in range(M + 1)]
    got = TateTrunc(fs, cs, M)
    _LINV_TATE_CACHE[key] = got
    return got


_LL_INV_TATE_CACHE: dict = {}


def _ll_inv_tate(fs: FieldSpec, i: int, s: int, M: int) -> TateTrunc:
    key = (id(fs), i, s, M)
    got = _LL_INV_TATE_CACHE.get(key)
    if got is not None:
        return got
    if i == 0:
        got = TateTrunc.one(fs, M)
    else:
        got = _ll_inv_tate(fs, i - 1, s, M)
        f = _linv_tate(fs, i, M)
        for _ in range(s):
            got = got * f
    _LL_INV_TATE_CACHE[key] = got
    return got


def _tpoly_tate_rel(Q: TPoly, i: int, M: int, rel: int) -> TateTrunc:
    return TateTrunc(
        Q.fs, [_frob_laurent_rel(Q[n], i, rel) for n in range(min(M, Q.degree()) + 1)], M)


class _JetBackend:
    """Order-D jets at t = theta over K_inf scalars."""

    def __init__(self, fs, D, rel):
        self.fs, self.D, self.rel = fs, D, rel

    def zero(self):
        return LocalJet.zero_jet(self.D, PrecisionLaurent.zero(self.fs))

    def term(self, s, Q, i):
        qj = _tpoly_jet_rel(Q, i, self.D, self.rel)
        if i == 0:
            return qj
        return qj * _ll_inv_jet(self.fs, i, s, self.D, self.rel)

    @staticmethod
    def min_val(x):
        best = None
        for c in x.coeffs:
            if c.is_zero_to_prec():
                if c.N is None:
                    continue
                v = Fraction(c.N, c.ram)
            else:
                v = c.v_infty()
            if best is None or v < best:
                best = v
        return best


class _TateBackend:
    """t-truncated series to order M over K_inf scalars."""

    def __init__(self, fs, M, rel):
        self.fs, self.M, self.rel = fs, M, rel

    def zero(self):
        return TateTrunc.zero(self.fs, self.M)

    def term(self, s, Q, i):
        qt = _tpoly_tate_rel(Q, i, self.M, self.rel)
        if i == 0:
            return qt
        return qt * _ll_inv_tate(self.fs, i, s, self.M)

    @staticmethod
    def min_val(x):
        return x.min_residual_valuation()


def lseries_raw(fs: FieldSpec, pairs, star: bool, prec, backend, imax: int = 64):
    """Shell dynamic program.  pairs = [(s_1, Q_1), ..., (s_k, Q_k)] with the
    first pair taking the largest Frobenius index.  Stops when two consecutive
    outermost shells fall below the target valuation (their norms eventually
    decay geometrically)."""
    k = len(pairs)
    total = backend.zero()
    prefix = [backend.zero() for _ in range(k)]
    stable = 0
    seen = False
    for i in range(imax + 1):
        G = [None] * k
        for m in range(k - 1, -1, -1):
            s, Q = pairs[m]
            T = backend.term(s, Q, i)
            if m == k - 1:
                G[m] = T
            else:
                inner = (prefix[m + 1] + G[m + 1]) if star else prefix[m + 1]
                G[m] = T * inner
        total = total + G[0]
        for m in range(k):
            prefix[m] = prefix[m] + G[m]
        val = backend.min_val(G[0])
        if val is not None:
            seen = True
        stable = stable + 1 if (seen and (val is None or val >= prec)) else 0
        if stable >= 2 and i + 1 >= k:
            return total
    raise PrecisionError(
        f"L-series shells did not certify precision {prec} within {imax} terms")


def _default_Q(fs: FieldSpec, s, Q):
    if Q is None:
        return tuple(anderson_thakur(fs, si) for si in s)
    return tuple(Q)


def lseries_jet(fs: FieldSpec, s, Q=None, star: bool = False, D: int = 1,
                prec: int = 40) -> LocalJet:
    """Jet at t = theta of the normalized series [L(s_1,...,s_k) Omega^{-w}]
    (star: weak chains), with Q_m defaulting to the interpolation polynomial
    H_{s_m}."""
    s = tuple(s)
    Q = _default_Q(fs, s, Q)
    rel = prec + D + _rel_guard(fs, s)
    backend = _JetBackend(fs, D, rel)
    return lseries_raw(fs, list(zip(s, Q)), star, prec, backend)


def lseries_value(fs: FieldSpec, s, Q=None, star: bool = False,
                  prec: int = 40) -> PrecisionLaurent:
    """Value at t = theta; equals Gamma_{s_1}...Gamma_{s_k} zeta_A(s_1,...,s_k)
    (or the star value) when the Q_m are the H_{s_m}."""
    jet = lseries_jet(fs, s, Q=Q, star=star, D=1, prec=prec)
    return jet.order(0).truncate(prec)


def lseries_tate(fs: FieldSpec, s, Q=None, star: bool = False, M: int = 20,
                 prec: int = 40) -> TateTrunc:
    """t-truncation to order M of the normalized series."""
    s = tuple(s)
    Q = _default_Q(fs, s, Q)
    rel = prec + _rel_guard(fs, s)
    backend = _TateBackend(fs, M, rel)
    return lseries_raw(fs, list(zip(s, Q)), star, prec, backend)


def mzv_deformed(fs: FieldSpec, s, star: bool = False, prec: int = 40) -> MZVValue:
    """Third MZV route: normalized deformed series at t = theta divided by
    the Gamma factors."""
    idx = MZVIndex(tuple(s))
    gam = APoly.one(fs)
    for si in idx.s:
        gam = gam * gamma_factorial(fs, si)
    d = gam.degree()
    val = lseries_value(fs, idx.s, star=star, prec=prec + d + 2)
    ginv = gam.laurent().inv(window=prec + d + 2)
    return MZVValue((val * ginv).truncate(prec), idx, "DeformedSeries", star)


# ---------------------------------------------------------------------------
# Carlitz (star) multiple polylogarithms
# ---------------------------------------------------------------------------


def _as_ratfunc(fs: FieldSpec, u):
    if isinstance(u, RatFunc):
        return u
    if isinstance(u, APoly):
        return RatFunc.from_apoly(u)
    raise TypeError("polylogarithm arguments must be RatFunc or APoly")


def _check_polylog_domain(fs: FieldSpec, s, u):
    q = fs.q
    for m, (sm, um) in enumerate(zip(s, u)):
        if um.is_zero():
            continue
        e = Fraction(um.num.degree() - um.den.degree())
        bound = Fraction(sm * q, q - 1)
        last = m == len(s) - 1
        if (last and not e < bound) or (not last and not e <= bound):
            raise ValueError(
                f"argument {m + 1} violates the convergence condition")


def polylog(fs: FieldSpec, s, u, star: bool = False,
            prec: int = 40) -> PrecisionLaurent:
    """Carlitz multiple polylogarithm Li_{(s_1,...,s_k)}(u_1,...,u_k) =
    sum over i_1 > ... > i_k >= 0 of u_1^{q^{i_1}}...u_k^{q^{i_k}} /
    (L_{i_1}^{s_1}...L_{i_k}^{s_k}); star variant uses weak chains."""
    s = tuple(s)
    u = [_as_ratfunc(fs, x) for x in u]
    if len(u) != len(s):
        raise ValueError("need one argument per index entry")
    if any(x.is_zero() for x in u):
        return PrecisionLaurent.zero(fs, N=prec)
    _check_polylog_domain(fs, s, u)
    Q = tuple(TPoly.const(fs, x) for x in u)
    return lseries_value(fs, s, Q=Q, star=star, prec=prec)


def t_deformed_polylog(fs: FieldSpec, s, u, star: bool = False, M: int = 20,
                       prec: int = 40) -> TateTrunc:
    """The t-deformation: LL-products replace the L_i in the denominators."""
    s = tuple(s)
    u = [_as_ratfunc(fs, x) for x in u]
    if len(u) != len(s):
        raise ValueError("need one argument per index entry")
    _check_polylog_domain(fs, s, u)
    Q = tuple(TPoly.const(fs, x) for x in u)
    return lseries_tate(fs, s, Q=Q, star=star, M=M, prec=prec)


# ---------------------------------------------------------------------------
# deformed rows and the rigid-analytic trivialization
# ---------------------------------------------------------------------------


@dataclass
class DeformedRow:
    """All interval sub-series of a shape, Omega-free normalized, as
    t-truncations.  Keys are half-open intervals (a, b), 1 <= a < b <= r+1:
    L[(a,b)] deforms the strict-chain series on (s_a,...,s_{b-1});
    Lstar[(a,b)] the weak-chain series on the reversed interval."""

    shape: object
    M: int
    prec: int
    L: dict
    Lstar: dict

    def interval(self, a: int, b: int, star: bool):
        if a == b:
            return TateTrunc.one(self.shape.fs, self.M)
        return (self.Lstar if star else self.L)[(a, b)]

    def inversion_residuals(self) -> dict:
        """Inclusion-exclusion between the strict and weak series, in both
        directions: for every interval,

          (-1)^a L*(rev a,b) = sum_k (-1)^{k-1} L(a,k) L*(rev k,b)
                               + (-1)^{b-1} L(a,b)
          (-1)^{b-1} L*(rev a,b) = sum_k (-1)^k L(k,b) L*(rev a,k)
                               + (-1)^a L(a,b)

        returns {interval: min residual valuation over the two}."""
        out = {}
        for (a, b) in self.L:
            lhs = _sgn_tate(self.Lstar[(a, b)], a)
            rhs = TateTrunc.zero(self.shape.fs, self.M)
            for k in range(a + 1, b):
                rhs = rhs + _sgn_tate(self.L[(a, k)] * self.Lstar[(k, b)], k - 1)
            rhs = rhs + _sgn_tate(self.L[(a, b)], b - 1)
            r1 = (lhs - rhs).min_residual_valuation()
            lhs2 = _sgn_tate(self.Lstar[(a, b)], b - 1)
            rhs2 = TateTrunc.zero(self.shape.fs, self.M)
            for k in range(a + 1, b):
                rhs2 = rhs2 + _sgn_tate(self.L[(k, b)] * self.Lstar[(a, k)], k)
            rhs2 = rhs2 + _sgn_tate(self.L[(a, b)], a)
            r2 = (lhs2 - rhs2).min_residual_valuation()
            vals = [v for v in (r1, r2) if v is not None]
            out[(a, b)] = min(vals) if vals else None
        return out

    def value_at_theta(self, a: int, b: int, star: bool,
                       prec: int = None) -> PrecisionLaurent:
        """Independent jet-backend evaluation of the interval at t = theta."""
        shape = self.shape
        prec = self.prec if prec is None else prec
        sub = shape.s[a - 1:b - 1]
        Qsub = shape.Q[a - 1:b - 1]
        if star:
            sub, Qsub = tuple(reversed(sub)), tuple(reversed(Qsub))
        return lseries_value(shape.fs, sub, Q=Qsub, star=star, prec=prec)


def _sgn_tate(x, n: int):
    return x if n % 2 == 0 else -x


def deformed_row(shape, n_terms: int = 20, prec: int = 40) -> DeformedRow:
    fs = shape.fs
    r = shape.r
    L, Ls = {}, {}
    for a in range(1, r + 2):
        for b in range(a + 1, r + 2):
            sub = shape.s[a - 1:b - 1]
            Qsub = shape.Q[a - 1:b - 1]
            L[(a, b)] = lseries_tate(fs, sub, Q=Qsub, star=False,
                                     M=n_terms, prec=prec)
            Ls[(a, b)] = lseries_tate(fs, tuple(reversed(sub)),
                                      Q=tuple(reversed(Qsub)), star=True,
                                      M=n_terms, prec=prec)
    return DeformedRow(shape, n_terms, prec, L, Ls)


def _min_val_entries(mats) -> Fraction:
    """Minimum residual valuation over matrix entries; None = exactly zero."""
    best = None
    for row in mats:
        for x in row:
            v = x.min_residual_valuation()
            if v is not None and (best is None or v < best):
                best = v
    return best


def trivialization_check(shape, M: int = 20, N: int = 30) -> dict:
    """Residuals of the trivialization identities for the (r+1)-level system:
    the unit-triangular product (Omega-free form of Psi Upsilon = I), the
    literal twist equation Psi^(-1) = Phi Psi in the ramified tower, its
    twist-free form Psi = Phi^(1) Psi^(1), and the last row of the inverse
    matrix evaluated at t = theta against the Gamma-scaled zeta values."""
    from .motive import phi_tilde
    from .tlayer import omega
    from .tmodule import mat_mul, mat_sub

    fs = shape.fs
    q = fs.q
    e = q - 1
    r = shape.r
    s = shape.s
    dims = shape.block_dims + (0,)
    star = shape.model == "Star"
    Nw = q * N + 2 * q  # headroom so the (-1)-twist still certifies N
    zero_t = TateTrunc.zero(fs, M)
    one_t = TateTrunc.one(fs, M)

    cache: dict = {}

    def F(sub, Qsub, weak):
        key = (sub, weak)
        if key not in cache:
            if not sub:
                cache[key] = one_t
            else:
                cache[key] = lseries_tate(fs, sub, Q=Qsub, star=weak,
                                          M=M, prec=Nw)
        return cache[key]

    def interval(a, b, reverse, weak):
        sub = s[a - 1:b - 1]
        Qsub = shape.Q[a - 1:b - 1]
        if reverse:
            sub, Qsub = tuple(reversed(sub)), tuple(reversed(Qsub))
        return F(sub, Qsub, weak)

    # Omega-free triangular factors: Psi = Fhat . diag(Omega^{d_l}),
    # Upsilon = diag(Omega^{-d_j}) . Ghat
    Fhat = [[zero_t] * (r + 1) for _ in range(r + 1)]
    Ghat = [[zero_t] * (r + 1) for _ in range(r + 1)]
    for j in range(1, r + 2):
        for ell in range(1, j + 1):
            if star:
                Fhat[j - 1][ell - 1] = _sgn_tate(
                    interval(ell, j, reverse=False, weak=True), j - ell)
                Ghat[j - 1][ell - 1] = interval(ell, j, reverse=True, weak=False)
            else:
                Fhat[j - 1][ell - 1] = interval(ell, j, reverse=False, weak=False)
                Ghat[j - 1][ell - 1] = _sgn_tate(
                    interval(ell, j, reverse=True, weak=True), j - ell)

    FG = mat_mul(Fhat, Ghat)
    for i in range(r + 1):
        FG[i][i] = FG[i][i] - one_t
    res_unit = _min_val_entries(FG)

    # ramified Psi and the twist equations
    Om = omega(fs, M, Nw)
    maxd = max(dims)
    Ompow = [TateTrunc.one(fs, M, ram=e)]
    for _ in range(maxd):
        Ompow.append(Ompow[-1] * Om)
    zero_r = TateTrunc.zero(fs, M, ram=e)
    Psi = [[zero_r] * (r + 1) for _ in range(r + 1)]
    for j in range(r + 1):
        for ell in range(j + 1):
            Psi[j][ell] = Fhat[j][ell].embed_ram() * Ompow[dims[ell]]
    pt = phi_tilde(shape)
    Phi_ram = [[x.materialize().to_tate(M, None, ram=e) for x in row] for row in pt]
    Phi1_ram = [[x.base.to_tate(M, None, ram=e) for x in row] for row in pt]
    R_lit = mat_sub([[x.twist(-1) for x in row] for row in Psi],
                    mat_mul(Phi_ram, Psi))
    res_lit = _min_val_entries(R_lit)
    R_tf = mat_sub(Psi, mat_mul(Phi1_ram, [[x.twist(1) for x in row] for row in Psi]))
    res_tf = _min_val_entries(R_tf)

    # last row of the inverse matrix at t = theta vs Gamma-scaled zeta values
    last = []
    for ell in range(1, r + 1):
        sub = tuple(reversed(s[ell - 1:]))
        got = lseries_value(fs, sub, Q=tuple(reversed(shape.Q[ell - 1:])),
                            star=not star, prec=N + 2)
        gam = APoly.one(fs)
        for si in sub:
            gam = gam * gamma_factorial(fs, si)
        ref = mzv(fs, sub, star=not star, prec=N + gam.degree() + 2).value
        diff = got - (gam.laurent() * ref)
        last.append(None if diff.v is None else Fraction(diff.v))

    def ok(v, target):
        return v is None or v >= target

    passed = (ok(res_unit, N) and ok(res_lit, N) and ok(res_tf, N)
              and all(ok(v, N) for v in last))
    return {
        "identity": "Psi^(-1) = Phi Psi and Psi Upsilon = I",
        "model": shape.model,
        "s": list(s),
        "t_order": M,
        "prec": N,
        "unit_product_residual": res_unit,
        "twist_residual": res_lit,
        "twist_free_residual": res_tf,
        "last_row_residuals": last,
        "pass": passed,
    }


def inversion_check(shape, n_terms: int = 12, prec: int = 40) -> dict:
    """Both inclusion-exclusion identities between the strict and weak
    deformed series, on every interval of the shape."""
    row = deformed_row(shape, n_terms=n_terms, prec=prec + 2)
    res = row.inversion_residuals()
    passed = all(v is None or v >= prec for v in res.values())
    return {
        "identity": "(-1)^a L*(rev) = sum_k +/- L L* + (-1)^(b-1) L",
        "s": list(shape.s),
        "t_order": n_terms,
        "prec": prec,
        "interval_residuals": {"%d,%d" % k: v for k, v in sorted(res.items())},
        "pass": passed,
    }


def compositions(max_weight: int, max_depth: int):
    """All tuples of positive integers with bounded weight and depth."""
    out = []

    def rec(prefix, left):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_depth:
            return
        for x in range(1, left + 1):
            rec(prefix + [x], left - x)

    rec([], max_weight)
    return sorted(out, key=lambda t: (sum(t), len(t), t))


# ---------------------------------------------------------------------------
# the logarithmic interpretation suites
# ---------------------------------------------------------------------------


def _gamma_product(fs: FieldSpec, s) -> APoly:
    gam = APoly.one(fs)
    for si in s:
        gam = gam * gamma_factorial(fs, si)
    return gam


def stark_unit_check(shape, prec: int = 40, split: bool = True) -> dict:
    """Full logarithmic interpretation for one shape: the twisted-product
    logarithm z exponentiates back to the special point, its block-leading
    coordinates match the (Gamma-scaled) zeta values from the independent
    power-sum DP, and the split decomposition recomposes and reproduces z."""
    from .motive import special_point, tmodule_of
    from .tmodule import (_LaurentScalars, _conv_scalar, _vec_min_val,
                          exp_eval, split_log_check, stark_log_eval, vec_sub)

    fs = shape.fs
    r = shape.r
    star = shape.model == "Star"
    z = stark_log_eval(shape, prec=prec + 10)
    E = tmodule_of(shape)
    Z = exp_eval(E, z, prec=prec)
    sc = _LaurentScalars(fs, prec + 10)
    v = [_conv_scalar(sc, x) for x in special_point(shape)]
    res_exp = _vec_min_val(vec_sub(Z, v))

    coord_res = []
    for ell in range(1, r + 1):
        sub = tuple(reversed(shape.s[ell - 1:]))
        gam = _gamma_product(fs, sub)
        ref = mzv(fs, sub, star=not star, prec=prec + gam.degree() + 2).value
        want = gam.laurent() * ref
        if star or (r - ell) % 2 == 1:
            want = -want
        diff = z[shape.slot(ell, 0)] - want
        coord_res.append(None if diff.is_zero_to_prec() and diff.N is None
                         else (Fraction(diff.N, diff.ram)
                               if diff.is_zero_to_prec() else diff.v_infty()))
    split_out = split_log_check(shape, prec=min(prec, 30)) if split else None
    passed = ((res_exp is None or res_exp >= prec)
              and all(v_ is None or v_ >= prec for v_ in coord_res)
              and (split_out is None or split_out["pass"]))
    return {
        "identity": "Exp(z) = v and z coordinates are Gamma-scaled zetas",
        "model": shape.model,
        "s": list(shape.s),
        "prec": prec,
        "exp_residual": res_exp,
        "coordinate_residuals": coord_res,
        "split": split_out,
        "pass": passed,
    }


def depth_one_check(fs: FieldSpec, n: int, prec: int = 40) -> dict:
    """Anderson-Thakur depth one: Exp_{C^(x)n}(z_n) = Z_n with Z_n the jet
    coordinates of the interpolation polynomial and the last coordinate of
    z_n equal to Gamma_n zeta_A(n)."""
    from .motive import special_point, star_shape, tmodule_of
    from .tmodule import (TModule, _LaurentScalars, _conv_scalar,
                          _vec_min_val, exp_eval, stark_log_eval, vec_sub)

    shape = star_shape(fs, (n,))
    E = tmodule_of(shape)
    C = TModule.carlitz_tensor(fs, n)
    same_module = E.dtheta == C.dtheta and E.taus == C.taus

    # Z_n = (a_{n-1}, ..., a_0) from H_n = sum a_i (t-theta)^i
    H = anderson_thakur(fs, n)
    jets = H.taylor_coeffs(n)
    Zn = list(reversed(jets))
    vstar = special_point(shape)
    point_matches = [-x for x in vstar] == Zn

    z = [-x for x in stark_log_eval(shape, prec=prec + 10)]
    Z = exp_eval(C, z, prec=prec)
    sc = _LaurentScalars(fs, prec + 10)
    res_exp = _vec_min_val(vec_sub(Z, [_conv_scalar(sc, x) for x in Zn]))

    gam = gamma_factorial(fs, n)
    ref = mzv(fs, (n,), prec=prec + gam.degree() + 2).value
    diff = z[n - 1] - gam.laurent() * ref
    res_last = (None if diff.is_zero_to_prec() and diff.N is None
                else (Fraction(diff.N, diff.ram) if diff.is_zero_to_prec()
                      else diff.v_infty()))
    passed = (same_module and point_matches
              and (res_exp is None or res_exp >= prec)
              and (res_last is None or res_last >= prec))
    return {
        "identity": "Exp_Cn(z_n) = Z_n, last coordinate Gamma_n zeta_A(n)",
        "q": fs.q,
        "n": n,
        "prec": prec,
        "module_matches_tensor_power": same_module,
        "point_matches_jets": point_matches,
        "exp_residual": res_exp,
        "last_coordinate_residual": res_last,
        "pass": passed,
    }


# ---------------------------------------------------------------------------
# the curious depth-two identity
# ---------------------------------------------------------------------------


def strange_formula_check(fs: FieldSpec, prec: int = 40, imax: int = 30) -> dict:
    """zeta_A(1, q^3-1) = (1/l_3 + 1/l_2 + theta/l_2) zeta_A(q^3)
    - (1/l_2) sum_{i>=0} theta^{q^{i+2}} / l_i^{q^3}, entirely inside K_inf;
    the series is the q^3-th power of a re-indexed Carlitz logarithm."""
    q = fs.q
    W = prec + q * q + 10
    lhs = mzv(fs, (1, q**3 - 1), prec=W).value
    z3 = mzv(fs, (q**3,), prec=W).value
    l2 = l_poly(fs, 2).laurent()
    l3 = l_poly(fs, 3).laurent()
    il2 = l2.inv(window=W)
    il3 = l3.inv(window=W)
    th = PrecisionLaurent.theta_pow(fs, 1)
    coef = il3 + il2 + th * il2
    acc = PrecisionLaurent.zero(fs, N=W)
    vals = []
    stable = 0
    for i in range(imax + 1):
        step = q ** (i + 2)
        li = l_poly(fs, i).laurent()
        term = li.inv(window=W + step).pow(q**3) * PrecisionLaurent.theta_pow(fs, step)
        acc = acc + term
        v = term.v
        vals.append(v)
        stable = stable + 1 if v >= W else 0
        if stable >= 2:
            break
    else:
        raise PrecisionError("logarithm-power series did not converge")
    monotone = all(a < b for a, b in zip(vals, vals[1:]))
    rhs = coef * z3 - il2 * acc
    diff = (lhs - rhs).truncate(prec)
    res = None if diff.v is None else Fraction(diff.v)
    return {
        "identity": "zeta_A(1,q^3-1) = (1/l_3 + (1+theta)/l_2) zeta_A(q^3)"
                    " - (1/l_2) (log_C(theta^(1/q)))^(q^3)",
        "q": q,
        "prec": prec,
        "residual_valuation": res,
        "series_valuations_monotone": monotone,
        "pass": (res is None or res >= prec) and monotone,
    }


# ---------------------------------------------------------------------------
# the polylogarithm specialization (constant twisting entries)
# ---------------------------------------------------------------------------


def cm_check(fs: FieldSpec, s, u=None, prec: int = 30) -> dict:
    """Polylogarithm model: with constant twisting entries u the logarithm of
    the special point v_u has block-leading coordinate (d_1+...+d_ell) equal
    to (-1)^(r-ell) Li*_{(s_r,...,s_ell)}(u_r,...,u_ell), checked against the
    independent chain-sum series; Exp inverts the logarithm back to v_u."""
    from .motive import MotiveShape, special_point, tmodule_of
    from .tmodule import (_LaurentScalars, _conv_scalar, _vec_min_val,
                          exp_eval, log_eval, vec_sub)

    s = tuple(s)
    r = len(s)
    if u is None:
        u = tuple(RatFunc.one(fs) for _ in s)
    else:
        u = tuple(_as_ratfunc(fs, x) for x in u)
    shape = MotiveShape(fs, s, tuple(TPoly.const(fs, x) for x in u), "AT")
    E = tmodule_of(shape)
    v = special_point(shape)
    z = log_eval(E, list(v), prec=prec + 10)
    Z = exp_eval(E, z, prec=prec)
    sc = _LaurentScalars(fs, prec + 10)
    res_exp = _vec_min_val(vec_sub(Z, [_conv_scalar(sc, x) for x in v]))

    coord_res = []
    for ell in range(1, r + 1):
        sub = tuple(reversed(s[ell - 1:]))
        args = list(reversed(u[ell - 1:]))
        want = polylog(fs, sub, args, star=True, prec=prec + 4)
        if (r - ell) % 2 == 1:
            want = -want
        diff = z[shape.slot(ell, 0)] - want
        coord_res.append(None if diff.is_zero_to_prec() and diff.N is None
                         else (Fraction(diff.N, diff.ram)
                               if diff.is_zero_to_prec() else diff.v_infty()))
    passed = ((res_exp is None or res_exp >= prec)
              and all(v_ is None or v_ >= prec for v_ in coord_res))
    return {
        "identity": "Log(v_u) block coordinates are signed Li* values",
        "q": fs.q,
        "s": list(s),
        "u": [str(x) for x in u],
        "prec": prec,
        "exp_residual": res_exp,
        "coordinate_residuals": coord_res,
        "pass": passed,
    }


def carlitz_check(fs: FieldSpec, prec: int = 60) -> dict:
    """exp_C(zeta_A(1)) = 1: the zeta value from the power-sum DP feeds the
    Carlitz exponential and lands back on 1."""
    from .tmodule import TModule, exp_eval

    z1 = mzv(fs, (1,), prec=prec + 6).value
    C = TModule.carlitz(fs)
    Z = exp_eval(C, [z1], prec=prec)
    diff = Z[0] - PrecisionLaurent.one(fs)
    res = (Fraction(diff.N, diff.ram) if diff.is_zero_to_prec()
           else diff.v_infty())
    return {
        "identity": "exp_C(zeta_A(1)) = 1",
        "q": fs.q,
        "prec": prec,
        "residual_valuation": res,
        "pass": res is None or res >= prec,
    }
