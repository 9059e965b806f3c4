"""Anderson t-modules as computational objects: the exponential and
logarithm coefficient streams (recursive solve and, for shape-backed
modules, the twisted-product closed form), certified series evaluation,
the Stark logarithm route, split-logarithm verification, and the period
basis.

Matrices are plain lists of lists over duck-typed scalars (RatFunc for
exact work, PrecisionLaurent/LocalJet backends elsewhere).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import APoly, FieldSpec, PrecisionError, PrecisionLaurent, RatFunc
from .tlayer import LocalJet, TPoly, _tpoly_pow

# ---------------------------------------------------------------------------
# small matrix helpers (duck-typed scalars)
# ---------------------------------------------------------------------------


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                t = A[i][k] * B[k][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            t = a * x
            acc = t if acc is None else acc + t
        out.append(acc)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_map(A, f):
    return [[f(a) for a in row] for row in A]


def mat_identity(d, one, zero):
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# scalar strategies: exact K arithmetic, or windowed Laurent series
# ---------------------------------------------------------------------------


class _ExactScalars:
    """Reduced rational functions; everything exact."""

    def __init__(self, fs: FieldSpec):
        self.fs = fs
        self.zero = RatFunc.zero(fs)
        self.one = RatFunc.one(fs)
        self.theta = RatFunc.theta(fs)
        self.key = ("exact",)

    def const(self, c):
        return RatFunc(APoly.const(self.fs, c))

    def conv(self, c: RatFunc):
        return c

    def inv(self, x):
        return x.inv()

    def linv_jet(self, k: int, D: int) -> LocalJet:
        return _pole_inv_jet(self, k, D)


class _LaurentScalars:
    """Truncated Laurent series carrying a relative window (in theta-digits):
    every inversion keeps `window` digits past the leading exponent, so
    products of factors with opposite huge valuations do not collapse."""

    def __init__(self, fs: FieldSpec, window: int, ram: int = 1):
        self.fs = fs
        self.window = window
        self.ram = ram
        self.zero = PrecisionLaurent.zero(fs, ram=ram)
        self.one = PrecisionLaurent.one(fs, ram=ram)
        self.theta = PrecisionLaurent.theta_pow(fs, 1, ram=ram)
        self.key = ("laurent", window, ram)

    def const(self, c):
        return PrecisionLaurent.const(self.fs, c, ram=self.ram)

    def conv(self, c: RatFunc):
        if c.is_zero():
            return PrecisionLaurent.zero(self.fs, ram=self.ram)
        a = c.num.laurent(ram=self.ram)
        if c.is_poly():
            return a
        return a * self.inv(c.den.laurent(ram=self.ram))

    def inv(self, x):
        return x.inv(window=self.window * self.ram)

    def linv_jet(self, k: int, D: int) -> LocalJet:
        return _pole_inv_jet(self, k, D)


_POLE_JET_CACHE: dict = {}


def _pole_inv_jet(sc, k: int, D: int) -> LocalJet:
    """Jet at t = theta of 1/(t - theta^{q^k}), order D: the coefficient of
    u^m is (-1)^m c0^{m+1} with c0 = 1/(theta - theta^{q^k})."""
    key = (id(sc.fs), sc.key, k, D)
    got = _POLE_JET_CACHE.get(key)
    if got is not None:
        return got
    th = sc.theta
    c0 = sc.inv(th - th.frobenius(k))
    cs = []
    p = c0
    for m in range(D):
        cs.append(p if m % 2 == 0 else -p)
        if m + 1 < D:
            p = p * c0
    got = LocalJet(cs, 0, D, sc.zero)
    _POLE_JET_CACHE[key] = got
    return got


# ---------------------------------------------------------------------------
# t-modules
# ---------------------------------------------------------------------------


class TModule:
    """E_theta = d[theta] + E_1 tau + ... + E_k tau^k with d x d matrices
    over K (RatFunc entries); d[theta] = theta I + N with N nilpotent."""

    def __init__(self, fs: FieldSpec, d: int, dtheta, taus, provenance=None,
                 scalars=None):
        self.fs = fs
        self.d = d
        self.dtheta = dtheta
        self.taus = list(taus)
        self.provenance = provenance
        self.scalars = scalars if scalars is not None else _ExactScalars(fs)
        sc = self.scalars
        self._exp_cache = [mat_identity(d, sc.one, sc.zero)]
        self._log_cache = [mat_identity(d, sc.one, sc.zero)]
        self._laurent_twins: dict = {}

    def with_scalars(self, sc):
        """The same module with entries converted through `sc.conv` (cached
        per scalar key); recursions then run over that backend."""
        if sc.key == self.scalars.key:
            return self
        got = self._laurent_twins.get(sc.key)
        if got is None:
            conv = sc.conv
            got = TModule(self.fs, self.d, mat_map(self.dtheta, conv),
                          [mat_map(M, conv) for M in self.taus],
                          provenance=self.provenance, scalars=sc)
            self._laurent_twins[sc.key] = got
        return got

    def with_laurent(self, window: int, ram: int = 1):
        """The same module over windowed Laurent scalars; coefficient
        recursions then run at a fixed relative working precision."""
        return self.with_scalars(_LaurentScalars(self.fs, window, ram=ram))

    @property
    def block_dims(self):
        """Jordan-block dimensions of d[theta]; the full dimension as a
        single block unless a shape says otherwise."""
        prov = self.provenance
        if prov is not None and hasattr(prov, "block_dims"):
            return prov.block_dims
        return (self.d,)

    @property
    def nilpotent(self):
        th = self.scalars.theta
        return [[(a - th if i == j else a) for j, a in enumerate(row)]
                for i, row in enumerate(self.dtheta)]

    @classmethod
    def carlitz(cls, fs: FieldSpec):
        one = RatFunc.one(fs)
        return cls(fs, 1, [[RatFunc.theta(fs)]], [[[one]]], provenance="Direct")

    @classmethod
    def carlitz_tensor(cls, fs: FieldSpec, n: int):
        """C^{otimes n} in the jet basis: d[theta] = theta I + shift,
        a single tau in the lower-left corner."""
        z, one, th = RatFunc.zero(fs), RatFunc.one(fs), RatFunc.theta(fs)
        dtheta = [[th if i == j else (one if j == i + 1 else z)
                   for j in range(n)] for i in range(n)]
        tau = [[z] * n for _ in range(n)]
        tau[n - 1][0] = one
        return cls(fs, n, dtheta, [tau], provenance="Direct")

    # -- F_q[t]-action -----------------------------------------------------

    def d_act_matrix(self, a: APoly):
        """d[a] = a(d[theta])."""
        sc = self.scalars
        z = sc.zero
        acc = mat_identity(self.d, z, z)
        for c in reversed(a.coeffs):
            acc = mat_mul(acc, self.dtheta)
            if c:
                acc = mat_add(acc, mat_identity(self.d, sc.const(c), z))
        return acc

    def tau_matrices(self, a: APoly):
        """E_a as a tau-polynomial: list of matrices [d[a], E_{a,1}, ...],
        built by composing E_theta F_q-linearly."""
        sc = self.scalars
        z, one = sc.zero, sc.one
        # E_theta as tau-polynomial
        Eth = [self.dtheta] + self.taus
        # powers E_{theta^k} by tau-composition
        acc = [mat_identity(self.d, one, z)]  # E_1
        out = None
        for k, c in enumerate(a.coeffs):
            if c:
                const = sc.const(c)
                scaled = [mat_map(M, lambda x: x * const) for M in acc]
                if out is None:
                    out = scaled
                else:
                    while len(out) < len(scaled):
                        out.append([[z] * self.d for _ in range(self.d)])
                    for i, M in enumerate(scaled):
                        out[i] = mat_add(out[i], M)
            if k + 1 < len(a.coeffs):
                acc = _tau_compose(Eth, acc)
        if out is None:
            out = [[[z] * self.d for _ in range(self.d)]]
        return out

    def act(self, a: APoly, v, conv=None):
        """E_a(v) for a module point v (list of scalars)."""
        mats = self.tau_matrices(a)
        out = None
        for k, M in enumerate(mats):
            Mk = mat_map(M, conv) if conv else M
            term = mat_vec(Mk, [x.frobenius(k) for x in v] if k else v)
            out = term if out is None else vec_add(out, term)
        return out

    def lie_act(self, a: APoly, z, conv=None):
        M = self.d_act_matrix(a)
        if conv:
            M = mat_map(M, conv)
        return mat_vec(M, z)

    # -- exponential / logarithm coefficients ------------------------------

    def exp_coeff(self, n: int):
        """Q_n solving Q_n (theta^{q^n} I + N^{(n)}) - d[theta] Q_n =
        sum_{k>=1} E_{theta,k} Q_{n-k}^{(k)}, via a Neumann iteration in
        the two nilpotent parts (theta^{q^n} != theta)."""
        fs = self.fs
        while len(self._exp_cache) <= n:
            m = len(self._exp_cache)
            R = self._conv_rhs(self._exp_cache, m)
            self._exp_cache.append(self._sylvester_solve(R, m))
        return self._exp_cache[n]

    def _conv_rhs(self, cache, m):
        z = self.scalars.zero
        R = [[z] * self.d for _ in range(self.d)]
        for k in range(1, min(m, len(self.taus)) + 1):
            Qk = mat_map(cache[m - k], lambda x: x.frobenius(k))
            R = mat_add(R, mat_mul(self.taus[k - 1], Qk))
        return R

    def _sylvester_solve(self, R, n):
        """Solve X (lam I + N') - (theta I + N) X = R with N' = N^{(n)},
        lam = theta^{q^n} - theta: X_{j+1} = (R - X_j N' + N X_j)/lam."""
        th = self.scalars.theta
        ilam = self.scalars.inv(th.frobenius(n) - th)
        N = self.nilpotent
        Np = mat_map(N, lambda x: x.frobenius(n))
        X = mat_map(R, lambda x: x * ilam)
        for _ in range(2 * self.d + 2):
            X2 = mat_map(mat_add(mat_sub(R, mat_mul(X, Np)), mat_mul(N, X)),
                         lambda x: x * ilam)
            if X2 == X:
                break
            X = X2
        return X

    def log_coeff_recursive(self, n: int):
        """P_n from sum_{i+j=n} P_i Q_j^{(i)} = [n=0] I."""
        z = self.scalars.zero
        while len(self._log_cache) <= n:
            m = len(self._log_cache)
            acc = [[z] * self.d for _ in range(self.d)]
            for i in range(m):
                Qj = mat_map(self.exp_coeff(m - i), lambda x: x.frobenius(i))
                acc = mat_add(acc, mat_mul(self._log_cache[i], Qj))
            self._log_cache.append(mat_map(acc, lambda x: -x))
        return self._log_cache[n]


def _shape_key(shape):
    return (id(shape.fs), shape.s, shape.model, tuple(id(Q) for Q in shape.Q))


_THETA_PROD_CACHE: dict = {}


def _theta_jet_matrix(shape, m: int, sc, D: int):
    """Order-D jets at t = theta of the m-th twisted transition matrix: the
    inverse-transpose of the motive matrix with numerators twisted by m - 1
    and poles moved to t = theta^{q^m} (hence regular at theta)."""
    fs = shape.fs
    r = shape.r
    dims = shape.block_dims
    zjet = LocalJet.zero_jet(D, sc.zero)
    onejet = LocalJet.const_jet(sc.one, D, sc.zero)
    linv = sc.linv_jet(m, D)
    pows = {0: onejet}

    def lpow(e):
        while e not in pows:
            lo = max(k for k in pows if k <= e)
            pows[lo + 1] = pows[lo] * linv
        return pows[e]

    def numjet(f: TPoly):
        return f.twist(m - 1).jet(D, conv=sc.conv, zero=sc.zero)

    out = [[zjet for _ in range(r)] for _ in range(r)]
    if shape.model == "AT":
        for i in range(1, r + 1):
            for j in range(i, r + 1):
                if j == i:
                    ent = lpow(dims[j - 1])
                else:
                    num = TPoly.one(fs)
                    for k in range(i, j):
                        num = num * shape.Q[k - 1]
                    ent = numjet(num) * lpow(dims[j - 1])
                    if (j - i) % 2 == 1:
                        ent = -ent
                out[i - 1][j - 1] = ent
    elif shape.model == "Star":
        for i in range(1, r + 1):
            out[i - 1][i - 1] = lpow(dims[i - 1])
            if i < r:
                out[i - 1][i] = numjet(shape.Q[i - 1]) * lpow(dims[i])
    else:
        raise ValueError("closed-form coefficients need an AT or Star shape")
    return out


def _theta_jet_product(shape, n: int, sc, D: int):
    """Running product of the twisted transition-matrix jets, 1..n."""
    key = (_shape_key(shape), sc.key, D)
    lst = _THETA_PROD_CACHE.setdefault(key, [])
    while len(lst) < n:
        m = len(lst) + 1
        Th = _theta_jet_matrix(shape, m, sc, D)
        lst.append(Th if m == 1 else mat_mul(lst[-1], Th))
    return lst[n - 1]


def log_coeff_matrix(shape, n: int, scalars=None):
    """Closed-form logarithm coefficient P_n of the t-module induced by a
    shape: column (ell, j) is delta_0 of the n-fold twisted transition
    product applied to (t - theta^{q^n})^j in block ell."""
    from .motive import _tm_theta_pow, delta0, sigma_basis

    fs = shape.fs
    sc = scalars if scalars is not None else _ExactScalars(fs)
    d = shape.dim
    if n == 0:
        return mat_identity(d, sc.one, sc.zero)
    D = max(shape.block_dims)
    prod = _theta_jet_product(shape, n, sc, D)
    P = [[sc.zero] * d for _ in range(d)]
    for col, (ell, j) in enumerate(sigma_basis(shape)):
        if j:
            w = _tm_theta_pow(fs, j, twist=n).jet(D, conv=sc.conv, zero=sc.zero)
            blocks = [prod[b][ell - 1] * w for b in range(shape.r)]
        else:
            blocks = [prod[b][ell - 1] for b in range(shape.r)]
        for row, x in enumerate(delta0(blocks, shape)):
            P[row][col] = x
    return P


# ---------------------------------------------------------------------------
# certified series evaluation
# ---------------------------------------------------------------------------


def _abs_exp(x):
    """log_q |x|_inf as a Fraction, or None when zero (to precision)."""
    if isinstance(x, PrecisionLaurent):
        return None if x.is_zero_to_prec() else x.abs_infty_exp()
    if isinstance(x, APoly):
        return None if x.is_zero() else Fraction(x.degree())
    if isinstance(x, RatFunc):
        if x.is_zero():
            return None
        return Fraction(x.num.degree() - x.den.degree())
    raise TypeError("unsupported scalar type %r" % (type(x),))


def _scalar_min_val(x):
    """Residual valuation in theta-units; None means exactly zero."""
    if x.is_zero_to_prec():
        return None if x.N is None else Fraction(x.N, x.ram)
    return x.v_infty()


def _vec_min_val(vec):
    best = None
    for x in vec:
        v = _scalar_min_val(x)
        if v is not None and (best is None or v < best):
            best = v
    return best


def _eval_window(fs: FieldSpec, prec: int, vals) -> int:
    w = prec + 2 * fs.q + 10
    emax = 0
    for x in vals:
        e = _abs_exp(x)
        if e is not None and e > emax:
            emax = e
    return w + math.ceil(emax)


def _conv_scalar(sc, x):
    if isinstance(x, PrecisionLaurent):
        return x
    if isinstance(x, APoly):
        x = RatFunc.from_apoly(x)
    return sc.conv(x)


def _series_sum(coeff_fn, vec, prec: int, max_terms: int, start: int = 0):
    """Sum_{n>=start} C_n vec^{(n)}, stopping after two consecutive terms
    certified below the target valuation."""
    acc = None
    stable = 0
    for n in range(start, max_terms + 1):
        mat = coeff_fn(n)
        vn = [x.frobenius(n) for x in vec] if n else vec
        term = mat_vec(mat, vn)
        acc = term if acc is None else vec_add(acc, term)
        v = _vec_min_val(term)
        stable = stable + 1 if (v is None or v >= prec) else 0
        if stable >= 2:
            return acc
    raise PrecisionError(
        f"series did not certify precision {prec} within {max_terms} terms")


def _truncate_vec(vec, prec: int):
    return [x.truncate(prec * x.ram) for x in vec]


def exp_eval(E: TModule, z, prec: int = 40, max_terms: int = 60, scalars=None):
    """Exp_E(z) to absolute precision prec (theta-digits), evaluated over a
    windowed Laurent backend with measured term decay."""
    if scalars is not None:
        sc = scalars
    elif isinstance(E.scalars, _LaurentScalars):
        sc = E.scalars
    else:
        sc = _LaurentScalars(E.fs, _eval_window(E.fs, prec, z))
    EL = E.with_scalars(sc)
    zz = [_conv_scalar(sc, x) for x in z]
    acc = _series_sum(EL.exp_coeff, zz, prec, max_terms)
    return _truncate_vec(acc, prec)


def _iter_slots(block_dims):
    """(ell, j) labels in coordinate order; j descends within each block."""
    for ell, d in enumerate(block_dims, start=1):
        for j in range(d - 1, -1, -1):
            yield ell, d, j


def check_log_domain(E: TModule, v):
    """Certified convergence region of the logarithm: coordinate (ell, j)
    must satisfy |v| < q^{(d_ell - j) + d_ell/(q-1)}."""
    q = E.fs.q
    for x, (ell, d, j) in zip(v, _iter_slots(E.block_dims)):
        e = _abs_exp(x)
        if e is None:
            continue
        if not e < (d - j) + Fraction(d, q - 1):
            raise ValueError(
                "coordinate (%d, %d) is outside the certified logarithm "
                "domain" % (ell, j))


def log_eval(E: TModule, v, prec: int = 40, max_terms: int = 60):
    """Log_E(v) inside the certified domain; shape-backed modules use the
    closed-form coefficients, others the recursive solve."""
    check_log_domain(E, v)
    fs = E.fs
    sc = _LaurentScalars(fs, _eval_window(fs, prec, v))
    shape = E.provenance
    if shape is not None and hasattr(shape, "block_dims"):
        coeff_fn = lambda n: log_coeff_matrix(shape, n, scalars=sc)
    else:
        coeff_fn = E.with_scalars(sc).log_coeff_recursive
    vv = [_conv_scalar(sc, x) for x in v]
    acc = _series_sum(coeff_fn, vv, prec, max_terms)
    return _truncate_vec(acc, prec)


# ---------------------------------------------------------------------------
# the Stark logarithm and the split-logarithm cross-check
# ---------------------------------------------------------------------------


def _gamma_guard(shape) -> int:
    from .tlayer import gamma_factorial
    g = 0
    for si in shape.s:
        g += gamma_factorial(shape.fs, si).degree()
    return g


def stark_log_eval(shape, prec: int = 40, max_terms: int = 60):
    """Canonical logarithm of the special point, as the twisted-product
    series: term n is delta_0 of the n-fold transition product applied to
    the (n-1)-twisted extension row (the n = 0 term vanishes identically)."""
    from .motive import delta0, phi_tilde

    fs = shape.fs
    r = shape.r
    D = max(shape.block_dims)
    sc = _LaurentScalars(fs, _eval_window(fs, prec, ()) + _gamma_guard(shape))
    f = phi_tilde(shape)[r][:r]
    zjet = LocalJet.zero_jet(D, sc.zero)
    acc = None
    stable = 0
    for n in range(1, max_terms + 1):
        prod = _theta_jet_product(shape, n, sc, D)
        fj = [None if x.is_zero() else
              x.base.twist(n - 1).jet(D, conv=sc.conv, zero=sc.zero)
              for x in f]
        blocks = []
        for b in range(r):
            accb = zjet
            for ell in range(r):
                if fj[ell] is not None:
                    accb = accb + prod[b][ell] * fj[ell]
            blocks.append(accb)
        term = delta0(blocks, shape)
        acc = term if acc is None else vec_add(acc, term)
        v = _vec_min_val(term)
        stable = stable + 1 if (v is None or v >= prec) else 0
        if stable >= 2:
            return _truncate_vec(acc, prec)
    raise PrecisionError(
        f"logarithm series did not certify precision {prec} within "
        f"{max_terms} terms")


def split_log_check(shape, prec: int = 30) -> dict:
    """Cross-check of the extended logarithm: write the special point as
    sum_i E_{t^{n_i}}(u_i) with every u_i inside the certified domain
    (exact identity), then compare sum_i d[t^{n_i}] Log(u_i) against the
    twisted-product series."""
    from .motive import special_point, split_decomposition, split_recomposes, \
        tmodule_of

    fs = shape.fs
    E = tmodule_of(shape)
    dec = split_decomposition(shape)
    recomposes = split_recomposes(shape, dec)

    # exact side: the pieces rebuild the special point on the nose
    vsum = None
    for n, _lvl, u in dec.triples:
        a = APoly.monomial(fs, n)
        part = E.act(a, u)
        vsum = part if vsum is None else vec_add(vsum, part)
    v_matches = vsum == special_point(shape)

    # analytic side against the twisted-product series
    nmax = max(n for n, _lvl, _u in dec.triples)
    inner = prec + nmax + 2
    sc = _LaurentScalars(fs, _eval_window(fs, inner, ()) + _gamma_guard(shape))
    zsum = None
    for n, _lvl, u in dec.triples:
        a = APoly.monomial(fs, n)
        z = E.lie_act(a, log_eval(E, u, prec=inner), conv=sc.conv)
        zsum = z if zsum is None else vec_add(zsum, z)
    res = _vec_min_val(vec_sub(zsum, stark_log_eval(shape, prec=inner)))
    passed = recomposes and v_matches and (res is None or res >= prec)
    return {
        "identity": "Log(v) = sum_i d[t^(n_i)] Log(u_i)",
        "model": shape.model,
        "s": list(shape.s),
        "prec": prec,
        "terms": len(dec.triples),
        "recomposes": recomposes,
        "special_point_matches": v_matches,
        "log_residual": res,
        "pass": passed,
    }


# ---------------------------------------------------------------------------
# the period basis
# ---------------------------------------------------------------------------


def period_basis(shape, prec: int = 30):
    """Basis of the period lattice of the induced t-module: the j-th vector
    stacks, for ell <= j, the jet of the (j, ell) entry of the lower
    unit-triangular inverse system, scaled by the inverse (q-1)-st-root
    series to the power d_j.  All entries live in the ramified tower."""
    from .motive import delta0
    from .tlayer import omega_jet
    from .zeta import lseries_jet

    fs = shape.fs
    e = fs.q - 1
    r = shape.r
    s = shape.s
    star = shape.model == "Star"
    D = max(shape.block_dims)
    W = _eval_window(fs, prec, ()) + _gamma_guard(shape)
    zero_r = PrecisionLaurent.zero(fs, ram=e)

    oj = omega_jet(fs, D, W).inv()
    opow = {0: LocalJet.const_jet(PrecisionLaurent.one(fs, ram=e), D, zero_r)}

    def oinv_pow(k):
        while k not in opow:
            lo = max(m for m in opow if m <= k)
            opow[lo + 1] = opow[lo] * oj
        return opow[k]

    def embed_jet(jet: LocalJet) -> LocalJet:
        return LocalJet([c.embed_ram() for c in jet.coeffs], jet.shift,
                        jet.D, zero_r)

    def g_entry(j, ell):
        """(j, ell) entry of the inverse triangular factor, as a jet."""
        if j == ell:
            return LocalJet.const_jet(PrecisionLaurent.one(fs), D,
                                      PrecisionLaurent.zero(fs))
        sub = tuple(reversed(s[ell - 1:j - 1]))
        Qsub = tuple(reversed(shape.Q[ell - 1:j - 1]))
        jet = lseries_jet(fs, sub, Q=Qsub, star=not star, D=D, prec=W)
        if not star and (j - ell) % 2 == 1:
            jet = -jet
        return jet

    zjet = LocalJet.zero_jet(D, zero_r)
    out = []
    for j in range(1, r + 1):
        scale = oinv_pow(shape.block_dims[j - 1])
        blocks = []
        for ell in range(1, r + 1):
            if ell <= j:
                blocks.append(embed_jet(g_entry(j, ell)) * scale)
            else:
                blocks.append(zjet)
        out.append(delta0(blocks, shape))
    return out


def period_check(shape, prec: int = 30) -> dict:
    """Each period-basis vector must be killed by the exponential."""
    fs = shape.fs
    lam = period_basis(shape, prec=prec)
    emax = max((_abs_exp(x) or 0) for v in lam for x in v)
    sc = _LaurentScalars(fs, _eval_window(fs, prec, ()) + math.ceil(emax),
                         ram=fs.q - 1)
    E = _shape_module(shape)
    res = []
    for v in lam:
        res.append(_vec_min_val(exp_eval(E, v, prec=prec, scalars=sc)))
    passed = all(x is None or x >= prec for x in res)
    return {
        "identity": "Exp(lambda_j) = 0",
        "model": shape.model,
        "s": list(shape.s),
        "prec": prec,
        "exp_residuals": res,
        "pass": passed,
    }


def depth_one_period_check(fs, n: int, prec: int = 30) -> dict:
    """For the n-th tensor power the fundamental period's last coordinate is
    the n-th power of the reciprocal omega value (the Carlitz period for
    n = 1), and the exponential kills the whole vector."""
    from .motive import star_shape
    from .tlayer import omega

    shape = star_shape(fs, (n,))
    lam = period_basis(shape, prec=prec)[0]
    W = 2 * (prec + n * math.ceil(fs.q / (fs.q - 1)) + 4)
    oinv = omega(fs, W, 2 * W).eval_theta().inv(window=W)
    diff = lam[n - 1] - oinv.pow(n)
    res_last = (Fraction(diff.N, diff.ram) if diff.is_zero_to_prec()
                else diff.v_infty())
    emax = max((_abs_exp(x) or 0) for x in lam)
    sc = _LaurentScalars(fs, _eval_window(fs, prec, ()) + math.ceil(emax),
                         ram=fs.q - 1)
    res_exp = _vec_min_val(exp_eval(_shape_module(shape), lam, prec=prec,
                                    scalars=sc))
    passed = ((res_last is None or res_last >= prec)
              and (res_exp is None or res_exp >= prec))
    return {
        "identity": "lambda_1 last coordinate = (1/Omega(theta))^n,"
                    " Exp(lambda_1) = 0",
        "q": fs.q,
        "n": n,
        "prec": prec,
        "last_coordinate_residual": res_last,
        "exp_residual": res_exp,
        "pass": passed,
    }


def log_oracle_check(shape, nmax: int = 8, window: int = 80) -> dict:
    """The two logarithm-coefficient routes (closed-form twisted-product
    jets vs the recursive inverse of the exponential) agree entrywise
    inside a shared truncation window."""
    fs = shape.fs
    sc = _LaurentScalars(fs, window)
    E = _shape_module(shape).with_scalars(sc)
    residuals = []
    for n in range(1, nmax + 1):
        A = log_coeff_matrix(shape, n, sc)
        B = E.log_coeff_recursive(n)
        worst = None
        for row_a, row_b in zip(A, B):
            for x, y in zip(row_a, row_b):
                v = _scalar_min_val(x - y)
                if v is not None and (worst is None or v < worst):
                    worst = v
        residuals.append(worst)
    passed = all(v is None or v >= window for v in residuals)
    return {
        "identity": "closed-form log coefficients = recursive inverse",
        "model": shape.model,
        "s": list(shape.s),
        "nmax": nmax,
        "window": window,
        "residuals": residuals,
        "pass": passed,
    }


def _shape_module(shape) -> TModule:
    from .motive import tmodule_of
    return tmodule_of(shape)


def _tau_compose(E, F):
    """Compose two tau-polynomials of matrices: (sum E_i tau^i)(sum F_j tau^j)."""
    z = None
    d = len(E[0])
    out = []
    for i, Ei in enumerate(E):
        for j, Fj in enumerate(F):
            Fj_tw = mat_map(Fj, lambda x: x.frobenius(i)) if i else Fj
            term = mat_mul(Ei, Fj_tw)
            while len(out) <= i + j:
                out.append(None)
            out[i + j] = term if out[i + j] is None else mat_add(out[i + j], term)
    return out
