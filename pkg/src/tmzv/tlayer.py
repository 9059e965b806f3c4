"""Polynomials and truncated series in t over the scalar tower.

TPoly is an exact polynomial in t with RatFunc coefficients; TwistedPoly
carries a lazy Frobenius-twist exponent so q-th roots never materialize;
TateTrunc is a t-truncated series with PrecisionLaurent coefficients;
LocalJet is a truncated expansion in u = t - theta over any scalar backend
(RatFunc, PrecisionLaurent, or the factored/nu-adic scalars).

Also provides the classical quantities [k], D_k, L_i, LL_i, gamma_j, Gamma_n,
the Anderson-Thakur polynomials H_n, and the Omega series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import (
    APoly,
    FieldSpec,
    PrecisionLaurent,
    PrecisionError,
    RatFunc,
)


def _is_zero(x):
    if isinstance(x, PrecisionLaurent):
        return x.is_zero_to_prec()
    return x.is_zero()


def _is_exact_zero(x):
    """Zero with no attached uncertainty (safe to drop structurally)."""
    if isinstance(x, PrecisionLaurent):
        return x.is_zero_to_prec() and x.N is None
    return x.is_zero()


class TPoly:
    """Polynomial in t over K = F_q(theta); coefficient i belongs to t^i."""

    __slots__ = ("fs", "coeffs")

    def __init__(self, fs: FieldSpec, coeffs=()):
        self.fs = fs
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, fs):
        return cls(fs, ())

    @classmethod
    def one(cls, fs):
        return cls(fs, (RatFunc.one(fs),))

    @classmethod
    def t(cls, fs):
        return cls(fs, (RatFunc.zero(fs), RatFunc.one(fs)))

    @classmethod
    def const(cls, fs, c: RatFunc):
        return cls(fs, (c,))

    @classmethod
    def from_apoly_coeffs(cls, fs, apolys):
        return cls(fs, [RatFunc(a) for a in apolys])

    @classmethod
    def t_minus_theta(cls, fs):
        return cls(fs, (-RatFunc.theta(fs), RatFunc.one(fs)))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc.zero(self.fs)

    def __eq__(self, other):
        return (
            isinstance(other, TPoly)
            and self.fs == other.fs
            and len(self.coeffs) == len(other.coeffs)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TPoly(self.fs, out)

    def __neg__(self):
        return TPoly(self.fs, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return TPoly.zero(self.fs)
        out = [RatFunc.zero(self.fs) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return TPoly(self.fs, out)

    def scale(self, c: RatFunc):
        return TPoly(self.fs, [x * c for x in self.coeffs])

    def tshift(self, k):
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return TPoly(self.fs, (RatFunc.zero(self.fs),) * k + self.coeffs)

    def twist(self, i: int):
        return TPoly(self.fs, [c.frobenius(i) for c in self.coeffs])

    def is_integral(self):
        return all(c.is_poly() for c in self.coeffs)

    def divmod_tm_theta(self):
        """Write self = (t - theta) * g + c; return (g, c)."""
        fs = self.fs
        th = RatFunc.theta(fs)
        if self.is_zero():
            return TPoly.zero(fs), RatFunc.zero(fs)
        g = [RatFunc.zero(fs)] * (len(self.coeffs) - 1)
        acc = RatFunc.zero(fs)
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = self.coeffs[i] + th * acc
            g[i - 1] = acc
        c = self.coeffs[0] + th * acc
        return TPoly(fs, g), c

    def split_at_pole(self, d: int):
        """Write self = (t-theta)^d * quo + sum_{j<d} c_j (t-theta)^j.

        Returns (quo, [c_0, ..., c_{d-1}])."""
        f = self
        cs = []
        for _ in range(d):
            f, c = f.divmod_tm_theta()
            cs.append(c)
        return f, cs

    def taylor_coeffs(self, D: int):
        """First D coefficients of the expansion in u = t - theta."""
        _, cs = self.split_at_pole(D)
        return cs

    def jet(self, D: int, conv=None, zero=None):
        """LocalJet of order D; conv maps RatFunc scalars to the backend."""
        cs = self.taylor_coeffs(min(D, self.degree() + 1) if not self.is_zero() else 0)
        if conv is not None:
            cs = [conv(c) for c in cs]
            z = zero
        else:
            z = RatFunc.zero(self.fs)
        while len(cs) < D:
            cs.append(z)
        return LocalJet(cs, 0, D, z)

    def eval_scalar(self, x):
        """Evaluate at a scalar value of t (Horner); x any backend scalar."""
        if self.is_zero():
            return None
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def eval_laurent(self, x: PrecisionLaurent, prec=None):
        acc = PrecisionLaurent.zero(self.fs, N=prec, ram=x.ram)
        for c in reversed(self.coeffs):
            acc = acc * x + c.laurent(N=prec, ram=x.ram)
        return acc

    def gauss_norm_exp(self) -> Fraction:
        """Exponent e with ||f|| = q^e (max coefficient |.|_inf)."""
        if self.is_zero():
            raise PrecisionError("Gauss norm of zero")
        best = None
        for c in self.coeffs:
            if not c.is_zero():
                e = Fraction(c.num.degree() - c.den.degree())
                if best is None or e > best:
                    best = e
        return best

    def to_tate(self, M: int, N=None, ram=1):
        fs = self.fs
        out = [self[i].laurent(N=N, ram=ram) for i in range(M + 1)]
        return TateTrunc(fs, out, M, ram=ram)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"({c!r})")
            else:
                parts.append(f"({c!r})·t^{i}" if i > 1 else f"({c!r})·t")
        return " + ".join(parts)


class TwistedPoly:
    """A TPoly together with a lazy twist exponent: represents base^(e)."""

    __slots__ = ("base", "e")

    def __init__(self, base: TPoly, e: int = 0):
        self.base = base
        self.e = e

    def twist(self, i: int):
        return TwistedPoly(self.base, self.e + i)

    def __mul__(self, other):
        if isinstance(other, TwistedPoly):
            if self.e != other.e:
                raise ValueError("cannot multiply mismatched lazy twists exactly")
            return TwistedPoly(self.base * other.base, self.e)
        return TwistedPoly(self.base * other, self.e)

    def __add__(self, other):
        if self.e != other.e:
            raise ValueError("cannot add mismatched lazy twists")
        return TwistedPoly(self.base + other.base, self.e)

    def __neg__(self):
        return TwistedPoly(-self.base, self.e)

    def is_zero(self):
        return self.base.is_zero()

    def materialize(self) -> TPoly:
        """Apply the stored twist; negative twists require representable
        q-th roots (hard error otherwise — the twist ledger)."""
        return self.base.twist(self.e)

    def __eq__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.e == other.e and self.base == other.base

    def __repr__(self):
        if self.e == 0:
            return repr(self.base)
        return f"({self.base!r})^({self.e})"


class TateTrunc:
    """t-truncated series: PrecisionLaurent coefficients for t^0..t^M."""

    __slots__ = ("fs", "coeffs", "M", "ram")

    def __init__(self, fs, coeffs, M, ram=1):
        self.fs = fs
        self.M = M
        cs = list(coeffs)
        z = PrecisionLaurent.zero(fs, ram=ram)
        while len(cs) < M + 1:
            cs.append(z)
        self.coeffs = tuple(cs[: M + 1])
        self.ram = ram

    @classmethod
    def zero(cls, fs, M, ram=1, N=None):
        z = PrecisionLaurent.zero(fs, N=N, ram=ram)
        return cls(fs, [z] * (M + 1), M, ram=ram)

    @classmethod
    def one(cls, fs, M, ram=1, N=None):
        out = [PrecisionLaurent.one(fs, N=N, ram=ram)] + [
            PrecisionLaurent.zero(fs, N=N, ram=ram)
        ] * M
        return cls(fs, out, M, ram=ram)

    def __getitem__(self, i):
        return (
            self.coeffs[i]
            if 0 <= i <= self.M
            else PrecisionLaurent.zero(self.fs, ram=self.ram)
        )

    def _align(self, other):
        if self.fs != other.fs or self.ram != other.ram:
            raise ValueError("mismatched TateTrunc bases")
        return min(self.M, other.M)

    def __add__(self, other):
        M = self._align(other)
        return TateTrunc(
            self.fs, [self[i] + other[i] for i in range(M + 1)], M, ram=self.ram
        )

    def __neg__(self):
        return TateTrunc(self.fs, [-c for c in self.coeffs], self.M, ram=self.ram)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PrecisionLaurent):
            return self.scale(other)
        M = self._align(other)
        z = PrecisionLaurent.zero(self.fs, ram=self.ram)
        out = [z] * (M + 1)
        for i in range(M + 1):
            ci = self[i]
            if ci.is_zero_to_prec() and ci.N is None:
                continue
            for j in range(M + 1 - i):
                out[i + j] = out[i + j] + ci * other[j]
        return TateTrunc(self.fs, out, M, ram=self.ram)

    def scale(self, c: PrecisionLaurent):
        return TateTrunc(self.fs, [x * c for x in self.coeffs], self.M, ram=self.ram)

    def twist(self, i: int):
        return TateTrunc(
            self.fs, [c.frobenius(i) for c in self.coeffs], self.M, ram=self.ram
        )

    def truncate_t(self, M):
        return TateTrunc(self.fs, self.coeffs[: M + 1], min(M, self.M), ram=self.ram)

    def gauss_norm_exp(self) -> Fraction:
        best = None
        for c in self.coeffs:
            if not c.is_zero_to_prec():
                e = c.abs_infty_exp()
                if best is None or e > best:
                    best = e
        if best is None:
            raise PrecisionError("Gauss norm of zero-to-precision series")
        return best

    def min_residual_valuation(self):
        """Min over coefficients of the valuation (None coefficients count as
        their precision N); used for residual reports.  Returns a Fraction in
        theta-units, or None if everything is exactly zero."""
        best = None
        for c in self.coeffs:
            if c.is_zero_to_prec():
                if c.N is None:
                    continue
                val = Fraction(c.N, c.ram)
            else:
                val = c.v_infty()
            if best is None or val < best:
                best = val
        return best

    def eval_theta(self):
        """Evaluate the stored truncation at t = theta."""
        fs = self.fs
        acc = PrecisionLaurent.zero(fs, ram=self.ram)
        th = PrecisionLaurent.theta_pow(fs, 1, ram=self.ram)
        for c in reversed(self.coeffs):
            acc = acc * th + c
        return acc

    def embed_ram(self):
        if self.ram != 1:
            raise ValueError("already ramified")
        e = self.fs.q - 1
        return TateTrunc(self.fs, [c.embed_ram() for c in self.coeffs], self.M, ram=e)

    def to_dict(self):
        return {"tdeg": self.M, "ram": self.ram, "coeffs": [c.to_dict() for c in self.coeffs]}

    def __repr__(self):
        return " + ".join(f"[{c!r}]·t^{i}" for i, c in enumerate(self.coeffs[:4])) + (
            " + ..." if self.M > 3 else ""
        )


class LocalJet:
    """Truncated expansion in u = t - theta over a duck-typed scalar ring.

    coeffs[i] is the coefficient of u^(shift + i); all orders < D are
    guaranteed.  `zero` is the scalar zero used for padding.
    """

    __slots__ = ("coeffs", "shift", "D", "zero")

    def __init__(self, coeffs, shift, D, zero):
        cs = list(coeffs)
        # drop orders >= D
        if shift + len(cs) > D:
            cs = cs[: max(0, D - shift)]
        while cs and _is_exact_zero(cs[0]):
            cs.pop(0)
            shift += 1
        while cs and _is_exact_zero(cs[-1]):
            cs.pop()
        if not cs:
            shift = D
        self.coeffs = list(cs)
        self.shift = shift
        self.D = D
        self.zero = zero

    @classmethod
    def zero_jet(cls, D, zero):
        return cls([], D, D, zero)

    @classmethod
    def const_jet(cls, c, D, zero):
        return cls([c], 0, D, zero)

    def is_zero(self):
        return not self.coeffs

    def order(self, j):
        i = j - self.shift
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def __add__(self, other):
        D = min(self.D, other.D)
        if self.is_zero():
            return LocalJet(other.coeffs, other.shift, D, self.zero)
        if other.is_zero():
            return LocalJet(self.coeffs, self.shift, D, self.zero)
        lo = min(self.shift, other.shift)
        hi = min(D, max(self.shift + len(self.coeffs), other.shift + len(other.coeffs)))
        out = []
        for j in range(lo, hi):
            out.append(self.order(j) + other.order(j))
        return LocalJet(out, lo, D, self.zero)

    def __neg__(self):
        return LocalJet([-c for c in self.coeffs], self.shift, self.D, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LocalJet):
            return self.scale(other)
        D = min(self.D + other.shift, other.D + self.shift)
        if self.is_zero() or other.is_zero():
            return LocalJet([], D, D, self.zero)
        n = min(D - self.shift - other.shift, len(self.coeffs) + len(other.coeffs) - 1)
        if n <= 0:
            return LocalJet([], D, D, self.zero)
        out = [self.zero] * n
        for i, a in enumerate(self.coeffs):
            if _is_exact_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if not _is_exact_zero(b):
                    out[i + j] = out[i + j] + a * b
        return LocalJet(out, self.shift + other.shift, D, self.zero)

    def scale(self, c):
        return LocalJet([x * c for x in self.coeffs], self.shift, self.D, self.zero)

    def ushift(self, k):
        """Multiply by u^k (k may be negative: division by (t-theta)^(-k))."""
        return LocalJet(self.coeffs, self.shift + k, self.D + k, self.zero)

    def inv(self):
        """Jet inverse; leading scalar must be invertible."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero jet")
        W = self.D - self.shift
        b0 = self.coeffs[0]
        c0 = b0.inv()
        out = [c0]
        for k in range(1, W):
            acc = None
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                term = self.coeffs[i] * out[k - i]
                acc = term if acc is None else acc + term
            out.append(-(c0 * acc) if acc is not None else self.zero)
        return LocalJet(out, -self.shift, self.D - 2 * self.shift, self.zero)

    def truncate(self, D):
        return LocalJet(self.coeffs, self.shift, min(D, self.D), self.zero)

    def coeff_list(self, D=None):
        """Coefficients of u^0..u^(D-1); negative orders raise."""
        D = self.D if D is None else D
        if self.coeffs and self.shift < 0:
            raise PrecisionError("jet has a pole at t = theta")
        return [self.order(j) for j in range(D)]


# free-function wrappers over the method API
def twist(g, i: int):
    return g.twist(i)


def gauss_norm(f) -> Fraction:
    """Exponent e with ||f|| = q^e."""
    return f.gauss_norm_exp()


def local_expand(f, D: int, conv=None, zero=None) -> LocalJet:
    """Taylor expansion in u = t - theta to order D."""
    if isinstance(f, TPoly):
        return f.jet(D, conv=conv, zero=zero)
    if isinstance(f, TateTrunc):
        # binomial re-expansion of the stored coefficients only
        fs = f.fs
        th = PrecisionLaurent.theta_pow(fs, 1, ram=f.ram)
        z = PrecisionLaurent.zero(fs, ram=f.ram)
        out = [z] * D
        # (theta + u)^n contributions via iterated Horner in u
        # maintain jet of t^n
        cur = LocalJet([PrecisionLaurent.one(fs, ram=f.ram)], 0, D, z)
        tjet = LocalJet([th, PrecisionLaurent.one(fs, ram=f.ram)], 0, D, z)
        acc = LocalJet([], D, D, z)
        for n in range(f.M + 1):
            c = f[n]
            if not (c.is_zero_to_prec() and c.N is None):
                acc = acc + cur.scale(c)
            if n < f.M:
                cur = cur * tjet
        return acc
    raise TypeError("local_expand expects TPoly or TateTrunc")


# classical quantities


def bracket(fs: FieldSpec, k: int) -> APoly:
    """[k] = theta^(q^k) - theta."""
    if k < 1:
        raise ValueError("k >= 1")
    out = [0] * (fs.q**k + 1)
    out[1] = fs.neg(fs.one)
    out[fs.q**k] = fs.add(out[fs.q**k], fs.one)
    return APoly(fs, out)


@lru_cache(maxsize=None)
def d_poly(fs: FieldSpec, k: int) -> APoly:
    """D_k = [k] D_{k-1}^q, D_0 = 1."""
    if k == 0:
        return APoly.one(fs)
    return bracket(fs, k) * d_poly(fs, k - 1).frobenius(1)


@lru_cache(maxsize=None)
def l_poly(fs: FieldSpec, i: int) -> APoly:
    """L_i = (theta - theta^q) ... (theta - theta^(q^i)), L_0 = 1."""
    if i == 0:
        return APoly.one(fs)
    return l_poly(fs, i - 1) * (-bracket(fs, i))


@lru_cache(maxsize=None)
def ll_poly(fs: FieldSpec, i: int) -> TPoly:
    """LL_i = (t - theta^q) ... (t - theta^(q^i)), LL_0 = 1."""
    if i == 0:
        return TPoly.one(fs)
    fac = TPoly(
        fs, (RatFunc(-APoly.monomial(fs, fs.q**i)), RatFunc.one(fs))
    )
    return ll_poly(fs, i - 1) * fac


def gamma_j(fs: FieldSpec, j: int) -> TPoly:
    """gamma_j = prod_{l=1..j} (theta^(q^j) - t^(q^l)), gamma_0 = 1."""
    acc = TPoly.one(fs)
    for l in range(1, j + 1):
        coeffs = [RatFunc.zero(fs)] * (fs.q**l + 1)
        coeffs[0] = RatFunc(APoly.monomial(fs, fs.q**j))
        coeffs[fs.q**l] = -RatFunc.one(fs)
        acc = acc * TPoly(fs, coeffs)
    return acc


def gamma_factorial(fs: FieldSpec, n: int) -> APoly:
    """Gamma_n = prod_j D_j^(n_j) with n-1 = sum n_j q^j in base q."""
    if n < 1:
        raise ValueError("n >= 1")
    acc = APoly.one(fs)
    m = n - 1
    j = 0
    while m:
        nj = m % fs.q
        if nj:
            acc = acc * d_poly(fs, j).pow(nj)
        m //= fs.q
        j += 1
    return acc


def classical_quantities(fs: FieldSpec, kind: str, *args):
    """Dispatch by name: bracket, D, L, LL, gamma_j, Gamma."""
    table = {
        "bracket": bracket,
        "D": d_poly,
        "L": l_poly,
        "LL": ll_poly,
        "gamma_j": gamma_j,
        "Gamma": gamma_factorial,
    }
    if kind not in table:
        raise ValueError(f"unknown classical quantity {kind!r}")
    return table[kind](fs, *args)


@lru_cache(maxsize=None)
def anderson_thakur(fs: FieldSpec, n: int) -> TPoly:
    """H_n via the generating series: the coefficient alpha_n of x^n in
    x * (1 - sum_j (gamma_j/D_j) x^(q^j))^(-1), times Gamma_n, with the
    variables t and theta exchanged.  Result is an exact polynomial over A.
    """
    if n < 1:
        raise ValueError("n >= 1")
    # inverse-series coefficients C_k in K[t]: C_0 = 1,
    # C_k = sum_{q^j <= k} (gamma_j / D_j) C_{k - q^j}
    C = [TPoly.one(fs)]
    terms = []
    j = 0
    while fs.q**j <= n - 1:
        terms.append((fs.q**j, gamma_j(fs, j).scale(RatFunc(APoly.one(fs), d_poly(fs, j)))))
        j += 1
    for k in range(1, n):
        acc = TPoly.zero(fs)
        for step, gj in terms:
            if step <= k:
                acc = acc + gj * C[k - step]
        C.append(acc)
    alpha = C[n - 1].scale(RatFunc(gamma_factorial(fs, n)))
    if not alpha.is_integral():
        raise ArithmeticError("alpha_n not integral; inversion normalization broken")
    # exchange t and theta: alpha = sum_{i,j} c_{ij} theta^i t^j -> sum c_{ij} t^i theta^j
    max_i = max((c.num.degree() for c in alpha.coeffs if not c.is_zero()), default=0)
    rows = [[0] * (alpha.degree() + 1) for _ in range(max_i + 1)]
    for jdeg, c in enumerate(alpha.coeffs):
        for ideg in range(c.num.degree() + 1):
            if not c.is_zero():
                rows[ideg][jdeg] = c.num[ideg]
    out = [RatFunc(APoly(fs, row)) for row in rows]
    return TPoly(fs, out)


def anderson_thakur_closed(fs: FieldSpec, n: int) -> TPoly:
    """Independent closed form: H_n = 1 for n <= q; for q+1 <= n <= q^2,
    H_n = sum_{j=0..k} C(n-jq+j-1, j) (t^q - t)^(k-j) (t^q - theta^q)^j
    with k = floor((n-1)/q)."""
    q = fs.q
    if n < 1:
        raise ValueError("n >= 1")
    if n <= q:
        return TPoly.one(fs)
    if n > q * q:
        raise ValueError("closed form only valid for n <= q^2")
    from math import comb

    k = (n - 1) // q
    tq_t = TPoly(
        fs,
        [RatFunc.zero(fs) if i not in (1, q) else (-RatFunc.one(fs) if i == 1 else RatFunc.one(fs)) for i in range(q + 1)],
    )
    tq_thq = TPoly(
        fs,
        [(-RatFunc(APoly.monomial(fs, q)) if i == 0 else (RatFunc.one(fs) if i == q else RatFunc.zero(fs))) for i in range(q + 1)],
    )
    acc = TPoly.zero(fs)
    for j in range(k + 1):
        c = comb(n - j * q + j - 1, j) % fs.p
        if c == 0:
            continue
        acc = acc + _tpoly_pow(tq_t, k - j) * _tpoly_pow(tq_thq, j).scale(
            RatFunc(APoly.const(fs, fs.from_int(c)))
        )
    return acc


def _tpoly_pow(f: TPoly, e: int) -> TPoly:
    acc = TPoly.one(f.fs)
    base = f
    while e:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    return acc


def omega_factor_count(fs: FieldSpec, N_theta: int) -> int:
    """Factors of the Omega product needed for theta-precision N (the i-th
    factor only perturbs exponents <= -q^i), plus a safety margin."""
    q = fs.q
    target = N_theta * (q - 1) / q + 1
    n = 1
    while q**n < target:
        n += 1
    return n + 2


def omega(fs: FieldSpec, M: int, N_theta: int) -> TateTrunc:
    """Omega as a TateTrunc over the ramified tower (ram = q-1; for q = 2 the
    tower is K_inf itself).  Leading scalar is eta^(-q); coefficients exact to
    theta-precision N_theta (eta-precision N_theta*(q-1))."""
    e = fs.q - 1
    Nram = N_theta * e
    nfac = omega_factor_count(fs, N_theta)
    lead = PrecisionLaurent.eta_pow(fs, -fs.q, N=Nram + fs.q)
    one = PrecisionLaurent.one(fs, ram=e)
    acc = TateTrunc(fs, [one], M, ram=e)
    for i in range(1, nfac + 1):
        c1 = -PrecisionLaurent.theta_pow(fs, -(fs.q**i), ram=e)
        fac = TateTrunc(fs, [one, c1], M, ram=e)
        acc = acc * fac
    out = acc.scale(lead)
    return TateTrunc(fs, [c.truncate(Nram) for c in out.coeffs], M, ram=e)


def omega_jet(fs: FieldSpec, D: int, N_theta: int) -> LocalJet:
    """Jet of Omega at t = theta over the ramified tower."""
    e = fs.q - 1
    Nram = N_theta * e
    nfac = omega_factor_count(fs, N_theta)
    z = PrecisionLaurent.zero(fs, ram=e)
    acc = LocalJet([PrecisionLaurent.eta_pow(fs, -fs.q, N=Nram + fs.q * e + D * e)], 0, D, z)
    for i in range(1, nfac + 1):
        tpi = PrecisionLaurent.theta_pow(fs, -(fs.q**i), ram=e, N=Nram + fs.q * e + D * e)
        one = PrecisionLaurent.one(fs, ram=e, N=Nram + fs.q * e + D * e)
        c0 = one - PrecisionLaurent.theta_pow(fs, 1 - fs.q**i, ram=e, N=Nram + fs.q * e + D * e)
        fac = LocalJet([c0, -tpi], 0, D, z)
        acc = acc * fac
    return acc
