"""Dual t-motives attached to a composition (s_1,...,s_r) with twisting
polynomials (Q_1,...,Q_r), the sigma-basis, the maps iota, delta_0, delta_1
and its z-deformation, special points, and the sigma-split decomposition.

The key algebraic fact used everywhere: for each block index ell there is a
vector G_ell = sum_k g_{ell,k} m_k with polynomial coordinates such that

    (t - theta)^{d_ell} m_ell = sigma(G_ell),

so any multiple of (t - theta)^{d_ell} m_ell can be pushed under sigma with
a +1 twist on its coefficient, keeping all Frobenius twists nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .scalars import APoly, FieldSpec, RatFunc
from .tlayer import LocalJet, TPoly, TwistedPoly, _tpoly_pow, anderson_thakur
from . import tmodule as _tmodule

# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MotiveShape:
    fs: FieldSpec
    s: tuple
    Q: tuple
    model: str  # AT | Star | ExtGeneric

    def __post_init__(self):
        if self.model not in ("AT", "Star", "ExtGeneric"):
            raise ValueError("unknown model %r" % (self.model,))
        if not self.s or any(si < 1 for si in self.s):
            raise ValueError("composition entries must be positive")
        if len(self.Q) != len(self.s):
            raise ValueError("need one twisting polynomial per entry")
        q = self.fs.q
        r = len(self.s)
        for i, Qi in enumerate(self.Q):
            if Qi.is_zero():
                raise ValueError("twisting polynomials must be nonzero")
            e = Qi.gauss_norm_exp()
            bound = Fraction(self.s[i] * q, q - 1)
            if i == r - 1:
                if not e < bound:
                    raise ValueError("norm condition fails at the last entry")
            elif not e <= bound:
                raise ValueError("norm condition fails at entry %d" % (i + 1,))

    @property
    def r(self):
        return len(self.s)

    @property
    def block_dims(self):
        """d_ell = s_ell + ... + s_r."""
        out = []
        acc = 0
        for si in reversed(self.s):
            acc += si
            out.append(acc)
        return tuple(reversed(out))

    @property
    def dim(self):
        return sum(self.block_dims)

    @property
    def offsets(self):
        out = []
        acc = 0
        for d in self.block_dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def slot(self, ell: int, j: int) -> int:
        """Coordinate index of the basis vector (t-theta)^j m_ell
        (ell is 1-based, 0 <= j < d_ell; j descends within a block)."""
        d = self.block_dims[ell - 1]
        if not 0 <= j < d:
            raise IndexError("jet index out of range")
        return self.offsets[ell - 1] + (d - 1 - j)


def at_shape(fs: FieldSpec, s) -> MotiveShape:
    """AT model with Q_ell the Anderson-Thakur polynomial H_{s_ell}."""
    return MotiveShape(fs, tuple(s), tuple(anderson_thakur(fs, si) for si in s), "AT")


def star_shape(fs: FieldSpec, s) -> MotiveShape:
    """Star model with Q_ell = H_{s_ell}."""
    return MotiveShape(fs, tuple(s), tuple(anderson_thakur(fs, si) for si in s), "Star")


def star_dimension(s) -> int:
    """Dimension of the star t-module for the reversed index tuple s:
    weight plus the partial-weight correction."""
    s = tuple(s)
    if not s:
        raise ValueError("empty tuple")
    return sum(s) + sum(sum(s[: ell + 1]) for ell in range(len(s) - 1))


def sigma_basis(shape: MotiveShape):
    """Ordered basis labels (ell, j) for (t-theta)^j m_ell, j descending."""
    out = []
    for ell, d in enumerate(shape.block_dims, start=1):
        for j in range(d - 1, -1, -1):
            out.append((ell, j))
    return tuple(out)


# ---------------------------------------------------------------------------
# motive matrices
# ---------------------------------------------------------------------------


@dataclass
class DualTMotive:
    shape: MotiveShape
    phi: list  # r x r matrix of TwistedPoly
    alpha_pre_sigma: list = None  # X with alpha = sigma(X); list of r TPoly


def _tm_theta_pow(fs: FieldSpec, d: int, twist: int = 0) -> TPoly:
    f = _tpoly_pow(TPoly.t_minus_theta(fs), d)
    return f.twist(twist) if twist else f


def build_motive(shape: MotiveShape) -> DualTMotive:
    """Phi matrix: entries X stored as TwistedPoly(base, -1) with
    base^(−1) the true entry, so no root extraction ever happens here."""
    fs = shape.fs
    r = shape.r
    dims = shape.block_dims
    zero = TwistedPoly(TPoly.zero(fs), -1)
    phi = [[zero for _ in range(r)] for _ in range(r)]
    for j in range(1, r + 1):
        # diagonal: (t - theta)^{d_j}, untwisted == twist of its +1 shift
        phi[j - 1][j - 1] = TwistedPoly(_tm_theta_pow(fs, dims[j - 1], twist=1), -1)
        if shape.model == "AT":
            if j < r:
                base = shape.Q[j - 1] * _tm_theta_pow(fs, dims[j - 1], twist=1)
                phi[j][j - 1] = TwistedPoly(base, -1)
        else:
            for ell in range(1, j):
                prod = TPoly.one(fs)
                for k in range(ell, j):
                    prod = prod * shape.Q[k - 1]
                if (j - ell) % 2 == 1:
                    prod = -prod
                phi[j - 1][ell - 1] = TwistedPoly(
                    prod * _tm_theta_pow(fs, dims[ell - 1], twist=1), -1)
    return DualTMotive(shape, phi, special_point_pre_sigma(shape))


def phi_tilde(shape: MotiveShape) -> list:
    """(r+1)x(r+1) extension [[Phi, 0], [f, 1]] of the motive matrix by the
    special-point row f (the j = r+1 case of the same entry formulas)."""
    fs = shape.fs
    r = shape.r
    dims = shape.block_dims
    zero = TwistedPoly(TPoly.zero(fs), -1)
    phi = build_motive(shape).phi
    out = [list(row) + [zero] for row in phi]
    last = [zero] * (r + 1)
    if shape.model == "AT":
        last[r - 1] = TwistedPoly(
            shape.Q[r - 1] * _tm_theta_pow(fs, dims[r - 1], twist=1), -1)
    elif shape.model == "Star":
        for ell in range(1, r + 1):
            prod = TPoly.one(fs)
            for k in range(ell, r + 1):
                prod = prod * shape.Q[k - 1]
            if (r + 1 - ell) % 2 == 1:
                prod = -prod
            last[ell - 1] = TwistedPoly(
                prod * _tm_theta_pow(fs, dims[ell - 1], twist=1), -1)
    else:
        raise ValueError("extended matrix needs an AT or Star shape")
    last[r] = TwistedPoly(TPoly.one(fs), -1)
    out.append(last)
    return out


_G_CACHE: dict = {}


def g_vectors(shape: MotiveShape):
    """G_ell with sigma(G_ell) = (t-theta)^{d_ell} m_ell; returned as a tuple
    whose ell-th entry is the list of m-coordinates [g_{ell,1},...,g_{ell,ell}]."""
    key = (id(shape.fs), shape.s, shape.model, tuple(id(Q) for Q in shape.Q))
    got = _G_CACHE.get(key)
    if got is not None:
        return got
    fs = shape.fs
    r = shape.r
    out = []
    for ell in range(1, r + 1):
        coords = [TPoly.zero(fs) for _ in range(ell)]
        coords[ell - 1] = TPoly.one(fs)
        if shape.model == "AT":
            if ell > 1:
                for k in range(ell - 1):
                    coords[k] = coords[k] - shape.Q[ell - 2] * out[ell - 2][k]
        else:
            for i in range(1, ell):
                prod = TPoly.one(fs)
                for k in range(i, ell):
                    prod = prod * shape.Q[k - 1]
                if (ell - i) % 2 == 1:
                    prod = -prod
                for k in range(i):
                    coords[k] = coords[k] - prod * out[i - 1][k]
    # (sign folded into prod; Q*_{ell,i} = (-1)^{ell-i} prod_{i<=k<ell} Q_k)
        out.append(coords)
    out = tuple(tuple(c) for c in out)
    _G_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# iota / delta maps
# ---------------------------------------------------------------------------


def iota(shape: MotiveShape, column) -> list:
    """Column of d scalars -> motive element Sum u_{(ell,j)} (t-theta)^j m_ell,
    as a list of r TPoly block coordinates."""
    fs = shape.fs
    if len(column) != shape.dim:
        raise ValueError("column length mismatch")
    coords = []
    for ell, d in enumerate(shape.block_dims, start=1):
        f = TPoly.zero(fs)
        for j in range(d):
            c = column[shape.slot(ell, j)]
            if isinstance(c, APoly):
                c = RatFunc.from_apoly(c)
            if not c.is_zero():
                f = f + _tm_theta_pow(fs, j).scale(c)
        coords.append(f)
    return coords


def delta0(coords, shape: MotiveShape) -> list:
    """Stacked (t-theta)-jet coefficients in basis order.  Blocks may be
    TPoly (exact) or LocalJet (any scalar backend); a pole deeper than the
    block's jet order is an error."""
    out = [None] * shape.dim
    for ell, d in enumerate(shape.block_dims, start=1):
        f = coords[ell - 1]
        if isinstance(f, TPoly):
            cs = f.taylor_coeffs(d)
        elif isinstance(f, LocalJet):
            cs = f.coeff_list(d)
        else:
            raise TypeError("unsupported block type %r" % (type(f),))
        for j in range(d):
            out[shape.slot(ell, j)] = cs[j]
    return out


def _delta1_levels(coords, shape: MotiveShape) -> dict:
    """sigma-reduction.  Returns {level: column}; the element equals
    Sum_levels sigma^level(iota(column_level)) modulo nothing -- i.e.
    delta_1 of the element is the plain sum of the columns (coefficients
    spawned at level L already carry their q^L twist)."""
    fs = shape.fs
    dims = shape.block_dims
    G = g_vectors(shape)
    out: dict = {}
    work = [(0, ell, f) for ell, f in enumerate(coords, start=1)
            if f is not None and not f.is_zero()]
    while work:
        level, ell, g = work.pop()
        quo, jets = g.split_at_pole(dims[ell - 1])
        col = out.get(level)
        if col is None:
            col = [RatFunc.zero(fs) for _ in range(shape.dim)]
            out[level] = col
        for j, c in enumerate(jets):
            if not c.is_zero():
                idx = shape.slot(ell, j)
                col[idx] = col[idx] + c
        if not quo.is_zero():
            h = quo.twist(1)
            for k in range(1, ell + 1):
                gk = G[ell - 1][k - 1]
                if not gk.is_zero():
                    work.append((level + 1, k, h * gk))
    return out


def delta1(coords, shape: MotiveShape) -> list:
    levels = _delta1_levels(coords, shape)
    fs = shape.fs
    out = [RatFunc.zero(fs) for _ in range(shape.dim)]
    for col in levels.values():
        for i, c in enumerate(col):
            out[i] = out[i] + c
    return out


def delta1_z(coords, shape: MotiveShape) -> dict:
    """z-graded variant: {level: column}, the level-L column to be paired
    with z^L (equivalently tau^L)."""
    return _delta1_levels(coords, shape)


# ---------------------------------------------------------------------------
# special points and the split decomposition
# ---------------------------------------------------------------------------


def special_point_pre_sigma(shape: MotiveShape) -> list:
    """X with alpha(M) = sigma(X), as r block coordinates."""
    fs = shape.fs
    r = shape.r
    G = g_vectors(shape)
    if shape.model == "AT":
        coords = [shape.Q[r - 1] * g for g in G[r - 1]]
    else:
        coords = [TPoly.zero(fs) for _ in range(r - 1)] + [-shape.Q[r - 1]]
    return coords + [TPoly.zero(fs)] * (r - len(coords))


def special_point(shape: MotiveShape) -> list:
    """v_s (AT) or v*_s (Star) = delta_1(alpha(M)); entries in A when the
    twisting polynomials are."""
    return delta1(special_point_pre_sigma(shape), shape)


@dataclass
class SigmaDecomposition:
    triples: list  # (n_i, ell_i, u_i) with u_i a d-column of RatFunc


def split_decomposition(shape: MotiveShape) -> SigmaDecomposition:
    """alpha(M) = Sum_i t^{n_i} sigma^{ell_i}(iota(u_i)) with every u_i
    inside the certified logarithm domain."""
    fs = shape.fs
    r = shape.r
    dims = shape.block_dims
    q = fs.q

    def unit(ell, j, c):
        u = [RatFunc.zero(fs)] * shape.dim
        u[shape.slot(ell, j)] = c
        return u

    triples = []
    if shape.model == "Star":
        Qr = shape.Q[r - 1]
        for n in range(Qr.degree() + 1):
            c = Qr[n]
            if not c.is_zero():
                triples.append((n, 1, unit(r, 0, -c)))
    elif shape.model == "AT":
        G = g_vectors(shape)
        for ell in range(1, r + 1):
            f = shape.Q[r - 1] * G[r - 1][ell - 1]
            for n in range(f.degree() + 1):
                c = f[n]
                if not c.is_zero():
                    triples.append((n, 1, unit(ell, 0, c)))
    else:
        raise ValueError("split decomposition needs an AT or Star shape")
    # convergence bound |u_{(ell,j)}| < q^{(d_ell - j) + d_ell/(q-1)}
    for _, _, u in triples:
        for (ell, j) in sigma_basis(shape):
            c = u[shape.slot(ell, j)]
            if c.is_zero():
                continue
            e = Fraction(c.num.degree() - c.den.degree())
            if not e < (dims[ell - 1] - j) + Fraction(dims[ell - 1], q - 1):
                raise ValueError("split term violates the convergence bound")
    return SigmaDecomposition(triples)


def split_recomposes(shape: MotiveShape, dec: SigmaDecomposition) -> bool:
    """Exact check: Sum t^{n_i} iota(u_i) (all ell_i = 1) equals the
    pre-sigma special point, coordinatewise as polynomials."""
    fs = shape.fs
    acc = [TPoly.zero(fs) for _ in range(shape.r)]
    for n, ell_i, u in dec.triples:
        if ell_i != 1:
            return False
        for b, f in enumerate(iota(shape, u)):
            acc[b] = acc[b] + f.tshift(n)
    return acc == special_point_pre_sigma(shape)


# ---------------------------------------------------------------------------
# extensions and the induced t-module
# ---------------------------------------------------------------------------


def ext_combine(a1: TPoly, M1: DualTMotive, a2: TPoly, M2: DualTMotive) -> DualTMotive:
    """F_q[t]-linear combination of two extensions sharing the inner block."""
    if M1.shape != M2.shape:
        raise ValueError("extensions must share the inner motive")
    for a in (a1, a2):
        for c in a.coeffs:
            if not (c.is_zero() or (c.is_poly() and c.num.degree() <= 0)):
                raise ValueError("combination coefficients must lie in F_q[t]")
    coords = [a1 * x + a2 * y
              for x, y in zip(M1.alpha_pre_sigma, M2.alpha_pre_sigma)]
    return DualTMotive(M1.shape, M1.phi, coords)


def tmodule_of(shape: MotiveShape):
    """The induced t-module E': columns of E'_theta are delta_{1,z}(t w_i),
    with the z^0 layer giving d[theta] = theta I + (jet shift) and z^k the
    tau^k matrix coefficient."""
    fs = shape.fs
    d = shape.dim
    zero = RatFunc.zero(fs)
    layers: dict = {}
    for i, (ell, j) in enumerate(sigma_basis(shape)):
        coords = [TPoly.zero(fs) for _ in range(shape.r)]
        coords[ell - 1] = _tm_theta_pow(fs, j).tshift(1)
        for level, col in _delta1_levels(coords, shape).items():
            mat = layers.setdefault(level, [[zero] * d for _ in range(d)])
            for rrow in range(d):
                mat[rrow][i] = mat[rrow][i] + col[rrow]
    kmax = max(layers)
    coeffs = [layers.get(k, [[zero] * d for _ in range(d)])
              for k in range(1, kmax + 1)]
    return _tmodule.TModule(fs, d, layers[0], coeffs, provenance=shape)
