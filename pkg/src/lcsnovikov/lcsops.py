"""Operators attached to a locally conformal symplectic structure (ω, θ).

Conventions (all checked at construction):

* G_ω is the bivector inverse to V -> i_V ω; it enters the pairing Λ^p G_ω
  and the symplectic star  β ^ *α = Λ^p G_ω(β, α) ω^n/n!.
* L* = c · i(G_ω) where i(G) = sum_{i<j} G^{ij} ι_j ι_i and the sign c is
  chosen so that [L*, L] = A = sum (n-k) π_k.  With this choice one finds
  L* = + *L*, which is recorded by `commutation_checks`.
* (d_k)* on degree p is (-1)^p * d_{n+k-p} *.
"""

from collections import namedtuple
from math import factorial

from .cochain import lichnerowicz
from .errors import (DegreeMismatch, Degenerate, DimensionMismatch, InternalError,
                     NotAlmostComplex, NotCompatible, NotHomogeneous, NotLeeCompatible,
                     NotPositive, OddDimension, ThetaNotClosed)
from .exterior import (BiVector, Form, basis, interior_bivector, merge_sign, monomial_pairing,
                       operator_matrix, power, wedge, wedge_matrix)
from .ratlin import ONE, ZERO, Matrix, Q, det, inverse
from .report import Report


class OperatorMatrix:
    """Graded linear operator on Λ(g*): blocks {source degree: (target degree, matrix)}.

    Missing blocks act as zero.  Target degrees outside 0..dim carry
    matrices with no rows.
    """

    def __init__(self, dim, blocks, name=""):
        self.dim = dim
        self.blocks = dict(blocks)
        self.name = name
        for p, (t, M) in self.blocks.items():
            if M.ncols != len(basis(dim, p)) or M.nrows != len(basis(dim, t)):
                raise DimensionMismatch("block %d -> %d has shape %s" % (p, t, M.shape))

    @classmethod
    def from_function(cls, dim, fn, shift, degrees=None, name=""):
        degrees = range(dim + 1) if degrees is None else degrees
        blocks = {}
        for p in degrees:
            t = p + shift if isinstance(shift, int) else shift(p)
            if 0 <= t <= dim:
                blocks[p] = (t, operator_matrix(fn, dim, p, t))
            else:
                blocks[p] = (t, Matrix.zeros(0, len(basis(dim, p))))
        return cls(dim, blocks, name)

    @classmethod
    def identity(cls, dim):
        return cls(dim, {p: (p, Matrix.identity(len(basis(dim, p)))) for p in range(dim + 1)}, "Id")

    @classmethod
    def grading(cls, dim, coeff, name=""):
        return cls(dim, {p: (p, Matrix.identity(len(basis(dim, p))).scale(coeff(p)))
                         for p in range(dim + 1)}, name)

    def degrees(self):
        return sorted(self.blocks)

    def target(self, p):
        return self.blocks[p][0]

    def block(self, p):
        return self.blocks[p][1]

    def apply(self, f):
        out = Form.zero(self.dim)
        for p in f.degrees():
            if p not in self.blocks:
                continue
            t, M = self.blocks[p]
            if M.nrows:
                out = out + Form.from_vector(self.dim, t, M.apply(f.to_vector(p)))
        return out

    __call__ = apply

    def __matmul__(self, other):
        blocks = {}
        for p, (t, M) in other.blocks.items():
            if t in self.blocks:
                t2, N = self.blocks[t]
                blocks[p] = (t2, N @ M)
        return OperatorMatrix(self.dim, blocks, "(%s)(%s)" % (self.name, other.name))

    def _combine(self, other, sign):
        blocks = {}
        for p in set(self.blocks) | set(other.blocks):
            a = self.blocks.get(p)
            b = other.blocks.get(p)
            if a and b:
                if a[0] != b[0]:
                    if a[1].is_zero() and b[1].is_zero():
                        blocks[p] = a
                        continue
                    raise DegreeMismatch("operators shift degree %d differently" % p)
                blocks[p] = (a[0], a[1] + b[1] if sign > 0 else a[1] - b[1])
            elif a:
                blocks[p] = a
            else:
                blocks[p] = (b[0], b[1] if sign > 0 else -b[1])
        return OperatorMatrix(self.dim, blocks)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        return OperatorMatrix(self.dim, {p: (t, M.scale(c)) for p, (t, M) in self.blocks.items()}, self.name)

    def __neg__(self):
        return self.scale(-1)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        return all(M.is_zero() for _, M in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix) or self.dim != other.dim:
            return False
        try:
            return (self - other).is_zero()
        except DegreeMismatch:
            return False

    def __hash__(self):
        return id(self)

    def restrict(self, degrees):
        return OperatorMatrix(self.dim, {p: self.blocks[p] for p in degrees if p in self.blocks}, self.name)

    def __repr__(self):
        return "OperatorMatrix(%s on degrees %s)" % (self.name or "?", self.degrees())


def commutator(a, b):
    return a @ b - b @ a


def differential_operator(d):
    return OperatorMatrix(d.dim, {q: (q + 1, d.matrix(q)) for q in range(d.dim + 1)}, "d")


def omega_matrix(omega):
    """Antisymmetric table Ω_ij = ω(X_i, X_j)."""
    n = omega.dim
    rows = [[ZERO] * n for _ in range(n)]
    for (i, j), c in omega.terms.items():
        rows[i][j] = c
        rows[j][i] = -c
    return Matrix(rows)


def hamiltonian_bivector(omega):
    """G with i_{G}(i_V ω) = V, contracting the first slot of G."""
    Om = omega_matrix(omega)
    # i_V ω has components (Ω^T v); inverting that map gives G = Ω^{-1}
    G = inverse(Om)
    return BiVector(G)


class LcsStructure:
    """Validated (ω, θ) on a LieModel, with lazily built operator matrices."""

    def __init__(self, model, omega, theta, name=""):
        self.model = model
        self.omega = omega
        self.theta = theta
        self.dim = model.dim
        self.n = model.dim // 2
        self.name = name
        self._cache = {}
        self.G = hamiltonian_bivector(omega)
        self.volume = power(omega, self.n).scale(Q(1) / factorial(self.n))
        self.contraction_sign = self._select_contraction_sign()

    def __repr__(self):
        return "LcsStructure(%s: ω = %s, θ = %s)" % (self.name or "?", self.model.fmt(self.omega),
                                                     self.model.fmt(self.theta))

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def differential(self, k):
        k = Q(k)
        return self._memo(("d", k), lambda: lichnerowicz(self.model, self.theta, k))

    def d_op(self, k):
        k = Q(k)
        return self._memo(("dop", k), lambda: differential_operator(self.differential(k)))

    def L_matrix(self, q, p=1):
        """Matrix of L^p: Λ^q -> Λ^{q+2p}."""
        return self._memo(("Lm", q, p), lambda: _wedge_block(power(self.omega, p), self.dim, q, q + 2 * p))

    @property
    def L(self):
        return self._memo("L", lambda: self.L_power(1))

    def L_power(self, p):
        return self._memo(("Lp", p), lambda: OperatorMatrix(
            self.dim, {q: (q + 2 * p, self.L_matrix(q, p)) for q in range(self.dim + 1)}, "L^%d" % p))

    @property
    def A(self):
        n = self.n
        return self._memo("A", lambda: OperatorMatrix.grading(self.dim, lambda k: n - k, "A"))

    def _raw_contraction(self):
        G = self.G
        return self._memo("iG", lambda: OperatorMatrix.from_function(
            self.dim, lambda f: interior_bivector(G, f), -2, name="i(G)"))

    def _select_contraction_sign(self):
        raw = self._raw_contraction()
        L, A = self.L, self.A
        for sign in (1, -1):
            cand = raw.scale(sign)
            if commutator(cand, L) == A:
                return sign
        raise InternalError("neither sign of i(G_ω) satisfies [L*, L] = A")

    @property
    def Lstar(self):
        return self._memo("Lstar", lambda: self._raw_contraction().scale(self.contraction_sign))

    def star_matrix(self, p):
        return self._memo(("star", p), lambda: _star_block(self.G.table, self.volume, self.dim, p))

    @property
    def star(self):
        return self._memo("starop", lambda: OperatorMatrix(
            self.dim, {p: (self.dim - p, self.star_matrix(p)) for p in range(self.dim + 1)}, "*_ω"))

    def dstar_matrix(self, k, p):
        """(d_k)* on degree p: (-1)^p * d_{n+k-p} *."""
        k = Q(k)

        def build():
            m = self.differential(self.n + k - p)
            inner = m.matrix(self.dim - p) @ self.star_matrix(p)
            if p == 0:
                return Matrix.zeros(0, 1)
            M = self.star_matrix(self.dim - p + 1) @ inner
            return M if p % 2 == 0 else -M
        return self._memo(("dstar", k, p), build)

    def dstar(self, k):
        k = Q(k)
        return self._memo(("dstarop", k), lambda: OperatorMatrix(
            self.dim, {p: (p - 1, self.dstar_matrix(k, p)) for p in range(self.dim + 1)}, "(d_%s)*" % k))


def _wedge_block(f, dim, q, tgt):
    if tgt > dim:
        return Matrix.zeros(0, len(basis(dim, q)))
    if not f:
        return Matrix.zeros(len(basis(dim, tgt)), len(basis(dim, q)))
    return wedge_matrix(f, q)


def _star_block(G, vol, dim, p):
    """*: Λ^p -> Λ^{dim-p} from β ^ *α = Λ^p G(β, α) vol.

    With vol = v e_all, the coefficient of e_{I^c} in *e_J is
    v sgn(I, I^c) Λ^p G(e_I, e_J).
    """
    v = vol.coeff(tuple(range(dim)))
    src = basis(dim, p)
    tgt_index = {I: n for n, I in enumerate(basis(dim, dim - p))}
    rows = [[ZERO] * len(src) for _ in range(len(tgt_index))]
    for I in src:
        Ic = tuple(i for i in range(dim) if i not in I)
        s = merge_sign(I, Ic)
        r = tgt_index[Ic]
        for col, J in enumerate(src):
            x = monomial_pairing(G, I, J)
            if x:
                rows[r][col] = v * s * x
    return Matrix(rows, len(src))


def validate_lcs(model, omega, theta=None, name=""):
    """Check dθ = 0, dω = -ω^θ and ω^n != 0, returning an LcsStructure."""
    if model.dim % 2:
        raise OddDimension("l.c.s. structures need even dimension, got %d" % model.dim)
    if theta is None:
        theta = Form.zero(model.dim)
    for f, nm in ((omega, "omega"), (theta, "theta")):
        if f.dim != model.dim:
            raise DimensionMismatch("%s has dim %d, model has %d" % (nm, f.dim, model.dim))
    if not omega.is_homogeneous(2):
        raise DegreeMismatch("omega must be a 2-form")
    if not theta.is_homogeneous(1):
        raise DegreeMismatch("theta must be a 1-form")
    if model.d(theta):
        raise ThetaNotClosed("d theta = %s" % model.fmt(model.d(theta)))
    lhs = model.d(omega)
    rhs = -wedge(omega, theta)
    if lhs != rhs:
        raise NotLeeCompatible("d omega = %s but -omega^theta = %s" % (model.fmt(lhs), model.fmt(rhs)))
    if not power(omega, model.dim // 2):
        raise Degenerate("omega^n = 0")
    return LcsStructure(model, omega, theta, name)


def star_omega(s, f):
    if not f:
        return Form.zero(s.dim)
    p = f.degree
    if p is None:
        raise NotHomogeneous("star_omega needs a homogeneous form")
    return Form.from_vector(s.dim, s.dim - p, s.star_matrix(p).apply(f.to_vector(p)))


Adjoints = namedtuple("Adjoints", "L Lstar A dstar")


def L_and_adjoints(s, ks=()):
    return Adjoints(s.L, s.Lstar, s.A, {Q(k): s.dstar(k) for k in ks})


def commutation_checks(s, k_range=range(-3, 4), p_range=None):
    """Exact operator identities of the l.c.s. calculus as a Report."""
    rep = Report("operator identities (%s)" % (s.name or "structure"))
    n = s.n
    p_range = range(n + 1) if p_range is None else p_range
    I = OperatorMatrix.identity(s.dim)
    rep.add("*_w^2 = Id", s.star @ s.star == I)
    rep.add("L* = i(G_w)", s.Lstar == s._raw_contraction().scale(s.contraction_sign),
            "contraction sign %+d" % s.contraction_sign)
    rep.add("L* = *_w L *_w", s.Lstar == s.star @ s.L @ s.star)
    rep.add("[L*, L] = A", commutator(s.Lstar, s.L) == s.A)
    rep.add("[A, L] = -2L", commutator(s.A, s.L) == s.L.scale(-2))
    rep.add("[A, L*] = 2L*", commutator(s.A, s.Lstar) == s.Lstar.scale(2))
    rep.add("d_1 L = L d_0", s.d_op(1) @ s.L == s.L @ s.d_op(0))
    for k in k_range:
        for p in p_range:
            Lp = s.L_power(p)
            rep.add("d_k L^p = L^p d_(k-p) [k=%s, p=%d]" % (k, p), s.d_op(k) @ Lp == Lp @ s.d_op(Q(k) - p))
    for k in k_range:
        rep.add("L* (d_k)* = (d_(k-1))* L* [k=%s]" % k, s.Lstar @ s.dstar(k) == s.dstar(Q(k) - 1) @ s.Lstar)
    return rep


def leibniz_checks(s, rng, trials=100, max_coeff=3):
    """Randomized d_{k+l}(a^b) = d_k a ^ b + (-1)^deg a a ^ d_l b, plus the rule for d_k a ^ d_l b."""
    rep = Report("Leibniz rule (%s)" % (s.name or "structure"))
    bad1 = bad2 = 0
    for _ in range(trials):
        k = rng.randint(-3, 3)
        l = rng.randint(-3, 3)
        p = rng.randint(0, s.dim)
        q = rng.randint(0, s.dim - p)
        a = random_form(s.dim, p, rng, max_coeff)
        b = random_form(s.dim, q, rng, max_coeff)
        dk, dl, dkl = s.differential(k), s.differential(l), s.differential(k + l)
        lhs = dkl.apply(wedge(a, b))
        rhs = wedge(dk.apply(a), b) + wedge(a, dl.apply(b)).scale((-1) ** p)
        if lhs != rhs:
            bad1 += 1
        if wedge(dk.apply(a), dl.apply(b)) != dkl.apply(wedge(a, dl.apply(b))):
            bad2 += 1
    rep.add("d_(k+l)(a^b) = d_k a^b + (-1)^|a| a^d_l b", bad1 == 0, "%d trials, %d failures" % (trials, bad1))
    rep.add("d_k a ^ d_l b = d_(k+l)(a ^ d_l b)", bad2 == 0, "%d trials, %d failures" % (trials, bad2))
    return rep


def random_form(dim, p, rng, max_coeff=3, density=0.6):
    terms = {}
    for I in basis(dim, p):
        if rng.random() < density:
            num = rng.randint(-max_coeff, max_coeff)
            den = rng.randint(1, max_coeff)
            if num:
                terms[I] = Q(num) / den
    return Form(dim, terms)


# compatible metrics -----------------------------------------------------------

class MetricData:
    """Compatible almost complex structure J, metric g(X,Y) = ω(X, JY) and *_g."""

    def __init__(self, structure, J, g):
        self.structure = structure
        self.J = J
        self.g = g
        self.Ginv = inverse(g)
        self._cache = {}

    @property
    def dim(self):
        return self.structure.dim

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def gram(self, p):
        """Gram matrix of the induced inner product on Λ^p."""
        def build():
            B = basis(self.dim, p)
            return Matrix([[monomial_pairing(self.Ginv, I, J) for J in B] for I in B], len(B))
        return self._memo(("gram", p), build)

    def inner(self, a, b, p):
        return sum((x * y for x, y in zip(a.to_vector(p), self.gram(p).apply(b.to_vector(p)))), ZERO)

    def star_matrix(self, p):
        return self._memo(("star", p), lambda: _star_block(self.Ginv, self.structure.volume, self.dim, p))

    @property
    def star(self):
        return self._memo("starop", lambda: OperatorMatrix(
            self.dim, {p: (self.dim - p, self.star_matrix(p)) for p in range(self.dim + 1)}, "*_g"))

    @property
    def calJ(self):
        """𝒥 = *_g *_ω."""
        return self._memo("calJ", lambda: self.star @ self.structure.star)

    def adjoint(self, M, p_src, p_tgt):
        """Formal adjoint of M: Λ^p_src -> Λ^p_tgt for the g-inner products."""
        return inverse(self.gram(p_src)) @ M.T @ self.gram(p_tgt) if M.ncols else Matrix.zeros(0, M.nrows)


def metric_layer(s, J):
    """Validate J (columns are the images J X_i) and build MetricData."""
    J = J if isinstance(J, Matrix) else Matrix(J)
    dim = s.dim
    if J.shape != (dim, dim):
        raise DimensionMismatch("J must be %dx%d" % (dim, dim))
    if J @ J != Matrix.identity(dim).scale(-1):
        raise NotAlmostComplex("J^2 != -Id")
    Om = omega_matrix(s.omega)
    if J.T @ Om @ J != Om:
        raise NotCompatible("omega(JX, JY) != omega(X, Y)")
    g = Om @ J
    if g.T != g:
        raise NotCompatible("omega(X, JY) is not symmetric")
    for r in range(1, dim + 1):
        minor = det(Matrix([row[:r] for row in g.rows[:r]]))
        if minor <= 0:
            raise NotPositive("leading principal minor %d of g is %s" % (r, minor))
    return MetricData(s, J, g)


def block_complex_structure(omega):
    """Darboux-adapted J for ω = sum c_t e^{a_t} ^ e^{b_t} with disjoint pairs.

    J X_a = sgn(c) X_b and J X_b = -sgn(c) X_a, so g = diag(|c|).
    """
    dim = omega.dim
    used = set()
    J = [[ZERO] * dim for _ in range(dim)]
    for (a, b), c in omega.terms.items():
        if a in used or b in used:
            raise ValueError("omega is not in block form")
        used.update((a, b))
        sg = ONE if c > 0 else -ONE
        J[b][a] = sg
        J[a][b] = -sg
    if len(used) != dim:
        raise Degenerate("omega does not pair every generator")
    return Matrix(J)
