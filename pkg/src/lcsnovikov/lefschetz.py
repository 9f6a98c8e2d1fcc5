"""Primitive forms, Lefschetz decompositions and primitive cohomology.

For a structure of half-dimension n:

* P^r = ker L^{n-r+1} on Λ^r for r <= n, and P^r = 0 above n;
* ℒ^{s,r} = L^s P^r, and Λ^m is the direct sum of the ℒ^{s,m-2s};
* Π_pr is the projection onto P^m along L Λ^{m-2};
* on degrees q <= n, d_k = d_k^+ + L d_k^- with d_k^+ = Π_pr d_k.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import InternalError
from .exterior import Form, basis, wedge
from .ratlin import (ONE, ZERO, Matrix, Q, Quotient, Subspace, inverse, kernel, quotient_map,
                     rank, solve, solve_matrix)
from .report import Report


class PrimitiveDecomposition:
    """Primitive subspaces, the pieces ℒ^{s,r} and the associated projections."""

    def __init__(self, s):
        self.structure = s
        self.n = n = s.n
        self.dim = dim = s.dim
        self.P = {}
        self.P_adjoint = {}
        for r in range(dim + 1):
            if r <= n:
                self.P[r] = kernel(s.L_matrix(r, n - r + 1))
            else:
                self.P[r] = Subspace(len(basis(dim, r)))
            self.P_adjoint[r] = kernel(s.Lstar.block(r))
        self.pieces = {}
        for sdeg in range(n + 1):
            for r in range(n + 1):
                m = 2 * sdeg + r
                if m > dim:
                    continue
                self.pieces[(sdeg, r)] = self.P[r].image_under(s.L_matrix(r, sdeg)) if sdeg else self.P[r]
        self._proj = {}
        self._pi = {}
        for m in range(dim + 1):
            self._build_projections(m)

    def pieces_in_degree(self, m):
        return [(sd, m - 2 * sd) for sd in range(m // 2 + 1) if (sd, m - 2 * sd) in self.pieces]

    def _build_projections(self, m):
        N = len(basis(self.dim, m))
        labels, cols = [], []
        for key in self.pieces_in_degree(m):
            for v in self.pieces[key].vectors():
                labels.append(key)
                cols.append(v)
        if len(cols) != N:
            raise InternalError("Lefschetz pieces in degree %d have total dim %d != %d" % (m, len(cols), N))
        B = Matrix.from_columns(cols, N) if cols else Matrix.zeros(0, 0)
        if N and rank(B) != N:
            raise InternalError("Lefschetz pieces in degree %d are not independent" % m)
        Binv = inverse(B) if N else B
        for key in self.pieces_in_degree(m):
            sel = [ONE if lab == key else ZERO for lab in labels]
            D = Matrix([[sel[i] if i == j else ZERO for j in range(N)] for i in range(N)], N)
            self._proj[key] = B @ D @ Binv
        self._pi[m] = self._proj.get((0, m), Matrix.zeros(N, N))

    def projection(self, sdeg, r):
        """Projection of Λ^{2s+r} onto ℒ^{s,r} along the other pieces."""
        return self._proj[(sdeg, r)]

    def pi_pr(self, m):
        return self._pi[m]

    def primitive_basis(self, r):
        return [Form.from_vector(self.dim, r, v) for v in self.P[r].vectors()]

    def components(self, f, m=None):
        """{s: β_s} with β_s primitive of degree m-2s and f = sum_s L^s β_s."""
        m = f.degree if m is None else m
        if m is None:
            return {}
        v = f.to_vector(m)
        out = {}
        for sd, r in self.pieces_in_degree(m):
            part = self._proj[(sd, r)].apply(v)
            if not any(part):
                continue
            beta = solve(self.structure.L_matrix(r, sd), part) if sd else part
            if beta is None or beta not in self.P[r]:
                raise InternalError("piece of degree %d is not L^%d of a primitive form" % (m, sd))
            out[sd] = Form.from_vector(self.dim, r, beta)
        return out

    def reassemble(self, comps):
        s = self.structure
        out = Form.zero(self.dim)
        for sd, beta in comps.items():
            out = out + s.L_power(sd).apply(beta)
        return out

    def report(self):
        s = self.structure
        rep = Report("Lefschetz decomposition (%s)" % (s.name or "structure"))
        n, dim = self.n, self.dim
        for r in range(dim + 1):
            expect = (comb(dim, r) - (comb(dim, r - 2) if r >= 2 else 0)) if r <= n else 0
            rep.add("dim P^%d = C(2n,%d) - C(2n,%d)" % (r, r, r - 2), self.P[r].dim == expect,
                    "%d vs %d" % (self.P[r].dim, expect))
            if r <= n:
                rep.add("ker L^(n-r+1) = ker L* on degree %d" % r, self.P[r] == self.P_adjoint[r])
        for m in range(dim + 1):
            keys = self.pieces_in_degree(m)
            total = sum(self.pieces[k].dim for k in keys)
            inter_ok = all((self.pieces[a] & self.pieces[b]).dim == 0
                           for i, a in enumerate(keys) for b in keys[i + 1:])
            rep.add("Λ^%d is the direct sum of its pieces" % m, total == comb(dim, m) and inter_ok)
            Pi = self.pi_pr(m)
            rep.add("Π_pr^2 = Π_pr on degree %d" % m, Pi @ Pi == Pi)
            if m >= 2:
                Lm = s.L_matrix(m - 2)
                rep.add("Π_pr L = 0 on degree %d" % m, (Pi @ Lm).is_zero())
                rep.add("ker Π_pr = L Λ^%d" % (m - 2), kernel(Pi) == Subspace(Lm.nrows, Lm.columns()))
        for k in range(n + 1):
            M = s.L_matrix(n - k, k)
            rep.add("L^%d: Λ^%d -> Λ^%d is an isomorphism" % (k, n - k, n + k),
                    M.nrows == M.ncols and rank(M) == M.nrows)
        return rep


def decompose(s):
    return s._memo("decomposition", lambda: PrimitiveDecomposition(s))


class SplitDifferential:
    """d_k = d_k^+ + L d_k^- on degrees 0..n."""

    def __init__(self, s, k):
        self.structure = s
        self.k = k = Q(k)
        self.n = n = s.n
        dec = decompose(s)
        D = s.differential(k)
        self.plus = {}
        self.minus = {}
        for q in range(n + 1):
            Dq = D.matrix(q)
            plus = dec.pi_pr(q + 1) @ Dq
            rest = Dq - plus
            if q == 0:
                if not rest.is_zero():
                    raise InternalError("d_k on functions has a non-primitive part")
                minus = Matrix.zeros(0, 1)
            else:
                minus = solve_matrix(s.L_matrix(q - 1), rest)
            self.plus[q] = plus
            self.minus[q] = minus

    def apply_plus(self, f, q=None):
        q = f.degree if q is None else q
        return Form.from_vector(self.structure.dim, q + 1, self.plus[q].apply(f.to_vector(q)))

    def apply_minus(self, f, q=None):
        q = f.degree if q is None else q
        if q == 0:
            return Form.zero(self.structure.dim)
        return Form.from_vector(self.structure.dim, q - 1, self.minus[q].apply(f.to_vector(q)))

    def report(self):
        s = self.structure
        dec = decompose(s)
        rep = Report("split of d_%s (%s)" % (self.k, s.name or "structure"))
        D = s.differential(self.k)
        for q in range(self.n + 1):
            recon = self.plus[q] + (s.L_matrix(q - 1) @ self.minus[q] if q else Matrix.zeros(*self.plus[q].shape))
            rep.add("d_k = d_k^+ + L d_k^- on degree %d" % q, recon == D.matrix(q))
            for (sd, r) in dec.pieces_in_degree(q):
                if sd == 0:
                    continue
                piece = dec.pieces[(sd, r)]
                rep.add("d^+(ℒ^{%d,%d}) = 0" % (sd, r),
                        all(not any(self.plus[q].apply(v)) for v in piece.vectors()))
                # d_k L^s = L^s d_{k-s} gives d_k^- L^s β = L^{s-1} d^+_{k-s} β + L^s d^-_{k-s} β
                low = split(s, self.k - sd)
                ok = True
                for beta in dec.P[r].vectors():
                    lhs = self.minus[q].apply(s.L_matrix(r, sd).apply(beta))
                    rhs = s.L_matrix(r + 1, sd - 1).apply(low.plus[r].apply(beta))
                    if r:
                        rhs = tuple(a + b for a, b in zip(rhs, s.L_matrix(r - 1, sd).apply(low.minus[r].apply(beta))))
                    ok &= lhs == rhs
                rep.add("d^-(ℒ^{%d,%d}) in ℒ^{%d,%d} + ℒ^{%d,%d} via d_(k-s)" % (sd, r, sd - 1, r + 1, sd, r - 1), ok)
        return rep


def split(s, k):
    k = Q(k)
    return s._memo(("split", k), lambda: SplitDifferential(s, k))


@dataclass
class PrimitiveCohomology:
    theory: str
    k: Fraction = None
    quotients: dict = field(default_factory=dict)
    dim: int = 0

    @property
    def dims(self):
        return {q: Q_.dim for q, Q_ in self.quotients.items()}

    def representatives(self, q):
        return [Form.from_vector(self.dim, q, v) for v in self.quotients[q].representatives()]


def _plus_quotient(s, k, q):
    dec = decompose(s)
    sp = split(s, k)
    Z = dec.P[q].preimage(sp.plus[q])
    B = dec.P[q - 1].image_under(sp.plus[q - 1]) if q >= 1 else Subspace(Z.ambient_dim)
    return Quotient(Z, B)


def _star_quotient(s, k, q):
    dec = decompose(s)
    Z = dec.P[q].preimage(s.dstar_matrix(k, q)) if q >= 1 else dec.P[q]
    B = dec.P[q + 1].image_under(s.dstar_matrix(Q(k) + 1, q + 1)) if q + 1 <= s.dim else Subspace(Z.ambient_dim)
    return Quotient(Z, B)


def _minus_quotient(s, k, q):
    dec = decompose(s)
    Z = dec.P[q].preimage(split(s, k).minus[q]) if q >= 1 else dec.P[q]
    if q + 1 <= s.n:
        B = dec.P[q + 1].image_under(split(s, Q(k) + 1).minus[q + 1])
    else:
        B = Subspace(Z.ambient_dim)
    return Quotient(Z, B)


_THEORIES = {"plus": _plus_quotient, "star": _star_quotient, "minus": _minus_quotient}


def primitive_cohomology(s, k, theory="plus"):
    """H^q(P*, d_k^+) for q < n, or the star / minus theories for q <= n."""
    k = Q(k)
    if theory not in _THEORIES:
        raise ValueError("theory must be one of plus, star, minus")

    def build():
        top = s.n - 1 if theory == "plus" else s.n
        quots = {q: _THEORIES[theory](s, k, q) for q in range(top + 1)}
        res = PrimitiveCohomology(theory, k, quots, s.dim)
        if theory in ("star", "minus"):
            other = "minus" if theory == "star" else "star"
            od = {q: _THEORIES[other](s, k, q).dim for q in range(top + 1)}
            if od != res.dims:
                raise InternalError("minus and star primitive cohomology differ: %s vs %s" % (res.dims, od))
        return res
    return s._memo(("primcoh", theory, k), build)


def plus_top_quotient(s, k, p):
    """P^{n-p} / d_k^+ P^{n-p-1}: the degree-n primitive quotient."""
    dec = decompose(s)
    m = s.n - p
    B = dec.P[m - 1].image_under(split(s, k).plus[m - 1]) if m >= 1 else Subspace(dec.P[m].ambient_dim)
    return Quotient(dec.P[m], B)


@dataclass
class CGroup:
    l: Fraction
    degree: int
    quotient: Quotient
    injective_from_cohomology: bool

    @property
    def dim_value(self):
        return self.quotient.dim


def c_group(s, l, k):
    """C^k_l = (ker d_l^- on Λ^k) / d_l(Λ^{k-1}) for 0 <= k <= n."""
    from .cochain import cohomology
    l = Q(l)
    if not 0 <= k <= s.n:
        raise ValueError("C^k_l needs 0 <= k <= n")

    def build():
        sp = split(s, l)
        N = len(basis(s.dim, k))
        num = Subspace.full(N).preimage(sp.minus[k]) if k >= 1 else Subspace.full(N)
        D = s.differential(l)
        den = Subspace(N, D.matrix(k - 1).columns()) if k >= 1 else Subspace(N)
        quot = Quotient(num, den)
        H = cohomology(D).quotients[k]
        M = quotient_map(Matrix.identity(N), H, quot)
        return CGroup(l, k, quot, rank(M) == H.dim)
    return s._memo(("cgroup", l, k), build)


def _is_zero_form(f):
    return not f


def plus1_check(s, k):
    """Which case of the H^1 primitive formula applies, and whether it holds."""
    from .cochain import cohomology, exactness_witness
    k = Q(k)
    rep = Report("H^1 primitive formula (%s, k=%s)" % (s.name or "structure", k))
    Hp = primitive_cohomology(s, k, "plus").quotients.get(1)
    if Hp is None:
        rep.data["note"] = "n = 1: H^1(P, d^+) is not defined below degree n"
        return rep
    dim_plus = Hp.dim
    kth = s.theta.scale(k - 1)
    H1_k = cohomology(s.differential(k)).dims[1]
    H1_theta = cohomology(s.differential(1)).dims[1]
    assert_it = s.n >= 2
    rep.data.update({"n": s.n, "dim_plus": dim_plus, "asserted": assert_it})
    if kth:
        case = "(k-1)θ != 0"
        ok = dim_plus == H1_k
        detail = "dim H^1(P,d^+) = %d, dim H^1(d_k) = %d" % (dim_plus, H1_k)
        rho = None
    else:
        rho = exactness_witness(s.differential(1), s.omega)
        if rho is None:
            case = "(k-1)θ = 0, [ω] != 0"
            ok = dim_plus == H1_theta
            detail = "dim H^1(P,d^+) = %d, dim H^1(d_θ) = %d" % (dim_plus, H1_theta)
        else:
            case = "(k-1)θ = 0, [ω] = 0"
            ok = dim_plus == H1_theta + 1
            detail = "dim H^1(P,d^+) = %d = %d + 1" % (dim_plus, H1_theta)
            # structural form: ker d^+ on Λ^1 = ker d_k + span(ρ)
            Zk = cohomology(s.differential(k)).cycles[1]
            v = rho.to_vector(1)
            structural = v not in Zk and Hp.sub == Zk + Subspace(len(v), [v]) \
                and s.differential(k).apply(rho) == s.omega
            rep.add("ker d_k^+ on Λ^1 = ker d_k + span(ρ), d_k ρ = ω", structural,
                    "ρ = %s" % s.model.fmt(rho))
    rep.data["case"] = case
    rep.data["rho"] = s.model.fmt(rho) if rho is not None else None
    if assert_it:
        rep.add("H^1(P, d^+_%s) formula, case %s" % (k, case), ok, detail)
    else:
        rep.data["unasserted"] = detail
    return rep


# identity suites ---------------------------------------------------------------

def minus_adjoint_check(s, r_range=range(-2, 3)):
    """d_r^- α = (d_r)* α / (n-k+1) on every primitive basis form α of degree k."""
    rep = Report("d^- versus (d_r)* on primitives (%s)" % (s.name or "structure"))
    dec = decompose(s)
    n = s.n
    for r in r_range:
        sp = split(s, r)
        bad = total = 0
        for k in range(n + 1):
            for v in dec.P[k].vectors():
                total += 1
                lhs = sp.minus[k].apply(v) if k else ()
                rhs = s.dstar_matrix(r, k).apply(v) if k else ()
                rhs = tuple(x / (n - k + 1) for x in rhs)
                if lhs != rhs:
                    bad += 1
        rep.add("d_r^- = (d_r)*/(n-k+1) [r=%s]" % r, bad == 0, "%d primitive basis forms" % total)
    return rep


def split_square_check(s, k_range=range(-3, 4)):
    """Quadratic relations among d^+, d^- and the adjoint differentials."""
    rep = Report("d^+/d^- relations (%s)" % (s.name or "structure"))
    n = s.n
    for k in k_range:
        k = Q(k)
        a, b = split(s, k), split(s, k - 1)
        sq_plus = all((a.plus[q + 1] @ a.plus[q]).is_zero() for q in range(n))
        sq_minus = all((b.minus[q - 1] @ a.minus[q]).is_zero() for q in range(2, n + 1))
        mixed = all((a.minus[q + 1] @ a.plus[q] + b.plus[q - 1] @ a.minus[q]).is_zero() if q else
                   (a.minus[1] @ a.plus[0]).is_zero() for q in range(n))
        sq_adj = all((s.dstar_matrix(k - 1, q - 1) @ s.dstar_matrix(k, q)).is_zero() for q in range(1, s.dim + 1))
        rep.add("(d_k^+)^2 = 0 [k=%s]" % k, sq_plus)
        rep.add("d_(k-1)^- d_k^- = 0 [k=%s]" % k, sq_minus)
        rep.add("d_k^- d_k^+ + d_(k-1)^+ d_k^- = 0 [k=%s]" % k, mixed)
        rep.add("(d_(k-1))* (d_k)* = 0 [k=%s]" % k, sq_adj)
    return rep


def filtration_check(s, rng, k_range=range(-2, 3), trials=10):
    """d_k preserves L^p Λ and γ ^ P^{n-k} lies in ℒ^{0,n-k+1} + ℒ^{1,n-k-1}."""
    from .lcsops import random_form
    rep = Report("filtration stability (%s)" % (s.name or "structure"))
    dec = decompose(s)
    n, dim = s.n, s.dim
    for k in k_range:
        ok = True
        D = s.differential(k)
        for p in range(1, n + 1):
            for m in range(2 * p, dim):
                F = Subspace(len(basis(dim, m)), s.L_matrix(m - 2 * p, p).columns())
                F1 = Subspace(len(basis(dim, m + 1)), s.L_matrix(m + 1 - 2 * p, p).columns())
                ok &= F.image_under(D.matrix(m)).issubset(F1)
        rep.add("d_%s (F^p) in F^p" % k, ok)
    bad = 0
    for _ in range(trials):
        gamma = random_form(dim, 1, rng)
        for j in range(n + 1):
            deg = n - j
            allowed = Subspace(len(basis(dim, deg + 1)))
            for key in ((0, deg + 1), (1, deg - 1)):
                if key in dec.pieces:
                    allowed = allowed + dec.pieces[key]
            for alpha in dec.primitive_basis(deg):
                if wedge(gamma, alpha).to_vector(deg + 1) not in allowed:
                    bad += 1
    rep.add("γ ^ ℒ^{0,n-k} in ℒ^{0,n-k+1} + ℒ^{1,n-k-1}", bad == 0, "%d random 1-forms" % trials)
    return rep


def _restricted_adjoint(md, T, S1, S2, p1, p2):
    """Adjoint of T: S1 -> S2 inside (Λ^p1, Λ^p2) for the metric inner products.

    Returns a matrix Λ^p2 -> Λ^p1 defined on S2 (columns: images of S2's basis).
    """
    B1 = Matrix.from_columns(S1.vectors(), S1.ambient_dim) if S1.dim else None
    B2 = Matrix.from_columns(S2.vectors(), S2.ambient_dim) if S2.dim else None
    if B1 is None or B2 is None:
        return [tuple(ZERO for _ in range(S1.ambient_dim)) for _ in range(S2.dim)]
    Tc = Matrix.from_columns([S2.coordinates(T.apply(v)) for v in S1.vectors()], S2.dim)
    G1 = B1.T @ md.gram(p1) @ B1
    G2 = B2.T @ md.gram(p2) @ B2
    adj = inverse(G1) @ Tc.T @ G2
    return [B1.apply(c) for c in adj.columns()]


def metric_identity_check(s, md, l_range=(0, 1)):
    """Formal adjoints and 𝒥-conjugation on primitive forms, with the metric layer."""
    from .lcsops import OperatorMatrix
    rep = Report("metric identities (%s)" % (s.name or "structure"))
    dec = decompose(s)
    n, dim = s.n, s.dim
    sg = md.star
    rep.add("*_g^2 = (-1)^p", sg @ sg == OperatorMatrix.grading(dim, lambda p: (-1) ** p))
    rep.add("*_g *_w = *_w *_g", sg @ s.star == s.star @ sg)
    rep.add("L* is the g-adjoint of L",
            all(md.adjoint(s.L_matrix(q), q, q + 2) == s.Lstar.block(q + 2) for q in range(dim - 1)))
    calJ = md.calJ
    rep.add("𝒥^2 = (-1)^p", calJ @ calJ == OperatorMatrix.grading(dim, lambda p: (-1) ** p))
    rep.add("𝒥 preserves primitive forms",
            all(calJ.block(k).apply(v) in dec.P[k] for k in range(n + 1) for v in dec.P[k].vectors()))
    unimodular = s.model.is_unimodular()
    for l in l_range:
        l = Q(l)
        D = s.differential(l)
        Dm = s.differential(-l)
        if unimodular:
            ok = all(md.adjoint(D.matrix(q), q, q + 1) == -(sg.block(dim - q) @ Dm.matrix(dim - q - 1) @ sg.block(q + 1))
                     for q in range(dim))
            rep.add("(d_l)^adj = -*_g d_(-l) *_g [l=%s]" % l, ok)
        sp = split(s, l)
        for k in range(1, n + 1):
            # (d_l^+)^adj : P^k -> P^{k-1}, two computations
            adj = _restricted_adjoint(md, sp.plus[k - 1], dec.P[k - 1], dec.P[k], k - 1, k)
            formula = [(-(sg.block(dim - k + 1) @ Dm.matrix(dim - k) @ sg.block(k))).apply(v)
                       for v in dec.P[k].vectors()]
            if unimodular:
                rep.add("(d_l^+)^adj = -*_g d_(-l) *_g on P^%d [l=%s]" % (k, l), adj == formula)
            # conjugation identities
            r = -l + k - n
            spr = split(s, r)
            Jk = calJ.block(k)
            Jinv_k = Jk.scale((-1) ** k)
            ok50 = True
            for v in dec.P[k].vectors():
                w = Jinv_k.apply(v)
                coords = dec.P[k].coordinates(w)
                adj_w = [sum((c * a[i] for c, a in zip(coords, adj)), ZERO) for i in range(len(basis(dim, k - 1)))]
                lhs = calJ.block(k - 1).apply(tuple(adj_w))
                rhs = tuple((n - k + 1) * x for x in spr.minus[k].apply(v))
                ok50 &= lhs == rhs
            rep.add("𝒥 (d_l^+)^adj 𝒥^-1 = (n-k+1) d^-_(-l+k-n) on P^%d [l=%s]" % (k, l), ok50)
            madj = _restricted_adjoint(md, spr.minus[k], dec.P[k], dec.P[k - 1], k, k - 1)
            ok51 = True
            Jinv_km1 = calJ.block(k - 1).scale((-1) ** (k - 1))
            for v, mv in zip(dec.P[k - 1].vectors(), madj):
                lhs = Jk.apply(sp.plus[k - 1].apply(Jinv_km1.apply(v)))
                ok51 &= lhs == tuple((n - k + 1) * x for x in mv)
            rep.add("𝒥 d_l^+ 𝒥^-1 = (n-k+1) (d^-_(-l+k-n))^adj on P^%d [l=%s]" % (k - 1, l), ok51)
    return rep


def duality_check(s, l_range=(0, 1)):
    """dim H^k(P, d_l^+) = dim H^k(P, (d_{-l+k-n})*) for 0 <= k <= n-1."""
    rep = Report("primitive duality (%s)" % (s.name or "structure"))
    n = s.n
    for l in l_range:
        plus = primitive_cohomology(s, l, "plus").dims
        for k in range(n):
            r = -Q(l) + k - n
            star = primitive_cohomology(s, r, "star").dims[k]
            rep.add("dim H^%d(P, d^+_%s) = dim H^%d(P, (d_%s)*)" % (k, l, k, r), plus[k] == star,
                    "%d vs %d" % (plus[k], star))
    return rep
