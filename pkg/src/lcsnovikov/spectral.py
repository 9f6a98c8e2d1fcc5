"""Spectral sequence of the Lefschetz filtration F^p = L^p Λ and related checks.

Pages are computed from the classical subquotients of a filtered complex:

    Z_r^{p,q} = {x in F^p ∩ Λ^{p+q} : d_k x in F^{p+r}}
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d_k Z_{r-1}^{p-r+1,q+r-2})

with Z_{-1}^{p,q} = F^p ∩ Λ^{p+q}.  The filtration has length n+1, so
page n+2 is already the limit.
"""

from dataclasses import dataclass, field

from .cochain import cohomology, exactness_witness
from .errors import InapplicablePerturbation, NotHomogeneous
from .exterior import Form, basis, power
from .lcsops import random_form, validate_lcs
from .lefschetz import c_group, decompose, plus_top_quotient, primitive_cohomology, split
from .ratlin import Q, Matrix, Quotient, Subspace, exact_at, quotient_map, rank
from .report import Report


class FilteredComplex:
    """(Λ, d_k) with the decreasing filtration F^p ∩ Λ^m = L^p Λ^{m-2p}."""

    def __init__(self, s, k):
        self.structure = s
        self.k = Q(k)
        self.d = s.differential(self.k)
        self.n = s.n
        self.dim = s.dim
        self._memo = {}

    def ambient(self, m):
        return len(basis(self.dim, m)) if 0 <= m <= self.dim else 0

    def F(self, p, m):
        key = ("F", p, m)
        if key not in self._memo:
            N = self.ambient(m)
            if p <= 0:
                sub = Subspace.full(N)
            elif p > self.n or 2 * p > m:
                sub = Subspace(N)
            else:
                sub = Subspace(N, self.structure.L_matrix(m - 2 * p, p).columns())
            self._memo[key] = sub
        return self._memo[key]

    def dmat(self, m):
        """d_k: Λ^m -> Λ^{m+1}, with empty matrices out of range."""
        if m < 0 or m > self.dim:
            return Matrix.zeros(self.ambient(m + 1), self.ambient(m))
        return self.d.matrix(m)

    def report(self):
        s = self.structure
        dec = decompose(s)
        rep = Report("Lefschetz filtration (%s, k=%s)" % (s.name or "structure", self.k))
        for m in range(self.dim + 1):
            N = self.ambient(m)
            rep.add("F^0 = Λ^%d" % m, self.F(0, m) == Subspace.full(N))
            rep.add("F^(n+1) ∩ Λ^%d = 0" % m, self.F(self.n + 1, m).dim == 0)
            for p in range(self.n + 1):
                rep.add("F^%d ⊇ F^%d in degree %d" % (p, p + 1, m), self.F(p + 1, m).issubset(self.F(p, m)))
                if m < self.dim:
                    rep.add("d_k F^%d ⊆ F^%d in degree %d" % (p, p, m),
                            self.F(p, m).image_under(self.dmat(m)).issubset(self.F(p, m + 1)))
                pieces = Subspace(N)
                total = 0
                if m >= 2 * p:
                    for i in range(self.n + 1):
                        key = (p + i, m - 2 * p - 2 * i)
                        if key in dec.pieces:
                            pieces = pieces + dec.pieces[key]
                            total += dec.pieces[key].dim
                rep.add("F^%d ∩ Λ^%d = sum of ℒ^{p+i, m-2p-2i}" % (p, m),
                        pieces == self.F(p, m) and total == pieces.dim)
        return rep


@dataclass
class SpectralPage:
    r: int
    k: object
    dims: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    def rank(self, p, q):
        M = self.differentials.get((p, q))
        return rank(M) if M is not None and M.nrows and M.ncols else 0

    def differential_is_zero(self):
        return all(M.is_zero() for M in self.differentials.values())

    def total(self, m):
        return sum(d for (p, q), d in self.dims.items() if p + q == m)

    def records(self):
        return [{"page": self.r, "p": p, "q": q, "dim": self.dims[(p, q)],
                 "differential_rank": self.rank(p, q)} for (p, q) in sorted(self.dims)]


class SpectralSequence:
    """All pages of the Lefschetz spectral sequence for d_k."""

    def __init__(self, s, k):
        self.structure = s
        self.k = Q(k)
        self.fc = FilteredComplex(s, self.k)
        self.n = s.n
        self.dim = s.dim
        self._Z = {}
        self._E = {}
        self._pages = {}

    def window(self):
        """Index pairs 0 <= p <= q <= n where E_0 can be nonzero."""
        return [(p, q) for p in range(self.n + 1) for q in range(p, self.n + 1)]

    def Z(self, r, p, q):
        key = (r, p, q)
        if key not in self._Z:
            m = p + q
            F = self.fc.F(p, m)
            if r < 0 or F.dim == 0:
                self._Z[key] = F
            else:
                self._Z[key] = F.preimage(self.fc.dmat(m), self.fc.F(p + r, m + 1))
        return self._Z[key]

    def E(self, r, p, q):
        """E_r^{p,q} as a Quotient inside Λ^{p+q}."""
        key = (r, p, q)
        if key not in self._E:
            m = p + q
            num = self.Z(r, p, q)
            den = self.Z(r - 1, p + 1, q - 1)
            src = self.Z(r - 1, p - r + 1, q + r - 2)
            if 0 <= m - 1 <= self.dim and src.dim:
                den = den + src.image_under(self.fc.dmat(m - 1))
            self._E[key] = Quotient(num, den)
        return self._E[key]

    def differential(self, r, p, q):
        """d_r: E_r^{p,q} -> E_r^{p+r, q-r+1} in representative coordinates."""
        src = self.E(r, p, q)
        tgt = self.E(r, p + r, q - r + 1)
        m = p + q
        D = self.fc.dmat(m) if 0 <= m <= self.dim else Matrix.zeros(tgt.ambient_dim, src.ambient_dim)
        if src.ambient_dim == 0 or tgt.ambient_dim == 0:
            return Matrix.zeros(tgt.dim, src.dim)
        return quotient_map(D, src, tgt)

    def page(self, r):
        if r not in self._pages:
            pg = SpectralPage(r, self.k)
            for (p, q) in self.window():
                pg.dims[(p, q)] = self.E(r, p, q).dim
                pg.differentials[(p, q)] = self.differential(r, p, q)
            self._pages[r] = pg
        return self._pages[r]

    def limit_page(self):
        return self.page(self.n + 2)

    def page_checks(self, r_max):
        """d_r d_r = 0 and E_{r+1} = H(E_r, d_r), dimension by dimension."""
        rep = Report("pages (%s, k=%s)" % (self.structure.name or "structure", self.k))
        dec = decompose(self.structure)
        e0 = self.page(0)
        rep.add("dim E_0^{p,q} = dim P^{q-p}",
                all(e0.dims[(p, q)] == dec.P[q - p].dim for (p, q) in self.window()))
        outside = [(p, q) for p in range(-1, self.n + 2) for q in range(-1, self.dim + 2)
                   if (p, q) not in e0.dims and 0 <= p + q <= self.dim]
        rep.add("E_0^{p,q} = 0 outside 0 <= p <= q <= n", all(self.E(0, p, q).dim == 0 for p, q in outside))
        for r in range(r_max):
            ok_sq = ok_next = True
            for (p, q) in self.window():
                d1 = self.differential(r, p, q)
                d2 = self.differential(r, p + r, q - r + 1)
                if d1.ncols and d2.nrows and not (d2 @ d1).is_zero():
                    ok_sq = False
                inc = self.differential(r, p - r, q + r - 1)
                ker = d1.ncols - (rank(d1) if d1.nrows and d1.ncols else 0)
                im = rank(inc) if inc.nrows and inc.ncols else 0
                if self.E(r + 1, p, q).dim != ker - im:
                    ok_next = False
            rep.add("d_%d composed with itself vanishes" % r, ok_sq)
            rep.add("E_%d = homology of (E_%d, d_%d)" % (r + 1, r, r), ok_next)
        return rep


def spectral_sequence(s, k):
    k = Q(k)
    return s._memo(("spectral", k), lambda: SpectralSequence(s, k))


def pages(s, k, r_max=None):
    ss = spectral_sequence(s, k)
    r_max = s.n + 2 if r_max is None else r_max
    return [ss.page(r) for r in range(r_max + 1)]


def convergence_check(s, k):
    ss = spectral_sequence(s, k)
    H = cohomology(s.differential(k)).dims
    lim = ss.limit_page()
    tot = [lim.total(m) for m in range(s.dim + 1)]
    rep = Report("convergence (%s, k=%s)" % (s.name or "structure", ss.k))
    rep.add("sum over p+q=m of dim E_inf = dim H^m(d_k)", tuple(tot) == tuple(H), "%s vs %s" % (tot, list(H)))
    rep.data["antidiagonal"] = tot
    return rep


def e1_crosscheck(s, k):
    """Generic E_1 against primitive cohomology of d^+_{k-p}."""
    ss = spectral_sequence(s, k)
    n = s.n
    rep = Report("E_1 versus primitive cohomology (%s, k=%s)" % (s.name or "structure", ss.k))
    e1 = ss.page(1)
    bad = []
    for p in range(n + 1):
        for q in range(n + 1):
            got = e1.dims.get((p, q), ss.E(1, p, q).dim)
            if p <= q <= n - 1:
                want = primitive_cohomology(s, ss.k - p, "plus").dims[q - p]
            elif q == n and p <= n:
                want = plus_top_quotient(s, ss.k - p, p).dim
            else:
                want = 0
            if got != want:
                bad.append(((p, q), got, want))
    rep.add("E_1^{p,q} matches the primitive model at every (p,q)", not bad,
            "; ".join("%s: %d vs %d" % b for b in bad))
    return rep


# exact sequences ----------------------------------------------------------------

@dataclass
class ExactSequenceReport:
    title: str
    nodes: list = field(default_factory=list)       # (name, dim)
    arrows: list = field(default_factory=list)      # (name, matrix) between consecutive nodes
    exact: dict = field(default_factory=dict)       # node name -> bool
    extra: Report = None

    @property
    def ok(self):
        return all(self.exact.values()) and (self.extra is None or self.extra.ok)

    def as_report(self):
        rep = Report(self.title)
        for name, ok in self.exact.items():
            rep.add("exact at %s" % name, ok)
        if self.extra is not None:
            rep.extend(self.extra)
        rep.data["nodes"] = [{"name": n, "dim": d} for n, d in self.nodes]
        rep.data["arrows"] = [{"name": a, "rank": _rank(M)} for a, M in self.arrows]
        return rep


def _rank(M):
    return rank(M) if M.nrows and M.ncols else 0


def _finish_sequence(seq, leading_zero=False, trailing_zero=False, first_interior=1, last_interior=None):
    """Fill exactness verdicts for nodes first_interior..last_interior.

    A leading zero asserts injectivity of the first arrow; a trailing zero
    asserts surjectivity of the last.
    """
    nodes, arrows = seq.nodes, seq.arrows
    last_interior = len(nodes) - 2 if last_interior is None else last_interior
    if leading_zero and arrows:
        seq.exact[nodes[0][0]] = _rank(arrows[0][1]) == nodes[0][1]
    for i in range(first_interior, last_interior + 1):
        inc, out = arrows[i - 1][1], arrows[i][1]
        seq.exact[nodes[i][0]] = exact_at(inc, out, nodes[i][1])
    if trailing_zero:
        seq.exact[nodes[-1][0]] = _rank(arrows[-1][1]) == nodes[-1][1]
    return seq


def _novikov(s, l, j):
    """H^j(d_l) as a Quotient; the zero space for j out of range."""
    if j < 0 or j > s.dim:
        return Quotient(Subspace(0), Subspace(0))
    return cohomology(s.differential(l)).quotients[j]


def _zero_map(tgt, src):
    return Matrix.zeros(tgt.dim, src.dim)


def _qmap(M, src, tgt):
    if src.ambient_dim == 0 or tgt.ambient_dim == 0:
        return _zero_map(tgt, src)
    return quotient_map(M, src, tgt)


def les_primitive(s, l, p, q_window=None):
    """H^{q-p}_l -> E^{p,q}_{l+p,1} -> H^{q-p-1}_{l-1} -> H^{q-p+1}_l -> ... for p <= q <= n-1."""
    l = Q(l)
    n = s.n
    if not 0 <= p <= n - 1:
        raise ValueError("need 0 <= p <= n-1")
    qs = list(range(p, n)) if q_window is None else [q for q in q_window if p <= q <= n - 1]
    dec = decompose(s)
    sp = split(s, l)
    ss = spectral_sequence(s, l + p)
    L = s.L_matrix
    extra = Report("E-node cross-check")
    seq = ExactSequenceReport("long exact sequence, p=%d, l=%s (%s)" % (p, l, s.name or "structure"))
    prev = None   # (name, quotient) of the last node
    for q in qs:
        j = q - p
        Hl = _novikov(s, l, j)
        E = primitive_cohomology(s, l, "plus").quotients[j]
        extra.add("dim E^{%d,%d} = generic E_1 for d_%s" % (p, q, l + p), E.dim == ss.E(1, p, q).dim)
        Hm = _novikov(s, l - 1, j - 1)
        if prev is not None:
            # L-bar from the previous H_{l-1} node into H^j_l
            seq.arrows.append(("L: H^%d_%s -> H^%d_%s" % (j - 2, l - 1, j, l),
                               _qmap(L(j - 2), prev[1], Hl) if j >= 2 else _zero_map(Hl, prev[1])))
        seq.nodes.append(("H^%d_%s" % (j, l), Hl.dim))
        seq.arrows.append(("Π_pr: H^%d_%s -> E^{%d,%d}" % (j, l, p, q), _qmap(dec.pi_pr(j), Hl, E)))
        seq.nodes.append(("E^{%d,%d}" % (p, q), E.dim))
        delta = _qmap(sp.minus[j], E, Hm) if j >= 1 else _zero_map(Hm, E)
        seq.arrows.append(("δ: E^{%d,%d} -> H^%d_%s" % (p, q, j - 1, l - 1), delta))
        seq.nodes.append(("H^%d_%s" % (j - 1, l - 1), Hm.dim))
        prev = (None, Hm)
    # tail: L-bar into H^{n-p}_l closes exactness at the last H_{l-1} node
    j = qs[-1] - p + 1 if qs else 0
    Ht = _novikov(s, l, j)
    seq.arrows.append(("L: H^%d_%s -> H^%d_%s" % (j - 2, l - 1, j, l),
                       _qmap(L(j - 2), prev[1], Ht) if j >= 2 and prev else _zero_map(Ht, prev[1])))
    seq.nodes.append(("H^%d_%s (tail)" % (j, l), Ht.dim))
    seq.extra = extra
    leading = bool(qs) and qs[0] == p
    return _finish_sequence(seq, leading_zero=leading, first_interior=1, last_interior=len(seq.nodes) - 2)


def les_top_degree(s, l, p):
    """E^{p,n-1} -> H^{n-p-2}_{l-1} -> C^{n-p}_l -> E^{p,n} -> C^{n-p-1}_{l-1} -> H^{n+p+1}_{l+p} -> 0."""
    l = Q(l)
    n = s.n
    if not 0 <= p <= n - 1:
        raise ValueError("need 0 <= p <= n-1")
    dec = decompose(s)
    sp = split(s, l)
    ss = spectral_sequence(s, l + p)
    extra = Report("E-node cross-check")
    E1 = primitive_cohomology(s, l, "plus").quotients[n - 1 - p]
    H1 = _novikov(s, l - 1, n - p - 2)
    C1 = c_group(s, l, n - p).quotient
    Etop = plus_top_quotient(s, l, p)
    C2 = c_group(s, l - 1, n - p - 1).quotient
    H2 = _novikov(s, l + p, n + p + 1)
    extra.add("dim E^{%d,%d} = generic E_1 for d_%s" % (p, n, l + p), Etop.dim == ss.E(1, p, n).dim)
    extra.add("dim E^{%d,%d} = generic E_1 for d_%s" % (p, n - 1, l + p), E1.dim == ss.E(1, p, n - 1).dim)
    j = n - 1 - p
    delta1 = _qmap(sp.minus[j], E1, H1) if j >= 1 else _zero_map(H1, E1)
    Lmap = _qmap(s.L_matrix(n - p - 2), H1, C1) if n - p - 2 >= 0 else _zero_map(C1, H1)
    Lp = _qmap(dec.pi_pr(n - p), C1, Etop)
    delta2 = _qmap(sp.minus[n - p], Etop, C2)
    Lp1 = _qmap(s.L_matrix(n - p - 1, p + 1), C2, H2)
    seq = ExactSequenceReport("extended sequence, p=%d, l=%s (%s)" % (p, l, s.name or "structure"))
    seq.nodes = [("E^{%d,%d}" % (p, n - 1), E1.dim), ("H^%d_%s" % (n - p - 2, l - 1), H1.dim),
                 ("C^%d_%s" % (n - p, l), C1.dim), ("E^{%d,%d}" % (p, n), Etop.dim),
                 ("C^%d_%s" % (n - p - 1, l - 1), C2.dim), ("H^%d_%s" % (n + p + 1, l + p), H2.dim)]
    seq.arrows = [("δ", delta1), ("[L]", Lmap), ("[L^p]", Lp), ("δ_top", delta2), ("[L^(p+1)]", Lp1)]
    seq.extra = extra
    _finish_sequence(seq, trailing_zero=True, first_interior=1, last_interior=4)
    extra.data["T"] = C2.dim - _rank(Lp1)
    extra.add("H^k_l embeds in C^k_l", c_group(s, l, n - p).injective_from_cohomology
              and c_group(s, l - 1, n - p - 1).injective_from_cohomology)
    return seq


def short_exact_check(s, l):
    """0 -> Λ^{q-p-1} -L-> Λ^{q+1-p} -ΠL^p-> E_0^{p,q+1} -> 0 for 0 <= p <= q <= n-1."""
    l = Q(l)
    rep = Report("short exact sequences of complexes (%s, l=%s)" % (s.name or "structure", l))
    n = s.n
    for p in range(n):
        ss = spectral_sequence(s, l + p)
        for q in range(p, n):
            a, b = q - p - 1, q + 1 - p
            Na, Nb = len(basis(s.dim, a)) if a >= 0 else 0, len(basis(s.dim, b))
            E0 = ss.E(0, p, q + 1)
            Lm = s.L_matrix(a) if a >= 0 else Matrix.zeros(Nb, 0)
            src = Quotient(Subspace.full(Nb), Subspace(Nb))
            PiLp = quotient_map(s.L_matrix(b, p), src, E0)
            inj = _rank(Lm) == Na
            mid = exact_at(Lm, PiLp, Nb) if Na else _rank(PiLp) == Nb
            surj = _rank(PiLp) == E0.dim
            rep.add("exact at all three nodes (p=%d, q=%d)" % (p, q), inj and mid and surj)
    return rep


def e1_diagonal_check(s, l):
    """dim E_1^{p,p} for d_{l+p} equals dim H^0(d_l) for 0 <= p <= n-1."""
    l = Q(l)
    H0 = cohomology(s.differential(l)).dims[0]
    rep = Report("diagonal E_1 terms (%s, l=%s)" % (s.name or "structure", l))
    for p in range(s.n):
        got = spectral_sequence(s, l + p).E(1, p, p).dim
        rep.add("dim E_1^{%d,%d} = dim H^0_l" % (p, p), got == H0, "%d vs %d" % (got, H0))
    return rep


def filtered_cohomology(s, l):
    """dim D^{p,q} = dim H^{p+q}(F^p, d_l)."""
    fc = spectral_sequence(s, l).fc
    out = {}
    for p in range(s.n + 1):
        for m in range(s.dim + 1):
            F = fc.F(p, m)
            cyc = F.preimage(fc.dmat(m))
            bnd = fc.F(p, m - 1).image_under(fc.dmat(m - 1)) if m >= 1 else Subspace(F.ambient_dim)
            out[(p, m - p)] = Quotient(cyc, bnd).dim
    return out


# stabilization ------------------------------------------------------------------

class NotStabilizedBy(Exception):
    def __init__(self, r_max):
        super().__init__("spectral sequence not stable by page %d" % r_max)
        self.r_max = r_max


def stabilization_index(s, k, r_max=None):
    """Smallest r >= 1 such that d_j = 0 on every page r <= j <= r_max."""
    ss = spectral_sequence(s, k)
    r_max = s.n + 2 if r_max is None else r_max
    index = None
    for r in range(r_max, 0, -1):
        if ss.page(r).differential_is_zero():
            index = r
        else:
            break
    if index is None:
        raise NotStabilizedBy(r_max)
    return index


def exponent_witness(s):
    """Minimal T >= 1 with ω^T = d_T ρ, as (T, ρ), or (None, None)."""
    for T in range(1, s.n + 1):
        w = power(s.omega, T)
        rho = exactness_witness(s.differential(T), w)
        if rho is not None:
            return T, rho
    return None, None


def stabilization_report(s, k, r_max=None, metric=None):
    ss = spectral_sequence(s, k)
    r_max = s.n + 2 if r_max is None else r_max
    rep = Report("stabilization (%s, k=%s)" % (s.name or "structure", ss.k))
    try:
        idx = stabilization_index(s, k, r_max)
    except NotStabilizedBy:
        rep.add("stabilized by page %d" % r_max, False)
        return rep
    rep.data["index"] = idx
    T, rho = exponent_witness(s)
    rep.data["T"] = T
    if T == 1:
        rep.add("ω = d_1 τ gives index <= 2", idx <= 2, "index %d" % idx)
        e2 = ss.page(2)
        H = cohomology(s.differential(ss.k)).dims
        n = s.n
        rep.add("E_2^{p,q} = 0 for 1 <= p <= q <= n-1",
                all(e2.dims[(p, q)] == 0 for p in range(1, n) for q in range(p, n)))
        rep.add("E_2^{0,q} = H^q for 0 <= q <= n", all(e2.dims[(0, q)] == H[q] for q in range(n + 1)))
        ok = all(spectral_sequence(s, ss.k + p).E(2, p, n).dim ==
                 cohomology(s.differential(ss.k + p)).dims[n + p] for p in range(n + 1))
        rep.add("E_2^{p,n} for d_(k+p) = H^{n+p}(d_(k+p))", ok)
    elif T is not None:
        rep.add("ω^T = d_T ρ gives index <= T+1", idx <= T + 1, "T=%d, index %d" % (T, idx))
    if not s.theta and s.model.is_unimodular():
        rep.add("θ = 0 gives index <= 2", idx <= 2, "index %d" % idx)
    if metric is not None and s.model.is_abelian() and not s.theta:
        rep.add("flat Kähler model gives index 1", idx == 1, "index %d" % idx)
    return rep


def e2_diagonal_shift(s, k):
    """dim E_2^{p,q} = dim E_2^{p-1,q-1} for 1 <= p <= q <= n-1."""
    ss = spectral_sequence(s, k)
    e2 = ss.page(2)
    rep = Report("E_2 diagonal shift (%s, k=%s)" % (s.name or "structure", ss.k))
    for p in range(1, s.n):
        for q in range(p, s.n):
            a, b = e2.dims[(p, q)], e2.dims[(p - 1, q - 1)]
            rep.add("E_2^{%d,%d} = E_2^{%d,%d}" % (p, q, p - 1, q - 1), a == b, "%d vs %d" % (a, b))
    return rep


def e1_table(s, k):
    return dict(spectral_sequence(s, k).page(1).dims)


def perturbed_structure(s, rho):
    """(ω + d_θ ρ, θ) as a validated structure; InapplicablePerturbation if degenerate."""
    if rho and rho.degree != 1:
        raise NotHomogeneous("ρ must be a 1-form")
    w = s.omega + s.differential(1).apply(rho)
    if not power(w, s.n):
        raise InapplicablePerturbation("ω + d_θ ρ is degenerate")
    return validate_lcs(s.model, w, s.theta, (s.name or "structure") + "'")


def conformal_e1_check(s, rho, ks=(-1, 0, 1, 2)):
    rep = Report("E_1 under ω -> ω + d_θ ρ (%s)" % (s.name or "structure"))
    t = perturbed_structure(s, rho)
    rep.data["rho"] = s.model.fmt(rho)
    for k in ks:
        a, b = e1_table(s, k), e1_table(t, k)
        rep.add("E_1 tables agree [k=%s, ρ=%s]" % (k, s.model.fmt(rho)), a == b)
    return rep


def random_conformal_checks(s, rng, count=3, ks=(-1, 0, 1, 2), attempts=50):
    """conformal_e1_check for `count` random 1-forms ρ with nondegenerate ω + d_θ ρ."""
    rep = Report("E_1 under random conformal changes (%s)" % (s.name or "structure"))
    done = 0
    for _ in range(attempts):
        if done == count:
            break
        rho = random_form(s.dim, 1, rng)
        try:
            sub = conformal_e1_check(s, rho, ks)
        except InapplicablePerturbation:
            continue
        rep.extend(sub)
        done += 1
    rep.add("found %d nondegenerate perturbations" % count, done == count)
    return rep


def spectral_invariants(s, ks=(-1, 0, 1), r_max=None):
    """Page consistency, filtration and convergence for several k."""
    rep = Report("spectral invariants (%s)" % (s.name or "structure"))
    for k in ks:
        ss = spectral_sequence(s, k)
        rep.extend(ss.fc.report())
        rep.extend(ss.page_checks(s.n + 2 if r_max is None else r_max))
        rep.extend(convergence_check(s, k))
    return rep

