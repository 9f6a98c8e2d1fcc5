"""Exterior algebra of the dual of a based vector space.

A `Form` is a sparse map from strictly increasing index tuples to nonzero
Fractions.  Basis monomials are ordered lexicographically inside each
degree, degrees ascending; `basis(dim, k)` is the coordinate order used by
every matrix in the package.
"""

import re
from functools import lru_cache
from itertools import combinations

from .errors import DegreeMismatch, DimensionMismatch, NotHomogeneous, ParseError
from .ratlin import ONE, ZERO, Matrix, Q, det


@lru_cache(maxsize=None)
def basis(dim, k):
    """Degree-k monomials of Λ(V*) as index tuples, lexicographic."""
    if k < 0 or k > dim:
        return ()
    return tuple(combinations(range(dim), k))


@lru_cache(maxsize=None)
def index_of(dim, k):
    return {I: n for n, I in enumerate(basis(dim, k))}


def merge_sign(I, J):
    """Sign of the shuffle sorting I + J, or 0 if they share an index."""
    inv = 0
    for a in I:
        for b in J:
            if a == b:
                return 0
            if a > b:
                inv += 1
    return -1 if inv & 1 else 1


def sort_sign(idx):
    """(sign, sorted tuple) for an arbitrary index sequence; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # bubble sort counting transpositions; tuples are short
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class Form:
    """Element of Λ(V*) with exact rational coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        clean = {}
        if terms:
            for I, c in terms.items():
                I = tuple(I)
                c = Q(c)
                if not c:
                    continue
                if any(i < 0 or i >= dim for i in I):
                    raise DimensionMismatch("index out of range in %s for dim %d" % (I, dim))
                if any(I[t] >= I[t + 1] for t in range(len(I) - 1)):
                    raise ValueError("index tuple %s is not strictly increasing" % (I,))
                clean[I] = c
        self.dim = dim
        self.terms = clean

    @classmethod
    def _raw(cls, dim, terms):
        f = object.__new__(cls)
        f.dim = dim
        f.terms = terms
        return f

    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def one(cls, dim):
        return cls._raw(dim, {(): ONE})

    @classmethod
    def scalar(cls, dim, c):
        return cls(dim, {(): c})

    @classmethod
    def generator(cls, dim, i):
        return cls(dim, {(i,): ONE})

    @classmethod
    def monomial(cls, dim, indices, coeff=1):
        """coeff * e^{i1} ^ e^{i2} ^ ... for indices in any order."""
        sign, I = sort_sign(indices)
        if not sign:
            return cls.zero(dim)
        return cls(dim, {I: sign * Q(coeff)})

    @classmethod
    def from_vector(cls, dim, k, vec):
        B = basis(dim, k)
        if len(vec) != len(B):
            raise DimensionMismatch("vector length %d for Λ^%d of dim %d" % (len(vec), k, dim))
        return cls._raw(dim, {I: Q(c) for I, c in zip(B, vec) if c})

    def to_vector(self, k):
        """Coordinates of the degree-k part in basis(dim, k)."""
        idx = index_of(self.dim, k)
        v = [ZERO] * len(idx)
        for I, c in self.terms.items():
            if len(I) == k:
                v[idx[I]] = c
        return tuple(v)

    def degrees(self):
        return sorted({len(I) for I in self.terms})

    @property
    def degree(self):
        """Common degree of all terms; None for the zero form or mixed forms."""
        ds = self.degrees()
        return ds[0] if len(ds) == 1 else None

    def is_homogeneous(self, k):
        return all(len(I) == k for I in self.terms)

    def require_degree(self, k):
        if not self.is_homogeneous(k):
            raise NotHomogeneous("expected a homogeneous form of degree %d, got degrees %s" % (k, self.degrees()))
        return self

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch("forms of dimension %d and %d" % (self.dim, other.dim))

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for I, c in other.terms.items():
            s = t.get(I, ZERO) + c
            if s:
                t[I] = s
            else:
                t.pop(I, None)
        return Form._raw(self.dim, t)

    def __neg__(self):
        return Form._raw(self.dim, {I: -c for I, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Q(c)
        if not c:
            return Form.zero(self.dim)
        return Form._raw(self.dim, {I: c * v for I, v in self.terms.items()})

    def __mul__(self, other):
        # Form * Form is the wedge product; Form * scalar scales
        if isinstance(other, Form):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Form) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        return "Form(%s)" % format_form(self)

    def coeff(self, I):
        return self.terms.get(tuple(I), ZERO)


def wedge(a, b):
    a._check(b)
    out = {}
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            s = merge_sign(I, J)
            if not s:
                continue
            K = tuple(sorted(I + J))
            v = out.get(K, ZERO) + (x * y if s > 0 else -(x * y))
            if v:
                out[K] = v
            else:
                out.pop(K, None)
    return Form._raw(a.dim, out)


def wedge_all(forms, dim):
    out = Form.one(dim)
    for f in forms:
        out = wedge(out, f)
    return out


def power(f, p):
    out = Form.one(f.dim)
    for _ in range(p):
        out = wedge(out, f)
    return out


def grade_project(f, k):
    return Form._raw(f.dim, {I: c for I, c in f.terms.items() if len(I) == k})


def interior(i, f):
    """Contraction ι_{X_i} f with the i-th dual basis vector."""
    out = {}
    for I, c in f.terms.items():
        if i in I:
            pos = I.index(i)
            J = I[:pos] + I[pos + 1:]
            out[J] = c if pos % 2 == 0 else -c
    return Form._raw(f.dim, out)


class BiVector:
    """Antisymmetric coefficient table G(i, j) on a based space."""

    __slots__ = ("dim", "table")

    def __init__(self, table):
        table = table if isinstance(table, Matrix) else Matrix(table)
        if table.nrows != table.ncols:
            raise DimensionMismatch("bivector table must be square")
        if table.T != -table:
            raise ValueError("bivector table is not antisymmetric")
        self.dim = table.nrows
        self.table = table

    def coeff(self, i, j):
        return self.table[i, j]

    def __neg__(self):
        return BiVector(-self.table)

    def __eq__(self, other):
        return isinstance(other, BiVector) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "BiVector(%r)" % (self.table,)


def _table(g):
    if isinstance(g, BiVector):
        return g.table
    if isinstance(g, Matrix):
        return g
    return Matrix(g)


def interior_bivector(g, f):
    """i(G) f = sum_{i<j} G(i,j) ι_{X_j} ι_{X_i} f; lowers degree by 2."""
    G = _table(g)
    if G.nrows != f.dim:
        raise DimensionMismatch("bivector dim %d vs form dim %d" % (G.nrows, f.dim))
    out = Form.zero(f.dim)
    for i in range(f.dim):
        fi = interior(i, f)
        if not fi:
            continue
        for j in range(i + 1, f.dim):
            c = G[i, j]
            if c:
                out = out + interior(j, fi).scale(c)
    return out


def lambda_p_pairing(g, p, a, b):
    """Λ^p G(a, b): Gram determinants det[G(i_s, j_t)] on monomials, bilinear.

    g may be a BiVector or any square coefficient table (for instance the
    symmetric inverse metric).
    """
    G = _table(g)
    if not a.is_homogeneous(p) or not b.is_homogeneous(p):
        raise DegreeMismatch("pairing expects homogeneous forms of degree %d" % p)
    total = ZERO
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            total += x * y * monomial_pairing(G, I, J)
    return total


def monomial_pairing(G, I, J):
    if not I:
        return ONE
    return det(Matrix._raw(tuple(tuple(G[i, j] for j in J) for i in I), len(J)))


def operator_matrix(fn, dim, k, k_target):
    """Matrix of a linear map Λ^k -> Λ^k_target given on forms."""
    cols = []
    for I in basis(dim, k):
        img = fn(Form._raw(dim, {I: ONE}))
        if not img.is_homogeneous(k_target):
            raise DegreeMismatch("operator image not of degree %d" % k_target)
        cols.append(img.to_vector(k_target))
    n_t = len(basis(dim, k_target))
    if not cols:
        return Matrix.zeros(n_t, 0)
    return Matrix.from_columns(cols, n_t)


def wedge_matrix(a, k, p=None):
    """Matrix of β -> a ∧ β on Λ^k (a homogeneous), built from sparse products.

    p is the degree of a; it is needed only when a is zero.
    """
    if p is None:
        p = a.degree if a else 0
    elif a and a.degree != p:
        raise DegreeMismatch("form is not of degree %d" % p)
    if a and p is None:
        raise NotHomogeneous("wedge_matrix needs a homogeneous form")
    dim = a.dim
    rows_n = len(basis(dim, k + p))
    cols = basis(dim, k)
    tgt = index_of(dim, k + p)
    entries = [[ZERO] * len(cols) for _ in range(rows_n)]
    for col, J in enumerate(cols):
        for I, x in a.terms.items():
            s = merge_sign(I, J)
            if s:
                entries[tgt[tuple(sorted(I + J))]][col] += x if s > 0 else -x
    return Matrix._raw(tuple(tuple(r) for r in entries), len(cols))


# Form literals ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\+|-|\*))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character in form literal %r at position %d" % (text, pos))
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def parse_form(text, names):
    """Parse a literal like "3/2 a^b^g - x^y + 1" over the generator names."""
    names = list(names)
    lookup = {nm: i for i, nm in enumerate(names)}
    dim = len(names)
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty form literal")
    total = Form.zero(dim)
    i, first = 0, True
    while i < len(toks):
        sign = 1
        if toks[i] == ("op", "+") or toks[i] == ("op", "-"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected + or - between terms in %r" % text)
        first = False
        coeff, have_coeff = ONE, False
        if i < len(toks) and toks[i][0] == "num":
            coeff = Q(toks[i][1])
            have_coeff = True
            i += 1
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
        idx = []
        while i < len(toks) and toks[i][0] == "name":
            nm = toks[i][1]
            if nm not in lookup:
                raise ParseError("unknown generator %r (known: %s)" % (nm, ", ".join(names)))
            idx.append(lookup[nm])
            i += 1
            if i < len(toks) and toks[i] == ("op", "^"):
                i += 1
                if i >= len(toks) or toks[i][0] != "name":
                    raise ParseError("dangling ^ in %r" % text)
            else:
                break
        if not idx and not have_coeff:
            raise ParseError("empty term in %r" % text)
        total = total + Form.monomial(dim, idx, sign * coeff)
    return total


def format_form(f, names=None):
    """Deterministic literal for f; inverse of parse_form."""
    if names is None:
        names = ["e%d" % (i + 1) for i in range(f.dim)]
    if not f.terms:
        return "0"
    parts = []
    for I in sorted(f.terms, key=lambda I: (len(I), I)):
        c = f.terms[I]
        mono = "^".join(names[i] for i in I)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s %s" % (mag, mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def all_monomials(dim):
    for k in range(dim + 1):
        for I in basis(dim, k):
            yield I


def shuffle_sign(I, Ic):
    """sgn of the permutation (I, I^c) of (0..dim-1)."""
    return merge_sign(I, Ic)
