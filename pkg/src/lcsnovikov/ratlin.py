"""Exact linear algebra over the rationals.

Scalars are `fractions.Fraction`.  Matrices are immutable and dense (row
tuples); vectors are tuples of Fractions.  Subspaces are stored through the
reduced row echelon form of a spanning set, which makes equality a plain
comparison of bases.  Quotients use the pivot-complement rule: a vector is
represented modulo W by clearing the pivot columns of W's echelon basis.
"""

from fractions import Fraction
from numbers import Rational

from .errors import DimensionMismatch, NotWellDefined, ParseError

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x):
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats and decimal strings are rejected so precision is never lost
    at the boundary.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("boolean is not a rational: %r" % (x,))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower() or not s:
            raise ParseError("expected an integer or p/q rational, got %r" % (x,))
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational literal %r" % (x,)) from exc
    raise ParseError("cannot interpret %r as a rational" % (x,))


def as_vector(v):
    return tuple(Q(x) for x in v)


def zero_vector(n):
    return (ZERO,) * n


def is_zero_vector(v):
    return not any(v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(Q(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows, ncols):
        # trusted constructor: rows already tuples of Fractions
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols, nrows):
        cols = [as_vector(c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("column length %d != %d" % (len(c), nrows))
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self):
        if self.nrows == 0:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    def apply(self, v):
        if len(v) != self.ncols:
            raise DimensionMismatch("vector of length %d for %dx%d matrix" % (len(v), self.nrows, self.ncols))
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch("cannot multiply %dx%d by %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [ZERO] * other.ncols
            for j, a in enumerate(r):
                if a:
                    for c, b in enumerate(orows[j]):
                        if b:
                            acc[c] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), other.ncols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = Q(c)
        return Matrix._raw(tuple(vscale(c, r) for r in self.rows), self.ncols)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return "Matrix(%dx%d: %s)" % (self.nrows, self.ncols, body)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row counts differ")
        return Matrix._raw(tuple(a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column counts differ")
        return Matrix._raw(self.rows + other.rows, self.ncols)

    @property
    def rank(self):
        return rref(self)[2]


def rref(m):
    """Reduced row echelon form: returns (R, pivot columns, rank).

    Pivots are taken at the leftmost nonzero column using the first row
    with a nonzero entry there.
    """
    rows = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = ONE / pr[c]
        if inv != ONE:
            pr = [x * inv if x else ZERO for x in pr]
            rows[r] = pr
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(x) for x in rows), nc), tuple(pivots), len(pivots)


def rank(m):
    return rref(m)[2]


def det(m):
    if m.nrows != m.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        p = rows[c][c]
        d *= p
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(m):
    n = m.nrows
    if m.ncols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    R, piv, rk = rref(m.hstack(Matrix.identity(n)))
    if rk < n or piv[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(tuple(r[n:] for r in R.rows), n)


def kernel(m):
    """Null space {x : m x = 0} as a Subspace of Q^cols."""
    R, pivots, rk = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -R.rows[i][f]
        basis.append(tuple(v))
    return Subspace(m.ncols, basis)


def image(m):
    """Column space of m as a Subspace of Q^rows."""
    return Subspace(m.nrows, m.columns())


def solve(m, b):
    """One solution x of m x = b (free variables set to zero), or None."""
    b = as_vector(b)
    if len(b) != m.nrows:
        raise DimensionMismatch("right-hand side length")
    aug = Matrix._raw(tuple(r + (bi,) for r, bi in zip(m.rows, b)), m.ncols + 1)
    R, pivots, rk = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for i, c in enumerate(pivots):
        x[c] = R.rows[i][m.ncols]
    return tuple(x)


def solve_matrix(m, rhs):
    """Solve m X = rhs column by column; raises if some column is unsolvable."""
    cols = []
    for c in rhs.columns():
        x = solve(m, c)
        if x is None:
            raise ValueError("system has no solution")
        cols.append(x)
    return Matrix.from_columns(cols, m.ncols) if cols else Matrix.zeros(m.ncols, 0)


class Subspace:
    """Subspace of Q^ambient_dim stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        vectors = [as_vector(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector of length %d in ambient dim %d" % (len(v), ambient_dim))
        if vectors:
            R, piv, rk = rref(Matrix._raw(tuple(vectors), ambient_dim))
            rows = R.rows[:rk]
        else:
            rows, piv = (), ()
        self.ambient_dim = ambient_dim
        self.basis = Matrix._raw(tuple(rows), ambient_dim)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n).rows)

    @property
    def dim(self):
        return self.basis.nrows

    def vectors(self):
        return list(self.basis.rows)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return "Subspace(dim %d in Q^%d)" % (self.dim, self.ambient_dim)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis.rows == other.basis.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dims %d and %d" % (self.ambient_dim, other.ambient_dim))

    def reduce(self, v):
        """Canonical representative of v modulo this subspace."""
        v = list(v)
        for row, c in zip(self.basis.rows, self.pivots):
            f = v[c]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return tuple(v)

    def __contains__(self, v):
        return is_zero_vector(self.reduce(as_vector(v)))

    def coordinates(self, v):
        """Coefficients of v in the stored basis; v must lie in the subspace."""
        v = as_vector(v)
        if not is_zero_vector(self.reduce(v)):
            raise ValueError("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def combine(self, coords):
        out = zero_vector(self.ambient_dim)
        for c, row in zip(coords, self.basis.rows):
            if c:
                out = vadd(out, vscale(c, row))
        return out

    def __add__(self, other):
        self._check(other)
        return Subspace(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other):
        """Intersection via the kernel of [A^T | -B^T]."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim)
        cols = self.vectors() + [vscale(-ONE, w) for w in other.vectors()]
        K = kernel(Matrix.from_columns(cols, self.ambient_dim))
        vecs = [self.combine(k[: self.dim]) for k in K.vectors()]
        return Subspace(self.ambient_dim, vecs)

    __and__ = intersect

    def issubset(self, other):
        self._check(other)
        return all(v in other for v in self.vectors())

    __le__ = issubset

    def quotient_dim(self, other):
        """dim(self / other); other must be contained in self."""
        if not other.issubset(self):
            raise NotWellDefined("quotient by a subspace that is not contained")
        return self.dim - other.dim

    def image_under(self, m):
        if m.ncols != self.ambient_dim:
            raise DimensionMismatch("map source dim %d vs ambient %d" % (m.ncols, self.ambient_dim))
        return Subspace(m.nrows, [m.apply(v) for v in self.vectors()])

    def annihilator(self):
        """All x with <b, x> = 0 for every basis row b."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(self.basis)

    def preimage(self, m, target=None):
        """{x in self : m x in target}; target defaults to the zero subspace."""
        if m.ncols != self.ambient_dim:
            raise DimensionMismatch("map source dim %d vs ambient %d" % (m.ncols, self.ambient_dim))
        if self.dim == 0:
            return Subspace(self.ambient_dim)
        B = Matrix.from_columns(self.vectors(), self.ambient_dim)
        MB = m @ B
        if target is not None:
            if target.ambient_dim != m.nrows:
                raise DimensionMismatch("target ambient dim")
            ann = target.annihilator()
            if ann.dim == 0:
                return self
            MB = Matrix._raw(ann.basis.rows, m.nrows) @ MB
        K = kernel(MB)
        return Subspace(self.ambient_dim, [B.apply(k) for k in K.vectors()])


class Quotient:
    """sub / mod with canonical representatives from the pivot-complement rule."""

    __slots__ = ("sub", "mod", "reps")

    def __init__(self, sub, mod):
        sub._check(mod)
        if not mod.issubset(sub):
            raise NotWellDefined("denominator not contained in numerator")
        self.sub = sub
        self.mod = mod
        self.reps = Subspace(sub.ambient_dim, [mod.reduce(v) for v in sub.vectors()])
        assert self.reps.dim == sub.dim - mod.dim

    @property
    def dim(self):
        return self.reps.dim

    @property
    def ambient_dim(self):
        return self.sub.ambient_dim

    def representatives(self):
        return self.reps.vectors()

    def coordinates(self, v):
        v = as_vector(v)
        if v not in self.sub:
            raise ValueError("vector not in numerator")
        return self.reps.coordinates(self.mod.reduce(v))

    def is_zero_class(self, v):
        return as_vector(v) in self.mod

    def __repr__(self):
        return "Quotient(%d/%d in Q^%d)" % (self.sub.dim, self.mod.dim, self.ambient_dim)


def as_quotient(q):
    """Accept a Quotient or a (sub, mod) pair."""
    return q if isinstance(q, Quotient) else Quotient(*q)


def induced_quotient_map(f, dom_sub, dom_mod, cod_sub, cod_mod):
    """Matrix of the map (dom_sub/dom_mod) -> (cod_sub/cod_mod) induced by f.

    Columns are indexed by the canonical representatives of the domain, rows
    by those of the codomain.  Raises NotWellDefined unless f maps dom_sub
    into cod_sub and dom_mod into cod_mod.
    """
    dom = Quotient(dom_sub, dom_mod)
    cod = Quotient(cod_sub, cod_mod)
    return quotient_map(f, dom, cod)


def quotient_map(f, dom, cod):
    if f.ncols != dom.ambient_dim or f.nrows != cod.ambient_dim:
        raise DimensionMismatch("map %dx%d for quotients in Q^%d -> Q^%d"
                                % (f.nrows, f.ncols, dom.ambient_dim, cod.ambient_dim))
    for v in dom.sub.vectors():
        if f.apply(v) not in cod.sub:
            raise NotWellDefined("map does not send numerator into numerator")
    for v in dom.mod.vectors():
        if f.apply(v) not in cod.mod:
            raise NotWellDefined("map does not send denominator into denominator")
    cols = [cod.coordinates(f.apply(r)) for r in dom.representatives()]
    if not cols:
        return Matrix.zeros(cod.dim, 0)
    return Matrix.from_columns(cols, cod.dim)


def exact_at(incoming, outgoing, dim_middle):
    """Exactness at a middle node from ranks: im(incoming) = ker(outgoing).

    Both are matrices in quotient coordinates; composability g f = 0 is
    required first, then rank(f) = dim - rank(g).
    """
    if incoming.nrows != dim_middle or outgoing.ncols != dim_middle:
        raise DimensionMismatch("maps do not meet at the middle node")
    return (outgoing @ incoming).is_zero() and rank(incoming) == dim_middle - rank(outgoing)
