"""Lie algebra models and their (deformed) Chevalley-Eilenberg complexes.

Convention: [X_i, X_j] = sum_m c_ij^m X_m and
    d e^m = - sum_{i<j} c_ij^m e^i ^ e^j,
extended to Λ(g*) as an odd derivation.  The Lichnerowicz deformation is
d_k = d + k θ^, so a model plus a closed 1-form gives a one-parameter
family of complexes.  All cohomology here is of invariant forms.
"""

import json
from fractions import Fraction

from .errors import (DegreeMismatch, DimensionMismatch, InternalError, JacobiFailure,
                     NotSquareZero, ParseError, ThetaNotClosed)
from .exterior import Form, basis, format_form, operator_matrix, parse_form, wedge, wedge_matrix
from .ratlin import ONE, ZERO, Matrix, Q, Quotient, Subspace, image, inverse, kernel, solve


class LieModel:
    """Finite-dimensional Lie algebra with a named basis.

    structure maps pairs (i, j) with i < j to {m: c_ij^m}.  The Jacobi
    identity and d^2 = 0 on 1-forms are both checked on construction.
    """

    def __init__(self, names, structure):
        names = tuple(str(n) for n in names)
        if len(set(names)) != len(names):
            raise ParseError("duplicate generator names: %s" % (names,))
        dim = len(names)
        clean = {}
        for (i, j), coeffs in structure.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch("bracket indices (%d, %d) out of range" % (i, j))
            if i >= j:
                raise ValueError("structure keys must satisfy i < j, got (%d, %d)" % (i, j))
            row = {m: Q(c) for m, c in coeffs.items() if Q(c)}
            for m in row:
                if not 0 <= m < dim:
                    raise DimensionMismatch("bracket result index %d out of range" % m)
            if row:
                clean[(i, j)] = row
        self.names = names
        self.dim = dim
        self.structure = clean
        self._de = tuple(self._d_generator(m) for m in range(dim))
        self._cache = {}
        jac = self._jacobi_violation()
        sq = self._square_violation()
        if (jac is None) != (sq is None):
            raise InternalError("Jacobi check and d^2 = 0 on 1-forms disagree")
        if jac is not None:
            i, j, k = jac
            raise JacobiFailure(jac, "Jacobi identity fails for (%s, %s, %s)"
                                % (names[i], names[j], names[k]))

    def bracket_coeffs(self, i, j):
        """{m: c} with [X_i, X_j] = sum c X_m, for any ordered pair."""
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {m: -c for m, c in self.structure.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of two coordinate vectors."""
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for m, c in self.bracket_coeffs(i, j).items():
                    out[m] += a * b * c
        return tuple(out)

    def _jacobi_violation(self):
        e = [tuple(ONE if t == s else ZERO for t in range(self.dim)) for s in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    a = self.bracket(self.bracket(e[i], e[j]), e[k])
                    b = self.bracket(self.bracket(e[j], e[k]), e[i])
                    c = self.bracket(self.bracket(e[k], e[i]), e[j])
                    if any(x + y + z for x, y, z in zip(a, b, c)):
                        return (i, j, k)
        return None

    def _square_violation(self):
        for m in range(self.dim):
            if self.d(self._de[m]):
                return m
        return None

    def _d_generator(self, m):
        terms = {}
        for (i, j), row in self.structure.items():
            c = row.get(m)
            if c:
                terms[(i, j)] = -c
        return Form(self.dim, terms)

    def d(self, f):
        """Chevalley-Eilenberg differential of an arbitrary form."""
        if f.dim != self.dim:
            raise DimensionMismatch("form dim %d vs model dim %d" % (f.dim, self.dim))
        out = Form.zero(self.dim)
        for I, c in f.terms.items():
            for s, i in enumerate(I):
                de = self._de[i]
                if not de:
                    continue
                left = Form.monomial(self.dim, I[:s])
                right = Form.monomial(self.dim, I[s + 1:])
                term = wedge(wedge(left, de), right)
                out = out + term.scale(c if s % 2 == 0 else -c)
        return out

    def ce_matrix(self, q):
        key = ("ce", q)
        if key not in self._cache:
            self._cache[key] = operator_matrix(self.d, self.dim, q, q + 1)
        return self._cache[key]

    def trace_ad(self):
        return tuple(sum((self.bracket_coeffs(i, j).get(j, ZERO) for j in range(self.dim)), ZERO)
                     for i in range(self.dim))

    def is_unimodular(self):
        return not any(self.trace_ad())

    def is_abelian(self):
        return not self.structure

    def form(self, text):
        return parse_form(text, self.names)

    def fmt(self, f):
        return format_form(f, self.names)

    def generator(self, name):
        return Form.generator(self.dim, self.names.index(name))

    def __repr__(self):
        return "LieModel(%s; %d brackets)" % (", ".join(self.names), len(self.structure))


def build_model(names, brackets):
    """Validated LieModel from bracket data.

    brackets is either a mapping {(i, j): coeffs} or an iterable of
    (i, j, coeffs) triples; i, j may be indices or generator names and coeffs
    is {index-or-name: rational} or a full list of rationals.  Pairs given
    with i > j are flipped with a sign.
    """
    names = [str(n) for n in names]
    dim = len(names)
    lookup = {n: i for i, n in enumerate(names)}

    def idx(x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        if isinstance(x, str) and x in lookup:
            return lookup[x]
        raise ParseError("unknown generator %r" % (x,))

    items = brackets.items() if isinstance(brackets, dict) else brackets
    structure = {}
    for entry in items:
        if isinstance(brackets, dict):
            (i, j), coeffs = entry
        else:
            i, j, coeffs = entry
        i, j = idx(i), idx(j)
        if isinstance(coeffs, (list, tuple)):
            if len(coeffs) != dim:
                raise ParseError("coefficient list of length %d for dim %d" % (len(coeffs), dim))
            row = {m: Q(c) for m, c in enumerate(coeffs)}
        else:
            row = {idx(m): Q(c) for m, c in coeffs.items()}
        if i == j:
            if any(row.values()):
                raise ValueError("[X_i, X_i] must vanish")
            continue
        if i > j:
            i, j = j, i
            row = {m: -c for m, c in row.items()}
        if (i, j) in structure:
            raise ParseError("bracket (%s, %s) given twice" % (names[i], names[j]))
        structure[(i, j)] = row
    return LieModel(names, structure)


class Differential:
    """d_k = d + k θ^ on Λ(g*), stored as per-degree matrices D_q."""

    def __init__(self, model, theta, k, matrices):
        self.model = model
        self.theta = theta
        self.k = k
        self.matrices = tuple(matrices)

    @property
    def dim(self):
        return self.model.dim

    def matrix(self, q):
        """D_q: Λ^q -> Λ^{q+1}; empty outside 0..dim."""
        if q < 0:
            return Matrix.zeros(len(basis(self.dim, q + 1)), 0)
        if q > self.dim:
            return Matrix.zeros(0, 0)
        return self.matrices[q]

    def apply(self, f):
        out = Form.zero(self.dim)
        for q in f.degrees():
            out = out + Form.from_vector(self.dim, q + 1, self.matrix(q).apply(f.to_vector(q)))
        return out

    __call__ = apply

    def label(self):
        if not self.theta or not self.k:
            return "d"
        return "d + %s (%s)^" % (self.k, self.model.fmt(self.theta))

    def __repr__(self):
        return "Differential(%s)" % self.label()


def lichnerowicz(model, theta, k):
    """Differential d_k = d + k θ^ for a closed 1-form θ."""
    k = Q(k)
    if theta is None:
        theta = Form.zero(model.dim)
    if theta.dim != model.dim:
        raise DimensionMismatch("theta dim %d vs model dim %d" % (theta.dim, model.dim))
    if not theta.is_homogeneous(1):
        raise DegreeMismatch("theta must be a 1-form")
    if model.d(theta):
        raise ThetaNotClosed("d theta = %s != 0" % model.fmt(model.d(theta)))
    mats = []
    for q in range(model.dim + 1):
        D = model.ce_matrix(q)
        if k and theta:
            D = D + wedge_matrix(theta, q).scale(k)
        mats.append(D)
    for q in range(model.dim):
        if not (mats[q + 1] @ mats[q]).is_zero():
            raise NotSquareZero("d_k^2 != 0 on degree %d" % q)
    return Differential(model, theta, k, mats)


class CohomologyResult:
    """Per-degree cycles, boundaries and canonical representatives."""

    def __init__(self, d, cycles, boundaries):
        self.differential = d
        self.cycles = tuple(cycles)
        self.boundaries = tuple(boundaries)
        self.quotients = tuple(Quotient(z, b) for z, b in zip(self.cycles, self.boundaries))

    @property
    def dim(self):
        return self.differential.dim

    @property
    def dims(self):
        return tuple(q.dim for q in self.quotients)

    def representatives(self, q):
        return [Form.from_vector(self.dim, q, v) for v in self.quotients[q].representatives()]

    def class_coordinates(self, f, q=None):
        q = f.degree if q is None else q
        return self.quotients[q].coordinates(f.to_vector(q))

    def is_closed(self, f, q=None):
        q = f.degree if q is None else q
        return f.to_vector(q) in self.cycles[q]

    def is_exact(self, f, q=None):
        q = f.degree if q is None else q
        return f.to_vector(q) in self.boundaries[q]

    def euler_characteristic(self):
        return sum((-1) ** q * d for q, d in enumerate(self.dims))

    def __repr__(self):
        return "CohomologyResult(%s)" % (self.dims,)


def cohomology(d):
    n = d.dim
    cycles, bounds = [], []
    for q in range(n + 1):
        cycles.append(kernel(d.matrix(q)))
        bounds.append(image(d.matrix(q - 1)) if q > 0 else Subspace(1))
    res = CohomologyResult(d, cycles, bounds)
    chi_forms = sum((-1) ** q * len(basis(n, q)) for q in range(n + 1))
    if res.euler_characteristic() != chi_forms:
        raise InternalError("Euler characteristic mismatch")
    return res


def exactness_witness(d, f):
    """Some ρ with d ρ = f, or None when f is not exact.

    f must be homogeneous; the zero form has witness 0.
    """
    if not f:
        return Form.zero(d.dim)
    q = f.degree
    if q is None:
        raise DegreeMismatch("exactness_witness needs a homogeneous form")
    if q == 0:
        return None
    x = solve(d.matrix(q - 1), f.to_vector(q))
    if x is None:
        return None
    rho = Form.from_vector(d.dim, q - 1, x)
    assert d.apply(rho) == f
    return rho


# basis changes ---------------------------------------------------------------

def change_basis(model, P, names=None):
    """Model in the basis X'_a = sum_i P[i, a] X_i (P invertible)."""
    Pinv = inverse(P)
    n = model.dim
    structure = {}
    for a in range(n):
        for b in range(a + 1, n):
            u = P.column(a)
            v = P.column(b)
            br = model.bracket(u, v)
            new = Pinv.apply(br)
            row = {c: x for c, x in enumerate(new) if x}
            if row:
                structure[(a, b)] = row
    return LieModel(names or model.names, structure)


def transform_form(f, P):
    """Rewrite f in the dual basis of X'_a = sum_i P[i, a] X_i.

    Since e^m = sum_a P[m, a] e'^a, each generator is substituted.
    """
    n = f.dim
    gens = [Form(n, {(a,): P[m, a] for a in range(n)}) for m in range(n)]
    out = Form.zero(n)
    for I, c in f.terms.items():
        term = Form.scalar(n, c)
        for i in I:
            term = wedge(term, gens[i])
        out = out + term
    return out


# model documents ------------------------------------------------------------

def model_from_document(doc):
    """(LieModel, {name: Form}) from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    if "names" not in doc:
        raise ParseError("model document lacks 'names'")
    names = doc["names"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError("'names' must be a list of strings")
    triples = []
    for b in doc.get("brackets", []):
        if not isinstance(b, dict) or not {"i", "j", "coeffs"} <= set(b):
            raise ParseError("each bracket needs fields i, j, coeffs")
        coeffs = b["coeffs"]
        if isinstance(coeffs, dict):
            coeffs = {k: _json_rational(v) for k, v in coeffs.items()}
        elif isinstance(coeffs, list):
            coeffs = [_json_rational(v) for v in coeffs]
        else:
            raise ParseError("coeffs must be an object or a list")
        triples.append((b["i"], b["j"], coeffs))
    model = build_model(names, triples)
    forms = {}
    for key, lit in (doc.get("forms") or {}).items():
        if not isinstance(lit, str):
            raise ParseError("form %r must be a literal string" % key)
        forms[key] = parse_form(lit, model.names)
    return model, forms


def _json_rational(v):
    if isinstance(v, float):
        raise ParseError("decimal coefficient %r; write rationals as \"p/q\"" % (v,))
    return Q(v) if not isinstance(v, Fraction) else v


def load_model_file(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %s: %s" % (path, exc)) from exc
    return model_from_document(doc)
