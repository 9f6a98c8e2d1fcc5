"""Built-in example structures with their expected invariants.

Entries: abelian(n), heisenberg(n), inoue_solv(k, nlambda), kodaira_thurston.
Every entry is validated when loaded.  Each expected row is recomputed by
run_expected and tagged with where its value comes from: "published" for
published values, "computed" for values computed independently, or
"forced" for values forced by d = 0 or similar.
"""

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .cochain import build_model, cohomology, lichnerowicz
from .errors import BadParams, ParseError, UnknownEntry
from .exterior import Form
from .lcsops import block_complex_structure, metric_layer, validate_lcs
from .lefschetz import c_group, decompose, plus1_check, primitive_cohomology, split
from .ratlin import Q
from .report import Report
from .spectral import exponent_witness, spectral_sequence, stabilization_index

PROVENANCE = ("published", "computed", "forced")


@dataclass
class Expected:
    claim: str
    compute: Callable
    value: object
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError("unknown provenance %r" % self.provenance)


@dataclass
class CatalogEntry:
    name: str
    params: tuple
    model: object
    structures: dict
    metrics: dict = field(default_factory=dict)
    expected: list = field(default_factory=list)

    @property
    def structure(self):
        """The first (default) structure."""
        return next(iter(self.structures.values()))

    @property
    def label(self):
        if not self.params:
            return self.name
        return "%s(%s)" % (self.name, ",".join(str(p) for p in self.params))

    def metric(self, key=None):
        key = next(iter(self.structures)) if key is None else key
        return self.metrics.get(key)


def _finish(entry):
    for key, s in entry.structures.items():
        entry.metrics[key] = metric_layer(s, block_complex_structure(s.omega))
    return entry


def _dims(s, k):
    return tuple(cohomology(s.differential(k)).dims)


def _class_nonzero(s, k, text):
    """Whether the form is d_k-closed and not d_k-exact."""
    H = cohomology(s.differential(k))
    f = s.model.form(text)
    q = f.degree
    return H.is_closed(f, q) and not H.is_exact(f, q)


def abelian(n=2):
    n = int(n)
    if n < 1:
        raise BadParams("abelian(n) needs n >= 1")
    names = ["e%d" % (i + 1) for i in range(2 * n)]
    model = build_model(names, [])
    omega = model.form(" + ".join("e%d^e%d" % (2 * i + 1, 2 * i + 2) for i in range(n)))
    s = validate_lcs(model, omega, None, "abelian(%d)" % n)
    entry = _finish(CatalogEntry("abelian", (n,), model, {"omega": s}))
    dim = 2 * n
    ex = entry.expected
    ex.append(Expected("H^q(d) = C(2n, q)", lambda e: _dims(e.structure, 0),
                       tuple(comb(dim, q) for q in range(dim + 1)), "forced"))
    ex.append(Expected("dim H^0(P, d^+_0)", lambda e: primitive_cohomology(e.structure, 0, "plus").dims[0],
                       1, "forced"))
    ex.append(Expected("d^+ and d^- vanish for k=0",
                       lambda e: all(m.is_zero() for sp in [split(e.structure, 0)]
                                     for m in list(sp.plus.values()) + list(sp.minus.values())),
                       True, "forced"))
    ex.append(Expected("dim P^r", lambda e: tuple(decompose(e.structure).P[r].dim for r in range(dim + 1)),
                       tuple((comb(dim, r) - (comb(dim, r - 2) if r >= 2 else 0)) if r <= n else 0
                             for r in range(dim + 1)), "computed"))
    ex.append(Expected("dim C^n_0 = C(2n, n)", lambda e: c_group(e.structure, 0, n).dim_value,
                       comb(dim, n), "forced"))
    ex.append(Expected("stabilization index for k=0", lambda e: stabilization_index(e.structure, 0), 1, "forced"))
    if n >= 2:
        ex.append(Expected("dim H^1(P, d^+_1) = 2n", lambda e: primitive_cohomology(e.structure, 1, "plus").dims[1],
                           dim, "forced"))
        ex.append(Expected("E_1^{1,2} = dim P^1", lambda e: spectral_sequence(e.structure, 0).page(1).dims[(1, 2)],
                           dim, "forced"))
        ex.append(Expected("E_2^{1,1} and E_2^{0,0}",
                           lambda e: tuple(spectral_sequence(e.structure, 0).page(2).dims[pq] for pq in ((1, 1), (0, 0))),
                           (1, 1), "forced"))
    return entry


def heisenberg(n=1):
    """h_{2n+1} + R with Ω = d_α z = dz + α^z and θ = α."""
    n = int(n)
    if n < 1:
        raise BadParams("heisenberg(n) needs n >= 1")
    names = ["x%d" % (i + 1) for i in range(n)] + ["y%d" % (i + 1) for i in range(n)] + ["z", "a"]
    model = build_model(names, [("x%d" % (i + 1), "y%d" % (i + 1), {"z": 1}) for i in range(n)])
    z, a = model.generator("z"), model.generator("a")
    omega = lichnerowicz(model, a, 1).apply(z)
    s = validate_lcs(model, omega, a, "heisenberg(%d)" % n)
    entry = _finish(CatalogEntry("heisenberg", (n,), model, {"omega": s}))
    half = n + 1
    zero = tuple(0 for _ in range(2 * half + 1))
    ex = entry.expected
    for k in (1, 2, -1):
        ex.append(Expected("H^q(d_%dα) all vanish" % k, lambda e, k=k: _dims(e.structure, k), zero, "published"))
    ex.append(Expected("dim H^0(P, d^+_1)", lambda e: primitive_cohomology(e.structure, 1, "plus").dims[0],
                       0, "published"))
    # the E_1 terms below the top row do not all vanish: E_1^{p,p} = H^0(d_{k-p})
    # picks up constants at p = k, and Ω = d_1 z adds a class to E_1^{0,1}
    low = {1: {(0, 1): 1, (1, 1): 1}, 2: {(0, 1): 1, (0, 2): 5, (1, 1): 1, (1, 2): 5}}
    if n in low:
        ex.append(Expected("nonzero E_1^{p,q} with q <= n-1, k=1",
                           lambda e: {pq: v for pq, v in spectral_sequence(e.structure, 1).page(1).dims.items()
                                      if v and pq[1] <= half - 1}, low[n], "computed"))
    ex.append(Expected("stabilization index for k=1", lambda e: stabilization_index(e.structure, 1), 2, "published"))
    ex.append(Expected("E_2 vanishes for k=1",
                       lambda e: sum(spectral_sequence(e.structure, 1).page(2).dims.values()), 0, "published"))
    ex.append(Expected("minimal T with ω^T = d_T ρ", lambda e: exponent_witness(e.structure)[0], 1, "computed"))
    ex.append(Expected("dim C^0_1", lambda e: c_group(e.structure, 1, 0).dim_value, 1, "forced"))
    ex.append(Expected("H^1(P, d^+_2) equals H^1(d_2) = 0",
                       lambda e: (primitive_cohomology(e.structure, 2, "plus").dims[1], plus1_check(e.structure, 2).ok),
                       (0, True), "computed"))
    return entry


def inoue_solv(k=1, nlambda=1):
    """Solvable model of the Inoue surface: dα = -kα^γ, dβ = kβ^γ, dη = nλ α^β.

    Generators a, b, g, h stand for α, β, γ, η.  Two structures are shipped:
    ω_± = nλ α^β ± k γ^η with Lee forms ±kγ, so d_{±1} relative to each
    structure's own Lee form is d_{±kγ}.
    """
    k, nl = Q(k), Q(nlambda)
    if k == 0 or nl == 0:
        raise BadParams("inoue_solv needs k != 0 and nlambda != 0")
    model = build_model(["a", "b", "g", "h"],
                        [("a", "g", {"a": k}), ("b", "g", {"b": -k}), ("a", "b", {"h": -nl})])
    ab, gh, g = model.form("a^b"), model.form("g^h"), model.generator("g")
    plus = validate_lcs(model, ab.scale(nl) + gh.scale(k), g.scale(k), "inoue_solv+")
    minus = validate_lcs(model, ab.scale(nl) - gh.scale(k), g.scale(-k), "inoue_solv-")
    entry = _finish(CatalogEntry("inoue_solv", (k, nl), model, {"omega+": plus, "omega-": minus}))
    ex = entry.expected
    # d_{+1} and d_{-1} below are relative to ω_+'s Lee form kγ
    ex.append(Expected("dim H^1(d_-kγ)", lambda e: _dims(e.structure, -1)[1], 1, "published"))
    ex.append(Expected("α generates H^1(d_-kγ)", lambda e: _class_nonzero(e.structure, -1, "a"), True, "published"))
    ex.append(Expected("dim H^1(d_kγ)", lambda e: _dims(e.structure, 1)[1], 1, "published"))
    ex.append(Expected("β generates H^1(d_kγ)", lambda e: _class_nonzero(e.structure, 1, "b"), True, "published"))
    ex.append(Expected("α^η is a nonzero class in H^2(d_-kγ)", lambda e: _class_nonzero(e.structure, -1, "a^h"),
                       True, "published"))
    ex.append(Expected("β^η is a nonzero class in H^2(d_kγ)", lambda e: _class_nonzero(e.structure, 1, "b^h"),
                       True, "published"))
    ex.append(Expected("H^q(d_±kγ), forced by duality and Euler characteristic",
                       lambda e: (_dims(e.structure, -1), _dims(e.structure, 1)),
                       ((0, 1, 2, 1, 0), (0, 1, 2, 1, 0)), "computed"))
    for key in ("omega+", "omega-"):
        ex.append(Expected("dim H^1(P, d^+_1) for %s" % key,
                           lambda e, key=key: primitive_cohomology(e.structures[key], 1, "plus").dims[1],
                           2, "published"))
    ex.append(Expected("d^+_1 η = 0 and d^-_1 η = 1",
                       lambda e: (split(e.structure, 1).apply_plus(e.model.form("h")),
                                  split(e.structure, 1).apply_minus(e.model.form("h"))),
                       (Form.zero(4), Form.one(4)), "computed"))
    ex.append(Expected("d^+_1 α = 2k γ^α",
                       lambda e: split(e.structure, 1).apply_plus(e.model.form("a")),
                       model.form("g^a").scale(2 * k), "published"))
    ex.append(Expected("E_inf antidiagonal sums for k=1",
                       lambda e: tuple(spectral_sequence(e.structure, 1).limit_page().total(m) for m in range(5)),
                       (0, 1, 2, 1, 0), "computed"))
    ex.append(Expected("E_1^{0,1} for k=1", lambda e: spectral_sequence(e.structure, 1).page(1).dims[(0, 1)],
                       2, "published"))
    return entry


def kodaira_thurston():
    """Nilpotent 4-dim model: [X1, X2] = X3, ω = e1^e4 + e2^e3, θ = 0."""
    model = build_model(["e1", "e2", "e3", "e4"], [("e1", "e2", {"e3": 1})])
    s = validate_lcs(model, model.form("e1^e4 + e2^e3"), None, "kodaira_thurston")
    entry = _finish(CatalogEntry("kodaira_thurston", (), model, {"omega": s}))
    ex = entry.expected
    ex.append(Expected("Betti numbers", lambda e: _dims(e.structure, 0), (1, 3, 4, 3, 1), "computed"))
    ex.append(Expected("stabilization index at most 2", lambda e: stabilization_index(e.structure, 0) <= 2,
                       True, "computed"))
    ex.append(Expected("ω is not exact", lambda e: _class_nonzero(e.structure, 0, "e1^e4 + e2^e3"), True, "computed"))
    return entry


_BUILDERS = {
    "abelian": (abelian, 1),
    "heisenberg": (heisenberg, 1),
    "inoue_solv": (inoue_solv, 2),
    "kodaira_thurston": (kodaira_thurston, 0),
}


def names():
    return sorted(_BUILDERS)


def load(name, params=()):
    """Build and validate a catalog entry; params are rationals or integers."""
    if name not in _BUILDERS:
        raise UnknownEntry("unknown catalog entry %r (known: %s)" % (name, ", ".join(names())))
    fn, arity = _BUILDERS[name]
    params = tuple(params)
    if len(params) > arity:
        raise BadParams("%s takes at most %d parameters" % (name, arity))
    if name in ("abelian", "heisenberg"):
        for p in params:
            if Q(p).denominator != 1:
                raise BadParams("%s needs an integer parameter" % name)
        params = tuple(int(Q(p)) for p in params)
    return fn(*params)


def parse_entry(text):
    """'inoue_solv(1,1)' -> ('inoue_solv', ('1', '1'))."""
    text = text.strip()
    if "(" not in text:
        return text, ()
    if not text.endswith(")"):
        raise ParseError("malformed entry %r" % text)
    head, body = text[:-1].split("(", 1)
    args = tuple(a.strip() for a in body.split(",") if a.strip())
    return head.strip(), args


def standard_entries():
    """The entries exercised by the acceptance suite."""
    return [abelian(1), abelian(2), heisenberg(1), heisenberg(2), inoue_solv(1, 1), kodaira_thurston()]


def run_expected(entry):
    rep = Report("expected results for %s" % entry.label)
    rows = []
    for row in entry.expected:
        got = row.compute(entry)
        ok = got == row.value
        shown = _show(entry, got)
        rep.add("%s [%s]" % (row.claim, row.provenance), ok, "computed %s, expected %s" % (shown, _show(entry, row.value)))
        rows.append({"claim": row.claim, "computed": shown, "expected": _show(entry, row.value),
                     "provenance": row.provenance, "passed": ok})
    rep.data["rows"] = rows
    return rep


def _show(entry, v):
    if isinstance(v, Form):
        return entry.model.fmt(v)
    if isinstance(v, tuple):
        return "(" + ", ".join(_show(entry, x) for x in v) + ")" if any(isinstance(x, (Form, tuple)) for x in v) \
            else str(v)
    return str(v)
