"""Command-line interface.

    lcsnovikov check inoue_solv --params 1,1
    lcsnovikov cohomology "inoue_solv(1,1)" --theta g --k -1,1
    lcsnovikov spectral heisenberg --params 1 --k 1 --max-page 4 --json
    lcsnovikov catalog

A source is a catalog entry (optionally written with its parameters) or a
path to a JSON model file.  Exit status: 0 success, 1 validation failure or
failed check, 2 parse error, 3 internal error.
"""

import argparse
import json
import os
import random
import sys

from . import catalog
from .cochain import cohomology, lichnerowicz, load_model_file
from .errors import InternalError, LcsError, ParseError, ValidationError
from .exterior import Form
from .lcsops import (block_complex_structure, commutation_checks, leibniz_checks, metric_layer,
                     validate_lcs)
from .lefschetz import (decompose, duality_check, filtration_check, split_square_check, metric_identity_check,
                        plus1_check, primitive_cohomology, minus_adjoint_check, split)
from .ratlin import Q
from .report import Report
from .spectral import (NotStabilizedBy, e2_diagonal_shift, les_top_degree, les_primitive, pages,
                       random_conformal_checks, stabilization_report)

DEFAULT_SEED = 7


def parse_rationals(text):
    if text is None:
        return None
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise ParseError("empty rational list")
    return [Q(t) for t in items]


class Source:
    """A model with its available structures, loaded from the catalog or a file."""

    def __init__(self, label, model, structures, entry=None, forms=None):
        self.label = label
        self.model = model
        self.structures = structures
        self.entry = entry
        self.forms = forms or {}

    def structure(self, key=None):
        if not self.structures:
            raise ValidationError("%s defines no l.c.s. structure (add an 'omega' form)" % self.label)
        if key is None:
            return next(iter(self.structures.values()))
        if key not in self.structures:
            raise ValidationError("unknown structure %r (have: %s)" % (key, ", ".join(self.structures)))
        return self.structures[key]

    def metric(self, s):
        if self.entry is not None:
            for key, t in self.entry.structures.items():
                if t is s:
                    return self.entry.metrics.get(key)
        try:
            return metric_layer(s, block_complex_structure(s.omega))
        except (ValueError, ValidationError):
            return None

    def theta(self, text, s=None):
        """Resolve --theta: a form name from the file, or a literal over the generators."""
        if text is None:
            return s.theta if s is not None else Form.zero(self.model.dim)
        if text in self.forms:
            return self.forms[text]
        return self.model.form(text)


def load_source(text, params=None):
    if text.endswith(".json") or os.path.isfile(text):
        if not os.path.isfile(text):
            raise ParseError("no such model file: %s" % text)
        model, forms = load_model_file(text)
        structures = {}
        if "omega" in forms:
            structures["omega"] = validate_lcs(model, forms["omega"], forms.get("theta"), os.path.basename(text))
        return Source(os.path.basename(text), model, structures, forms=forms)
    name, inline = catalog.parse_entry(text)
    if inline and params:
        raise ParseError("parameters given both inline and with --params")
    vals = [Q(p) for p in inline] if inline else (params or [])
    entry = catalog.load(name, vals)
    return Source(entry.label, entry.model, entry.structures, entry=entry)


# commands -----------------------------------------------------------------------
# Each command returns (payload, text lines, ok).


def cmd_check(src, cfg):
    rep = Report("check %s" % src.label)
    rep.add("Jacobi identity and d^2 = 0", True, "dim %d" % src.model.dim)
    for key, s in src.structures.items():
        rep.add("%s: dθ = 0, dω = -ω^θ, ω^n != 0" % key, True,
                "ω = %s, θ = %s" % (src.model.fmt(s.omega), src.model.fmt(s.theta)))
        md = src.metric(s)
        rep.add("%s: Darboux metric layer" % key, md is not None)
    if src.entry is not None:
        rep.extend(catalog.run_expected(src.entry))
    return rep.as_dict(), rep.to_text(verbose=True).splitlines(), rep.ok


def _ks(cfg, default):
    return cfg.k if cfg.k is not None else [Q(x) for x in default]


def cmd_cohomology(src, cfg):
    s = src.structure(cfg.structure) if cfg.structure or src.structures else None
    theta = src.theta(cfg.theta, s)
    rows, lines = [], []
    lines.append("Novikov cohomology of %s, θ = %s" % (src.label, src.model.fmt(theta)))
    for k in _ks(cfg, (-1, 0, 1)):
        H = cohomology(lichnerowicz(src.model, theta, k))
        reps = {q: [src.model.fmt(f) for f in H.representatives(q)] for q in range(src.model.dim + 1)}
        rows.append({"k": str(k), "dims": list(H.dims), "representatives": {str(q): r for q, r in reps.items()}})
        lines.append("  k=%s  dims %s" % (k, " ".join(str(d) for d in H.dims)))
        for q in range(src.model.dim + 1):
            if reps[q]:
                lines.append("    H^%d: %s" % (q, ", ".join(reps[q])))
    return {"source": src.label, "theta": src.model.fmt(theta), "cohomology": rows}, lines, True


def cmd_primitive(src, cfg):
    s = src.structure(cfg.structure)
    rows, lines, ok = [], [], True
    lines.append("primitive cohomology of %s (%s)" % (src.label, s.name))
    for k in _ks(cfg, (-1, 0, 1)):
        rec = {"k": str(k)}
        for theory in ("plus", "star", "minus"):
            pc = primitive_cohomology(s, k, theory)
            rec[theory] = {str(q): d for q, d in sorted(pc.dims.items())}
            lines.append("  k=%s %-5s %s" % (k, theory, " ".join("%d" % d for _, d in sorted(pc.dims.items()))))
        p1 = plus1_check(s, k)
        rec["plus1"] = p1.as_dict()
        ok &= p1.ok
        for line in p1.to_text().splitlines():
            lines.append("    " + line)
        rows.append(rec)
    return {"source": src.label, "structure": s.name, "primitive": rows}, lines, ok


def cmd_spectral(src, cfg):
    s = src.structure(cfg.structure)
    rows, lines, ok = [], [], True
    records = []
    lines.append("Lefschetz spectral sequence of %s (%s)" % (src.label, s.name))
    md = src.metric(s)
    for k in _ks(cfg, (0, 1)):
        pgs = pages(s, k, cfg.max_page)
        for pg in pgs:
            for rec in pg.records():
                rec = dict(rec, k=str(k))
                records.append(rec)
            lines.append("  k=%s page %d: %s" % (k, pg.r, "  ".join(
                "(%d,%d):%d/%d" % (p, q, pg.dims[(p, q)], pg.rank(p, q)) for (p, q) in sorted(pg.dims))))
        try:
            st = stabilization_report(s, k, cfg.max_page if cfg.max_page is not None else None, md)
        except NotStabilizedBy as exc:
            st = Report("stabilization")
            st.add(str(exc), False)
        rows.append({"k": str(k), "stabilization": st.as_dict()})
        ok &= st.ok
        lines.append("  k=%s stabilization index %s" % (k, st.data.get("index", "none")))
        for line in st.to_text().splitlines()[1:]:
            lines.append("  " + line)
        if k != 0 or not s.theta:
            sh = e2_diagonal_shift(s, k)
            ok &= sh.ok
            rows[-1]["e2_shift"] = sh.as_dict()
            lines.append("  " + sh.summary())
    conf = random_conformal_checks(s, random.Random(cfg.seed), count=3)
    ok &= conf.ok
    lines.append("  " + conf.summary())
    return {"source": src.label, "structure": s.name, "records": records, "checks": rows,
            "conformal": conf.as_dict()}, lines, ok


def cmd_sequences(src, cfg):
    s = src.structure(cfg.structure)
    out, lines, ok = [], [], True
    lines.append("exact sequences of %s (%s)" % (src.label, s.name))
    for l in _ks(cfg, (0, 1)):
        for p in range(s.n):
            for seq in (les_primitive(s, l, p), les_top_degree(s, l, p)):
                rep = seq.as_report()
                ok &= rep.ok
                out.append(rep.as_dict())
                chain = " -> ".join("%s[%d]" % (n, d) for n, d in seq.nodes)
                lines.append("  " + rep.summary())
                lines.append("    " + chain)
                for c in rep.failures():
                    lines.append("    FAIL %s" % c.name)
    return {"source": src.label, "structure": s.name, "sequences": out}, lines, ok


def cmd_identities(src, cfg):
    s = src.structure(cfg.structure)
    rng = random.Random(cfg.seed)
    suites = [commutation_checks(s), leibniz_checks(s, rng, cfg.trials), decompose(s).report()]
    suites += [split(s, k).report() for k in range(-2, 3)]
    suites += [minus_adjoint_check(s), split_square_check(s), filtration_check(s, rng)]
    md = src.metric(s)
    if md is not None:
        suites += [metric_identity_check(s, md), duality_check(s)]
    ok = all(r.ok for r in suites)
    lines = ["identity suites for %s (%s)" % (src.label, s.name)]
    for r in suites:
        lines.extend("  " + line for line in r.to_text(verbose=False).splitlines())
    return {"source": src.label, "structure": s.name, "suites": [r.as_dict() for r in suites]}, lines, ok


def cmd_catalog(src, cfg):
    if src is None:
        lines = ["catalog entries:"] + ["  " + n for n in catalog.names()]
        return {"entries": catalog.names()}, lines, True
    rep = catalog.run_expected(src.entry)
    return rep.as_dict(), rep.to_text().splitlines(), rep.ok


COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "primitive": cmd_primitive,
    "spectral": cmd_spectral,
    "sequences": cmd_sequences,
    "identities": cmd_identities,
    "catalog": cmd_catalog,
}


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so usage errors map to the parse-error status."""

    def error(self, message):
        raise _ArgError(message)


def build_parser():
    ap = _Parser(prog="lcsnovikov", description="Exact invariants of l.c.s. Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("source", nargs="?" if name == "catalog" else None,
                       help="catalog entry such as inoue_solv(1,1), or a JSON model file")
        p.add_argument("--params", help="comma-separated rational parameters for a catalog entry")
        p.add_argument("--theta", help="Lee form name or literal, e.g. g or 2*a")
        p.add_argument("--k", help="comma-separated deformation parameters")
        p.add_argument("--structure", help="structure key, e.g. omega+ or omega-")
        p.add_argument("--max-page", type=int, dest="max_page")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", action="store_true")
    return ap


VALUE_FLAGS = ("--k", "--params", "--theta")


def _join_values(argv):
    """Turn "--k -1,1" into "--k=-1,1" so negative lists are not read as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append("%s=%s" % (tok, argv[i + 1]))
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, out=None):
    """Run one command; returns the exit status."""
    out = sys.stdout if out is None else out
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except _ArgError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    try:
        args.k = parse_rationals(args.k)
        params = parse_rationals(args.params) or []
        if args.max_page is not None and args.max_page < 0:
            raise ParseError("--max-page must be non-negative")
        src = load_source(args.source, params) if args.source else None
        payload, lines, ok = COMMANDS[args.command](src, args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except ValidationError as exc:
        print("validation error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1
    except InternalError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 3
    except LcsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except Exception as exc:  # anything else is a bug
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 3
    if args.json:
        payload = dict(payload, command=args.command, ok=bool(ok))
        out.write(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
        out.write("result: %s\n" % ("ok" if ok else "FAILED"))
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
