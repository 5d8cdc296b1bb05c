"""Command line front end producing canonical JSON reports.

Reports are emitted as canonical JSON (sorted keys, tight separators, one
trailing newline) so replaying an experiment spec yields byte-identical
output.  Wall-clock time never enters the canonical body: the optional
--timing flag adds a "timing" sidecar key which report_diff ignores.

Exit codes: 0 completed (including "none found" outcomes), 2 bad usage or
invalid input, 3 node budget exceeded where the operation cannot report it
in-band.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import colourings, matgen, search
from .digits import GapPattern, base_digits, find_gaps, gap_residue, negabase_digits
from .ratcore import DimensionMismatch, FiniteMatrix, entry_ratio, image, is_natural_image
from .seqs import coeff_seq

SCHEMA_VERSION = 1


@dataclass
class ExperimentSpec:
    command: str
    params: dict


def parse_rational(text):
    t = str(text).strip()
    if "/" in t:
        num, den = t.split("/", 1)
        return Fraction(int(num), int(den))
    return int(t)


def parse_int_list(text):
    return [int(t) for t in str(text).split(",") if t.strip() != ""]


def rat_obj(v):
    num, den = entry_ratio(v)
    return [num, den]


def colour_obj(c):
    if isinstance(c, tuple):
        return [colour_obj(v) for v in c]
    if isinstance(c, Fraction):
        return rat_obj(c)
    return c


def canonical(report):
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def parse_family(slug):
    """Build a matrix from a family slug like f:3, mt:2,1:4 or deuber:2,2,1."""
    parts = str(slug).split(":")
    name, args = parts[0], parts[1:]

    def ints(i):
        return parse_int_list(args[i])

    try:
        if name == "schur":
            return matgen.schur_matrix()
        if name == "f":
            return matgen.finite_sums_matrix(int(args[0]))
        if name == "fprime":
            budget = int(args[1]) if len(args) > 1 else None
            return matgen.pairwise_sum_rows(int(args[0]), budget)
        if name == "mt":
            budget = int(args[2]) if len(args) > 2 else None
            return matgen.milliken_taylor_rows(ints(0), int(args[1]), budget)
        if name == "band":
            width = int(args[2]) if len(args) > 2 else None
            return matgen.band_matrix(ints(0), int(args[1]), width)
        if name == "mpc":
            m, p, c = ints(0)
            return matgen.mpc_matrix(m, p, c)
        if name == "deuber":
            m, p, c = ints(0)
            return matgen.deuber_matrix(m, p, c)
        if name == "doubling":
            return matgen.doubling_block_matrix(int(args[0]))
        if name == "doublingsys":
            return matgen.doubling_system(int(args[0]))
        if name == "grouped":
            return matgen.grouped_sum_matrix(ints(0))
        if name == "rowsum":
            entry_bound = int(args[2]) if len(args) > 2 else None
            budget = int(args[3]) if len(args) > 3 else None
            return matgen.constant_rowsum_rows(int(args[0]), int(args[1]), entry_bound, budget)
        if name == "identity":
            return matgen.identity_matrix(int(args[0]))
        if name == "ap":
            return matgen.arithmetic_progression_matrix(int(args[0]))
    except (IndexError, TypeError) as e:
        raise ValueError("bad arguments for family %r: %s" % (name, e))
    raise ValueError("unknown matrix family %r" % name)


def load_matrix(path):
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        return FiniteMatrix.from_dense(obj)
    if "dense" in obj:
        return FiniteMatrix.from_dense(obj["dense"], obj.get("width"))
    return FiniteMatrix.from_obj(obj)


def _matrix_from(params, family_key="family", file_key="matrixFile"):
    if params.get(family_key):
        return parse_family(params[family_key])
    if params.get(file_key):
        return load_matrix(params[file_key])
    raise ValueError("need --%s or a matrix file" % family_key.lower())


def parse_colouring(slug):
    parts = str(slug).split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "mod":
            return colourings.mod_colouring(int(args[0]))
        if name == "primeexp":
            return colourings.prime_exponent_colouring(
                parse_rational(args[0]), parse_rational(args[1])
            )
        if name == "alpha":
            return colourings.ratio_colouring(parse_rational(args[0]))
        if name == "digitprofile":
            return colourings.digit_profile_colouring(int(args[0]))
        if name == "notrapid":
            return colourings.negabase_gap_colouring(int(args[0]), parse_int_list(args[1]))
    except (IndexError, TypeError) as e:
        raise ValueError("bad arguments for colouring %r: %s" % (name, e))
    raise ValueError("unknown colouring %r" % name)


def _search_config(params):
    return search.SearchConfig(
        variable_bound=params["bound"],
        min_entry=params.get("minEntry", 1),
        distinct_entries=params.get("distinctEntries", False),
        distinct_image=params.get("distinctImage", False),
        node_budget=params.get("budget") or search.node_budget_default(),
    )


def _h_gen(params):
    M = _matrix_from(params)
    return {"outcome": "ok", "matrix": M.to_obj(), "rowCount": len(M.rows)}


def _h_image(params):
    M = _matrix_from(params)
    x = [parse_rational(t) for t in params["x"]]
    img = image(M, x)
    return {
        "outcome": "ok",
        "values": [rat_obj(v) for v in img.sorted_values()],
        "provenance": {str(v): img.provenance[v] for v in img.values},
        "natural": is_natural_image(M, x),
    }


def _h_digits(params):
    base = params["base"]
    if abs(base) < 2:
        raise ValueError("|base| must be at least 2")
    gap = None
    if params.get("gap"):
        g = parse_int_list(params["gap"])
        if len(g) != 5:
            raise ValueError("gap pattern needs five digits: upper,l0,l1,l2,l3")
        gap = GapPattern(g[0], tuple(g[1:]))
    out = []
    for x in params["numbers"]:
        e = negabase_digits(x, -base) if base < 0 else base_digits(x, base)
        rec = {
            "x": x,
            "digits": list(e.digits),
            "support": list(e.support()),
            "maxSupport": e.max_support(),
            "minSupport": e.min_support(),
        }
        if base < 0:
            rec["leastSignificantDigit"] = e.digit(e.min_support())
            if gap is not None:
                rec["gapSites"] = sorted(list(s) for s in find_gaps(x, -base, gap))
                rec["gapResidue"] = gap_residue(x, -base, gap)
        out.append(rec)
    return {"outcome": "ok", "expansions": out}


def _h_colour(params):
    col = parse_colouring(params["colouring"])
    xs = params["numbers"]
    cols = [colour_obj(col.colour(x)) for x in xs]
    common = colourings.colour_image(col, xs) if xs else None
    return {
        "outcome": "ok",
        "colours": cols,
        "common": colour_obj(common) if common is not None else None,
        "reserved": [col.is_reserved(col.colour(x)) for x in xs],
    }


def _search_report(res):
    rep = {"nodes": res.nodes, "exhausted": res.exhausted}
    if res.witness is None:
        rep["outcome"] = "none-within-bounds" if res.exhausted else "budget"
        rep["witness"] = None
    else:
        rep["outcome"] = "witness"
        rep["witness"] = {
            "assignment": list(res.witness.assignment),
            "image": [rat_obj(v) for v in res.witness.image.sorted_values()],
            "colour": colour_obj(res.witness.colour),
        }
    return rep


def _h_search(params):
    M = _matrix_from(params)
    col = parse_colouring(params["colouring"])
    res = search.find_monochromatic(M, col, _search_config(params), params.get("threads", 1))
    return _search_report(res)


def _h_force(params):
    M = _matrix_from(params)
    res = search.forcing_bound(
        M, params["colours"], params["nmax"], params.get("budget")
    )
    return {
        "outcome": "forced" if res.bound is not None else "not-forced-within-nmax",
        "bound": res.bound,
        "certificate": list(res.certificate),
        "nodes": res.nodes,
    }


def _h_separate(params):
    col = parse_colouring(params["colouring"])
    rep = search.check_separation(
        col,
        params["a"],
        params["b"],
        params["prefix"],
        params["bound"],
        params.get("budget"),
    )
    out = {"outcome": rep.outcome, "nodes": rep.nodes}
    out["ratio"] = rat_obj(rep.ratio) if rep.ratio is not None else None
    if rep.witness is None:
        out["witness"] = None
    else:
        out["witness"] = {
            "x": list(rep.witness["x"]),
            "y": list(rep.witness["y"]),
            "colour": colour_obj(rep.witness["colour"]),
        }
    return out


def _h_dominate(params):
    A = _matrix_from(params, "aFamily", "aFile")
    B = _matrix_from(params, "bFamily", "bFile")
    x = [parse_rational(t) for t in params["x"]]
    res = search.find_dominated_assignment(A, B, x, params["ybound"], params.get("budget"))
    return _search_report(res)


def _h_certify(params):
    A = _matrix_from(params, "aFamily", "aFile")
    B = _matrix_from(params, "bFamily", "bFile")
    C = _matrix_from(params, "cFamily", "cFile")
    rep = search.certify_ipr(A, B, C)
    return {
        "outcome": "certified" if rep.certified else "not-certified",
        "certified": rep.certified,
        "reason": rep.reason,
    }


def _h_rapid(params):
    p = params["p"]
    if params.get("make"):
        seq = search.make_rapid(p, params["seeds"])
        return {"outcome": "ok", "sequence": list(seq)}
    return {"outcome": "ok", "rapid": search.is_rapid(params["x"], p)}


def _h_translate(params):
    col = parse_colouring(params["colouring"])
    res = search.translate_witness(
        col,
        params["a"],
        params["prefix"],
        params["bbound"],
        params["xbound"],
        params.get("budget"),
        params.get("threads", 1),
    )
    a = coeff_seq(params["a"])
    out = {
        "nodes": res.nodes,
        "exhausted": res.exhausted,
        "lastCoefficientOne": a[len(a) - 1] == 1,
    }
    if res.witness is None:
        out["outcome"] = "none-within-bounds" if res.exhausted else "budget"
        out["witness"] = None
    else:
        b, x, colour = res.witness
        out["outcome"] = "witness"
        out["witness"] = {"b": b, "x": list(x), "colour": colour_obj(colour)}
    return out


_HANDLERS = {
    "gen": _h_gen,
    "image": _h_image,
    "digits": _h_digits,
    "colour": _h_colour,
    "search": _h_search,
    "force": _h_force,
    "separate": _h_separate,
    "dominate": _h_dominate,
    "certify": _h_certify,
    "rapid": _h_rapid,
    "translate-search": _h_translate,
}


def run(spec, timing=False):
    """Execute an experiment spec and return the report dict."""
    handler = _HANDLERS.get(spec.command)
    if handler is None:
        raise ValueError("unknown command %r" % spec.command)
    start = time.monotonic()
    body = handler(spec.params)
    report = {"schemaVersion": SCHEMA_VERSION, "command": spec.command, "params": spec.params}
    report.update(body)
    if timing:
        report["timing"] = {"wallMs": int((time.monotonic() - start) * 1000)}
    return report


def report_diff(left, right):
    """Structured differences between two reports, ignoring timing sidecars.

    Raises on schema version mismatch; two reports from different schema
    generations are not comparable.
    """
    if left.get("schemaVersion") != right.get("schemaVersion"):
        raise ValueError(
            "schema mismatch: %r vs %r"
            % (left.get("schemaVersion"), right.get("schemaVersion"))
        )
    diffs = []

    def walk(path, l, r):
        if isinstance(l, dict) and isinstance(r, dict):
            for k in sorted(set(l) | set(r)):
                if not path and k == "timing":
                    continue
                walk(path + "/" + k, l.get(k, "<absent>"), r.get(k, "<absent>"))
            return
        if isinstance(l, list) and isinstance(r, list):
            if len(l) != len(r):
                diffs.append({"path": path + "/length", "left": len(l), "right": len(r)})
                return
            for i, (lv, rv) in enumerate(zip(l, r)):
                walk("%s/%d" % (path, i), lv, rv)
            return
        if l != r:
            diffs.append({"path": path or "/", "left": l, "right": r})

    walk("", left, right)
    return diffs


def _add_matrix_args(sp, prefix=""):
    if prefix:
        sp.add_argument("--%s-family" % prefix)
        sp.add_argument("--%s-file" % prefix)
    else:
        sp.add_argument("--family")
        sp.add_argument("--matrix-file")


def _build_parser():
    ap = argparse.ArgumentParser(prog="ripr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a matrix family")
    g.add_argument("family", help="family name or full slug (f, fprime, mt, band, ...)")
    g.add_argument("--width", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--coeffs")
    g.add_argument("--m", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--c", type=int)
    g.add_argument("--total", type=int)
    g.add_argument("--entry-bound", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)

    im = sub.add_parser("image", help="image of a matrix at an assignment")
    _add_matrix_args(im)
    im.add_argument("--x", required=True, help="comma separated entries, rationals allowed")

    d = sub.add_parser("digits", help="digit expansions, optionally with gap statistics")
    d.add_argument("--base", type=int, required=True, help="negative for negabase")
    d.add_argument("--gap", help="pattern upper,l0,l1,l2,l3 (negabase only)")
    d.add_argument("numbers", nargs="+", type=int)

    c = sub.add_parser("colour", help="evaluate a colouring")
    c.add_argument("--kind", required=True,
                   choices=["mod", "primeexp", "alpha", "digitprofile", "notrapid"])
    c.add_argument("--modulus", type=int)
    c.add_argument("--b")
    c.add_argument("--c")
    c.add_argument("--ratio")
    c.add_argument("--p", type=int)
    c.add_argument("--coeffs")
    c.add_argument("numbers", nargs="+", type=int)

    s = sub.add_parser("search", help="least monochromatic-image assignment")
    _add_matrix_args(s)
    s.add_argument("--colouring", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--min-entry", type=int, default=1)
    s.add_argument("--distinct-entries", action="store_true")
    s.add_argument("--distinct-image", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--budget", type=int)

    f = sub.add_parser("force", help="least n forcing a monochromatic image")
    _add_matrix_args(f)
    f.add_argument("--colours", type=int, required=True)
    f.add_argument("--nmax", type=int, required=True)
    f.add_argument("--budget", type=int)

    se = sub.add_parser("separate", help="search for a joint monochromatic witness")
    se.add_argument("--a", required=True, help="comma separated coefficients")
    se.add_argument("--b", required=True)
    se.add_argument("--colouring", required=True)
    se.add_argument("--prefix", type=int, required=True)
    se.add_argument("--bound", type=int, required=True)
    se.add_argument("--budget", type=int)

    do = sub.add_parser("dominate", help="probe for an image inside a target image")
    do.add_argument("--a-family")
    do.add_argument("--a-file")
    do.add_argument("--b-family")
    do.add_argument("--b-file")
    do.add_argument("--x", required=True)
    do.add_argument("--ybound", type=int, required=True)
    do.add_argument("--budget", type=int)

    ce = sub.add_parser("certify", help="check a linear image-partition-regularity witness")
    for pfx in ("a", "b", "c"):
        ce.add_argument("--%s-family" % pfx)
        ce.add_argument("--%s-file" % pfx)

    ra = sub.add_parser("rapid", help="check or build rapidly growing sequences")
    ra.add_argument("--p", type=int, required=True)
    ra.add_argument("--x")
    ra.add_argument("--make", action="store_true")
    ra.add_argument("--seeds")

    tr = sub.add_parser("translate-search", help="least translated joint witness")
    tr.add_argument("--a", required=True)
    tr.add_argument("--colouring", required=True)
    tr.add_argument("--prefix", type=int, required=True)
    tr.add_argument("--bbound", type=int, required=True)
    tr.add_argument("--xbound", type=int, required=True)
    tr.add_argument("--threads", type=int, default=1)
    tr.add_argument("--budget", type=int)

    df = sub.add_parser("diff", help="compare two reports")
    df.add_argument("left")
    df.add_argument("right")

    for name, sp in sub.choices.items():
        sp.add_argument("--out", help="also write the report to this file")
        sp.add_argument("--timing", action="store_true", help="add a wall-clock sidecar")
    return ap


def _gen_slug(args):
    fam = args.family
    if ":" in fam:
        return fam
    need = lambda v, flag: (_die("%s requires %s" % (fam, flag)) if v is None else v)
    if fam == "schur":
        return "schur"
    if fam == "f":
        return "f:%d" % need(args.width, "--width")
    if fam == "fprime":
        slug = "fprime:%d" % need(args.width, "--width")
        return slug + (":%d" % args.rows if args.rows is not None else "")
    if fam == "mt":
        slug = "mt:%s:%d" % (need(args.coeffs, "--coeffs"), need(args.width, "--width"))
        return slug + (":%d" % args.rows if args.rows is not None else "")
    if fam == "band":
        slug = "band:%s:%d" % (need(args.coeffs, "--coeffs"), need(args.rows, "--rows"))
        return slug + (":%d" % args.width if args.width is not None else "")
    if fam in ("mpc", "deuber"):
        return "%s:%d,%d,%d" % (
            fam,
            need(args.m, "--m"),
            need(args.p, "--p"),
            need(args.c, "--c"),
        )
    if fam in ("doubling", "doublingsys", "identity"):
        return "%s:%d" % (fam, need(args.n, "--n"))
    if fam == "grouped":
        return "grouped:%s" % need(args.coeffs, "--coeffs")
    if fam == "rowsum":
        slug = "rowsum:%d:%d" % (need(args.total, "--total"), need(args.width, "--width"))
        if args.entry_bound is not None:
            slug += ":%d" % args.entry_bound
            if args.rows is not None:
                slug += ":%d" % args.rows
        return slug
    if fam == "ap":
        return "ap:%d" % need(args.k, "--k")
    _die("unknown family %r" % fam)


def _colour_slug(args):
    k = args.kind
    need = lambda v, flag: (_die("%s requires %s" % (k, flag)) if v is None else v)
    if k == "mod":
        return "mod:%d" % need(args.modulus, "--modulus")
    if k == "primeexp":
        return "primeexp:%s:%s" % (need(args.b, "--b"), need(args.c, "--c"))
    if k == "alpha":
        return "alpha:%s" % need(args.ratio, "--ratio")
    if k == "digitprofile":
        return "digitprofile:%d" % need(args.p, "--p")
    return "notrapid:%d:%s" % (need(args.p, "--p"), need(args.coeffs, "--coeffs"))


class _UsageError(Exception):
    pass


def _die(msg):
    raise _UsageError(msg)


def _spec_from_args(args):
    cmd = args.command
    if cmd == "gen":
        return ExperimentSpec("gen", {"family": _gen_slug(args)})
    if cmd == "image":
        return ExperimentSpec(
            "image",
            {
                "family": args.family,
                "matrixFile": args.matrix_file,
                "x": str(args.x).split(","),
            },
        )
    if cmd == "digits":
        return ExperimentSpec(
            "digits", {"base": args.base, "numbers": args.numbers, "gap": args.gap}
        )
    if cmd == "colour":
        return ExperimentSpec(
            "colour", {"colouring": _colour_slug(args), "numbers": args.numbers}
        )
    if cmd == "search":
        return ExperimentSpec(
            "search",
            {
                "family": args.family,
                "matrixFile": args.matrix_file,
                "colouring": args.colouring,
                "bound": args.bound,
                "minEntry": args.min_entry,
                "distinctEntries": args.distinct_entries,
                "distinctImage": args.distinct_image,
                "threads": args.threads,
                "budget": args.budget,
            },
        )
    if cmd == "force":
        return ExperimentSpec(
            "force",
            {
                "family": args.family,
                "matrixFile": args.matrix_file,
                "colours": args.colours,
                "nmax": args.nmax,
                "budget": args.budget,
            },
        )
    if cmd == "separate":
        return ExperimentSpec(
            "separate",
            {
                "a": parse_int_list(args.a),
                "b": parse_int_list(args.b),
                "colouring": args.colouring,
                "prefix": args.prefix,
                "bound": args.bound,
                "budget": args.budget,
            },
        )
    if cmd == "dominate":
        return ExperimentSpec(
            "dominate",
            {
                "aFamily": args.a_family,
                "aFile": args.a_file,
                "bFamily": args.b_family,
                "bFile": args.b_file,
                "x": str(args.x).split(","),
                "ybound": args.ybound,
                "budget": args.budget,
            },
        )
    if cmd == "certify":
        return ExperimentSpec(
            "certify",
            {
                "aFamily": args.a_family,
                "aFile": args.a_file,
                "bFamily": args.b_family,
                "bFile": args.b_file,
                "cFamily": args.c_family,
                "cFile": args.c_file,
            },
        )
    if cmd == "rapid":
        params = {"p": args.p, "make": args.make}
        if args.make:
            if not args.seeds:
                _die("--make requires --seeds")
            params["seeds"] = parse_int_list(args.seeds)
        else:
            if not args.x:
                _die("rapid requires --x (or --make with --seeds)")
            params["x"] = parse_int_list(args.x)
        return ExperimentSpec("rapid", params)
    if cmd == "translate-search":
        return ExperimentSpec(
            "translate-search",
            {
                "a": parse_int_list(args.a),
                "colouring": args.colouring,
                "prefix": args.prefix,
                "bbound": args.bbound,
                "xbound": args.xbound,
                "threads": args.threads,
                "budget": args.budget,
            },
        )
    _die("unknown command %r" % cmd)


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "diff":
            with open(args.left) as fh:
                left = json.load(fh)
            with open(args.right) as fh:
                right = json.load(fh)
            diffs = report_diff(left, right)
            report = {
                "schemaVersion": SCHEMA_VERSION,
                "command": "diff",
                "params": {"left": args.left, "right": args.right},
                "identical": not diffs,
                "differences": diffs,
                "outcome": "identical" if not diffs else "different",
            }
        else:
            spec = _spec_from_args(args)
            report = run(spec, timing=args.timing)
    except (_UsageError, ValueError, DimensionMismatch, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except search.BudgetExceeded as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return 3
    text = canonical(report)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
