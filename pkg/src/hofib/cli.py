"""Command line interface.  Exit codes: 0 pass, 1 check failure, 2 schema,
resource or usage error."""

import argparse
import json
import os
import sys

from . import io
from ._util import ResourceLimit, SchemaError, to_json, to_tuple
from .algebra import linear_graph, validate_algebra
from .bicategory import (
    FiniteBicategory,
    LaxMorphism,
    bicategories_equal,
    identity_lax,
    validate_bicategory,
    validate_lax,
)
from .comma import (
    comma,
    comma2,
    comma2_symmetry,
    compare_translations,
    fibre,
    property_B_witness,
    translate,
)
from .corpus import generate_corpus
from .monoidal import (
    MonoidalCategory,
    monoidal_fibre,
    regularity_check,
    sigma_pair,
    tensor_translation,
    validate_monoidal,
)
from .nerve import (
    VARIANTS,
    adjunction_bijection,
    geometric_nerve,
    graph_adjunction,
    grothendieck_nerve,
    nerve_projection,
)
from .report import ValidationReport
from .simplicial import TruncatedSimplicialSet, kan_check, validate_simplicial
from .suites import SUITES, exit_code, first_failure, grothendieck_faces, run_suite
from .xmod import (
    CrossedModule,
    beta,
    compare_nerves,
    fibration_xmod,
    homotopy_pullback_xmod,
    loop_report,
    mv_basepoints,
    mv_check,
    pi,
    pullback_xmod,
    two_groupoid_report,
    validate_xmod,
    validate_xmod_morphism,
    weak_equivalence,
    xmod_nerve,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- inputs

def parse_id(text):
    """A cell id from the command line: JSON if it parses, else the raw string."""
    try:
        return to_tuple(json.loads(text))
    except json.JSONDecodeError:
        return text


_CORPUS = {}


def corpus(seed):
    if seed not in _CORPUS:
        _CORPUS[seed] = generate_corpus(seed)
    return _CORPUS[seed]


def load_structure(ref, kinds, seed=0):
    """A structure from a JSON file, or a corpus structure by name."""
    if os.path.exists(ref):
        x = io.load(ref)
        if not isinstance(x, kinds):
            raise UsageError(f"{ref}: expected {' or '.join(k.__name__ for k in kinds)}, "
                             f"got {type(x).__name__}")
        return x
    c = corpus(seed)
    pools = {FiniteBicategory: c.bicategories, CrossedModule: c.xmods + c.large_xmods,
             MonoidalCategory: c.monoidals}
    for k in kinds:
        for x in pools.get(k, []):
            if x.name == ref:
                return x
    names = sorted({x.name for k in kinds for x in pools.get(k, [])})
    raise UsageError(f"{ref!r} is neither a file nor a corpus name; corpus names: {', '.join(names)}")


def lax_pair(args):
    """(F lax, F' oplax) from --lax/--oplax files or a corpus comma pair index."""
    if args.pair is not None:
        pairs = corpus(args.seed).comma_pairs
        if not 0 <= args.pair < len(pairs):
            raise UsageError(f"--pair must be in 0..{len(pairs) - 1}")
        return pairs[args.pair]
    F = io.load(args.lax, "lax.v1") if getattr(args, "lax", None) else None
    Fp = io.load(args.oplax, "lax.v1") if getattr(args, "oplax", None) else None
    return F, Fp


def xmod_pair(args):
    pairs = corpus(args.seed).xmod_pairs
    for p in pairs:
        if p["name"] == args.pair:
            return p
    raise UsageError(f"unknown pair {args.pair!r}; choose from {', '.join(p['name'] for p in pairs)}")


def monoidal_pair(args):
    pairs = corpus(args.seed).monoidal_pairs
    if not 0 <= args.pair < len(pairs):
        raise UsageError(f"--pair must be in 0..{len(pairs) - 1}")
    return pairs[args.pair]


# ---------------------------------------------------------------- outputs

def plain(x):
    """JSON-ready data; non-string dict keys become their JSON text."""
    if isinstance(x, dict):
        return {k if isinstance(k, str) else json.dumps(to_json(k)): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return to_json(x)


def emit(args, rep, extra=None):
    """Print a report (human or JSON) and return its exit code."""
    if getattr(args, "json", False):
        doc = rep.as_json()
        if extra is not None:
            doc["details"] = plain(extra)
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(rep.summary())
        for v in rep.sorted_violations()[1:10]:
            print(f"  {v.kind} {v.axiom} at {to_json(v.instance)}")
        if extra is not None:
            for k, v in (extra.items() if isinstance(extra, dict) else [("result", extra)]):
                print(f"  {k}: {json.dumps(plain(v), sort_keys=True)}")
    return 2 if rep.limited else 0 if rep.ok else 1


def maybe_save(args, obj):
    if getattr(args, "output", None):
        io.save(obj, args.output)
        print(f"wrote {args.output}")


def sizes(B):
    return {"objects": len(B.objects), "cells1": len(B.cells1), "cells2": len(B.cells2)}


# ---------------------------------------------------------------- verbs

def cmd_validate(args):
    x = io.load(args.file)
    if isinstance(x, dict):
        rep = ValidationReport(f"report {args.file}")
        rep.check("status", (), x["status"], "valid")
        return emit(args, rep)
    if isinstance(x, FiniteBicategory):
        rep = validate_bicategory(x)
    elif isinstance(x, LaxMorphism):
        rep = validate_lax(x)
    elif isinstance(x, CrossedModule):
        rep = validate_xmod(x)
    elif isinstance(x, MonoidalCategory):
        rep = validate_monoidal(x)
    elif isinstance(x, TruncatedSimplicialSet):
        rep = validate_simplicial(x)
    else:
        rep = validate_algebra(x)
    return emit(args, rep)


def cmd_comma(args):
    F, Fp = lax_pair(args)
    if F is None or Fp is None:
        raise UsageError("give --lax and --oplax, or --pair")
    C, _ = comma(F, Fp)
    rep = validate_bicategory(C)
    maybe_save(args, C)
    return emit(args, rep, sizes(C))


def cmd_fibre(args):
    F, Fp = lax_pair(args)
    b = parse_id(args.object)
    if args.side == "left":
        if F is None:
            raise UsageError("give --lax or --pair")
        X = fibre(F, b)
    else:
        if Fp is None:
            raise UsageError("give --oplax or --pair")
        X = fibre(b, Fp)
    maybe_save(args, X)
    return emit(args, validate_bicategory(X), sizes(X))


def cmd_translate(args):
    F, Fp = lax_pair(args)
    cells = [parse_id(c) for c in args.cell]
    if len(cells) == 1:
        T = translate(cells[0], F) if args.side == "left" else translate(cells[0], Fp=Fp)
        return emit(args, validate_lax(T), {"claims": sorted(T.claims)})
    if len(cells) == 2:
        if F is None:
            raise UsageError("composite translations need --lax or --pair")
        out = compare_translations(cells[0], cells[1], F)
        return emit(args, out["report"], {"kind": out["kind"]})
    raise UsageError("give one --cell, or two for the composite comparison")


def cmd_comma2(args):
    if args.left and args.right:
        F, G = io.load(args.left, "lax.v1"), io.load(args.right, "lax.v1")
    else:
        B = load_structure(args.bicategory or "SZ2[w]", (FiniteBicategory,), args.seed)
        F = G = identity_lax(B)
    X, Y = comma2(F, G), comma2(G, F)
    rep = ValidationReport(f"double comma {X.name}")
    rep.extend(validate_bicategory(X))
    rep.extend(comma2_symmetry(X, Y), "symmetry.")
    maybe_save(args, X)
    return emit(args, rep, sizes(X))


def cmd_bprop(args):
    F, _ = lax_pair(args)
    if F is None:
        raise UsageError("give --lax or --pair")
    out = property_B_witness(F)
    verdict = "holds" if out["holds_sufficient"] else "inconclusive"
    return emit(args, ValidationReport(f"property B for {F.name}"),
                {"sufficient condition": verdict, "witnesses": out["witnesses"]})


def cmd_nerve(args):
    B = load_structure(args.bicategory, (FiniteBicategory,), args.seed)
    S = geometric_nerve(B, args.variant, args.dim)
    maybe_save(args, S)
    return emit(args, validate_simplicial(S), {"counts": [len(c) for c in S.cells]})


def cmd_gnerve(args):
    B = load_structure(args.bicategory, (FiniteBicategory,), args.seed)
    rep = grothendieck_nerve(B, args.dim).check(args.dim)
    rep.extend(grothendieck_faces(B, args.dim), "faces.")
    return emit(args, rep)


def cmd_adjunction(args):
    B = load_structure(args.bicategory, (FiniteBicategory,), args.seed)
    rep = ValidationReport(f"free-category adjunction into {B.name}")
    for p in range(args.dim + 1):
        rep.extend(graph_adjunction(linear_graph(p), B).check(), f"p{p}.")
        rep.extend(adjunction_bijection(B, p), f"bijection.p{p}.")
    rep.extend(nerve_projection(B, args.dim).check(args.dim), "R.")
    return emit(args, rep)


def cmd_kan(args):
    x = load_structure(args.structure, (TruncatedSimplicialSet, CrossedModule, FiniteBicategory), args.seed)
    if isinstance(x, CrossedModule):
        S = xmod_nerve(x, args.dim + 1)
    elif isinstance(x, FiniteBicategory):
        S = geometric_nerve(x, args.variant, args.dim + 1)
    else:
        S = x
    if S.N < args.dim + 1:
        raise UsageError(f"need a simplicial set truncated at {args.dim + 1} or more, got {S.N}")
    rep = ValidationReport(f"Kan condition for {S.name}")
    for n in range(1, args.dim + 1):
        for k in range(n + 1):
            rep.extend(kan_check(S, n, k))
    return emit(args, rep)


def cmd_xmod(args):
    v = args.verb
    if v in ("hpb", "pullback", "weq", "fib", "mv"):
        return xmod_pair_verb(args)
    if not args.xmod:
        raise UsageError(f"xmod {v} needs a crossed module file or corpus name")
    X = load_structure(args.xmod, (CrossedModule,), args.seed)
    if v == "validate":
        return emit(args, validate_xmod(X))
    if v == "beta":
        K = beta(X)
        rep = validate_bicategory(K)
        rep.extend(two_groupoid_report(K), "2-groupoid.")
        maybe_save(args, K)
        return emit(args, rep, sizes(K))
    if v == "pi":
        return emit(args, ValidationReport(f"homotopy of {X.name}"), pi(X).as_json())
    if v == "nerve":
        S = xmod_nerve(X, args.dim)
        maybe_save(args, S)
        return emit(args, validate_simplicial(S), {"counts": [len(c) for c in S.cells]})
    if v == "compare-nerves":
        return emit(args, compare_nerves(X, args.dim)[0])
    if v == "endo":
        rep = ValidationReport(f"loop groupoids of {X.name}")
        objs = [parse_id(args.object)] if args.object else X.P.objects
        for a in objs:
            rep.extend(loop_report(X, a), f"{to_json(a)}.")
        return emit(args, rep)
    raise UsageError(f"unknown xmod verb {v}")


def xmod_pair_verb(args):
    if not args.pair:
        raise UsageError(f"xmod {args.verb} needs --pair")
    p = xmod_pair(args)
    M, Mp = p["left"], p["right"]
    v = args.verb
    if v == "fib":
        legs = {"left": fibration_xmod(M), "right": fibration_xmod(Mp)}
        return emit(args, ValidationReport(f"fibration legs of {p['name']}"), legs)
    Z, pr, prp = homotopy_pullback_xmod(M, Mp)
    if v == "hpb":
        rep = validate_xmod(Z)
        rep.extend(validate_xmod_morphism(pr), "pi.")
        rep.extend(validate_xmod_morphism(prp), "pi'.")
        maybe_save(args, Z)
        return emit(args, rep, {"pi": pi(Z).as_json()})
    W, j = pullback_xmod(M, Mp, Z)
    if v == "pullback":
        rep = validate_xmod(W)
        rep.extend(validate_xmod_morphism(j), "canonical.")
        maybe_save(args, W)
        return emit(args, rep, {"pi": pi(W).as_json()})
    if v == "weq":
        ok, det = weak_equivalence(j)
        rep = ValidationReport(f"canonical morphism of {p['name']}")
        rep.check("weak-equivalence", (p["name"],), ok, True)
        return emit(args, rep, {k: det[k] for k in ("pi0_bijective", "pi1_iso", "pi2_iso")})
    rep = ValidationReport(f"Mayer-Vietoris for {p['name']}")
    for a, ap in mv_basepoints(M, Mp):
        rep.extend(mv_check(M, Mp, a, ap, Z), f"{to_json(a)},{to_json(ap)}.")
    return emit(args, rep)


def cmd_monoidal(args):
    v = args.verb
    if v in ("validate", "regularity"):
        if not args.monoidal:
            raise UsageError(f"monoidal {v} needs a file or corpus name")
        M = load_structure(args.monoidal, (MonoidalCategory,), args.seed)
        if v == "validate":
            return emit(args, validate_monoidal(M))
        r = regularity_check(M)
        return emit(args, ValidationReport(f"regularity of {M.name}"),
                    {"regular": r["regular"], "categorical_group": r["categorical_group"]})
    if args.pair is None:
        raise UsageError(f"monoidal {v} needs --pair")
    F, Fp = monoidal_pair(args)
    if v == "sigma":
        SF, SFp = sigma_pair(F, Fp)
        rep = ValidationReport(f"deloopings of {F.name}, {Fp.name}")
        rep.extend(validate_lax(SF), "SF.")
        rep.extend(validate_lax(SFp), "SF'.")
        return emit(args, rep)
    if v == "fibre":
        X = monoidal_fibre(F, Fp)
        rep = validate_bicategory(X)
        rep.check("equals-comma", (), bicategories_equal(X, comma(*sigma_pair(F, Fp))[0]), True)
        maybe_save(args, X)
        return emit(args, rep, sizes(X))
    if v == "translate":
        if args.object is None:
            raise UsageError("monoidal translate needs --object")
        G = F if args.side == "left" else Fp
        T = tensor_translation(parse_id(args.object), args.side, G)
        return emit(args, validate_lax(T))
    raise UsageError(f"unknown monoidal verb {v}")


def cmd_run(args):
    progress = None
    if not args.json:
        def progress(r):
            print(f"{r['status']:<16} {r['id']}  ({r['anchor']})", flush=True)
    doc = run_suite(args.suite, seed=args.seed, jobs=args.jobs, max_cells=args.max_cells,
                    inject=args.inject_fault, progress=progress)
    if args.json:
        sys.stdout.write(io.canonical(doc))
    else:
        if args.jobs > 1:
            for r in doc["checks"]:
                progress(r)
        s = doc["summary"]
        print(f"{doc['suite']} seed {doc['seed']}: {doc['status']} "
              f"({', '.join(f'{v} {k}' for k, v in s.items() if v)})")
        fail = first_failure(doc)
        if fail:
            print(f"first failure: {fail}")
    return exit_code(doc)


# ---------------------------------------------------------------- parser

def build_parser():
    ap = argparse.ArgumentParser(prog="hofib", description="Finite bicategories, comma bicategories, "
                                 "nerves and crossed modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0, help="corpus seed for corpus names and pairs")
        p.add_argument("--max-cells", type=int, default=None,
                       help="ceiling on enumerated candidates per dimension (also HOFIB_MAX_CELLS)")
        return p

    def lax_args(p):
        p.add_argument("--lax", help="lax.v1 file with a lax functor F")
        p.add_argument("--oplax", help="lax.v1 file with an oplax functor F'")
        p.add_argument("--pair", type=int, help="index of a corpus comma pair instead of files")
        p.add_argument("-o", "--output", help="write the result as JSON")

    p = verb("validate", cmd_validate, "validate a JSON structure file")
    p.add_argument("file")
    p = verb("comma", cmd_comma, "build and validate the comma bicategory F|F'")
    lax_args(p)
    p = verb("fibre", cmd_fibre, "homotopy fibre F|b (left) or b|F' (right)")
    lax_args(p)
    p.add_argument("--object", required=True)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = verb("translate", cmd_translate, "translation 2-functors along 1-cells")
    lax_args(p)
    p.add_argument("--cell", action="append", required=True, help="1-cell id; twice to compare a composite")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = verb("comma2", cmd_comma2, "double comma F|(G|B) and its symmetry")
    p.add_argument("--left", help="lax.v1 file F")
    p.add_argument("--right", help="lax.v1 file G")
    p.add_argument("--bicategory", help="bicategory for the identity pair when no files are given")
    p.add_argument("-o", "--output")
    p = verb("bprop", cmd_bprop, "sufficient condition for property B")
    lax_args(p)
    p = verb("nerve", cmd_nerve, "geometric nerve through a dimension")
    p.add_argument("bicategory", help="bicategory.v1 file or corpus name")
    p.add_argument("--variant", choices=VARIANTS, default="normal-lax")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("-o", "--output")
    p = verb("gnerve", cmd_gnerve, "Grothendieck nerve constraint checks")
    p.add_argument("bicategory")
    p.add_argument("--dim", type=int, default=3)
    p = verb("adjunction", cmd_adjunction, "free-category adjunction and projection checks")
    p.add_argument("bicategory")
    p.add_argument("--dim", type=int, default=3)
    p = verb("kan", cmd_kan, "horn filling for n <= dim")
    p.add_argument("structure", help="sset.v1, xmod.v1 or bicategory.v1 file, or a corpus name")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--variant", choices=VARIANTS, default="normal-lax")
    p = verb("xmod", cmd_xmod, "crossed module tools")
    p.add_argument("verb", choices=("validate", "beta", "hpb", "pullback", "pi", "weq", "fib", "nerve",
                                    "compare-nerves", "mv", "endo"))
    p.add_argument("xmod", nargs="?", help="xmod.v1 file or corpus name")
    p.add_argument("--pair", help="corpus crossed module pair (hpb, pullback, weq, fib, mv)")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--object")
    p.add_argument("-o", "--output")
    p = verb("monoidal", cmd_monoidal, "monoidal category tools")
    p.add_argument("verb", choices=("validate", "sigma", "fibre", "translate", "regularity"))
    p.add_argument("monoidal", nargs="?", help="monoidal.v1 file or corpus name")
    p.add_argument("--pair", type=int, help="corpus monoidal functor pair index")
    p.add_argument("--object")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("-o", "--output")
    p = verb("run", cmd_run, "run a check suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--inject-fault", choices=("pentagon",), default=None)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    saved = os.environ.get("HOFIB_MAX_CELLS")
    if getattr(args, "max_cells", None) is not None:
        os.environ["HOFIB_MAX_CELLS"] = str(args.max_cells)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"schema error at {exc.pointer or '/'}: {exc.detail}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except (UsageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop("HOFIB_MAX_CELLS", None)
        else:
            os.environ["HOFIB_MAX_CELLS"] = saved


if __name__ == "__main__":
    sys.exit(main())
