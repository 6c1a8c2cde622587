"""Command-line interface.

Exit codes: 0 success, 1 mathematical validation failure (a report is
printed), 2 parse or schema error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import formats as fm
from .category import compose_morphisms, validate_category
from .errors import HomschurError
from .graded import euler_characteristic, homology_betti, validate_complex
from .homatrix import cob_compose, cob_to_matrix, hg_act, hg_product, validate_representation
from .laws import run_laws
from .operad import operad_compose, theta_compose, validate_config
from .sympower import DEFAULT_MAX_ARITY, schur_include, sign_comparison, sym_act, sym_product


class ValidationFailed(Exception):
    def __init__(self, doc):
        super().__init__("validation failed")
        self.doc = doc


def _category(args):
    if not args.category:
        raise fm.SchemaError("this command needs --category")
    return fm.parse_category(fm.load_json(args.category), even_mode=args.even_mode)


def _representation(args, C):
    if not args.representation:
        raise fm.SchemaError("this command needs --representation")
    return fm.parse_representation(fm.load_json(args.representation), C)


def _convention(args):
    return args.convention.replace("-", "_") if args.convention else None


def cmd_validate(args):
    checks = []
    if args.workspace:
        ws = fm.Workspace.load(args.workspace, even_mode=args.even_mode)
        checks.append(("category", validate_category(ws.category)))
        if ws.representation is not None:
            checks.append(("representation", validate_representation(ws.representation)))
        for name, cx in sorted(ws.complexes.items()):
            checks.append((f"complex:{name}", validate_complex(cx)))
        for name, cfg in sorted(ws.configs.items()):
            checks.append((f"config:{name}", validate_config(cfg)))
    C = None
    if args.category:
        C = _category(args)
        checks.append(("category", validate_category(C)))
    if args.representation:
        if C is None:
            raise fm.SchemaError("--representation needs --category")
        checks.append(("representation", validate_representation(_representation(args, C))))
    for path in args.complex or ():
        checks.append((f"complex:{path}", validate_complex(fm.parse_complex(fm.load_json(path)))))
    for path in args.config or ():
        checks.append((f"config:{path}", validate_config(fm.parse_config(fm.load_json(path)))))
    if not checks:
        raise fm.SchemaError("nothing to validate")
    doc = {
        "checks": [{"target": name, "ok": r.ok, "message": r.message} for name, r in checks],
        "ok": all(r.ok for _, r in checks),
    }
    if not doc["ok"]:
        raise ValidationFailed(doc)
    return doc


def cmd_compose(args):
    C = _category(args)
    g = fm.parse_morphism(fm.load_json(args.second), C)
    f = fm.parse_morphism(fm.load_json(args.first), C)
    return fm.dump_morphism(C, compose_morphisms(C, g, f))


def cmd_hg_mul(args):
    C = _category(args)
    mats = [fm.parse_matrix(fm.load_json(p), C) for p in args.matrices]
    out = mats[0]
    for B in mats[1:]:
        out = hg_product(out, B)
    return fm.dump_matrix(out)


def cmd_hg_act(args):
    C = _category(args)
    rep = _representation(args, C)
    A = fm.parse_matrix(fm.load_json(args.matrix), C)
    v = fm.parse_vector(fm.load_json(args.vector), rep)
    return fm.dump_vector(hg_act(rep, A, v))


def cmd_cob_compose(args):
    C = _category(args)
    second = fm.parse_cobordism(fm.load_json(args.second), C)
    first = fm.parse_cobordism(fm.load_json(args.first), C)
    return fm.dump_cobordism(cob_compose(second, first))


def cmd_cob_embed(args):
    C = _category(args)
    return fm.dump_matrix(cob_to_matrix(fm.parse_cobordism(fm.load_json(args.cobordism), C)))


def cmd_sym_mul(args):
    C = _category(args)
    a = fm.parse_sym(fm.load_json(args.left), C, convention=_convention(args))
    b = fm.parse_sym(fm.load_json(args.right), C, convention=_convention(args))
    return fm.dump_sym(sym_product(a, b, max_arity=args.max_sym_arity))


def cmd_sym_act(args):
    C = _category(args)
    rep = _representation(args, C)
    a = fm.parse_sym(fm.load_json(args.element), C, rep, _convention(args))
    v = fm.parse_sym(fm.load_json(args.vector), C, rep, _convention(args))
    return fm.dump_sym(sym_act(a, v, max_arity=args.max_sym_arity))


def cmd_schur_include(args):
    C = _category(args)
    e = fm.parse_cobordism(fm.load_json(args.cobordism), C)
    s = schur_include(e, args.m, _convention(args) or "averaged", even_mode=True)
    return fm.dump_sym(s)


def cmd_operad_compose(args):
    outer = fm.parse_config(fm.load_json(args.outer))
    inners = [fm.parse_config(fm.load_json(p)) for p in args.inners]
    return fm.dump_config(operad_compose(outer, inners))


def cmd_operad_theta(args):
    C = _category(args)
    cfg = fm.parse_config(fm.load_json(args.config))
    mats = [fm.parse_matrix(fm.load_json(p), C) for p in args.matrices]
    return fm.dump_matrix(theta_compose(cfg, mats))


def cmd_betti(args):
    cx = fm.parse_complex(fm.load_json(args.complex))
    report = validate_complex(cx)
    if not report:
        raise ValidationFailed({"ok": False, "message": report.message})
    betti = homology_betti(cx)
    dims = {d: len(cx.cells(d)) for d in cx.degrees()}
    return {
        "betti": {str(d): b for d, b in sorted(betti.items())},
        "dimensions": {str(d): n for d, n in sorted(dims.items())},
        "euler_characteristic": euler_characteristic(betti),
    }


def cmd_signs(args):
    def ints(s):
        try:
            return [int(x) for x in s.split(",") if x.strip()]
        except ValueError:
            raise fm.SchemaError(f"not a comma-separated list of integers: {s!r}") from None

    da, db = ints(args.a), ints(args.b)
    if len(da) != len(db):
        raise fm.SchemaError("degree lists must have equal length")
    if len(da) > args.max_sym_arity:
        raise HomschurError(f"m = {len(da)} exceeds the enumeration cap {args.max_sym_arity}")
    rows = sign_comparison(da, db)
    return {"a": da, "b": db, "rows": rows, "disagreements": sum(not r["agree"] for r in rows)}


def cmd_axioms(args):
    results = run_laws(args.seed, args.trials)
    doc = {"seed": args.seed, "trials": args.trials, "laws": results, "ok": all(r["ok"] for r in results)}
    if not doc["ok"]:
        raise ValidationFailed(doc)
    return doc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--category", help="category presentation (JSON)")
    common.add_argument("--representation", help="object modules (JSON)")
    common.add_argument("--convention", choices=["averaged", "orbit-sum", "orbit_sum"], default=None)
    common.add_argument("--even-mode", action="store_true", help="reject odd dimensions and degrees at load")
    common.add_argument("--max-sym-arity", type=int, default=DEFAULT_MAX_ARITY)
    common.add_argument("-o", "--output", help="write the document here instead of stdout")

    p = argparse.ArgumentParser(prog="homschur", description="Exact homological matrices and Schur algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check category, modules, complexes, configs")
    s.add_argument("--workspace")
    s.add_argument("--complex", action="append")
    s.add_argument("--config", action="append")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compose", parents=[common], help="compose two morphisms: second o first")
    s.add_argument("second")
    s.add_argument("first")
    s.set_defaults(func=cmd_compose)

    hg = sub.add_parser("hg").add_subparsers(dest="hg_command", required=True)
    s = hg.add_parser("mul", parents=[common], help="product of homological matrices, left to right")
    s.add_argument("matrices", nargs="+")
    s.set_defaults(func=cmd_hg_mul)
    s = hg.add_parser("act", parents=[common], help="act on the module sum")
    s.add_argument("matrix")
    s.add_argument("vector")
    s.set_defaults(func=cmd_hg_act)

    cob = sub.add_parser("cob").add_subparsers(dest="cob_command", required=True)
    s = cob.add_parser("compose", parents=[common])
    s.add_argument("second")
    s.add_argument("first")
    s.set_defaults(func=cmd_cob_compose)
    s = cob.add_parser("embed", parents=[common])
    s.add_argument("cobordism")
    s.set_defaults(func=cmd_cob_embed)

    sym = sub.add_parser("sym").add_subparsers(dest="sym_command", required=True)
    s = sym.add_parser("mul", parents=[common])
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_sym_mul)
    s = sym.add_parser("act", parents=[common])
    s.add_argument("element")
    s.add_argument("vector")
    s.set_defaults(func=cmd_sym_act)
    s = sym.add_parser("signs", parents=[common], help="printed sign rule against the Koszul rule")
    s.add_argument("--a", required=True, help="degrees of the left factors, comma separated")
    s.add_argument("--b", required=True, help="degrees of the right factors, comma separated")
    s.set_defaults(func=cmd_signs)

    schur = sub.add_parser("schur").add_subparsers(dest="schur_command", required=True)
    s = schur.add_parser("include", parents=[common])
    s.add_argument("cobordism")
    s.add_argument("--m", type=int, default=None)
    s.set_defaults(func=cmd_schur_include)

    op = sub.add_parser("operad").add_subparsers(dest="operad_command", required=True)
    s = op.add_parser("compose", parents=[common])
    s.add_argument("outer")
    s.add_argument("inners", nargs="+")
    s.set_defaults(func=cmd_operad_compose)
    s = op.add_parser("theta", parents=[common])
    s.add_argument("config")
    s.add_argument("matrices", nargs="+")
    s.set_defaults(func=cmd_operad_theta)

    s = sub.add_parser("betti", parents=[common])
    s.add_argument("complex")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("axioms", parents=[common], help="randomized law suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_axioms)
    return p


def _emit(doc, args, stream):
    text = fm.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with contextlib.redirect_stderr(stderr):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return exc.code if isinstance(exc.code, int) else 2
    try:
        doc = args.func(args)
    except ValidationFailed as exc:
        _emit(exc.doc, args, stdout)
        return 1
    except (fm.SchemaError, json.JSONDecodeError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except HomschurError as exc:
        _emit({"ok": False, "error": type(exc).__name__, "message": str(exc)}, args, stdout)
        return 1
    _emit(doc, args, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
