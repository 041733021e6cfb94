"""Command-line entry point: ``clusterwilson <verb> [flags]``.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
Errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .cluster import (
    MutationError,
    MutationSequence,
    Seed,
    export_quiver_dot,
    is_laurent_in_cluster,
    upper_bound_member,
)
from .confwilson import random_config, wilson_matrix
from .repgroup import group_model
from .surface import (
    FIGURE_NAMES,
    MarkedSurface,
    SurfaceError,
    counts,
    figure_quiver,
    seed_sizes,
    triangle_template,
)

__all__ = ["main", "build_parser", "export_quiver_dot"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, as_json: bool, text: str, out):
    if as_json:
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _load_seed(args) -> Seed:
    if getattr(args, "name", None):
        if args.seed:
            raise UsageError("give --seed or --name, not both")
        try:
            return figure_quiver(args.name).seed()
        except KeyError:
            raise UsageError(f"unknown quiver {args.name!r}; known: {', '.join(FIGURE_NAMES)}")
    if not args.seed:
        raise UsageError("--seed is required")
    try:
        if args.seed == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.seed) as fh:
                data = json.load(fh)
        return Seed.from_json(data)
    except OSError as exc:
        raise UsageError(f"cannot read seed: {exc}")
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"bad seed JSON: {exc}")


# -- verbs -----------------------------------------------------------------

def cmd_mutate(args, out) -> int:
    seed = _load_seed(args)
    seq = MutationSequence.parse(args.sequence or "")
    try:
        seq.validate(seed.m)
    except MutationError as exc:
        raise UsageError(str(exc))
    res = seq.apply(seed)
    if args.dot:
        out.write(export_quiver_dot(res))
    elif args.json:
        out.write(json.dumps(res.to_json(), sort_keys=True) + "\n")
    else:
        out.write(res.dumps())
    return EXIT_OK


def _trial(job):
    name, rng_seed, i = job
    model = group_model(name)
    rng = random.Random(f"{rng_seed}:{i}")
    cfg = random_config(model, rng)
    return i, wilson_matrix(cfg) == cfg.g @ model.sG


def cmd_verify_wilson(args, out) -> int:
    name = args.type.upper()
    if name not in ("SL2", "SL3", "SP4"):
        raise UsageError(f"--type must be SL2, SL3 or SP4, got {args.type!r}")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    jobs = [(name, args.rng_seed, i) for i in range(args.trials)]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]
    results.sort()
    passed = sum(ok for _, ok in results)
    summary = {"type": name, "trials": len(results), "passed": passed, "rng_seed": args.rng_seed,
               "results": [{"trial": i, "pass": ok} for i, ok in results]}
    lines = [f"trial {i:4d}  {'PASS' if ok else 'FAIL'}" for i, ok in results]
    lines.append(f"{name}: {passed}/{len(results)} pass")
    _emit(summary, args.json, "\n".join(lines), out)
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_laurent_check(args, out) -> int:
    seed = _load_seed(args)
    if not args.expr:
        raise UsageError("at least one --expr is required")
    names = list(seed.labels) if all(lab.isidentifier() for lab in seed.labels) else seed.ambient_names
    verdicts = []
    for e in args.expr:
        try:
            laurent = is_laurent_in_cluster(e, seed, names)
            upper = upper_bound_member(e, seed, names) if laurent else False
        except (ValueError, ZeroDivisionError, KeyError) as exc:
            raise UsageError(f"cannot parse {e!r}: {exc}")
        verdicts.append({"expr": e, "laurent": laurent, "upper_bound": upper})
    text = "\n".join(f"{v['expr']}: laurent={'yes' if v['laurent'] else 'no'} "
                     f"upper_bound={'yes' if v['upper_bound'] else 'no'}" for v in verdicts)
    _emit({"verdicts": verdicts}, args.json, text, out)
    return EXIT_OK


def cmd_quiver(args, out) -> int:
    if not args.name:
        raise UsageError("--name is required")
    try:
        fq = figure_quiver(args.name)
    except KeyError:
        raise UsageError(f"unknown quiver {args.name!r}; known: {', '.join(FIGURE_NAMES)}")
    seed = fq.seed()
    if args.dot:
        out.write(export_quiver_dot(seed, name=args.name.replace("-", "_")))
    elif args.json:
        out.write(json.dumps(seed.to_json(), sort_keys=True) + "\n")
    else:
        out.write(seed.dumps())
    return EXIT_OK


def _parse_boundary(text: str) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--boundary wants comma-separated integers, got {text!r}")
    return vals


def cmd_counts(args, out) -> int:
    try:
        surf = MarkedSurface(args.genus, tuple(_parse_boundary(args.boundary)))
        t, e = counts(surf)
        n, m = seed_sizes(surf, args.type)
    except (SurfaceError, ValueError) as exc:
        raise UsageError(str(exc))
    obj = {"genus": surf.genus, "boundaries": list(surf.boundaries), "type": args.type,
           "t": t, "e": e, "n": n, "m": m}
    _emit(obj, args.json, f"t={t} e={e} n={n} m={m}", out)
    return EXIT_OK


def cmd_triangle(args, out) -> int:
    try:
        tpl = triangle_template(args.type, lower=args.lower)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc))
    names = list(tpl.vertices)
    seed = Seed.initial(tpl.epsilon, len(tpl.interior), names, tpl.symmetrizer)
    if args.dot:
        out.write(export_quiver_dot(seed, name=f"triangle_{args.type}"))
    elif args.json:
        out.write(json.dumps(seed.to_json(), sort_keys=True) + "\n")
    else:
        out.write(seed.dumps())
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clusterwilson", description="Cluster seeds, Wilson-line checks and quiver exports.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True

    def verb(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = verb("mutate", cmd_mutate, "mutate a seed along a sequence")
    sp.add_argument("--seed", help="seed JSON file ('-' for stdin)")
    sp.add_argument("--name", help="start from a named figure quiver instead")
    sp.add_argument("--sequence", default="", help="comma-separated 1-based vertices")
    sp.add_argument("--dot", action="store_true")

    sp = verb("verify-wilson", cmd_verify_wilson, "rebuild g s_G from chain minors")
    sp.add_argument("--type", default="SL2")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--rng-seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)

    sp = verb("laurent-check", cmd_laurent_check, "Laurent and upper-bound membership")
    sp.add_argument("--seed")
    sp.add_argument("--name")
    sp.add_argument("--expr", action="append")

    sp = verb("quiver", cmd_quiver, "print a figure quiver")
    sp.add_argument("--name")
    sp.add_argument("--dot", action="store_true")

    sp = verb("counts", cmd_counts, "triangle, edge and seed counts")
    sp.add_argument("--genus", type=int, default=0)
    sp.add_argument("--boundary", required=True, help="marked points per boundary component, e.g. 2,1")
    sp.add_argument("--type", default="A1")

    sp = verb("triangle", cmd_triangle, "triangle quiver used for gluing")
    sp.add_argument("--type", default="A1")
    sp.add_argument("--lower", action="store_true")
    sp.add_argument("--dot", action="store_true")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ValueError, ArithmeticError, NotImplementedError) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
