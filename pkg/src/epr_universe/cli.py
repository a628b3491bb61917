"""Command-line front end.

Every subcommand writes one report to stdout (or ``--out``). JSON reports
carry the tool version, the seed and an echo of the configuration; CSV
reports put the same metadata on leading ``#`` lines. Domain errors exit
with status 1 and a JSON error object on stderr; usage errors exit with 2.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from . import families
from .cosmology import expansion_series, flatness_score
from .errors import EprError
from .macrotime import (
    MEASURES,
    DecayPolicy,
    entropy_series,
    generate_chain,
    validate_chain,
)
from .spectral import laplacian, eigendecompose
from .symmetry import (
    DEFAULT_ORDER_LIMIT,
    PermGroup,
    automorphisms,
    frucht_realize,
    orbits,
    symmetry_score,
)
from .universe import (
    DEFAULT_ENUMERATION_LIMIT,
    aspects_extending,
    from_dict,
    join_in_aspect,
    leq,
    meet,
    to_dict,
)

TOOL = f"epr-universe {__version__}"
THREADS_ENV = "EPR_UNIVERSE_THREADS"


class UsageError(Exception):
    pass


class InputError(EprError):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None


def _load_complex(path):
    try:
        return from_dict(_load_json(path))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path} is not a complex file: missing or malformed {exc}") from None


def _inputs(args, count=None, at_least=None):
    paths = args.inputs or []
    if count is not None and len(paths) != count:
        raise UsageError(f"{args.command} expects exactly {count} --in file(s)")
    if at_least is not None and len(paths) < at_least:
        raise UsageError(f"{args.command} expects at least {at_least} --in file(s)")
    return paths


def _config(args) -> dict:
    skip = {"handler", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _report(args, body: dict) -> dict:
    return {"tool": TOOL, "seed": args.seed, "config": _config(args), **body}


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(args, header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# tool: {TOOL}\n# seed: {args.seed}\n")
    buf.write(f"# config: {json.dumps(_config(args), separators=(',', ':'))}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_only(args):
    if args.format != "json":
        raise UsageError(f"{args.command} only supports --format json")


# subcommands

def cmd_gen(args) -> str:
    kind = args.kind
    if kind == "file":
        path = args.params[0] if args.params else (_inputs(args, count=1)[0])
        e = _load_complex(path)
    elif kind == "petersen":
        e = families.petersen()
    else:
        if not args.params:
            raise UsageError(f"gen {kind} needs an object count")
        try:
            n = int(args.params[0])
        except ValueError:
            raise UsageError("object count must be an integer") from None
        if kind == "gnp":
            if len(args.params) < 2:
                raise UsageError("gen gnp needs an edge probability")
            e = families.gnp(n, float(args.params[1]), args.seed, args.n_phi)
        else:
            e = getattr(families, kind)(n, args.n_phi)
    _json_only(args)
    return _dumps(to_dict(e))


def cmd_poset(args) -> str:
    _json_only(args)
    op = args.op
    if op == "leq":
        e, f = (_load_complex(p) for p in _inputs(args, count=2))
        return _dumps(_report(args, {"leq": leq(e, f)}))
    if op == "join":
        paths = _inputs(args, at_least=1)
        aspect = _load_complex(paths[0])
        parts = [_load_complex(p) for p in paths[1:]]
        return _dumps(_report(args, {"join": to_dict(join_in_aspect(aspect, parts))}))
    if op == "meet":
        e, a = (_load_complex(p) for p in _inputs(args, count=2))
        result = meet(e, a)
        return _dumps(_report(args, {
            "bounds": [to_dict(b) for b in result.bounds],
            "unique": result.unique,
            "selected": to_dict(result.selected),
        }))
    # aspects
    (path,) = _inputs(args, count=1)
    e = _load_complex(path)
    body = {"count": aspects_extending(e).count}
    if args.enumerate:
        found = aspects_extending(e, enumerate_all=True, limit=args.limit_enum)
        body["aspects"] = [to_dict(a) for a in found.aspects]
    return _dumps(_report(args, body))


def cmd_aut(args) -> str:
    _json_only(args)
    (path,) = _inputs(args, count=1)
    e = _load_complex(path)
    group = automorphisms(e)
    score = symmetry_score(e) if e.objects else None
    return _dumps(_report(args, {
        "points": list(group.points),
        "generators": [[group.points[i] for i in g] for g in group.generators],
        "order": group.order(),
        "orbits": orbits(group),
        "transitivity_fraction": score.transitivity_fraction if score else None,
    }))


def cmd_frucht(args) -> str:
    _json_only(args)
    (path,) = _inputs(args, count=1)
    try:
        group = PermGroup.from_dict(_load_json(path))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path} is not a group file: {exc}") from None
    e = frucht_realize(group, limit=args.limit_frucht)
    return _dumps(_report(args, {
        "group_order": group.order(),
        "complex": to_dict(e),
        "automorphism_order": automorphisms(e).order(),
    }))


def cmd_spectral(args) -> str:
    (path,) = _inputs(args, count=1)
    e = _load_complex(path)
    basis = eigendecompose(laplacian(e), carrier=e)
    if args.format == "csv":
        return _csv(args, ["mode", "eigenvalue"], [[k, repr(float(x))] for k, x in enumerate(basis.eigenvalues)])
    return _dumps(_report(args, basis.to_dict(include_vectors=args.vectors)))


def _policy(args, seed=None) -> DecayPolicy:
    return DecayPolicy(args.removals, args.steps, args.seed if seed is None else seed, args.rewire)


def _chain(args, seed=None):
    (path,) = _inputs(args, count=1)
    e0 = _load_complex(path)
    a0 = _load_complex(args.aspect) if args.aspect else None
    return generate_chain(e0, a0, _policy(args, seed))


def _seeds(args) -> list[int]:
    return [args.seed + i for i in range(args.seeds)]


def _ensemble(args, fn):
    # results are merged in ascending seed order whatever the thread count
    seeds = _seeds(args)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return seeds, list(pool.map(fn, seeds))


def cmd_chain(args) -> str:
    chain = _chain(args)
    report = entropy_series(chain, args.measure)
    validation = validate_chain(chain)
    if args.format == "csv":
        rows = [[i, n, repr(v), "" if i == 0 else repr(report.deltas[i - 1]), " ".join(map(str, r))]
                for i, (n, v, r) in enumerate(zip(chain.sizes, report.values, ((),) + chain.removed))]
        return _csv(args, ["step", "basis_size", report.measure_name, "delta", "removed"], rows)
    return _dumps(_report(args, {
        "policy": _policy(args).to_dict(),
        "basis_sizes": chain.sizes,
        "removed": [list(r) for r in chain.removed],
        "violations": [list(v) for v in validation.violations],
        "entropy": report.to_dict(),
    }))


def cmd_entropy(args) -> str:
    if args.seeds > 1:
        _json_only(args)
        seeds, reports = _ensemble(args, lambda s: entropy_series(_chain(args, s), args.measure))
        fractions = [r.monotone_fraction for r in reports]
        return _dumps(_report(args, {
            "measure": args.measure,
            "seeds": seeds,
            "monotone_fractions": fractions,
            "mean_monotone_fraction": sum(fractions) / len(fractions),
        }))
    chain = _chain(args)
    report = entropy_series(chain, args.measure)
    if args.format == "csv":
        rows = [[i, repr(v), "" if i == 0 else repr(report.deltas[i - 1])]
                for i, v in enumerate(report.values)]
        return _csv(args, ["step", report.measure_name, "delta"], rows)
    return _dumps(_report(args, {"policy": _policy(args).to_dict(), **report.to_dict()}))


def cmd_expand(args) -> str:
    if args.seeds > 1:
        _json_only(args)
        seeds, reports = _ensemble(args, lambda s: expansion_series(_chain(args, s)))
        fractions = [r.monotone_fraction for r in reports]
        return _dumps(_report(args, {
            "seeds": seeds,
            "monotone_fractions": fractions,
            "mean_monotone_fraction": sum(fractions) / len(fractions),
        }))
    report = expansion_series(_chain(args))
    if args.plot_csv:
        with open(args.plot_csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["step", "sigma"])
            writer.writerows([i, repr(s)] for i, s in enumerate(report.spread_series))
    if args.format == "csv":
        rows = [[i, k, repr(s), repr(f)] for i, (k, s, f) in enumerate(
            zip(report.cutoff_series, report.spread_series, report.expansion_factor_series))]
        return _csv(args, ["step", "K", "sigma", "factor"], rows)
    return _dumps(_report(args, {"policy": _policy(args).to_dict(), **report.to_dict()}))


def cmd_flatness(args) -> str:
    _json_only(args)
    (path,) = _inputs(args, count=1)
    e = _load_complex(path)
    score = symmetry_score(e)
    return _dumps(_report(args, {
        "flatness": flatness_score(e),
        "orbit_count": score.orbit_count,
    }))


def _chain_flags(p, measure=True):
    p.add_argument("--removals", type=int, required=True, help="objects removed per step")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--aspect", help="ambient aspect file (default: basis plus isolated objects)")
    p.add_argument("--rewire", action="store_true", help="rewire cut edges to matter objects")
    if measure:
        p.add_argument("--measure", choices=MEASURES, default="resolution")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", metavar="PATH")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--limit-enum", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    common.add_argument("--limit-frucht", type=int, default=DEFAULT_ORDER_LIMIT)

    parser = argparse.ArgumentParser(prog="epr-universe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a named complex")
    p.add_argument("kind", choices=("cycle", "complete", "path", "star", "edgeless", "petersen", "gnp", "file"))
    p.add_argument("params", nargs="*", help="object count [edge probability] or a file path")
    p.add_argument("--n-phi", type=int, help="size of the global object set")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("poset", parents=[common], help="order queries")
    p.add_argument("op", choices=("leq", "join", "meet", "aspects"))
    p.add_argument("--enumerate", action="store_true", help="list aspects (aspects op)")
    p.set_defaults(handler=cmd_poset)

    for name, handler, text in (("aut", cmd_aut, "automorphism group"),
                                ("frucht", cmd_frucht, "realize a group as a graph symmetry"),
                                ("flatness", cmd_flatness, "vertex-transitivity score")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.set_defaults(handler=handler)

    p = sub.add_parser("spectral", parents=[common], help="Laplacian eigenbasis")
    p.add_argument("--vectors", action="store_true", help="include eigenvectors")
    p.set_defaults(handler=cmd_spectral)

    p = sub.add_parser("chain", parents=[common], help="decay chain with an entropy series")
    _chain_flags(p)
    p.set_defaults(handler=cmd_chain)

    p = sub.add_parser("entropy", parents=[common], help="entropy series of a decay chain")
    _chain_flags(p)
    p.add_argument("--seeds", type=int, default=1, help="run an ensemble of consecutive seeds")
    p.set_defaults(handler=cmd_entropy)

    p = sub.add_parser("expand", parents=[common], help="expansion diagnostics of a decay chain")
    _chain_flags(p, measure=False)
    p.add_argument("--seeds", type=int, default=1, help="run an ensemble of consecutive seeds")
    p.add_argument("--plot-csv", metavar="PATH", help="also write a two-column step,sigma CSV")
    p.set_defaults(handler=cmd_expand)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.handler(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"epr-universe: error: {exc}\n")
        return 2
    except (EprError, ValueError) as exc:
        stderr.write(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n")
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
