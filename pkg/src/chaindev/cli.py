"""Command-line interface: ``chaindev <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 size cap exceeded.
"""

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import io as cio
from .development import build_development, diameter_identity, tv_check, verify_development
from .exceptions import CapExceededError, InvalidSpaceError
from .generators import KINDS, generate
from .metric import METRICS, chain_distance, check_space
from .selfsim import SelfSimilarSpec, exists_development, stretch, symbolic_development, width_series
from .tree import cluster_tree
from .width import mst_weight, width

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code, kind, message, details=None):
        super().__init__(message)
        self.code, self.kind, self.details = code, kind, details


def _load_space(args):
    if not args.input:
        raise CliError(EXIT_INVALID, "usage", "--input is required")
    try:
        doc = cio.read_document(args.input, args.format)
    except OSError as exc:
        raise CliError(EXIT_INVALID, "unreadable_file", str(exc))
    except cio.SchemaError as exc:
        raise CliError(EXIT_INVALID, "schema", str(exc))
    try:
        space = doc.to_space(args.metric)
    except cio.SchemaError as exc:
        raise CliError(EXIT_INVALID, "schema", str(exc))
    try:
        check_space(space)
    except InvalidSpaceError as exc:
        details = [asdict(v) for v in exc.report.violations[:50]]
        raise CliError(EXIT_INVALID, "invalid_space", str(exc), details)
    return space


def cmd_chaindist(args):
    space = _load_space(args)
    return {"labels": list(space.labels), "chain": chain_distance(space).c.tolist()}


def cmd_tree(args):
    space = _load_space(args)
    tree = cluster_tree(space)
    if args.export == "dot":
        return cio.tree_to_dot(tree, space.labels)
    return cio.tree_to_json(tree, space.labels)


def cmd_width(args):
    space = _load_space(args)
    report = width(cluster_tree(space))
    return {
        "width": report.width,
        "terms": [{"node": v, "term": t} for v, t in report.per_node_terms.items()],
    }


def cmd_dis(args):
    space = _load_space(args)
    cert = mst_weight(space)
    return {"total": cert.total, "pairs": [{"i": i, "j": j, "d": d} for i, j, d in cert.pairs]}


def cmd_develop(args):
    space = _load_space(args)
    dev = build_development(cluster_tree(space), random_state=args.seed)
    return cio.development_to_json(dev, space.labels)


def cmd_verify(args):
    space = _load_space(args)
    if not args.development:
        raise CliError(EXIT_INVALID, "usage", "--development is required")
    try:
        doc = json.loads(Path(args.development).read_text())
    except OSError as exc:
        raise CliError(EXIT_INVALID, "unreadable_file", str(exc))
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INVALID, "schema", f"not valid JSON: {exc}")
    try:
        coords = cio.coords_from_json(doc, space.labels)
    except cio.SchemaError as exc:
        raise CliError(EXIT_INVALID, "schema", str(exc))
    report = verify_development(space, coords)
    out = {"development": asdict(report)}
    if report.passed:
        out["timan_vestfid"] = asdict(tv_check(space, coords))
        out["diameter_identity"] = asdict(diameter_identity(space, coords))
    out["passed"] = report.passed and all(out[k]["passed"] for k in ("timan_vestfid", "diameter_identity") if k in out)
    return out


def _load_spec(args):
    fields = {}
    if args.input:
        try:
            fields = json.loads(Path(args.input).read_text())
        except OSError as exc:
            raise CliError(EXIT_INVALID, "unreadable_file", str(exc))
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_INVALID, "schema", f"not valid JSON: {exc}")
        if not isinstance(fields, dict):
            raise CliError(EXIT_INVALID, "schema", "spec must be a JSON object")
    for key in ("branching", "root_diameter", "ratio"):
        if getattr(args, key) is not None:
            fields[key] = getattr(args, key)
    missing = [k for k in ("branching", "root_diameter", "ratio") if k not in fields]
    if missing:
        raise CliError(EXIT_INVALID, "schema", f"spec is missing {missing}")
    try:
        return SelfSimilarSpec(fields["branching"], fields["root_diameter"], fields["ratio"])
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INVALID, "schema", str(exc))


def cmd_selfsim(args):
    spec = _load_spec(args)
    verdict = exists_development(spec)
    series = width_series(spec, args.depth if args.depth is not None else 0)
    out = {
        "exists": verdict.exists,
        "ratio": verdict.ratio,
        "minimal_diameter": verdict.minimal_diameter,
        "witness": verdict.witness,
        "terms": list(series.terms),
        "partial_sum": series.partial_sum(),
    }
    if args.stretch is not None:
        if not verdict.exists:
            raise CliError(EXIT_INVALID, "no_development", "cannot stretch: no development exists")
        if args.stretch < 0:
            raise CliError(EXIT_INVALID, "schema", "--stretch must be >= 0")
        depth = args.depth if args.depth else 1
        dev = stretch(symbolic_development(spec, depth), args.stretch)
        out["stretch"] = {
            "depth": depth,
            "excess": dev.excess,
            "diameter": dev.diameter,
            "leaf_length": dev.leaf_length,
            "gaps": [{"level": k, "len": g} for k, g in dev.gaps],
        }
    return out


def cmd_generate(args):
    try:
        doc = generate(args.kind, depth=args.depth, count=args.count, dim=args.dim, seed=args.seed)
    except ValueError as exc:
        if isinstance(exc, CapExceededError):
            raise
        raise CliError(EXIT_INVALID, "usage", str(exc))
    if args.format == "csv":
        return doc.to_csv()
    return doc.to_json()


COMMANDS = {
    "chaindist": (cmd_chaindist, "all-pairs chain distance matrix"),
    "tree": (cmd_tree, "cluster tree as JSON or DOT"),
    "width": (cmd_width, "width of the cluster tree"),
    "dis": (cmd_dis, "minimum spanning tree certificate for the measure of disconnectivity"),
    "develop": (cmd_develop, "build a chain development"),
    "verify": (cmd_verify, "verify a development document against a space"),
    "selfsim": (cmd_selfsim, "existence verdict and width series of a self-similar spec"),
    "generate": (cmd_generate, "emit an example input document"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="chaindev", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write output here instead of stdout")
        if name == "generate":
            p.add_argument("kind", choices=KINDS)
            p.add_argument("--depth", type=int)
            p.add_argument("--count", type=int)
            p.add_argument("--dim", type=int, default=2)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--format", choices=["csv", "json"], default="json")
            continue
        p.add_argument("--input", help="input file (CSV or JSON)")
        if name == "selfsim":
            p.add_argument("--branching", type=int)
            p.add_argument("--root-diameter", dest="root_diameter", type=float)
            p.add_argument("--ratio", type=float)
            p.add_argument("--depth", type=int, help="number of series terms to list")
            p.add_argument("--stretch", type=float, help="extra measure added to a development")
            continue
        p.add_argument("--format", choices=["csv", "json"], help="input format (default: from suffix)")
        p.add_argument("--metric", choices=sorted(METRICS), help="metric for point inputs")
        if name == "tree":
            p.add_argument("--export", choices=["json", "dot"], default="json")
        if name == "develop":
            p.add_argument("--seed", type=int, help="shuffle child order with this seed")
        if name == "verify":
            p.add_argument("--development", help="development JSON produced by 'develop'")
    return parser


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except CliError as exc:
        err = {"error": exc.kind, "message": str(exc)}
        if exc.details:
            err["violations"] = exc.details
        sys.stderr.write(cio.dumps(err))
        return exc.code
    except CapExceededError as exc:
        sys.stderr.write(cio.dumps({"error": "cap_exceeded", "message": str(exc)}))
        return EXIT_CAP
    _emit(result if isinstance(result, str) else cio.dumps(result), args.out)
    if isinstance(result, dict) and result.get("passed") is False:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
