"""Command-line front end.

Exit codes: 0 for linearizable / pass / solved / sum, 1 for not
linearizable / counterexample / not a sum matrix, 2 for verdicts outside
the characterized graph class, 3 for usage, I/O, validation and limit
errors. Reports are printed as text or canonical JSON; JSON output is
byte-stable for identical inputs except for the "timing" key.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import factored as factored_mod
from . import files, generators, linearize, oracle
from .errors import QmstError, ValidationError
from .factored import (
    AffineCase,
    ConstantCase,
    FactoredCost,
    NotSum,
    materialize,
    recognize_factored_sum,
)
from .graphs import DEFAULT_TREE_CAP, classify_whole_graph
from .linearize import (
    BlockWitness,
    Instance,
    Linearizable,
    NotLinearizable,
    UnknownOutsideClass,
    check_and_linearize,
    solve_qmstp,
    verify_linearization,
)
from .matrices import SumFailure, WeakSumFailure
from .oracle import (
    MmstpInstance,
    brute_force_optimum,
    mmstp_brute_force,
    oracle_linearize,
)
from .rationals import format_rat

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmstlin",
        description="Decide linearizability of quadratic spanning-tree costs, "
        "compute linearizations, and certify verdicts by brute force.",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    parser.add_argument(
        "--max-trees",
        type=int,
        default=DEFAULT_TREE_CAP,
        metavar="N",
        help="abort exhaustive steps beyond this many spanning trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="linearizability verdict with certificates")
    p_check.add_argument("file")

    p_lin = sub.add_parser("linearize", help="check and write the linearization")
    p_lin.add_argument("file")
    p_lin.add_argument("-o", "--output", metavar="OUT", help="cost vector output file")

    p_verify = sub.add_parser("verify", help="exhaustively verify a linearization")
    p_verify.add_argument("file")
    p_verify.add_argument("--c", required=True, metavar="CFILE", dest="cfile")

    p_solve = sub.add_parser("solve", help="optimal tree via linearization or brute force")
    p_solve.add_argument("file")

    p_oracle = sub.add_parser("oracle", help="brute-force linearizability and optimum")
    p_oracle.add_argument("file")

    p_gen = sub.add_parser("gen", help="generate a named instance family")
    p_gen.add_argument("family", choices=generators.FAMILIES)
    p_gen.add_argument("-o", "--output", required=True, metavar="OUT")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--graph", help="named graph for weak-sum/random-dense")
    p_gen.add_argument("--n", type=int, help="cycle length for cycle-random")
    p_gen.add_argument("--n2", type=int, help="large side for k2n-counterexample")
    p_gen.add_argument("--base", help="base graph for degree2-counterexample")
    p_gen.add_argument("--values", help="comma-separated subset-sum values")
    p_gen.add_argument("--target", help="subset-sum target")

    p_fact = sub.add_parser(
        "factored-check", help="O(n) sum-matrix recognition of a factored cost"
    )
    p_fact.add_argument("file")
    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    started = time.perf_counter()
    try:
        code, report = _dispatch(args)
    except QmstError as exc:
        report = {
            "command": args.command,
            "error": {
                "code": exc.code,
                "message": str(exc),
                "details": {k: _json_value(v) for k, v in exc.details.items()},
            },
        }
        _emit(report, args.format, started)
        return EXIT_ERROR
    _emit(report, args.format, started)
    return code


def _emit(report: dict, fmt: str, started: float) -> None:
    report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if fmt == "json":
        sys.stdout.write(files.canonical_dumps(report))
    else:
        _render_text(report)


def _json_value(value):
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return value


def _render_text(report: dict) -> None:
    out = sys.stdout
    if "error" in report:
        err = report["error"]
        out.write(f"error [{err['code']}]: {err['message']}\n")
        return
    for key in (
        "command", "instance", "path", "verdict", "result", "method",
        "written", "family",
    ):
        if key in report:
            out.write(f"{key}: {report[key]}\n")
    if "components" in report:
        for comp in report["components"]:
            out.write(
                f"component {comp['id']}: {comp['kind']}, edges {comp['edges']}\n"
            )
    if "certificates" in report:
        certs = report["certificates"]
        for item in certs.get("cross", []):
            out.write(
                f"sum certificate for components {item['components']}: "
                f"a={item['a']} b={item['b']}\n"
            )
        for item in certs.get("diagonal", []):
            out.write(f"weak sum vector for component {item['component']}: w={item['w']}\n")
        for item in certs.get("cycles", []):
            out.write(f"cycle vector for component {item['component']}: c={item['c']}\n")
    for key in ("c", "other_components", "claimed_c"):
        if key in report:
            out.write(f"{key}: {report[key]}\n")
    if "witness" in report:
        out.write(f"witness: {report['witness']}\n")
    if "counterexample" in report:
        out.write(f"counterexample: {report['counterexample']}\n")
    if "tree" in report:
        out.write(f"tree: {report['tree']}\n")
    for key in ("cost", "objective", "feasible", "oracle_c", "optimum", "case",
                "k", "k1", "k2", "constant_left", "constant_right", "reason",
                "indices", "claim_matches"):
        if key in report:
            out.write(f"{key}: {report[key]}\n")


def _rats(values) -> list:
    return [format_rat(v) for v in values]


def _witness_json(witness: BlockWitness) -> dict:
    failure = witness.failure
    doc: dict = {
        "components": [witness.row_component + 1, witness.col_component + 1],
        "row_edges": list(witness.row_edges),
        "col_edges": list(witness.col_edges),
    }
    if isinstance(failure, SumFailure):
        doc["kind"] = "sum-block"
        doc["rows"] = list(failure.rows)
        doc["cols"] = list(failure.cols)
        doc["row_edge_ids"] = [witness.row_edges[r - 1] for r in failure.rows]
        doc["col_edge_ids"] = [witness.col_edges[c - 1] for c in failure.cols]
        doc["lhs"] = format_rat(failure.lhs)
        doc["rhs"] = format_rat(failure.rhs)
    elif isinstance(failure, WeakSumFailure):
        doc["kind"] = "weak-sum-block"
        doc["entry"] = list(failure.entry)
        doc["entry_edge_ids"] = [
            witness.row_edges[failure.entry[0] - 1],
            witness.col_edges[failure.entry[1] - 1],
        ]
        doc["quad"] = list(failure.quad)
        doc["expected"] = format_rat(failure.expected)
        doc["actual"] = format_rat(failure.actual)
    return doc


def _verdict_report(verdict, report: dict) -> int:
    decomp = verdict.decomposition
    report["components"] = [
        {
            "id": i + 1,
            "kind": comp.kind.value,
            "edges": list(comp.edge_ids),
            "vertices": list(comp.vertices),
        }
        for i, comp in enumerate(decomp.components)
    ]
    if isinstance(verdict, Linearizable):
        report["verdict"] = "linearizable"
        report["c"] = _rats(verdict.c)
        report["certificates"] = {
            "cross": [
                {
                    "components": [i + 1, j + 1],
                    "a": _rats(cert.a),
                    "b": _rats(cert.b),
                }
                for (i, j), cert in verdict.cross_certificates.items()
            ],
            "diagonal": [
                {"component": i + 1, "w": _rats(cert.w)}
                for i, cert in verdict.diagonal_certificates.items()
            ],
            "cycles": [
                {"component": i + 1, "c": _rats(vec)}
                for i, vec in verdict.cycle_vectors.items()
            ],
        }
        return EXIT_OK
    if isinstance(verdict, NotLinearizable):
        report["verdict"] = "not-linearizable"
        report["witness"] = _witness_json(verdict.witness)
        return EXIT_NEGATIVE
    assert isinstance(verdict, UnknownOutsideClass)
    report["verdict"] = "unknown-outside-class"
    report["other_components"] = [i + 1 for i in verdict.other_components]
    report["witness"] = _witness_json(verdict.witness)
    return EXIT_UNKNOWN


def _load_quadratic(path: str) -> tuple[files.Loaded, Instance]:
    loaded = files.parse_instance(path)
    if isinstance(loaded.instance, MmstpInstance):
        raise ValidationError(
            "this command needs a quadratic (dense or factored) instance; "
            "mmstp instances are handled by solve and oracle"
        )
    return loaded, loaded.instance


def _check_verdict(inst: Instance, report: dict):
    """Route factored costs: O(m) path on complete/biclique graphs, dense
    materialization (within cap) anywhere else. Records which path ran."""
    if isinstance(inst.cost, FactoredCost):
        shape = classify_whole_graph(inst.graph)
        if shape is not None and (
            (shape[0] == "clique" and shape[1][0] >= 4)
            or (shape[0] == "biclique" and min(shape[1]) >= 3)
        ):
            report["path"] = "factored-O(m)"
            return factored_mod.linearize_factored(inst)
        report["path"] = "materialized-dense"
        dense_inst = Instance(inst.graph, materialize(inst.cost), inst.name)
        return check_and_linearize(dense_inst)
    report["path"] = "dense"
    return check_and_linearize(inst)


def _cmd_check(args) -> tuple[int, dict]:
    loaded, inst = _load_quadratic(args.file)
    report: dict = {"command": "check", "instance": inst.name or args.file}
    verdict = _check_verdict(inst, report)
    code = _verdict_report(verdict, report)
    return code, report


def _cmd_linearize(args) -> tuple[int, dict]:
    loaded, inst = _load_quadratic(args.file)
    report: dict = {"command": "linearize", "instance": inst.name or args.file}
    verdict = _check_verdict(inst, report)
    code = _verdict_report(verdict, report)
    if isinstance(verdict, Linearizable) and args.output:
        files.write_cost_vector(verdict.c, args.output)
        report["written"] = args.output
    return code, report


def _cmd_verify(args) -> tuple[int, dict]:
    loaded, inst = _load_quadratic(args.file)
    c = files.parse_cost_vector(args.cfile)
    report: dict = {"command": "verify", "instance": inst.name or args.file}
    counter = verify_linearization(inst, c, cap=args.max_trees)
    if counter is None:
        report["result"] = "pass"
        return EXIT_OK, report
    report["result"] = "counterexample"
    report["counterexample"] = {
        "tree": list(counter.tree.sorted_ids),
        "quadratic_cost": format_rat(counter.quadratic_cost),
        "linear_cost": format_rat(counter.linear_cost),
    }
    return EXIT_NEGATIVE, report


def _cmd_solve(args) -> tuple[int, dict]:
    loaded = files.parse_instance(args.file)
    report: dict = {"command": "solve", "instance": args.file}
    if isinstance(loaded.instance, MmstpInstance):
        tree, objective = mmstp_brute_force(loaded.instance, cap=args.max_trees)
        report["method"] = "brute-force-mmstp"
        report["tree"] = list(tree.sorted_ids)
        report["objective"] = format_rat(objective)
        return EXIT_OK, report
    result = solve_qmstp(loaded.instance, cap=args.max_trees)
    report["method"] = result.method
    report["tree"] = list(result.tree.sorted_ids)
    report["cost"] = format_rat(result.cost)
    return EXIT_OK, report


def _cmd_oracle(args) -> tuple[int, dict]:
    loaded = files.parse_instance(args.file)
    report: dict = {"command": "oracle", "instance": args.file}
    if isinstance(loaded.instance, MmstpInstance):
        tree, objective = mmstp_brute_force(loaded.instance, cap=args.max_trees)
        report["optimum"] = {
            "tree": list(tree.sorted_ids),
            "objective": format_rat(objective),
        }
        return EXIT_OK, report
    inst = loaded.instance
    c = oracle_linearize(inst, cap=args.max_trees)
    tree, cost = brute_force_optimum(inst, cap=args.max_trees)
    report["feasible"] = c is not None
    if c is not None:
        report["oracle_c"] = _rats(c)
    report["optimum"] = {"tree": list(tree.sorted_ids), "cost": format_rat(cost)}
    claimed = loaded.claimed_c
    if claimed is not None:
        counter = verify_linearization(inst, claimed, cap=args.max_trees)
        report["claimed_c"] = _rats(claimed)
        report["claim_matches"] = counter is None
        note = loaded.metadata.get("claim_note")
        if note:
            report["claim_note"] = note
    return EXIT_OK if c is not None else EXIT_NEGATIVE, report


def _cmd_gen(args) -> tuple[int, dict]:
    params: dict = {}
    if args.graph is not None:
        params["graph"] = args.graph
    if args.n is not None:
        params["n"] = args.n
    if args.n2 is not None:
        params["n2"] = args.n2
    if args.base is not None:
        params["base"] = args.base
    if args.values is not None:
        params["values"] = [int(x) for x in args.values.split(",") if x]
    if args.target is not None:
        params["target"] = args.target
    spec = generators.GenSpec(args.family, params, args.seed)
    generated = generators.generate(spec)
    files.write_instance(generated.instance, args.output, generated.metadata)
    report = {
        "command": "gen",
        "family": args.family,
        "written": args.output,
    }
    return EXIT_OK, report


def _cmd_factored_check(args) -> tuple[int, dict]:
    loaded, inst = _load_quadratic(args.file)
    if not isinstance(inst.cost, FactoredCost):
        raise ValidationError("factored-check needs a factored-cost instance file")
    fc = inst.cost
    result = recognize_factored_sum(fc.a, fc.b, fc.c, fc.d)
    report: dict = {"command": "factored-check", "instance": inst.name or args.file}
    if isinstance(result, NotSum):
        report["result"] = "not-sum"
        report["reason"] = result.reason
        report["indices"] = list(result.indices)
        return EXIT_NEGATIVE, report
    report["result"] = "sum"
    if isinstance(result, ConstantCase):
        report["case"] = "constant"
        report["constant_left"] = result.constant_left
        report["constant_right"] = result.constant_right
    else:
        assert isinstance(result, AffineCase)
        report["case"] = "affine"
        report["k"] = format_rat(result.k)
        report["k1"] = format_rat(result.k1)
        report["k2"] = format_rat(result.k2)
    report["e"] = _rats(result.e)
    report["f"] = _rats(result.f)
    return EXIT_OK, report


_COMMANDS = {
    "check": _cmd_check,
    "linearize": _cmd_linearize,
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "factored-check": _cmd_factored_check,
}


def _dispatch(args) -> tuple[int, dict]:
    return _COMMANDS[args.command](args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
