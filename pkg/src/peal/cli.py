"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when a checked property fails
(axioms, suite invariants, refused preconditions), 2 for input or usage
errors.  Reports are deterministic given (input, seed) and print exact
fractions only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import Dict, List, Optional

from . import decompositions as dec
from . import ideals as idl
from . import states as st
from .constructions import (
    SymbolicPea,
    builtin_pea,
    gamma_interval_finite,
    lex_product_pea,
    unitize,
)
from .core import (
    InputError,
    PartialAdditionTable,
    PealError,
    check_axioms,
    complements,
    dumps_document,
    induced_order,
    is_symmetric,
    isotropic_data,
    load_table,
    table_to_document,
)
from .groups import UnitalPoGroup, builtin_group
from .suite import run_suite


def _digest(path: str) -> str:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError as exc:
        raise InputError("cannot read %r: %s" % (path, exc)) from None


def _default_seed() -> int:
    env = os.environ.get("PEA_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError("PEA_SEED must be an integer, got %r" % (env,)) from None


class Report:
    def __init__(self, command: str, argv: List[str], seed: int):
        self.data: Dict = {
            "command": command,
            "argv": list(argv),
            "seed": seed,
            "results": {},
            "verdicts": [],
        }

    def result(self, key: str, value) -> None:
        self.data["results"][key] = value

    def verdict(self, name: str, passed: bool, detail: str = "") -> None:
        self.data["verdicts"].append(
            {"name": name, "passed": bool(passed), "detail": detail}
        )

    @property
    def all_passed(self) -> bool:
        return all(v["passed"] for v in self.data["verdicts"])

    def emit(self, fmt: str, stream=None) -> None:
        stream = stream or sys.stdout
        if fmt == "json":
            json.dump(self.data, stream, sort_keys=True, indent=2)
            stream.write("\n")
            return
        for key in sorted(self.data["results"]):
            stream.write("%s: %s\n" % (key, json.dumps(self.data["results"][key], sort_keys=True)))
        for v in self.data["verdicts"]:
            status = "pass" if v["passed"] else "FAIL"
            tail = ("  " + v["detail"]) if v["detail"] else ""
            stream.write("[%s] %s%s\n" % (status, v["name"], tail))


def _state_strings(s: st.StateVector) -> Dict[str, str]:
    return s.as_strings()


def cmd_verify(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    kind = args.kind or ("pea" if table.one is not None else "gpea")
    axioms = check_axioms(table, kind)
    report.verdict(
        "axioms[%s]" % kind,
        axioms.passed,
        "; ".join("%s at %s" % (t, ",".join(w)) for t, w in axioms.violations),
    )
    if not axioms.passed:
        return 1
    order = induced_order(table)
    report.result("order_pairs", sorted(["%s<=%s" % p for p in order.pairs]))
    report.result("order_covers", sorted(["%s<%s" % p for p in order.covering_pairs]))
    info, infinit = isotropic_data(table)
    report.result(
        "isotropic_index",
        {e: ("inf" if i.iota is None else i.iota) for e, i in info.items()},
    )
    report.result("infinit", sorted(infinit))
    if kind == "pea":
        report.result(
            "complements",
            {e: list(complements(table, e)) for e in table.elements},
        )
        sym = is_symmetric(table)
        report.result("symmetric", sym.symmetric)
        if sym.witness:
            report.result("symmetry_witness", list(sym.witness))
    return 0


def cmd_states(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    space = st.solve_state_space(table)
    report.result("consistent", space.consistent)
    report.result("free_parameters", space.dimension)
    if space.particular is not None:
        report.result(
            "particular_solution",
            {e: str(v) for e, v in space.particular.items()},
        )
        report.result(
            "basis",
            [{e: str(v) for e, v in vec.items()} for vec in space.basis],
        )
        report.result("free_elements", list(space.free_elements))
    report.result("extremal_states", [_state_strings(s) for s in space.extremal_states])
    report.verdict("state-space-solved", True)
    if args.extremal:
        for i, s in enumerate(space.extremal_states):
            rep = st.is_extremal(table, s)
            report.verdict("extremal[%d]" % i, rep.extremal)
    if args.discrete is not None:
        found = st.enumerate_discrete_states(table, args.discrete)
        report.result(
            "discrete_states_n%d" % args.discrete,
            [_state_strings(s) for s in found],
        )
        for s in found:
            cls = st.classify_state(table, s)
            if not cls.discrete or cls.n != args.discrete:
                report.verdict("discrete-classification", False, str(cls))
    return 0 if report.all_passed else 1


def cmd_decompose(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    pairs = dec.decomposition_state_bijection(table, args.n)
    report.result(
        "decompositions",
        [[sorted(p) for p in D.parts] for D, _ in pairs],
    )
    report.result("states", [_state_strings(s) for _, s in pairs])
    report.verdict("bijection-mutually-inverse", True)
    for i, (D, _) in enumerate(pairs):
        comp = dec.check_comparability(table, D)
        report.verdict(
            "comparability[%d]" % i,
            True,
            "comparable" if comp.comparable else "not comparable: %r" % (comp.witness,),
        )
    return 0


def cmd_ideals(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    ideals = idl.enumerate_ideals(table)
    report.result(
        "ideals",
        [
            {
                "members": i.sorted_ids(),
                "normal": i.normal,
                "maximal": i.maximal,
                "riesz": i.riesz,
            }
            for i in ideals
        ],
    )
    if table.one is not None:
        rad, rad_n = idl.radicals(table)
        report.result("radical", sorted(rad))
        report.result("normal_radical", sorted(rad_n))
        pairs = idl.two_valued_partition(table)
        report.result(
            "two_valued_partition",
            [
                {"ideal": i.sorted_ids(), "state": _state_strings(s)}
                for i, s in pairs
            ],
        )
    report.verdict("ideal-lattice-enumerated", True)
    return 0


def cmd_quotient(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    members = [m for m in args.ideal.split(",") if m]
    q, linear, mapping = idl.quotient(table, members)
    report.result("quotient_document", table_to_document(q))
    report.result("linear", linear)
    report.result("class_of", mapping)
    report.verdict("quotient-well-defined", True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps_document(table_to_document(q)))
    return 0


def cmd_unitize(args, report: Report) -> int:
    table = load_table(args.file)
    report.result("input_digest", _digest(args.file))
    lifted = unitize(table)
    report.result("unitization_document", table_to_document(lifted))
    report.verdict("unitization-is-symmetric-pea", True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps_document(table_to_document(lifted)))
    return 0


def _construct_object(args, seed: int):
    if args.builtin:
        group = builtin_group(args.group, args.order) if args.group else None
        return builtin_pea(args.builtin, group)
    if args.lex_product is not None:
        if not args.group:
            raise InputError("--lex-product requires --group")
        group = builtin_group(args.group, args.order)
        h = tuple(int(x) for x in args.offset.split(",")) if args.offset else None
        return lex_product_pea(args.lex_product, group, h=h, seed=seed)
    if args.interval:
        if not args.group:
            raise InputError("--interval requires --group")
        group = builtin_group(args.group, args.order)
        u = tuple(int(x) for x in args.interval.split(","))
        return gamma_interval_finite(UnitalPoGroup(group, u))
    raise InputError("construct needs --builtin, --lex-product, or --interval")


def cmd_construct(args, report: Report, seed: int) -> int:
    obj = _construct_object(args, seed)
    if isinstance(obj, PartialAdditionTable):
        doc = table_to_document(obj)
        report.result("document", doc)
        report.verdict("construction", True)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(dumps_document(doc))
        return 0
    assert isinstance(obj, SymbolicPea)
    report.result("symbolic", obj.describe())
    for verdict in obj.sampled_axiom_report(seed=seed, samples=args.samples):
        report.verdict("sampled-%s" % verdict.name, verdict.passed, verdict.witness or "")
    report.verdict(
        "sampled-state-additivity",
        obj.sampled_state_additivity(seed=seed, samples=args.samples).passed,
    )
    return 0 if report.all_passed else 1


def cmd_suite(args, report: Report, seed: int) -> int:
    suite = run_suite(max_size=args.max_size, seed=seed, samples=args.samples)
    report.result("corpus_sizes", {str(k): v for k, v in sorted(suite.corpus_sizes.items())})
    for name, ok, detail in suite.verdicts:
        report.verdict(name, ok, detail)
    if suite.witness_document is not None:
        report.result("witness_document", json.loads(suite.witness_document))
    return 0 if suite.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pea",
        description="Exact-arithmetic analysis of pseudo-effect algebras.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=None,
                        help="sampling seed (default: PEA_SEED or 0)")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="axioms, order, complements, symmetry")
    p.add_argument("file")
    p.add_argument("--kind", choices=("pea", "gpea"), default=None)

    p = sub.add_parser("states", help="state space, discrete states, extremality")
    p.add_argument("file")
    p.add_argument("--discrete", type=int, default=None, metavar="N")
    p.add_argument("--extremal", action="store_true")

    p = sub.add_parser("decompose", help="n-decompositions and their states")
    p.add_argument("file")
    p.add_argument("n", type=int)

    p = sub.add_parser("ideals", help="ideal lattice, radicals, two-valued partition")
    p.add_argument("file")

    p = sub.add_parser("quotient", help="quotient by a normal Riesz ideal")
    p.add_argument("file")
    p.add_argument("--ideal", required=True, help="comma-separated member ids")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("unitize", help="unitization of a symmetric GPEA")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("construct", help="builtins and symbolic constructions")
    p.add_argument("--builtin", default=None,
                   help="diamond | boolean4 | chain:N | example46 | example47 | twisted_gamma")
    p.add_argument("--lex-product", type=int, default=None, metavar="N")
    p.add_argument("--interval", default=None, metavar="U",
                   help="comma-separated unit coordinates for a finite interval")
    p.add_argument("--group", default=None, help="z:K | lex:z:K | twisted-z3")
    p.add_argument("--order", default="pointwise", choices=("pointwise", "lex"))
    p.add_argument("--offset", default=None, help="comma-separated offset coordinates")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("suite", help="exhaustive small-model theorem suite")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="sampling seed (same as the global flag)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        report = Report(args.cmd, argv, seed)
        if args.cmd == "verify":
            code = cmd_verify(args, report)
        elif args.cmd == "states":
            code = cmd_states(args, report)
        elif args.cmd == "decompose":
            code = cmd_decompose(args, report)
        elif args.cmd == "ideals":
            code = cmd_ideals(args, report)
        elif args.cmd == "quotient":
            code = cmd_quotient(args, report)
        elif args.cmd == "unitize":
            code = cmd_unitize(args, report)
        elif args.cmd == "construct":
            code = cmd_construct(args, report, seed)
        elif args.cmd == "suite":
            code = cmd_suite(args, report, seed)
        else:  # pragma: no cover
            raise InputError("unknown command %r" % (args.cmd,))
    except InputError as exc:
        print("input error: %s" % (exc,), file=sys.stderr)
        return 2
    except PealError as exc:
        print("check failed: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1
    report.emit(args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
