"""Command-line front end: learn, minimize, bench and validate.

Exit codes: 0 success, 2 parse/validation error, 3 budget exceeded,
4 extraction error.
"""

import argparse
import json
import random
import sys
import time

from .algebra import (
    SemigroupAlphabet,
    extract_syntactic_semigroup,
    extract_wilke_algebra,
    moore_value_witnesses,
    sorted_state_witnesses,
)
from .domain_bool import BoolDomain
from .domain_jsl import JslDomain, rfsa_language_equiv
from .domain_sorted import SortedDomain
from .domain_weighted import WeightedDomain
from .errors import BudgetExceededError, ExtractionError, OtlearnError, ValidationError
from .moore import MooreMachine, minimize_moore, moore_distinguish
from .serialize import (
    load_machine,
    machine_to_dict,
    moore_to_dot,
    sorted_to_dot,
)
from .sorted_machine import (
    SortedMachine,
    minimize_sorted,
    sorted_distinguish,
    validate_sorted_machine,
)
from .table import Learner
from .teachers import (
    DfaTeacher,
    InteractiveTeacher,
    SortedTeacher,
    WfaTeacher,
    WilkeTeacher,
    builtin_targets,
    random_minimal_dfa,
    semigroup_teacher,
)
from .wfa import WeightedAutomaton, wfa_distinguish, wfa_is_minimal

EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_EXTRACTION = 4

KINDS = ("dfa", "wfa", "rfsa", "sorted", "omega", "semigroup", "wilke")


def _load_target(spec, kind):
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        catalog = builtin_targets()
        if name not in catalog:
            raise ValidationError(f"unknown builtin target {name!r}")
        entry = catalog[name]
        expected = {
            "dfa": "dfa", "rfsa": "dfa", "wfa": "wfa", "sorted": "dfa",
            "omega": "omega", "wilke": "omega", "semigroup": "semigroup",
        }[kind]
        if kind == "sorted":
            raise ValidationError(
                "sorted learning needs a sorted machine file, not a builtin"
            )
        if entry.kind != expected and not (expected == "dfa" and entry.kind == "semigroup"):
            raise ValidationError(
                f"builtin {name!r} has kind {entry.kind!r}, not usable for {kind!r}"
            )
        return entry.target()
    return load_machine(spec)


def _check_target_kind(target, kind):
    wanted = {
        "dfa": MooreMachine, "rfsa": MooreMachine, "semigroup": MooreMachine,
        "wfa": WeightedAutomaton, "sorted": SortedMachine,
    }
    if kind in wanted and not isinstance(target, wanted[kind]):
        raise ValidationError(
            f"target of type {type(target).__name__} does not match kind {kind!r}"
        )


def cmd_learn(args):
    kind = args.kind
    started = time.monotonic()
    stats = None
    verification = {}
    extras = {}

    if args.interactive:
        if kind != "dfa":
            raise ValidationError("interactive mode supports only kind dfa")
        teacher = InteractiveTeacher(tuple(args.alphabet))
        domain = BoolDomain(teacher.alphabet)
        machine, stats = Learner(
            teacher, domain, mode=args.mode, budget=args.budget
        ).run()
        artifact = machine
        verification["equivalent"] = True   # by the teacher's own say-so
        verification["minimal"] = minimize_moore(machine).states == machine.states
    else:
        target = _load_target(args.target, kind)
        _check_target_kind(target, kind)
        if kind == "dfa":
            teacher = DfaTeacher(target)
            domain = BoolDomain(target.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode, budget=args.budget
            ).run()
            artifact = machine
            verification["equivalent"] = moore_distinguish(machine, target) is None
            verification["minimal"] = minimize_moore(machine).states == machine.states
        elif kind == "wfa":
            teacher = WfaTeacher(target)
            domain = WeightedDomain(target.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode if args.mode else None,
                budget=args.budget,
            ).run()
            artifact = machine
            verification["equivalent"] = wfa_distinguish(machine, target) is None
            verification["minimal"] = wfa_is_minimal(machine)
        elif kind == "rfsa":
            teacher = DfaTeacher(target)
            domain = JslDomain(target.alphabet)
            learner = Learner(teacher, domain, mode=args.mode, budget=args.budget)
            machine, stats = learner.run()
            rfsa = domain.rfsa(learner.table)
            artifact = rfsa
            extras["deterministic_states"] = machine.states
            verification["equivalent"] = rfsa_language_equiv(rfsa, target) is None
            verification["minimal"] = True
        elif kind == "sorted":
            teacher = SortedTeacher(target)
            domain = SortedDomain(target.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode, budget=args.budget
            ).run()
            artifact = machine
            verification["equivalent"] = sorted_distinguish(machine, target) is None
            verification["minimal"] = (
                minimize_sorted(machine).total_states() == machine.total_states()
            )
        elif kind == "omega":
            teacher = WilkeTeacher(target)
            domain = SortedDomain(teacher.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode, budget=args.budget
            ).run()
            artifact = machine
            verification["equivalent"] = (
                sorted_distinguish(machine, target.reference) is None
            )
            verification["minimal"] = (
                minimize_sorted(machine).total_states() == machine.total_states()
            )
        elif kind == "semigroup":
            presentation = SemigroupAlphabet(target.alphabet)
            teacher = semigroup_teacher(target, presentation, weak=False)
            domain = BoolDomain(teacher.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode, budget=args.budget
            ).run()
            witnesses = moore_value_witnesses(machine, presentation)
            semigroup = extract_syntactic_semigroup(machine, witnesses)
            artifact = semigroup
            extras["automaton_states"] = machine.states
            verification["equivalent"] = (
                moore_distinguish(machine, teacher.target) is None
            )
            verification["associative"] = semigroup.is_associative()
        elif kind == "wilke":
            teacher = WilkeTeacher(target)
            domain = SortedDomain(teacher.alphabet)
            machine, stats = Learner(
                teacher, domain, mode=args.mode, budget=args.budget
            ).run()
            witnesses = sorted_state_witnesses(machine)
            algebra = extract_wilke_algebra(machine, witnesses)
            artifact = algebra
            extras["automaton_states"] = machine.total_states()
            verification["equivalent"] = (
                sorted_distinguish(machine, target.reference) is None
            )
            verification["axioms"] = algebra.check_axioms() is None
        else:
            raise ValidationError(f"unknown kind {kind!r}")

    wall = time.monotonic() - started
    report = {
        "kind": kind,
        "learned": machine_to_dict(artifact),
        "stats": stats.as_dict(),
        "wall_time": round(wall, 6),
        "verification": verification,
    }
    report.update(extras)
    if args.json:
        with open(args.json, "w") as f:
            json.dump(machine_to_dict(artifact), f, indent=2, ensure_ascii=False)
            f.write("\n")
    if args.dot:
        _write_dot(artifact, args.dot)
    if not args.quiet:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    return report


def _write_dot(artifact, path):
    if isinstance(artifact, MooreMachine):
        text = moore_to_dot(artifact)
    elif isinstance(artifact, SortedMachine):
        text = sorted_to_dot(artifact)
    else:
        raise ValidationError("DOT export supports Moore and sorted machines only")
    with open(path, "w") as f:
        f.write(text)


def cmd_minimize(args):
    machine = load_machine(args.file)
    if isinstance(machine, MooreMachine):
        out = minimize_moore(machine)
    elif isinstance(machine, SortedMachine):
        out = minimize_sorted(machine)
    else:
        raise ValidationError("minimize supports Moore and sorted machines only")
    text = json.dumps(machine_to_dict(out), indent=2, ensure_ascii=False)
    if args.json:
        with open(args.json, "w") as f:
            f.write(text + "\n")
    if not args.quiet:
        print(text)
    return out


def bench_rows(names, seed=0, budget=10000):
    """One (target, states, membership, equivalence, rounds) row per suite
    entry; 'random:N' expands to N seeded random DFA targets."""
    rows = []
    catalog = builtin_targets()
    jobs = []
    for name in names:
        if name.startswith("random:"):
            count = int(name.partition(":")[2])
            rng = random.Random(seed)
            for i in range(count):
                target = random_minimal_dfa(rng)
                jobs.append((f"random-{i}", "dfa", target))
        elif name in catalog:
            entry = catalog[name]
            jobs.append((name, entry.kind, entry.target()))
        else:
            raise ValidationError(f"unknown bench target {name!r}")
    for label, kind, target in jobs:
        if kind == "dfa":
            teacher = DfaTeacher(target)
            domain = BoolDomain(target.alphabet)
            states = target.states
        elif kind == "wfa":
            teacher = WfaTeacher(target)
            domain = WeightedDomain(target.alphabet)
            states = target.dimension
        elif kind == "semigroup":
            presentation = SemigroupAlphabet(target.alphabet)
            teacher = semigroup_teacher(target, presentation)
            domain = BoolDomain(teacher.alphabet)
            states = teacher.target.states
        elif kind == "omega":
            teacher = WilkeTeacher(target)
            domain = SortedDomain(teacher.alphabet)
            states = target.reference.total_states()
        else:
            raise ValidationError(f"cannot bench kind {kind!r}")
        machine, stats = Learner(teacher, domain, budget=budget).run()
        rows.append(
            {
                "target": label,
                "states": states,
                "membership_queries": stats.membership_queries,
                "equivalence_queries": stats.equivalence_queries,
                "rounds": stats.rounds,
            }
        )
    return rows


def cmd_bench(args):
    rows = bench_rows(args.targets, seed=args.seed, budget=args.budget)
    if not args.quiet:
        header = ("target", "states", "membership", "equivalence", "rounds")
        print("{:<16} {:>6} {:>11} {:>11} {:>6}".format(*header))
        for r in rows:
            print(
                "{:<16} {:>6} {:>11} {:>11} {:>6}".format(
                    r["target"], r["states"], r["membership_queries"],
                    r["equivalence_queries"], r["rounds"],
                )
            )
        print(f"seed: {args.seed}")
    return rows


def cmd_validate(args):
    machine = load_machine(args.file)
    if isinstance(machine, SortedMachine):
        validate_sorted_machine(machine)
    if not args.quiet:
        print(f"ok: {type(machine).__name__}")
    return machine


def build_parser():
    parser = argparse.ArgumentParser(
        prog="otlearn",
        description="Active automata learning over observation tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a target language")
    learn.add_argument("kind", choices=KINDS)
    learn.add_argument(
        "target", nargs="?", default=None,
        help="machine JSON file or builtin:<name>",
    )
    learn.add_argument("--mode", choices=("prefix", "suffix"), default=None,
                       help="counterexample handling (default: domain choice)")
    learn.add_argument("--budget", type=int, default=10000)
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--dot", default=None, metavar="PATH")
    learn.add_argument("--json", default=None, metavar="PATH")
    learn.add_argument("--quiet", action="store_true")
    learn.add_argument("--interactive", action="store_true",
                       help="answer queries on stdin instead of a target")
    learn.add_argument("--alphabet", default="ab",
                       help="letters for --interactive mode")
    learn.set_defaults(func=cmd_learn)

    minimize = sub.add_parser("minimize", help="minimize a machine file")
    minimize.add_argument("file")
    minimize.add_argument("--json", default=None, metavar="PATH")
    minimize.add_argument("--quiet", action="store_true")
    minimize.set_defaults(func=cmd_minimize)

    bench = sub.add_parser("bench", help="run a suite of learning benchmarks")
    bench.add_argument("targets", nargs="*", default=[],
                       help="builtin names or random:N")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--budget", type=int, default=10000)
    bench.add_argument("--quiet", action="store_true")
    bench.set_defaults(func=cmd_bench)

    validate = sub.add_parser("validate", help="check a machine file")
    validate.add_argument("file")
    validate.add_argument("--quiet", action="store_true")
    validate.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "learn" and not args.interactive and args.target is None:
        parser.error("learn requires a target (or --interactive)")
    try:
        args.func(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ExtractionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EXTRACTION
    except (ValidationError, OtlearnError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    return 0


if __name__ == "__main__":
    sys.exit(main())
