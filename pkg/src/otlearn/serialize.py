"""JSON and DOT encodings for every machine and algebra kind.

The JSON layouts are a bit-exact contract: rationals travel as "p/q"
strings, sorted machines carry per-sort blocks with "src>dst" letter keys.
"""

import json

from .errors import ValidationError
from .linalg import format_rational, parse_rational
from .moore import MooreMachine
from .sorted_machine import SortedMachine, sorted_alphabet, sorted_machine
from .wfa import WeightedAutomaton, wfa_from_lists


def moore_to_dict(m):
    return {
        "kind": "moore",
        "alphabet": list(m.alphabet),
        "states": m.states,
        "initial": m.initial,
        "output": {str(q): m.outputs[q] for q in range(m.states)},
        "transitions": {
            str(q): {a: m.transitions[q][i] for i, a in enumerate(m.alphabet)}
            for q in range(m.states)
        },
    }


def moore_from_dict(d):
    alphabet = tuple(d["alphabet"])
    n = d["states"]
    trans = tuple(
        tuple(d["transitions"][str(q)][a] for a in alphabet) for q in range(n)
    )
    outs = tuple(d["output"][str(q)] for q in range(n))
    return MooreMachine(alphabet, n, d["initial"], trans, outs)


def wfa_to_dict(w):
    return {
        "kind": "wfa",
        "alphabet": list(w.alphabet),
        "states": w.dimension,
        "initial": [format_rational(x) for x in w.initial],
        "final": [format_rational(x) for x in w.final],
        "transitions": {
            a: [[format_rational(x) for x in row] for row in w.matrices[i]]
            for i, a in enumerate(w.alphabet)
        },
    }


def wfa_from_dict(d):
    alphabet = tuple(d["alphabet"])
    return wfa_from_lists(
        alphabet,
        [parse_rational(x) for x in d["initial"]],
        {
            a: [[parse_rational(x) for x in row] for row in d["transitions"][a]]
            for a in alphabet
        },
        [parse_rational(x) for x in d["final"]],
    )


def sorted_to_dict(m):
    alpha = m.alphabet
    return {
        "kind": "sorted",
        "sorts": list(alpha.sorts),
        "letters": {f"{src}>{dst}": list(ls) for (src, dst), ls in alpha.letters},
        "generators": {s: list(gs) for s, gs in alpha.generators},
        "states": {s: n for s, n in m.states},
        "initial": {s: dict(pairs) for s, pairs in m.initial},
        "output": {s: list(row) for s, row in m.outputs},
        "transitions": {a: list(row) for a, row in m.transitions},
    }


def sorted_from_dict(d):
    letters = {}
    for key, ls in d["letters"].items():
        src, _, dst = key.partition(">")
        letters[(src, dst)] = ls
    alpha = sorted_alphabet(d["sorts"], letters, d["generators"])
    return sorted_machine(
        alpha,
        d["states"],
        {s: dict(m) for s, m in d["initial"].items()},
        d["transitions"],
        d["output"],
    )


def rfsa_to_dict(r):
    return {
        "kind": "rfsa",
        "alphabet": list(r.alphabet),
        "states": r.states,
        "initial": list(r.initial),
        "transitions": {
            str(q): {
                a: list(r.transitions[q][i]) for i, a in enumerate(r.alphabet)
            }
            for q in range(r.states)
        },
        "accepting": list(r.accepting),
    }


def rfsa_from_dict(d):
    from .domain_jsl import Rfsa

    alphabet = tuple(d["alphabet"])
    n = d["states"]
    trans = tuple(
        tuple(tuple(d["transitions"][str(q)][a]) for a in alphabet)
        for q in range(n)
    )
    return Rfsa(alphabet, n, tuple(d["initial"]), trans, tuple(d["accepting"]))


def semigroup_to_dict(sg):
    return {"kind": "semigroup", "size": sg.size, "mult": [list(r) for r in sg.mult]}


def wilke_to_dict(w):
    return {
        "kind": "wilke",
        "plus": w.plus_size,
        "omega": w.omega_size,
        "product": [list(r) for r in w.product],
        "mixed": [list(r) for r in w.mixed],
        "omega_power": list(w.omega_power),
    }


_TO_DICT = {
    MooreMachine: moore_to_dict,
    WeightedAutomaton: wfa_to_dict,
    SortedMachine: sorted_to_dict,
}


def machine_to_dict(m):
    for cls, fn in _TO_DICT.items():
        if isinstance(m, cls):
            return fn(m)
    # Rfsa, FiniteSemigroup and WilkeAlgebra are matched by duck typing to
    # avoid import cycles
    kind = type(m).__name__
    if kind == "Rfsa":
        return rfsa_to_dict(m)
    if kind == "FiniteSemigroup":
        return semigroup_to_dict(m)
    if kind == "WilkeAlgebra":
        return wilke_to_dict(m)
    raise ValidationError(f"cannot serialize {type(m)!r}")


def machine_from_dict(d):
    kind = d.get("kind")
    if kind == "moore":
        return moore_from_dict(d)
    if kind == "wfa":
        return wfa_from_dict(d)
    if kind == "sorted":
        return sorted_from_dict(d)
    if kind == "rfsa":
        return rfsa_from_dict(d)
    raise ValidationError(f"unknown machine kind {kind!r}")


def dump_machine(m, path):
    with open(path, "w") as f:
        json.dump(machine_to_dict(m), f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_machine(path):
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed JSON in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValidationError(f"expected a JSON object in {path}")
    try:
        return machine_from_dict(data)
    except (KeyError, TypeError, IndexError) as e:
        raise ValidationError(f"malformed machine file {path}: {e}") from e


def moore_to_dot(m, name="moore"):
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none label=""];']
    for q in range(m.states):
        shape = "doublecircle" if m.outputs[q] else "circle"
        lines.append(f'  q{q} [shape={shape} label="{q}"];')
    lines.append(f"  __start -> q{m.initial};")
    for q in range(m.states):
        by_target = {}
        for i, a in enumerate(m.alphabet):
            by_target.setdefault(m.transitions[q][i], []).append(str(a))
        for target, letters in sorted(by_target.items()):
            label = ",".join(letters)
            lines.append(f'  q{q} -> q{target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def sorted_to_dot(m, name="sorted"):
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for sort, n in m.states:
        for q in range(n):
            shape = "doublecircle" if m.output(sort, q) else "circle"
            lines.append(f'  "{sort}{q}" [shape={shape} label="{sort}:{q}"];')
    for s, pairs in m.initial:
        for x, q in pairs:
            lines.append(f'  "__in_{x}" [shape=none label="{x}"];')
            lines.append(f'  "__in_{x}" -> "{s}{q}";')
    for a, row in m.transitions:
        src, dst = m.alphabet.letter_pair(a)
        for q, target in enumerate(row):
            lines.append(f'  "{src}{q}" -> "{dst}{target}" [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
