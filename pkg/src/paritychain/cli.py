"""Command-line front end for the pipeline, plus the seeded random generator."""

from __future__ import annotations

import argparse
import json
import random
import string
import sys
from pathlib import Path

from .canonical import (
    _restrict_to,
    chain_stats,
    extract_chain,
    is_streamlined,
    is_structured,
    streamline,
    structure_dpa_with_map,
)
from .colors import corun_color
from .core import (
    Alphabet,
    AutomatonError,
    LassoWord,
    ParityAutomaton,
    PreconditionError,
    Transition,
    complete_dpa,
    validate_dpa,
)
from .formats import FormatError, emit_native, letter_name, parse_hoa, parse_native
from .graphs import (
    dpa_language_equiv,
    dpa_lasso_run,
    gca_lasso_member,
    reachable_states,
    scc_decompose,
    state_equivalence,
)


def default_letter_names(count: int) -> tuple[str, ...]:
    if count <= 26:
        return tuple(string.ascii_lowercase[:count])
    return tuple(f"l{i}" for i in range(count))


def random_dpa(
    states: int, colors: int, letters: int, seed: int,
    letter_names: tuple[str, ...] | None = None,
) -> ParityAutomaton:
    """Reproducible random complete DPA.

    Successor and color are drawn uniformly per (state, letter), the
    result is pruned to the part reachable from state 0 (order-preserving
    renumbering) and completed, so it is always a valid complete DPA and
    byte-identical per seed.
    """
    if states < 1 or colors < 1 or letters < 1:
        raise AutomatonError("states, colors, and letters must be positive")
    names = default_letter_names(letters) if letter_names is None else letter_names
    rng = random.Random(seed)
    ts = tuple(
        Transition(q, sym, rng.randrange(states), rng.randrange(colors))
        for q in range(states)
        for sym in range(letters)
    )
    a = ParityAutomaton(Alphabet(names), states, 0, ts)
    reach = sorted(reachable_states(a, 0))
    if len(reach) < states:
        a, _ = _restrict_to(a, reach)
    return complete_dpa(a)


# -- lasso words on the command line ------------------------------------------

def parse_lasso_text(text: str, alphabet: Alphabet) -> LassoWord:
    """Read the u:v syntax: letters comma-separated by name, or juxtaposed
    when all involved names are single characters."""
    if ":" not in text:
        raise FormatError(f"lasso {text!r} must be written as prefix:period, e.g. :ab")
    prefix_text, _, period_text = text.partition(":")
    prefix = _segment_letters(prefix_text, alphabet)
    period = _segment_letters(period_text, alphabet)
    if not period:
        raise FormatError(f"lasso {text!r} has an empty period")
    return LassoWord(prefix, period)


def _segment_letters(segment: str, alphabet: Alphabet) -> tuple[int, ...]:
    if segment == "":
        return ()
    if "," in segment:
        names = segment.split(",")
    elif segment in alphabet.letters:
        names = [segment]
    elif all(ch in alphabet.letters for ch in segment):
        names = list(segment)
    else:
        raise FormatError(
            f"cannot read {segment!r} over alphabet {list(alphabet.letters)}"
        )
    return tuple(alphabet.index(name) for name in names)


def format_lasso(w: LassoWord, alphabet: Alphabet) -> str:
    juxtapose = all(len(name) == 1 for name in alphabet.letters)

    def segment(indices):
        names = [alphabet.letters[i] for i in indices]
        return "".join(names) if juxtapose else ",".join(names)

    return f"{segment(w.prefix)}:{segment(w.period)}"


# -- command implementations ---------------------------------------------------

def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, *, validate: bool = True):
    text = _read(path)
    if text.lstrip().startswith("HOA:"):
        return parse_hoa(text, allow_incomplete=not validate)
    return parse_native(text, validate=validate)


def _load_dpa(path: str) -> ParityAutomaton:
    aut = _load(path)
    if not isinstance(aut, ParityAutomaton):
        raise FormatError(f"{path}: expected a deterministic parity automaton")
    return aut


def _emit_result(args, lines: list[str], record: dict) -> None:
    if args.json:
        print(json.dumps(record))
    else:
        for line in lines:
            print(line)


def _write_automaton(args, automaton, extra_record: dict | None = None) -> None:
    text = emit_native(automaton)
    if args.out is None:
        sys.stdout.write(text)
        return
    Path(args.out).write_text(text, encoding="utf-8")
    record = {"out": args.out, "states": automaton.state_count}
    record.update(extra_record or {})
    lines = [f"wrote {args.out} ({automaton.state_count} states)"]
    if extra_record:
        lines += [f"{key}: {value}" for key, value in extra_record.items()]
    _emit_result(args, lines, record)


def cmd_validate(args) -> int:
    aut = _load(args.file, validate=False)
    if isinstance(aut, ParityAutomaton):
        report = validate_dpa(aut)
        ok, violations = report.ok, list(report.violations)
    else:
        ok, violations = True, []
    lines = ["ok"] if ok else ["invalid:"] + ["  " + v for v in violations]
    _emit_result(args, lines, {"ok": ok, "violations": violations})
    return 0 if ok else 1


def cmd_structure(args) -> int:
    a = _load_dpa(args.file)
    structured, id_map = structure_dpa_with_map(a)
    extra = {}
    if structured.state_count != a.state_count:
        extra["id_map"] = {str(old): new for old, new in sorted(id_map.items())}
    _write_automaton(args, structured, extra)
    return 0


def cmd_streamline(args) -> int:
    a = _load_dpa(args.file)
    _write_automaton(args, streamline(a))
    return 0


def cmd_chain(args) -> int:
    a = _load_dpa(args.file)
    chain = extract_chain(a, state_equivalence(a))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stats = chain_stats(chain)
    levels = []
    for level_stats, automaton in zip(stats, chain.levels):
        filename = f"A_{level_stats.level}.aut"
        (outdir / filename).write_text(emit_native(automaton), encoding="utf-8")
        levels.append(
            {
                "level": level_stats.level,
                "file": filename,
                "states": level_stats.states,
                "accepting_transitions": level_stats.accepting_transitions,
                "jump_transitions": level_stats.jump_transitions,
            }
        )
    manifest = {"source_color_max": chain.source_color_max, "levels": levels}
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    lines = [f"wrote {len(levels)} chain levels to {args.out}"] + [
        f"  A_{item['level']}: {item['accepting_transitions']} accepting, "
        f"{item['jump_transitions']} jumps"
        for item in levels
    ]
    _emit_result(args, lines, manifest)
    return 0


def cmd_color(args) -> int:
    a = _load_dpa(args.file)
    w = parse_lasso_text(args.lasso, a.alphabet)
    color = corun_color(a, state_equivalence(a), w)
    _emit_result(
        args,
        [f"natural color: {color}"],
        {"lasso": format_lasso(w, a.alphabet), "natural_color": color},
    )
    return 0


def cmd_member(args) -> int:
    aut = _load(args.file)
    w = parse_lasso_text(args.lasso, aut.alphabet)
    if isinstance(aut, ParityAutomaton):
        analysis = dpa_lasso_run(aut, w)
        verdict = "accept" if analysis.accepted else "reject"
        _emit_result(
            args,
            [f"{verdict} (dominating color {analysis.dominating_color})"],
            {
                "lasso": format_lasso(w, aut.alphabet),
                "verdict": verdict,
                "dominating_color": analysis.dominating_color,
            },
        )
        return 0 if analysis.accepted else 1
    accepted = gca_lasso_member(aut, w)
    verdict = "accept" if accepted else "reject"
    _emit_result(
        args,
        [verdict],
        {"lasso": format_lasso(w, aut.alphabet), "verdict": verdict},
    )
    return 0 if accepted else 1


def cmd_equiv(args) -> int:
    a = _load_dpa(args.file_a)
    b = _load_dpa(args.file_b)
    equal, witness = dpa_language_equiv(a, b)
    if equal:
        _emit_result(args, ["equal"], {"equal": True})
        return 0
    text = format_lasso(witness, a.alphabet)
    _emit_result(args, [f"inequivalent, witness {text}"], {"equal": False, "witness": text})
    return 1


def cmd_stats(args) -> int:
    aut = _load(args.file)
    scc = scc_decompose(aut)
    record: dict = {
        "kind": "dpa" if isinstance(aut, ParityAutomaton) else "ncw",
        "states": aut.state_count,
        "distinct_colors": len({t.color for t in aut.transitions}),
        "scc_count": len(scc.sccs),
    }
    if isinstance(aut, ParityAutomaton):
        structured, _ = is_structured(aut)
        record["structured"] = structured
        record["streamlined"] = is_streamlined(aut) if structured else None
    lines = [f"{key}: {value}" for key, value in record.items()]
    _emit_result(args, lines, record)
    return 0


def cmd_random(args) -> int:
    if args.aps is not None:
        count = 2 ** args.aps
        names = tuple(
            letter_name([f"p{j}" for j in range(args.aps)], v) for v in range(count)
        )
        a = random_dpa(args.states, args.colors, count, args.seed, letter_names=names)
    else:
        a = random_dpa(args.states, args.colors, args.letters, args.seed)
    _write_automaton(args, a)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritychain",
        description="Canonicalize deterministic parity automata and query "
        "natural colors of ultimately periodic words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("validate", cmd_validate, "check automaton invariants")
    p.add_argument("file")

    p = command("structure", cmd_structure, "make the automaton structured")
    p.add_argument("file")
    p.add_argument("--out", help="output file (default: stdout)")

    p = command("streamline", cmd_streamline, "minimize colors of a structured DPA")
    p.add_argument("file")
    p.add_argument("--out", help="output file (default: stdout)")

    p = command("chain", cmd_chain, "write the co-Buchi chain of a streamlined DPA")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output directory")

    p = command("color", cmd_color, "natural color of a lasso word (streamlined DPA)")
    p.add_argument("file")
    p.add_argument("--lasso", required=True, help="word as prefix:period, e.g. :ca")

    p = command("member", cmd_member, "membership of a lasso word")
    p.add_argument("file")
    p.add_argument("--lasso", required=True, help="word as prefix:period, e.g. :ca")

    p = command("equiv", cmd_equiv, "language equivalence of two DPAs")
    p.add_argument("file_a")
    p.add_argument("file_b")

    p = command("stats", cmd_stats, "basic figures for an automaton file")
    p.add_argument("file")

    p = command("random", cmd_random, "generate a seeded random complete DPA")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--letters", type=int, help="alphabet size, letters a, b, ...")
    group.add_argument("--aps", type=int, help="use 2^n letters named by AP valuations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except PreconditionError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (FormatError, AutomatonError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
