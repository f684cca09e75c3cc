"""The .dvg file format and the command-line tool.

Grammar (line based, ``#`` starts a comment):

    curve <label> w=<int> [g=<int>] [m=<int>]
    pair <label> <label> <int>
    divisor <name> <label>=<int> ...

``m`` is the label's multiplicity in the default divisor (default 1);
undeclared pairs are 0.  Output of every subcommand is deterministic:
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import classify, props, realize, transforms
from .lattice import (
    CapExceededError,
    CurveConfig,
    Divisor,
    DvgError,
    euler_char,
    euler_char_twisted,
    is_connected,
    is_tree,
    k_degree,
    pairing,
)
from .props import VerdictStatus


class ParseError(DvgError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class DvgDocument:
    """A parsed configuration with its default and named divisors."""

    config: CurveConfig
    default_mult: tuple[int, ...]
    named: tuple[tuple[str, tuple[int, ...]], ...] = field(default=())

    def divisor(self, name: str | None = None) -> Divisor:
        if name is None:
            return Divisor(self.config, self.default_mult)
        for candidate, mult in self.named:
            if candidate == name:
                return Divisor(self.config, mult)
        raise DvgError(f"no divisor named {name!r}")


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def parse(text: str) -> DvgDocument:
    curves: list[tuple[str, int, int, int]] = []   # label, w, g, m
    index: dict[str, int] = {}
    pair_values: dict[tuple[int, int], int] = {}
    named: list[tuple[str, tuple[int, ...]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if keyword == "curve":
            if len(tokens) < 3:
                raise ParseError(lineno, "usage: curve <label> w=<int> [g=<int>] [m=<int>]")
            label = tokens[1]
            if label in index:
                raise ParseError(lineno, f"duplicate curve label {label!r}")
            fields = {"g": 0, "m": 1}
            seen = set()
            for token in tokens[2:]:
                if "=" not in token:
                    raise ParseError(lineno, f"expected key=value, got {token!r}")
                key, _, value = token.partition("=")
                if key not in ("w", "g", "m"):
                    raise ParseError(lineno, f"unknown curve attribute {key!r}")
                if key in seen:
                    raise ParseError(lineno, f"repeated attribute {key!r}")
                seen.add(key)
                fields[key] = _parse_int(value, lineno, key)
            if "w" not in seen:
                raise ParseError(lineno, f"curve {label!r} needs w=<int>")
            if fields["g"] < 0:
                raise ParseError(lineno, "genus must be non-negative")
            if fields["m"] < 0:
                raise ParseError(lineno, "multiplicity must be non-negative")
            index[label] = len(curves)
            curves.append((label, fields["w"], fields["g"], fields["m"]))

        elif keyword == "pair":
            if len(tokens) != 4:
                raise ParseError(lineno, "usage: pair <label> <label> <int>")
            a, b = tokens[1], tokens[2]
            for lab in (a, b):
                if lab not in index:
                    raise ParseError(lineno, f"unknown curve {lab!r}")
            if a == b:
                raise ParseError(lineno, "a curve's self-intersection is its weight w")
            value = _parse_int(tokens[3], lineno, "intersection number")
            if value < 0:
                raise ParseError(lineno, "intersection numbers must be non-negative")
            key = (min(index[a], index[b]), max(index[a], index[b]))
            if key in pair_values:
                raise ParseError(lineno, f"pair {a} {b} declared twice")
            pair_values[key] = value

        elif keyword == "divisor":
            if len(tokens) < 3:
                raise ParseError(lineno, "usage: divisor <name> <label>=<int> ...")
            name = tokens[1]
            if any(existing == name for existing, _ in named):
                raise ParseError(lineno, f"duplicate divisor name {name!r}")
            mult = [0] * len(curves)
            seen_labels = set()
            for token in tokens[2:]:
                if "=" not in token:
                    raise ParseError(lineno, f"expected label=mult, got {token!r}")
                lab, _, value = token.partition("=")
                if lab not in index:
                    raise ParseError(lineno, f"unknown curve {lab!r}")
                if lab in seen_labels:
                    raise ParseError(lineno, f"curve {lab!r} repeated in divisor")
                seen_labels.add(lab)
                m = _parse_int(value, lineno, "multiplicity")
                if m < 0:
                    raise ParseError(lineno, "multiplicity must be non-negative")
                mult[index[lab]] = m
            named.append((name, tuple(mult)))

        else:
            raise ParseError(lineno, f"unknown directive {keyword!r}")

    if not curves:
        raise ParseError(0, "no curves declared")
    config = CurveConfig.build(
        [(label, w, g) for label, w, g, _ in curves],
        [(curves[i][0], curves[j][0], value)
         for (i, j), value in sorted(pair_values.items()) if value > 0],
    )
    return DvgDocument(config, tuple(m for _, _, _, m in curves), tuple(named))


def serialize(doc: DvgDocument) -> str:
    config = doc.config
    lines = []
    for i, label in enumerate(config.labels):
        parts = [f"curve {label} w={config.weights[i]}"]
        if config.genera[i]:
            parts.append(f"g={config.genera[i]}")
        if doc.default_mult[i] != 1:
            parts.append(f"m={doc.default_mult[i]}")
        lines.append(" ".join(parts))
    n = len(config)
    for i in range(n):
        for j in range(i + 1, n):
            if config.pairs[i][j] > 0:
                lines.append(f"pair {config.labels[i]} {config.labels[j]} {config.pairs[i][j]}")
    for name, mult in doc.named:
        entries = " ".join(
            f"{config.labels[i]}={m}" for i, m in enumerate(mult) if m > 0)
        lines.append(f"divisor {name} {entries}")
    return "\n".join(lines) + "\n"


def document_for(config: CurveConfig, divisor: Divisor | None = None) -> DvgDocument:
    mult = divisor.mult if divisor is not None else (1,) * len(config)
    return DvgDocument(config, mult)


# --- subcommands ---------------------------------------------------------------

def _load(path: str) -> DvgDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse(handle.read())
    except OSError as exc:
        raise DvgError(f"cannot read {path}: {exc}") from None


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _witness_text(config: CurveConfig, witness) -> str:
    return ",".join(witness.labels(config)) if witness is not None else "absent"


def cmd_check(args) -> int:
    doc = _load(args.file)
    d = doc.divisor(args.divisor)
    config = d.config
    out = [
        f"divisor: {args.divisor if args.divisor else '(default)'}",
        f"presentation: {d.describe()}",
        f"square: {d.square}",
        f"k-degree: {k_degree(d)}",
        f"chi: {euler_char(d)}",
        f"connected: {_bool(is_connected(d))}",
        f"tree: {_bool(is_tree(d))}",
        f"negative-definite: {_bool(props.is_negative_definite(config, d.support))}",
        f"dominance-sufficient: {_bool(props.dominance_sufficient(d))}",
        f"negatively-closed: {_bool(props.is_negatively_closed(d, cap=args.cap))}",
    ]
    out.append("negative-filtration: "
               + _witness_text(config, props.find_negative_filtration(d)))
    out.append("one-decomposition: "
               + _witness_text(config, props.find_one_decomposition(d)))
    out.append(f"one-connected: {_bool(props.is_one_connected(d, cap=args.cap))}")
    verdict = props.is_curvelike(d)
    if verdict.status is VerdictStatus.CURVELIKE:
        out.append(f"curvelike: n={verdict.n}")
        report = props.is_minimal(d)
        out.append(f"minimal: {_bool(report.minimal)}")
        for i, degree in report.degrees:
            out.append(f"minimality {config.labels[i]}: D.C = {degree}")
        for kind, i in report.violations:
            out.append(f"move: {kind} {config.labels[i]}")
    else:
        out.append(f"curvelike: {verdict.status.value} ({verdict.reason})")
        out.append("minimal: n/a")
    print("\n".join(out))
    return 0


def cmd_chi(args) -> int:
    doc = _load(args.file)
    d = doc.divisor(args.divisor)
    out = [
        f"divisor: {args.divisor}",
        f"square: {d.square}",
        f"k-degree: {k_degree(d)}",
        f"chi: {euler_char(d)}",
    ]
    if args.twist:
        twist = doc.divisor(args.twist)
        out.append(f"twist: {args.twist}")
        out.append(f"chi-twisted: {euler_char_twisted(d, twist)}")
    print("\n".join(out))
    return 0


def cmd_reduce(args) -> int:
    doc = _load(args.file)
    d = doc.divisor(args.divisor)
    result = transforms.reduce_to_minimal(d)
    out = [
        f"terminal: {result.divisor.describe()}",
        f"terminal-square: {result.divisor.square}",
        "configuration:",
        serialize(document_for(result.config, result.divisor)).rstrip("\n"),
        "script:",
    ]
    if result.script.moves:
        out.append(result.script.trace())
    else:
        out.append("(empty)")
    print("\n".join(out))
    return 0


def cmd_decompose(args) -> int:
    doc = _load(args.file)
    d = doc.divisor(args.divisor)
    dec = transforms.curvelike_decomposition(d)
    out = [f"parts: {len(dec.parts)}"]
    for k, part in enumerate(dec.parts, start=1):
        out.append(f"part {k}: {part.describe()}  [square {part.square}]")
    out.append("script:")
    out.append(dec.script.trace() if dec.script.moves else "(empty)")
    print("\n".join(out))
    return 0


def cmd_laufer(args) -> int:
    doc = _load(args.file)
    cycle = transforms.laufer_cycle(doc.config)
    out = [
        f"cycle: {cycle.describe()}",
        "multiplicities: " + " ".join(
            f"{lab}={m}" for lab, m in zip(doc.config.labels, cycle.mult)),
        f"square: {cycle.square}",
        f"chi: {euler_char(cycle)}",
    ]
    print("\n".join(out))
    return 0


def cmd_enumerate(args) -> int:
    params = classify.EnumerationParams(
        n=args.n, vertices=args.vertices,
        max_mult=args.max_mult, min_weight=args.min_weight)
    results = classify.enumerate_minimal(params)
    blocks = []
    for k, divisor in enumerate(results, start=1):
        header = f"# class {k} of {len(results)} (vertices={args.vertices} n={args.n})"
        blocks.append(header + "\n"
                      + serialize(document_for(divisor.config, divisor)).rstrip("\n"))
    print("\n\n".join(blocks) if blocks else
          f"# no minimal (-{args.n})-divisors on {args.vertices} vertices")
    return 0


def cmd_realize(args) -> int:
    doc = _load(args.file)
    report = realize.realizability_report(doc.config)
    config = doc.config
    out = []
    verdict = report.verdict
    if isinstance(verdict, realize.Obstructed):
        out.append("verdict: obstructed")
        ev = verdict.evidence
        out.append(f"evidence-inertia: positives={ev.positives} "
                   f"zeros={ev.zeros} negatives={ev.negatives}")
        out.append("stage: " + ",".join(
            f"{lab}={w}" for lab, w in zip(verdict.stage.labels, verdict.stage.weights)))
    elif isinstance(verdict, realize.RealizableWith):
        out.append("verdict: realizable")
        out.append(f"seed: {verdict.seed}")
    else:
        out.append("verdict: unknown")
        out.append(f"reason: {verdict.reason}")
    out.append(f"badness: {report.badness}")
    for i, lab in enumerate(config.labels):
        out.append(f"sigma {lab}: v={report.valency[i]} sigma={report.excess[i]}")
    for i, j, dist in report.distances:
        out.append(f"distance {config.labels[i]} {config.labels[j]}: {dist}")
    if isinstance(verdict, realize.RealizableWith):
        out.append("script:")
        out.append(verdict.script.trace() if verdict.script.moves else "(empty)")
    print("\n".join(out))
    return 0


def cmd_dot(args) -> int:
    doc = _load(args.file)
    d = doc.divisor(args.divisor) if args.divisor else doc.divisor()
    config = doc.config
    lines = ["graph dvg {", "  node [shape=circle];"]
    for i, lab in enumerate(config.labels):
        lines.append(f'  "{lab}" [label="{lab} w={config.weights[i]} m={d.mult[i]}"];')
    n = len(config)
    for i in range(n):
        for j in range(i + 1, n):
            lines.extend([f'  "{config.labels[i]}" -- "{config.labels[j]}";']
                         * config.pairs[i][j])
    lines.append("}")
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dvg",
        description="Numerical calculus of curvelike divisors on weighted "
                    "dual intersection graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="property table for a divisor")
    p.add_argument("file")
    p.add_argument("--divisor", default=None)
    p.add_argument("--cap", type=int, default=10_000_000)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("chi", help="square, canonical degree and Euler characteristic")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.add_argument("--twist", default=None)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("reduce", help="reduce to a minimal divisor, with move trace")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decompose", help="curvelike decomposition into curves and chains")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("laufer", help="numerical cycle of the configuration")
    p.add_argument("file")
    p.set_defaults(func=cmd_laufer)

    p = sub.add_parser("enumerate", help="minimal (-n)-divisors on trees")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--n", type=int, required=True, dest="n")
    p.add_argument("--max-mult", type=int, default=6)
    p.add_argument("--min-weight", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("realize", help="realizability report for the configuration")
    p.add_argument("file")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("dot", help="DOT export of the dual intersection graph")
    p.add_argument("file")
    p.add_argument("--divisor", default=None)
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DvgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
