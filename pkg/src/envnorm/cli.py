"""Algebra-file and expression parsing, command dispatch, deterministic output.

File format (line oriented; '#' starts a comment, blank lines are ignored):

    ring Z | ring Q | ring Zmod <q>
    basis <name>+
    bracket <a> <b> = <lincomb>        # unlisted pairs default to zero;
                                       # [b,a] is auto-filled as the negation
    split <name>+ | <name>+

Expressions:  expr := term (('+'|'-') term)*
              term := ['-'] [coeff '*'] factor ('*' factor)*
              factor := name | '1' | '(' expr ')'
              coeff := integer | integer '/' integer   (fractions in Q only)

Exit codes: 0 success / all properties pass; 1 validation failure;
2 parse error; 3 property or oracle counterexample.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .checks import (
    PROPERTY_NAMES,
    ExampleRegistry,
    RegistryEntry,
    SuiteConfig,
    builtin_examples,
    run_suite,
)
from .envelope import EnvElement, StateElement, straighten
from .liealg import LieAlgebra, SplitDecomposition, validate_algebra, validate_split
from .normalform import ActionContext, OracleMismatchError, normal_order
from .ring import Ring, Scalar, make_ring

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_NAME_CONT = _NAME_START | set("0123456789_")
_OPS = set("*+-/()")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        if line is None:
            where = ""
        elif col is None:
            where = f"line {line}: "
        else:
            where = f"line {line}, col {col}: "
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# tokenizing and expression parsing
# ---------------------------------------------------------------------------

def _tokenize(text: str, line: int = 1) -> list[tuple[str, str, int]]:
    """(kind, text, 1-based column) triples; kinds: name, int, op, end."""
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch in " \t":
            pos += 1
            continue
        col = pos + 1
        if ch in _NAME_START:
            end = pos + 1
            while end < n and text[end] in _NAME_CONT:
                end += 1
            tokens.append(("name", text[pos:end], col))
            pos = end
        elif ch.isdigit():
            end = pos + 1
            while end < n and text[end].isdigit():
                end += 1
            tokens.append(("int", text[pos:end], col))
            pos = end
        elif ch in _OPS:
            tokens.append(("op", ch, col))
            pos = end = pos + 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("end", "", n + 1))
    return tokens


class _Tokens:
    def __init__(self, tokens, line):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        if t[0] != "end":
            self.i += 1
        return t

    def eat_op(self, op: str) -> bool:
        kind, text, _col = self.peek()
        if kind == "op" and text == op:
            self.next()
            return True
        return False

    def error(self, message: str):
        raise ParseError(message, self.line, self.peek()[2])


def _parse_coeff_tokens(ts: _Tokens, ring: Ring, sign: int) -> Scalar:
    kind, text, col = ts.next()
    assert kind == "int"
    num = sign * int(text)
    if ts.eat_op("/"):
        kind2, text2, col2 = ts.peek()
        if kind2 != "int":
            ts.error("expected an integer denominator")
        ts.next()
        if ring.kind != "Q":
            raise ParseError("fractional coefficient outside Q", ts.line, col)
        den = int(text2)
        if den == 0:
            raise ParseError("zero denominator", ts.line, col2)
        return ring.scalar(Fraction(num, den))
    return ring.scalar(num)


def _expr_factor(ts: _Tokens, algebra: LieAlgebra) -> EnvElement:
    kind, text, col = ts.peek()
    if kind == "name":
        ts.next()
        idx = algebra.index.get(text)
        if idx is None:
            raise ParseError(f"unknown name {text!r}", ts.line, col)
        return EnvElement.word(algebra, (idx,))
    if kind == "int" and text == "1":
        ts.next()
        return EnvElement.unit(algebra)
    if ts.eat_op("("):
        inner = _expr_sum(ts, algebra)
        if not ts.eat_op(")"):
            ts.error("expected ')'")
        return inner
    ts.error("expected a basis name, '1' or '('")


def _expr_term(ts: _Tokens, algebra: LieAlgebra) -> EnvElement:
    ring = algebra.ring
    sign = -1 if ts.eat_op("-") else 1
    coeff = None
    kind, text, _col = ts.peek()
    if kind == "int":
        after = ts.toks[ts.i + 1]
        is_fraction = after[0] == "op" and after[1] == "/"
        is_scaled = after[0] == "op" and after[1] == "*"
        if is_fraction or is_scaled:
            coeff = _parse_coeff_tokens(ts, ring, sign)
            sign = 1
            if not ts.eat_op("*"):
                ts.error("expected '*' after coefficient")
        elif text == "0":
            # the literal 0 denotes the zero element (as in bracket lincombs)
            ts.next()
            return EnvElement.zero(algebra)
        elif text != "1":
            ts.error("a bare integer is not a term; write coeff*name or '1'")
    value = _expr_factor(ts, algebra)
    while True:
        kind, text, _col = ts.peek()
        if kind == "op" and text == "*":
            ts.next()
            value = value * _expr_factor(ts, algebra)
        else:
            break
    if coeff is not None:
        value = value.scale(coeff)
    if sign < 0:
        value = -value
    return value


def _expr_sum(ts: _Tokens, algebra: LieAlgebra) -> EnvElement:
    value = _expr_term(ts, algebra)
    while True:
        if ts.eat_op("+"):
            value = value + _expr_term(ts, algebra)
        elif ts.peek()[0] == "op" and ts.peek()[1] == "-":
            # binary minus; the term parser consumes the sign itself
            value = value + _expr_term(ts, algebra)
        else:
            return value


def parse_expr(text: str, algebra: LieAlgebra, line: int = 1) -> EnvElement:
    """Parse a user expression into an envelope element."""
    ts = _Tokens(_tokenize(text, line), line)
    value = _expr_sum(ts, algebra)
    if ts.peek()[0] != "end":
        ts.error(f"unexpected trailing input {ts.peek()[1]!r}")
    return value


# ---------------------------------------------------------------------------
# algebra files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraSpec:
    """Parsed, canonicalized algebra description.

    Brackets are stored as ((i, j), coords) with i <= j, zero combinations
    dropped and the reversed orientation implied; this makes
    parse -> print -> parse the identity."""

    ring: Ring
    basis: tuple[str, ...]
    brackets: tuple[tuple[tuple[int, int], tuple[Scalar, ...]], ...]
    part1: tuple[int, ...]
    part2: tuple[int, ...]

    def build(self) -> tuple[LieAlgebra, SplitDecomposition]:
        n = len(self.basis)
        zero = self.ring.zero
        table = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coords in self.brackets:
            table[i][j] = list(coords)
            if i != j:
                table[j][i] = [-c for c in coords]
        algebra = LieAlgebra(self.ring, self.basis, table)
        return algebra, SplitDecomposition(algebra, self.part1, self.part2)


def _parse_lincomb(text: str, lineno: int, ring: Ring, index: dict) -> list[Scalar]:
    """Lie-algebra-valued linear combination: term (('+'|'-') term)* with
    term := ['-'] [coeff '*'] name; the bare literal 0 is the zero combination."""
    ts = _Tokens(_tokenize(text, lineno), lineno)
    coords = [ring.zero] * len(index)
    first = True
    while True:
        kind, tok, _col = ts.peek()
        if kind == "end":
            if first:
                ts.error("empty bracket value")
            break
        if not first:
            if not (ts.eat_op("+") or (kind == "op" and tok == "-")):
                ts.error("expected '+' or '-' between terms")
        first = False
        sign = -1 if ts.eat_op("-") else 1
        kind, tok, col = ts.peek()
        if kind == "int":
            nxt = ts.toks[ts.i + 1]
            if tok == "0" and (nxt[0] == "end" or (nxt[0] == "op" and nxt[1] in "+-")):
                ts.next()  # literal zero contributes nothing
                continue
            coeff = _parse_coeff_tokens(ts, ring, sign)
            sign = 1
            if not ts.eat_op("*"):
                ts.error("expected '*' and a basis name after coefficient")
        else:
            coeff = ring.one
        kind, tok, col = ts.peek()
        if kind != "name":
            ts.error("expected a basis name")
        ts.next()
        if tok not in index:
            raise ParseError(f"unknown name {tok!r}", lineno, col)
        i = index[tok]
        add = coeff if sign > 0 else -coeff
        coords[i] = coords[i] + add
    return coords


_VALID_NAME = lambda s: bool(s) and s[0] in _NAME_START and all(c in _NAME_CONT for c in s)


def parse_spec(text: str) -> AlgebraSpec:
    """Parse an algebra description file into its canonical form."""
    ring: Ring | None = None
    basis: list[str] = []
    index: dict[str, int] = {}
    declared: dict[tuple[int, int], tuple[list[Scalar], int]] = {}
    split: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "ring":
            if ring is not None:
                raise ParseError("duplicate ring line", lineno)
            try:
                ring = make_ring(" ".join(words[1:]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif head == "basis":
            if len(words) < 2:
                raise ParseError("basis line needs at least one name", lineno)
            for name in words[1:]:
                if not _VALID_NAME(name):
                    raise ParseError(f"invalid basis name {name!r}", lineno)
                if name in index:
                    raise ParseError(f"duplicate basis name {name!r}", lineno)
                index[name] = len(basis)
                basis.append(name)
        elif head == "bracket":
            if ring is None:
                raise ParseError("bracket before ring line", lineno)
            if "=" not in line:
                raise ParseError("bracket line needs '='", lineno)
            lhs, rhs = line.split("=", 1)
            parts = lhs.split()
            if len(parts) != 3:
                raise ParseError("expected 'bracket <a> <b> = <lincomb>'", lineno)
            _kw, a, b = parts
            for name in (a, b):
                if name not in index:
                    raise ParseError(f"unknown name {name!r}", lineno)
            key = (index[a], index[b])
            if key in declared:
                raise ParseError(f"bracket ({a},{b}) declared twice", lineno)
            declared[key] = (_parse_lincomb(rhs, lineno, ring, index), lineno)
        elif head == "split":
            if split is not None:
                raise ParseError("duplicate split line", lineno)
            rest = line[len("split"):].strip()
            if rest.count("|") != 1:
                raise ParseError("split line needs exactly one '|'", lineno)
            left, right = rest.split("|")
            sides = []
            for side_text in (left, right):
                names = side_text.split()
                if not names:
                    raise ParseError("each split side needs at least one name", lineno)
                idxs = []
                for name in names:
                    if name not in index:
                        raise ParseError(f"unknown name {name!r}", lineno)
                    idxs.append(index[name])
                sides.append(tuple(idxs))
            assigned: list[int] = [*sides[0], *sides[1]]
            if len(set(assigned)) != len(assigned):
                dupe = next(basis[i] for i in assigned if assigned.count(i) > 1)
                raise ParseError(f"{dupe!r} assigned to both split parts", lineno)
            unassigned = [basis[i] for i in range(len(basis)) if i not in set(assigned)]
            if unassigned:
                raise ParseError(f"{unassigned[0]!r} unassigned in split", lineno)
            split = (sides[0], sides[1])
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if ring is None:
        raise ParseError("missing ring line")
    if not basis:
        raise ParseError("missing basis line")
    if split is None:
        raise ParseError("missing split line")

    # canonicalize: key pairs by (min, max); check double orientations negate
    canon: dict[tuple[int, int], list[Scalar]] = {}
    for (i, j), (coords, lineno) in sorted(declared.items()):
        if i <= j:
            key, value = (i, j), coords
        else:
            key, value = (j, i), [-c for c in coords]
        if key in canon:
            if canon[key] != value:
                a, b = basis[i], basis[j]
                raise ParseError(
                    f"bracket ({a},{b}) conflicts with the opposite orientation",
                    lineno,
                )
        else:
            canon[key] = value
    brackets = tuple(
        (key, tuple(coords))
        for key, coords in sorted(canon.items())
        if any(coords)
    )
    return AlgebraSpec(ring, tuple(basis), brackets, split[0], split[1])


def format_spec(spec: AlgebraSpec) -> str:
    """Canonical text for an AlgebraSpec; parse(format_spec(s)) == s."""
    lines = [f"ring {spec.ring.descriptor()}"]
    lines.append("basis " + " ".join(spec.basis))
    for (i, j), coords in spec.brackets:
        combo = " + ".join(
            f"{c}*{spec.basis[k]}" for k, c in enumerate(coords) if c
        )
        lines.append(f"bracket {spec.basis[i]} {spec.basis[j]} = {combo}")
    left = " ".join(spec.basis[i] for i in spec.part1)
    right = " ".join(spec.basis[i] for i in spec.part2)
    lines.append(f"split {left} | {right}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def state_lines(s: StateElement) -> list[str]:
    """One term per line: '<coeff> * <w1> (x) <w2>', sorted descending by
    (left degree, left word, right degree, right word); '0' when empty."""
    return s.term_strings() or ["0"]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _read_spec(path: str) -> AlgebraSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_spec(text)


def _validated(spec: AlgebraSpec):
    algebra, split = spec.build()
    report = validate_algebra(algebra)
    report2 = validate_split(algebra, split.part1, split.part2)
    lines = report.lines() + report2.lines()
    return algebra, split, lines


def _cmd_validate(args) -> int:
    spec = _read_spec(args.file)
    _algebra, _split, lines = _validated(spec)
    if lines:
        for line in lines:
            print(line)
        return 1
    print("ok")
    return 0


def _cmd_normal_order(args) -> int:
    spec = _read_spec(args.file)
    algebra, split, bad = _validated(spec)
    if bad:
        for line in bad:
            print(line, file=sys.stderr)
        return 1
    u = parse_expr(args.expr, algebra)
    ctx = ActionContext(algebra, split, validate=False)
    result = normal_order(ctx, u, check=not args.no_oracle)
    for line in state_lines(result):
        print(line)
    return 0


def _cmd_straighten(args) -> int:
    spec = _read_spec(args.file)
    algebra, _split, bad = _validated(spec)
    if bad:
        for line in bad:
            print(line, file=sys.stderr)
        return 1
    u = parse_expr(args.expr, algebra)
    order = None
    if args.order:
        if sorted(args.order) != sorted(algebra.basis):
            raise ParseError("--order must list every basis name exactly once")
        order = [algebra.index[name] for name in args.order]
    print(straighten(u, order))
    return 0


def _cmd_check(args) -> int:
    if args.builtin:
        registry = builtin_examples()
    else:
        spec = _read_spec(args.file)
        algebra, split = spec.build()
        name = Path(args.file).stem
        registry = ExampleRegistry([RegistryEntry(name, algebra, split)])
    properties = tuple(args.props.split(",")) if args.props else None
    try:
        cfg = SuiteConfig(
            seed=args.seed,
            cases=args.cases,
            max_degree=args.max_deg,
            properties=properties,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(cfg, registry)
    print(report.render())
    if report.validation_failed:
        return 1
    if not report.all_pass:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envnorm",
        description="Normal ordering in enveloping algebras of split Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the Lie axioms and the split closure")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("normal-order", help="rewrite an expression into ordered tensor form")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--no-oracle", action="store_true",
                   help="skip the independent straightening cross-check")
    p.set_defaults(func=_cmd_normal_order)

    p = sub.add_parser("straighten", help="PBW canonical form under a total order")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.add_argument("--order", nargs="+", metavar="NAME",
                   help="basis names in the desired order (default: declaration order)")
    p.set_defaults(func=_cmd_straighten)

    p = sub.add_parser("check", help="run the property suite")
    p.add_argument("file", nargs="?")
    p.add_argument("--builtin", action="store_true", help="use the builtin registry")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--props", help="comma-separated property subset "
                                   f"(of: {', '.join(PROPERTY_NAMES)})")
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "check" and bool(args.file) == bool(args.builtin):
        print("error: check needs exactly one of <file> or --builtin", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleMismatchError as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
