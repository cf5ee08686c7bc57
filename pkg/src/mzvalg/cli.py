"""Command-line front end: expression grammar, verification subcommands,
dimension tables, and numeric reports.

Grammar (precedence ^ > * > +,-):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' nat]
    atom   := rational | word | 'u' nat | call | '(' expr ')'
    word   := (('x'|'y'|'z') ['^' nat])+
    call   := ('tau'|'inv'|'d' nat|'theta' nat|'D' '[' int (',' int)* ']') '(' expr ')'

Inside a word the caret binds to the preceding letter; rationals are
"3" or "3/2".  inv(...) is the geometric inverse and needs constant term 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .word_algebra import Index, NCPoly, Word, render_poly
from .series_ring import (
    TruncSeries,
    Truncation,
    coef,
    geometric_inverse,
    inject,
    render_series,
    u_var,
)
from .maps import MapSpec, apply_spec, partial, tau, theta
from .dspace import NotInDSpace, appendix_identity, corollary_identity, power_check, verify_eq31
from .relspace import dims_table, graded_kernel, membership_cor44, pairwise_triviality
from .zeta_numeric import DEFAULT_DIGITS, relation_residual, zeta_eval


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_SYMBOLS = set("+-*^()[],/")


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            name = text[i:j]
            k = j
            while k < n and text[k].isdigit():
                k += 1
            digits = text[j:k]
            if name == "tau" and not digits:
                tokens.append(("NAME", "tau", i))
            elif name == "inv" and not digits:
                tokens.append(("NAME", "inv", i))
            elif name == "D" and not digits:
                tokens.append(("NAME", "D", i))
            elif name == "d" and digits:
                tokens.append(("DCALL", int(digits), i))
            elif name == "theta" and digits:
                tokens.append(("THETA", int(digits), i))
            elif name == "u" and digits:
                tokens.append(("UVAR", int(digits), i))
            elif not digits and set(name) <= set("xyz"):
                for off, letter in enumerate(name):
                    tokens.append(("LETTER", letter, i + off))
            else:
                raise ParseError(f"unknown name {name + digits!r}", i)
            i = k
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, trunc: Truncation):
        self.tokens = tokens
        self.pos = 0
        self.trunc = trunc

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> TruncSeries:
        out = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"trailing input {tok[0]}", tok[2])
        return out

    def expr(self) -> TruncSeries:
        negate = False
        if self.peek()[0] == "-":
            self.take()
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> TruncSeries:
        out = self.factor()
        while self.peek()[0] == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> TruncSeries:
        atom, was_word = self.atom()
        if not was_word and self.peek()[0] == "^":
            self.take()
            tok = self.take("NUM")
            atom = atom**tok[1]
        return atom

    def _letter_series(self, letter: str) -> TruncSeries:
        poly = {
            "x": NCPoly.from_word(Word(1, 0)),
            "y": NCPoly.from_word(Word(1, 1)),
            "z": NCPoly.from_word(Word(1, 0)) + NCPoly.from_word(Word(1, 1)),
        }[letter]
        return inject(poly, self.trunc)

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "NUM":
            self.take()
            value = tok[1]
            if self.peek()[0] == "/":
                self.take()
                den = self.take("NUM")[1]
                if den == 0:
                    raise ParseError("zero denominator", tok[2])
                scalar = Fraction(value, den)
            else:
                scalar = value
            return inject(NCPoly({Word(0, 0): scalar}), self.trunc), False
        if kind == "LETTER":
            out = None
            while self.peek()[0] == "LETTER":
                letter = self.take()[1]
                piece = self._letter_series(letter)
                if self.peek()[0] == "^":
                    save = self.pos
                    self.take()
                    if self.peek()[0] == "NUM":
                        piece = piece ** self.take()[1]
                    else:
                        self.pos = save
                        raise ParseError("expected exponent", self.peek()[2])
                out = piece if out is None else out * piece
            return out, True
        if kind == "UVAR":
            self.take()
            j = tok[1]
            if not 1 <= j <= self.trunc.s:
                raise ParseError(f"u{j} outside 1..{self.trunc.s}", tok[2])
            return u_var(self.trunc, j), False
        if kind == "NAME" and tok[1] == "tau":
            self.take()
            return tau(self._parens()), False
        if kind == "NAME" and tok[1] == "inv":
            self.take()
            return geometric_inverse(self._parens()), False
        if kind == "NAME" and tok[1] == "D":
            self.take()
            self.take("[")
            ints = [self._int()]
            while self.peek()[0] == ",":
                self.take()
                ints.append(self._int())
            self.take("]")
            spec = MapSpec(tuple(ints))
            if len(spec) != self.trunc.s:
                raise ParseError(
                    f"spec length {len(spec)} != {self.trunc.s} u-variables", tok[2]
                )
            return apply_spec(spec, self._parens()), False
        if kind == "DCALL":
            self.take()
            return partial(tok[1], self._parens()), False
        if kind == "THETA":
            self.take()
            return theta(tok[1], self._parens()), False
        if kind == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out, False
        raise ParseError(f"unexpected token {kind}", tok[2])

    def _int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        return sign * self.take("NUM")[1]

    def _parens(self) -> TruncSeries:
        self.take("(")
        out = self.expr()
        self.take(")")
        return out


def parse_expression(text: str, trunc: Truncation) -> TruncSeries:
    """Evaluate the grammar above into a series in the given box."""
    return _Parser(_tokenize(text), trunc).parse()


def _max_uvar(text: str) -> int:
    best = 0
    for kind, value, _ in _tokenize(text):
        if kind == "UVAR":
            best = max(best, value)
    return best


def _parse_spec(text: str) -> MapSpec:
    return MapSpec(tuple(int(p) for p in text.split(",") if p.strip()))


def _add_box_args(sp, w=8, n=6):
    sp.add_argument("--weight-cap", type=int, default=w, metavar="W")
    sp.add_argument("--u-cap", type=int, default=n, metavar="N")
    sp.add_argument("--s", type=int, default=None, help="number of u-variables")


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mzvalg",
        description="exact duality/derivation relation toolkit for nested zeta values",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expand", help="evaluate an expression and print the series")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--json")
    _add_box_args(sp)

    sp = sub.add_parser("verify", help="check one of the built-in identities")
    sp.add_argument(
        "target",
        help="eq31 | power | cor42:i..cor42:iv | kajikawa | li",
    )
    sp.add_argument("--expr")
    sp.add_argument("--spec")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--json")
    _add_box_args(sp)

    sp = sub.add_parser("dims", help="per-weight dimension table (CSV)")
    sp.add_argument("--max-weight", type=int, required=True)
    sp.add_argument("--spec")
    sp.add_argument("--h0", action="store_true")
    sp.add_argument("--u-cap", type=int, default=None)
    sp.add_argument("--csv")

    sp = sub.add_parser("kernel", help="graded kernel of a map at one weight")
    sp.add_argument("map", help="partial<n> | delta-id | delta-tau")
    sp.add_argument("--spec")
    sp.add_argument("--weight", type=int, required=True)
    _add_box_args(sp, w=10, n=2)
    sp.add_argument("--json")

    sp = sub.add_parser("pairwise", help="intersection of two twisted kernels")
    sp.add_argument("--spec-a", required=True)
    sp.add_argument("--spec-b", required=True)
    sp.add_argument("--weight", type=int, required=True)
    _add_box_args(sp, w=10, n=3)
    sp.add_argument("--json")

    sp = sub.add_parser("cor44", help="membership of a duality family in the derivation span")
    sp.add_argument("part", choices=["i", "ii"])
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--json")

    sp = sub.add_parser("zeta", help="partial sum of one nested zeta value")
    sp.add_argument("--index", required=True)
    sp.add_argument("--cutoff", type=int, default=100000)
    sp.add_argument("--digits", type=int, default=None)
    sp.add_argument("--json")

    sp = sub.add_parser("residual", help="numeric residual of a relation")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--cutoff", type=int, default=100000)
    sp.add_argument("--digits", type=int, default=None)
    sp.add_argument("--weight-cap", type=int, default=8)
    sp.add_argument("--json")

    return p


def _digits(args) -> int:
    if args.digits is not None:
        return args.digits
    env = os.environ.get("MZVALG_DIGITS")
    return int(env) if env else DEFAULT_DIGITS


def _report_exit(report, json_path) -> int:
    print(f"{report.identity}: {'ok' if report.equal else 'MISMATCH'}")
    if report.mismatch is not None:
        m = report.mismatch.to_json_dict()
        print(
            f"  first mismatch at u-exponent {m['exponent']} word {m['word']}: "
            f"{m['lhs_coeff']} vs {m['rhs_coeff']}"
        )
    for k, v in report.details.items():
        print(f"  {k}: {v}")
    if json_path:
        _write_json(json_path, report.to_json_dict())
    return 0 if report.equal else 1


def _cmd_expand(args) -> int:
    s = args.s or max(1, _max_uvar(args.expr))
    trunc = Truncation(s, args.weight_cap, args.u_cap)
    series = parse_expression(args.expr, trunc)
    print(render_series(series))
    if args.json:
        _write_json(
            args.json,
            {
                "box": {"s": trunc.s, "W": trunc.W, "N": trunc.N},
                "series": render_series(series),
            },
        )
    return 0


def _cmd_verify(args) -> int:
    target = args.target
    if target == "eq31":
        if not args.expr or not args.spec:
            raise ValueError("eq31 needs --expr and --spec")
        spec = _parse_spec(args.spec)
        s = args.s or len(spec)
        trunc = Truncation(s, args.weight_cap, args.u_cap)
        series = parse_expression(args.expr, trunc)
        return _report_exit(verify_eq31(series, spec), args.json)
    if target == "power":
        if not args.expr or not args.spec:
            raise ValueError("power needs --expr and --spec")
        spec = _parse_spec(args.spec)
        s = args.s or len(spec)
        trunc = Truncation(s, args.weight_cap, args.u_cap)
        series = parse_expression(args.expr, trunc)
        try:
            return _report_exit(power_check(series, spec, args.d), args.json)
        except NotInDSpace as exc:
            print(f"power: MISMATCH ({exc})")
            return 1
    if target.startswith("cor42:"):
        which = target.split(":", 1)[1]
        trunc = Truncation(3, args.weight_cap, args.u_cap)
        return _report_exit(corollary_identity(which, args.d, trunc), args.json)
    if target == "kajikawa":
        # a single-power-series identity: the u-variables play no role
        trunc = Truncation(1, args.weight_cap, 0)
        return _report_exit(
            appendix_identity("kajikawa", trunc, r=args.r, d=args.d), args.json
        )
    if target == "li":
        trunc = Truncation(3, args.weight_cap, args.u_cap)
        return _report_exit(appendix_identity("li", trunc), args.json)
    raise ValueError(f"unknown verify target {target!r}")


def _cmd_dims(args) -> int:
    spec = _parse_spec(args.spec) if args.spec else None
    rows, smallest = dims_table(
        args.max_weight, spec=spec, restrict_h0=args.h0, u_cap=args.u_cap
    )
    fields = [
        "weight",
        "dim_duality",
        "dim_derivation",
        "dim_intersection",
        "dim_coef_span",
        "specs",
        "box",
    ]
    out = sys.stdout
    writer = csv.DictWriter(out, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if smallest is None:
        print(f"smallest_strict_weight=none (up to {args.max_weight})")
    else:
        print(f"smallest_strict_weight={smallest}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            for row in rows:
                w.writerow(row)
    return 0


def _cmd_kernel(args) -> int:
    trunc = Truncation(
        args.s or (len(_parse_spec(args.spec)) if args.spec else 1),
        args.weight_cap,
        args.u_cap,
    )
    if args.map.startswith("partial"):
        n = int(args.map[len("partial") :])
        map_id = ("partial", n)
    elif args.map == "delta-id":
        if not args.spec:
            raise ValueError("delta-id needs --spec")
        map_id = ("delta_minus_id", _parse_spec(args.spec))
    elif args.map == "delta-tau":
        if not args.spec:
            raise ValueError("delta-tau needs --spec")
        map_id = ("delta_minus_tau", _parse_spec(args.spec))
    else:
        raise ValueError(f"unknown kernel map {args.map!r}")
    basis = graded_kernel(map_id, args.weight, trunc)
    print(f"kernel weight {args.weight}: dim {basis.dim}")
    for p in basis.basis_polys():
        print(f"  {render_poly(p)}")
    if args.json:
        _write_json(args.json, basis.to_json_dict())
    return 0


def _cmd_pairwise(args) -> int:
    trunc = Truncation(
        args.s or len(_parse_spec(args.spec_a)), args.weight_cap, args.u_cap
    )
    report = pairwise_triviality(
        _parse_spec(args.spec_a), _parse_spec(args.spec_b), args.weight, trunc
    )
    return _report_exit(report, args.json)


def _cmd_cor44(args) -> int:
    if args.part == "i":
        if None in (args.d, args.m, args.n):
            raise ValueError("part i needs --d, --m, --n")
        report = membership_cor44("i", d=args.d, m=args.m, n=args.n)
    else:
        if None in (args.k, args.r, args.m):
            raise ValueError("part ii needs --k, --r, --m")
        report = membership_cor44("ii", k=args.k, r=args.r, m=args.m)
    return _report_exit(report, args.json)


def _cmd_zeta(args) -> int:
    digits = _digits(args)
    value = zeta_eval(Index.parse(args.index), args.cutoff, digits)
    payload = value.to_json_dict(digits)
    print(json.dumps(payload))
    if args.json:
        _write_json(args.json, payload)
    return 0


def _cmd_residual(args) -> int:
    digits = _digits(args)
    trunc = Truncation(1, args.weight_cap, 0)
    series = parse_expression(args.expr, trunc)
    poly = coef(series, (0,))
    report = relation_residual(poly, args.cutoff, digits)
    payload = report.to_json_dict()
    payload["expr"] = args.expr
    print(json.dumps(payload))
    if args.json:
        _write_json(args.json, payload)
    return 0


_DISPATCH = {
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "dims": _cmd_dims,
    "kernel": _cmd_kernel,
    "pairwise": _cmd_pairwise,
    "cor44": _cmd_cor44,
    "zeta": _cmd_zeta,
    "residual": _cmd_residual,
}


def run_command(argv) -> int:
    """Parse and run one subcommand; 0 ok, 1 verification mismatch, 2 usage."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _DISPATCH[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
