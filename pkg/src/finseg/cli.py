"""Command-line front end: one JSON document (or DOT text) per invocation.

Exit codes: 0 success, 1 domain error, 2 usage or parse error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .blocks import block_decomposition, factorize_via_blocks, graph_of
from .envelope import build_envelope, d_V, envelope_points, to_transition_system
from .errors import AlphabetError, DomainError, InvariantViolation, ParseError
from .export import transition_dot
from .factorization import factorize, is_irreducible
from .generators import Limits
from .macneille import closed_union, closure, is_closed, lower_cone
from .oracle import oracle_concat, oracle_residual, truncate
from .order import Alphabet, alphabet_from_json, format_word, higman_leq, parse_word
from .upsets import UpSet, concat, graduation, intersect, member, minimize, quotient, residual, union_meet, upset_from_json

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json(text: str, what: str):
    """Inline JSON, or the path of a file holding JSON."""
    stripped = text.strip()
    if stripped[:1] in "{[\"" and stripped:
        source = stripped
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            source = fh.read()
    else:
        raise ParseError(f"{what}: {text!r} is neither JSON nor a readable file")
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON ({exc})") from None


def _word(alphabet: Alphabet, text: str):
    """A word given as a JSON string or array, or as bare compact text."""
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    if not isinstance(value, (str, list)):
        value = text
    return parse_word(alphabet, value)


class Session:
    def __init__(self, args: argparse.Namespace):
        self.limits = Limits(args.max_gens, args.max_len, args.max_letters, args.max_points)
        self.alphabet = None
        if getattr(args, "alphabet", None) is not None:
            try:
                self.alphabet = alphabet_from_json(_load_json(args.alphabet, "alphabet"))
            except AlphabetError as exc:
                raise ParseError(f"alphabet: {exc}") from None
            if len(self.alphabet) > self.limits.max_letters:
                raise UsageError(f"alphabet has {len(self.alphabet)} letters; the limit is {self.limits.max_letters}")

    def need_alphabet(self) -> Alphabet:
        if self.alphabet is None:
            raise UsageError("this subcommand needs --alphabet")
        return self.alphabet

    def upset(self, text: str) -> UpSet:
        F = upset_from_json(self.need_alphabet(), _load_json(text, "operand"))
        self.check(F)
        return F

    def word(self, text: str):
        w = _word(self.need_alphabet(), text)
        if len(w) > self.limits.max_len:
            raise UsageError(f"word of length {len(w)} exceeds the length limit {self.limits.max_len}")
        return w

    def envelope_sized(self, F: UpSet) -> None:
        try:
            envelope_points(F, self.limits.max_points)
        except DomainError as exc:
            raise UsageError(str(exc)) from None

    def check(self, F: UpSet) -> None:
        if len(F.gens) > self.limits.max_gens:
            raise UsageError(f"{len(F.gens)} generators exceed the limit {self.limits.max_gens}")
        if F.max_len > self.limits.max_len:
            raise UsageError(f"generator of length {F.max_len} exceeds the limit {self.limits.max_len}")


def _fold(op, items):
    acc = items[0]
    for it in items[1:]:
        acc = op(acc, it)
    return acc


def _emit(doc, out) -> None:
    out.write(json.dumps(doc, ensure_ascii=False) + "\n")


# -- subcommand bodies --------------------------------------------------------


def cmd_min(s: Session, a, out):
    doc = _load_json(a.words, "words")
    if isinstance(doc, dict):
        doc = doc.get("gens")
    if not isinstance(doc, list):
        raise ParseError("min expects a JSON array of words")
    A = s.need_alphabet()
    F = minimize(A, [parse_word(A, w) for w in doc])
    s.check(F)
    _emit(F.to_json(), out)


def cmd_member(s: Session, a, out):
    _emit({"member": member(s.upset(a.upset), s.word(a.word))}, out)


def cmd_leq(s: Session, a, out):
    _emit({"leq": higman_leq(s.need_alphabet(), s.word(a.u), s.word(a.v))}, out)


def _folding(op):
    def run(s: Session, a, out):
        _emit(_fold(op, [s.upset(t) for t in a.upsets]).to_json(), out)

    return run


def cmd_quotient(s: Session, a, out):
    _emit(quotient(s.upset(a.upset), s.word(a.word), a.side).to_json(), out)


def cmd_residual(s: Session, a, out):
    _emit(residual(s.upset(a.upset), s.upset(a.by), a.side).to_json(), out)


def cmd_gamma(s: Session, a, out):
    _emit({"gamma": graduation(s.upset(a.upset))}, out)


def cmd_irreducible(s: Session, a, out):
    _emit({"irreducible": is_irreducible(s.upset(a.upset))}, out)


def cmd_factorize(s: Session, a, out):
    _emit(factorize(s.upset(a.upset)).to_json(), out)


def _envelope_parts(F: UpSet):
    S = build_envelope(F)
    M = to_transition_system(S)
    bp = None
    if not F.is_empty:
        bp = block_decomposition(graph_of(M), S.x, S.y)
    return S, M, bp


def _figure(a, S, M, bp, err):
    if a.figure is None:
        return
    if bp is None:
        raise DomainError("no figure for the empty segment: its graph is disconnected")
    from .figures import draw_envelope

    path = draw_envelope(S, M, bp, a.figure)
    err.write(f"figure written to {path}\n")


def cmd_factorize_blocks(s: Session, a, out, err):
    F = s.upset(a.upset)
    s.envelope_sized(F)
    fac = factorize_via_blocks(F)
    S, M, bp = _envelope_parts(F)
    _figure(a, S, M, bp, err)
    _emit({**fac.to_json(), "blocks": bp.to_json()}, out)


def cmd_envelope(s: Session, a, out, err):
    F = s.upset(a.upset)
    s.envelope_sized(F)
    S, M, bp = _envelope_parts(F)
    _figure(a, S, M, bp, err)
    if a.dot:
        out.write(transition_dot(S, M, bp))
        return
    doc = S.to_json()
    doc["transitions"] = M.to_json()
    if bp is not None:
        doc["blocks"] = bp.to_json()
    _emit(doc, out)


def cmd_distance(s: Session, a, out):
    _emit(d_V(s.upset(a.p), s.upset(a.q)).to_json(), out)


def cmd_closure(s: Session, a, out):
    _emit(closure(s.upset(a.upset)).to_json(), out)


def cmd_is_closed(s: Session, a, out):
    _emit({"closed": is_closed(s.upset(a.upset))}, out)


def cmd_closed_union(s: Session, a, out):
    _emit(closed_union([s.upset(t) for t in a.upsets], s.need_alphabet()).to_json(), out)


def cmd_lower_cone(s: Session, a, out):
    _emit(lower_cone(s.upset(a.upset)).to_json(), out)


def cmd_selfcheck(s: Session, a, out):
    from .selfcheck import selfcheck

    report = selfcheck(a.seed, a.cases, workers=a.workers, suites=a.suite, audit_len=a.audit_len)
    _emit(report, out)
    return EXIT_OK if report["passed"] else EXIT_DOMAIN


def cmd_oracle(s: Session, a, out):
    A = s.need_alphabet()
    F = s.upset(a.upset)
    if a.op == "truncate":
        lang = truncate(F, a.L)
    elif a.op == "concat":
        if a.other is None:
            raise UsageError("oracle concat needs a second operand")
        lang = oracle_concat(truncate(F, a.L), truncate(s.upset(a.other), a.L))
    else:
        if a.other is None:
            raise UsageError("oracle residual needs a word")
        w = s.word(a.other)
        lang = oracle_residual(truncate(F, a.L), w, a.side)
    words = sorted(lang.words, key=lambda w: (len(w), w))
    _emit({"L": lang.L, "words": [format_word(A, w) for w in words]}, out)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="alphabet JSON, inline or a file path")
    common.add_argument("--max-gens", type=int, default=8, help="refuse segments with more generators (default 8)")
    common.add_argument("--max-len", type=int, default=6, help="refuse longer words and generators (default 6)")
    common.add_argument("--max-letters", type=int, default=4, help="refuse larger alphabets (default 4)")
    common.add_argument("--max-points", type=int, default=200,
                        help="refuse envelopes with more points (default 200)")

    parser = argparse.ArgumentParser(
        prog="finseg",
        description="Final segments of A* under the Higman order: algebra, factorization, envelopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text, **kw)
        p.set_defaults(func=func)
        return p

    p = add("min", cmd_min, "minimal words of a word set, as a segment")
    p.add_argument("words", help='JSON array of words, e.g. ["a","ab","b"]')
    p = add("member", cmd_member, "is a word in a segment")
    p.add_argument("upset")
    p.add_argument("word")
    p = add("leq", cmd_leq, "Higman comparison of two words")
    p.add_argument("u")
    p.add_argument("v")
    for name, op, text in (
        ("concat", concat, "concatenation of segments"),
        ("meet", union_meet, "union of segments (the meet for reverse inclusion)"),
        ("intersect", intersect, "intersection of segments"),
    ):
        p = add(name, _folding(op), text)
        p.add_argument("upsets", nargs="+")
    for name, func, text in (
        ("quotient", cmd_quotient, "word quotient {u : uw in F} (right) or {u : wu in F} (left)"),
        ("residual", cmd_residual, "largest r with rB in F (right) or Br in F (left)"),
    ):
        p = add(name, func, text)
        p.add_argument("upset")
        p.add_argument("by" if name == "residual" else "word")
        p.add_argument("--side", choices=("left", "right"), default="right")
    for name, func, text in (
        ("gamma", cmd_gamma, "graduation: length of a shortest generator"),
        ("irreducible", cmd_irreducible, "irreducibility test"),
        ("factorize", cmd_factorize, "decomposition into irreducible factors"),
        ("closure", cmd_closure, "MacNeille closure"),
        ("is-closed", cmd_is_closed, "is the segment MacNeille closed"),
        ("lower-cone", cmd_lower_cone, "maximal words below every generator"),
    ):
        p = add(name, func, text)
        p.add_argument("upset")
    for name, func, text in (
        ("factorize-blocks", cmd_factorize_blocks, "factorization read off the blocks of the envelope graph"),
        ("envelope", cmd_envelope, "injective envelope of the two-point space at distance F"),
    ):
        p = add(name, func, text)
        p.add_argument("upset")
        p.add_argument("--figure", metavar="PATH", help="also draw the block-coloured envelope graph to PATH")
        if name == "envelope":
            fmt = p.add_mutually_exclusive_group()
            fmt.add_argument("--json", action="store_true", help="JSON output (default)")
            fmt.add_argument("--dot", action="store_true", help="DOT text of the transition graph")
    p = add("distance", cmd_distance, "the residuation distance between two segments")
    p.add_argument("p")
    p.add_argument("q")
    p = add("closed-union", cmd_closed_union, "closure of the union of segments")
    p.add_argument("upsets", nargs="+")
    p = add("selfcheck", cmd_selfcheck, "seeded cross-module property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    p.add_argument("--audit-len", type=int, default=4, help="word length bound of the prefix/suffix audit")
    p = sub.add_parser("oracle", parents=[common])  # debugging aid, deliberately undocumented
    p.set_defaults(func=cmd_oracle)
    p.add_argument("op", choices=("truncate", "concat", "residual"))
    p.add_argument("upset")
    p.add_argument("other", nargs="?")
    p.add_argument("--L", type=int, default=4)
    p.add_argument("--side", choices=("left", "right"), default="right")
    return parser


_WITH_ERR = {cmd_envelope, cmd_factorize_blocks}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        session = Session(args)
        if args.func in _WITH_ERR:
            code = args.func(session, args, out, err)
        else:
            code = args.func(session, args, out)
        return EXIT_OK if code is None else code
    except (ParseError, UsageError) as exc:
        err.write(f"finseg: error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"finseg: {exc}\n")
        return EXIT_DOMAIN
    except InvariantViolation as exc:
        err.write(f"finseg: internal invariant violated: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
