"""The ``tc`` command line driver.

Every subcommand writes tab-separated records ``rank  payload  sign  note``,
one per line. Exit status is 0 on success, 1 when a budget runs out (the
records produced so far are flushed first) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import ast
import os
import random
import sys
from dataclasses import dataclass
from typing import IO, Iterable

from .category import LEFT, MINUS, PLUS, RIGHT, BudgetExhausted, NotInImage, resolve
from .diophantine import POLS, A_code, PolEnumeration, parse_pol, verdict_trace
from .fol import ParseError, eval_sigma0, parse, phi_closure, show
from .fol.arith import NotBounded
from .fol.encoding import SENTENCES
from .fol.proofs import check_proof
from .fol.translate import translation_named
from .goedel import SpeculativeStream, goedel_G
from .machine import InvalidCode, MachineCode, Halted, parse_program, universal
from .stability import PeriodicStream, finite_stream, g_sweep

DEFAULT_FUEL = 10**7


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    fuel: int
    horizon: int
    seed: int
    output: str | None

    def __post_init__(self):
        if self.fuel < 1 or self.horizon < 0:
            raise UsageError("--fuel must be at least 1 and --horizon at least 0")


class Records:
    """Line-buffered record writer."""

    def __init__(self, out: IO[str]):
        self.out = out

    def __call__(self, rank, payload="", sign="", note="") -> None:
        fields = [str(rank), str(payload), str(sign), str(note)]
        self.out.write("\t".join(f.replace("\t", " ").replace("\n", " ") for f in fields) + "\n")
        self.out.flush()


# --------------------------------------------------------------------------
# input files


def read_stream(path: str) -> PeriodicStream | dict:
    """A signed stream of sentences from a UTF-8 file.

    One entry per line, ``+ sentence`` or ``- sentence``; ``#`` starts a
    comment. A line ``tail:`` starts the part that repeats forever. Without
    it the stream is defined on the listed ranks only (so an empty file is
    the empty stream).
    """
    prefix: list = []
    tail: list | None = None
    with open(path, encoding="utf-8") as fh:
        for no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line == "tail:":
                if tail is not None:
                    raise UsageError(f"{path}:{no}: second tail: marker")
                tail = []
                continue
            sign, _, text = line.partition(" ")
            if sign not in (PLUS, MINUS) or not text.strip():
                raise UsageError(f"{path}:{no}: expected '+ sentence' or '- sentence'")
            try:
                entry = (parse(text), sign)
            except ParseError as e:
                raise UsageError(f"{path}:{no}: {e}") from None
            (prefix if tail is None else tail).append(entry)
    if tail is not None:
        if not tail:
            raise UsageError(f"{path}: empty tail")
        return PeriodicStream(tuple(prefix), tuple(tail))
    return dict(enumerate(prefix))


def stream_code(path: str) -> MachineCode:
    s = read_stream(path)
    if isinstance(s, PeriodicStream):
        return s.machine(SENTENCES)
    return finite_stream(s, SENTENCES)


def _file_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [ln.split("#", 1)[0].strip() for ln in fh if ln.split("#", 1)[0].strip()]


def _lines_or_items(items: list[str]) -> list[str]:
    """Each item is a literal, or the path of a file with one per line."""
    out = []
    for it in items:
        out += _file_lines(it) if os.path.isfile(it) else [it]
    return out


def read_code(args) -> MachineCode:
    if args.program:
        with open(args.program, encoding="utf-8") as fh:
            return MachineCode.of(parse_program(fh.read()))
    if args.code is not None:
        return MachineCode(args.code)
    raise UsageError("give --program FILE or --code N")


def _value(key: str, text: str):
    if key.startswith(("formula", "sentence")):
        return parse(text)
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _show_value(v) -> str:
    from .fol.syntax import is_formula
    if is_formula(v):
        return show(v)
    return repr(v)


# --------------------------------------------------------------------------
# subcommands


def cmd_run(args, cfg: RunConfig, rec: Records) -> int:
    code = read_code(args)
    out = universal(code, args.input, cfg.fuel, detect_loops=True)
    if isinstance(out, Halted):
        rec(0, out.value, "", "halted")
        return 0
    if out.proven_divergent:
        rec(0, "", "", "diverges")
        return 0
    rec(0, "", "", f"no answer within {cfg.fuel} steps")
    return 1


_SCHEMES = {"product": "prod(nat,nat)", "list": "list(nat)", "sum": "sum(nat,nat)"}


def _scheme_value(scheme: str, words: list[str]):
    """``--values 2 1`` for product, ``--values 3 1`` for list and
    ``--values left 3`` for sum."""
    try:
        if scheme == "sum":
            tag, x = words
            return {"left": LEFT, "right": RIGHT}[tag.lower()], int(x)
        nums = [int(w) for w in words]
    except (KeyError, ValueError):
        raise UsageError(f"bad --values for {scheme}: {' '.join(words)}") from None
    if scheme == "product":
        if len(nums) != 2:
            raise UsageError("product takes two values")
        return tuple(nums)
    return nums


def cmd_encode(args, cfg: RunConfig, rec: Records) -> int:
    if args.scheme:
        enc = resolve(_SCHEMES[args.scheme])
        if args.values is None:
            raise UsageError("--scheme needs --values")
        v = _scheme_value(args.scheme, args.values)
        rec(0, enc(v), "", _show_value(v))
        return 0
    if not args.encoding:
        raise UsageError("give --encoding or --scheme")
    enc = resolve(args.encoding)
    if args.sample:
        if enc.sample is None:
            raise UsageError(f"{enc.key} has no sampler")
        r = random.Random(cfg.seed)
        for i in range(args.sample):
            v = enc.sample(r)
            rec(i, enc(v), "", _show_value(v))
        return 0
    if args.value is None:
        raise UsageError("give --value or --sample")
    v = _value(enc.key, args.value)
    rec(0, enc(v), "", _show_value(v))
    return 0


def cmd_decode(args, cfg: RunConfig, rec: Records) -> int:
    if not (args.encoding or args.scheme):
        raise UsageError("give --encoding or --scheme")
    enc = resolve(args.encoding or _SCHEMES[args.scheme])
    if args.code < 0:
        raise UsageError("codes are natural numbers")
    try:
        rec(0, _show_value(enc.decode(args.code)), "", "in image")
    except NotInImage:
        rec(0, "", "", "not in image")
    return 0


def cmd_stabilize(args, cfg: RunConfig, rec: Records) -> int:
    code = stream_code(args.stream)
    last = frozenset()
    for st in g_sweep(code, SENTENCES, cfg.horizon, cfg.fuel):
        if st.point is None:
            rec(st.n, "", "", "sentinel")
        else:
            i, b, s = st.point
            rec(st.n, show(b), s, f"index {i}; stable {len(st.plus)}")
        last = st.plus
    for b in sorted(last, key=show):
        rec("end", show(b), PLUS, "stable")
    return 0


def cmd_dio(args, cfg: RunConfig, rec: Records) -> int:
    polys = [parse_pol(t) for t in _lines_or_items(args.poly)]
    Z = PolEnumeration([parse_pol(t) for t in args.seed_poly] if args.seed_poly else polys)
    feeds = {p: _Feed() for p in polys}
    verdicts = {p: verdict_trace(feeds[p]) for p in polys}
    for st in g_sweep(A_code(Z), POLS, cfg.horizon, cfg.fuel, watch=polys):
        for p in polys:
            sign = PLUS if p in st.plus else MINUS
            feeds[p].items.append(sign)
            v = next(verdicts[p])
            if args.every or st.n == cfg.horizon:
                rec(st.n, str(p), sign, str(v))
    return 0


class _Feed:
    """An iterable that hands out items as they are appended."""

    def __init__(self):
        self.items: list = []

    def __iter__(self):
        i = 0
        while i < len(self.items):
            yield self.items[i]
            i += 1


def cmd_closure(args, cfg: RunConfig, rec: Records) -> int:
    texts = list(args.premise)
    if args.axioms:
        texts += _file_lines(args.axioms)
    premises = [parse(t) for t in texts]
    last = cfg.horizon if args.steps is None else args.steps
    for n in range(last + 1):
        f, proof = phi_closure(premises, n)
        ok = check_proof(proof, premises)
        rec(n, show(f), PLUS, f"proof {len(proof)} lines {'checks' if ok else 'FAILS'}")
    return 0


def cmd_spec(args, cfg: RunConfig, rec: Records) -> int:
    s = SpeculativeStream(stream_code(args.enumerator), translation_named(args.translation))
    for n, e in enumerate(s.prefix(cfg.horizon, max(1, cfg.fuel // (cfg.horizon + 1)))):
        kind, k = s.origin(n)
        if e is None:
            rec(n, "", "", f"{kind} {k}: undefined")
        else:
            rec(n, show(e[0]), e[1], f"{kind} {k}")
    return 0


def cmd_goedel(args, cfg: RunConfig, rec: Records) -> int:
    t = translation_named(args.translation)
    g = goedel_G(stream_code(args.enumerator), t)
    g.check_shape()
    note = "Pi2" + ("" if g.exact else "; library code, see README")
    if args.emit == "sentence":
        rec(0, show(g.sentence), "", note)
    elif args.emit == "translated":
        rec(0, show(g.translated if g.translated is not None else g.sentence), "", note)
    elif args.emit == "matrix":
        rec(0, show(g.matrix), "", "Delta0")
    else:
        rec(0, show(g.certificate), "", "Pi2 prenex certificate")
        rec(1, show(g.negation), "", "Sigma2 negation")
    return 0


def cmd_eval(args, cfg: RunConfig, rec: Records) -> int:
    f = parse(args.sentence)
    rec(0, "true" if eval_sigma0(f) else "false", "", "")
    return 0


COMMANDS = {
    "run": cmd_run, "encode": cmd_encode, "decode": cmd_decode, "stabilize": cmd_stabilize,
    "dio": cmd_dio, "closure": cmd_closure, "spec": cmd_spec, "goedel": cmd_goedel, "eval": cmd_eval,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=None, help="step budget (default $TC_FUEL or 10^7)")
    common.add_argument("--horizon", type=int, default=20, help="last rank to report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="write records here instead of stdout")

    p = argparse.ArgumentParser(prog="tc", description="Codes, signed streams, stabilization and the diagonal sentence.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("run", parents=[common], help="run a program on an input")
    s.add_argument("--program", help="register program source file")
    s.add_argument("--code", type=int, help="program code number")
    s.add_argument("--input", type=int, default=0)

    s = sub.add_parser("encode", parents=[common], help="encode a value")
    s.add_argument("--encoding", help="encoding key, e.g. nat, pair(nat,pm), sentence")
    s.add_argument("--scheme", choices=sorted(_SCHEMES), help="shorthand for the nat encodings")
    s.add_argument("--values", nargs="+", help="values for --scheme")
    s.add_argument("--value")
    s.add_argument("--sample", type=int, default=0, help="encode this many seeded random values")

    s = sub.add_parser("decode", parents=[common], help="decode a number")
    s.add_argument("--encoding")
    s.add_argument("--scheme", choices=sorted(_SCHEMES))
    s.add_argument("--code", type=int, required=True)

    s = sub.add_parser("stabilize", parents=[common], help="sweep the decision map of a stream")
    s.add_argument("--stream", required=True)

    s = sub.add_parser("dio", parents=[common], help="decide 'no integer root' in the limit")
    s.add_argument("--poly", action="append", required=True, help="polynomial, or a file of them")
    s.add_argument("--seed-poly", action="append", default=[], help="polynomials listed first (default: --poly)")
    s.add_argument("--every", action="store_true", help="one record per rank, not just the last")

    s = sub.add_parser("closure", parents=[common], help="enumerate consequences of premises")
    s.add_argument("--premise", action="append", default=[])
    s.add_argument("--axioms", help="file with one premise sentence per line")
    s.add_argument("--steps", type=int, help="last closure step (default --horizon)")

    for name, helptext in (("spec", "the speculative stream of an enumerator"),
                           ("goedel", "the sentence G(T)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--enumerator", required=True, help="stream file")
        s.add_argument("--translation", choices=["identity", "vonneumann"], default="identity")
    s.add_argument("--emit", choices=["sentence", "translated", "matrix", "certificate"], default="sentence")

    s = sub.add_parser("eval", parents=[common], help="truth of a bounded arithmetic sentence")
    s.add_argument("--sentence", required=True)
    return p


def _fuel(args) -> int:
    if args.fuel is not None:
        return args.fuel
    env = os.environ.get("TC_FUEL")
    if env is None:
        return DEFAULT_FUEL
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TC_FUEL is not a number: {env!r}") from None


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    out: IO[str] = sys.stdout
    try:
        cfg = RunConfig(_fuel(args), args.horizon, args.seed, args.output)
        if cfg.output:
            out = open(cfg.output, "w", encoding="utf-8")
        return COMMANDS[args.command](args, cfg, Records(out))
    except UsageError as e:
        print(f"tc: {e}", file=sys.stderr)
        return 2
    except (ParseError, NotBounded, InvalidCode, OSError, ValueError, KeyError) as e:
        print(f"tc: {e}", file=sys.stderr)
        return 2
    except BudgetExhausted as e:
        print(f"tc: {e}", file=sys.stderr)
        return 1
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
