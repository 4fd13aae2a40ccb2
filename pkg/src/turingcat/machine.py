"""Register machines, their codes, and the universal interpreter.

A *code* is a natural number. It decodes to a term of a small code language:

* a register program ``(prog (INC 0) (HALT 0))``, or
* a library routine applied to arguments, ``(TOT (prog ...))``.

Library routines ("macros") are fixed, finite entries of the language, each
with a Python evaluation rule that may call back into :func:`universal` on
sub-codes. Every step of every rule is paid for with fuel, so no call here
ever diverges: partiality is observed as :class:`OutOfFuel`.

The number of a term is the big-endian integer of its canonical text, with a
``0x01`` guard byte; the image is decidable by re-parsing and comparing with
the canonical printout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Sequence, Union

from .coding import bytes_to_nat, nat_to_bytes, pair, unpair

OPS = ("INC", "DECJZ", "CONST", "COPY", "JMP", "HALT")
_ARITY = {"INC": 1, "DECJZ": 2, "CONST": 2, "COPY": 2, "JMP": 1, "HALT": 1}

#: Reserved "nothing new" output of totalized machines. 0 is never the
#: machine-level code of a pair, so it never collides with a graph point.
SENTINEL = 0


class InvalidCode(ValueError):
    """A natural number outside the image of the program encoding."""


class ProgramError(ValueError):
    pass


# --------------------------------------------------------------------------
# Register programs


@dataclass(frozen=True)
class Instr:
    op: str
    a: int
    b: int = 0

    def __post_init__(self):
        if self.op not in OPS:
            raise ProgramError(f"unknown opcode {self.op!r}")
        if self.a < 0 or self.b < 0:
            raise ProgramError("negative operand")


@dataclass(frozen=True)
class Program:
    """A register-machine program.

    Input arrives in register 0, every other register starts at 0. Running
    off the end halts with the value of register 0. Jump targets are
    instruction indices; ``DECJZ r L`` jumps to L when r is 0 and otherwise
    decrements r and falls through.
    """

    instructions: tuple[Instr, ...]

    def __post_init__(self):
        n = len(self.instructions)
        for ins in self.instructions:
            target = ins.b if ins.op == "DECJZ" else ins.a if ins.op == "JMP" else None
            if target is not None and target > n:
                raise ProgramError(f"jump target {target} out of range")

    def __len__(self) -> int:
        return len(self.instructions)

    @property
    def registers(self) -> int:
        """Number of registers the program can touch (at least 1)."""
        top = 0
        for ins in self.instructions:
            top = max(top, ins.a if ins.op != "JMP" else 0)
            if ins.op == "COPY":
                top = max(top, ins.b)
        return top + 1

    def relocated(self, offset: int) -> tuple[Instr, ...]:
        """Instructions with every jump target shifted by ``offset``."""
        out = []
        for ins in self.instructions:
            if ins.op == "DECJZ":
                ins = Instr("DECJZ", ins.a, ins.b + offset)
            elif ins.op == "JMP":
                ins = Instr("JMP", ins.a + offset)
            out.append(ins)
        return tuple(out)

    def __add__(self, other: "Program") -> "Program":
        """Sequential composition: self falls through into other.

        HALT instructions of ``self`` become jumps to the start of ``other``
        after copying their output register into register 0.
        """
        n = len(self.instructions)
        head: list[Instr] = []
        # indices stay stable: each HALT r becomes a jump into a trampoline
        # (COPY 0 r; JMP end) placed after a fall-through JMP end at index n
        tramp: list[Instr] = [Instr("JMP", 0)]
        for ins in self.instructions:
            if ins.op == "HALT":
                head.append(Instr("JMP", n + len(tramp)))
                tramp += [Instr("COPY", 0, ins.a), Instr("JMP", 0)]
            else:
                head.append(ins)
        end = n + len(tramp)
        tramp = [Instr("JMP", end) if t.op == "JMP" else t for t in tramp]
        first = Program(tuple(head + tramp))
        return Program(first.instructions + other.relocated(end))

    # text format ---------------------------------------------------------

    def to_text(self) -> str:
        targets = set()
        for ins in self.instructions:
            if ins.op == "DECJZ":
                targets.add(ins.b)
            elif ins.op == "JMP":
                targets.add(ins.a)
        lines = []
        for i, ins in enumerate(self.instructions):
            if i in targets:
                lines.append(f"L{i}:")
            if ins.op == "DECJZ":
                lines.append(f"  DECJZ {ins.a} L{ins.b}")
            elif ins.op == "JMP":
                lines.append(f"  JMP L{ins.a}")
            elif ins.op in ("CONST", "COPY"):
                lines.append(f"  {ins.op} {ins.a} {ins.b}")
            else:
                lines.append(f"  {ins.op} {ins.a}")
        if len(self.instructions) in targets:
            lines.append(f"L{len(self.instructions)}:")
        return "\n".join(lines) + "\n"


_LABEL = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*):\s*(.*)$")


def parse_program(text: str) -> Program:
    """Parse the line-oriented assembly format (``INC r``, ``DECJZ r L``, ...)."""
    labels: dict[str, int] = {}
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.split(r"[#;]", raw, maxsplit=1)[0].strip()
        while line:
            m = _LABEL.match(line)
            if not m:
                break
            if m.group(1) in labels:
                raise ProgramError(f"line {lineno}: duplicate label {m.group(1)}")
            labels[m.group(1)] = len(rows)
            line = m.group(2).strip()
        if line:
            rows.append((lineno, line.split()))

    def target(tok: str, lineno: int) -> int:
        if tok in labels:
            return labels[tok]
        if tok.isdigit():
            return int(tok)
        raise ProgramError(f"line {lineno}: unknown label {tok}")

    def reg(tok: str, lineno: int) -> int:
        if not tok.isdigit():
            raise ProgramError(f"line {lineno}: bad register {tok!r}")
        return int(tok)

    out = []
    for lineno, toks in rows:
        op = toks[0].upper()
        if op not in OPS:
            raise ProgramError(f"line {lineno}: unknown opcode {toks[0]!r}")
        if len(toks) - 1 != _ARITY[op]:
            raise ProgramError(f"line {lineno}: {op} takes {_ARITY[op]} operand(s)")
        if op == "JMP":
            out.append(Instr(op, target(toks[1], lineno)))
        elif op == "DECJZ":
            out.append(Instr(op, reg(toks[1], lineno), target(toks[2], lineno)))
        elif op in ("CONST", "COPY"):
            out.append(Instr(op, reg(toks[1], lineno), reg(toks[2], lineno)))
        else:
            out.append(Instr(op, reg(toks[1], lineno)))
    return Program(tuple(out))


# --------------------------------------------------------------------------
# Outcomes and fuel


@dataclass(frozen=True)
class Halted:
    value: int


@dataclass(frozen=True)
class OutOfFuel:
    #: True when divergence was proven (a repeated machine state, or a
    #: library routine that is undefined on this input)
    proven_divergent: bool = False


Outcome = Union[Halted, OutOfFuel]


class Exhausted(Exception):
    """Raised inside evaluation when ``meter`` ran dry."""

    def __init__(self, meter: "Meter"):
        super().__init__("out of fuel")
        self.meter = meter


class Undefined(Exception):
    """The computed partial function is undefined here (never halts)."""


class Meter:
    """A fuel budget. Sub-meters draw on their parent as well."""

    __slots__ = ("left", "parent", "used", "detect_loops")

    def __init__(self, fuel: int, parent: "Meter | None" = None, detect_loops: bool = False):
        self.left = fuel
        self.parent = parent
        self.used = 0
        # register runs that revisit a state are reported as Undefined
        self.detect_loops = detect_loops or (parent is not None and parent.detect_loops)

    def available(self) -> int:
        m, best = self, self.left
        while m.parent is not None:
            m = m.parent
            best = min(best, m.left)
        return best

    def charge(self, k: int = 1) -> None:
        avail = self.available()
        take = min(k, avail)
        m = self
        while m is not None:
            m.left -= take
            m.used += take
            m = m.parent
        if take < k:
            raise Exhausted(self._culprit())

    def _culprit(self) -> "Meter":
        # outermost meter that is empty
        m, found = self, None
        while m is not None:
            if m.left <= 0:
                found = m
            m = m.parent
        return found or self

    def sub(self, fuel: int) -> "Meter":
        return Meter(fuel, self)


# --------------------------------------------------------------------------
# Running register programs


def _exec(p: Program, x: int, meter: Meter) -> int:
    regs = [0] * p.registers
    regs[0] = x
    code = p.instructions
    n = len(code)
    pc = 0
    budget = meter.available()
    steps = 0
    seen = set() if meter.detect_loops else None
    while True:
        if pc >= n:
            meter.charge(steps)
            return regs[0]
        if steps >= budget:
            meter.charge(steps + 1)  # raises
        if seen is not None:
            key = (pc, tuple(regs))
            if key in seen:
                meter.charge(steps)
                raise Undefined("repeated machine state")
            seen.add(key)
        ins = code[pc]
        steps += 1
        op = ins.op
        if op == "INC":
            regs[ins.a] += 1
            pc += 1
        elif op == "DECJZ":
            if regs[ins.a] == 0:
                pc = ins.b
            else:
                regs[ins.a] -= 1
                pc += 1
        elif op == "CONST":
            regs[ins.a] = ins.b
            pc += 1
        elif op == "COPY":
            regs[ins.a] = regs[ins.b]
            pc += 1
        elif op == "JMP":
            pc = ins.a
        else:  # HALT
            meter.charge(steps)
            return regs[ins.a]


def run(p: Program, x: int, fuel: int, detect_loops: bool = False) -> Outcome:
    """Run ``p`` on ``x`` for at most ``fuel`` instruction executions."""
    meter = Meter(fuel, detect_loops=detect_loops)
    try:
        return Halted(_exec(p, x, meter))
    except Exhausted:
        return OutOfFuel()
    except Undefined:
        return OutOfFuel(proven_divergent=True)


def trace(p: Program, x: int, fuel: int) -> list[tuple[int, tuple[int, ...]]]:
    """The computation sequence: states (pc, registers) visited, in order.

    The last state is the halting one when the run halts within ``fuel``.
    """
    regs = [0] * p.registers
    regs[0] = x
    pc = 0
    states = [(pc, tuple(regs))]
    for _ in range(fuel):
        if pc >= len(p):
            break
        ins = p.instructions[pc]
        if ins.op == "HALT":
            break
        if ins.op == "INC":
            regs[ins.a] += 1
            pc += 1
        elif ins.op == "DECJZ":
            if regs[ins.a] == 0:
                pc = ins.b
            else:
                regs[ins.a] -= 1
                pc += 1
        elif ins.op == "CONST":
            regs[ins.a] = ins.b
            pc += 1
        elif ins.op == "COPY":
            regs[ins.a] = regs[ins.b]
            pc += 1
        else:
            pc = ins.a
        states.append((pc, tuple(regs)))
    return states


# --------------------------------------------------------------------------
# Code terms and their numbering


@dataclass(frozen=True)
class Macro:
    name: str
    args: tuple


Term = Union[Program, Macro]
Arg = Union[int, str, Program, Macro]


@dataclass(frozen=True)
class MacroDef:
    name: str
    signature: tuple[str, ...]  # each "nat", "str" or "code"
    rule: Callable[..., int]
    doc: str = ""


MACROS: dict[str, MacroDef] = {}


def macro(name: str, *signature: str):
    """Register a library routine. The rule is called as ``rule(x, meter, *args)``."""
    def deco(fn):
        MACROS[name] = MacroDef(name, tuple(signature), fn, fn.__doc__ or "")
        return fn
    return deco


def _sexpr(t) -> str:
    if isinstance(t, bool):
        raise TypeError("bool in code term")
    if isinstance(t, int):
        if t < 0:
            raise ProgramError("negative literal")
        return str(t)
    if isinstance(t, str):
        if '"' in t or "\\" in t:
            raise ProgramError("unprintable string literal")
        return f'"{t}"'
    if isinstance(t, Program):
        parts = ["prog"]
        for ins in t.instructions:
            if _ARITY[ins.op] == 1:
                parts.append(f"({ins.op} {ins.a})")
            else:
                parts.append(f"({ins.op} {ins.a} {ins.b})")
        return "(" + " ".join(parts) + ")"
    if isinstance(t, Macro):
        return "(" + " ".join([t.name] + [_sexpr(a) for a in t.args]) + ")"
    if isinstance(t, MachineCode):
        return _sexpr(t.term)
    raise TypeError(f"not a code term: {t!r}")


_TOKEN = re.compile(r'\s*(\(|\)|"[^"\\]*"|[A-Za-z_][A-Za-z0-9_]*|\d+)')


def _read(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidCode(f"bad character at {pos}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    stack: list[list] = [[]]
    for tok in toks:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise InvalidCode("unbalanced")
            done = stack.pop()
            stack[-1].append(done)
        elif tok.startswith('"'):
            stack[-1].append(("str", tok[1:-1]))
        elif tok.isdigit():
            if len(tok) > 1 and tok[0] == "0":
                raise InvalidCode("non-canonical numeral")
            stack[-1].append(int(tok))
        else:
            stack[-1].append(("sym", tok))
    if len(stack) != 1 or len(stack[0]) != 1:
        raise InvalidCode("not a single expression")
    return stack[0][0]


def _build(node) -> Term:
    if not isinstance(node, list) or not node or not isinstance(node[0], tuple) or node[0][0] != "sym":
        raise InvalidCode("expected a code term")
    head = node[0][1]
    if head == "prog":
        out = []
        for ins in node[1:]:
            if not (isinstance(ins, list) and ins and isinstance(ins[0], tuple) and ins[0][0] == "sym"):
                raise InvalidCode("bad instruction")
            op = ins[0][1]
            if op not in OPS or len(ins) - 1 != _ARITY[op] or not all(isinstance(v, int) for v in ins[1:]):
                raise InvalidCode(f"bad instruction {op}")
            out.append(Instr(op, *ins[1:]))
        try:
            return Program(tuple(out))
        except ProgramError as exc:
            raise InvalidCode(str(exc)) from None
    d = MACROS.get(head)
    if d is None or len(node) - 1 != len(d.signature):
        raise InvalidCode(f"unknown routine or arity: {head}")
    args = []
    for kind, a in zip(d.signature, node[1:]):
        if kind == "nat" and isinstance(a, int):
            args.append(a)
        elif kind == "str" and isinstance(a, tuple) and a[0] == "str":
            args.append(a[1])
        elif kind == "code" and isinstance(a, list):
            args.append(_build(a))
        else:
            raise InvalidCode(f"{head}: argument of wrong kind")
    return Macro(head, tuple(args))


@lru_cache(maxsize=4096)
def _decode(n: int) -> Term:
    raw = nat_to_bytes(n)
    if raw is None:
        raise InvalidCode(f"{n} is not a program code")
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise InvalidCode("not ascii") from None
    term = _build(_read(text))
    if _sexpr(term) != text:
        raise InvalidCode("non-canonical spelling")
    return term


@dataclass(frozen=True)
class MachineCode:
    """The number of a program, with its decoded term cached alongside."""

    number: int
    term: Term = field(compare=False, repr=False, hash=False, default=None)

    def __post_init__(self):
        if self.term is None:
            object.__setattr__(self, "term", _decode(self.number))

    @classmethod
    def of(cls, term: "Term | MachineCode") -> "MachineCode":
        if isinstance(term, MachineCode):
            return term
        text = _sexpr(term)
        return cls(bytes_to_nat(text.encode("ascii")), term)

    @cached_property
    def text(self) -> str:
        return _sexpr(self.term)

    def __int__(self) -> int:
        return self.number

    def __repr__(self) -> str:
        t = self.text
        return f"MachineCode({t if len(t) < 60 else t[:57] + '...'})"


def is_code(n: int) -> bool:
    """Decides membership in the image of the program encoding."""
    try:
        _decode(n)
        return True
    except (InvalidCode, ProgramError, RecursionError):
        return False


def encode(p: Term) -> MachineCode:
    return MachineCode.of(p)


def decode(n: int) -> Term:
    return _decode(n)


# --------------------------------------------------------------------------
# Evaluation


def evaluate(code: "Term | MachineCode | int", x: int, meter: Meter) -> int:
    """Evaluate a code on x, charging ``meter``. Raises Exhausted/Undefined."""
    if isinstance(code, int):
        code = _decode(code)
    elif isinstance(code, MachineCode):
        code = code.term
    if isinstance(code, Program):
        return _exec(code, x, meter)
    meter.charge(1)
    d = MACROS[code.name]
    return d.rule(x, meter, *code.args)


def universal(code: "MachineCode | int", x: int, fuel: int, detect_loops: bool = False) -> Outcome:
    """The universal machine U(code, x), observed within ``fuel``.

    Raises :class:`InvalidCode` when ``code`` is not a program code.
    """
    term = _as_term(code)
    meter = Meter(fuel, detect_loops=detect_loops)
    try:
        return Halted(evaluate(term, x, meter))
    except Exhausted:
        return OutOfFuel()
    except Undefined:
        return OutOfFuel(proven_divergent=True)


def try_run(code, x: int, meter: Meter, fuel: int) -> "int | None":
    """Run under a sub-budget; None when the sub-budget (only) ran out
    or the routine is undefined. Exhaustion of an outer budget propagates."""
    sub = meter.sub(fuel)
    try:
        return evaluate(code, x, sub)
    except Exhausted as e:
        if e.meter is sub:
            return None
        raise
    except Undefined:
        return None


# --------------------------------------------------------------------------
# Stock programs

IDENTITY = parse_program("HALT 0\n")
SUCCESSOR = parse_program("INC 0\nHALT 0\n")
DIVERGE = parse_program("Lloop: JMP Lloop\n")

#: Unpair r0 = pair(a, b) into r1 = a, r2 = b (walks the Cantor diagonal).
UNPAIR = parse_program("""
        DECJZ 0 Lbad
Lloop:  DECJZ 0 Ldone
        DECJZ 1 Lwrap
        INC 2
        JMP Lloop
Lwrap:  COPY 1 2
        INC 1
        CONST 2 0
        JMP Lloop
Lbad:   JMP Lbad
Ldone:  HALT 0
""")


def two_input(body: Program) -> Program:
    """Prefix ``body`` with :data:`UNPAIR`; body sees a in r1 and b in r2."""
    return UNPAIR + body


ADDITION = two_input(parse_program("""
Ladd:   DECJZ 2 Lout
        INC 1
        JMP Ladd
Lout:   HALT 1
"""))
SECOND = two_input(parse_program("HALT 2\n"))
FIRST = two_input(parse_program("HALT 1\n"))


def pairing_prologue(a: int) -> Program:
    """Register code for x |-> pair(a, x); leaves all scratch registers 0."""
    return parse_program(f"""
        CONST 1 {a}
        COPY 2 0
        COPY 3 2
Lsum:   DECJZ 1 Lsumd
        INC 3
        JMP Lsum
Lsumd:  COPY 4 2
        INC 4
Ltri:   DECJZ 3 Ldone
        COPY 5 3
        INC 4
Ladd:   DECJZ 5 Ltri
        INC 4
        JMP Ladd
Ldone:  COPY 0 4
        CONST 2 0
        CONST 4 0
""")


def random_program(rng, length: int = 8, registers: int = 4) -> Program:
    """A random register program drawn from ``rng`` (a ``random.Random``)."""
    out = []
    for _ in range(length):
        op = rng.choice(("INC", "INC", "DECJZ", "DECJZ", "CONST", "COPY", "JMP", "HALT"))
        r = rng.randrange(registers)
        if op == "DECJZ":
            out.append(Instr(op, r, rng.randrange(length + 1)))
        elif op == "JMP":
            out.append(Instr(op, rng.randrange(length + 1)))
        elif op == "CONST":
            out.append(Instr(op, r, rng.randrange(4)))
        elif op == "COPY":
            out.append(Instr(op, r, rng.randrange(registers)))
        else:
            out.append(Instr(op, r))
    return Program(tuple(out))


def _as_term(code) -> Term:
    if isinstance(code, MachineCode):
        return code.term
    if isinstance(code, int):
        return _decode(code)
    return code


def smn(code2: "MachineCode | int", a: int) -> MachineCode:
    """Specialize a two-input code at first argument ``a``.

    The result computes b |-> code2(pair(a, b)). A register program gets the
    pairing prologue prepended; a library term is sequenced after PAIRL.
    """
    term = _as_term(code2)
    if isinstance(term, Program):
        return MachineCode.of(pairing_prologue(a) + term)
    # the register prologue counts up to a in unary, hopeless for the large
    # codes that show up as a here; the library routine does the same job
    return MachineCode.of(Macro("SEQ", (Macro("PAIRL", (a,)), term)))


@macro("PAIRL", "nat")
def _pairl(x, meter, a):
    """x |-> pair(a, x)."""
    return pair(a, x)


def seq(f, g) -> MachineCode:
    """x |-> g(f(x))."""
    return MachineCode.of(Macro("SEQ", (_as_term(f), _as_term(g))))


@macro("SEQ", "code", "code")
def _seq(x, meter, f, g):
    """Run f, feed its output to g."""
    return evaluate(g, evaluate(f, x, meter), meter)


# --------------------------------------------------------------------------
# Totalization by dovetailing


def dovetail(code, meter: Meter) -> Iterator[tuple[int, int, int]]:
    """Stages of the dovetailed search over (input, step budget).

    Yields ``(stage, input, value)`` for each discovery, in discovery order,
    then ``(stage, -1, 0)`` once per stage as a stage marker. At stage s
    every not-yet-halted input i <= s is run under a budget of s steps.
    """
    pending: list[int] = []
    s = 0
    while True:
        pending.append(s)
        still = []
        for i in pending:
            meter.charge(1)
            v = try_run(code, i, meter, s)
            if v is None:
                still.append(i)
            else:
                yield s, i, v
        pending = still
        yield s, -1, 0
        s += 1


def totalized_prefix(code, n: int, meter: Meter) -> list[int]:
    """Outputs Tot(code)(0..n): rank r emits the oldest unreported discovery
    made by the end of stage r, or SENTINEL."""
    queue: list[int] = []
    out: list[int] = []
    head = 0
    for s, i, v in dovetail(code, meter):
        if i >= 0:
            queue.append(v)
            continue
        if head < len(queue):
            out.append(queue[head])
            head += 1
        else:
            out.append(SENTINEL)
        if s == n:
            return out
    raise AssertionError("unreachable")


@macro("TOT", "code")
def _tot(x, meter, code):
    """Total machine with image(code) plus SENTINEL."""
    return totalized_prefix(code, x, meter)[x]


def totalize(code: "MachineCode | int") -> MachineCode:
    term = _as_term(code)
    return MachineCode.of(Macro("TOT", (term,)))


__all__ = [
    "ADDITION", "DIVERGE", "FIRST", "IDENTITY", "SECOND", "SENTINEL", "SUCCESSOR", "UNPAIR",
    "Halted", "Instr", "InvalidCode", "MachineCode", "Macro", "Meter", "OutOfFuel", "Program",
    "ProgramError", "Undefined", "Exhausted", "decode", "dovetail", "encode", "evaluate", "is_code",
    "macro", "pair", "pairing_prologue", "parse_program", "random_program", "run", "seq", "smn", "totalize",
    "totalized_prefix", "trace", "try_run", "two_input", "universal", "unpair",
]
