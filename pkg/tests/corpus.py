"""Seeded corpora shared by the property tests and the acceptance suite."""

import random

from turingcat.category import MINUS, PLUS
from turingcat.stability import PeriodicStream


def periodic_stream(rng: random.Random, symbols: int = 6, max_period: int = 5,
                    max_prefix: int = 8) -> PeriodicStream:
    alphabet = list(range(rng.randint(1, symbols)))

    def entry():
        return rng.choice(alphabet), rng.choice([PLUS, PLUS, MINUS])

    prefix = tuple(entry() for _ in range(rng.randint(0, max_prefix)))
    tail = tuple(entry() for _ in range(rng.randint(1, max_period)))
    return PeriodicStream(prefix, tail)


def periodic_corpus(n: int, seed: int = 0) -> list[PeriodicStream]:
    rng = random.Random(seed)
    return [periodic_stream(rng) for _ in range(n)]


#: closed sentences with their truth values; the universal ones collide with
#: early speculative claims, which is the interesting case
SENTENCE_POOL = [
    ("0 = 0", True), ("s(0) = 0", False), ("1 + 1 = 2", True), ("2 * 2 = 5", False),
    ("0 < 1", True), ("3 < 2", False), ("forall m. m = m", True), ("~(forall m. m < m)", True),
    ("~(forall m. 0 < m)", True), ("exists x. x < 3 & x + x = 4", True),
]


def sentence_stream(rng: random.Random, max_period: int = 5, max_prefix: int = 8) -> PeriodicStream:
    """A stream over sentences that only ever asserts true ones, so its stable set is consistent."""
    from turingcat.fol import parse

    pool = [(parse(t), ok) for t, ok in SENTENCE_POOL]

    def entry():
        f, ok = rng.choice(pool)
        return f, rng.choice([PLUS, MINUS]) if ok else MINUS

    prefix = tuple(entry() for _ in range(rng.randint(0, max_prefix)))
    tail = tuple(entry() for _ in range(rng.randint(1, max_period)))
    return PeriodicStream(prefix, tail)


def sentence_corpus(n: int, seed: int = 0) -> list[PeriodicStream]:
    rng = random.Random(seed)
    return [sentence_stream(rng) for _ in range(n)]


def random_formula(rng: random.Random, depth: int = 3):
    """A seeded random arithmetic formula over x, y, z."""
    from turingcat.fol import And, Eq, Exists, Fn, Forall, Imp, Not, Or, Rel, Var

    def term(d):
        if d == 0 or rng.random() < 0.3:
            return rng.choice([Fn("0"), Var("x"), Var("y"), Var("z")])
        op = rng.choice(["s", "+", "*"])
        if op == "s":
            return Fn("s", (term(d - 1),))
        return Fn(op, (term(d - 1), term(d - 1)))

    def formula(d):
        if d == 0 or rng.random() < 0.25:
            a, b = term(2), term(2)
            return Eq(a, b) if rng.random() < 0.5 else Rel("<", (a, b))
        k = rng.randrange(6)
        if k == 0:
            return Not(formula(d - 1))
        if k <= 3:
            return (And, Or, Imp)[k - 1](formula(d - 1), formula(d - 1))
        return (Forall, Exists)[k - 4](rng.choice("xyz"), formula(d - 1))

    return formula(depth)
