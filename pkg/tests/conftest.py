from hypothesis import settings, strategies as st

from turingcat.fol.syntax import And, Eq, Exists, Fn, Forall, Imp, Not, Or, Rel, Var

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

VARS = ["x", "y", "z"]


def arith_terms(names=VARS):
    leaves = st.one_of(st.sampled_from(names).map(Var), st.just(Fn("0")))
    return st.recursive(
        leaves,
        lambda t: st.one_of(
            t.map(lambda a: Fn("s", (a,))),
            st.tuples(st.sampled_from(["+", "*"]), t, t).map(lambda x: Fn(x[0], (x[1], x[2]))),
        ),
        max_leaves=4,
    )


def arith_formulas(names=VARS):
    terms = arith_terms(names)
    atoms = st.one_of(
        st.tuples(terms, terms).map(lambda x: Eq(*x)),
        st.tuples(terms, terms).map(lambda x: Rel("<", x)),
    )

    def grow(f):
        return st.one_of(
            f.map(Not),
            st.tuples(st.sampled_from([And, Or, Imp]), f, f).map(lambda x: x[0](x[1], x[2])),
            st.tuples(st.sampled_from([Forall, Exists]), st.sampled_from(names), f)
            .map(lambda x: x[0](x[1], x[2])),
        )

    return st.recursive(atoms, grow, max_leaves=5)


def close(f):
    from turingcat.fol.syntax import free_vars

    for v in sorted(free_vars(f)):
        f = Forall(v, f)
    return f


# --- acceptance reporting: one line per criterion at the end of the run ---

import pytest  # noqa: E402

_CRITERIA: dict[int, tuple[str, str, float, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    n, title, limit = mark.args
    _CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL", rep.duration, limit)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, verdict, secs, limit = _CRITERIA[n]
        budget = f"limit {limit:g}s" if limit else "no time limit"
        terminalreporter.write_line(f"[{verdict}] {n}. {title} ({secs:.1f}s, {budget})")
