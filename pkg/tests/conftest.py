from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pietsch.seqcore import DyadicSequence, Tail
from pietsch.stepfn import from_pieces

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=16)
nonneg = st.fractions(min_value=0, max_value=8, max_denominator=16)

LEFT = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
RIGHT = [Fraction(1, 2), Fraction(1)]


def tails(ratios, values=rationals):
    return st.one_of(st.just(Tail()), st.builds(Tail, values, st.sampled_from(ratios)))


sequences = st.builds(
    DyadicSequence,
    st.integers(-6, 6),
    st.lists(rationals, min_size=1, max_size=12).map(tuple),
    tails(LEFT),
    tails(RIGHT),
)

finite_sequences = st.builds(
    DyadicSequence,
    st.integers(-6, 6),
    st.lists(rationals, min_size=1, max_size=10).map(tuple),
)


@st.composite
def tail_free_functions(draw, max_pieces=8):
    cuts = draw(st.lists(st.integers(1, 64), min_size=1, max_size=max_pieces, unique=True))
    bps = [Fraction(0)] + sorted(Fraction(c, 8) for c in cuts)
    vals = draw(st.lists(rationals, min_size=len(bps) - 1, max_size=len(bps) - 1))
    return from_pieces(bps, vals)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: (int(k.rstrip("abt")), k)):
        terminalreporter.write_line(mod.RESULTS[key])
