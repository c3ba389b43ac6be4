from fractions import Fraction

from hypothesis import strategies as st

from qvirasoro.polyring import OddPolynomial

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

monomials = st.dictionaries(st.sampled_from([1, 3, 5]), st.integers(1, 3), max_size=3)


@st.composite
def polynomials(draw, max_terms=4):
    pairs = draw(st.lists(st.tuples(fractions, monomials), max_size=max_terms))
    return OddPolynomial.from_terms(pairs)


@st.composite
def homogeneous_polynomials(draw, degree):
    from qvirasoro.qcalc import Q, QExpansion
    from qvirasoro.partitions import strict_partitions_of

    basis = strict_partitions_of(degree)
    coeffs = draw(st.lists(fractions, min_size=len(basis), max_size=len(basis)))
    return QExpansion(dict(zip(basis, coeffs))).to_polynomial()
