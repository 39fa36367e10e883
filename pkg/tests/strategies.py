"""Hypothesis strategies for small integer polynomials."""

from hypothesis import strategies as st

from expsum.poly import Polynomial


def polynomials(nvars=st.integers(1, 3), max_terms=4, max_exp=3, coeff=st.integers(-5, 5), nonzero=True):
    @st.composite
    def build(draw):
        n = draw(nvars)
        k = draw(st.integers(1 if nonzero else 0, max_terms))
        terms = {}
        for _ in range(k):
            e = tuple(draw(st.integers(0, max_exp)) for _ in range(n))
            terms[e] = draw(coeff)
        f = Polynomial.from_dict(n, terms)
        if nonzero and f.is_zero():
            f = Polynomial.variable(n, 0)
        return f

    return build()


def points(n, lo=-4, hi=4):
    return st.tuples(*[st.integers(lo, hi)] * n)
