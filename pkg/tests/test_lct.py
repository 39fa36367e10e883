import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum.lct import (
    Interval,
    LctEstimate,
    NewtonPolyhedron,
    check_c0k,
    check_geomc,
    check_geomcfe,
    check_geomcfr,
    check_trivial_bounds,
    compact_faces,
    compare,
    compute_a,
    compute_a_y_p,
    compute_r,
    compute_r_y_p,
    d_e,
    find_critical_points,
    ideal_I_e,
    ideal_J_k,
    ideal_lct,
    lct_at_origin,
    lct_min,
    lct_monomial_ideal,
    lct_nondegenerate,
    newton_diagonal_t0,
    nondegeneracy_check,
    stratify_critical_points,
)
from expsum.poly import Polynomial, parse_polynomial
from oracles import newton_lct_2d


def P(text, n=2):
    return parse_polynomial(text, n)


class TestNewton:
    @pytest.mark.parametrize("support,t0", [(((2, 0), (0, 3)), Fr(6, 5)), (((2,),), Fr(2)), (((1, 1),), Fr(1)),
                                           (((3, 0), (0, 3)), Fr(3, 2)), (((2, 0), (1, 1), (0, 4)), Fr(1))])
    def test_t0(self, support, t0):
        assert newton_diagonal_t0(NewtonPolyhedron(support)) == t0

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            newton_diagonal_t0(NewtonPolyhedron(((0, 0), (1, 0))))

    def test_compact_faces_of_cusp(self):
        faces = {tuple(sorted(f)) for f in compact_faces(NewtonPolyhedron.of(P("x^2 + y^3")))}
        assert faces == {((0, 3),), ((2, 0),), ((0, 3), (2, 0))}

    @pytest.mark.parametrize("expr,value", [("x^2 + y^3", Fr(5, 6)), ("x^2 + y^2", Fr(1)), ("x^2 + y^4", Fr(3, 4)),
                                            ("x^3 + y^3", Fr(2, 3)), ("x*y", Fr(1)), ("x^2*y + y^4", Fr(5, 8))])
    def test_lct_nondegenerate(self, expr, value):
        est = lct_nondegenerate(P(expr))
        assert est.is_exact and est.value == value

    def test_one_variable(self):
        assert lct_nondegenerate(P("x^2", 1)).value == Fr(1, 2)

    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=4)
           .filter(lambda s: (0, 0) not in s))
    def test_diagonal_matches_oracle(self, support):
        f = Polynomial.from_dict(2, {e: 1 for e in support})
        est = lct_nondegenerate(f)
        assert est.upper_value() == newton_lct_2d(support)


class TestNondegeneracy:
    def test_verdicts(self):
        assert nondegeneracy_check(P("x^2 + y^3")).verdict == "pass"
        assert nondegeneracy_check(P("x*y")).verdict == "pass"
        # the face x^2 y^2 has no torus critical point, nor do the edges
        assert nondegeneracy_check(P("x^2*y^2 + x^5 + y^5")).verdict == "pass"

    def test_degenerate_face(self):
        # (x + y)^2 on the compact edge has critical points x = -y on the torus
        res = nondegeneracy_check(P("(x + y)^2 + x^5"))
        assert res.verdict == "fail" and res.witness is not None

    def test_bracket_when_degenerate(self):
        est = lct_nondegenerate(P("(x^2 + y^2)^2 + x^7"))
        assert not est.is_exact
        assert est.lower == Fr(1, 4) and est.upper == Fr(1, 2)


class TestMonomialIdeals:
    @pytest.mark.parametrize("gens,value", [([(2,)], Fr(1, 2)), ([(2, 0), (0, 2)], Fr(1)),
                                            ([(2, 0), (0, 3)], Fr(5, 6)), ([(2, 0), (0, 6)], Fr(2, 3)),
                                            ([(1, 0), (0, 1)], Fr(2))])
    def test_howald(self, gens, value):
        assert lct_monomial_ideal(gens) == value

    def test_unit_ideal(self):
        assert lct_monomial_ideal([(0, 0), (1, 0)]) == math.inf

    def test_ideal_lct(self):
        assert ideal_lct([(P("x^2"), 1), (P("y^3"), 2)]).value == Fr(2, 3)
        assert ideal_lct([]).value == 0
        est = ideal_lct([(P("x^2 + y^2"), 2), (P("x^3"), 1)])
        assert est.lower_value() <= est.upper_value()


class TestLctAtOrigin:
    @pytest.mark.parametrize("expr,n,value", [("x^2", 1, Fr(1, 2)), ("x*y", 2, Fr(1)), ("x^2 + y^2", 2, Fr(1)),
                                              ("x^2 + y^3", 2, Fr(5, 6)), ("x^2 + y^4", 2, Fr(3, 4)),
                                              ("x^2*y", 2, Fr(1, 2)), ("x + y^2", 2, Fr(1)),
                                              ("(x^2 + y^2)^2", 2, Fr(1, 2)), ("(x^2 + y^3)^2", 2, Fr(5, 12)),
                                              ("x^2 + y^2 + z^2", 3, Fr(1)), ("x^3 + y^3 + z^3", 3, Fr(1))])
    def test_values(self, expr, n, value):
        est = lct_at_origin(P(expr, n))
        assert est.is_exact and est.value == value

    def test_declared_inside_bracket(self):
        f = P("(x^2 + y^2)^2 + x^7")
        assert lct_at_origin(f, Fr(1, 2)).value == Fr(1, 2)
        # a declared value outside the computed bracket is an input error
        with pytest.raises(ValueError, match="outside"):
            lct_at_origin(f, Fr(9, 10))

    @given(st.integers(1, 6), st.integers(1, 6))
    def test_monomial_closed_form(self, a, b):
        f = Polynomial.from_dict(2, {(a, b): 1})
        assert lct_at_origin(f).value == Fr(1, max(a, b))

    @given(st.integers(2, 6), st.integers(2, 6))
    def test_brieskorn_closed_form(self, a, b):
        f = Polynomial.from_dict(2, {(a, 0): 1, (0, b): 1})
        assert lct_at_origin(f).value == min(Fr(1), Fr(1, a) + Fr(1, b))


class TestInvariants:
    def test_r_values(self):
        assert compute_r(P("x^2", 1), find_critical_points(P("x^2", 1))) == 2
        assert compute_r(P("x^3 + y^3"), find_critical_points(P("x^3 + y^3"))) == 3
        assert compute_r(P("x", 1), find_critical_points(P("x", 1))) == math.inf

    @pytest.mark.parametrize("expr,n,value", [("x^2", 1, Fr(1, 2)), ("x^2 + y^2", 2, Fr(1)), ("x^2 + y^3", 2, Fr(5, 6)),
                                              ("x", 1, Fr(1))])
    def test_a_values(self, expr, n, value):
        f = P(expr, n)
        assert compute_a(f, find_critical_points(f)).value == value

    def test_a_uses_every_critical_point(self):
        # x^3 - 3x has two nondegenerate critical points; the global a is 1/2
        f = P("x^3 - 3*x", 1)
        search = find_critical_points(f)
        assert set(search.points) == {(1,), (-1,)}
        assert compute_a(f, search).value == Fr(1, 2)

    def test_declared_points(self):
        f = P("x^2 + 2*x", 1)
        with pytest.raises(ValueError):
            find_critical_points(f, declared=[(Fr(1, 2),)])
        g = P("5*x^2 + 2*x", 1)
        assert (Fr(-1, 5),) in find_critical_points(g, declared=[("-1/5",)]).points

    def test_local(self):
        f = P("x^2", 1)
        pts = find_critical_points(f)
        assert compute_a_y_p(f, (0,), 5, pts).value == Fr(1, 2)
        assert compute_r_y_p(f, (0,), 5, pts) == 2
        est = compute_a_y_p(f, (1,), 5, pts)
        assert est.value == 1 and "no singular point found; bound trivial" in est.notes
        g = P("x^2 + y^3")
        assert compute_a_y_p(g, (0, 0), 3, find_critical_points(g)).value == Fr(5, 6)
        assert compute_r_y_p(g, (0, 0), 3, find_critical_points(g)) == 2

    def test_search_tag(self):
        f = P("x^2", 1)
        assert "search-limited" in compute_a(f, find_critical_points(f)).notes
        assert "declared-complete" in compute_a(f, find_critical_points(f, declared_complete=True)).notes

    def test_strata(self):
        rec, = stratify_critical_points(P("x^2", 1), [(0,)])
        assert rec.stratum == Fr(1, 2) and rec.order == 2
        rec, = stratify_critical_points(P("x^2 + y^2"), [(0, 0)], p=5)
        assert rec.stratum == 1 and rec.reduced_mod_p is True
        rec, = stratify_critical_points(P("(x^2 + y^2)^2 + x^7"), [(0, 0)])
        assert rec.order == 4 and rec.stratum == Fr(1, 2)

    def test_stratum_zero(self):
        # order 2 at 0 and order 3 at 1: the higher-order point sits in V_0
        f = P("x^2*(x - 1)^3", 1)
        recs = {r.point: r for r in stratify_critical_points(f, [(0,), (1,)])}
        assert recs[(0,)].order == 2 and recs[(0,)].stratum == Fr(1, 2)
        assert recs[(1,)].order == 3 and recs[(1,)].stratum == 0


class TestIntervals:
    def test_compare(self):
        assert compare(Interval.point(1), Interval.point(1)) == "pass"
        assert compare(Interval(Fr(1), Fr(2)), Interval.point(Fr(3, 2))) == "inconclusive"
        assert compare(Interval.point(2), Interval.point(1)) == "fail"

    def test_lct_min(self):
        a = LctEstimate.exact(Fr(1, 2), "x")
        b = LctEstimate.bracket(Fr(1, 3), Fr(2, 3), "y")
        m = lct_min([a, b])
        assert m.lower_value() == Fr(1, 3) and m.upper_value() == Fr(1, 2)

    def test_bracket_collapses(self):
        assert LctEstimate.bracket(Fr(1, 2), Fr(1, 2), "z").is_exact

    def test_bad_bracket(self):
        with pytest.raises(ValueError):
            LctEstimate.bracket(1, Fr(1, 2), "z")


class TestInequalities:
    def test_trivial(self):
        assert check_trivial_bounds(P("x^2 + y^3")).verdict == "pass"
        rep = check_trivial_bounds(P("x^2*y^2"))
        assert rep.verdict == "pass"
        assert rep.checks[0].name == "trivial0" and rep.checks[0].equality
        assert check_trivial_bounds(P("x^2", 1)).verdict == "pass"

    @pytest.mark.parametrize("expr,n,lhs", [("x^2 + y^3", 2, Fr(5, 2)), ("x^2 + y^2", 2, Fr(3)), ("x^3", 1, Fr(4, 3))])
    def test_geomcfr_equality(self, expr, n, lhs):
        chk, = check_geomcfr(P(expr, n)).checks
        assert chk.verdict == "pass" and chk.equality and chk.lhs.lower == lhs

    def test_geomc(self):
        rep = check_geomc(P("x^2*y^2 + x^5"))
        c1 = rep.checks[0]
        assert c1.name == "c_0-1" and c1.verdict == "pass" and c1.lhs.lower == Fr(5, 2)
        rep = check_geomc(P("x^2*y^2 + x^3*y^3"))
        assert rep.checks[1].applicable and rep.checks[1].verdict == "pass"
        rep = check_geomc(P("x^2 + y^3"))
        assert rep.checks[0].equality and not rep.checks[1].applicable

    def test_d_e(self):
        assert [d_e(1), d_e(3), d_e(6)] == [1, 6, 60]

    def test_ideals(self):
        f = P("x^2 + y^3 + x^4")
        assert ideal_J_k(f, 2) == [P("x^2"), P("y^6")]
        assert ideal_J_k(f, 3) == [P("x^4"), P("y^9"), P("x^24")]
        assert ideal_I_e(P("x + x^2"), 2) == [P("x"), P("x^4")]
        assert ideal_I_e(P("x^2 + y^3"), 2) == [P("x^4")]
        assert ideal_J_k(P("x^2 + y^3"), 1) == [P("x^2")]

    def test_c0k_equality(self):
        rep = check_c0k(P("x^2 + y^3"), 2)
        assert rep.extra["c_J"]["value"] == "2/3"
        chk, = rep.checks
        assert chk.equality and chk.lhs.lower == Fr(10, 3)

    def test_c0k_reduces_to_geomcfr(self):
        f = P("x^2", 1)
        assert check_c0k(f, 1).checks[0].lhs == check_geomcfr(f).checks[0].lhs

    @pytest.mark.parametrize("expr", ["x^3 + x*y^2", "x^2*y + y^4", "x^2 + y^3 + x*y^2", "x^4 + y^5 + x^2*y^2"])
    def test_never_fail(self, expr):
        f = P(expr)
        reps = [check_trivial_bounds(f), check_geomcfr(f), check_geomc(f)]
        reps += [check_geomcfe(f, e) for e in (1, 2, 3)] + [check_c0k(f, k) for k in (1, 2, 3)]
        assert all(r.verdict in ("pass", "inconclusive", "not-applicable") for r in reps)
