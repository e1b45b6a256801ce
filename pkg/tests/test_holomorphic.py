import cmath
import math

import pytest
from hypothesis import given, strategies as st

from neutral_modes.domain import DomainSpec, polar_path, staircase
from neutral_modes.errors import ConfigError, DegenerateMoebius, SingularPoint, ZeroCrossing
from neutral_modes.holomorphic import (Moebius, cauchy_riemann_residual, const, continue_arg, eval_fn,
                                       fd_derivative, identity, log_decompose, moebius, parse,
                                       parse_number, special_moebius)

from strategies import complex_in_box, moebius_coeffs, unit_complex

EXPRESSIONS = [
    "id", "const(2-1i)", "pow(3,id)", "pow(-2,id)", "recip(add(id,const(3)))", "exp(scale(0.5,id))",
    "log(add(id,const(4)))", "mul(id,exp(id))", "div(id,add(pow(2,id),const(5)))",
    "comp(exp(id),mobius(1,2,0.5,3))", "mobius(1i,1,-1,-1i)",
]

# leaves and combinators for random expression trees
leaves = st.sampled_from(["id", "const(1.5)", "const(-0.5+2i)"])


def _tree(children):
    return st.one_of(
        st.builds(lambda e: f"exp(scale(0.3,{e}))", children),
        st.builds(lambda a, b: f"add({a},{b})", children, children),
        st.builds(lambda a, b: f"mul({a},{b})", children, children),
        st.builds(lambda n, e: f"pow({n},{e})", st.integers(1, 3), children),
    )


expressions = st.recursive(leaves, _tree, max_leaves=5)


@pytest.mark.parametrize("text", EXPRESSIONS)
def test_str_round_trip(text):
    f = parse(text)
    g = parse(str(f))
    for w in (0.3 + 0.2j, -0.7 + 1.1j):
        assert abs(f(w) - g(w)) <= 1e-14 * max(1, abs(f(w)))


@pytest.mark.parametrize("text", EXPRESSIONS)
def test_derivative_matches_complex_step(text):
    f = parse(text)
    df = f.derivative()
    for w in (0.3 + 0.2j, -0.7 + 1.1j, 1.2 - 0.4j):
        h = 1e-6
        fd = (f(w + h) - f(w - h) - 1j * (f(w + 1j * h) - f(w - 1j * h))) / (4 * h)
        assert abs(df(w) - fd) <= 1e-6 * max(1, abs(df(w)))


@given(expressions, complex_in_box(-1, 1))
def test_random_trees_are_holomorphic(text, w):
    f = parse(text)
    assert cauchy_riemann_residual(f, w) <= 1e-6 * max(1.0, abs(f(w)), abs(f.derivative()(w)))
    assert abs(f.derivative()(w) - fd_derivative(f, w)) <= 1e-5 * max(1.0, abs(f.derivative()(w)))


@given(expressions)
def test_random_trees_round_trip(text):
    f = parse(text)
    assert abs(parse(str(f))(0.4 - 0.3j) - f(0.4 - 0.3j)) <= 1e-12 * max(1.0, abs(f(0.4 - 0.3j)))


def test_parse_numbers():
    assert parse_number("1+2i") == 1 + 2j
    assert parse_number("-i") == -1j
    assert parse_number("2.5e-3") == 0.0025
    assert parse_number("3j") == 3j
    with pytest.raises(ConfigError):
        parse_number("abc")


@pytest.mark.parametrize("bad", ["", "foo(id)", "add(id)", "pow(1.5,id)", "id)", "const()"])
def test_parse_errors(bad):
    with pytest.raises(ConfigError):
        parse(bad)


def test_singular_evaluation_raises():
    with pytest.raises(SingularPoint):
        parse("recip(id)")(0)
    with pytest.raises(SingularPoint):
        parse("log(id)")(0)
    with pytest.raises(SingularPoint):
        eval_fn(parse("recip(id)"), 1e-10)


def test_eval_fn_checks_domain():
    from neutral_modes.errors import DomainViolation
    with pytest.raises(DomainViolation):
        eval_fn(identity(), 5, DomainSpec.disk(1))


def test_moebius_canonical_form():
    m = moebius(2, 0, 0, 4)
    a, b, c, d = m.coefficients
    assert abs(abs(a) ** 2 + abs(d) ** 2 - 1) < 1e-15
    assert a.real > 0 and a.imag == 0
    assert m == moebius(1, 0, 0, 2)
    assert m(1.0) == pytest.approx(0.5)


def test_moebius_degenerate():
    with pytest.raises(DegenerateMoebius):
        moebius(1, 2, 2, 4)


@given(moebius_coeffs(), moebius_coeffs(), complex_in_box(-1, 1))
def test_moebius_group_laws(p, q, w):
    m1, m2 = Moebius(*p), Moebius(*q)
    try:
        direct = m2(m1(w))
        inv = m1.inverse()(m1(w))
    except SingularPoint:
        return
    comp = m1.then(m2)
    assert abs(comp(w) - direct) <= 1e-8 * max(1, abs(direct))
    assert abs(inv - w) <= 1e-8 * max(1, abs(w))


def test_moebius_poles_and_zeros():
    m = moebius(1, -2, 1, 3)
    assert m.poles() == pytest.approx((-3,))
    assert m.zeros() == pytest.approx((2,))


@given(unit_complex(), unit_complex(), st.floats(0.1, 3))
def test_special_moebius_is_unitary_after_det_scaling(a, c, s):
    from neutral_modes.neutrality import area_preserving_moebius_check
    m = special_moebius(s * a, c)
    a_, b_, c_, d_ = area_preserving_moebius_check(*m.coefficients).coefficients
    assert abs(d_ - a_.conjugate()) < 1e-12
    assert abs(b_ + c_.conjugate()) < 1e-12


def test_continue_arg_around_origin():
    path = polar_path(1, 1, 2 * math.pi)
    assert continue_arg(identity(), path) == pytest.approx(2 * math.pi, abs=1e-12)
    assert continue_arg(parse("pow(3,id)"), path) == pytest.approx(6 * math.pi, abs=1e-12)
    assert continue_arg(parse("recip(id)"), path, start_arg=1.0) == pytest.approx(1 - 2 * math.pi, abs=1e-12)


def test_continue_arg_zero_crossing():
    with pytest.raises(ZeroCrossing):
        continue_arg(identity(), staircase(-1, 1))


@given(complex_in_box(-2, 2).filter(lambda w: abs(w) > 0.1))
def test_log_decompose_reconstructs_value(w):
    f = parse("mul(id,exp(id))")
    ld = log_decompose(f, w, 1.0)
    assert abs(ld.value() - f(w)) <= 1e-12 * max(1, abs(f(w)))
    assert ld.phi == pytest.approx(math.log(abs(f(w))))
    assert cmath.exp(1j * (ld.chi - cmath.phase(f(w)))).real == pytest.approx(1.0)


def test_constant_folding_keeps_trees_small():
    f = parse("mul(const(2),const(3))")
    assert f(0.1) == 6
    assert str(const(0).derivative()) == "const(0.0)"
