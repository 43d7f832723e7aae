import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from pfoliation import (DifferentialForm, FieldSpec, Multivector, Polynomial, PreconditionError,
                        VectorField, contract, euler_check, exterior_derivative as d,
                        jouanolou_correspondence, lie_bracket, top_contraction, vf_pth_power, wedge)
from pfoliation.foliation import exceptional_fields, chain_polynomial

from golden import AFFINE_DOMEGA, AFFINE_OMEGA, form_from_table
from helpers import field_specs, poly, rand_form, rand_poly, seeds

F2, F3, F5, F7 = (FieldSpec.get(p) for p in (2, 3, 5, 7))


def dx(spec, nvars, *idx):
    return DifferentialForm.basis(spec, nvars, idx)


def one(spec, nvars):
    return Polynomial.constant(spec, nvars, 1)


def test_wedge_examples():
    assert wedge(dx(F5, 4, 0), dx(F5, 4, 1)).terms == {(0, 1): one(F5, 4)}
    assert wedge(dx(F5, 4, 1), dx(F5, 4, 0)) == -dx(F5, 4, 0, 1)
    for spec, expected in [(F2, None), (F5, 2)]:
        s = dx(spec, 4, 0, 1) + dx(spec, 4, 2, 3)
        sq = wedge(s, s)
        if expected is None:
            assert sq.is_zero()
        else:
            assert sq == DifferentialForm.volume(spec, 4) * expected


def test_derivative_examples():
    assert d(DifferentialForm.basis(F5, 3, (1,), poly(F5, 3, "x0"))) == dx(F5, 3, 0, 1)
    f = DifferentialForm.from_function(poly(F3, 3, "x0*x1*x2"))
    assert d(d(f)).is_zero()


def test_affine_example_matches_reference():
    vs, vn = exceptional_fields(F7)
    omega = top_contraction([vs, vn], True)
    ref = form_from_table(F7, 4, AFFINE_OMEGA)
    assert omega.proportional_to(ref) == F7(1)
    ref_d = form_from_table(F7, 4, AFFINE_DOMEGA)
    assert d(omega).proportional_to(ref_d) == F7(-1)


def test_contraction_examples():
    R = VectorField.radial(F5, 2)
    assert contract(dx(F5, 2, 0, 1), R) == DifferentialForm.one_form([poly(F5, 2, "-x1"), poly(F5, 2, "x0")])
    assert contract(dx(F5, 4, 0, 1), VectorField.coordinate(F5, 4, 2)).is_zero()
    F = chain_polynomial(F2, 3, 1)
    dF = d(DifferentialForm.from_function(F))
    assert contract(dF, VectorField.radial(F2, 4)).is_zero()


def test_multivector_contraction_order():
    # highest index acts first: i_{d0 d1}(dx0^dx1) = i_{d0}(i_{d1} dx0^dx1) = i_{d0}(-dx0) = -1
    res = contract(dx(F5, 3, 0, 1), Multivector.basis(F5, 3, (0, 1)))
    assert res == DifferentialForm.from_function(Polynomial.constant(F5, 3, -1))
    assert contract(dx(F5, 3, 0), Multivector(F5, 3, 0, {(): 3})) == dx(F5, 3, 0) * 3
    with pytest.raises(PreconditionError):
        contract(dx(F5, 3, 0), Multivector.basis(F5, 3, (0, 1)))


def test_lie_bracket_examples():
    vs, vn = exceptional_fields(F5)
    assert lie_bracket(vs, vn) == vn
    R = VectorField.radial(F5, 3)
    v = VectorField.coordinate(F5, 3, 1, poly(F5, 3, "x0"))
    assert lie_bracket(R, v).is_zero()
    assert lie_bracket(VectorField.coordinate(F5, 3, 0), VectorField.coordinate(F5, 3, 1)).is_zero()


@pytest.mark.parametrize("spec", [F2, F3, F5])
def test_pth_power_examples(spec):
    assert vf_pth_power(VectorField.coordinate(spec, 3, 0)).is_zero()
    e = VectorField.coordinate(spec, 3, 0, poly(spec, 3, "x0"))
    assert vf_pth_power(e) == e


def test_pth_power_nilpotent_char2():
    v = VectorField.coordinate(F2, 2, 0, poly(F2, 2, "x1"))
    assert vf_pth_power(v).is_zero()


def test_top_contraction_examples():
    assert top_contraction([], True, spec=F5, nvars=2) == DifferentialForm.one_form(
        [poly(F5, 2, "-x1"), poly(F5, 2, "x0")])
    R = VectorField.radial(F5, 4)
    got = top_contraction([VectorField.coordinate(F5, 4, 3)], True)
    assert got == -contract(dx(F5, 4, 0, 1, 2), R)
    with pytest.raises(PreconditionError):
        top_contraction([VectorField.coordinate(F5, 2, 0)] * 2, True)


def test_euler_examples():
    for spec in (F2, F3, F5, F7):
        assert euler_check(DifferentialForm.basis(spec, 2, (0,), poly(spec, 2, "x1")))
        assert euler_check(DifferentialForm.volume(spec, 4))
    with pytest.raises(PreconditionError):
        euler_check(DifferentialForm.one_form([poly(F5, 2, "x0"), poly(F5, 2, "x1^2")]))


def test_closed_projective_correspondence_examples():
    w = DifferentialForm.one_form([poly(F5, 2, "x1"), poly(F5, 2, "-x0")])
    beta = jouanolou_correspondence(w)
    assert beta == dx(F5, 2, 0, 1) * -2
    assert jouanolou_correspondence(beta) == w
    got = jouanolou_correspondence(dx(F3, 2, 0, 1))
    assert got == DifferentialForm.one_form([poly(F3, 2, "-x1"), poly(F3, 2, "x0")]) * 2
    with pytest.raises(PreconditionError):
        jouanolou_correspondence(DifferentialForm.one_form([poly(F3, 2, "x1^2"), poly(F3, 2, "-x0*x1")]))


# -- properties ------------------------------------------------------------------------

forms = st.tuples(field_specs(), seeds(), st.integers(0, 4), st.integers(0, 4), st.integers(1, 3))


@given(forms)
def test_wedge_graded_commutative_and_associative(args):
    spec, seed, qa, qb, e = args
    rng = random.Random(seed)
    a = rand_form(spec, 4, qa, qa + e, rng)
    b = rand_form(spec, 4, qb, qb + e, rng)
    c = rand_form(spec, 4, 1, 2, rng)
    sign = -1 if qa * qb % 2 else 1
    assert wedge(a, b) == wedge(b, a) * sign
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms)
def test_d_squared_and_leibniz(args):
    spec, seed, qa, qb, e = args
    rng = random.Random(seed)
    a = rand_form(spec, 4, qa, qa + e, rng)
    b = rand_form(spec, 4, qb, qb + e, rng)
    assert d(d(a)).is_zero()
    sign = -1 if qa % 2 else 1
    assert d(wedge(a, b)) == wedge(d(a), b) + wedge(a, d(b)) * sign


@given(forms)
def test_contraction_is_antiderivation(args):
    spec, seed, qa, qb, e = args
    if qa == 0 and qb == 0:
        return
    rng = random.Random(seed)
    a = rand_form(spec, 4, qa, qa + e, rng)
    b = rand_form(spec, 4, qb, qb + e, rng)
    v = VectorField([rand_poly(spec, 4, 1, rng) for _ in range(4)])

    def iv(x):
        return contract(x, v) if x.q else DifferentialForm.zero(spec, 4, 0)

    sign = -1 if qa % 2 else 1
    lhs = iv(wedge(a, b))
    rhs = wedge(iv(a), b) + wedge(a, iv(b)) * sign
    assert lhs == rhs


@settings(max_examples=100)
@given(field_specs([(2, 1), (3, 1), (5, 1), (2, 2)]), seeds())
def test_pth_power_is_a_derivation(spec, seed):
    rng = random.Random(seed)
    v = VectorField([rand_poly(spec, 3, rng.randrange(3), rng) for _ in range(3)])
    vp = vf_pth_power(v)
    f = rand_poly(spec, 3, 2, rng, homogeneous=False)
    g = rand_poly(spec, 3, 2, rng, homogeneous=False)
    assert vp(f * g) == f * vp(g) + g * vp(f)
    # and agrees with applying v p times to an arbitrary polynomial
    h = f
    for _ in range(spec.p):
        h = v(h)
    assert vp(f) == h


@given(field_specs(), seeds(), st.integers(1, 3), st.integers(1, 4))
def test_euler_identity_holds(spec, seed, q, extra):
    form = rand_form(spec, 4, q, q + extra, random.Random(seed))
    if form:
        assert euler_check(form)


@given(st.sampled_from([5, 7]), seeds())
def test_closed_projective_correspondence_round_trip(p, seed):
    spec = FieldSpec.get(p)
    rng = random.Random(seed)
    R = VectorField.radial(spec, 3)
    omega = contract(rand_form(spec, 3, 2, 3, rng), R)
    if not omega:
        return
    assert jouanolou_correspondence(jouanolou_correspondence(omega)) == omega
