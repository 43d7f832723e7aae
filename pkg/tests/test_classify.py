import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from pfoliation import (DifferentialForm, FieldSpec, LogPresentation, Polynomial, PreconditionError,
                        centralizer_dim, classify, classify_degree0, classify_degree1, construct_closed,
                        construct_exceptional, construct_linear_pullback, construct_log,
                        exterior_derivative as d, kupka_codim, linear_pullback_test, medeiros_case,
                        nc2_test, wedge)
from pfoliation.census import random_invertible, random_linear_pullback, random_log12, random_plane_form
from pfoliation.classify import nc2_ideal
from pfoliation.extalg import VectorField, contract
from pfoliation.foliation import exceptional_fields, chain_polynomial, pencil_form

from golden import AFFINE_DOMEGA, form_from_table
from helpers import poly, rand_poly, seeds

F2, F3, F5, F7 = (FieldSpec.get(p) for p in (2, 3, 5, 7))


def dx(spec, nvars, *idx):
    return DifferentialForm.basis(spec, nvars, idx)


def pencil(spec, nvars=4):
    return pencil_form(spec, nvars, (0, 1))


# -- normal forms ------------------------------------------------------------------

def test_normal_form_first_shape_has_covector_witness():
    theta = wedge(DifferentialForm.one_form([Polynomial.zero(F5, 4), poly(F5, 4, "x2"), poly(F5, 4, "x1"),
                                             Polynomial.zero(F5, 4)]), dx(F5, 4, 0))
    case = medeiros_case(theta)
    assert case.is_case_a
    assert case.covectors == [[1, 0, 0, 0]]
    for cov in case.covectors:
        xi = DifferentialForm.one_form([Polynomial.constant(F5, 4, c) for c in cov])
        assert wedge(theta, xi).is_zero()


def test_normal_form_second_shape_has_annihilator_witness():
    theta = pencil_form(F5, 4, (0, 1, 2))
    case = medeiros_case(theta)
    assert case.tag == "CaseB"
    assert case.annihilator == [[0, 0, 0, 1]]
    for v in case.annihilator:
        field = VectorField([Polynomial.constant(F5, 4, c) for c in v])
        assert contract(theta, field).is_zero()


def test_normal_form_not_decomposable():
    theta = (dx(F5, 6, 0, 1) + dx(F5, 6, 2, 3)) * poly(F5, 6, "x4")
    assert medeiros_case(theta).tag == "NotLinearLD"
    with pytest.raises(PreconditionError):
        medeiros_case(dx(F5, 4, 0, 1) * poly(F5, 4, "x0^2"))


# -- degree 0 ------------------------------------------------------------------------

def test_classify_degree0_examples():
    assert classify_degree0(pencil(F5)).name == "Lin"
    assert classify_degree0(construct_closed(poly(F2, 4, "x0*x1 + x2*x3"))).name == "Closed"
    assert classify_degree0(pencil_form(F2, 4, (0, 1, 2)), q=2).name == "Lin"


@settings(deadline=None, max_examples=30)
@given(st.sampled_from([2, 3, 5]), seeds(), st.integers(1, 2))
def test_degree0_linear_projections_are_lin_after_coordinate_change(p, seed, q):
    spec = FieldSpec.get(p)
    rng = random.Random(seed)
    w = pencil_form(spec, 4, tuple(range(q + 1))).linear_pullback(random_invertible(spec, 4, rng))
    if p == 2 and q == 1:
        assert classify_degree0(w).name == "Closed"
    else:
        assert classify_degree0(w).name == "Lin"


# -- degree 1 ------------------------------------------------------------------------

def test_classify_degree1_examples():
    L = LogPresentation([2, -1], [poly(F5, 4, "x0"), poly(F5, 4, "x1^2 + x0*x2")])
    label = classify_degree1(construct_log(L))
    assert label.name == "Log(1,2)"
    beta = random_plane_form(F2, 1, random.Random(1))
    assert classify_degree1(construct_linear_pullback(beta, 3)).name == "Lin"
    assert classify_degree1(construct_closed(chain_polynomial(F3, 3, 1))).name == "Closed"


@settings(deadline=None, max_examples=20)
@given(st.sampled_from([2, 3, 5, 7]), seeds())
def test_pullback_round_trip(p, seed):
    spec = FieldSpec.get(p)
    rng = random.Random(seed)
    beta = random_plane_form(spec, rng.randrange(0, 3), rng)
    assert linear_pullback_test(construct_linear_pullback(beta, 3)).verdict == "Lin"
    mixed = random_linear_pullback(spec, 3, 1, rng)
    res = linear_pullback_test(mixed)
    assert res.verdict == "Lin"
    assert mixed.linear_pullback(res.matrix).variables() <= set(range(4 - res.annihilator_dim))


@settings(deadline=None, max_examples=10)
@given(seeds())
def test_random_log12_classified(seed):
    w = random_log12(F5, 3, random.Random(seed))
    assert classify_degree1(w).name == "Log(1,2)"


def test_linear_pullback_test_examples():
    res = linear_pullback_test(pencil(F5))
    assert res.verdict == "Lin" and res.annihilator_dim >= 1
    # beta_0 + x3^2 beta_1 with beta_1 of degree 2 and beta_0 of degree 4 in x0, x1, x2 (p = 2, d = 2)
    rng = random.Random(4)
    beta1 = pencil_form(F2, 4, (0, 1))
    from pfoliation.foliation import projective_form_basis
    from pfoliation.extalg import combine
    basis = [b for b in projective_form_basis(F2, 3, 4)]
    beta0 = combine(basis, [rng.randrange(2) for _ in basis]).embed(4)
    w = beta0 + beta1 * poly(F2, 4, "x3^2")
    assert wedge(w, d(w)).is_zero()
    assert linear_pullback_test(w).verdict == "QLin"
    res = linear_pullback_test(construct_exceptional(7))
    assert res.verdict == "fail" and res.annihilator_dim == 0


# -- degree 2, Kupka set, centralizer -----------------------------------------------------

def test_classify_exceptional():
    label = classify(construct_exceptional(7))
    assert label.name == "Exceptional"
    assert len(label.witness["generating_fields"]) == 2


@pytest.mark.parametrize("p,expected", [(3, 2), (7, 3), (11, 3)])
def test_kupka_codim_table(p, expected):
    assert kupka_codim(construct_exceptional(p)) == expected


def test_kupka_closed_form_sentinel():
    assert kupka_codim(construct_closed(poly(F2, 4, "x0*x1"))) is None


def _projective_zeros(forms, p):
    pts = []
    for pt in product(range(p), repeat=4):
        if not any(pt) or next(c for c in pt if c) != 1:
            continue
        if all(not c.evaluate(pt) for c in forms):
            pts.append(pt)
    return pts


@pytest.mark.parametrize("p", [5, 7])
def test_affine_dw_zero_set_brute_force(p):
    spec = FieldSpec.get(p)
    dw = d(construct_exceptional(p).form)
    ref = form_from_table(spec, 4, AFFINE_DOMEGA)
    assert dw.proportional_to(ref) is not None
    pts = _projective_zeros(dw.coefficients(), p)
    if p == 7:
        assert pts == [(0, 0, 0, 1)]
    else:
        # the twisted cubic (1 : s : 3 s^2 : s^3), which passes through (1:0:0:0) at s = 0
        # and through (0:0:0:1) at s = infinity
        cubic = [(1, s, 3 * s * s % p, s ** 3 % p) for s in range(p)] + [(0, 0, 0, 1)]
        assert sorted(pts) == sorted(cubic)


def test_lie_bracket_and_centralizer():
    vs, vn = exceptional_fields(F7)
    M = vn.linear_matrix()
    assert centralizer_dim(M, F7) == 4
    assert centralizer_dim([[int(i == j) for j in range(4)] for i in range(4)], F7) == 16
    assert centralizer_dim([[i * int(i == j) for j in range(4)] for i in range(4)], F7) == 4


# -- normal crossings in codimension two ----------------------------------------------

NC2_CASES = [("x0*x1*x2", True), ("x0*x1*x0 + x0*x1*x1", False), ("x0^2", False)]


@pytest.mark.parametrize("text,expected", NC2_CASES)
@pytest.mark.parametrize("p", [2, 5])
def test_nc2_examples(text, expected, p):
    assert nc2_test(poly(FieldSpec.get(p), 3, text)) is expected


@pytest.mark.parametrize("text,expected", NC2_CASES)
def test_nc2_gl_invariance(text, expected):
    spec = F5
    h = poly(spec, 3, text)
    rng = random.Random(hash(text) % 1000)
    for _ in range(20):
        M = random_invertible(spec, 3, rng)
        images = [Polynomial(spec, 3, {tuple(int(i == j) for i in range(3)): M[r][j] for j in range(3)})
                  for r in range(3)]
        assert nc2_test(h.substitute(images)) is expected


def test_nc2_rejects_zero():
    with pytest.raises(PreconditionError):
        nc2_test(Polynomial.zero(F5, 3))


def test_nc2_ideal_contains_h_and_partials():
    h = poly(F5, 3, "x0*x1*x2")
    gens = nc2_ideal(h)
    assert h in gens and all(h.derivative(i) in gens for i in range(3))
