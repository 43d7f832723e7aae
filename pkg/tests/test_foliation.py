import random

import pytest
from hypothesis import given, settings, strategies as st

from pfoliation import (DifferentialForm, FieldSpec, LogPresentation, Polynomial, PreconditionError,
                        VectorField, construct_closed, construct_exceptional, construct_linear_pullback,
                        construct_log, contract, deformation_tangent_space, exterior_derivative as d,
                        tangent_fields, validate, wedge)
from pfoliation.census import random_plane_form, random_snc_pair
from pfoliation.extalg import is_projective
from pfoliation.foliation import (exact_primitive, chain_polynomial, pencil_form,
                                  projective_form_basis)
from pfoliation.linalg import rank_of_vectors
from pfoliation.poly import monomials_of_degree

from helpers import poly, rand_poly, seeds

F2, F3, F5, F7 = (FieldSpec.get(p) for p in (2, 3, 5, 7))
F4 = FieldSpec.get(2, 2)


def pencil(spec, nvars=4):
    return DifferentialForm.one_form([poly(spec, nvars, "x1"), poly(spec, nvars, "-x0")]
                                     + [Polynomial.zero(spec, nvars)] * (nvars - 2))


def test_validate_pencil():
    rep = validate(pencil(F5), q=1, n=3)
    assert rep.to_dict() == {"is_projective": True, "is_saturated": True, "is_locally_decomposable": True,
                             "is_integrable": True, "degree": 0, "sing_codim": 2}


def test_validate_non_projective_two_form():
    form = DifferentialForm.basis(F5, 4, (0, 1), poly(F5, 4, "x2"))
    assert not validate(form).is_projective


def test_validate_affine_example():
    rep = validate(construct_exceptional(7))
    assert rep.is_projective and rep.is_saturated and rep.is_integrable and rep.degree == 2


def test_validate_rejects_bad_input():
    with pytest.raises(PreconditionError):
        validate(DifferentialForm.one_form([poly(F5, 2, "x0"), poly(F5, 2, "x1^2")]))
    with pytest.raises(PreconditionError):
        validate(pencil(F5), q=2)


def test_construct_closed_examples():
    w = construct_closed(poly(F2, 4, "x0*x1"))
    assert w.form == DifferentialForm.one_form([poly(F2, 4, "x1"), poly(F2, 4, "x0"),
                                                Polynomial.zero(F2, 4), Polynomial.zero(F2, 4)])
    assert w.d == 0
    with pytest.raises(PreconditionError):
        construct_closed(poly(F2, 4, "x0^2"))
    with pytest.raises(PreconditionError):
        construct_closed(poly(F3, 4, "x0*x1"))
    rep = validate(construct_closed(chain_polynomial(F3, 3, 1)))
    assert rep.is_projective and rep.is_integrable and rep.degree == 1


def test_construct_log_examples():
    w = construct_log(LogPresentation([1, -1], [poly(F7, 4, "x0"), poly(F7, 4, "x1")]))
    assert w.form == pencil(F7)
    L = LogPresentation([2, -1], [poly(F5, 4, "x0"), poly(F5, 4, "x1^2 + x0*x2")])
    w = construct_log(L)
    expected = DifferentialForm.one_form([poly(F5, 4, "2*x1^2 + 2*x0*x2 - x0*x2"), poly(F5, 4, "-2*x0*x1"),
                                          poly(F5, 4, "-x0^2"), Polynomial.zero(F5, 4)])
    assert w.form == expected
    rep = validate(w)
    assert rep.is_integrable and rep.degree == 1
    with pytest.raises(PreconditionError):
        construct_log(LogPresentation([1, 1], [poly(F5, 4, "x0"), poly(F5, 4, "x1")]))


def test_construct_log_generic_quadrics_over_f4():
    f1, f2 = random_snc_pair(F4, 3, (2, 2), random.Random(3))
    w = construct_log(LogPresentation([F4.gen, F4.one], [f1, f2]))
    rep = validate(w)
    assert rep.is_integrable and rep.is_saturated and rep.degree == 2


def test_construct_linear_pullback_examples():
    beta = pencil(F5, 3)
    w = construct_linear_pullback(beta, 3)
    assert w.form == pencil(F5, 4)
    beta = random_plane_form(F7, 1, random.Random(0))
    rep = validate(construct_linear_pullback(beta, 3))
    assert rep.is_integrable and rep.degree == 1
    with pytest.raises(PreconditionError):
        construct_linear_pullback(pencil(F5, 4) * poly(F5, 4, "x3"), 3)


def test_exceptional_dx0_coefficient():
    w = construct_exceptional(7).form
    assert w.coefficient((0,)).monic() == poly(F7, 4, "-x0*x2*x3 + 2*x1^2*x3 - x1*x2^2").monic()
    assert validate(construct_exceptional(3)).is_integrable


def test_tangent_fields_examples():
    w = pencil(F5)
    assert len(tangent_fields(w, 1)) == 9
    assert len(tangent_fields(w, 0)) == 2
    R = VectorField.radial(F5, 4)
    assert contract(w, R).is_zero()


def test_deformation_examples():
    assert deformation_tangent_space(construct_closed(poly(F2, 4, "x0*x1"))) == 6
    closed_quadric_forms = [b for b in projective_form_basis(F2, 4, 2)]
    assert len(closed_quadric_forms) == 6


def _closed_projective_dim(spec, nvars, e):
    """Dimension of {eta projective of degree e : d eta = 0}, an independent kernel."""
    from pfoliation.linalg import kernel_of_map
    basis = projective_form_basis(spec, nvars, e)
    return len(kernel_of_map([d(b).flat() for b in basis], spec))


def test_deformation_of_closed_forms_equals_closed_forms():
    assert deformation_tangent_space(construct_closed(poly(F2, 4, "x0*x1"))) == _closed_projective_dim(F2, 4, 2)
    F = chain_polynomial(F3, 3, 1)
    assert deformation_tangent_space(construct_closed(F)) == _closed_projective_dim(F3, 4, 3)


def test_deformation_of_pencil_matches_parameter_map():
    # differential of (lam, f1, f2) -> lam (f2 df1 - f1 df2) at (1, x0, x1)
    spec, nvars = F5, 4
    x0, x1 = poly(spec, nvars, "x0"), poly(spec, nvars, "x1")

    def dfun(f):
        return d(DifferentialForm.from_function(f))

    images = [pencil(spec).flat()]
    for m in monomials_of_degree(nvars, 1):
        g = Polynomial(spec, nvars, {m: 1})
        images.append((dfun(g) * x1 - dfun(x1) * g).flat())
        images.append((dfun(x0) * g - dfun(g) * x0).flat())
    assert deformation_tangent_space(pencil(spec)) == rank_of_vectors(images, spec) == 5


def test_exact_primitive():
    F = poly(F3, 4, "x0^2*x1 + x2*x3^2")
    assert d(DifferentialForm.from_function(exact_primitive(d(DifferentialForm.from_function(F))))) == \
        d(DifferentialForm.from_function(F))
    assert exact_primitive(DifferentialForm.one_form([poly(F3, 2, "x1"), Polynomial.zero(F3, 2)])) is None


# -- properties ----------------------------------------------------------------------

@settings(deadline=None, max_examples=30)
@given(st.sampled_from([2, 3, 5]), seeds())
def test_log_forms_are_integrable_with_expected_degree(p, seed):
    spec = FieldSpec.get(p)
    rng = random.Random(seed)
    degs = [rng.randrange(1, 3) for _ in range(3)]
    factors = [rand_poly(spec, 4, dg, rng) for dg in degs]
    if any(f.is_zero() for f in factors):
        return
    lam = [rng.randrange(p) for _ in range(2)]
    # solve sum d_i lam_i = 0 for the last residue when d_3 is a unit
    if degs[2] % p == 0:
        return
    lam.append(-(degs[0] * lam[0] + degs[1] * lam[1]) * pow(degs[2], -1, p) % p)
    try:
        w = construct_log(LogPresentation(lam, factors))
    except PreconditionError:
        return
    assert w.d == sum(degs) - 2
    assert is_projective(w.form)
    assert wedge(w.form, d(w.form)).is_zero()
    assert validate(w).is_locally_decomposable


@settings(deadline=None, max_examples=30)
@given(st.sampled_from([2, 3, 5]), seeds(), st.integers(1, 2))
def test_closed_and_pullback_forms_are_integrable(p, seed, e):
    spec = FieldSpec.get(p)
    rng = random.Random(seed)
    F = rand_poly(spec, 4, p * e if p * e <= 4 else p, rng)
    try:
        w = construct_closed(F)
    except PreconditionError:
        pass
    else:
        rep = validate(w)
        assert rep.is_projective and rep.is_integrable
    beta = random_plane_form(spec, rng.randrange(0, 3), rng)
    rep = validate(construct_linear_pullback(beta, 3))
    assert rep.is_projective and rep.is_integrable


@settings(deadline=None, max_examples=25)
@given(st.sampled_from([2, 3, 5]), seeds(), st.integers(0, 2))
def test_tangent_fields_annihilate_and_flag_radial_multiples(p, seed, D):
    spec = FieldSpec.get(p)
    beta = random_plane_form(spec, 1, random.Random(seed))
    w = construct_linear_pullback(beta, 3).form
    tf = tangent_fields(w, D)
    for v in tf:
        assert contract(w, v).is_zero()
    assert sum(tf.trivial) == (len(monomials_of_degree(4, D - 1)) if D >= 1 else 0)
