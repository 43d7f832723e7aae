"""Shared generators for the test suite."""
from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from pfoliation.extalg import DifferentialForm
from pfoliation.field import FieldSpec
from pfoliation.poly import Polynomial, monomials_of_degree

SMALL_FIELDS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)]


def poly(spec, nvars, text):
    from pfoliation.poly import parse_polynomial
    return parse_polynomial(spec, nvars, text)


def rand_poly(spec, nvars, degree, rng, density=0.6, homogeneous=True):
    degrees = [degree] if homogeneous else range(degree + 1)
    terms = {}
    for dg in degrees:
        for m in monomials_of_degree(nvars, dg):
            if rng.random() < density:
                terms[m] = rng.randrange(spec.q)
    return Polynomial(spec, nvars, terms)


def rand_form(spec, nvars, q, e, rng, density=0.5):
    """Random homogeneous q-form of degree e (coefficient degree e - q)."""
    terms = {idx: rand_poly(spec, nvars, e - q, rng, density) for idx in combinations(range(nvars), q)}
    return DifferentialForm(spec, nvars, q, terms)


def seeds():
    return st.integers(min_value=0, max_value=2 ** 32 - 1)


@st.composite
def field_specs(draw, fields=SMALL_FIELDS):
    p, k = draw(st.sampled_from(fields))
    return FieldSpec.get(p, k)


@st.composite
def polynomials(draw, spec=None, nvars=3, max_degree=3, homogeneous=False):
    spec = spec or draw(field_specs())
    rng = random.Random(draw(seeds()))
    degree = draw(st.integers(0, max_degree))
    return rand_poly(spec, nvars, degree, rng, homogeneous=homogeneous)
