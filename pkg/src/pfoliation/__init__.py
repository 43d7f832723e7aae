"""Exact computations with foliations on projective space in positive characteristic."""

__version__ = "0.1.0"

from .errors import FoliationError, InvariantError, ParseError, PreconditionError  # noqa: E402
from .field import FieldElement, FieldSpec, ff_arith  # noqa: E402
from .poly import Monomial, Polynomial, multivar_gcd, parse_polynomial  # noqa: E402
from .extalg import (DifferentialForm, Multivector, VectorField, contract,  # noqa: E402
                     euler_check, exterior_derivative, jouanolou_correspondence, lie_bracket,
                     top_contraction, vf_pth_power, wedge)
from .ideals import GroebnerBasis, groebner, ideal_dimension, normal_form, zero_locus_codim  # noqa: E402
from .foliation import (FoliationReport, LogPresentation, ProjectiveQForm, construct_closed,  # noqa: E402
                        construct_exceptional, construct_linear_pullback, construct_log,
                        deformation_tangent_space, tangent_fields, validate)
from .frobenius import (PCurvatureReport, cartier_log, cartier_polynomial,  # noqa: E402
                        cartier_transform_form, p_curvature)
from .classify import (ComponentLabel, NormalFormCase, centralizer_dim, classify,  # noqa: E402
                       classify_degree0, classify_degree1, kupka_codim, linear_pullback_test,
                       medeiros_case, nc2_test)
from .census import CensusReport, census  # noqa: E402
