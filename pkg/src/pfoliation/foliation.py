"""Projective forms, the membership conditions for foliations, and constructors
for the known component families."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantError, PreconditionError
from .extalg import (DifferentialForm, Multivector, VectorField, combine, contract, d,
                     homogeneous_form_basis, is_projective, top_contraction, wedge)
from .field import FieldElement, FieldSpec
from .ideals import zero_locus_codim
from .linalg import independent_subset, kernel_of_map, matrix_from_vectors, solve
from .poly import Polynomial, _code, monomials_of_degree, multivar_gcd, product


@dataclass(frozen=True)
class ProjectiveQForm:
    form: DifferentialForm
    n: int
    q: int
    d: int

    @classmethod
    def from_form(cls, form: DifferentialForm) -> ProjectiveQForm:
        if form.is_zero():
            raise PreconditionError("the zero form defines nothing")
        e = form.homogeneous_degree()
        if e is None:
            raise PreconditionError("form is not homogeneous")
        if not is_projective(form):
            raise PreconditionError("form is not annihilated by the radial field")
        if e - form.q - 1 < 0:
            raise PreconditionError("negative foliation degree")
        return cls(form, form.nvars - 1, form.q, e - form.q - 1)

    @property
    def spec(self) -> FieldSpec:
        return self.form.spec

    @property
    def degree(self) -> int:
        """Homogeneous degree e = d + q + 1 of the form."""
        return self.d + self.q + 1


def _as_form(omega) -> DifferentialForm:
    return omega.form if isinstance(omega, ProjectiveQForm) else omega


@dataclass(frozen=True)
class LogPresentation:
    lambdas: tuple
    factors: tuple

    def __init__(self, lambdas, factors):
        factors = tuple(factors)
        if not factors:
            raise PreconditionError("a log presentation needs at least one factor")
        spec = factors[0].spec
        lam = tuple(x if isinstance(x, FieldElement) else FieldElement(spec, _code(spec, x)) for x in lambdas)
        if len(lam) != len(factors):
            raise PreconditionError("one residue per factor")
        for f in factors:
            if f.is_zero() or f.homogeneous_degree() is None or f.homogeneous_degree() < 1:
                raise PreconditionError("factors must be homogeneous of positive degree")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "factors", factors)

    @property
    def spec(self) -> FieldSpec:
        return self.factors[0].spec

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.homogeneous_degree() for f in self.factors)

    def residue_sum(self) -> FieldElement:
        """sum d_i lambda_i, which must vanish."""
        total = FieldElement(self.spec, 0)
        for di, lam in zip(self.degrees, self.lambdas):
            total = total + lam * di
        return total


@dataclass
class FoliationReport:
    is_projective: bool
    is_saturated: bool
    is_locally_decomposable: bool
    is_integrable: bool
    degree: int
    sing_codim: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def plucker_checks(form: DifferentialForm):
    """(decomposable, integrable) via i_v w ^ w and i_v w ^ dw over basis (q-1)-vectors."""
    q, nvars = form.q, form.nvars
    dform = d(form)
    decomposable = integrable = True
    for v in Multivector.all_basis(form.spec, nvars, q - 1):
        iv = contract(form, v)
        if decomposable and not wedge(iv, form).is_zero():
            decomposable = False
        if integrable and not wedge(iv, dform).is_zero():
            integrable = False
        if not decomposable and not integrable:
            break
    return decomposable, decomposable and integrable


def validate(omega, q: int | None = None, n: int | None = None) -> FoliationReport:
    form = _as_form(omega)
    if form.is_zero():
        raise PreconditionError("the zero form defines nothing")
    if q is not None and form.q != q:
        raise PreconditionError(f"expected a {q}-form, got a {form.q}-form")
    if n is not None and form.nvars != n + 1:
        raise PreconditionError(f"expected {n + 1} variables, got {form.nvars}")
    if form.q == 0:
        raise PreconditionError("need a form of positive degree")
    e = form.homogeneous_degree()
    if e is None:
        raise PreconditionError("form is not homogeneous")
    projective = is_projective(form)
    codim = zero_locus_codim(form.coefficients())
    decomposable, integrable = plucker_checks(form)
    return FoliationReport(projective, codim >= 2, decomposable, integrable, e - form.q - 1, codim)


# -- constructors -------------------------------------------------------------------

def chain_polynomial(spec: FieldSpec, n: int, e: int) -> Polynomial:
    """sum_{i=1}^n x_{i-1} x_i^{pe-1}."""
    x = Polynomial.gens(spec, n + 1)
    m = spec.p * e
    return sum((x[i - 1] * x[i] ** (m - 1) for i in range(1, n + 1)), Polynomial.zero(spec, n + 1))


def construct_closed(F: Polynomial) -> ProjectiveQForm:
    if F.is_zero():
        raise PreconditionError("F must be nonzero")
    deg = F.homogeneous_degree()
    if deg is None:
        raise PreconditionError("F must be homogeneous")
    if deg % F.spec.p:
        raise PreconditionError(f"deg F = {deg} is not divisible by p = {F.spec.p}")
    form = d(DifferentialForm.from_function(F))
    if form.is_zero():
        raise PreconditionError("dF = 0: F is a p-th power")
    return ProjectiveQForm(form, F.nvars - 1, 1, deg - 2)


def construct_log(L: LogPresentation, n: int | None = None) -> ProjectiveQForm:
    if L.residue_sum():
        raise PreconditionError("residues violate sum d_i lambda_i = 0")
    spec, nvars = L.spec, L.factors[0].nvars
    if n is not None and nvars != n + 1:
        raise PreconditionError("factors live in the wrong number of variables")
    form = DifferentialForm.zero(spec, nvars, 1)
    for i, (lam, f) in enumerate(zip(L.lambdas, L.factors)):
        if not lam:
            continue
        others = product([g for j, g in enumerate(L.factors) if j != i], spec, nvars)
        form = form + d(DifferentialForm.from_function(f)) * (others.scale(lam.code))
    if form.is_zero():
        raise PreconditionError("the log data produce the zero form")
    return ProjectiveQForm(form, nvars - 1, 1, sum(L.degrees) - 2)


def construct_linear_pullback(beta, n: int) -> ProjectiveQForm:
    form = _as_form(beta)
    if form.q != 1:
        raise PreconditionError("expected a 1-form")
    if form.variables() - {0, 1, 2} or any(i > 2 for idx in form.terms for i in idx):
        raise PreconditionError("beta involves variables beyond x0, x1, x2")
    if form.nvars != 3:
        form = form.embed(3)
    if not is_projective(form):
        raise PreconditionError("beta is not projective")
    out = form.embed(n + 1)
    return ProjectiveQForm.from_form(out)


def exceptional_fields(spec: FieldSpec):
    """The semisimple and regular nilpotent linear fields on A^4."""
    x = Polynomial.gens(spec, 4)
    z = Polynomial.zero(spec, 4)
    vs = VectorField([z, -x[1], x[2].scale(spec.from_int(-2)), x[3].scale(spec.from_int(-3))])
    vn = VectorField([z, x[0], x[1], x[2]])
    return vs, vn


def construct_exceptional(p: int, n: int = 3, k: int = 1) -> ProjectiveQForm:
    if n != 3:
        raise PreconditionError("the exceptional form is defined on P^3")
    spec = FieldSpec.get(p, k)
    vs, vn = exceptional_fields(spec)
    return ProjectiveQForm.from_form(top_contraction([vs, vn], True))


# -- linear algebra on forms ----------------------------------------------------------

def projective_form_basis(spec: FieldSpec, nvars: int, e: int, q: int = 1) -> list[DifferentialForm]:
    """Basis of the projective q-forms of degree e (kernel of i_R)."""
    basis = homogeneous_form_basis(spec, nvars, q, e)
    R = VectorField.radial(spec, nvars)
    kernel = kernel_of_map([contract(b, R).flat() for b in basis], spec)
    return [combine(basis, v) for v in kernel]


def exact_primitive(form: DifferentialForm) -> Polynomial | None:
    """A homogeneous F with dF = form, or None."""
    if form.q != 1:
        raise PreconditionError("exact_primitive expects a 1-form")
    if form.is_zero():
        return Polynomial.zero(form.spec, form.nvars)
    e = form.homogeneous_degree()
    if e is None:
        return None
    spec, nvars = form.spec, form.nvars
    mons = monomials_of_degree(nvars, e)
    images = [d(DifferentialForm.from_function(Polynomial(spec, nvars, {m: 1}))).flat() for m in mons]
    target = form.flat()
    rows, keys = matrix_from_vectors(images + [target], spec)
    sol = solve([r[:-1] for r in rows], [r[-1] for r in rows], spec)
    if sol is None:
        return None
    return Polynomial(spec, nvars, {m: c for m, c in zip(mons, sol) if c})


@dataclass
class TangentFields:
    """Basis of tangent fields of one degree; ``trivial[i]`` marks g*R multiples."""
    fields: list = field(default_factory=list)
    trivial: list = field(default_factory=list)

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i):
        return self.fields[i]

    def nontrivial(self) -> list[VectorField]:
        return [v for v, t in zip(self.fields, self.trivial) if not t]


def _monomial_fields(spec, nvars, D):
    out = []
    for i in range(nvars):
        for m in monomials_of_degree(nvars, D):
            out.append(VectorField.coordinate(spec, nvars, i, Polynomial(spec, nvars, {m: 1})))
    return out


def tangent_fields(omega, D: int) -> TangentFields:
    form = _as_form(omega)
    if D < 0:
        raise PreconditionError("degree bound must be nonnegative")
    if form.q != 1:
        raise PreconditionError("tangent_fields expects a 1-form")
    spec, nvars = form.spec, form.nvars
    mono = _monomial_fields(spec, nvars, D)
    kernel = kernel_of_map([contract(form, v).flat() for v in mono], spec)
    R = VectorField.radial(spec, nvars)
    trivial = [R * Polynomial(spec, nvars, {m: 1}) for m in monomials_of_degree(nvars, D - 1)] if D >= 1 else []
    kernel_fields = [combine(mono, v) for v in kernel]
    candidates = trivial + kernel_fields
    keep = independent_subset([v.flat() for v in candidates], spec)
    fields = [candidates[i] for i in keep]
    flags = [i < len(trivial) for i in keep]
    if sum(flags) != len(trivial):
        raise InvariantError("radial multiples are not independent")
    return TangentFields(fields, flags)


def deformation_tangent_space(omega) -> int:
    """dim of {eta projective of the same degree : w ^ d eta + eta ^ d w = 0}."""
    form = _as_form(omega)
    if form.q != 1:
        raise PreconditionError("deformations are computed for 1-forms")
    e = form.homogeneous_degree()
    dform = d(form)
    basis = projective_form_basis(form.spec, form.nvars, e)
    images = [(wedge(form, d(eta)) + wedge(eta, dform)).flat() for eta in basis]
    return len(kernel_of_map(images, form.spec))


def coefficient_gcd(form: DifferentialForm) -> Polynomial:
    return multivar_gcd(form.coefficients())


def pencil_form(spec: FieldSpec, nvars: int, indices) -> DifferentialForm:
    """i_R(dx_{i0} ^ ... ^ dx_{iq})."""
    vol = DifferentialForm.basis(spec, nvars, tuple(indices))
    return contract(vol, VectorField.radial(spec, nvars))


__all__ = [
    "ProjectiveQForm", "LogPresentation", "FoliationReport", "TangentFields", "validate",
    "plucker_checks", "chain_polynomial", "construct_closed", "construct_log",
    "construct_linear_pullback", "construct_exceptional", "exceptional_fields",
    "projective_form_basis", "exact_primitive", "tangent_fields", "deformation_tangent_space",
    "coefficient_gcd", "pencil_form",
]
