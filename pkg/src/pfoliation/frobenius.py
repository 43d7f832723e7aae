"""p-curvature values, the degeneracy divisor, and the Cartier operator."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError, PreconditionError
from .extalg import DifferentialForm, contract, d, vf_pth_power, wedge
from .field import FieldElement
from .foliation import LogPresentation, _as_form, construct_log, tangent_fields
from .poly import Polynomial, multivar_gcd, product


@dataclass
class PCurvatureReport:
    values: list
    divisor_poly: Polynomial | None
    divisor_degree: int | None
    inferred_pkernel_degree: int | None
    p_closed_up_to_D: bool
    max_degree: int
    foliation_degree: int

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "foliation_degree": self.foliation_degree,
            "n_values": len(self.values),
            "n_nonzero_values": sum(1 for _, val in self.values if val),
            "divisor_poly": None if self.divisor_poly is None else str(self.divisor_poly),
            "divisor_degree": self.divisor_degree,
            "inferred_pkernel_degree": self.inferred_pkernel_degree,
            "p_closed_up_to_D": self.p_closed_up_to_D,
        }


def pkernel_degree(divisor_degree: int, foliation_degree: int, p: int) -> int | None:
    """Degree of the p-kernel predicted from the degeneracy divisor degree."""
    excess = divisor_degree - foliation_degree - 2
    if excess % p:
        return None
    return foliation_degree - 1 - excess // p


def p_curvature(omega, D: int | None = None) -> PCurvatureReport:
    """Values w(v^p) on tangent fields of degree <= D.

    Radial multiples g*R are skipped: (gR)^p is again a multiple of R.
    """
    form = _as_form(omega)
    if form.q != 1:
        raise PreconditionError("p-curvature is computed for 1-forms")
    e = form.homogeneous_degree()
    if e is None:
        raise PreconditionError("form is not homogeneous")
    fol_degree = e - 2
    p = form.spec.p
    if D is None:
        D = e - 1 + p
    values = []
    for deg in range(D + 1):
        for v in tangent_fields(form, deg).nontrivial():
            val = contract(form, vf_pth_power(v)).coefficient(())
            values.append((v, val))
    nonzero = [val for _, val in values if val]
    if not nonzero:
        return PCurvatureReport(values, None, None, None, True, D, fol_degree)
    g = multivar_gcd(nonzero)
    for val in nonzero:
        if not g.divides(val):
            raise InvariantError("gcd does not divide a p-curvature value")
    deg = g.homogeneous_degree()
    return PCurvatureReport(values, g, deg, pkernel_degree(deg, fol_degree, p), False, D, fol_degree)


def cartier_polynomial(alpha: DifferentialForm) -> DifferentialForm:
    """C(sum a_i dx_i) = sum (-d^{p-1} a_i / dx_i^{p-1})^{1/p} dx_i on closed 1-forms."""
    if alpha.q != 1:
        raise PreconditionError("the Cartier operator is implemented on 1-forms")
    if not d(alpha).is_zero():
        raise PreconditionError("the Cartier operator needs a closed form")
    p = alpha.spec.p
    out = {}
    for (i,), a in alpha.terms.items():
        b = -a.derivative(i, p - 1)
        try:
            out[(i,)] = b.pth_root()
        except PreconditionError as exc:
            raise InvariantError(f"closed form with non-p-th-power Cartier coefficient: {exc}") from exc
    return DifferentialForm(alpha.spec, alpha.nvars, 1, out)


def cartier_log(L: LogPresentation) -> LogPresentation:
    """Same factors; residues replaced by their p-th roots."""
    return LogPresentation([FieldElement(x.spec, x.spec.frob_inv(x.code)) for x in L.lambdas], L.factors)


def cartier_identity_sides(L: LogPresentation):
    """Both sides of C(h^{p-1} . w_L) = w_{C(L)}, where h is the product of the factors.

    h^{p-1} w_L is h^p times the rational log form, so by semilinearity its
    Cartier image is h times the image of the log form, which is w_{C(L)}.
    """
    spec, nvars = L.spec, L.factors[0].nvars
    h = product(L.factors, spec, nvars)
    lhs = cartier_polynomial(construct_log(L).form * h ** (spec.p - 1))
    rhs = construct_log(cartier_log(L)).form
    return lhs, rhs


def cartier_transform_coefficients(L: LogPresentation) -> dict:
    """c_ij = lambda_i lambda_j^{1/p} - lambda_j lambda_i^{1/p} for i < j."""
    lam = L.lambdas
    root = cartier_log(L).lambdas
    return {(i, j): lam[i] * root[j] - lam[j] * root[i]
            for i in range(len(lam)) for j in range(i + 1, len(lam))}


def cartier_transform_form(L: LogPresentation) -> DifferentialForm:
    """w_L ^ w_{C(L)} divided by h: the polynomial clearing of w ^ C(w)."""
    if len(L.factors) < 2:
        raise PreconditionError("need at least two factors")
    spec, nvars = L.spec, L.factors[0].nvars
    h = product(L.factors, spec, nvars)
    theta = wedge(construct_log(L).form, construct_log(cartier_log(L)).form)
    try:
        return theta.exact_div(h)
    except PreconditionError as exc:
        raise InvariantError("w ^ C(w) is not divisible by the product of the factors") from exc


def cartier_transform_expansion(L: LogPresentation) -> DifferentialForm:
    """sum_{i<j} c_ij (prod_{l != i,j} f_l) df_i ^ df_j, assembled term by term."""
    spec, nvars = L.spec, L.factors[0].nvars
    dfs = [d(DifferentialForm.from_function(f)) for f in L.factors]
    out = DifferentialForm.zero(spec, nvars, 2)
    for (i, j), c in cartier_transform_coefficients(L).items():
        if not c:
            continue
        rest = product([f for l, f in enumerate(L.factors) if l not in (i, j)], spec, nvars)
        out = out + wedge(dfs[i], dfs[j]) * rest.scale(c.code)
    return out
