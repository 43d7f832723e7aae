"""Normal forms of linear forms and component labels in degrees 0, 1 and 2."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvariantError, PreconditionError
from .extalg import DifferentialForm, VectorField, contract, d, wedge
from .field import FieldSpec
from .foliation import (LogPresentation, _as_form, construct_exceptional, exceptional_fields,
                        construct_log, exact_primitive, plucker_checks, validate)
from .ideals import zero_locus_codim
from .linalg import kernel_of_map, nullspace, rank, solve, matrix_from_vectors
from .poly import Polynomial, monomials_of_degree


def _const_one_form(spec, nvars, covector) -> DifferentialForm:
    return DifferentialForm(spec, nvars, 1, {(i,): Polynomial(spec, nvars, {(0,) * nvars: c})
                                             for i, c in enumerate(covector) if c})


def _coordinate_fields(spec, nvars):
    return [VectorField.coordinate(spec, nvars, i) for i in range(nvars)]


def _linear_from_covector(spec, nvars, covector) -> Polynomial:
    return Polynomial(spec, nvars, {tuple(int(j == i) for j in range(nvars)): c
                                    for i, c in enumerate(covector) if c})


@dataclass
class NormalFormCase:
    tag: str
    covectors: list = field(default_factory=list)
    annihilator: list = field(default_factory=list)
    is_case_a: bool = False
    is_case_b: bool = False

    def to_dict(self) -> dict:
        return {"tag": self.tag, "is_case_a": self.is_case_a, "is_case_b": self.is_case_b,
                "covectors": self.covectors, "annihilator": self.annihilator}


@dataclass
class ComponentLabel:
    name: str
    diagnostic: str = ""
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"label": self.name, "diagnostic": self.diagnostic, "witness": self.witness}


def constant_annihilator(form: DifferentialForm) -> list[list[int]]:
    """Basis of constant vectors v with i_v form = 0."""
    spec, nvars = form.spec, form.nvars
    return kernel_of_map([contract(form, v).flat() for v in _coordinate_fields(spec, nvars)], spec)


def annihilating_covectors(form: DifferentialForm) -> list[list[int]]:
    """Basis of constant covectors xi with form ^ xi = 0."""
    spec, nvars = form.spec, form.nvars
    images = [wedge(form, DifferentialForm.basis(spec, nvars, (i,))).flat() for i in range(nvars)]
    return kernel_of_map(images, spec)


def medeiros_case(theta: DifferentialForm) -> NormalFormCase:
    spec, nvars, q = theta.spec, theta.nvars, theta.q
    if theta.is_zero() or q < 1:
        raise PreconditionError("need a nonzero form of positive degree")
    if any(c.homogeneous_degree() != 1 for c in theta.terms.values()):
        raise PreconditionError("coefficients must be homogeneous linear")
    decomposable, _ = plucker_checks(theta)
    if not decomposable:
        return NormalFormCase("NotLinearLD")
    covectors = annihilating_covectors(theta)
    annihilator = constant_annihilator(theta)
    case_a = len(covectors) >= max(1, q - 1)
    case_b = len(annihilator) >= nvars - (q + 1)
    if case_b:
        return NormalFormCase("CaseB", covectors if case_a else [], annihilator, case_a, True)
    if case_a:
        return NormalFormCase("CaseA", covectors, [], True, False)
    raise InvariantError("locally decomposable linear form fits neither normal form")


def _proportional_pencil(form: DifferentialForm, q: int):
    """Recover l_0..l_q with form proportional to i_R(dl_0 ^ ... ^ dl_q)."""
    spec, nvars = form.spec, form.nvars
    W = constant_annihilator(form)
    if len(W) != nvars - (q + 1):
        return None
    # covectors vanishing on W
    ls = nullspace(W, nvars, spec) if W else [[int(i == j) for j in range(nvars)] for i in range(nvars)]
    if len(ls) != q + 1:
        return None
    beta = DifferentialForm(spec, nvars, 0, {(): Polynomial.constant(spec, nvars, 1)})
    for cov in ls:
        beta = wedge(beta, _const_one_form(spec, nvars, cov))
    candidate = contract(beta, VectorField.radial(spec, nvars))
    if form.proportional_to(candidate) is None:
        return None
    return ls


def classify_degree0(omega, q: int | None = None, p: int | None = None) -> ComponentLabel:
    form = _as_form(omega)
    q = form.q if q is None else q
    p = form.spec.p if p is None else p
    e = form.homogeneous_degree()
    if e != q + 1:
        raise PreconditionError("classify_degree0 expects a degree-0 foliation")
    if p == 2 and q == 1:
        if not d(form).is_zero():
            return ComponentLabel("Unclassified", "degree-0 form in characteristic 2 is not closed")
        F = exact_primitive(form)
        if F is None:
            return ComponentLabel("Unclassified", "closed form without a polynomial primitive")
        return ComponentLabel("Closed", "closed and exact", {"primitive": str(F)})
    ls = _proportional_pencil(form, q)
    if ls is None:
        return ComponentLabel("Unclassified", "not proportional to a linear projection form")
    linear = [str(_linear_from_covector(form.spec, form.nvars, c)) for c in ls]
    return ComponentLabel("Lin", "linear projection", {"linear_forms": linear})


@dataclass
class PullbackResult:
    verdict: str  # "Lin", "QLin", or "fail"
    matrix: list | None = None
    annihilator_dim: int = 0

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "matrix": self.matrix, "annihilator_dim": self.annihilator_dim}


def _complete_basis(spec, nvars, vectors):
    """Extend independent columns to a basis, putting the given vectors last."""
    extra = []
    current = [list(v) for v in vectors]
    for i in range(nvars):
        e = [int(j == i) for j in range(nvars)]
        if rank(current + extra + [e], spec) > len(current) + len(extra):
            extra.append(e)
    cols = extra + current
    return [[cols[j][i] for j in range(nvars)] for i in range(nvars)]


def linear_pullback_test(omega) -> PullbackResult:
    form = _as_form(omega)
    spec, nvars = form.spec, form.nvars
    n = nvars - 1
    dform = d(form)
    images = []
    for v in _coordinate_fields(spec, nvars):
        a = contract(form, v).flat()
        b = {("d",) + k: c for k, c in contract(dform, v).flat().items()}
        images.append({**a, **b})
    W = kernel_of_map(images, spec)
    if len(W) < n - 2:
        return PullbackResult("fail", None, len(W))
    M = _complete_basis(spec, nvars, W)
    moved = form.linear_pullback(M)
    free = nvars - len(W)
    p = spec.p
    in_lin = all(not any(e[free:]) for c in moved.terms.values() for e in c.terms)
    if in_lin:
        return PullbackResult("Lin", M, len(W))
    in_qlin = all(all(x % p == 0 for x in e[free:]) for c in moved.terms.values() for e in c.terms)
    return PullbackResult("QLin" if in_qlin else "fail", M, len(W))


def _recover_log12(form: DifferentialForm, covector) -> LogPresentation | None:
    """Find the quadric f with df ^ dl = dw and check w against the log form of (l, f)."""
    spec, nvars = form.spec, form.nvars
    ell = _linear_from_covector(spec, nvars, covector)
    dl = _const_one_form(spec, nvars, covector)
    dform = d(form)
    mons = monomials_of_degree(nvars, 2)
    images = [wedge(d(DifferentialForm.from_function(Polynomial(spec, nvars, {m: 1}))), dl).flat()
              for m in mons]
    rows, _ = matrix_from_vectors(images + [dform.flat()], spec)
    sol = solve([r[:-1] for r in rows], [r[-1] for r in rows], spec)
    if sol is None:
        return None
    f = Polynomial(spec, nvars, {m: c for m, c in zip(mons, sol) if c})
    if f.is_zero():
        return None
    L = LogPresentation([2, -1], [ell, f])
    try:
        candidate = construct_log(L).form
    except PreconditionError:
        return None
    if form.proportional_to(candidate) is None:
        return None
    return L


def classify_degree1(omega, p: int | None = None) -> ComponentLabel:
    form = _as_form(omega)
    p = form.spec.p if p is None else p
    if form.q != 1 or form.homogeneous_degree() != 3:
        raise PreconditionError("classify_degree1 expects a degree-1 foliation given by a 1-form")
    dform = d(form)
    if dform.is_zero():
        if p != 3:
            return ComponentLabel("Unclassified", f"closed degree-1 form in characteristic {p}")
        F = exact_primitive(form)
        if F is None:
            return ComponentLabel("Unclassified", "closed form without a polynomial primitive")
        return ComponentLabel("Closed", "closed and exact", {"primitive": str(F)})
    case = medeiros_case(dform)
    if case.tag == "NotLinearLD":
        return ComponentLabel("Unclassified", "dw is not locally decomposable")
    # forms in both normal forms lie on both components; the log presentation is reported first
    if case.is_case_a and p >= 5:
        for cov in case.covectors:
            L = _recover_log12(form, cov)
            if L is not None:
                return ComponentLabel("Log(1,2)", "logarithmic with a hyperplane and a quadric",
                                      {"lambdas": [str(x) for x in L.lambdas],
                                       "factors": [str(f) for f in L.factors],
                                       "also_second_normal_form": case.is_case_b})
    if case.tag == "CaseB":
        res = linear_pullback_test(form)
        if res.verdict == "Lin":
            return ComponentLabel("Lin", "linear pullback", {"matrix": res.matrix})
        return ComponentLabel("Unclassified", f"second normal form but pullback test gave {res.verdict}")
    if p < 5:
        return ComponentLabel("Unclassified", f"first normal form in characteristic {p}")
    return ComponentLabel("Unclassified", "first normal form but no log presentation recovered")


def classify(omega) -> ComponentLabel:
    """Dispatch on the foliation degree; degree 2 only recognizes the exceptional form."""
    form = _as_form(omega)
    rep = validate(form)
    if not (rep.is_projective and rep.is_integrable and rep.is_saturated):
        return ComponentLabel("Unclassified", "not an integrable saturated projective form",
                              {"report": rep.to_dict()})
    if rep.degree == 0:
        return classify_degree0(form)
    if rep.degree == 1 and form.q == 1:
        return classify_degree1(form)
    if rep.degree == 2 and form.q == 1 and form.nvars == 4:
        exc = construct_exceptional(form.spec.p, 3, form.spec.k).form
        if form.proportional_to(exc) is not None:
            vs, vn = exceptional_fields(form.spec)
            return ComponentLabel("Exceptional", "proportional to the constructed exceptional form",
                                  {"generating_fields": [repr(vs), repr(vn)]})
    return ComponentLabel("Unclassified", f"no decision procedure for degree {rep.degree}")


def kupka_codim(omega) -> int | None:
    """Codimension of the zero locus of dw (affine cone); None when dw = 0."""
    dform = d(_as_form(omega))
    if dform.is_zero():
        return None
    return zero_locus_codim(dform.coefficients())


def nc2_ideal(h: Polynomial) -> list[Polynomial]:
    spec, nvars = h.spec, h.nvars
    fields = _coordinate_fields(spec, nvars)
    fields += [fields[i] + fields[j] for i, j in combinations(range(nvars), 2)]
    gens = [h] + [h.derivative(i) for i in range(nvars)]
    for v1, v2 in combinations(fields, 2):
        det = v1(v1(h)) * v2(v2(h)) - v2(v1(h)) * v1(v2(h))
        if det:
            gens.append(det)
    return [g for g in gens if g]


def nc2_test(h: Polynomial) -> bool:
    if h.is_zero():
        raise PreconditionError("nc2_test needs a nonzero polynomial")
    return zero_locus_codim(nc2_ideal(h)) >= 3


def centralizer_dim(M, spec: FieldSpec) -> int:
    """dim {X : XM = MX} for a square matrix of codes."""
    n = len(M)
    images = []
    for a in range(n):
        for b in range(n):
            # X = E_ab; (XM - MX)_{ij} = [i==a] M_bj - M_ia [j==b]
            img = {}
            for j in range(n):
                if M[b][j]:
                    img[(a, j)] = spec.add(img.get((a, j), 0), M[b][j])
            for i in range(n):
                if M[i][a]:
                    img[(i, b)] = spec.sub(img.get((i, b), 0), M[i][a])
            images.append({k: c for k, c in img.items() if c})
    return len(kernel_of_map(images, spec))
