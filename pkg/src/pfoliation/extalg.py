"""Polynomial differential forms and vector fields on affine space A^{n+1}.

Sign conventions, fixed once:

* ``exterior_derivative`` wedges the new ``dx_j`` on the left.
* ``contract`` with a vector field removes the k-th slot with sign (-1)^k.
* a constant multivector d_{j1}^...^d_{jm} contracts the highest index first.
"""
from __future__ import annotations

from itertools import combinations

from .errors import PreconditionError
from .field import FieldElement, FieldSpec
from .poly import Polynomial, _code, _unit, monomials_of_degree


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Sign and sorted union of dx_a ^ dx_b, or (0, None) on a repeated index."""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class DifferentialForm:
    """sum_I a_I dx_I with I strictly increasing; coefficients are Polynomials."""

    __slots__ = ("spec", "nvars", "q", "terms")

    def __init__(self, spec: FieldSpec, nvars: int, q: int, terms=None):
        if not 0 <= q <= nvars:
            raise PreconditionError(f"form degree {q} outside 0..{nvars}")
        self.spec = spec
        self.nvars = nvars
        self.q = q
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != q or any(i >= nvars or i < 0 for i in idx) or list(idx) != sorted(set(idx)):
                raise PreconditionError(f"bad index tuple {idx} for a {q}-form in {nvars} variables")
            if c:
                clean[idx] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------------

    @classmethod
    def zero(cls, spec, nvars, q):
        return cls(spec, nvars, q)

    @classmethod
    def basis(cls, spec, nvars, idx, coeff=None):
        """coeff * dx_idx (idx need not be sorted; the sign is applied)."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return cls(spec, nvars, len(idx))
        order = sorted(range(len(idx)), key=lambda i: idx[i])
        inversions = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
        if coeff is None:
            coeff = Polynomial.constant(spec, nvars, 1)
        if inversions % 2:
            coeff = -coeff
        return cls(spec, nvars, len(idx), {tuple(idx[i] for i in order): coeff})

    @classmethod
    def from_function(cls, f: Polynomial):
        """A polynomial viewed as a 0-form."""
        return cls(f.spec, f.nvars, 0, {(): f})

    @classmethod
    def one_form(cls, coeffs: list[Polynomial]):
        spec, nvars = coeffs[0].spec, coeffs[0].nvars
        return cls(spec, nvars, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def volume(cls, spec, nvars):
        return cls(spec, nvars, nvars, {tuple(range(nvars)): Polynomial.constant(spec, nvars, 1)})

    # -- queries ---------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, idx) -> Polynomial:
        return self.terms.get(tuple(idx), Polynomial.zero(self.spec, self.nvars))

    def coefficients(self) -> list[Polynomial]:
        return [self.terms[i] for i in sorted(self.terms)]

    def homogeneous_degree(self):
        """Degree e (coefficient degree + q), or None when inhomogeneous."""
        if not self.terms:
            raise PreconditionError("the zero form has no degree")
        degrees = set()
        for c in self.terms.values():
            d = c.homogeneous_degree()
            if d is None:
                return None
            degrees.add(d)
        return degrees.pop() + self.q if len(degrees) == 1 else None

    def flat(self) -> dict:
        """Sparse coordinate vector {(idx, exps): code}, for linear algebra."""
        return {(idx, e): c for idx, poly in self.terms.items() for e, c in poly.terms.items()}

    def variables(self) -> set[int]:
        out = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    # -- arithmetic --------------------------------------------------------------------

    def _check(self, other):
        if self.spec != other.spec or self.nvars != other.nvars:
            raise PreconditionError("forms over different rings")

    def __add__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check(other)
        if self.q != other.q and self.terms and other.terms:
            raise PreconditionError("cannot add forms of different degree")
        q = self.q if self.terms else other.q
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out[idx] + c if idx in out else c
        return DifferentialForm(self.spec, self.nvars, q, out)

    def __neg__(self):
        return DifferentialForm(self.spec, self.nvars, self.q, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a polynomial or scalar."""
        if isinstance(other, (int, FieldElement)):
            code = _code(self.spec, other)
            return DifferentialForm(self.spec, self.nvars, self.q,
                                    {i: c.scale(code) for i, c in self.terms.items()})
        if isinstance(other, Polynomial):
            return DifferentialForm(self.spec, self.nvars, self.q,
                                    {i: c * other for i, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def scale(self, code: int):
        return DifferentialForm(self.spec, self.nvars, self.q,
                                {i: c.scale(code) for i, c in self.terms.items()})

    def exact_div(self, f: Polynomial):
        return DifferentialForm(self.spec, self.nvars, self.q,
                                {i: c.exact_div(f) for i, c in self.terms.items()})

    def map_coefficients(self, fn):
        return DifferentialForm(self.spec, self.nvars, self.q,
                                {i: fn(c) for i, c in self.terms.items()})

    def embed(self, nvars: int):
        return DifferentialForm(self.spec, nvars, self.q,
                                {i: c.embed(nvars) for i, c in self.terms.items()})

    def linear_pullback(self, matrix):
        """Pull back along x = matrix . y (matrix entries are codes)."""
        n = self.nvars
        spec = self.spec
        images = [Polynomial(spec, n, {_unit(n, j): matrix[i][j] for j in range(n)}) for i in range(n)]
        dimages = [DifferentialForm.one_form([Polynomial(spec, n, {(0,) * n: matrix[i][j]}) for j in range(n)])
                   for i in range(n)]
        result = DifferentialForm.zero(spec, n, self.q)
        for idx, c in self.terms.items():
            piece = DifferentialForm.from_function(c.substitute(images))
            for i in idx:
                piece = wedge(piece, dimages[i])
            result = result + piece
        return result

    def proportional_to(self, other) -> FieldElement | None:
        """The scalar s with self == s * other, or None."""
        if not self.terms and not other.terms:
            return FieldElement(self.spec, 1)
        if set(self.terms) != set(other.terms) or self.q != other.q:
            return None
        a, b = self.flat(), other.flat()
        if set(a) != set(b):
            return None
        key = next(iter(a))
        s = self.spec.div(a[key], b[key])
        if all(a[k] == self.spec.mul(s, b[k]) for k in a):
            return FieldElement(self.spec, s)
        return None

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if self.spec != other.spec or self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.q, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms):
            d = "^".join(f"dx{i}" for i in idx)
            parts.append(f"({self.terms[idx]})" + (f"*{d}" if d else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"DifferentialForm(q={self.q}, {self})"


class VectorField:
    """sum_i a_i d/dx_i with polynomial components."""

    __slots__ = ("spec", "nvars", "components")

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise PreconditionError("a vector field needs at least one component")
        self.spec = components[0].spec
        self.nvars = components[0].nvars
        if len(components) != self.nvars:
            raise PreconditionError("component count must equal the number of variables")
        self.components = components

    @classmethod
    def zero(cls, spec, nvars):
        return cls([Polynomial.zero(spec, nvars)] * nvars)

    @classmethod
    def coordinate(cls, spec, nvars, i, coeff=None):
        """coeff * d/dx_i."""
        comps = [Polynomial.zero(spec, nvars)] * nvars
        comps[i] = coeff if coeff is not None else Polynomial.constant(spec, nvars, 1)
        return cls(comps)

    @classmethod
    def radial(cls, spec, nvars):
        return cls(Polynomial.gens(spec, nvars))

    @classmethod
    def linear(cls, spec, matrix):
        """The field with components (M x)_i; entries are codes."""
        n = len(matrix)
        return cls([Polynomial(spec, n, {_unit(n, j): matrix[i][j] for j in range(n)}) for i in range(n)])

    def __call__(self, f: Polynomial) -> Polynomial:
        """Apply as a derivation."""
        out = Polynomial.zero(self.spec, self.nvars)
        for i, a in enumerate(self.components):
            if a:
                df = f.derivative(i)
                if df:
                    out = out + a * df
        return out

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField([-a for a in self.components])

    def __mul__(self, other):
        if isinstance(other, (Polynomial, int, FieldElement)):
            return VectorField([a * other for a in self.components])
        return NotImplemented

    __rmul__ = __mul__

    def flat(self) -> dict:
        return {(i, e): c for i, a in enumerate(self.components) for e, c in a.terms.items()}

    def linear_matrix(self):
        """Matrix M with components (M x)_i; requires linear homogeneous components."""
        n = self.nvars
        m = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.components):
            for e, c in a.terms.items():
                if sum(e) != 1:
                    raise PreconditionError("vector field is not linear")
                m[i][e.index(1)] = c
        return m

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        parts = [f"({a})*d{i}" for i, a in enumerate(self.components) if a]
        return "VectorField(" + (" + ".join(parts) or "0") + ")"


class Multivector:
    """Constant multivector sum_J c_J d_J (strictly increasing J)."""

    __slots__ = ("spec", "nvars", "grade", "terms")

    def __init__(self, spec, nvars, grade, terms=None):
        if not 0 <= grade <= nvars:
            raise PreconditionError(f"grade {grade} outside 0..{nvars}")
        self.spec = spec
        self.nvars = nvars
        self.grade = grade
        self.terms = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != grade or list(idx) != sorted(set(idx)) or any(i >= nvars for i in idx):
                raise PreconditionError(f"bad multivector index {idx}")
            code = _code(spec, c)
            if code:
                self.terms[idx] = code

    @classmethod
    def basis(cls, spec, nvars, idx):
        return cls(spec, nvars, len(idx), {tuple(idx): 1})

    @classmethod
    def all_basis(cls, spec, nvars, grade):
        return [cls.basis(spec, nvars, idx) for idx in combinations(range(nvars), grade)]


# -- operations ---------------------------------------------------------------------

def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    a._check(b)
    q = a.q + b.q
    if q > a.nvars:
        return DifferentialForm(a.spec, a.nvars, min(q, a.nvars))
    out = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            sign, idx = _merge_sign(ia, ib)
            if not sign:
                continue
            prod = ca * cb
            if sign < 0:
                prod = -prod
            out[idx] = out[idx] + prod if idx in out else prod
    return DifferentialForm(a.spec, a.nvars, q, out)


def exterior_derivative(a: DifferentialForm) -> DifferentialForm:
    if a.q >= a.nvars:
        return DifferentialForm(a.spec, a.nvars, a.nvars)
    out = {}
    for idx, c in a.terms.items():
        for j in range(a.nvars):
            if j in idx:
                continue
            dc = c.derivative(j)
            if not dc:
                continue
            before = sum(1 for i in idx if i < j)
            if before % 2:
                dc = -dc
            new = tuple(sorted(idx + (j,)))
            out[new] = out[new] + dc if new in out else dc
    return DifferentialForm(a.spec, a.nvars, a.q + 1, out)


d = exterior_derivative


def _contract_coordinate(a: DifferentialForm, j: int, coeff: Polynomial | None = None):
    out = {}
    for idx, c in a.terms.items():
        if j not in idx:
            continue
        pos = idx.index(j)
        term = c if coeff is None else c * coeff
        if pos % 2:
            term = -term
        new = idx[:pos] + idx[pos + 1:]
        out[new] = out[new] + term if new in out else term
    return DifferentialForm(a.spec, a.nvars, a.q - 1, out)


def contract(a: DifferentialForm, v) -> DifferentialForm:
    """Interior product i_v a for a VectorField or a constant Multivector."""
    if isinstance(v, VectorField):
        if a.q == 0:
            raise PreconditionError("cannot contract a 0-form with a vector field")
        out = DifferentialForm.zero(a.spec, a.nvars, a.q - 1)
        for j, comp in enumerate(v.components):
            if comp:
                out = out + _contract_coordinate(a, j, comp)
        return out
    if isinstance(v, Multivector):
        if v.grade > a.q:
            raise PreconditionError(f"multivector grade {v.grade} exceeds form degree {a.q}")
        if v.grade == 0:
            return a.scale(v.terms.get((), 0))
        out = DifferentialForm.zero(a.spec, a.nvars, a.q - v.grade)
        for idx, c in v.terms.items():
            piece = a
            for j in reversed(idx):
                piece = _contract_coordinate(piece, j)
            out = out + piece.scale(c)
        return out
    raise PreconditionError(f"cannot contract with {type(v).__name__}")


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    return VectorField([v(b) - w(a) for a, b in zip(v.components, w.components)])


def vf_pth_power(v: VectorField) -> VectorField:
    """The derivation v^p, via its values v(v(...v(x_i))) on the coordinates."""
    p = v.spec.p
    comps = []
    for g in Polynomial.gens(v.spec, v.nvars):
        for _ in range(p):
            g = v(g)
            if not g:
                break
        comps.append(g)
    return VectorField(comps)


def radial_field(spec, nvars) -> VectorField:
    return VectorField.radial(spec, nvars)


def top_contraction(vs, include_radial: bool = True, *, spec=None, nvars=None) -> DifferentialForm:
    """i_R i_{vs[0]} ... i_{vs[-1]} (dx_0 ^ ... ^ dx_n); the last field acts first."""
    vs = list(vs)
    if vs:
        spec, nvars = vs[0].spec, vs[0].nvars
    if spec is None:
        raise PreconditionError("need spec and nvars when no fields are given")
    if len(vs) + int(include_radial) > nvars:
        raise PreconditionError("too many contractions for the volume form")
    form = DifferentialForm.volume(spec, nvars)
    fields = ([VectorField.radial(spec, nvars)] if include_radial else []) + vs
    for v in reversed(fields):
        form = contract(form, v)
    return form


def is_projective(a: DifferentialForm) -> bool:
    return a.q == 0 and not a.terms or contract(a, VectorField.radial(a.spec, a.nvars)).is_zero()


def euler_check(a: DifferentialForm, e: int | None = None) -> bool:
    """i_R da + d i_R a == e * a for a homogeneous form of degree e."""
    if not a.terms:
        return True
    degree = a.homogeneous_degree()
    if degree is None:
        raise PreconditionError("euler_check needs a homogeneous form")
    if e is None:
        e = degree
    R = VectorField.radial(a.spec, a.nvars)
    lhs = contract(d(a), R) if a.q < a.nvars else DifferentialForm.zero(a.spec, a.nvars, a.q)
    if a.q > 0:
        lhs = lhs + d(contract(a, R))
    return lhs == a * e


def jouanolou_correspondence(form: DifferentialForm) -> DifferentialForm:
    """omega -> d omega for projective forms, beta -> e^{-1} i_R beta for closed ones."""
    if not form.terms:
        raise PreconditionError("the zero form has no partner")
    e = form.homogeneous_degree()
    if e is None:
        raise PreconditionError("form is not homogeneous")
    spec = form.spec
    if e % spec.p == 0:
        raise PreconditionError(f"characteristic {spec.p} divides the degree {e}")
    if is_projective(form):
        return d(form)
    if d(form).is_zero():
        R = VectorField.radial(spec, form.nvars)
        return contract(form, R).scale(spec.inv(spec.from_int(e)))
    raise PreconditionError("form is neither projective nor closed")


def homogeneous_form_basis(spec, nvars, q, e) -> list[DifferentialForm]:
    """Monomial basis of q-forms whose coefficients have degree e - q."""
    mons = monomials_of_degree(nvars, e - q)
    out = []
    for idx in combinations(range(nvars), q):
        for m in mons:
            out.append(DifferentialForm(spec, nvars, q, {idx: Polynomial(spec, nvars, {m: 1})}))
    return out


def combine(basis, coeffs, spec=None):
    """sum_i coeffs[i] * basis[i] for forms or vector fields (coeffs are codes)."""
    result = None
    for b, c in zip(basis, coeffs):
        if not c:
            continue
        term = b.scale(c) if isinstance(b, DifferentialForm) else b * FieldElement(b.spec, c)
        result = term if result is None else result + term
    if result is None:
        b = basis[0]
        if isinstance(b, DifferentialForm):
            return DifferentialForm.zero(b.spec, b.nvars, b.q)
        return VectorField.zero(b.spec, b.nvars)
    return result
