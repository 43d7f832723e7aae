"""Sparse multivariate polynomials over a finite field.

A polynomial is a map from exponent tuples (one slot per variable
x_0..x_{nvars-1}) to nonzero coefficient codes of its ``FieldSpec``.
Terms are ordered by degrevlex with x_0 > x_1 > ... everywhere.
"""
from __future__ import annotations

import re
from functools import lru_cache, reduce
from math import prod

from .errors import ParseError, PreconditionError
from .field import FieldElement, FieldSpec


@lru_cache(maxsize=1 << 16)
def monomial_key(exps: tuple[int, ...]) -> tuple:
    """Sort key realising degrevlex: larger key means larger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, largest first."""
    if degree < 0:
        return []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec((), degree, nvars)
    out.sort(key=monomial_key, reverse=True)
    return out


class Monomial:
    """Sparse view of an exponent tuple: variable index -> positive exponent."""

    __slots__ = ("exponents", "nvars")

    def __init__(self, exponents: dict[int, int], nvars: int):
        if any(e <= 0 for e in exponents.values()):
            raise PreconditionError("monomial exponents must be positive")
        if any(not 0 <= i < nvars for i in exponents):
            raise PreconditionError("variable index out of range")
        self.exponents = dict(sorted(exponents.items()))
        self.nvars = nvars

    @classmethod
    def from_tuple(cls, exps):
        return cls({i: e for i, e in enumerate(exps) if e}, len(exps))

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self.exponents.get(i, 0) for i in range(self.nvars))

    @property
    def degree(self) -> int:
        return sum(self.exponents.values())

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.to_tuple() == other.to_tuple()

    def __hash__(self):
        return hash(self.to_tuple())

    def __repr__(self):
        return f"Monomial({self.exponents})"


class Polynomial:
    __slots__ = ("spec", "nvars", "terms")

    def __init__(self, spec: FieldSpec, nvars: int, terms=None):
        """``terms`` maps exponent tuples to coefficient *codes*; zero codes
        are dropped.  Use ``from_terms`` for FieldElement/int coefficients."""
        self.spec = spec
        self.nvars = nvars
        if terms:
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms or {}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec, nvars):
        return cls(spec, nvars)

    @classmethod
    def constant(cls, spec, nvars, value=1):
        return cls(spec, nvars, {(0,) * nvars: _code(spec, value)})

    @classmethod
    def var(cls, spec, nvars, i, power=1):
        if not 0 <= i < nvars:
            raise PreconditionError(f"variable x{i} outside x0..x{nvars - 1}")
        exps = [0] * nvars
        exps[i] = power
        return cls(spec, nvars, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, spec, nvars, terms):
        out = {}
        for exps, c in terms.items():
            if isinstance(exps, Monomial):
                exps = exps.to_tuple()
            exps = tuple(exps)
            if len(exps) != nvars:
                raise PreconditionError("exponent tuple length differs from nvars")
            code = _code(spec, c)
            out[exps] = spec.add(out.get(exps, 0), code)
        return cls(spec, nvars, out)

    @classmethod
    def gens(cls, spec, nvars):
        return [cls.var(spec, nvars, i) for i in range(nvars)]

    # -- basic queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and sum(next(iter(self.terms))) == 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def homogeneous_degree(self):
        """Common total degree of all terms, or None if inhomogeneous."""
        if not self.terms:
            raise PreconditionError("the zero polynomial has no degree")
        degrees = {sum(e) for e in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self) -> bool:
        return bool(self.terms) and len({sum(e) for e in self.terms}) == 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        return max(self.terms, key=monomial_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def coefficient(self, exps) -> FieldElement:
        return FieldElement(self.spec, self.terms.get(tuple(exps), 0))

    def monomials(self) -> list[Monomial]:
        return [Monomial.from_tuple(e) for e, _ in self.sorted_terms()]

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: Polynomial):
        if self.spec != other.spec or self.nvars != other.nvars:
            raise PreconditionError("polynomials over different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.spec, self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        add = self.spec.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = add(prev, c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.spec, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.spec.neg
        return Polynomial(self.spec, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, code: int) -> Polynomial:
        """Multiply by the scalar with the given code."""
        if not code:
            return Polynomial(self.spec, self.nvars)
        if code == 1:
            return self
        mul = self.spec.mul
        return Polynomial(self.spec, self.nvars, {e: mul(c, code) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(_code(self.spec, other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial(self.spec, self.nvars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        spec = self.spec
        if spec.k == 1:
            p = spec.p
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = tuple([x + y for x, y in zip(ea, eb)])
                    out[e] = get(e, 0) + ca * cb
            return Polynomial(spec, self.nvars, {e: c % p for e, c in out.items()})
        mul, add = spec.mul, spec.add
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = add(get(e, 0), mul(ca, cb))
        return Polynomial(spec, self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(_code(self.spec, other))
        return NotImplemented

    def mul_term(self, exps, code) -> Polynomial:
        if not code:
            return Polynomial(self.spec, self.nvars)
        mul = self.spec.mul
        return Polynomial(self.spec, self.nvars,
                          {tuple([x + y for x, y in zip(e, exps)]): mul(c, code)
                           for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise PreconditionError("negative powers of polynomials are not polynomials")
        result = Polynomial.constant(self.spec, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Quotient of an exact division; raises if the division leaves a remainder."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        spec = self.spec
        lm = other.leading_monomial()
        lc_inv = spec.inv(other.terms[lm])
        rem = dict(self.terms)
        quot = {}
        neg_other = [(e, spec.neg(c)) for e, c in other.terms.items()]
        add, mul = spec.add, spec.mul
        while rem:
            m = max(rem, key=monomial_key)
            if not monomial_divides(lm, m):
                raise PreconditionError("inexact polynomial division")
            shift = tuple(x - y for x, y in zip(m, lm))
            c = mul(rem[m], lc_inv)
            quot[shift] = c
            for e, oc in neg_other:
                t = tuple([x + y for x, y in zip(e, shift)])
                v = add(rem.get(t, 0), mul(oc, c))
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(spec, self.nvars, quot)

    def divides(self, other: Polynomial) -> bool:
        try:
            other.exact_div(self)
        except PreconditionError:
            return False
        return True

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.spec.inv(self.leading_coefficient()))

    # -- calculus ------------------------------------------------------------------

    def derivative(self, i: int, order: int = 1) -> Polynomial:
        if not 0 <= i < self.nvars:
            raise PreconditionError(f"variable x{i} outside x0..x{self.nvars - 1}")
        if order < 1:
            raise PreconditionError("derivative order must be positive")
        spec = self.spec
        p = spec.p
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n < order:
                continue
            factor = 1
            for j in range(order):
                factor = factor * (n - j) % p
            if not factor:
                continue
            ne = e[:i] + (n - order,) + e[i + 1:]
            out[ne] = spec.mul(c, factor)
        return Polynomial(spec, self.nvars, out)

    def pth_root(self) -> Polynomial:
        """The unique g with g^p equal to this polynomial."""
        spec = self.spec
        p = spec.p
        out = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                raise PreconditionError("not a p-th power: exponent not divisible by p")
            out[tuple(x // p for x in e)] = spec.frob_inv(c)
        return Polynomial(spec, self.nvars, out)

    def frobenius(self) -> Polynomial:
        """The p-th power, computed termwise."""
        spec = self.spec
        p = spec.p
        return Polynomial(spec, self.nvars,
                          {tuple(x * p for x in e): spec.frob(c) for e, c in self.terms.items()})

    # -- evaluation and substitution ---------------------------------------------

    def evaluate(self, point) -> FieldElement:
        spec = self.spec
        codes = [_code(spec, v) for v in point]
        if len(codes) != self.nvars:
            raise PreconditionError("point dimension differs from nvars")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, n in zip(codes, e):
                if n:
                    v = spec.mul(v, spec.pow(x, n))
            total = spec.add(total, v)
        return FieldElement(spec, total)

    def substitute(self, images: list[Polynomial]) -> Polynomial:
        """Replace x_i by images[i] (all images share a target ring)."""
        if len(images) != self.nvars:
            raise PreconditionError("need one image per variable")
        target = images[0] if images else None
        spec = self.spec
        result = Polynomial(spec, target.nvars)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, n):
            key = (i, n)
            if key not in powers:
                powers[key] = images[i] ** n
            return powers[key]

        for e, c in self.terms.items():
            term = Polynomial.constant(spec, target.nvars, 1).scale(c)
            for i, n in enumerate(e):
                if n:
                    term = term * power(i, n)
            result = result + term
        return result

    def linear_substitute(self, matrix) -> Polynomial:
        """x_i -> sum_j matrix[i][j] * x_j, entries given as codes."""
        n = self.nvars
        images = [Polynomial(self.spec, n, {_unit(n, j): matrix[i][j] for j in range(n)})
                  for i in range(n)]
        return self.substitute(images)

    def embed(self, nvars: int) -> Polynomial:
        """The same polynomial in a ring with more variables appended."""
        if nvars < self.nvars:
            if any(any(e[nvars:]) for e in self.terms):
                raise PreconditionError("polynomial uses variables beyond the target ring")
            return Polynomial(self.spec, nvars, {e[:nvars]: c for e, c in self.terms.items()})
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(self.spec, nvars, {e + pad: c for e, c in self.terms.items()})

    # -- dunder plumbing --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.spec == other.spec and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial.constant(self.spec, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, F_{self.spec.q}, nvars={self.nvars})"


def _unit(n, j):
    e = [0] * n
    e[j] = 1
    return tuple(e)


def _code(spec: FieldSpec, value) -> int:
    if isinstance(value, FieldElement):
        if value.spec != spec:
            raise PreconditionError("coefficient from a different field")
        return value.code
    if isinstance(value, int):
        return value % spec.p
    raise PreconditionError(f"cannot use {value!r} as a field coefficient")


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "exact_div":
        return f.exact_div(g)
    raise PreconditionError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, i: int, order: int = 1) -> Polynomial:
    return f.derivative(i, order)


def pth_root(f: Polynomial) -> Polynomial:
    return f.pth_root()


def homogeneous_degree(f: Polynomial):
    return f.homogeneous_degree()


# -- text syntax -------------------------------------------------------------------

def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    spec = f.spec
    parts = []
    for e, c in f.sorted_terms():
        factors = []
        for i, n in enumerate(e):
            if n == 1:
                factors.append(f"x{i}")
            elif n:
                factors.append(f"x{i}^{n}")
        if c != 1 or not factors:
            factors.insert(0, spec.format(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_polynomial(spec: FieldSpec, nvars: int, text: str) -> Polynomial:
    """Parse ``c*x0^a*x1^b + ...``; a leading ``-`` on a term negates it."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", 1, 1)
    # split on top-level +/- (not inside [...])
    chunks, depth, start, sign = [], 0, 0, 1
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunk = s[start:i].strip()
            if chunk:
                chunks.append((chunk, start, sign))
                sign = 1
            if ch == "-":
                sign = -sign
            start = i + 1
    tail = s[start:].strip()
    if not tail:
        raise ParseError("polynomial ends with an operator", 1, len(s))
    chunks.append((tail, start, sign))

    result = {}
    for chunk, offset, sgn in chunks:
        coeff = 1
        exps = [0] * nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            col = offset + 1
            if not factor:
                raise ParseError(f"empty factor in {chunk!r}", 1, col)
            if factor[0] == "x":
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if not m:
                    raise ParseError(f"bad variable factor {factor!r}", 1, col)
                idx = int(m.group(1))
                if idx >= nvars:
                    raise ParseError(f"variable x{idx} outside x0..x{nvars - 1}", 1, col)
                exps[idx] += int(m.group(2) or 1)
            else:
                try:
                    c = spec.parse(factor)
                except ParseError:
                    raise ParseError(f"bad coefficient {factor!r}", 1, col) from None
                coeff = spec.mul(coeff, c)
        if sgn < 0:
            coeff = spec.neg(coeff)
        key = tuple(exps)
        result[key] = spec.add(result.get(key, 0), coeff)
    return Polynomial(spec, nvars, result)


# -- gcd -----------------------------------------------------------------------------

def _as_univariate(f: Polynomial, v: int) -> dict[int, Polynomial]:
    """Coefficients of f viewed in k[x_{!=v}][x_v]."""
    buckets: dict[int, dict] = {}
    for e, c in f.terms.items():
        n = e[v]
        buckets.setdefault(n, {})[e[:v] + (0,) + e[v + 1:]] = c
    return {n: Polynomial(f.spec, f.nvars, t) for n, t in buckets.items()}


def _from_univariate(coeffs: dict[int, Polynomial], v: int, spec, nvars) -> Polynomial:
    out = {}
    for n, c in coeffs.items():
        for e, code in c.terms.items():
            out[e[:v] + (n,) + e[v + 1:]] = code
    return Polynomial(spec, nvars, out)


def _content(f: Polynomial, v: int) -> Polynomial:
    return reduce(_gcd_unnormalized, _as_univariate(f, v).values())


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    """Pseudo-remainder of a by b with respect to x_v."""
    spec, nvars = a.spec, a.nvars
    bu = _as_univariate(b, v)
    db = max(bu)
    lc = bu[db]
    r = a
    while r and r.degree_in(v) >= db:
        ru = _as_univariate(r, v)
        dr = max(ru)
        shift = [0] * nvars
        shift[v] = dr - db
        r = r * lc - (b * ru[dr]).mul_term(tuple(shift), 1)
    return r


def _gcd_unnormalized(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f.terms:
        return g
    if not g.terms:
        return f
    spec, nvars = f.spec, f.nvars
    fv, gv = f.variables(), g.variables()
    if not fv or not gv:
        return Polynomial.constant(spec, nvars, 1)
    v = max(fv | gv)
    if v not in fv:
        return _gcd_unnormalized(f, _content(g, v))
    if v not in gv:
        return _gcd_unnormalized(_content(f, v), g)
    cf, cg = _content(f, v), _content(g, v)
    a, b = f.exact_div(cf), g.exact_div(cg)
    c = _gcd_unnormalized(cf, cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while b and b.degree_in(v) > 0:
        r = _prem(a, b, v)
        if r:
            r = r.exact_div(_content(r, v))
        a, b = b, r
    if b:
        # a nonzero remainder free of x_v: the primitive parts are coprime
        return c
    return c * a


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    if not f and not g:
        raise PreconditionError("gcd of zero polynomials is undefined")
    return _gcd_unnormalized(f, g).monic()


def multivar_gcd(fs) -> Polynomial:
    """Monic gcd of a nonempty list, skipping inputs the running gcd divides."""
    fs = list(fs)
    if not fs:
        raise PreconditionError("gcd of an empty list")
    nonzero = [f for f in fs if f]
    if not nonzero:
        raise PreconditionError("gcd of zero polynomials is undefined")
    g = nonzero[0].monic()
    for f in nonzero[1:]:
        if g.is_constant():
            break
        if g.divides(f):
            continue
        g = gcd(g, f)
    return g


def product(fs, spec: FieldSpec, nvars: int) -> Polynomial:
    return prod(fs, start=Polynomial.constant(spec, nvars, 1))
