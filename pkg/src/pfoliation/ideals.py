"""Buchberger's algorithm in degrevlex, normal forms and ideal dimension."""
from __future__ import annotations

from itertools import combinations

from .errors import PreconditionError
from .field import FieldSpec
from .poly import Polynomial, monomial_divides, monomial_key


def _lead(terms: dict):
    m = max(terms, key=monomial_key)
    return m, terms[m]


def _reduce(terms: dict, basis, spec: FieldSpec, full: bool = True) -> dict:
    """Remainder of terms modulo basis (list of (lm, lc_inverse, terms))."""
    f = dict(terms)
    rem = {}
    add, mul, neg = spec.add, spec.mul, spec.neg
    while f:
        m = max(f, key=monomial_key)
        c = f[m]
        for lm, lc_inv, g in basis:
            if monomial_divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                factor = neg(mul(c, lc_inv))
                for e, gc in g.items():
                    t = tuple(a + b for a, b in zip(e, shift))
                    v = add(f.get(t, 0), mul(factor, gc))
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(terms: dict, spec: FieldSpec) -> dict:
    _, c = _lead(terms)
    if c == 1:
        return terms
    s = spec.inv(c)
    return {e: spec.mul(v, s) for e, v in terms.items()}


def _spoly(f, g, spec):
    (mf, cf), (mg, cg) = _lead(f), _lead(g)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    sf = tuple(a - b for a, b in zip(lcm, mf))
    sg = tuple(a - b for a, b in zip(lcm, mg))
    out = {}
    a, b = spec.inv(cf), spec.neg(spec.inv(cg))
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, sf))] = spec.mul(c, a)
    for e, c in g.items():
        t = tuple(x + y for x, y in zip(e, sg))
        v = spec.add(out.get(t, 0), spec.mul(c, b))
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


class GroebnerBasis:
    """Reduced Groebner basis in degrevlex (x0 > x1 > ...)."""

    order = "degrevlex"

    def __init__(self, spec: FieldSpec, nvars: int, generators: list[Polynomial]):
        self.spec = spec
        self.nvars = nvars
        self.generators = generators
        self._table = [(g.leading_monomial(), spec.inv(g.leading_coefficient()), g.terms)
                       for g in generators]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [t[0] for t in self._table]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials())

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.generators) + "])"


def groebner(gens) -> GroebnerBasis:
    gens = list(gens)
    if not gens:
        raise PreconditionError("groebner needs at least one generator")
    spec, nvars = gens[0].spec, gens[0].nvars
    polys = []
    seen = set()
    for g in gens:
        if g.spec != spec or g.nvars != nvars:
            raise PreconditionError("generators over different rings")
        if g.terms:
            t = _monic(g.terms, spec)
            key = frozenset(t.items())
            if key not in seen:
                seen.add(key)
                polys.append(t)
    if not polys:
        return GroebnerBasis(spec, nvars, [])
    # inter-reduce the input first; it keeps the pair queue short
    polys.sort(key=lambda t: monomial_key(_lead(t)[0]))
    basis = []
    for t in polys:
        table = [(_lead(b)[0], 1, b) for b in basis]
        r = _reduce(t, table, spec)
        if r:
            basis.append(_monic(r, spec))
    lms = [_lead(b)[0] for b in basis]

    def pair_key(i, j):
        lcm = tuple(max(a, b) for a, b in zip(lms[i], lms[j]))
        return (sum(lcm), monomial_key(lcm), i, j)

    pairs = {(i, j) for i, j in combinations(range(len(basis)), 2)}
    while pairs:
        i, j = min(pairs, key=lambda ij: pair_key(*ij))
        pairs.discard((i, j))
        a, b = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        lcm = tuple(max(x, y) for x, y in zip(a, b))
        # chain criterion: skip if some third element's lm divides the lcm
        # and both companion pairs are already processed
        if any(k not in (i, j) and monomial_divides(lms[k], lcm)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        table = [(lms[k], 1, basis[k]) for k in range(len(basis))]
        r = _reduce(_spoly(basis[i], basis[j], spec), table, spec)
        if not r:
            continue
        r = _monic(r, spec)
        basis.append(r)
        lms.append(_lead(r)[0])
        new = len(basis) - 1
        pairs |= {(k, new) for k in range(new)}
        if not any(lms[new]):
            break
    return GroebnerBasis(spec, nvars, _reduced(basis, spec, nvars))


def _reduced(basis, spec, nvars) -> list[Polynomial]:
    lms = [_lead(b)[0] for b in basis]
    if any(not any(m) for m in lms):
        return [Polynomial.constant(spec, nvars, 1)]
    keep = []
    for i, m in enumerate(lms):
        redundant = any(
            j != i and monomial_divides(lms[j], m) and (lms[j] != m or j < i)
            for j in range(len(lms)))
        if not redundant:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    out = []
    for i, g in enumerate(minimal):
        others = [(_lead(h)[0], 1, h) for j, h in enumerate(minimal) if j != i]
        lm, lc = _lead(g)
        tail = {e: c for e, c in g.items() if e != lm}
        r = _reduce(tail, others, spec)
        r[lm] = lc
        out.append(Polynomial(spec, nvars, _monic(r, spec)))
    out.sort(key=lambda p: monomial_key(p.leading_monomial()))
    return out


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.spec != G.spec or f.nvars != G.nvars:
        raise PreconditionError("polynomial and basis live in different rings")
    return Polynomial(f.spec, f.nvars, _reduce(f.terms, G._table, f.spec))


def ideal_dimension(G: GroebnerBasis) -> int:
    """Affine dimension of the zero set; -1 for the unit ideal."""
    n = G.nvars
    if not G.generators:
        return n
    if G.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.leading_monomials()]
    best = 0

    # largest independent set: subsets containing no leading-monomial support
    def search(start, chosen):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (n - start) <= best:
            return
        for v in range(start, n):
            s = chosen | {v}
            if not any(sup <= s for sup in supports):
                search(v + 1, s)

    search(0, frozenset())
    return best


def zero_locus_codim(fs) -> int:
    """nvars minus the dimension of V(fs); nvars + 1 means the zero set is empty."""
    fs = list(fs)
    if not fs or all(f.is_zero() for f in fs):
        raise PreconditionError("zero_locus_codim needs a nonzero polynomial")
    G = groebner([f for f in fs if not f.is_zero()])
    return G.nvars - ideal_dimension(G)
