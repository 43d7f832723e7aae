"""Exhaustive and sampled censuses of low-degree projective 1-forms, plus
seeded generators of random instances for each component family."""
from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .classify import annihilating_covectors, classify_degree0, classify_degree1
from .errors import PreconditionError
from .extalg import DifferentialForm, VectorField, d, top_contraction, wedge
from .field import FieldSpec
from .foliation import (LogPresentation, construct_linear_pullback, construct_log,
                        projective_form_basis)
from .ideals import zero_locus_codim
from .linalg import rank
from .poly import Polynomial, monomials_of_degree

FULL_LIMIT = 2 ** 24


# -- random instances ---------------------------------------------------------------

def random_homogeneous(spec: FieldSpec, nvars: int, degree: int, rng: random.Random) -> Polynomial:
    while True:
        f = Polynomial(spec, nvars, {m: rng.randrange(spec.q) for m in monomials_of_degree(nvars, degree)})
        if not f.is_zero():
            return f


def random_invertible(spec: FieldSpec, n: int, rng: random.Random):
    while True:
        M = [[rng.randrange(spec.q) for _ in range(n)] for _ in range(n)]
        if rank(M, spec) == n:
            return M


def is_smooth_hypersurface(f: Polynomial) -> bool:
    """V(f, df) is the origin of the affine cone."""
    gens = [f] + [f.derivative(i) for i in range(f.nvars)]
    return zero_locus_codim([g for g in gens if g]) == f.nvars


def is_transversal_pair(f1: Polynomial, f2: Polynomial) -> bool:
    """f1, f2 and the 2x2 minors of their Jacobian vanish only at the origin."""
    n = f1.nvars
    g1 = [f1.derivative(i) for i in range(n)]
    g2 = [f2.derivative(i) for i in range(n)]
    minors = [g1[i] * g2[j] - g1[j] * g2[i] for i, j in combinations(range(n), 2)]
    gens = [f1, f2] + [m for m in minors if m]
    return zero_locus_codim(gens) == n


def random_snc_pair(spec: FieldSpec, n: int, degrees, rng: random.Random, max_tries: int = 500):
    """Two smooth hypersurfaces of the given degrees meeting transversally."""
    for _ in range(max_tries):
        f1 = random_homogeneous(spec, n + 1, degrees[0], rng)
        f2 = random_homogeneous(spec, n + 1, degrees[1], rng)
        if is_smooth_hypersurface(f1) and is_smooth_hypersurface(f2) and is_transversal_pair(f1, f2):
            return f1, f2
    raise PreconditionError("no transversal pair found; enlarge the field")


def random_plane_form(spec: FieldSpec, degree: int, rng: random.Random, max_tries: int = 200):
    """i_R i_v vol on A^3 for a random field v of the given degree, with isolated zeros."""
    for _ in range(max_tries):
        v = VectorField([random_homogeneous(spec, 3, degree, rng) for _ in range(3)])
        form = top_contraction([v], True)
        if not form.is_zero() and zero_locus_codim(form.coefficients()) >= 2:
            return form
    raise PreconditionError("could not sample a saturated plane form")


def random_linear_pullback(spec: FieldSpec, n: int, degree: int, rng: random.Random, mix: bool = True,
                           max_tries: int = 200):
    """A pulled-back plane foliation, optionally moved by a random linear change of coordinates.

    Plane forms whose differential has a constant annihilating covector are resampled: their
    pullbacks also lie on the logarithmic component, so they are not generic linear pullbacks.
    """
    for _ in range(max_tries):
        beta = random_plane_form(spec, degree, rng)
        if degree == 0 or not annihilating_covectors(d(beta)):
            break
    else:
        raise PreconditionError("could not sample a generic plane form")
    form = construct_linear_pullback(beta, n).form
    if mix:
        form = form.linear_pullback(random_invertible(spec, n + 1, rng))
    return form


def random_log12(spec: FieldSpec, n: int, rng: random.Random, max_tries: int = 200):
    """Log form of a hyperplane and a smooth quadric meeting it transversally,
    with residues (2, -1)."""
    for _ in range(max_tries):
        ell = random_homogeneous(spec, n + 1, 1, rng)
        f = random_homogeneous(spec, n + 1, 2, rng)
        if not (is_smooth_hypersurface(f) and is_transversal_pair(ell, f)):
            continue
        form = construct_log(LogPresentation([2, -1], [ell, f])).form
        if zero_locus_codim(form.coefficients()) >= 2:
            return form
    raise PreconditionError("could not sample a saturated log form")


# -- census -------------------------------------------------------------------------

@dataclass
class CensusReport:
    p: int
    k: int
    n: int
    degree: int
    mode: str
    seed: int | None
    examined: int = 0
    not_integrable: int = 0
    not_saturated: int = 0
    labels: Counter = field(default_factory=Counter)
    unclassified_examples: list = field(default_factory=list)

    @property
    def unclassified(self) -> int:
        return self.labels.get("Unclassified", 0)

    def merge(self, other: "CensusReport"):
        self.examined += other.examined
        self.not_integrable += other.not_integrable
        self.not_saturated += other.not_saturated
        self.labels.update(other.labels)
        self.unclassified_examples.extend(other.unclassified_examples)
        del self.unclassified_examples[5:]

    def to_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "n": self.n, "degree": self.degree, "mode": self.mode,
                "seed": self.seed, "examined": self.examined, "not_integrable": self.not_integrable,
                "not_saturated": self.not_saturated, "labels": dict(sorted(self.labels.items())),
                "unclassified": self.unclassified, "unclassified_examples": self.unclassified_examples}


def _flat_basis(spec, n, degree):
    basis = projective_form_basis(spec, n + 1, degree + 2)
    return [b.flat() for b in basis]


def _form_from_vector(spec, nvars, flat_basis, vec) -> DifferentialForm:
    acc = {}
    add, mul = spec.add, spec.mul
    for b, c in zip(flat_basis, vec):
        if not c:
            continue
        for key, v in b.items():
            acc[key] = add(acc.get(key, 0), mul(c, v))
    terms = {}
    for (idx, e), c in acc.items():
        if c:
            terms.setdefault(idx, {})[e] = c
    return DifferentialForm(spec, nvars, 1, {idx: Polynomial(spec, nvars, t) for idx, t in terms.items()})


def classify_census_form(form: DifferentialForm, degree: int):
    """Label string, or one of the filter names, for a candidate form."""
    if not wedge(form, d(form)).is_zero():
        return "not_integrable"
    if zero_locus_codim(form.coefficients()) < 2:
        return "not_saturated"
    label = classify_degree0(form) if degree == 0 else classify_degree1(form)
    return label.name


def _run_chunk(args):
    p, k, n, degree, vectors = args
    spec = FieldSpec.get(p, k)
    flat = _flat_basis(spec, n, degree)
    rep = CensusReport(p, k, n, degree, "", None)
    for vec in vectors:
        form = _form_from_vector(spec, n + 1, flat, vec)
        if form.is_zero():
            continue
        rep.examined += 1
        outcome = classify_census_form(form, degree)
        if outcome == "not_integrable":
            rep.not_integrable += 1
        elif outcome == "not_saturated":
            rep.not_saturated += 1
        else:
            rep.labels[outcome] += 1
            if outcome == "Unclassified" and len(rep.unclassified_examples) < 5:
                rep.unclassified_examples.append(str(form))
    return rep


def _projective_vectors(q: int, dim: int):
    """Every nonzero vector in F_q^dim whose first nonzero entry is 1."""
    for lead in range(dim):
        for tail in range(q ** (dim - lead - 1)):
            vec = [0] * lead + [1]
            t = tail
            for _ in range(dim - lead - 1):
                vec.append(t % q)
                t //= q
            yield vec


def census(p: int, k: int = 1, n: int = 3, degree: int = 0, mode: str = "full",
           n_samples: int = 10000, seed: int = 0, workers: int = 1) -> CensusReport:
    if degree not in (0, 1):
        raise PreconditionError("census supports degree 0 and 1")
    spec = FieldSpec.get(p, k)
    dim = len(_flat_basis(spec, n, degree))
    if mode == "full":
        if spec.q ** dim > FULL_LIMIT:
            raise PreconditionError(f"full census of {spec.q}^{dim} forms exceeds the size guard")
        vectors = list(_projective_vectors(spec.q, dim))
        report = CensusReport(p, k, n, degree, mode, None)
    elif mode == "sample":
        rng = random.Random(seed)
        vectors = []
        while len(vectors) < n_samples:
            vec = [rng.randrange(spec.q) for _ in range(dim)]
            if any(vec):
                vectors.append(vec)
        report = CensusReport(p, k, n, degree, mode, seed)
    else:
        raise PreconditionError(f"unknown census mode {mode!r}")
    workers = max(1, workers)
    size = -(-len(vectors) // workers)
    chunks = [(p, k, n, degree, vectors[i:i + size]) for i in range(0, len(vectors), size)]
    if workers == 1:
        parts = [_run_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    for part in parts:
        report.merge(part)
    return report
