"""Form-file, log-spec and poly-file formats.

Serialization is canonical (fixed key order, terms sorted by index tuple,
polynomials in degrevlex), so parse followed by dump reproduces the bytes of
any file written by ``dump_form``.
"""
from __future__ import annotations

import json
import re

from .errors import ParseError, PreconditionError
from .extalg import DifferentialForm
from .field import FieldElement, FieldSpec
from .foliation import LogPresentation
from .poly import Polynomial, format_polynomial, parse_polynomial


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None


def _locate(text: str, needle: str):
    """Line and column of the first occurrence of needle, for error messages."""
    pos = text.find(needle)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _field(obj, text):
    if not isinstance(obj, dict) or "field" not in obj:
        raise ParseError("missing 'field' object", *_locate(text, "{"))
    try:
        return FieldSpec.from_json(obj["field"])
    except PreconditionError as exc:
        raise ParseError(str(exc), *_locate(text, '"field"')) from None


def _poly(spec, nvars, coeff, text):
    if not isinstance(coeff, str):
        raise ParseError(f"coefficient must be a string, got {coeff!r}", *_locate(text, str(coeff)))
    try:
        return parse_polynomial(spec, nvars, coeff)
    except ParseError as exc:
        line, col = _locate(text, json.dumps(coeff))
        inner = exc.column or 1
        raise ParseError(str(exc).split(" (line")[0], line, col + inner) from None


def form_to_json(form: DifferentialForm) -> dict:
    return {
        "field": form.spec.to_json(),
        "nvars": form.nvars,
        "q": form.q,
        "terms": [{"idx": list(idx), "coeff": format_polynomial(form.terms[idx])}
                  for idx in sorted(form.terms)],
    }


def dump_form(form: DifferentialForm) -> str:
    return json.dumps(form_to_json(form), indent=2) + "\n"


def parse_form(text: str) -> DifferentialForm:
    obj = _load_json(text)
    spec = _field(obj, text)
    try:
        nvars, q, terms = int(obj["nvars"]), int(obj["q"]), obj["terms"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("form-file needs integer 'nvars', 'q' and a 'terms' list", 1, 1) from None
    if not isinstance(terms, list):
        raise ParseError("'terms' must be a list", *_locate(text, '"terms"'))
    out = {}
    for t in terms:
        try:
            idx = tuple(int(i) for i in t["idx"])
            coeff = t["coeff"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"bad term {t!r}", *_locate(text, '"idx"')) from None
        if idx in out:
            raise ParseError(f"repeated index tuple {list(idx)}", *_locate(text, '"idx"'))
        out[idx] = _poly(spec, nvars, coeff, text)
    try:
        return DifferentialForm(spec, nvars, q, out)
    except PreconditionError as exc:
        raise ParseError(str(exc), 1, 1) from None


def log_to_json(L: LogPresentation) -> dict:
    spec = L.spec
    return {
        "field": spec.to_json(),
        "nvars": L.factors[0].nvars,
        "lambdas": [spec.format(x.code) for x in L.lambdas],
        "factors": [format_polynomial(f) for f in L.factors],
    }


def dump_log(L: LogPresentation) -> str:
    return json.dumps(log_to_json(L), indent=2) + "\n"


def parse_log(text: str) -> LogPresentation:
    obj = _load_json(text)
    spec = _field(obj, text)
    try:
        nvars = int(obj["nvars"])
        lambdas, factors = obj["lambdas"], obj["factors"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("log-spec needs 'nvars', 'lambdas' and 'factors'", 1, 1) from None
    lams = []
    for lam in lambdas:
        try:
            lams.append(FieldElement(spec, spec.parse(str(lam))))
        except ParseError:
            raise ParseError(f"bad residue {lam!r}", *_locate(text, str(lam))) from None
    polys = [_poly(spec, nvars, f, text) for f in factors]
    try:
        return LogPresentation(lams, polys)
    except PreconditionError as exc:
        raise ParseError(str(exc), *_locate(text, '"factors"')) from None


_VAR = re.compile(r"x(\d+)")


def parse_poly_file(text: str, spec: FieldSpec, nvars: int | None = None) -> Polynomial:
    """One polynomial per file; blank lines and '#' comments are ignored."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())
             if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise ParseError(f"expected exactly one polynomial line, found {len(lines)}", 1, 1)
    lineno, body = lines[0]
    if nvars is None:
        found = [int(m) for m in _VAR.findall(body)]
        nvars = max(found) + 1 if found else 1
    try:
        return parse_polynomial(spec, nvars, body)
    except ParseError as exc:
        raise ParseError(str(exc).split(" (line")[0], lineno, exc.column) from None


def dump_poly(f: Polynomial) -> str:
    return format_polynomial(f) + "\n"
