"""Command-line entry point: ``pfoliation <command> ...``.

Every command except ``construct`` prints a JSON run report to stdout.
``construct`` prints a form-file, so its output can be fed straight back in.
Exit codes: 0 success, 2 bad input or failed precondition, 3 broken invariant.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import __version__
from .census import census, random_linear_pullback
from .classify import classify, kupka_codim, nc2_test
from .errors import InvariantError, ParseError, PreconditionError
from .extalg import DifferentialForm
from .field import FieldElement, FieldSpec
from .foliation import (LogPresentation, construct_closed, construct_exceptional,
                        construct_linear_pullback, construct_log, validate)
from .formats import (_load_json, dump_form, form_to_json, log_to_json, parse_form, parse_log,
                      parse_poly_file)
from .frobenius import (cartier_identity_sides, cartier_log, cartier_polynomial,
                        cartier_transform_form, p_curvature)
from .poly import parse_polynomial

SCHEMA_TAG = "pfoliation.run-report/1"
log = logging.getLogger("pfoliation")


class _Inputs:
    """Reads input files and remembers their digests for the report."""

    def __init__(self):
        self.digests = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError(f"{path} is not UTF-8 text", 1, 1) from None


def _report(command: str, argv, inputs: _Inputs, result) -> dict:
    return {"schema": SCHEMA_TAG, "version": __version__, "command": command,
            "argv": list(argv), "inputs": inputs.digests, "result": result}


def _spec(args) -> FieldSpec:
    if args.p is None:
        raise PreconditionError("--p is required")
    return FieldSpec.get(args.p, args.k)


# -- commands -------------------------------------------------------------------------

def cmd_check(args, inputs):
    form = parse_form(inputs.read(args.form_file))
    rep = validate(form)
    return rep.to_dict()


def cmd_construct(args, inputs):
    fam = args.family
    if fam == "exceptional":
        return construct_exceptional(args.p or 7, 3, args.k).form
    nvars = args.n + 1
    if fam == "closed":
        if not args.poly:
            raise PreconditionError("--poly is required for the closed family")
        return construct_closed(parse_polynomial(_spec(args), nvars, args.poly)).form
    if fam == "log":
        if args.log_spec:
            L = parse_log(inputs.read(args.log_spec))
        else:
            if not args.factors or not args.lambdas:
                raise PreconditionError("--factors and --lambdas are required for the log family")
            spec = _spec(args)
            factors = [parse_polynomial(spec, nvars, f) for f in args.factors.split(";")]
            lambdas = [FieldElement(spec, spec.parse(x)) for x in args.lambdas.split(";")]
            L = LogPresentation(lambdas, factors)
        return construct_log(L).form
    if fam == "pullback":
        if args.form:
            beta = parse_form(inputs.read(args.form))
            return construct_linear_pullback(beta, args.n).form
        rng = random.Random(args.seed)
        return random_linear_pullback(_spec(args), args.n, args.degree, rng, mix=False)
    raise PreconditionError(f"unknown family {fam!r}")


def cmd_pcurvature(args, inputs):
    form = parse_form(inputs.read(args.form_file))
    return p_curvature(form, args.max_degree).to_dict()


def cmd_cartier(args, inputs):
    text = inputs.read(args.input_file)
    obj = _load_json(text)
    if isinstance(obj, dict) and "lambdas" in obj:
        L = parse_log(text)
        CL = cartier_log(L)
        lhs, rhs = cartier_identity_sides(L)
        if lhs != rhs:
            raise InvariantError("Cartier image of the log form disagrees with the residue formula")
        out = {"kind": "log", "cartier_log": log_to_json(CL), "identity_holds": True}
        if len(L.factors) >= 2:
            out["transform_form"] = form_to_json(cartier_transform_form(L))
        return out
    form = parse_form(text)
    return {"kind": "form", "cartier": form_to_json(cartier_polynomial(form))}


def cmd_classify(args, inputs):
    form = parse_form(inputs.read(args.form_file))
    label = classify(form)
    out = label.to_dict()
    out["kupka_codim"] = kupka_codim(form) if form.q == 1 else None
    out["report"] = validate(form).to_dict()
    return out


def cmd_census(args, inputs):
    rep = census(args.p, args.k, args.n, args.degree, args.mode, args.n_samples, args.seed, args.workers)
    return rep.to_dict()


def cmd_nc2(args, inputs):
    spec = _spec(args)
    h = parse_poly_file(inputs.read(args.poly_file), spec, args.nvars)
    return {"polynomial": str(h), "nvars": h.nvars, "nc2": nc2_test(h)}


COMMANDS = {
    "check": cmd_check, "construct": cmd_construct, "pcurvature": cmd_pcurvature,
    "cartier": cmd_cartier, "classify": cmd_classify, "census": cmd_census, "nc2": cmd_nc2,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pfoliation", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate a form-file")
    s.add_argument("form_file")

    s = sub.add_parser("construct", help="build a form of a given family")
    s.add_argument("--family", required=True, choices=["closed", "log", "pullback", "exceptional"])
    s.add_argument("--p", type=int)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--poly", help="homogeneous polynomial F for the closed family")
    s.add_argument("--factors", help="';'-separated factor polynomials")
    s.add_argument("--lambdas", help="';'-separated residues in field-element syntax")
    s.add_argument("--log-spec", help="log-spec JSON file (alternative to --factors/--lambdas)")
    s.add_argument("--form", help="form-file with a 1-form on P^2 for the pullback family")
    s.add_argument("--degree", type=int, default=1, help="degree of a random plane foliation")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write the form-file here instead of stdout")

    s = sub.add_parser("pcurvature", help="p-curvature values and degeneracy divisor")
    s.add_argument("form_file")
    s.add_argument("--max-degree", type=int, default=None)

    s = sub.add_parser("cartier", help="Cartier operator on a closed form or a log-spec")
    s.add_argument("input_file")

    s = sub.add_parser("classify", help="component label of a degree 0, 1 or 2 form")
    s.add_argument("form_file")

    s = sub.add_parser("census", help="enumerate or sample projective 1-forms")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--degree", type=int, required=True, choices=[0, 1])
    s.add_argument("--mode", choices=["full", "sample"], default="full")
    s.add_argument("--n-samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("nc2", help="normal crossing in codimension two test")
    s.add_argument("poly_file")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--nvars", type=int, default=None)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    logging.basicConfig(level=os.environ.get("PFOLIATION_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    inputs = _Inputs()
    try:
        result = COMMANDS[args.command](args, inputs)
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "construct":
        text = dump_form(result) if isinstance(result, DifferentialForm) else json.dumps(result)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    json.dump(_report(args.command, argv, inputs, result), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
