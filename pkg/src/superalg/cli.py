"""Command line front end: JSON algebra descriptions in, JSON certificates out.

    superalg <classify|first-kind|graded-albert|second-kind|cor|clifford|verify>
             --in spec.json [--out cert.json] [--jobs N] [--search-bound B]

A spec is {"field": ..., "algebra": <recipe>, "extension": {"t": t}}; a list
of specs is processed as a batch and produces a list of documents.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 some verdict
Unsupported, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .algebra import SuperAlgebra, classify_css, is_division_superalgebra
from .constructors import (
    clifford,
    conjugate_superalgebra,
    graded_quaternion,
    graded_tensor,
    matrix_superalgebra,
    quadratic_graded,
    superopposite,
    trivially_graded,
)
from .errors import (
    SuperalgError,
    UnsupportedA0,
    UnsupportedCenterFactorization,
    UnsupportedDimension,
    UnsupportedField,
    UnsupportedShape,
)
from .fields import DEFAULT_SEARCH_BOUND, GFElem, QElem, QuadraticField, field_from_json, fmt_scalar
from .firstkind import (
    Certificate,
    SquareClass,
    Verdict,
    check_z_square_corollary,
    clifford_first_kind,
    decide_superantiautomorphism,
    decide_superinvolution_first_kind,
    normalize_to_grading,
    superanti_square_invariant,
)
from .maps import GradedMap, grading_automorphism, is_superantiautomorphism, is_superinvolution, square
from .secondkind import (
    QuadExtensionContext,
    build_corestriction,
    centralizer_basis,
    decide_superinvolution_second_kind,
    nu_square_second_kind_obstruction,
    odd_type_second_kind,
    quadratic_cor_spanning_set,
    starter_semilinear,
    xi_square_class,
)

SCHEMA = "v1"
EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_UNSUPPORTED, EXIT_VERIFY = 0, 2, 3, 4, 5
# inputs that are well formed but outside what the decision procedures cover
UNSUPPORTED_ERRORS = (UnsupportedA0, UnsupportedCenterFactorization, UnsupportedDimension,
                      UnsupportedField, UnsupportedShape)
COMMANDS = ("classify", "first-kind", "graded-albert", "second-kind", "cor", "clifford", "verify")


class ParseError(Exception):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# ---------------------------------------------------------------------------
# parsing


def parse_scalar(F, v, path: str):
    try:
        if isinstance(v, bool):
            raise ValueError("booleans are not scalars")
        if isinstance(v, str):
            return F.parse(v)
        return F(v)
    except (ValueError, TypeError, SuperalgError) as e:
        raise ParseError(path, f"bad scalar {v!r}: {e}") from None


def _int(v, path):
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(path, f"expected an integer, got {v!r}")
    return v


def _raw_algebra(F, obj, path) -> SuperAlgebra:
    if not isinstance(obj, dict):
        raise ParseError(path, "raw needs an object with dim, parity, constants, unit")
    for key in ("dim", "parity", "constants", "unit"):
        if key not in obj:
            raise ParseError(f"{path}.{key}", "missing")
    n = _int(obj["dim"], f"{path}.dim")
    parity = obj["parity"]
    if not isinstance(parity, list) or len(parity) != n or any(p not in (0, 1) for p in parity):
        raise ParseError(f"{path}.parity", f"expected {n} entries in {{0, 1}}")
    unit = obj["unit"]
    if not isinstance(unit, list) or len(unit) != n:
        raise ParseError(f"{path}.unit", f"expected {n} scalars")
    unit = [parse_scalar(F, c, f"{path}.unit[{k}]") for k, c in enumerate(unit)]
    table = [[[] for _ in range(n)] for _ in range(n)]
    consts = obj["constants"]
    if not isinstance(consts, list):
        raise ParseError(f"{path}.constants", "expected a list of [i, j, k, c] entries")
    for t, entry in enumerate(consts):
        p = f"{path}.constants[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(p, "expected [i, j, k, c]")
        i, j, k = (_int(x, p) for x in entry[:3])
        if not all(0 <= x < n for x in (i, j, k)):
            raise ParseError(p, "index out of range")
        c = parse_scalar(F, entry[3], f"{p}[3]")
        if c:
            table[i][j].append((k, c))
    return SuperAlgebra(F, parity, table, unit)


def parse_algebra(F, obj, path: str = "algebra") -> SuperAlgebra:
    """Build the algebra described by a recipe tree."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError(path, "expected an object with exactly one recipe key")
    (key, val), = obj.items()
    p = f"{path}.{key}"
    if key == "quadratic":
        return quadratic_graded(F, parse_scalar(F, val, p))
    if key == "gquat":
        if not isinstance(val, list) or len(val) != 2:
            raise ParseError(p, "expected [a, b]")
        return graded_quaternion(F, parse_scalar(F, val[0], f"{p}[0]"), parse_scalar(F, val[1], f"{p}[1]"))
    if key == "matrix":
        if isinstance(val, list) and len(val) == 2:
            val = {"n": val[0], "m": val[1]}
        if not isinstance(val, dict) or "n" not in val or "m" not in val:
            raise ParseError(p, "expected {n, m} or [n, m]")
        D = parse_algebra(F, val["D"], f"{p}.D") if val.get("D") is not None else None
        return matrix_superalgebra(_int(val["n"], f"{p}.n"), _int(val["m"], f"{p}.m"), D, field=F)
    if key == "tensor":
        if not isinstance(val, list) or len(val) != 2:
            raise ParseError(p, "expected [left, right]")
        T = graded_tensor(parse_algebra(F, val[0], f"{p}[0]"), parse_algebra(F, val[1], f"{p}[1]"))
        T.validate()
        return T
    if key == "clifford":
        if not isinstance(val, list) or not val:
            raise ParseError(p, "expected a nonempty list of coefficients")
        return clifford(F, [parse_scalar(F, c, f"{p}[{k}]") for k, c in enumerate(val)])
    if key == "trivially_graded":
        return trivially_graded(parse_algebra(F, val, p))
    if key == "sop":
        return superopposite(parse_algebra(F, val, p))
    if key == "conj":
        return conjugate_superalgebra(parse_algebra(F, val, p))
    if key == "raw":
        return _raw_algebra(F, val, p)
    raise ParseError(path, f"unknown recipe key {key!r}")


def parse_spec(spec):
    """(field, algebra, extension context or None) from a spec object."""
    if not isinstance(spec, dict):
        raise ParseError("$", "a spec must be a JSON object")
    ext = spec.get("extension")
    ctx = None
    if ext is not None:
        if not isinstance(ext, dict) or "t" not in ext:
            raise ParseError("extension", "expected {\"t\": <integer>}")
        ctx = QuadExtensionContext(_int(ext["t"], "extension.t"))
    if "field" in spec:
        try:
            F = field_from_json(spec["field"])
        except SuperalgError as e:
            raise ParseError("field", str(e)) from None
    elif ctx is not None:
        F = ctx.K
    else:
        raise ParseError("field", "missing")
    if "algebra" not in spec:
        raise ParseError("algebra", "missing")
    return F, spec["algebra"], ctx


# ---------------------------------------------------------------------------
# rendering


def render_scalar(c):
    if c is None:
        return None
    if isinstance(c, (Fraction, QElem, GFElem, int)):
        return fmt_scalar(c)
    if isinstance(c, SquareClass):
        return {"square_class_of": fmt_scalar(c.value), "trivial": c.is_trivial}
    return str(c)


def render_map(phi: Optional[GradedMap]):
    if phi is None:
        return None
    return {
        "matrix": [[fmt_scalar(c) for c in row] for row in phi.matrix],
        "parity": phi.parity,
        "semilinear": phi.semilinear,
    }


def parse_map(F, obj, path="witness") -> GradedMap:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ParseError(path, "expected {matrix, parity, semilinear}")
    rows = obj["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) and len(r) == len(rows) for r in rows):
        raise ParseError(f"{path}.matrix", "expected a square matrix")
    m = tuple(tuple(parse_scalar(F, c, f"{path}.matrix[{i}][{j}]") for j, c in enumerate(r)) for i, r in enumerate(rows))
    return GradedMap(m, int(obj.get("parity", 0)), bool(obj.get("semilinear", False)))


def cert_section(cert: Certificate, prop: str) -> dict:
    return {
        "property": prop,
        "verdict": cert.verdict.value,
        "reason_tag": cert.reason_tag,
        "witness": render_map(cert.witness),
        "invariant_data": render_scalar(cert.invariant_data),
        "verification_trace": list(cert.verification_trace),
    }


def _report(A, rep) -> dict:
    out = {
        "dim": A.dim,
        "type": rep.type,
        "is_central": rep.is_central,
        "is_graded_simple": rep.is_graded_simple,
        "z_squared": render_scalar(rep.a),
        "z": None if rep.z is None else [fmt_scalar(c) for c in rep.z.coords],
        "split": rep.split,
        "a0_summary": rep.a0_summary,
        "notes": list(rep.notes),
    }
    try:
        out["division"] = is_division_superalgebra(A)
    except SuperalgError as e:
        out["division"] = None
        out["notes"].append(f"division test unavailable: {e}")
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_classify(A, ctx, bound) -> dict:
    rep = classify_css(A)
    return {"verdict": None, "reason_tag": "classification", "classification": _report(A, rep), "sections": []}


def cmd_first_kind(A, ctx, bound) -> dict:
    inv = decide_superinvolution_first_kind(A, bound)
    anti = decide_superantiautomorphism(A, bound)
    return {"main": cert_section(inv, "superinvolution"), "sections": [cert_section(anti, "superantiautomorphism")]}


def cmd_graded_albert(A, ctx, bound) -> dict:
    anti = decide_superantiautomorphism(A, bound)
    sections = [cert_section(anti, "superantiautomorphism")]
    if anti.witness is None:
        main = Certificate(anti.verdict if anti.verdict is not Verdict.EXISTS else Verdict.UNSUPPORTED,
                           None, anti.reason_tag, None, ["no superantiautomorphism witness to normalize"])
        return {"main": cert_section(main, "nu_square"), "sections": sections}
    cert = normalize_to_grading(A, anti.witness)
    rep = classify_css(A)
    details = {}
    if rep.type != "odd":
        inv = superanti_square_invariant(A, anti.witness)
        cert.invariant_data = inv
        if rep.type == "even":
            details["z_square_corollary"] = check_z_square_corollary(A, anti.witness)
    return {"main": cert_section(cert, "nu_square"), "sections": sections, "details": details}


def _need_ctx(A, ctx):
    if ctx is None:
        if not isinstance(A.field, QuadraticField):
            raise ParseError("extension", "second-kind commands need an extension {t} or a field Qsqrt")
        ctx = QuadExtensionContext(A.field.d)
    return ctx


def cmd_second_kind(A, ctx, bound) -> dict:
    ctx = _need_ctx(A, ctx)
    cert = decide_superinvolution_second_kind(A, ctx, bound)
    sections = []
    details = {"extension": ctx.to_json()}
    cls = cert.extra.get("cor_class")
    if cls is not None:
        details["cor_class"] = {"b_parity": cls.b_parity, "c": fmt_scalar(cls.c),
                                "quaternion_data": None if cls.quaternion_data is None else [cls.quaternion_data[0], fmt_scalar(cls.quaternion_data[1])],
                                "division_flag": cls.division_flag}
    rep = classify_css(A)
    if rep.type == "odd":
        try:
            sections.append(cert_section(odd_type_second_kind(A, ctx), "superinvolution"))
        except SuperalgError as e:
            details["odd_type"] = f"not applicable: {e}"
    try:
        sections.append(cert_section(nu_square_second_kind_obstruction(A, ctx, bound), "nu_square"))
    except SuperalgError as e:
        details["nu_square"] = f"not applicable: {e}"
    return {"main": cert_section(cert, "superinvolution"), "sections": sections, "details": details}


def cmd_cor(A, ctx, bound) -> dict:
    ctx = _need_ctx(A, ctx)
    cr = build_corestriction(A, ctx)
    crep = classify_css(cr.cor)
    details = {
        "extension": ctx.to_json(),
        "dim_T_over_K": cr.T.dim,
        "dim_cor_over_F": cr.cor.dim,
        "cor": _report(cr.cor, crep),
        "cor_basis_in_T": [[fmt_scalar(c) for c in b] for b in cr.basis],
        "pi_multiplicative": cr.pi_multiplicative,
    }
    trace = list(cr.trace)
    if A.dim == 2 and A.odd:
        span = quadratic_cor_spanning_set(A)
        details["spanning_set"] = {
            "elements": ["1(x)1", "theta u(x)u", "u(x)1 + 1(x)u", "theta u(x)1 - theta 1(x)u"],
            "in_cor": [cr.in_cor(v) for v in span],
        }
    xi = starter_semilinear(A)
    verdict, tag, inv = Verdict.UNSUPPORTED, "nostarter", None
    if xi is not None:
        cls = xi_square_class(A, xi, ctx)
        C = centralizer_basis(A, xi, cr)
        details["centralizer_dim_over_F"] = len(C)
        details["cor_class"] = {"b_parity": cls.b_parity, "c": fmt_scalar(cls.c)}
        trivial = cls.split
        trace.append(f"cor(A) ~ 1: {trivial}")
        verdict = Verdict.EXISTS if trivial else Verdict.NOT_EXISTS
        tag = "le:xisquare(i)" if cls.b_parity == 0 else "le:xisquare(ii)"
        inv = cls.c
    main = Certificate(verdict, None, tag, inv, trace)
    return {"main": cert_section(main, "cor_trivial"), "sections": [], "details": details}


def cmd_clifford(A, ctx, bound) -> dict:
    q = getattr(A.recipe, "coeffs", None)
    if q is None:
        raise ParseError("algebra", "clifford command needs {\"clifford\": [...]}")
    cert = clifford_first_kind(list(q), A.field, bound)
    return {"main": cert_section(cert, "superinvolution"), "sections": []}


HANDLERS = {
    "classify": cmd_classify,
    "first-kind": cmd_first_kind,
    "graded-albert": cmd_graded_albert,
    "second-kind": cmd_second_kind,
    "cor": cmd_cor,
    "clifford": cmd_clifford,
}


def run_command(command: str, spec, bound: Optional[int] = None) -> dict:
    """One certificate document; raises ParseError or SuperalgError."""
    F, alg, ctx = parse_spec(spec)
    A = parse_algebra(F, alg)
    body = HANDLERS[command](A, ctx, bound)
    doc = {
        "schema": SCHEMA,
        "tool": f"superalg {__version__}",
        "command": command,
        "input": spec,
    }
    if "main" in body:
        doc.update(body["main"])
    else:
        doc.update({k: v for k, v in body.items() if k != "sections"})
    doc["sections"] = body.get("sections", [])
    if body.get("details"):
        doc["details"] = body["details"]
    return doc


# ---------------------------------------------------------------------------
# verification


def _check_section(A, sec) -> Optional[str]:
    """None when the section's witness satisfies its property."""
    if sec.get("witness") is None:
        return None
    phi = parse_map(A.field, sec["witness"])
    prop = sec.get("property")
    try:
        if prop == "superinvolution":
            chk = is_superinvolution(A, phi)
        elif prop == "superantiautomorphism":
            chk = is_superantiautomorphism(A, phi)
        elif prop == "nu_square":
            chk = is_superantiautomorphism(A, phi)
            if chk and square(phi) != grading_automorphism(A):
                return "phi^2 != nu"
        else:
            return f"unknown property {prop!r}"
    except SuperalgError as e:
        # a singular or wrongly sized witness is a failed check, not bad input
        return f"{type(e).__name__}: {e}"
    return None if chk else (chk.violation or "check failed")


def _strip(doc):
    return {k: v for k, v in doc.items() if k not in ("tool",)}


def cmd_verify(doc, bound: Optional[int] = None) -> Optional[str]:
    """None when the document passes; otherwise the first failure."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA or doc.get("command") not in HANDLERS:
        raise ParseError("$", "not a v1 certificate document")
    F, alg, ctx = parse_spec(doc["input"])
    A = parse_algebra(F, alg)
    for sec in [doc] + list(doc.get("sections", [])):
        if sec.get("verdict") == Verdict.EXISTS.value or sec.get("witness") is not None:
            err = _check_section(A, sec)
            if err:
                return f"{sec.get('property')}: {err}"
    # verdicts without witnesses are re-derived
    fresh = run_command(doc["command"], doc["input"], bound)
    for key in ("verdict", "reason_tag"):
        if fresh.get(key) != doc.get(key):
            return f"{key} differs on recomputation: {doc.get(key)!r} vs {fresh.get(key)!r}"
    for old, new in zip(doc.get("sections", []), fresh.get("sections", [])):
        if old.get("verdict") != new.get("verdict"):
            return f"{old.get('property')} verdict differs on recomputation"
    return None


# ---------------------------------------------------------------------------
# main


def _one(args):
    command, spec, bound = args
    try:
        if command == "verify":
            err = cmd_verify(spec, bound)
            return {"ok": err is None, "error": err}, (EXIT_OK if err is None else EXIT_VERIFY)
        doc = run_command(command, spec, bound)
        code = EXIT_UNSUPPORTED if doc.get("verdict") == Verdict.UNSUPPORTED.value else EXIT_OK
        return doc, code
    except ParseError as e:
        return {"error": "parse", "location": e.path, "message": str(e)}, EXIT_PARSE
    except UNSUPPORTED_ERRORS as e:
        return {"error": "unsupported", "kind": type(e).__name__, "message": str(e)}, EXIT_UNSUPPORTED
    except SuperalgError as e:
        return {"error": "validation", "kind": type(e).__name__, "message": str(e)}, EXIT_VALIDATION


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="superalg", description="Superalgebra classification and superinvolution certificates.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--in", dest="inp", required=True, help="spec or certificate JSON file ('-' for stdin)")
    ap.add_argument("--out", help="write the result here instead of stdout")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for batch input")
    ap.add_argument("--search-bound", type=int, default=None, help="height bound for witness searches")
    args = ap.parse_args(argv)

    bound = args.search_bound
    env = os.environ.get("SUPERALG_SEARCH_BOUND")
    if env:
        try:
            bound = int(env)
        except ValueError:
            print(f"SUPERALG_SEARCH_BOUND={env!r} is not an integer", file=sys.stderr)
            return EXIT_PARSE
    if bound is None:
        bound = DEFAULT_SEARCH_BOUND

    try:
        text = sys.stdin.read() if args.inp == "-" else open(args.inp, encoding="utf-8").read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        print(dumps({"error": "parse", "location": "$", "message": str(e)}), end="", file=sys.stderr)
        return EXIT_PARSE

    batch = isinstance(data, list)
    items = data if batch else [data]
    work = [(args.command, it, bound) for it in items]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_one, work))
    else:
        results = [_one(w) for w in work]

    docs = [r[0] for r in results]
    out = dumps(docs if batch else docs[0])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    codes = [r[1] for r in results]
    for c in (EXIT_PARSE, EXIT_VALIDATION, EXIT_VERIFY, EXIT_UNSUPPORTED):
        if c in codes:
            if c in (EXIT_PARSE, EXIT_VALIDATION, EXIT_VERIFY):
                for d in docs:
                    if "error" in d and d.get("error") or d.get("ok") is False:
                        print(d.get("message") or d.get("error"), file=sys.stderr)
                        break
            return c
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
