"""Command-line front end: `canonica build|classify|verify <spec> [flags]`.

A ring spec is either a YAML/JSON file or a shorthand such as "det 3 2 1" or
"chain [triv 2, powq (y1,y2) 2]".  Every command emits a JSON envelope (with
--json) and a one-line verdict summary on stdout.  Exit codes depend only on
the verdict.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from itertools import product

import jsonschema
import yaml

from . import __version__, groebner
from .builders import (ChainSpec, ParameterError, RegularityFailure, build_chain, build_det_ring,
                       parse_chain_steps, power_ideal)
from .classification import (MATCHES_THEOREM, MISMATCH, PARTIAL, beta0_table, chain_candidate,
                             enumerate_semidualizing_det, hilbert_function_oracle, verify_chain_cardinality, verify_dagger,
                             verify_engine_properties, verify_eq07, verify_multiplicity_equality, verify_mult_map_suite,
                             verify_ordering, verify_prop_semidualizing_ideal)
from .divisors import NotFoundWithinBound
from .fields import FieldError, field_from_spec, is_prime
from .modules import module_from_ideal
from .parse import ParseError, parse_polynomial
from .polynomial import LEX, GREVLEX, PolyRing
from .quotient import QuotientRing

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_PARAM, EXIT_PARTIAL, EXIT_INAPPLICABLE = 0, 1, 2, 3, 4, 5

# verdict -> exit code; nothing else decides the exit code
VERDICT_EXIT = {
    "BUILT": EXIT_OK,
    "PASS": EXIT_OK,
    MATCHES_THEOREM: EXIT_OK,
    "FAIL": EXIT_FAIL,
    MISMATCH: EXIT_FAIL,
    "SCHEMA_ERROR": EXIT_SCHEMA,
    "PARAMETER_ERROR": EXIT_PARAM,
    PARTIAL: EXIT_PARTIAL,
    "INAPPLICABLE": EXIT_INAPPLICABLE,
}

SUITES = ("beta0", "eq07", "prop22", "multmap", "multiplicity", "ordering", "dagger", "engine")

_STEP_SCHEMA = {
    "oneOf": [
        {"type": "string", "minLength": 1},
        {"type": "object", "required": ["kind"], "properties": {"kind": {"type": "string"}}},
    ]
}

RING_SPEC_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "RingSpecFile",
    "type": "object",
    "required": ["construction"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "field": {
            "oneOf": [
                {"type": "object", "required": ["type", "p"], "additionalProperties": False,
                 "properties": {"type": {"const": "prime"}, "p": {"type": "integer"}}},
                {"type": "object", "required": ["type"], "additionalProperties": False,
                 "properties": {"type": {"const": "rationals"}}},
            ]
        },
        "construction": {
            "oneOf": [
                {"type": "object", "required": ["kind", "m", "n", "r"], "additionalProperties": False,
                 "properties": {"kind": {"const": "determinantal"}, "m": {"type": "integer"},
                                "n": {"type": "integer"}, "r": {"type": "integer"}}},
                {"type": "object", "required": ["kind", "steps"], "additionalProperties": False,
                 "properties": {"kind": {"const": "chain"}, "steps": {"type": "array", "items": _STEP_SCHEMA}}},
                {"type": "object", "required": ["kind", "vars"], "additionalProperties": False,
                 "properties": {"kind": {"const": "polynomial"},
                                "vars": {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"}},
                                "relations": {"type": "array", "items": {"type": "string"}},
                                "order": {"enum": ["grevlex", "lex"]}}},
            ]
        },
    },
}


_ERROR_PAYLOAD = {"type": "object", "required": ["error"], "properties": {"error": {"type": "string"}}}
_PAYLOADS = {
    "build": {"type": "object", "required": ["gb_size", "nvars", "homogeneous"],
              "properties": {"gb_size": {"type": "integer"}, "nvars": {"type": "integer"},
                             "homogeneous": {"type": "boolean"}, "dim": {"type": "integer"},
                             "hilbert": {"type": "string"}}},
    "classify": {"type": "object",
                 "required": ["ring", "predicted_classes", "found_classes", "ext_bound", "candidates", "verdict",
                              "upper_bound"],
                 "properties": {"candidates": {"type": "array", "items": {
                     "type": "object", "required": ["label", "verdict", "homothety", "first_nonvanishing_ext",
                                                    "ext_checked_to", "beta0"]}},
                     "upper_bound": {"enum": ["ENUMERATED", "THEOREM_ASSERTED"]}}},
    "verify": {"type": "object", "required": ["suite", "passed"],
               "properties": {"suite": {"type": "string"}, "passed": {"type": "boolean"}}},
}


def _payload_rule(name: str) -> dict:
    return {"if": {"properties": {"command": {"properties": {"name": {"const": name}}}}},
            "then": {"properties": {"payload": {"anyOf": [_PAYLOADS[name], _ERROR_PAYLOAD]}}}}


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ReportEnvelope",
    "type": "object",
    "required": ["schema_version", "tool", "spec", "spec_fingerprint", "command", "wall_time_s", "verdict",
                 "exit_code", "summary", "payload"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {"type": "object", "required": ["name", "version"]},
        "spec": {"type": ["object", "null"]},
        "spec_fingerprint": {"type": ["string", "null"], "pattern": "^[0-9a-f]{16}$"},
        "command": {"type": "object", "required": ["name", "scan", "ext_bound", "suite"],
                    "properties": {"name": {"enum": ["build", "classify", "verify"]}}},
        "wall_time_s": {"type": "number", "minimum": 0},
        "verdict": {"enum": sorted(VERDICT_EXIT)},
        "exit_code": {"type": "integer", "minimum": 0, "maximum": 5},
        "summary": {"type": "string"},
        "payload": {"type": "object"},
    },
    "allOf": [_payload_rule(n) for n in ("build", "classify", "verify")],
}


class SpecError(ValueError):
    """The ring spec is not valid RingSpecFile data (exit 2)."""


class Inapplicable(ValueError):
    """The command or suite does not apply to this ring (exit 5)."""


# ---------------------------------------------------------------------------
# spec ingestion


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_shorthand(text: str) -> dict:
    """"det m n r" or "chain [step, step, ...]" as RingSpecFile data."""
    text = " ".join(text.split())
    head, _, rest = text.partition(" ")
    if head in ("det", "determinantal"):
        try:
            m, n, r = (int(x) for x in rest.split())
        except ValueError:
            raise SpecError(f"expected 'det m n r', got {text!r}") from None
        return {"construction": {"kind": "determinantal", "m": m, "n": n, "r": r}}
    if head == "chain":
        body = rest.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise SpecError(f"expected 'chain [step, ...]', got {text!r}")
        return {"construction": {"kind": "chain", "steps": _split_top_level(body[1:-1])}}
    raise SpecError(f"not a spec file or shorthand: {text!r}")


def load_spec(tokens: list[str]) -> dict:
    """RingSpecFile data from a file path or shorthand tokens."""
    if len(tokens) == 1 and os.path.isfile(tokens[0]):
        try:
            with open(tokens[0], encoding="utf-8") as fh:
                data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SpecError(f"cannot parse {tokens[0]}: {exc}") from None
    else:
        data = parse_shorthand(" ".join(tokens))
    validate_spec(data)
    return data


def validate_spec(data) -> None:
    try:
        jsonschema.validate(data, RING_SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SpecError(f"schema error at {path}: {exc.message}") from None


def normalize_spec(data: dict, field_p: int | None = None, rationals: bool = False) -> dict:
    """Canonical form used for building and fingerprinting; applies field overrides."""
    field = dict(data.get("field") or {"type": "prime", "p": 32003})
    if rationals:
        field = {"type": "rationals"}
    elif field_p is not None:
        field = {"type": "prime", "p": field_p}
    if field["type"] == "prime" and not is_prime(field["p"]):
        raise FieldError(f"field characteristic {field['p']} is not prime")
    con = dict(data["construction"])
    if con["kind"] == "chain":
        steps = parse_chain_steps(con["steps"])
        con = {"kind": "chain", "steps": [{"kind": s.kind, **s.params} for s in steps]}
    elif con["kind"] == "polynomial":
        con = {"kind": "polynomial", "vars": list(con["vars"]), "relations": list(con.get("relations", [])),
               "order": con.get("order", "grevlex")}
    return {"field": field, "construction": con}


def spec_fingerprint(spec: dict) -> str:
    text = json.dumps(spec, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def spec_label(spec: dict) -> str:
    con = spec["construction"]
    if con["kind"] == "determinantal":
        label = f"det {con['m']} {con['n']} {con['r']}"
    elif con["kind"] == "chain":
        steps = parse_chain_steps(con["steps"])
        label = "chain [" + ", ".join(s.label() for s in steps) + "]"
    else:
        label = f"polynomial k[{','.join(con['vars'])}]/({len(con['relations'])} relations)"
    fld = spec["field"]
    return label + (" over QQ" if fld["type"] == "rationals" else f" over GF({fld['p']})")


class BuiltRing:
    """The ring of a normalized spec together with its construction object."""

    def __init__(self, spec: dict):
        self.spec = spec
        self.field = field_from_spec(spec["field"])
        con = spec["construction"]
        self.kind = con["kind"]
        self.det = self.chain = None
        if self.kind == "determinantal":
            self.det = build_det_ring(self.field, con["m"], con["n"], con["r"])
            self.ring = self.det.ring
        elif self.kind == "chain":
            self.chain = build_chain(ChainSpec(self.field, parse_chain_steps(con["steps"])))
            self.ring = self.chain.ring
        else:
            order = LEX if con["order"] == "lex" else GREVLEX
            S = PolyRing(self.field, con["vars"], order=order)
            try:
                rels = [parse_polynomial(t, S) for t in con["relations"]]
            except ParseError as exc:
                raise SpecError(f"relation does not parse: {exc}") from None
            self.ring = QuotientRing(S, rels)


# ---------------------------------------------------------------------------
# commands


def cmd_build(b: BuiltRing, args) -> tuple[str, dict, list[str]]:
    R = b.ring
    gb_size = len(R.gb_polys())
    payload = {"gb_size": gb_size, "nvars": R.nvars, "homogeneous": R.is_homogeneous()}
    if b.det is not None:
        det = b.det
        H = R.hilbert_series()
        payload.update({"ring": det.describe(), "dim": det.dim, "grade": det.grade_d,
                        "gorenstein": det.gorenstein, "hilbert": str(H),
                        "hilbert_numerator": list(H.coeffs), "pole_order": H.pole_order,
                        "degenerate": det.degenerate, "predicted_classes": det.predicted_classes(),
                        "predicted_cardinality": len(det.predicted_classes())})
        lines = [f"dim={det.dim} grade={det.grade_d} gorenstein={str(det.gorenstein).lower()} hilbert={H}",
                 f"gb-size={gb_size} predicted-classes={len(det.predicted_classes())}"]
        if det.degenerate:
            lines.append("degenerate: r = 0, the ring is the base field")
        return "BUILT", payload, lines
    if not R.is_homogeneous():
        payload.update({"dim": R.dim})
        return "BUILT", payload, [f"dim={R.dim} gb-size={gb_size} homogeneous=false"]
    H = R.hilbert_series()
    artinian = H.pole_order == 0
    payload.update({"dim": H.pole_order, "grade": R.nvars - H.pole_order, "hilbert": str(H),
                    "hilbert_numerator": list(H.coeffs), "pole_order": H.pole_order,
                    "local_artinian": artinian})
    lines = []
    if artinian:
        payload["length"] = H.multiplicity
        lines.append(f"length={H.multiplicity} local-artinian=true")
    else:
        lines.append(f"dim={H.pole_order} grade={R.nvars - H.pole_order} local-artinian=false")
    tail = f"hilbert={H} gb-size={gb_size}"
    if b.chain is not None:
        payload.update({"steps": [r.to_dict() for r in b.chain.records],
                        "predicted_cardinality": b.chain.predicted_cardinality})
        tail += f" predicted-classes={b.chain.predicted_cardinality}"
    lines.append(tail)
    return "BUILT", payload, lines


def cmd_classify(b: BuiltRing, args) -> tuple[str, dict, list[str]]:
    if b.det is not None:
        rep = enumerate_semidualizing_det(b.det, args.scan, args.ext_bound, threads=args.threads)
    elif b.chain is not None:
        rep = verify_chain_cardinality(b.chain, args.ext_bound)
    else:
        raise Inapplicable("classify needs a determinantal or chain construction")
    if b.det is not None:
        lines = [f"classes={rep.found_classes} predicted={rep.predicted_classes} upper-bound={rep.upper_bound}"]
    else:
        beta = [c["beta0"] for c in rep.candidates if c["verdict"] == "SEMIDUALIZING_UP_TO_BOUND"]
        lines = [f"class-count={rep.found_classes[0]} predicted={rep.predicted_classes[0]} beta0={beta} "
                 f"upper-bound={rep.upper_bound}"]
    for c in rep.candidates:
        if c["verdict"] != "SEMIDUALIZING_UP_TO_BOUND":
            why = (f"Ext^{c['first_nonvanishing_ext']} != 0" if c["first_nonvanishing_ext"] is not None
                   else f"homothety {c['homothety']}")
            lines.append(f"  reject {c['label']}: {why}")
    return rep.verdict, rep.to_dict(), lines


def _require_det(b: BuiltRing, suite: str, nondegenerate: bool = True):
    if b.det is None:
        raise Inapplicable(f"suite {suite} needs a determinantal construction")
    if nondegenerate and b.det.degenerate:
        raise Inapplicable(f"suite {suite} needs r >= 1")
    return b.det


def cmd_verify(b: BuiltRing, args) -> tuple[str, dict, list[str]]:
    suite = args.suite
    if suite is None:
        raise SpecError(f"verify needs --suite, one of {', '.join(SUITES)}")
    if suite == "beta0":
        rep = beta0_table(_require_det(b, suite))
    elif suite == "eq07":
        det = _require_det(b, suite)
        if det.n < 2:
            raise Inapplicable("suite eq07 needs n >= 2")
        rep = verify_eq07(det)
    elif suite == "prop22":
        det = _require_det(b, suite)
        if det.gorenstein:
            raise Inapplicable("suite prop22 needs a non-Gorenstein ring (m != n)")
        rep = verify_prop_semidualizing_ideal(det, args.ext_bound if args.ext_bound is not None else 5)
    elif suite == "multmap":
        rep = verify_mult_map_suite(_require_det(b, suite))
    elif suite == "multiplicity":
        if b.det is not None:
            det = _require_det(b, suite)
            mods = [module_from_ideal(power_ideal(det, c)) for c in det.predicted_classes()]
            mods.append(module_from_ideal(det.p_ideal))
        elif b.chain is not None:
            mods = [chain_candidate(b.chain, ch) for ch in _choices(b.chain.s)]
        else:
            raise Inapplicable("suite multiplicity needs a determinantal or chain construction")
        rep = verify_multiplicity_equality(b.ring, mods)
        if b.det is not None and b.det.r == 1:
            oracle = hilbert_function_oracle(b.det)
            rep.details["hilbert_oracle"] = oracle.details
            rep.passed = rep.passed and oracle.passed
    elif suite == "ordering":
        rep = verify_ordering(_require_det(b, suite), args.ext_bound)
    elif suite == "dagger":
        rep = verify_dagger(_require_det(b, suite, nondegenerate=False), args.scan)
    elif suite == "engine":
        # worker count fixed at 4 so the payload does not depend on --threads
        rep = verify_engine_properties(_require_det(b, suite), scan=args.scan if args.scan is not None else 2,
                                       threads=4)
    else:
        raise SpecError(f"unknown suite {suite!r}")
    verdict = "PASS" if rep.passed else "FAIL"
    lines = [f"suite={suite} passed={str(rep.passed).lower()}"]
    return verdict, rep.to_dict(), lines


def _choices(s: int):
    return list(product((0, 1), repeat=s))


COMMANDS = {"build": cmd_build, "classify": cmd_classify, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# envelope


def make_envelope(command: dict, spec: dict | None, verdict: str, payload: dict, summary: str,
                  wall_time: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "canonica", "version": __version__},
        "spec": spec,
        "spec_fingerprint": spec_fingerprint(spec) if spec is not None else None,
        "command": command,
        "wall_time_s": round(wall_time, 3),
        "verdict": verdict,
        "exit_code": VERDICT_EXIT[verdict],
        "summary": summary,
        "payload": payload,
    }


def dump_envelope(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def scrub_wall_time(env: dict) -> dict:
    """A copy with the wall-time field zeroed, for golden comparisons."""
    out = dict(env)
    out["wall_time_s"] = 0.0
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="canonica", description="Semidualizing-module classification checks.")
    ap.add_argument("--version", action="version", version=f"canonica {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("spec", nargs="+", help="ring-spec file, or shorthand such as: det 3 2 1")
        p.add_argument("--scan", type=int, default=None, help="class labels |c| <= N are tested")
        p.add_argument("--ext-bound", type=int, default=None, help="highest Ext index checked")
        p.add_argument("--json", default=None, metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--threads", type=int, default=1, help="worker processes; output does not depend on it")
        p.add_argument("--verify-gb", action="store_true", help="re-check every Groebner basis")
        p.add_argument("--field-p", type=int, default=None, help="override the field with GF(p)")
        p.add_argument("--rationals", action="store_true", help="override the field with QQ")
        p.add_argument("--suite", choices=SUITES, default=None, help="verification suite (verify only)")
    return ap


def run(args: argparse.Namespace) -> tuple[int, dict, list[str]]:
    """Execute one parsed command; returns (exit code, envelope, human-readable lines)."""
    command = {"name": args.command, "scan": args.scan, "ext_bound": args.ext_bound, "suite": args.suite}
    start = time.perf_counter()
    spec = None
    lines: list[str] = []
    saved_verify = groebner.VERIFY_GB
    try:
        if args.threads < 1:
            raise ParameterError("--threads must be at least 1")
        for flag in ("scan", "ext_bound"):
            val = getattr(args, flag)
            if val is not None and val < 0:
                raise ParameterError(f"--{flag.replace('_', '-')} must be non-negative")
        spec = normalize_spec(load_spec(args.spec), args.field_p, args.rationals)
        if args.verify_gb:
            groebner.VERIFY_GB = True
        built = BuiltRing(spec)
        verdict, payload, lines = COMMANDS[args.command](built, args)
        summary = f"{args.command} {spec_label(spec)}: {verdict}"
    except SpecError as exc:
        verdict, payload, summary = "SCHEMA_ERROR", {"error": str(exc)}, f"schema error: {exc}"
    except (ParameterError, RegularityFailure, FieldError, NotFoundWithinBound) as exc:
        verdict, payload, summary = "PARAMETER_ERROR", {"error": str(exc)}, f"parameter violation: {exc}"
    except Inapplicable as exc:
        verdict, payload, summary = "INAPPLICABLE", {"error": str(exc)}, f"inapplicable: {exc}"
    finally:
        groebner.VERIFY_GB = saved_verify
    env = make_envelope(command, spec, verdict, payload, summary, time.perf_counter() - start)
    return VERDICT_EXIT[verdict], env, lines


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    code, env, lines = run(args)
    if args.json == "-":
        sys.stdout.write(dump_envelope(env))
    else:
        for line in lines:
            print(line)
        print(env["summary"])
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(dump_envelope(env))
    return code


if __name__ == "__main__":
    sys.exit(main())
