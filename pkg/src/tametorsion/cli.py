"""Command-line entry point: ``tametorsion <command> [options]``.

Exit status is 0 on success or PASS, 2 when a verdict fails, 1 on errors.
Every JSON document is validated against the schemas shipped in
``tametorsion/schemas`` before it is written.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

import jsonschema

from .census import ImageVerdict, census
from .certify import certify
from .construct import CurveSpec, assemble
from .endo import endo_structure, verify_pn_via_eigenvalues
from .errors import TameTorsionError
from .intpoly import IntPoly

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2
WORKERS_ENV = "TAMETORSION_WORKERS"
COMMANDS = ("construct", "endo", "certify", "frobenius", "pn-check")


@dataclass
class RunConfig:
    command: str
    genus: int | None = None
    prime: int | None = None
    n: int | None = None
    kisin_depth: int | None = None
    ell_bound: int | None = None
    n_min: int = 3
    n_max: int = 200
    poly: str | None = None
    budget: int = 10**7
    self_check: bool = False
    input: str | None = None
    output: str | None = None
    format: str = "json"
    seed: int = 0
    workers: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        need = {
            "construct": ("genus", "prime"),
            "endo": ("n", "prime"),
            "certify": ("input",),
            "frobenius": ("ell_bound",),
            "pn-check": (),
        }[self.command]
        missing = [name for name in need if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--" + m.replace("_", "-") for m in missing)
            raise ValueError(f"{self.command} requires {flags}")
        if self.command == "frobenius":
            sources = sum(x is not None for x in (self.input, self.poly, self.genus))
            if sources != 1:
                raise ValueError("frobenius takes exactly one of --input, --poly, --genus")
            if self.input is None and self.prime is None:
                raise ValueError("frobenius requires --prime unless --input is given")
        if self.format not in ("json", "pretty"):
            raise ValueError(f"unknown format {self.format!r}")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("tametorsion").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc: dict, schema: str) -> dict:
    jsonschema.validate(doc, load_schema(schema))
    return doc


def dumps(doc: dict, fmt: str) -> str:
    if fmt == "pretty":
        return json.dumps(doc, indent=2)
    return json.dumps(doc, separators=(",", ":"))


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def read_curve(path: str) -> CurveSpec:
    """Accept either a bare CurveSpec or a certificate document wrapping one."""
    doc = _read_json(path)
    if isinstance(doc, dict) and "curve" in doc:
        doc = doc["curve"]
    validate(doc, "curve_spec")
    return CurveSpec.from_json(doc)


def parse_poly(text: str) -> IntPoly:
    """Comma-separated ascending coefficients, e.g. "-1,0,0,1" for x^3 - 1."""
    return IntPoly(int(c) for c in text.split(","))


def _emit(docs: Iterable[str], out: TextIO) -> None:
    for d in docs:
        out.write(d + "\n")


def _construct(cfg: RunConfig, out: TextIO) -> int:
    curve = assemble(cfg.genus, cfg.prime, cfg.kisin_depth, workers=cfg.workers)
    cert = certify(curve)
    _emit([dumps(validate(cert.to_json(), "certificate"), cfg.format)], out)
    return EXIT_OK if cert.overall.value == "PASS" else EXIT_FAIL


def _certify(cfg: RunConfig, out: TextIO) -> int:
    cert = certify(read_curve(cfg.input))
    _emit([dumps(validate(cert.to_json(), "certificate"), cfg.format)], out)
    for entry in cert.failing():
        reason = (entry.witness or {}).get("reason", "check failed")
        print(f"FAIL {entry.justification.value} at {entry.scope}: {reason}", file=sys.stderr)
    return EXIT_OK if cert.overall.value == "PASS" else EXIT_FAIL


def _endo(cfg: RunConfig, out: TextIO) -> int:
    doc = endo_structure(cfg.n, cfg.prime).to_json()
    _emit([dumps(validate(doc, "endo_structure"), cfg.format)], out)
    return EXIT_OK


def _frobenius(cfg: RunConfig, out: TextIO) -> int:
    if cfg.input is not None:
        curve = read_curve(cfg.input)
        f, g, p = curve.f, curve.genus, curve.p if cfg.prime is None else cfg.prime
    elif cfg.poly is not None:
        f = parse_poly(cfg.poly)
        g, p = (f.degree - 1) // 2, cfg.prime
    else:
        curve = assemble(cfg.genus, cfg.prime, cfg.kisin_depth, workers=cfg.workers)
        f, g, p = curve.f, curve.genus, curve.p
    records, evidence = census(f, g, p, cfg.ell_bound, cfg.budget, cfg.workers, cfg.seed)
    docs = [dumps(validate(r.to_json(), "frobenius_record"), cfg.format) for r in records]
    docs.append(dumps(validate(evidence.to_json(), "image_evidence"), cfg.format))
    _emit(docs, out)
    return EXIT_FAIL if evidence.verdict is ImageVerdict.OBSTRUCTION else EXIT_OK


def _pn_check(cfg: RunConfig, out: TextIO) -> int:
    results = [{"n": n, "holds": verify_pn_via_eigenvalues(n)} for n in range(max(cfg.n_min, 3), cfg.n_max + 1)]
    ok = all(r["holds"] for r in results)
    doc = {"n_min": cfg.n_min, "n_max": cfg.n_max, "results": results, "all_passed": ok}
    _emit([dumps(validate(doc, "pn_check"), cfg.format)], out)
    return EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "construct": _construct,
    "endo": _endo,
    "certify": _certify,
    "frobenius": _frobenius,
    "pn-check": _pn_check,
}


def run(cfg: RunConfig, out: TextIO | None = None) -> int:
    try:
        cfg.validate()
        if cfg.output:
            with open(cfg.output, "w") as fh:
                return HANDLERS[cfg.command](cfg, fh)
        return HANDLERS[cfg.command](cfg, out or sys.stdout)
    except (TameTorsionError, ValueError, KeyError, TypeError, OSError, jsonschema.ValidationError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--output", help="write here instead of standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for equal-degree splitting")

    parser = argparse.ArgumentParser(prog="tametorsion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build and certify a curve")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--kisin-depth", type=int, help="congruence depth at p (default 2g+2)")

    p = sub.add_parser("endo", parents=[common], help="CM splitting data for y^2 = x^n - 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("certify", parents=[common], help="re-certify a CurveSpec file")
    p.add_argument("--input", required=True, help="CurveSpec or certificate JSON, '-' for stdin")

    p = sub.add_parser("frobenius", parents=[common], help="Frobenius census and image evidence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CurveSpec or certificate JSON")
    src.add_argument("--poly", help="ascending coefficients of f, comma-separated; write --poly=-1,0,1 when c0 is negative")
    src.add_argument("--genus", type=int, help="construct the curve for (genus, prime) first")
    p.add_argument("--prime", type=int)
    p.add_argument("--kisin-depth", type=int)
    p.add_argument("--ell-bound", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7, help="max field size enumerated")

    p = sub.add_parser("pn-check", parents=[common], help="check P_n against eigenvalue orders")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=200)
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in ns.items() if k in fields and v is not None})
    cfg.workers = max(1, int(os.environ.get(WORKERS_ENV, "1")))
    return cfg


def main(argv: list[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
