# cli/app.py
"""
Command-line front-end.

    act EXPR MODULE        apply an element to a module or vector
    normalform EXPR        basis normal form (--method semantic|syntactic|both)
    diagram                induction/restriction diagram up to --n-max
    verify SUITE           run a verification suite
    nadir WORD             termini, nadirs and total-nadir flag of a word

Exit codes: 0 success, 1 failed verification, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from algebra.basis import NormalFormError
from algebra.family import FamilyConfigError
from algebra.parsing import ElementParseError, ModuleParseError, parse_element, parse_vector, render_vector
from algebra.rewriting import normal_form
from algebra.schema import normal_form_payload
from config.settings import NormalFormMethod, OutputFormat, ParityMode, settings
from engine.branching import apply_element
from engine.models import FamilyConfig
from engine.translation import TranslationDomainError
from engine.words import WordParseError, nadir, parse_word, profile

from .diagram import build_diagram
from .render import diagram_output, dumps, profile_json, profile_text, report_json, report_text, vector_payload, verify_report
from .suites import SUITES, run_suite


logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (
    ValidationError,
    ValueError,
    ElementParseError,
    ModuleParseError,
    WordParseError,
    FamilyConfigError,
    TranslationDomainError,
    ZeroDivisionError,
)


class CliConfig(BaseModel):
    """Flags shared by every command."""
    model_config = ConfigDict(extra="forbid")

    primes: List[int] = Field(default_factory=lambda: list(settings.default_primes))
    seeds: List[int] = Field(default_factory=lambda: list(settings.default_seeds))
    parity_mode: ParityMode = settings.default_parity
    depth: int = Field(settings.depth_cap, ge=0)
    output_format: OutputFormat = settings.output_format
    method: NormalFormMethod = settings.normal_form_method

    @field_validator("primes", "seeds", mode="before")
    @classmethod
    def _split(cls, v: object) -> object:
        if isinstance(v, str):
            return [int(x) for x in v.replace(" ", "").split(",") if x]
        return v

    def family(self) -> FamilyConfig:
        return FamilyConfig(primes=tuple(self.primes), seeds=tuple(self.seeds), parity_mode=self.parity_mode)


def _read(value: str) -> str:
    return sys.stdin.read().strip() if value == "-" else value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


# ----------------------------
# Commands
# ----------------------------

def cmd_act(args: argparse.Namespace, cfg: CliConfig) -> int:
    expr, module = _read(args.expr), _read(args.module)
    result = apply_element(parse_element(expr), parse_vector(module))
    rendered = render_vector(result)
    if cfg.output_format == "json":
        _emit(dumps(vector_payload(expr, module, result, rendered)), args.out)
    else:
        _emit(rendered + "\n", args.out)
    return EXIT_OK


def cmd_normalform(args: argparse.Namespace, cfg: CliConfig) -> int:
    expr = _read(args.expr)
    family = cfg.family()
    try:
        nf = normal_form(parse_element(expr), family, cfg.method)
    except NormalFormError as e:
        logger.error("normal form failed: %s", e)
        return EXIT_FAILED
    if cfg.output_format == "json":
        payload = normal_form_payload(expr, cfg.method, nf, list(family.primes), list(family.seeds))
        _emit(payload.model_dump_json(indent=2) + "\n", args.out)
    else:
        _emit(nf.render() + "\n", args.out)
    return EXIT_OK


def cmd_diagram(args: argparse.Namespace, cfg: CliConfig) -> int:
    n_max = settings.diagram_n_max if args.n_max is None else args.n_max
    graph = build_diagram(cfg.family(), n_max)
    logger.info("diagram: %d vertices, %d edges", graph.number_of_nodes(), graph.number_of_edges())
    _emit(diagram_output(graph, cfg.output_format), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: CliConfig) -> int:
    family = cfg.family()
    results = run_suite(args.suite, family, cfg.depth)
    report = verify_report(args.suite, family.describe(), cfg.depth, results)
    text = report_json(report) if cfg.output_format == "json" else report_text(report, results)
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_nadir(args: argparse.Namespace, cfg: CliConfig) -> int:
    text = _read(args.word)
    w = parse_word(text)
    primes = tuple(sorted(set(cfg.primes) | set(w.primes())))
    prof = profile(w, primes)
    suffixes = {p: sorted(nadir(w, p).suffix_lengths) for p in primes}
    out = profile_json(text, prof, suffixes) if cfg.output_format == "json" else profile_text(prof, suffixes)
    _emit(out, args.out)
    return EXIT_OK


# ----------------------------
# Parser
# ----------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--primes", help="comma-separated primes, e.g. 3,5")
    common.add_argument("--seeds", help="comma-separated seeds coprime to the primes, e.g. 1,7")
    common.add_argument("--parity", choices=["odd", "all"])
    common.add_argument("--depth", type=int, help="test-set depth D (exponent cap D + 1)")
    common.add_argument("--format", choices=["text", "json", "dot"])
    common.add_argument("--method", choices=["semantic", "syntactic", "both"])
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--log-level", help="override LOG_LEVEL")

    parser = argparse.ArgumentParser(prog="branching", description="Dihedral induction/restriction algebra engine.")
    sub = parser.add_subparsers(dest="command", required=True)

    act = sub.add_parser("act", parents=[common], help="apply an element to a module")
    act.add_argument("expr", help="element, e.g. 'ind5*res5*ind3*res3' ('-' reads stdin)")
    act.add_argument("module", help="module or vector, e.g. 'V(1,1;15)'")
    act.set_defaults(handler=cmd_act)

    nf = sub.add_parser("normalform", parents=[common], help="basis normal form of an element")
    nf.add_argument("expr")
    nf.set_defaults(handler=cmd_normalform)

    diagram = sub.add_parser("diagram", parents=[common], help="induction/restriction diagram")
    diagram.add_argument("--n-max", type=int, dest="n_max")
    diagram.set_defaults(handler=cmd_diagram)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    verify.set_defaults(handler=cmd_verify)

    nadir_cmd = sub.add_parser("nadir", parents=[common], help="termini and nadirs of a word")
    nadir_cmd.add_argument("word")
    nadir_cmd.set_defaults(handler=cmd_nadir)
    return parser


def _config_from(args: argparse.Namespace) -> CliConfig:
    values = {
        "primes": args.primes,
        "seeds": args.seeds,
        "parity_mode": args.parity,
        "depth": args.depth,
        "output_format": args.format,
        "method": args.method,
    }
    return CliConfig(**{k: v for k, v in values.items() if v is not None})


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    configure_logging(args.log_level)
    try:
        cfg = _config_from(args)
        return args.handler(args, cfg)
    except USAGE_ERRORS as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
