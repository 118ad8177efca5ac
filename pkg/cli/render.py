# cli/render.py
from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any, Dict, List, Sequence

import networkx as nx
import pandas as pd

from algebra.schema import CheckResultModel, VerifyReport
from engine.models import GrothVector
from engine.words import WordProfile

from .diagram import component_count, level_table, to_dot
from .suites import CheckResult


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def vector_payload(expression: str, module: str, result: GrothVector, rendered: str) -> Dict[str, Any]:
    return {
        "expression": expression,
        "module": module,
        "result": rendered,
        "terms": [{"module": str(m), "coeff": str(c)} for m, c in result.items()],
    }


def profile_frame(prof: WordProfile, suffixes: Dict[int, List[int]]) -> pd.DataFrame:
    rows = [
        {"p": p, "terminus": e, "nadir": d, "nadir_suffixes": ",".join(map(str, suffixes[p]))}
        for p, e, d in zip(prof.primes, prof.termini, prof.nadirs)
    ]
    return pd.DataFrame(rows, columns=["p", "terminus", "nadir", "nadir_suffixes"])


def profile_text(prof: WordProfile, suffixes: Dict[int, List[int]]) -> str:
    table = profile_frame(prof, suffixes).to_string(index=False)
    return (
        f"{table}\n"
        f"total nadir: {'yes' if prof.total_nadir else 'no'}\n"
        f"start primes: {list(prof.start_primes)}  end primes: {list(prof.end_primes)}\n"
    )


def profile_json(word: str, prof: WordProfile, suffixes: Dict[int, List[int]]) -> str:
    return dumps(
        {
            "word": word,
            "primes": list(prof.primes),
            "termini": list(prof.termini),
            "nadirs": list(prof.nadirs),
            "nadir_suffixes": {str(p): s for p, s in suffixes.items()},
            "total_nadir": prof.total_nadir,
        }
    )


# ----------------------------
# Diagrams
# ----------------------------

def diagram_text(graph: nx.Graph) -> str:
    table = level_table(graph).to_string(index=False)
    return f"{table}\nedges: {graph.number_of_edges()}\ncomponents: {component_count(graph)}\n"


def diagram_json(graph: nx.Graph) -> str:
    nodes = sorted(graph.nodes, key=lambda m: m.sort_key)
    edges = sorted(
        ((str(u), str(v)) if u.sort_key < v.sort_key else (str(v), str(u)) for u, v in graph.edges),
    )
    return dumps(
        {
            "vertices": [{"module": str(m), "n": m.n} for m in nodes],
            "edges": [list(e) for e in edges],
            "components": component_count(graph),
        }
    )


def diagram_output(graph: nx.Graph, fmt: str) -> str:
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "json":
        return diagram_json(graph)
    return diagram_text(graph)


# ----------------------------
# Verification reports
# ----------------------------

def verify_report(suite: str, config: str, depth: int, results: Sequence[CheckResult]) -> VerifyReport:
    checks = [
        CheckResultModel(
            suite=r.suite,
            name=r.name,
            status="pass" if r.passed else "fail",
            checked=r.checked,
            detail=r.detail,
            counterexample=r.counterexample,
        )
        for r in results
    ]
    return VerifyReport(suite=suite, config=config, depth=depth, passed=all(r.passed for r in results), checks=checks)


def report_frame(results: Sequence[CheckResult]) -> pd.DataFrame:
    rows = [asdict(r) for r in results]
    frame = pd.DataFrame(rows, columns=["suite", "name", "passed", "checked", "detail", "counterexample"])
    frame["status"] = frame["passed"].map({True: "pass", False: "fail"})
    return frame[["suite", "name", "status", "checked", "detail"]]


def report_text(report: VerifyReport, results: Sequence[CheckResult]) -> str:
    lines = [report_frame(results).fillna("").to_string(index=False)]
    for r in results:
        if not r.passed and r.counterexample:
            lines.append(f"FAIL {r.suite}/{r.name}: {r.counterexample}")
    lines.append(f"{'PASS' if report.passed else 'FAIL'}: {len(results) - len(report.failures)}/{len(results)} checks")
    return "\n".join(lines) + "\n"


def report_json(report: VerifyReport) -> str:
    return report.model_dump_json(indent=2) + "\n"
