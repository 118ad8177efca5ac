# cli/diagram.py
"""Induction/restriction diagram: simples joined to the summands of their restrictions."""
from __future__ import annotations

from collections import Counter
from typing import Dict, List

import networkx as nx
import pandas as pd

from engine.branching import enumerate_simples, restrict
from engine.models import FamilyConfig, SimpleModule


def build_diagram(cfg: FamilyConfig, n_max: int) -> nx.Graph:
    """Vertices: simples at family levels n <= n_max. Edges: L' -- L for L a summand of res_p L'."""
    graph = nx.Graph()
    levels = cfg.levels_up_to(n_max)
    for n in levels:
        for module in enumerate_simples(n):
            graph.add_node(module, level=n, label=str(module))
    for n in levels:
        for upper in enumerate_simples(n):
            for p in cfg.primes:
                for lower in restrict(p, upper):
                    if lower in graph:
                        graph.add_edge(lower, upper, prime=p)
    return graph


def _sorted_nodes(graph: nx.Graph) -> List[SimpleModule]:
    return sorted(graph.nodes, key=lambda m: m.sort_key)


def component_count(graph: nx.Graph) -> int:
    return nx.number_connected_components(graph)


def components(graph: nx.Graph) -> List[List[SimpleModule]]:
    comps = [sorted(c, key=lambda m: m.sort_key) for c in nx.connected_components(graph)]
    return sorted(comps, key=lambda c: c[0].sort_key)


def level_table(graph: nx.Graph) -> pd.DataFrame:
    counts = Counter(graph.nodes[m]["level"] for m in graph.nodes)
    dims: Dict[int, int] = Counter()
    for m in graph.nodes:
        dims[graph.nodes[m]["level"]] += m.dim
    rows = [{"n": n, "simples": counts[n], "total_dim": dims[n]} for n in sorted(counts)]
    return pd.DataFrame(rows, columns=["n", "simples", "total_dim"])


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(graph: nx.Graph, name: str = "branching") -> str:
    """DOT text with one rank=same group per level; nodes and edges in key order."""
    nodes = _sorted_nodes(graph)
    lines = [f"graph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    by_level: Dict[int, List[SimpleModule]] = {}
    for m in nodes:
        by_level.setdefault(graph.nodes[m]["level"], []).append(m)
    for n in sorted(by_level):
        members = " ".join(_quote(str(m)) + ";" for m in by_level[n])
        lines.append(f"  {{ rank=same; {members} }}")
    order = {m: i for i, m in enumerate(nodes)}
    edges = sorted(
        (tuple(sorted((u, v), key=order.__getitem__)) for u, v in graph.edges),
        key=lambda e: (order[e[0]], order[e[1]]),
    )
    for u, v in edges:
        lines.append(f"  {_quote(str(u))} -- {_quote(str(v))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
