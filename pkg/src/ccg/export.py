"""Writers for DOT, GraphML, edge lists and JSON statistics, plus an edge-list reader.

All writers are deterministic: vertices are emitted by id, edges sorted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator, TextIO
from xml.sax.saxutils import quoteattr

import numpy as np

from ccg.classify import TYPES, table1, table2
from ccg.delta import DeltaGraph
from ccg.gamma import BlownUpGamma, GammaGraph, census
from ccg.lambda_graph import LambdaGraph, count_report

TYPE_COLORS = {
    "A": "#ffffff",
    "B": "#e41a1c",
    "C": "#ff7f00",
    "D": "#984ea3",
    "E": "#377eb8",
    "F": "#4daf4a",
    "G": "#a65628",
    "H": "#f781bf",
}


@dataclass
class GraphView:
    """Uniform read-only view used by the writers."""

    name: str
    p: int
    n_vertices: int
    vertex_type: Callable[[int], str]
    vertex_label: Callable[[int], str]
    edges: np.ndarray  # (m, 2), u < v, no loops
    loops: bool

    def sorted_edges(self) -> Iterator[tuple[int, int]]:
        e = self.edges
        if self.loops:
            ids = np.arange(self.n_vertices)
            e = np.concatenate([e.reshape(-1, 2), np.stack([ids, ids], axis=1)])
        e = e[np.lexsort((e[:, 1], e[:, 0]))]
        return map(tuple, e.tolist())

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def view_lambda(g: LambdaGraph) -> GraphView:
    types = g.vertex_types

    def label(v: int) -> str:
        t, i = g.locate(v)
        return g.label_str(t, i)

    return GraphView("lambda", g.p, g.n_vertices, lambda v: TYPES[types[v]], label, g.global_edges(), True)


def view_delta(d: DeltaGraph) -> GraphView:
    return GraphView(
        "delta",
        d.p,
        d.n_vertices,
        lambda v: "E" if d.is_e[v] else "B",
        lambda v: str(d.pair(v)),
        d.edges.astype(np.int64),
        True,
    )


def view_gamma(g: GammaGraph) -> GraphView:
    if isinstance(g, BlownUpGamma):
        types = g.lam.vertex_types[g.owner]

        def vtype(v: int) -> str:
            return TYPES[types[v]]

    else:

        def vtype(v: int) -> str:
            return ""

    def label(v: int) -> str:
        lab = g.labels[v]
        return str(int(lab)) if np.ndim(lab) == 0 else f"{int(lab[0])}.{int(lab[1])}"

    return GraphView("gamma", g.p, g.n_vertices, vtype, label, g.edge_array(), False)


def write_edgelist(view: GraphView, out: TextIO) -> None:
    out.write("# ccg edgelist\n")
    out.write(f"# p={view.p} graph={view.name} vertices={view.n_vertices} edges={view.n_edges} loops={int(view.loops)}\n")
    for u, v in view.sorted_edges():
        out.write(f"{u} {v}\n")


def read_edgelist(src: TextIO) -> tuple[dict[str, str], set[tuple[int, int]]]:
    """Parse an edge list written by :func:`write_edgelist`.

    Returns the header fields and the edge set (loops as (v, v)).
    """
    header: dict[str, str] = {}
    edges: set[tuple[int, int]] = set()
    for line in src:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    header[k] = v
            continue
        u, v = map(int, line.split())
        edges.add((min(u, v), max(u, v)))
    return header, edges


def write_dot(view: GraphView, out: TextIO) -> None:
    out.write(f"graph {view.name}_p{view.p} {{\n")
    out.write("  node [style=filled, shape=circle, fontsize=8];\n")
    for v in range(view.n_vertices):
        t = view.vertex_type(v)
        color = TYPE_COLORS.get(t, "#dddddd")
        lab = view.vertex_label(v).replace('"', '\\"')
        out.write(f'  {v} [label="{lab}", type="{t}", fillcolor="{color}"];\n')
    for u, v in view.sorted_edges():
        out.write(f"  {u} -- {v};\n")
    out.write("}\n")


def write_graphml(view: GraphView, out: TextIO) -> None:
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<graphml xmlns="http://graphml.graphdrawing.org/xmlns">\n')
    out.write('  <key id="type" for="node" attr.name="type" attr.type="string"/>\n')
    out.write('  <key id="label" for="node" attr.name="label" attr.type="string"/>\n')
    out.write(f'  <graph id="{view.name}_p{view.p}" edgedefault="undirected">\n')
    for v in range(view.n_vertices):
        out.write(f'    <node id="n{v}">\n')
        out.write(f'      <data key="type">{view.vertex_type(v)}</data>\n')
        out.write(f"      <data key=\"label\">{quoteattr(view.vertex_label(v))[1:-1]}</data>\n")
        out.write("    </node>\n")
    for k, (u, v) in enumerate(view.sorted_edges()):
        out.write(f'    <edge id="e{k}" source="n{u}" target="n{v}"/>\n')
    out.write("  </graph>\n</graphml>\n")


def lambda_stats(g: LambdaGraph) -> dict:
    """Stats record: neighborhood[i][j] is N(TYPES[i], TYPES[j]), the number
    of type-i neighbours (loop included) of a type-j vertex."""
    counts, N = count_report(g)
    return {
        "p": g.p,
        "counts": counts,
        "neighborhood": [[N[x, y] for y in TYPES] for x in TYPES],
        "vertices": g.n_vertices,
        "edges": g.n_edges,
        "loops": g.n_loops,
    }


def delta_stats(d: DeltaGraph) -> dict:
    return {
        "p": d.p,
        "counts": {"B": int(d.b_vertices.size), "E": int(d.e_vertices.size)},
        "vertices": d.n_vertices,
        "edges": int(len(d.edges)),
        "loops": d.n_vertices,
    }


def gamma_stats(g: GammaGraph) -> dict:
    deg = g.degrees()
    return {
        "p": g.p,
        "vertices": g.n_vertices,
        "edges": int(deg.sum()) // 2,
        "components": census(g.components()),
    }


def tables_json(p: int) -> dict:
    t1 = table1(p)
    t2 = table2(p)
    return {
        "p": p,
        "table1": {
            t: {"vertex_count": s.vertex_count, "generator_count": s.generator_count, "dimension": s.dimension}
            for t, s in t1.items()
        },
        "table2": [[t2[x, y] for y in TYPES] for x in TYPES],
        "types": list(TYPES),
    }


def write_json(record: dict, out: TextIO) -> None:
    json.dump(record, out, indent=2, sort_keys=False)
    out.write("\n")


def write_incidence(T: np.ndarray, fmt: str, out: TextIO) -> None:
    if fmt == "text":
        for row in T:
            out.write(" ".join(str(int(x)) for x in row) + "\n")
    elif fmt == "csv":
        for row in T:
            out.write(",".join(str(int(x)) for x in row) + "\n")
    elif fmt == "pbm":
        n, m = T.shape
        out.write(f"P1\n{m} {n}\n")
        for row in T:
            out.write(" ".join(str(int(x)) for x in row) + "\n")
    else:
        raise ValueError(f"unknown incidence format {fmt!r}")
