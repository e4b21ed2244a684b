"""
The relative g-noncommuting graph and the graph queries the audit needs.

Vertices are all element ids of G. Two distinct vertices x, y are adjacent when
at least one of them lies in H and [x, y] is neither g nor g^-1.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx
import numpy as np

from src.lib.group_core import (
    ElementId,
    ElementSet,
    FiniteGroup,
    Subgroup,
    commutator_rows,
)
from src.lib.utils import PathLike, TooLarge, safe_write_text

DOMINATION_LIMIT = 24
ISOMORPHISM_LIMIT = 24


@dataclass(frozen=True, eq=False)
class RelGraph:
    """Symmetric adjacency over the elements of G for one (H, g)."""

    group: FiniteGroup
    h_members: ElementSet
    g_elem: ElementId
    adjacency: np.ndarray

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def adjacent(self, x: ElementId, y: ElementId) -> bool:
        return bool(self.adjacency[x, y])

    def neighbors(self, x: ElementId) -> List[ElementId]:
        return [int(y) for y in np.flatnonzero(self.adjacency[x])]

    def edges(self) -> List[Tuple[ElementId, ElementId]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return sorted(zip(rows.tolist(), cols.tolist()))


GraphLike = Union[RelGraph, np.ndarray]


class ShapeKind(str, Enum):
    EMPTY = "EmptyGraph"
    COMPLETE = "CompleteGraph"
    STAR = "Star"
    TREE = "Tree"
    LOLLIPOP = "Lollipop"
    JOIN = "JoinCompleteWithIsolatedRest"
    OTHER = "Other"


@dataclass(frozen=True)
class ShapeClass:
    kind: ShapeKind
    params: Dict[str, int] = field(default_factory=dict)

    @property
    def is_tree(self) -> bool:
        return self.kind in (ShapeKind.TREE, ShapeKind.STAR)

    def __str__(self) -> str:
        if not self.params:
            return self.kind.value
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind.value}({inner})"


def _matrix(graph: GraphLike) -> np.ndarray:
    if isinstance(graph, RelGraph):
        return graph.adjacency
    return np.asarray(graph, dtype=bool)


def build_graph(G: FiniteGroup, H: Subgroup, g: ElementId) -> RelGraph:
    """Construct the graph for (H, G, g) with O(|G||H|) commutator evaluations."""
    n = G.order
    forbidden = np.array([g, G.inv(g)], dtype=np.int64)
    h_ids = np.array(H.members.members, dtype=np.int64)
    comm = commutator_rows(G, h_ids)
    allowed = ~np.isin(comm, forbidden)

    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[h_ids, :] = allowed
    adjacency = adjacency | adjacency.T
    np.fill_diagonal(adjacency, False)
    adjacency.setflags(write=False)
    return RelGraph(G, H.members, g, adjacency)


def degree(graph: RelGraph, x: ElementId) -> int:
    return int(graph.degrees[x])


def edge_count(graph: GraphLike) -> int:
    total = int(_matrix(graph).sum())
    assert total % 2 == 0, "degree sum must be even"
    return total // 2


def to_networkx(graph: GraphLike) -> nx.Graph:
    return nx.from_numpy_array(_matrix(graph).astype(np.int8))


def is_connected(graph: GraphLike) -> bool:
    return nx.is_connected(to_networkx(graph))


def is_triangle_free(graph: GraphLike) -> bool:
    return sum(nx.triangles(to_networkx(graph)).values()) == 0


def _is_complete_on(adj: np.ndarray, vertices: List[int]) -> bool:
    sub = adj[np.ix_(vertices, vertices)]
    return int(sub.sum()) == len(vertices) * (len(vertices) - 1)


def _lollipop_params(adj: np.ndarray, deg: np.ndarray) -> Optional[Dict[str, int]]:
    """Clique K_m (m >= 3) with a pendant path hung from one clique vertex."""
    n = adj.shape[0]
    leaves = [int(v) for v in np.flatnonzero(deg == 1)]
    if len(leaves) != 1:
        return None
    path = [leaves[0]]
    previous, current = None, leaves[0]
    while True:
        options = [int(v) for v in np.flatnonzero(adj[current]) if v != previous]
        if len(options) != 1:
            return None
        previous, current = current, options[0]
        if deg[current] != 2:
            break
        path.append(current)
    attachment = current
    clique = [v for v in range(n) if v not in set(path)]
    m = len(clique)
    if m < 3 or deg[attachment] != m:
        return None
    if not _is_complete_on(adj, clique):
        return None
    if int(adj.sum()) // 2 != m * (m - 1) // 2 + len(path):
        return None
    return {"clique": m, "path": len(path), "attachment": attachment}


def classify_shape(graph: GraphLike) -> ShapeClass:
    """Tested in the order Empty, Complete, Star, Tree, Lollipop, Join, Other."""
    adj = _matrix(graph)
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    edges = int(deg.sum()) // 2

    if edges == 0:
        return ShapeClass(ShapeKind.EMPTY)
    if edges == n * (n - 1) // 2:
        return ShapeClass(ShapeKind.COMPLETE)

    connected = is_connected(adj)
    if connected and edges == n - 1:
        centers = np.flatnonzero(deg == n - 1)
        if n >= 2 and centers.size:
            return ShapeClass(ShapeKind.STAR, {"center": int(centers[0])})
        return ShapeClass(ShapeKind.TREE)

    if connected:
        params = _lollipop_params(adj, deg)
        if params is not None:
            return ShapeClass(ShapeKind.LOLLIPOP, params)

    universal = [int(v) for v in np.flatnonzero(deg == n - 1)]
    rest = [v for v in range(n) if deg[v] != n - 1]
    if universal and rest:
        rest_idx = np.array(rest)
        independent = not adj[np.ix_(rest_idx, rest_idx)].any()
        if independent and all(deg[v] == len(universal) for v in rest):
            return ShapeClass(ShapeKind.JOIN, {"clique": len(universal)})

    return ShapeClass(ShapeKind.OTHER)


def _closed_neighborhoods(adj: np.ndarray) -> List[int]:
    masks = []
    for v in range(adj.shape[0]):
        mask = 1 << v
        for w in np.flatnonzero(adj[v]):
            mask |= 1 << int(w)
        masks.append(mask)
    return masks


def dominating_set(graph: GraphLike) -> List[int]:
    """
    A minimum dominating set, by exact search over increasing sizes.

    For each size k the search branches on the closed neighbourhood of the first
    undominated vertex, largest-degree candidates first, and prunes when k
    vertices of maximum closed degree cannot cover what is left.
    """
    adj = _matrix(graph)
    n = adj.shape[0]
    if n > DOMINATION_LIMIT:
        raise TooLarge(f"domination search limited to {DOMINATION_LIMIT} vertices")
    masks = _closed_neighborhoods(adj)
    full = (1 << n) - 1
    deg = adj.sum(axis=1)
    reach = int(deg.max()) + 1 if n else 1
    by_degree = sorted(range(n), key=lambda v: (-int(deg[v]), v))

    def search(k: int, covered: int, chosen: List[int]) -> Optional[List[int]]:
        if covered == full:
            return chosen
        if k == 0:
            return None
        uncovered = full & ~covered
        if bin(uncovered).count("1") > k * reach:
            return None
        u = (uncovered & -uncovered).bit_length() - 1
        for v in by_degree:
            if masks[u] >> v & 1:
                found = search(k - 1, covered | masks[v], chosen + [v])
                if found is not None:
                    return found
        return None

    for k in range(0, n + 1):
        found = search(k, 0, [])
        if found is not None:
            return sorted(found)
    return list(range(n))


def domination_number(graph: GraphLike) -> int:
    return len(dominating_set(graph))


def _refined_colors(adjs: List[np.ndarray]) -> List[List[int]]:
    """Degree partition refined by neighbour colours, computed jointly."""
    colors = [[int(d) for d in adj.sum(axis=1)] for adj in adjs]
    while True:
        signatures = []
        for adj, cols in zip(adjs, colors):
            signatures.append(
                [
                    (cols[v], tuple(sorted(cols[int(w)] for w in np.flatnonzero(adj[v]))))
                    for v in range(adj.shape[0])
                ]
            )
        palette = {sig: i for i, sig in enumerate(sorted({s for sigs in signatures for s in sigs}))}
        refined = [[palette[s] for s in sigs] for sigs in signatures]
        if all(
            len(set(r)) == len(set(c)) for r, c in zip(refined, colors)
        ) and len(palette) == len({c for cols in colors for c in cols}):
            return refined
        colors = refined


def graphs_isomorphic(a: GraphLike, b: GraphLike) -> Optional[Dict[int, int]]:
    """
    Find an adjacency-preserving bijection from a's vertices to b's, or None.

    Backtracking over candidates that share a refined degree colour; each partial
    map is checked against every already-mapped vertex.
    """
    adj_a, adj_b = _matrix(a), _matrix(b)
    n = adj_a.shape[0]
    if max(n, adj_b.shape[0]) > ISOMORPHISM_LIMIT:
        raise TooLarge(f"isomorphism search limited to {ISOMORPHISM_LIMIT} vertices")
    if n != adj_b.shape[0] or int(adj_a.sum()) != int(adj_b.sum()):
        return None
    if sorted(adj_a.sum(axis=1).tolist()) != sorted(adj_b.sum(axis=1).tolist()):
        return None

    colors_a, colors_b = _refined_colors([adj_a, adj_b])
    if sorted(colors_a) != sorted(colors_b):
        return None

    classes: Dict[int, List[int]] = {}
    for w, c in enumerate(colors_b):
        classes.setdefault(c, []).append(w)
    order = sorted(range(n), key=lambda v: (len(classes[colors_a[v]]), v))

    mapping: Dict[int, int] = {}
    used = set()

    def extend(position: int) -> bool:
        if position == n:
            return True
        v = order[position]
        for w in classes[colors_a[v]]:
            if w in used:
                continue
            if any(adj_a[v, u] != adj_b[w, mapping[u]] for u in mapping):
                continue
            mapping[v] = w
            used.add(w)
            if extend(position + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(sorted(mapping.items()))
    return None


def is_isomorphism(a: GraphLike, b: GraphLike, mapping: Dict[int, int]) -> bool:
    """Full adjacency comparison of a under mapping against b."""
    adj_a, adj_b = _matrix(a), _matrix(b)
    n = adj_a.shape[0]
    if sorted(mapping) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        return False
    perm = np.array([mapping[v] for v in range(n)])
    return bool(np.array_equal(adj_b[np.ix_(perm, perm)], adj_a))


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def dot_text(graph: RelGraph) -> str:
    """Deterministic DOT: nodes by id, edges sorted by (min id, max id)."""
    lines = [f'graph "{_dot_escape(graph.group.name)}" {{']
    for v in range(graph.order):
        shape = "box" if v in graph.h_members else "ellipse"
        label = _dot_escape(graph.group.label(v))
        lines.append(f'  {v} [label="{label}", shape={shape}];')
    for x, y in graph.edges():
        lines.append(f"  {x} -- {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: RelGraph, path: PathLike) -> None:
    safe_write_text(path, dot_text(graph))


def graph_payload(graph: RelGraph) -> Dict[str, object]:
    """JSON-ready description of the graph for the build command."""
    G = graph.group
    return {
        "group": G.name,
        "order": G.order,
        "labels": list(G.labels),
        "h_members": list(graph.h_members.members),
        "g": G.label(graph.g_elem),
        "edges": [list(e) for e in graph.edges()],
        "edge_count": edge_count(graph),
        "shape": str(classify_shape(graph)),
    }
