"""Edge-list parsing, flow orientation, and largest-SCC extraction.

Graphs are simple unweighted digraphs: self-loops are dropped and duplicate
edges collapsed at parse time.  Node identifiers from the input file are kept
as string labels; internally nodes are dense ints 0..n-1.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError

COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class DirectedGraph:
    """Compact CSR adjacency for a directed graph.

    ``out_indptr``/``out_indices`` hold the per-node sorted out-neighbour
    lists; ``in_*`` is the exact transpose.  ``labels`` maps the original
    external identifier to the dense node id, ``node_labels[i]`` is the
    inverse.  Instances are immutable and shareable across threads.
    """

    n: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    labels: dict = field(compare=False)
    node_labels: tuple = field(compare=False)

    @property
    def edge_count(self) -> int:
        return int(self.out_indices.size)

    def out_neighbors(self, i: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[i]: self.out_indptr[i + 1]]

    def in_neighbors(self, i: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[i]: self.in_indptr[i + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    def edges(self):
        """Iterate (src, dst) node-id pairs in (src, dst) order."""
        for u in range(self.n):
            for v in self.out_neighbors(u):
                yield u, int(v)

    def content_hash(self) -> str:
        """Hash of the topology (labels excluded); keys caches."""
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(self.out_indptr.astype(np.int64).tobytes())
        h.update(self.out_indices.astype(np.int64).tobytes())
        return h.hexdigest()

    @classmethod
    def from_edges(cls, edges, labels=None) -> "DirectedGraph":
        """Build from (src, dst) int pairs; drops self-loops and duplicates.

        Node count is 1 + max id over the edges unless ``labels`` (an ordered
        iterable of external names, one per node id) says otherwise.
        """
        clean = sorted({(int(u), int(v)) for u, v in edges if int(u) != int(v)})
        if labels is not None:
            node_labels = tuple(str(x) for x in labels)
            n = len(node_labels)
        else:
            n = 1 + max((max(u, v) for u, v in clean), default=-1)
            node_labels = tuple(str(i) for i in range(n))
        return _assemble(n, clean, node_labels)


def _assemble(n, edge_pairs, node_labels) -> DirectedGraph:
    m = len(edge_pairs)
    src = np.fromiter((u for u, _ in edge_pairs), dtype=np.int64, count=m)
    dst = np.fromiter((v for _, v in edge_pairs), dtype=np.int64, count=m)

    out_indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(out_indptr, src + 1, 1)
    np.cumsum(out_indptr, out=out_indptr)
    out_indices = dst.copy()  # edge_pairs sorted by (src, dst): rows already sorted

    order = np.lexsort((src, dst))
    in_indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(in_indptr, dst + 1, 1)
    np.cumsum(in_indptr, out=in_indptr)
    in_indices = src[order]

    labels = {lab: i for i, lab in enumerate(node_labels)}
    return DirectedGraph(
        n=n,
        out_indptr=out_indptr,
        out_indices=out_indices,
        in_indptr=in_indptr,
        in_indices=in_indices,
        labels=labels,
        node_labels=tuple(node_labels),
    )


def _open_source(src):
    if isinstance(src, (str, Path)):
        return open(src, "r", encoding="utf-8"), True
    if isinstance(src, io.TextIOBase):
        return src, False
    if hasattr(src, "read"):  # byte stream
        return io.TextIOWrapper(src, encoding="utf-8"), False
    raise TypeError(f"unsupported edge-list source: {type(src)!r}")


def parse_edge_list(src, undirected: bool = False) -> DirectedGraph:
    """Parse a whitespace-separated "src dst" edge list.

    Lines starting with '#' or '%' are comments; tokens beyond the first two
    (timestamps, weights, attributes) are ignored.  ``undirected=True`` emits
    both arc directions for every line.

    Raises ParseError with the offending line number for one-token lines,
    and when no usable edge remains.
    """
    fh, owns = _open_source(src)
    labels: dict = {}
    node_labels: list = []
    edges = set()
    try:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise ParseError("expected two whitespace-separated node tokens", lineno)
            pair = []
            for tok in tokens[:2]:
                nid = labels.get(tok)
                if nid is None:
                    nid = len(node_labels)
                    labels[tok] = nid
                    node_labels.append(tok)
                pair.append(nid)
            u, v = pair
            if u == v:
                continue
            edges.add((u, v))
            if undirected:
                edges.add((v, u))
    finally:
        if owns:
            fh.close()
    if not edges:
        raise ParseError("no usable edges in input")
    return _assemble(len(node_labels), sorted(edges), tuple(node_labels))


def reverse_edges(g: DirectedGraph) -> DirectedGraph:
    """Swap edge directions; labels preserved.  Involution."""
    return DirectedGraph(
        n=g.n,
        out_indptr=g.in_indptr,
        out_indices=g.in_indices,
        in_indptr=g.out_indptr,
        in_indices=g.out_indices,
        labels=g.labels,
        node_labels=g.node_labels,
    )


def _tarjan_components(g: DirectedGraph) -> list:
    """Iterative Tarjan; returns list of components (lists of node ids)."""
    n = g.n
    UNVISITED = -1
    index = np.full(n, UNVISITED, dtype=np.int64)
    lowlink = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    stack: list = []
    components: list = []
    counter = 0

    for root in range(n):
        if index[root] != UNVISITED:
            continue
        # explicit DFS stack of (node, next-child cursor)
        work = [(root, 0)]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            row = g.out_neighbors(v)
            advanced = False
            while ptr < row.size:
                w = int(row[ptr])
                ptr += 1
                if index[w] == UNVISITED:
                    work[-1] = (v, ptr)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return components


def largest_scc(g: DirectedGraph) -> DirectedGraph:
    """Induced subgraph on the largest strongly connected component.

    Nodes are re-indexed 0..m-1 preserving their relative order; ties between
    equal-size components go to the one whose lexicographically smallest
    original label is smallest.
    """
    components = _tarjan_components(g)
    best = max(
        components,
        key=lambda comp: (len(comp), _neg_min_label(g, comp)),
    )
    keep = sorted(best)
    remap = {old: new for new, old in enumerate(keep)}
    keep_mask = np.zeros(g.n, dtype=bool)
    keep_mask[keep] = True
    edges = [
        (remap[u], remap[int(v)])
        for u in keep
        for v in g.out_neighbors(u)
        if keep_mask[v]
    ]
    node_labels = tuple(g.node_labels[old] for old in keep)
    return _assemble(len(keep), sorted(edges), node_labels)


class _ReverseOrder:
    """Wraps a value so that max() prefers the *smallest* underlying value."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return self.value > other.value


def _neg_min_label(g, comp):
    return _ReverseOrder(min(g.node_labels[v] for v in comp))


def is_strongly_connected(g: DirectedGraph) -> bool:
    """Forward and backward BFS from node 0 both reach all nodes."""
    if g.n == 0:
        return False
    if g.n == 1:
        return True
    for neigh in (g.out_neighbors, g.in_neighbors):
        seen = np.zeros(g.n, dtype=bool)
        seen[0] = True
        frontier = [0]
        count = 1
        while frontier:
            nxt = []
            for u in frontier:
                for v in neigh(u):
                    if not seen[v]:
                        seen[v] = True
                        count += 1
                        nxt.append(int(v))
            frontier = nxt
        if count != g.n:
            return False
    return True


def write_edge_list(g: DirectedGraph, dest) -> None:
    """Canonical writer: one "src dst" line per edge, sorted by (src, dst) id."""
    if isinstance(dest, (str, Path)):
        fh = open(dest, "w", encoding="utf-8")
        owns = True
    else:
        fh, owns = dest, False
    try:
        for u, v in g.edges():
            fh.write(f"{g.node_labels[u]} {g.node_labels[v]}\n")
    finally:
        if owns:
            fh.close()
