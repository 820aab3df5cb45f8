"""Undirected weighted graphs in compressed sparse row form.

A :class:`Graph` stores every undirected edge as two directed arcs, so a
vertex's neighborhood is one contiguous slice of ``targets``/``weights``.
Neighbor lists are sorted, parallel edges are collapsed by summing their
weights, self-loops are kept as a single arc, and vertex ids are dense
``0..num_vertices-1``.

Two file formats are supported:

* ``edge-list`` — whitespace-separated ``src dst [weight]`` lines, ``#``
  or ``%`` comments, missing weights default to 1.
* ``matrix-market`` — coordinate ``pattern`` or ``real`` field, ``general``
  or ``symmetric`` symmetry, 1-based indices.

Both loaders symmetrize: each input entry (i, j, w) with i != j yields the
arcs i->j and j->i of weight w, and duplicates (in either direction) are
summed. Canonical writers emit one line per undirected edge with weights
printed to 6 significant digits, so a write/reload cycle reproduces the
graph exactly.
"""

from __future__ import annotations

import math
import os

import numpy as np


class GraphLoadError(ValueError):
    """Raised when a graph file cannot be parsed into a valid graph."""


class Graph:
    """Immutable CSR adjacency structure.

    Attributes
    ----------
    num_vertices : int
    num_arcs : int
        Directed arc count; every undirected edge contributes two arcs,
        a self-loop contributes one.
    offsets : int64 array of length num_vertices + 1
    targets : int32 array of length num_arcs
    weights : float array of length num_arcs, positive
    """

    __slots__ = ("num_vertices", "num_arcs", "offsets", "targets", "weights")

    def __init__(self, offsets, targets, weights):
        offsets = np.asarray(offsets, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int32)
        weights = np.asarray(weights)
        if offsets.ndim != 1 or offsets.size < 1 or offsets[0] != 0:
            raise ValueError("offsets must be a 1-d array starting at 0")
        if np.any(np.diff(offsets) < 0):
            raise ValueError("offsets must be non-decreasing")
        n = offsets.size - 1
        if targets.shape != weights.shape or targets.ndim != 1:
            raise ValueError("targets and weights must be 1-d arrays of equal length")
        if targets.size != offsets[-1]:
            raise ValueError("offsets[-1] must equal the arc count")
        if targets.size and (targets.min() < 0 or targets.max() >= n):
            raise ValueError("arc target out of range")
        if weights.size and not np.all(weights > 0):
            raise ValueError("arc weights must be positive")
        self.num_vertices = n
        self.num_arcs = int(targets.size)
        self.offsets = offsets
        self.targets = targets
        self.weights = weights
        for arr in (self.offsets, self.targets, self.weights):
            arr.setflags(write=False)

    def degree(self, i: int) -> int:
        """Number of arcs out of vertex i (self-loop counts once)."""
        return int(self.offsets[i + 1] - self.offsets[i])

    def neighbors(self, i: int):
        """(targets, weights) slices for vertex i's adjacency."""
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return self.targets[lo:hi], self.weights[lo:hi]

    def weighted_degree(self, i: int) -> float:
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return float(np.sum(self.weights[lo:hi], dtype=np.float64))

    def total_weight(self) -> float:
        """Half the sum of all arc weights (the usual edge-weight total m)."""
        return float(np.sum(self.weights, dtype=np.float64)) / 2.0

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.targets, other.targets)
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self):
        return f"Graph(num_vertices={self.num_vertices}, num_arcs={self.num_arcs})"


def _assemble(n: int, src, dst, w, weight_dtype) -> Graph:
    """Build a Graph from raw (src, dst, weight) entries.

    Entries are reduced to canonical unordered pairs, duplicate pairs are
    summed in 64-bit, and both arc directions are emitted with the same
    merged weight, which keeps the graph exactly symmetric.
    """
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    a = np.minimum(src, dst)
    b = np.maximum(src, dst)
    order = np.lexsort((b, a))
    a, b, w = a[order], b[order], w[order]
    if a.size:
        new_group = np.empty(a.size, dtype=bool)
        new_group[0] = True
        new_group[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1])
        starts = np.flatnonzero(new_group)
        pa, pb = a[starts], b[starts]
        pw = np.add.reduceat(w, starts)
    else:
        pa = pb = np.empty(0, dtype=np.int64)
        pw = np.empty(0, dtype=np.float64)
    loops = pa == pb
    arc_src = np.concatenate([pa, pb[~loops]])
    arc_dst = np.concatenate([pb, pa[~loops]])
    arc_w = np.concatenate([pw, pw[~loops]])
    order = np.lexsort((arc_dst, arc_src))
    arc_src, arc_dst, arc_w = arc_src[order], arc_dst[order], arc_w[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(arc_src, minlength=n), out=offsets[1:])
    return Graph(offsets, arc_dst.astype(np.int32), arc_w.astype(weight_dtype))


def build_graph(num_vertices: int, edges, weight_dtype=np.float32) -> Graph:
    """Assemble a graph from (i, j) or (i, j, w) tuples.

    Applies the same symmetrization and duplicate-merge rules as the file
    loaders. Vertices absent from ``edges`` are kept as isolated vertices.
    """
    src, dst, w = [], [], []
    for e in edges:
        if len(e) == 2:
            i, j = e
            wt = 1.0
        else:
            i, j, wt = e
        if not (0 <= i < num_vertices and 0 <= j < num_vertices):
            raise ValueError(f"edge ({i}, {j}) out of range for {num_vertices} vertices")
        if not (wt > 0 and math.isfinite(wt)):
            raise ValueError(f"edge ({i}, {j}) must have a positive finite weight")
        src.append(i)
        dst.append(j)
        w.append(wt)
    return _assemble(num_vertices, src, dst, w, weight_dtype)


def _parse_edge_list(f, path):
    src, dst, w = [], [], []
    for lineno, raw in enumerate(f, 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphLoadError(
                f"{path}:{lineno}: expected 'src dst [weight]', got {len(parts)} fields"
            )
        try:
            i = int(parts[0])
            j = int(parts[1])
        except ValueError:
            raise GraphLoadError(f"{path}:{lineno}: non-integer vertex id") from None
        if i < 0 or j < 0:
            raise GraphLoadError(f"{path}:{lineno}: negative vertex id")
        if len(parts) == 3:
            try:
                wt = float(parts[2])
            except ValueError:
                raise GraphLoadError(f"{path}:{lineno}: malformed weight") from None
            if not (wt > 0 and math.isfinite(wt)):
                raise GraphLoadError(f"{path}:{lineno}: weight must be positive and finite")
        else:
            wt = 1.0
        src.append(i)
        dst.append(j)
        w.append(wt)
    if not src:
        raise GraphLoadError(f"{path}: no edges found")
    return src, dst, w


def _remap_ids(src, dst):
    """Densify vertex ids.

    Ids already forming 0..max are kept verbatim (so canonical files reload
    to an identical graph); otherwise ids are renumbered in first-seen
    order and the mapping is returned.
    """
    seen = set(src)
    seen.update(dst)
    max_id = max(seen)
    if len(seen) == max_id + 1:
        return src, dst, max_id + 1, {v: v for v in sorted(seen)}
    mapping = {}
    for v in [x for pair in zip(src, dst) for x in pair]:
        if v not in mapping:
            mapping[v] = len(mapping)
    src = [mapping[v] for v in src]
    dst = [mapping[v] for v in dst]
    return src, dst, len(mapping), mapping


def _parse_matrix_market(f, path):
    header = f.readline()
    tokens = header.lower().split()
    if len(tokens) != 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise GraphLoadError(f"{path}: not a MatrixMarket matrix file")
    layout, field, symmetry = tokens[2], tokens[3], tokens[4]
    if layout != "coordinate":
        raise GraphLoadError(f"{path}: only coordinate layout is supported")
    if field not in ("pattern", "real"):
        raise GraphLoadError(f"{path}: only pattern or real fields are supported")
    if symmetry not in ("general", "symmetric"):
        raise GraphLoadError(f"{path}: only general or symmetric structure is supported")
    size_line = None
    lineno = 1
    for raw in f:
        lineno += 1
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        size_line = line
        break
    if size_line is None:
        raise GraphLoadError(f"{path}: missing size line")
    parts = size_line.split()
    if len(parts) != 3:
        raise GraphLoadError(f"{path}:{lineno}: size line must be 'rows cols nnz'")
    try:
        rows, cols, nnz = (int(p) for p in parts)
    except ValueError:
        raise GraphLoadError(f"{path}:{lineno}: non-integer size line") from None
    if rows != cols:
        raise GraphLoadError(f"{path}: matrix must be square ({rows}x{cols})")
    if rows < 1:
        raise GraphLoadError(f"{path}: empty graph (no vertices)")
    want = 3 if field == "real" else 2
    src, dst, w = [], [], []
    for raw in f:
        lineno += 1
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != want:
            raise GraphLoadError(f"{path}:{lineno}: expected {want} fields per entry")
        try:
            i = int(parts[0])
            j = int(parts[1])
        except ValueError:
            raise GraphLoadError(f"{path}:{lineno}: non-integer index") from None
        if not (1 <= i <= rows and 1 <= j <= rows):
            raise GraphLoadError(f"{path}:{lineno}: index out of declared range")
        if field == "real":
            try:
                wt = float(parts[2])
            except ValueError:
                raise GraphLoadError(f"{path}:{lineno}: malformed value") from None
            if not (wt > 0 and math.isfinite(wt)):
                raise GraphLoadError(f"{path}:{lineno}: value must be positive and finite")
        else:
            wt = 1.0
        src.append(i - 1)
        dst.append(j - 1)
        w.append(wt)
    if len(src) != nnz:
        raise GraphLoadError(f"{path}: declared {nnz} entries, found {len(src)}")
    if not src:
        raise GraphLoadError(f"{path}: no edges found")
    return rows, src, dst, w


_FORMAT_ALIASES = {
    "edge-list": "edge-list",
    "edgelist": "edge-list",
    "el": "edge-list",
    "matrix-market": "matrix-market",
    "mm": "matrix-market",
    "mtx": "matrix-market",
}


def _sniff_format(path):
    ext = os.path.splitext(path)[1].lower()
    if ext in (".mtx", ".mm"):
        return "matrix-market"
    with open(path, "r") as f:
        first = f.readline()
    return "matrix-market" if first.lower().startswith("%%matrixmarket") else "edge-list"


def load_graph(path, fmt=None, *, weight_dtype=np.float32, return_mapping=False):
    """Load a graph file.

    Parameters
    ----------
    path : str
    fmt : str or None
        "edge-list" or "matrix-market" (aliases: el/edgelist, mm/mtx).
        When None the format is sniffed from the extension and header.
    weight_dtype : numpy dtype
        Storage type for arc weights; float32 by default, pass
        ``numpy.float64`` for full-precision weights.
    return_mapping : bool
        Also return the raw-id -> dense-id dict (identity when the file's
        ids already formed 0..max; always None for MatrixMarket, whose
        ids are dense by declaration).

    Raises
    ------
    GraphLoadError
        On malformed input, ids out of range, non-positive weights, or an
        empty graph. Filesystem problems raise plain OSError.
    """
    if fmt is None:
        fmt = _sniff_format(path)
    try:
        fmt = _FORMAT_ALIASES[fmt.lower()]
    except KeyError:
        raise GraphLoadError(f"unknown graph format: {fmt!r}") from None
    mapping = None
    with open(path, "r") as f:
        if fmt == "edge-list":
            src, dst, w = _parse_edge_list(f, path)
            src, dst, n, mapping = _remap_ids(src, dst)
        else:
            n, src, dst, w = _parse_matrix_market(f, path)
    g = _assemble(n, src, dst, w, weight_dtype)
    if return_mapping:
        return g, mapping
    return g


def write_edgelist(g: Graph, out) -> None:
    """Write the canonical edge-list: one 'i j w' line per undirected edge,
    i <= j, sorted, weights to 6 significant digits."""
    offsets, targets, weights = g.offsets, g.targets, g.weights
    for i in range(g.num_vertices):
        for t in range(offsets[i], offsets[i + 1]):
            j = int(targets[t])
            if i <= j:
                out.write(f"{i} {j} {weights[t]:.6g}\n")


def write_matrix_market(g: Graph, out) -> None:
    """Write canonical MatrixMarket: real symmetric coordinate, lower triangle."""
    offsets, targets, weights = g.offsets, g.targets, g.weights
    entries = []
    for i in range(g.num_vertices):
        for t in range(offsets[i], offsets[i + 1]):
            j = int(targets[t])
            if i >= j:
                entries.append((i, j, weights[t]))
    out.write("%%MatrixMarket matrix coordinate real symmetric\n")
    out.write(f"{g.num_vertices} {g.num_vertices} {len(entries)}\n")
    for i, j, w in entries:
        out.write(f"{i + 1} {j + 1} {w:.6g}\n")


def validate_graph(g: Graph) -> None:
    """Check structural invariants; raises ValueError on the first breach.

    Verifies sorted duplicate-free neighbor lists, exact arc symmetry
    (every (i, j, w) has a matching (j, i, w)), positive weights, and the
    degree-sum identity.
    """
    offsets, targets, weights = g.offsets, g.targets, g.weights
    src = np.repeat(np.arange(g.num_vertices, dtype=np.int64), np.diff(offsets))
    for i in range(g.num_vertices):
        row = targets[offsets[i]:offsets[i + 1]]
        if row.size > 1 and np.any(np.diff(row) <= 0):
            raise ValueError(f"vertex {i}: neighbor list not strictly increasing")
    if weights.size and not np.all(weights > 0):
        raise ValueError("non-positive arc weight")
    rev = np.lexsort((src, targets))
    if not (
        np.array_equal(targets[rev], src)
        and np.array_equal(src[rev], targets)
        and np.array_equal(weights[rev], weights)
    ):
        raise ValueError("arc set is not symmetric")
    deg_sum = sum(g.weighted_degree(i) for i in range(g.num_vertices))
    total2 = 2.0 * g.total_weight()
    if not math.isclose(deg_sum, total2, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError("degree sum does not match twice the total weight")
