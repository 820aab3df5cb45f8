"""Label propagation engines with exact and bounded-memory label selection.

Every vertex starts in its own community and repeatedly adopts the label
that carries the most weight among its neighbors. Three selector variants
share one outer loop:

* ``exact`` — full per-label weight map (the quality baseline),
* ``bm``    — one weighted Boyer-Moore vote (one candidate, O(1) state),
* ``mg``    — a Misra-Gries sketch of ``sketch_slots`` labels, optionally
  re-scanning the adjacency once more to replace residual sketch weights
  with exact ones (``scan_mode="double"``).

High-degree vertices (``degree >= degree_threshold``) are processed as
``partial_groups`` contiguous adjacency chunks with one sketch or vote
state per chunk, combined afterward; this mirrors processing the chunks
in parallel work groups while staying deterministic.

Iterations where ``iteration % pickless_gap == 0`` (including the first)
run in a symmetry-breaking mode in which a vertex may only adopt a label
smaller than its current one; this stops label ping-pong on symmetric
neighborhoods. The loop exits early only when the current iteration was
not symmetry-breaking and the fraction of vertices that changed label
fell below ``tolerance``. Vertices are re-examined only when a neighbor
changed since they were last evaluated.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .sketch import BmState, MgSketch, reduce_votes

VARIANTS = ("exact", "bm", "mg")
SCAN_MODES = ("single", "double")

_LABEL_BYTES = 4   # labels are stored as 32-bit ints
_FLAG_BYTES = 1    # per-vertex unprocessed flag
_KEY_BYTES = 4     # sketch keys / map keys / vote candidates


@dataclass
class LpaConfig:
    """Knobs for one label-propagation run. Defaults follow the reference
    configuration: 8-slot sketches, symmetry-breaking every 8th iteration,
    5% change tolerance, 20 iteration cap, 128 degree threshold split into
    32 chunks, sequential execution."""

    variant: str = "mg"
    scan_mode: str = "single"
    sketch_slots: int = 8
    pickless_gap: int = 8
    tolerance: float = 0.05
    max_iterations: int = 20
    degree_threshold: int = 128
    partial_groups: int = 32
    worker_count: int = 0
    shared_sketch: bool = False

    def validate(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.scan_mode not in SCAN_MODES:
            raise ValueError(f"scan_mode must be one of {SCAN_MODES}")
        if self.sketch_slots < 1:
            raise ValueError("sketch_slots must be at least 1")
        if self.pickless_gap < 1:
            raise ValueError("pickless_gap must be at least 1")
        if not (0 < self.tolerance <= 1):
            raise ValueError("tolerance must be in (0, 1]")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.degree_threshold < 1:
            raise ValueError("degree_threshold must be at least 1")
        if self.partial_groups < 1:
            raise ValueError("partial_groups must be at least 1")
        if self.worker_count < 0:
            raise ValueError("worker_count must be non-negative")


@dataclass
class LpaResult:
    labels: np.ndarray
    iterations: int
    delta_history: list[int] = field(default_factory=list)
    converged: bool = False
    aux_bytes: int = 0


def select_label_exact(g, labels, i: int) -> int:
    """Label with the largest total connecting weight at vertex i.

    Builds the full neighbor-label weight map; ties break toward the
    smaller label id. Returns the current label when i has no neighbors
    other than itself.
    """
    lo, hi = g.offsets[i], g.offsets[i + 1]
    nb = g.targets[lo:hi]
    mask = nb != i
    if not mask.any():
        return int(labels[i])
    totals = np.bincount(
        labels[nb[mask]], weights=g.weights[lo:hi][mask].astype(np.float64)
    )
    return int(totals.argmax())


def _chunk_bounds(count: int, parts: int):
    base, rem = divmod(count, parts)
    bounds = []
    start = 0
    for r in range(parts):
        size = base + (1 if r < rem else 0)
        bounds.append((start, start + size))
        start += size
    return bounds


def select_label_bm(g, labels, i: int, cfg: LpaConfig) -> int:
    """Boyer-Moore candidate for vertex i.

    Low-degree vertices run one vote over the whole adjacency; high-degree
    vertices run one vote per contiguous chunk and keep the strongest.
    The surviving candidate need not be the true arg-max; it is the label
    that outlasted the vote.
    """
    lo, hi = int(g.offsets[i]), int(g.offsets[i + 1])
    deg = hi - lo
    cur = int(labels[i])
    if deg == 0:
        return cur
    nb = g.targets[lo:hi].tolist()
    labs = labels[g.targets[lo:hi]].tolist()
    wts = g.weights[lo:hi].tolist()
    if deg < cfg.degree_threshold:
        st = BmState(cur, 0.0)
        for j, c, w in zip(nb, labs, wts):
            if j != i:
                st.accumulate(c, w)
        return st.candidate
    states = []
    for s, e in _chunk_bounds(deg, cfg.partial_groups):
        st = BmState(cur, 0.0)
        for t in range(s, e):
            if nb[t] != i:
                st.accumulate(labs[t], wts[t])
        states.append(st)
    return reduce_votes(states).candidate


def select_label_mg(g, labels, i: int, cfg: LpaConfig) -> int:
    """Sketch-based candidate for vertex i.

    Neighbor labels are streamed into one sketch (low degree) or into
    ``partial_groups`` per-chunk sketches merged into the first (high
    degree). With ``shared_sketch`` every chunk feeds one shared sketch
    instead, which is the linearized form of concurrent accumulation.
    In double-scan mode the sketch keys are kept as a candidate set and
    their weights are re-counted exactly from the adjacency before the
    maximum is taken. Falls back to the current label when the sketch
    ends empty.
    """
    lo, hi = int(g.offsets[i]), int(g.offsets[i + 1])
    deg = hi - lo
    cur = int(labels[i])
    if deg == 0:
        return cur
    nb = g.targets[lo:hi].tolist()
    labs = labels[g.targets[lo:hi]].tolist()
    wts = g.weights[lo:hi].tolist()
    if deg < cfg.degree_threshold or cfg.shared_sketch:
        sk = MgSketch(cfg.sketch_slots)
        for j, c, w in zip(nb, labs, wts):
            if j != i:
                sk.accumulate(c, w)
    else:
        parts = [MgSketch(cfg.sketch_slots) for _ in range(cfg.partial_groups)]
        for part, (s, e) in zip(parts, _chunk_bounds(deg, cfg.partial_groups)):
            for t in range(s, e):
                if nb[t] != i:
                    part.accumulate(labs[t], wts[t])
        sk = parts[0]
        for part in parts[1:]:
            sk.merge(part)
    if cfg.scan_mode == "double":
        sk.clear_values()
        for j, c, w in zip(nb, labs, wts):
            if j != i:
                sk.rescan_add(c, w)
    best = sk.max_key()
    return cur if best is None else best


def _make_selector(g, labels, cfg):
    if cfg.variant == "exact":
        return lambda i: select_label_exact(g, labels, i)
    if cfg.variant == "bm":
        return lambda i: select_label_bm(g, labels, i, cfg)
    return lambda i: select_label_mg(g, labels, i, cfg)


def _process_vertices(g, labels, unprocessed, selector, pickless, vertex_ids) -> int:
    """Evaluate the given vertices once each; returns how many changed label.

    A vertex is skipped unless its unprocessed flag is set when reached;
    the flag drops at the start of its evaluation. A label change re-marks
    all its neighbors (itself too, for a self-loop) so they are looked at
    again. Labels are read in place, so vertices later in the order see
    earlier changes from the same sweep.
    """
    offsets, targets = g.offsets, g.targets
    changed = 0
    for i in vertex_ids:
        if not unprocessed[i]:
            continue
        unprocessed[i] = False
        cand = selector(i)
        if cand != labels[i] and (not pickless or cand < labels[i]):
            labels[i] = cand
            changed += 1
            unprocessed[targets[offsets[i]:offsets[i + 1]]] = True
    return changed


def lpa_move(g, labels, unprocessed, cfg: LpaConfig, pickless: bool, order=None) -> int:
    """One propagation sweep; returns the number of vertices that changed.

    ``worker_count == 0`` walks vertices in ascending id order (or the
    given order) on the calling thread, which is fully deterministic.
    Otherwise the order is split into ``worker_count`` contiguous ranges
    processed by concurrent threads sharing the labels array.
    """
    if order is None:
        vertex_ids = range(g.num_vertices)
    else:
        vertex_ids = np.asarray(order).tolist()
    selector = _make_selector(g, labels, cfg)
    if cfg.worker_count == 0:
        return _process_vertices(g, labels, unprocessed, selector, pickless, vertex_ids)
    chunks = np.array_split(np.asarray(vertex_ids, dtype=np.int64), cfg.worker_count)
    counts = [0] * len(chunks)

    def work(idx, chunk):
        counts[idx] = _process_vertices(
            g, labels, unprocessed, selector, pickless, chunk.tolist()
        )

    threads = [
        threading.Thread(target=work, args=(idx, chunk))
        for idx, chunk in enumerate(chunks)
        if chunk.size
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    return sum(counts)


def lpa_run(g, cfg: LpaConfig = None, *, order=None, iteration_hook=None) -> LpaResult:
    """Run label propagation to convergence or the iteration cap.

    Parameters
    ----------
    g : Graph
    cfg : LpaConfig, optional
    order : array of vertex ids, optional
        Evaluation order for each sweep; ascending ids when omitted.
    iteration_hook : callable, optional
        Called after every sweep as ``hook(iteration, pickless, labels)``;
        intended for instrumentation, the labels array is live.

    Returns an :class:`LpaResult`; ``converged`` is True only when the
    loop exited early on a small change fraction, never on hitting
    ``max_iterations``.
    """
    if cfg is None:
        cfg = LpaConfig()
    cfg.validate()
    n = g.num_vertices
    if order is not None:
        order = np.asarray(order, dtype=np.int64)
        check = np.zeros(n, dtype=bool)
        check[order] = True
        if order.size != n or not check.all():
            raise ValueError("order must be a permutation of all vertex ids")
    labels = np.arange(n, dtype=np.int32)
    unprocessed = np.ones(n, dtype=bool)
    history: list[int] = []
    converged = False
    for it in range(cfg.max_iterations):
        pickless = (it % cfg.pickless_gap) == 0
        delta = lpa_move(g, labels, unprocessed, cfg, pickless, order)
        history.append(delta)
        if iteration_hook is not None:
            iteration_hook(it, pickless, labels)
        if not pickless and (delta / n if n else 0.0) < cfg.tolerance:
            converged = True
            break
    return LpaResult(
        labels=labels,
        iterations=len(history),
        delta_history=history,
        converged=converged,
        aux_bytes=aux_memory_estimate(g, cfg),
    )


def aux_memory_estimate(g, cfg: LpaConfig) -> int:
    """Bytes of auxiliary state for a run of ``cfg`` on ``g``, excluding
    the graph itself.

    Counts the labels array and unprocessed flags, plus per-worker selector
    state: a full vertex-capacity key/value map for ``exact``, one
    key/value pair per chunk slot for ``mg`` (``partial_groups`` x
    ``sketch_slots``), and one candidate/weight pair per chunk for ``bm``.
    The estimate is a deterministic model of the arrays a fixed-layout
    implementation would allocate; it never depends on the arc count.
    """
    cfg.validate()
    n = g.num_vertices
    value_bytes = g.weights.dtype.itemsize
    workers = max(cfg.worker_count, 1)
    base = n * (_LABEL_BYTES + _FLAG_BYTES)
    if cfg.variant == "exact":
        per_worker = n * (_KEY_BYTES + value_bytes)
    elif cfg.variant == "mg":
        per_worker = cfg.partial_groups * cfg.sketch_slots * (_KEY_BYTES + value_bytes)
    else:
        per_worker = cfg.partial_groups * (_KEY_BYTES + value_bytes)
    return base + workers * per_worker
