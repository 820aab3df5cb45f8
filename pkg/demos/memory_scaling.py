"""
Auxiliary memory across graph sizes
===================================

How much working memory does each selector need beyond the graph and the
label array? The exact tally keeps a full vertex-capacity map per worker,
so its footprint grows with the graph. The sketch selectors keep a fixed
pool per worker whose size depends only on the configuration.
"""

from sketchlpa import LpaConfig, aux_memory_estimate, build_graph

# The estimate is a deterministic model over vertex count and config; it
# never looks at the arcs, so empty shells of the right size suffice.
print(f"{'vertices':>10} {'exact':>12} {'bm':>10} {'mg':>10}")
for n in (1_000, 10_000, 100_000, 1_000_000):
    g = build_graph(n, [])
    row = [aux_memory_estimate(g, LpaConfig(variant=v, worker_count=8))
           for v in ("exact", "bm", "mg")]
    print(f"{n:>10} {row[0]:>12} {row[1]:>10} {row[2]:>10}")

# Every column includes the per-vertex label and flag arrays (five bytes
# a vertex). Subtracting that shared bookkeeping isolates the selector
# state itself:
n = 1_000_000
g = build_graph(n, [])
print("\nselector-only bytes at one million vertices, 8 workers:")
for v in ("exact", "bm", "mg"):
    total = aux_memory_estimate(g, LpaConfig(variant=v, worker_count=8))
    print(f"  {v:>5}: {total - n * 5}")

# Adding workers costs the exact variant another full map each time; the
# sketch variants pay a small constant pool per worker.
one = aux_memory_estimate(g, LpaConfig(variant="mg", worker_count=1))
eight = aux_memory_estimate(g, LpaConfig(variant="mg", worker_count=8))
print("\nmg, 1 -> 8 workers:", one, "->", eight,
      f"(+{eight - one} bytes total)")
