"""
Loading and converting graph files
==================================

Edge lists in the wild are messy: comments, duplicate edges, arbitrary
vertex ids, both orientations of the same edge. Loading canonicalizes
all of that into symmetric CSR; writing back produces a stable form.
"""

import io
import tempfile
from pathlib import Path

from sketchlpa import load_graph, validate_graph, write_edgelist, write_matrix_market

messy = """\
# weighted test graph
30 10 1.5
10 30 1.5
10 10 2
20 30
30 40 0.25
"""

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "messy.el"
    path.write_text(messy)

    # Sparse ids are remapped to a dense 0..n-1 range in first-seen order.
    g, mapping = load_graph(path, return_mapping=True)
    print("id mapping:", mapping)
    print("vertices:", g.num_vertices, " arcs:", g.num_arcs)

    # Duplicate edges were summed, the self-loop kept a single arc.
    for v in range(g.num_vertices):
        nbrs, ws = g.neighbors(v)
        print(f"  {v}: ", list(zip(nbrs.tolist(), ws.tolist())))

    validate_graph(g)

    # Canonical edge-list output: one line per undirected edge, i <= j.
    buf = io.StringIO()
    write_edgelist(g, buf)
    print("\ncanonical edge list:")
    print(buf.getvalue())

    # MatrixMarket carries the vertex count in its header, so isolated
    # vertices survive a round trip that a bare edge list would drop.
    buf = io.StringIO()
    write_matrix_market(g, buf)
    print("matrix market form:")
    print(buf.getvalue())
