"""
Streaming label summaries in a handful of slots
===============================================

A vertex with thousands of neighbors cannot afford a hashtable entry per
distinct neighbor label. The sketch below keeps only k (label, weight)
slots and still surfaces the dominant label almost always.
"""

from sketchlpa import BmState, MgSketch, reduce_votes

# Feed a stream where label 7 dominates.
stream = [(7, 2.0), (3, 1.0), (7, 1.0), (5, 0.5), (7, 2.0), (9, 1.0),
          (2, 0.5), (7, 1.0), (4, 1.0), (7, 0.5)]

sk = MgSketch(4)
for label, w in stream:
    sk.accumulate(label, w)

print("sketch slots after the stream:", sk.items())
print("dominant label:", sk.max_key())

# The slot values are residuals, not exact totals: overflowing arrivals
# decrement every slot. The double-scan trick recovers exact weights for
# the surviving candidate set.
sk.clear_values()
for label, w in stream:
    sk.rescan_add(label, w)
print("exact weights of the kept candidates:", sk.items())

# Two sketches built over halves of the stream merge into one summary.
left, right = MgSketch(4), MgSketch(4)
for label, w in stream[:5]:
    left.accumulate(label, w)
for label, w in stream[5:]:
    right.accumulate(label, w)
left.merge(right)
print("merged halves still find:", left.max_key())

# The single-candidate vote is even smaller: one label and one counter.
# It is only reliable when the winner's share is large (above 2/3 it
# cannot miss), which is exactly the late-iteration consensus regime.
vote = BmState()
for label, w in stream:
    vote.accumulate(label, w)
print("vote candidate:", vote.candidate, "with residual", vote.weight)

# Per-chunk votes combine by keeping the heaviest survivor.
a, b = BmState(), BmState()
for label, w in stream[:5]:
    a.accumulate(label, w)
for label, w in stream[5:]:
    b.accumulate(label, w)
print("reduced chunk votes:", reduce_votes([a, b]).candidate)
