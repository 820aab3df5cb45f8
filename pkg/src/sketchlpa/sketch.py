"""Bounded-memory summaries of weighted label streams.

Two summaries are provided. :class:`MgSketch` is a weighted Misra-Gries
sketch holding at most ``k`` (label, weight) slots; it retains every label
whose total stream weight exceeds ``W / (k + 1)`` where ``W`` is the total
weight fed in. :class:`BmState` is a weighted Boyer-Moore majority vote
holding a single candidate. Both read a stream one (label, weight) pair at
a time and never allocate beyond their fixed slots, which is what makes
them usable as drop-in replacements for a full per-label weight map.
"""

from __future__ import annotations

from dataclasses import dataclass


class MgSketch:
    """Weighted Misra-Gries sketch with a fixed number of slots.

    A slot is empty exactly when its weight is zero; keys of empty slots
    are stale leftovers and carry no meaning until re-populated (they do,
    however, take part in key matching, which is observationally
    equivalent to populating a fresh slot). Non-empty slots always hold
    pairwise-distinct keys and non-negative weights.

    Parameters
    ----------
    slots : int
        Number of (key, weight) pairs tracked, at least 1.
    """

    __slots__ = ("slots", "keys", "values")

    def __init__(self, slots: int = 8):
        if slots < 1:
            raise ValueError("sketch needs at least one slot")
        self.slots = slots
        self.keys = [0] * slots
        self.values = [0.0] * slots

    def clear(self) -> None:
        """Empty every slot. Keys are left as-is; weight zero marks empty."""
        values = self.values
        for s in range(self.slots):
            values[s] = 0.0

    def accumulate(self, key: int, weight: float) -> None:
        """Feed one stream element into the sketch.

        Exactly one of three things happens: the slot already holding
        ``key`` gains ``weight``; an empty slot is populated with
        (key, weight); or, with no match and no empty slot, every slot
        loses ``weight`` and the element is dropped. Weights clamp at
        zero when decremented so the empty-slot test stays exact.
        """
        if weight <= 0:
            raise ValueError("stream weights must be positive")
        values = self.values
        try:
            s = self.keys.index(key)
        except ValueError:
            pass
        else:
            values[s] += weight
            return
        try:
            s = values.index(0.0)
        except ValueError:
            for t in range(self.slots):
                v = values[t] - weight
                values[t] = v if v > 0.0 else 0.0
        else:
            self.keys[s] = key
            values[s] = weight

    def merge(self, other: "MgSketch") -> None:
        """Fold another sketch into this one.

        Every non-empty slot of ``other`` is replayed through
        :meth:`accumulate` in ascending slot order; ``other`` is left
        untouched. Residual weights may shrink further but the combined
        heavy-hitter guarantee is preserved.
        """
        if other is self:
            raise ValueError("cannot merge a sketch into itself")
        if other.slots != self.slots:
            raise ValueError("sketches must have the same slot count")
        for s in range(other.slots):
            w = other.values[s]
            if w > 0.0:
                self.accumulate(other.keys[s], w)

    def max_key(self) -> int | None:
        """Key with the largest weight, smallest key on ties, None if empty."""
        best = None
        best_w = 0.0
        for s in range(self.slots):
            v = self.values[s]
            if v <= 0.0:
                continue
            c = self.keys[s]
            if best is None or v > best_w or (v == best_w and c < best):
                best = c
                best_w = v
        return best

    def clear_values(self) -> None:
        """Zero all weights but keep keys, turning them into a candidate set."""
        values = self.values
        for s in range(self.slots):
            values[s] = 0.0

    def rescan_add(self, key: int, weight: float) -> None:
        """Add ``weight`` to the slot whose key matches, if any.

        Used after :meth:`clear_values` to re-count exact weights for the
        surviving candidate keys; elements without a matching key are
        ignored rather than admitted.
        """
        if weight <= 0:
            raise ValueError("stream weights must be positive")
        try:
            s = self.keys.index(key)
        except ValueError:
            return
        self.values[s] += weight

    def items(self) -> list[tuple[int, float]]:
        """Non-empty (key, weight) pairs in slot order."""
        return [
            (self.keys[s], self.values[s])
            for s in range(self.slots)
            if self.values[s] > 0.0
        ]

    def __repr__(self) -> str:
        return f"MgSketch(slots={self.slots}, items={self.items()!r})"


@dataclass
class BmState:
    """Weighted Boyer-Moore majority vote: one candidate and its standing weight."""

    candidate: int = 0
    weight: float = 0.0

    def accumulate(self, key: int, weight: float) -> None:
        """Feed one stream element into the vote.

        A match reinforces the candidate; otherwise the standing weight
        absorbs the newcomer if it is strictly heavier, and yields the
        candidacy (at the newcomer's full weight) if it is not.
        """
        if weight <= 0:
            raise ValueError("stream weights must be positive")
        if key == self.candidate:
            self.weight += weight
        elif self.weight > weight:
            self.weight -= weight
        else:
            self.candidate = key
            self.weight = weight


def reduce_votes(states: list[BmState]) -> BmState:
    """Pick the strongest vote out of several partial Boyer-Moore states.

    Returns the state with the maximum standing weight, breaking ties
    toward the smaller candidate label. This is a heuristic combination:
    unlike sketch merging it does not replay streams, so it only preserves
    majorities that dominate within at least one partial state.
    """
    if not states:
        raise ValueError("need at least one vote state")
    best = states[0]
    for st in states[1:]:
        if st.weight > best.weight or (
            st.weight == best.weight and st.candidate < best.candidate
        ):
            best = st
    return best
