"""Seed-cover enumeration: short covers per pair scan, long uniform covers.

Short covers have cardinality two or three.  Every covering pair is kept;
each non-covering pair {i, j} is completed to a ternary cover by the
longest task k outside the pair whose demand exceeds the slack
``b - a_i - a_j``, when one exists.  Long covers group tasks by equal
demand v and take the k longest / k shortest of a group, with k the
smallest count for which k*v exceeds the capacity.

Only short covers compete for the ``n_cover`` budget; long covers are
appended after the cut.  All tie-breaks are by lowest column index so the
output is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .instance import DemandSystem
from .polyhedral import Cover


class GenerationRule(str, Enum):
    BINARY = "binary"
    TERNARY = "ternary"
    LONG_MAX = "long_max"
    LONG_MIN = "long_min"


SHORT_RULES = (GenerationRule.BINARY, GenerationRule.TERNARY)
LONG_RULES = (GenerationRule.LONG_MAX, GenerationRule.LONG_MIN)


@dataclass
class CoverBatch:
    """Deduplicated covers in generation order, tagged with their rule."""

    covers: List[Cover] = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)

    def add(self, members: Tuple[int, ...], row: int, rule: GenerationRule) -> bool:
        """Append unless an identical member set was added before."""
        if members in self._seen:
            return False
        self._seen.add(members)
        self.covers.append(Cover(members=members, source_row=row, rule=rule.value))
        return True

    def merge(self, other: "CoverBatch") -> "CoverBatch":
        for cover in other.covers:
            self.add(cover.members, cover.source_row, GenerationRule(cover.rule))
        return self

    def counts(self) -> Dict[str, int]:
        out = {rule.value: 0 for rule in GenerationRule}
        for cover in self.covers:
            out[cover.rule] += 1
        return out

    def __iter__(self):
        return iter(self.covers)

    def __len__(self) -> int:
        return len(self.covers)


def _prefix_top3(order: np.ndarray, durations: np.ndarray) -> np.ndarray:
    """For each prefix of ``order``, the top-3 columns by (duration desc, index asc).

    Row L of the result describes the prefix of length L; unused slots are -1.
    """
    n = order.size
    top3 = np.full((n + 1, 3), -1, dtype=np.int64)
    best: List[int] = []
    for length in range(1, n + 1):
        col = int(order[length - 1])
        best.append(col)
        best.sort(key=lambda c: (-int(durations[c]), c))
        del best[3:]
        top3[length, : len(best)] = best
    return top3


def enumerate_short_covers(system: DemandSystem, include_ternary: bool = True) -> CoverBatch:
    """All binary covers plus the completed ternary covers, row by row."""
    batch = CoverBatch()
    durations = system.durations
    n = system.n_cols
    if n < 2:
        return batch
    i_idx, j_idx = np.triu_indices(n, 1)
    for row in range(system.n_rows):
        a = system.matrix[row]
        b = int(system.rhs[row])
        pair_sums = a[i_idx] + a[j_idx]
        covering = pair_sums > b

        slots: List[Optional[Tuple[int, ...]]] = [None] * i_idx.size
        rules: List[GenerationRule] = [GenerationRule.BINARY] * i_idx.size
        for pos in np.flatnonzero(covering):
            slots[pos] = (int(i_idx[pos]), int(j_idx[pos]))

        if include_ternary:
            # Demand-descending order; the eligible set for a slack t is a
            # prefix of it, so the completing task comes from a prefix top-3
            # (two slots may be burned by i and j themselves).
            order = np.lexsort((np.arange(n), -a))
            a_desc = a[order]
            top3 = _prefix_top3(order, durations)
            non_pos = np.flatnonzero(~covering)
            if non_pos.size:
                slack = b - pair_sums[non_pos]
                prefix_len = np.searchsorted(-a_desc, -slack, side="left")
                cand = top3[prefix_len]
                ii = i_idx[non_pos]
                jj = j_idx[non_pos]
                valid = (cand >= 0) & (cand != ii[:, None]) & (cand != jj[:, None])
                has = valid.any(axis=1)
                first = np.argmax(valid, axis=1)
                for sel in np.flatnonzero(has):
                    pos = int(non_pos[sel])
                    k = int(cand[sel, first[sel]])
                    slots[pos] = tuple(sorted((int(ii[sel]), int(jj[sel]), k)))
                    rules[pos] = GenerationRule.TERNARY

        for pos, members in enumerate(slots):
            if members is not None:
                batch.add(members, row, rules[pos])
    return batch


def enumerate_long_covers(
    system: DemandSystem, max_cardinality: Optional[int] = None
) -> CoverBatch:
    """Uniform-demand covers: per demand value v, the k longest and k shortest."""
    batch = CoverBatch()
    durations = system.durations
    for row in range(system.n_rows):
        a = system.matrix[row]
        b = int(system.rhs[row])
        for v in np.unique(a[a > 0]):
            k = b // int(v) + 1
            if max_cardinality is not None and k > max_cardinality:
                continue
            group = np.flatnonzero(a == v)
            if group.size < k:
                continue
            dgrp = durations[group]
            longest = group[np.lexsort((group, -dgrp))[:k]]
            shortest = group[np.lexsort((group, dgrp))[:k]]
            batch.add(tuple(sorted(int(c) for c in longest)), row, GenerationRule.LONG_MAX)
            batch.add(tuple(sorted(int(c) for c in shortest)), row, GenerationRule.LONG_MIN)
    return batch


def cover_capacity_bound(cover: Cover, durations: Sequence[int]) -> Fraction:
    """Capacity bound of the plain cover inequality (indicator, |C| - 1)."""
    return Fraction(
        sum(int(durations[i]) for i in cover.members), len(cover.members) - 1
    )


def select_top_covers(
    batch: CoverBatch, durations: Sequence[int], limit: int
) -> List[Cover]:
    """Rank short covers by capacity bound, keep ``limit``, append long covers.

    Sorting is stable, so equal bounds keep generation order.
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    short_tags = {r.value for r in SHORT_RULES}
    shorts = [c for c in batch if c.rule in short_tags]
    longs = [c for c in batch if c.rule not in short_tags]
    shorts.sort(key=lambda c: cover_capacity_bound(c, durations), reverse=True)
    return shorts[:limit] + longs


def seed_covers(
    system: DemandSystem, max_cardinality: Optional[int] = None
) -> CoverBatch:
    """Run both enumeration rules, honoring a cardinality cap.

    A cap of 2 is disjunctive-only mode: no ternary completion and no long
    covers at all.
    """
    include_ternary = max_cardinality is None or max_cardinality >= 3
    batch = enumerate_short_covers(system, include_ternary=include_ternary)
    if max_cardinality is None or max_cardinality >= 3:
        batch.merge(enumerate_long_covers(system, max_cardinality=max_cardinality))
    return batch
