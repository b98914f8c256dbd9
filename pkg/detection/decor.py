# detection/decor.py
"""
DECOR: detection of commutative factors through buckets.

For every bucket, rows carrying identical potentials are grouped; the positions on
which a group's assignments disagree form a candidate set. Candidates are intersected
across buckets, and the surviving sets are verified against the factor table.
"""
from collections import OrderedDict
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from detection.antichain import CandidateAntichain, CandidateSet, intersect_antichains, max_candidate
from detection.deadline import Deadline, Status
from factor_graph.buckets import Bucket, BucketClass, bucket_partition, class_layout, shared_range, validate_subset
from factor_graph.commutativity import is_commutative
from factor_graph.errors import InvalidAssignmentError, LengthMismatchError
from factor_graph.models import Assignment, Factor

Entry = Tuple[Assignment, Decimal]
Group = Tuple[Entry, ...]


@dataclass
class DecorStats:
    buckets_visited: int = 0
    buckets_skipped: int = 0
    groups_formed: int = 0
    intersections_computed: int = 0
    candidate_peak: int = 0
    candidates_refined: int = 0

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass
class DecorResult:
    candidates: CandidateAntichain
    stats: DecorStats = field(default_factory=DecorStats)
    status: Status = Status.OK

    @property
    def max_candidate(self) -> Optional[CandidateSet]:
        return max_candidate(self.candidates)


def range_groups(factor: Factor) -> List[Tuple[int, ...]]:
    """Argument positions grouped by identical range, in order of first position."""
    groups: "OrderedDict[Tuple[str, ...], List[int]]" = OrderedDict()
    for position, arg in enumerate(factor.args):
        groups.setdefault(arg.range, []).append(position)
    return [tuple(positions) for positions in groups.values()]


def partition_identical_groups(bucket_class: BucketClass) -> List[Group]:
    """Maximal groups of at least two entries sharing one potential, in order of first entry."""
    by_potential: Dict[Decimal, List[Entry]] = {}
    for entry in bucket_class.entries:
        by_potential.setdefault(entry[1], []).append(entry)
    return [tuple(entries) for entries in by_potential.values() if len(entries) >= 2]


def elementwise_intersection(assignments: Sequence[Assignment]) -> Tuple[Optional[str], ...]:
    """Per position the value all assignments agree on, or None where they differ."""
    if not assignments:
        raise InvalidAssignmentError("element-wise intersection needs at least one assignment")
    length = len(assignments[0])
    if any(len(assignment) != length for assignment in assignments):
        raise LengthMismatchError("element-wise intersection needs assignments of equal length")
    result = []
    for values in zip(*assignments):
        first = values[0]
        result.append(first if all(value == first for value in values) else None)
    return tuple(result)


def candidate_from_group(group: Sequence[Entry], positions: Optional[Sequence[int]] = None) -> Optional[CandidateSet]:
    """Positions where the group's assignments disagree, if there are at least two of them."""
    intersection = elementwise_intersection([assignment for assignment, _ in group])
    allowed = set(range(len(intersection))) if positions is None else set(positions)
    candidate = frozenset(p for p, value in enumerate(intersection) if value is None and p in allowed)
    return candidate if len(candidate) >= 2 else None


class _Runs(NamedTuple):
    """Maximal runs of equal codes inside each bucket class, computed in one vectorized pass."""

    class_sizes: List[int]
    class_run_starts: np.ndarray  # first run of each class
    run_sizes: np.ndarray
    run_masks: np.ndarray  # bitmask of positions on which the run's assignments disagree
    buckets: List[Bucket]
    class_buckets: List[int]


def _runs(factor: Factor, positions: Tuple[int, ...]) -> _Runs:
    split = len(positions) < factor.arity
    layout = class_layout(factor, positions, split_by_complement=split)
    order = layout.order
    codes = factor.codes[order]
    class_ids = np.repeat(np.arange(layout.starts.size), layout.sizes)

    boundary = np.ones(order.size, dtype=bool)
    boundary[1:] = (codes[1:] != codes[:-1]) | (class_ids[1:] != class_ids[:-1])
    run_starts = np.flatnonzero(boundary)
    run_sizes = np.diff(np.append(run_starts, order.size))

    selected = factor.assignment_matrix[order][:, list(positions)]
    disagree = np.minimum.reduceat(selected, run_starts, axis=0) != np.maximum.reduceat(selected, run_starts, axis=0)
    weights = np.left_shift(np.int64(1), np.asarray(positions, dtype=np.int64))
    run_masks = (disagree.astype(np.int64) * weights).sum(axis=1)

    class_run_starts = np.searchsorted(class_ids[run_starts], np.arange(layout.starts.size))
    return _Runs(
        class_sizes=layout.sizes.tolist(),
        class_run_starts=class_run_starts,
        run_sizes=run_sizes,
        run_masks=run_masks,
        buckets=layout.buckets,
        class_buckets=layout.bucket_ranks.tolist(),
    )


def _positions(mask: int) -> CandidateSet:
    return frozenset(p for p in range(mask.bit_length()) if mask >> p & 1)


def _decor_group(factor: Factor, positions: Tuple[int, ...], deadline: Deadline, stats: DecorStats):
    """Run the bucket loop on one range group; returns (antichain, status)."""
    runs = _runs(factor, positions)
    total = len(runs.class_sizes)
    run_count = runs.run_sizes.size
    candidates = CandidateAntichain([positions])

    for index in range(total):
        if deadline.expired():
            stats.buckets_skipped += total - index
            logger.warning(f"DECOR on {factor.name} timed out after {index} of {total} buckets")
            return CandidateAntichain(), Status.TIMEOUT
        if runs.class_sizes[index] < 2:
            stats.buckets_skipped += 1
            continue
        stats.buckets_visited += 1

        start = int(runs.class_run_starts[index])
        end = int(runs.class_run_starts[index + 1]) if index + 1 < total else run_count
        grouped = runs.run_sizes[start:end] >= 2
        group_count = int(grouped.sum())
        if group_count == 0:
            stats.buckets_skipped += total - index - 1
            logger.debug(f"Bucket {runs.buckets[runs.class_buckets[index]]} of {factor.name} has no identical potentials")
            return CandidateAntichain(), Status.OK
        stats.groups_formed += group_count

        local = CandidateAntichain()
        for mask in set(runs.run_masks[start:end][grouped].tolist()):
            candidate = _positions(mask)
            if len(candidate) >= 2:
                local.add(candidate)
        stats.intersections_computed += len(candidates) * len(local)
        stats.candidate_peak = max(stats.candidate_peak, len(candidates), len(local))
        candidates = intersect_antichains(candidates, local)
        logger.debug(
            f"Bucket {runs.buckets[runs.class_buckets[index]]} of {factor.name}: "
            f"{group_count} groups, {len(candidates)} candidates left"
        )
        if not candidates:
            stats.buckets_skipped += total - index - 1
            return candidates, Status.OK
    return candidates, Status.OK


def _refine(factor: Factor, candidate: CandidateSet, deadline: Deadline) -> Tuple[List[CandidateSet], Status]:
    """Maximal commutative subsets of a candidate that failed verification."""
    found: List[CandidateSet] = []
    members = sorted(candidate)
    for size in range(len(members) - 1, 1, -1):
        for subset in combinations(members, size):
            if deadline.expired():
                return found, Status.TIMEOUT
            subset = frozenset(subset)
            if any(subset <= kept for kept in found):
                continue
            if is_commutative(factor, subset):
                found.append(subset)
    return found, Status.OK


def decor(factor: Factor, deadline: Optional[Deadline] = None) -> DecorResult:
    """
    Detect the maximal argument subsets a factor is commutative with respect to.

    Arguments are grouped by range and each group is processed on its own; the result
    is the union of the per-group antichains. Every returned set has been checked
    against the factor table.

    Args:
        factor: The factor to analyse.
        deadline: Optional cooperative deadline, polled once per bucket.

    Returns:
        DecorResult: Candidates, instrumentation counters and status.
    """
    deadline = deadline or Deadline.never()
    stats = DecorStats()
    result = CandidateAntichain()

    for positions in range_groups(factor):
        if len(positions) < 2:
            continue
        candidates, status = _decor_group(factor, positions, deadline, stats)
        if status is Status.TIMEOUT:
            return DecorResult(CandidateAntichain(), stats, Status.TIMEOUT)

        for candidate in candidates:
            if is_commutative(factor, candidate):
                result.add(candidate)
                continue
            stats.candidates_refined += 1
            logger.warning(f"Candidate {sorted(candidate)} of {factor.name} failed verification, searching its subsets")
            refined, status = _refine(factor, candidate, deadline)
            if status is Status.TIMEOUT:
                return DecorResult(CandidateAntichain(), stats, Status.TIMEOUT)
            for subset in refined:
                result.add(subset)

    logger.debug(f"DECOR on {factor.name} found {result.sorted()}")
    return DecorResult(result, stats, Status.OK)


def upper_bound(factor: Factor, group: Sequence[int]) -> int:
    """
    Upper bound on the size of a commutative subset within `group`: the minimum over
    buckets with more than one row of the largest number of identical potentials.
    """
    positions = validate_subset(factor, group)
    shared_range(factor, positions)
    runs = _runs(factor, positions)
    sizes = np.asarray(runs.class_sizes)
    if not (sizes > 1).any():
        return len(positions)
    largest = np.maximum.reduceat(runs.run_sizes, runs.class_run_starts)
    return int(largest[sizes > 1].min())


@dataclass
class TraceStep:
    positions: Tuple[int, ...]
    bucket: Bucket
    complement: Optional[Assignment]
    potentials: Tuple[Decimal, ...]
    groups: List[Group]
    local: List[Tuple[int, ...]]
    candidates: List[Tuple[int, ...]]
    skipped: bool = False


def decor_trace(factor: Factor) -> List[TraceStep]:
    """Replay DECOR bucket by bucket with the public building blocks, for inspection."""
    steps: List[TraceStep] = []
    for positions in range_groups(factor):
        if len(positions) < 2:
            continue
        split = len(positions) < factor.arity
        candidates = CandidateAntichain([positions])
        for bucket_class in bucket_partition(factor, positions, split_by_complement=split):
            if len(bucket_class) < 2:
                steps.append(
                    TraceStep(positions, bucket_class.bucket, bucket_class.complement, bucket_class.potentials,
                              [], [], candidates.sorted(), skipped=True)
                )
                continue
            groups = partition_identical_groups(bucket_class)
            local = CandidateAntichain()
            for group in groups:
                candidate = candidate_from_group(group, positions)
                if candidate is not None:
                    local.add(candidate)
            candidates = intersect_antichains(candidates, local) if groups else CandidateAntichain()
            steps.append(
                TraceStep(positions, bucket_class.bucket, bucket_class.complement, bucket_class.potentials,
                          groups, local.sorted(), candidates.sorted())
            )
            if not candidates:
                break
    return steps
