# factor_graph/buckets.py
"""
Buckets: histograms over range values counting how often each value occurs
among a subset of factor arguments, and the partition of table rows they induce.
"""
from dataclasses import dataclass
from decimal import Decimal
from math import comb, factorial
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from factor_graph.errors import InvalidSubsetError, MixedRangesError
from factor_graph.models import Assignment, Factor


@dataclass(frozen=True)
class Bucket:
    counts: Tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __str__(self):
        return "[" + ",".join(str(count) for count in self.counts) + "]"


@dataclass(frozen=True)
class BucketClass:
    """Rows of a factor whose subset restriction falls into one bucket."""

    bucket: Bucket
    entries: Tuple[Tuple[Assignment, Decimal], ...]
    rows: Tuple[int, ...]
    # Values of the arguments outside the subset when classes are split by them.
    complement: Optional[Assignment] = None

    @property
    def potentials(self) -> Tuple[Decimal, ...]:
        return tuple(potential for _, potential in self.entries)

    def __len__(self):
        return len(self.entries)


class ClassLayout(NamedTuple):
    """Sorted row layout of a bucket partition, used by the vectorized detectors."""

    order: np.ndarray  # row indices sorted by (bucket rank, complement index, code)
    starts: np.ndarray  # start offset of each class inside `order`
    sizes: np.ndarray
    bucket_ranks: np.ndarray  # per class, index into `buckets`
    complements: np.ndarray  # per class, row-major index over the complement arguments
    buckets: List[Bucket]


def validate_subset(factor: Factor, subset: Sequence[int]) -> Tuple[int, ...]:
    positions = tuple(int(p) for p in subset)
    for position in positions:
        if position < 0 or position >= factor.arity:
            raise InvalidSubsetError(
                f"position {position} is out of range for factor {factor.name} with {factor.arity} arguments"
            )
    if len(set(positions)) != len(positions):
        raise InvalidSubsetError(f"subset {list(positions)} repeats a position")
    return tuple(sorted(positions))


def shared_range(factor: Factor, subset: Sequence[int]) -> Tuple[str, ...]:
    """The common range of the subset's arguments; the first argument's range for an empty subset."""
    positions = validate_subset(factor, subset)
    if not positions:
        return factor.args[0].range
    ranges = {factor.args[p].range for p in positions}
    if len(ranges) > 1:
        raise MixedRangesError(f"positions {list(positions)} of factor {factor.name} do not share one range")
    return ranges.pop()


def bucket_of(assignment: Sequence[str], subset: Sequence[int], range_values: Sequence[str]) -> Bucket:
    counts = [0] * len(range_values)
    lookup = {label: i for i, label in enumerate(range_values)}
    for position in subset:
        if position < 0 or position >= len(assignment):
            raise InvalidSubsetError(f"position {position} is out of range for an assignment of length {len(assignment)}")
        label = assignment[position]
        if label not in lookup:
            raise MixedRangesError(f"value {label!r} at position {position} is not in range {list(range_values)}")
        counts[lookup[label]] += 1
    return Bucket(tuple(counts))


def _weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for value in range(total, -1, -1):
        for rest in _weak_compositions(total - value, parts - 1):
            yield (value,) + rest


def enumerate_buckets(subset_size: int, range_size: int) -> List[Bucket]:
    """
    All buckets a subset of `subset_size` arguments with `range_size` values entails,
    in lexicographically descending order of counts.
    """
    if subset_size < 0 or range_size < 1:
        raise ValueError(f"invalid bucket shape ({subset_size}, {range_size})")
    return [Bucket(counts) for counts in _weak_compositions(subset_size, range_size)]


def bucket_count(subset_size: int, range_size: int) -> int:
    return comb(subset_size + range_size - 1, subset_size)


def multinomial(counts: Sequence[int]) -> int:
    """Number of assignments of sum(counts) arguments that fall into the bucket `counts`."""
    result = factorial(sum(counts))
    for count in counts:
        result //= factorial(count)
    return result


def bucket_ranks(factor: Factor, subset: Sequence[int]) -> np.ndarray:
    """Per row, the index of the row's bucket in enumerate_buckets order."""
    positions = list(validate_subset(factor, subset))
    size = len(positions)
    range_size = len(shared_range(factor, positions))
    if not positions:
        return np.zeros(factor.size, dtype=np.int64)

    selected = factor.assignment_matrix[:, positions]
    base = size + 1
    # Mixed radix over counts: a larger key means a lexicographically larger bucket.
    keys = np.zeros(factor.size, dtype=np.int64)
    for value in range(range_size):
        keys = keys * base + (selected == value).sum(axis=1, dtype=np.int64)

    bucket_keys = np.zeros(bucket_count(size, range_size), dtype=np.int64)
    for i, bucket in enumerate(enumerate_buckets(size, range_size)):
        key = 0
        for count in bucket.counts:
            key = key * base + count
        bucket_keys[i] = key
    # bucket_keys is strictly descending
    ascending = bucket_keys[::-1]
    return (len(bucket_keys) - 1 - np.searchsorted(ascending, keys)).astype(np.int64)


def complement_index(factor: Factor, subset: Sequence[int]) -> np.ndarray:
    """Per row, the row-major index of the assignment of the arguments outside the subset."""
    positions = set(validate_subset(factor, subset))
    rest = [p for p in range(factor.arity) if p not in positions]
    if not rest:
        return np.zeros(factor.size, dtype=np.int64)
    columns = factor.assignment_matrix[:, rest].T.astype(np.int64)
    return np.ravel_multi_index(tuple(columns), tuple(factor.shape[p] for p in rest)).astype(np.int64)


def class_layout(factor: Factor, subset: Sequence[int], split_by_complement: bool = False) -> ClassLayout:
    positions = validate_subset(factor, subset)
    range_values = shared_range(factor, positions)
    buckets = enumerate_buckets(len(positions), len(range_values))
    ranks = bucket_ranks(factor, positions)
    if split_by_complement:
        complements = complement_index(factor, positions)
    else:
        complements = np.zeros(factor.size, dtype=np.int64)

    order = np.lexsort((factor.codes, complements, ranks))
    sorted_ranks = ranks[order]
    sorted_complements = complements[order]
    boundary = np.ones(order.size, dtype=bool)
    boundary[1:] = (sorted_ranks[1:] != sorted_ranks[:-1]) | (sorted_complements[1:] != sorted_complements[:-1])
    starts = np.flatnonzero(boundary)
    sizes = np.diff(np.append(starts, order.size))
    return ClassLayout(
        order=order,
        starts=starts,
        sizes=sizes,
        bucket_ranks=sorted_ranks[starts],
        complements=sorted_complements[starts],
        buckets=buckets,
    )


def bucket_partition(factor: Factor, subset: Sequence[int], split_by_complement: bool = False) -> List[BucketClass]:
    """
    Partition the rows of a factor by their bucket over `subset`.

    Args:
        factor: The factor whose table is partitioned.
        subset: Argument positions sharing one range.
        split_by_complement: Also key classes by the assignment of the other arguments.

    Returns:
        List[BucketClass]: Classes in canonical bucket order, then complement row-major order.
    """
    positions = validate_subset(factor, subset)
    layout = class_layout(factor, positions, split_by_complement)
    rest = [p for p in range(factor.arity) if p not in positions]
    table = factor.table

    classes = []
    for start, size, rank in zip(layout.starts.tolist(), layout.sizes.tolist(), layout.bucket_ranks.tolist()):
        rows = tuple(sorted(layout.order[start:start + size].tolist()))
        entries = []
        for row in rows:
            entries.append((factor.assignment(row), table[row]))
        complement = None
        if split_by_complement:
            first = entries[0][0]
            complement = tuple(first[p] for p in rest)
        classes.append(BucketClass(layout.buckets[rank], tuple(entries), rows, complement))
    return classes
