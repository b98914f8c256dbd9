# factor_graph/crv.py
"""
Counting-representation compression: commutative arguments are replaced by the
bucket of their values, so a table over n arguments shrinks to one row per
(assignment of the other arguments, bucket).
"""
from dataclasses import dataclass, field
from decimal import Decimal
from math import prod
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from factor_graph.buckets import (
    Bucket,
    bucket_count,
    bucket_ranks,
    complement_index,
    enumerate_buckets,
    validate_subset,
)
from factor_graph.commutativity import is_commutative
from factor_graph.errors import InvalidFactorError, MixedRangesError, NotCommutativeError, SubsetTooSmallError
from factor_graph.models import Assignment, Factor, RandomVariable
from factor_graph.potentials import format_potential

CompressedKey = Tuple[Assignment, Bucket]


@dataclass(frozen=True)
class CompressedFactor:
    name: str
    args: Tuple[RandomVariable, ...]  # original argument order, needed for expansion
    counted_positions: Tuple[int, ...]
    rows: Dict[CompressedKey, Decimal] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "counted_positions", tuple(sorted(self.counted_positions)))
        if len(self.counted_positions) < 2:
            raise SubsetTooSmallError(f"compressed factor {self.name} needs at least two counted arguments")
        if len({arg.range for arg in self.counted_args}) != 1:
            raise MixedRangesError(f"counted arguments of {self.name} do not share one range")

        range_size = len(self.counted_range)
        expected = prod(arg.size for arg in self.fixed_args) * bucket_count(len(self.counted_positions), range_size)
        if len(self.rows) != expected:
            raise InvalidFactorError(f"compressed factor {self.name} has {len(self.rows)} rows, expected {expected}")
        for fixed, bucket in self.rows:
            if len(fixed) != len(self.fixed_args) or len(bucket.counts) != range_size:
                raise InvalidFactorError(f"compressed factor {self.name} has a malformed row key {fixed}, {bucket}")
            if bucket.size != len(self.counted_positions):
                raise InvalidFactorError(f"bucket {bucket} of {self.name} does not sum to the counted arguments")

    @property
    def fixed_args(self) -> Tuple[RandomVariable, ...]:
        counted = set(self.counted_positions)
        return tuple(arg for p, arg in enumerate(self.args) if p not in counted)

    @property
    def counted_args(self) -> Tuple[RandomVariable, ...]:
        return tuple(self.args[p] for p in self.counted_positions)

    @property
    def counted_range(self) -> Tuple[str, ...]:
        return self.args[self.counted_positions[0]].range

    def potential(self, fixed: Sequence[str], bucket: Bucket) -> Decimal:
        return self.rows[(tuple(fixed), bucket)]

    def to_frame(self) -> pd.DataFrame:
        records = []
        for (fixed, bucket), potential in self.rows.items():
            record = {arg.name: value for arg, value in zip(self.fixed_args, fixed)}
            record["bucket"] = str(bucket)
            record["potential"] = format_potential(potential)
            records.append(record)
        columns = [arg.name for arg in self.fixed_args] + ["bucket", "potential"]
        return pd.DataFrame.from_records(records, columns=columns)


def compress_to_crv(factor: Factor, subset: Sequence[int]) -> CompressedFactor:
    """
    Replace the commutative arguments at `subset` by a counting representation.

    Rows are ordered by the assignment of the remaining arguments (row-major),
    then by canonical bucket order.
    """
    positions = validate_subset(factor, subset)
    if len(positions) < 2:
        raise SubsetTooSmallError(f"compression of {factor.name} needs at least two arguments, got {list(positions)}")
    if not is_commutative(factor, positions):
        raise NotCommutativeError(f"factor {factor.name} is not commutative with respect to {list(positions)}")

    range_size = factor.args[positions[0]].size
    buckets = enumerate_buckets(len(positions), range_size)
    keys = complement_index(factor, positions) * len(buckets) + bucket_ranks(factor, positions)
    unique_keys, first_rows = np.unique(keys, return_index=True)

    rest = [p for p in range(factor.arity) if p not in positions]
    rest_shape = tuple(factor.shape[p] for p in rest)
    rows: Dict[CompressedKey, Decimal] = {}
    for key, row in zip(unique_keys.tolist(), first_rows.tolist()):
        complement, rank = divmod(key, len(buckets))
        indices = np.unravel_index(complement, rest_shape) if rest else ()
        fixed = tuple(factor.args[p].range[int(i)] for p, i in zip(rest, indices))
        rows[(fixed, buckets[rank])] = factor.values[int(factor.codes[row])]

    logger.debug(f"Compressed {factor.name}: {factor.size} rows -> {len(rows)} rows")
    return CompressedFactor(factor.name, factor.args, positions, rows)


def expand_crv(compressed: CompressedFactor) -> Factor:
    """Rebuild the dense factor a compressed factor stands for."""
    args = compressed.args
    positions = compressed.counted_positions
    buckets = enumerate_buckets(len(positions), len(compressed.counted_range))
    rank_of = {bucket: rank for rank, bucket in enumerate(buckets)}
    fixed_args = compressed.fixed_args

    values: List[Decimal] = []
    value_index: Dict[Decimal, int] = {}
    lookup = np.full(prod(arg.size for arg in fixed_args) * len(buckets), -1, dtype=np.int64)
    for (fixed, bucket), potential in compressed.rows.items():
        indices = tuple(arg.index_of(label) for arg, label in zip(fixed_args, fixed))
        complement = int(np.ravel_multi_index(indices, tuple(arg.size for arg in fixed_args))) if fixed_args else 0
        if potential not in value_index:
            value_index[potential] = len(values)
            values.append(potential)
        lookup[complement * len(buckets) + rank_of[bucket]] = value_index[potential]

    # Only the row layout of the argument list is used.
    template = Factor.constant(compressed.name, args)
    keys = complement_index(template, positions) * len(buckets) + bucket_ranks(template, positions)
    return Factor(compressed.name, args, lookup[keys], values)
