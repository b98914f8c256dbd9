# factor_graph/commutativity.py
from itertools import permutations
from typing import Sequence

import numpy as np

from factor_graph.buckets import bucket_count, bucket_ranks, complement_index, validate_subset
from factor_graph.models import Factor


def has_shared_range(factor: Factor, subset: Sequence[int]) -> bool:
    return len({factor.args[p].range for p in subset}) <= 1


def is_commutative(factor: Factor, subset: Sequence[int]) -> bool:
    """
    Check whether the factor is invariant under every permutation of the arguments
    at `subset`.

    Rows are grouped by (assignment of the other arguments, bucket over the subset);
    the factor is commutative iff every group carries a single potential.
    """
    positions = validate_subset(factor, subset)
    if len(positions) <= 1:
        return True
    if not has_shared_range(factor, positions):
        return False

    ranks = bucket_ranks(factor, positions)
    complements = complement_index(factor, positions)
    range_size = factor.args[positions[0]].size
    keys = complements * bucket_count(len(positions), range_size) + ranks

    reference = np.empty(int(keys.max()) + 1, dtype=np.int64)
    reference[keys] = factor.codes
    return bool((reference[keys] == factor.codes).all())


def is_commutative_by_permutation(factor: Factor, subset: Sequence[int]) -> bool:
    """Literal form: compare the table against every rearrangement of the subset's axes."""
    positions = validate_subset(factor, subset)
    if len(positions) <= 1:
        return True
    if not has_shared_range(factor, positions):
        return False

    table = factor.codes.reshape(factor.shape)
    for image in permutations(positions):
        axes = list(range(factor.arity))
        for source, target in zip(positions, image):
            axes[source] = target
        if not np.array_equal(table, table.transpose(axes)):
            return False
    return True
