# lifting/canonical.py
"""Order-independent comparison of factor tables by brute-force argument rearrangement."""
from collections import Counter
from decimal import Decimal
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from factor_graph.errors import ArityLimitExceededError
from factor_graph.factors import apply_argument_permutation
from factor_graph.models import Factor


class ValueIndex:
    """Shared integer ids for potentials, so tables of different factors compare as int arrays."""

    def __init__(self):
        self._ids: Dict[Decimal, int] = {}

    def table(self, factor: Factor) -> np.ndarray:
        mapping = np.array([self._ids.setdefault(value, len(self._ids)) for value in factor.values], dtype=np.int64)
        return mapping[factor.codes]


def find_rearrangement(
    factor: Factor, representative: Factor, values: Optional[ValueIndex] = None
) -> Optional[Tuple[int, ...]]:
    """
    Find a permutation p such that apply_argument_permutation(factor, p) has
    argument ranges and a table identical to the representative's.

    Returns:
        Optional[Tuple[int, ...]]: The first matching permutation in lexicographic order, or None.
    """
    if factor.arity != representative.arity or factor.size != representative.size:
        return None
    if sorted(arg.range for arg in factor.args) != sorted(arg.range for arg in representative.args):
        return None
    if Counter(factor.table) != Counter(representative.table):
        return None

    values = values or ValueIndex()
    target = values.table(representative)
    source = values.table(factor).reshape(factor.shape)
    wanted = [arg.range for arg in representative.args]
    for permutation in permutations(range(factor.arity)):
        if any(factor.args[p].range != wanted[i] for i, p in enumerate(permutation)):
            continue
        if np.array_equal(source.transpose(permutation).ravel(), target):
            return permutation
    return None


def group_equivalent_factors(
    factors: Sequence[Factor], arity_limit: int
) -> Tuple[List[List[str]], Dict[str, Factor]]:
    """
    Cluster factors whose tables are equal up to an argument rearrangement.

    Every factor is compared against the first member of each existing cluster and,
    on a match, rearranged to that member's argument order.

    Returns:
        Tuple[List[List[str]], Dict[str, Factor]]: Clusters of factor names in
        declaration order, and every factor in its rearranged form.
    """
    values = ValueIndex()
    representatives: List[Factor] = []
    clusters: List[List[str]] = []
    rearranged: Dict[str, Factor] = {}
    for factor in factors:
        if factor.arity > arity_limit:
            logger.error(f"Factor {factor.name} has arity {factor.arity}, above the limit {arity_limit}")
            raise ArityLimitExceededError(
                f"factor {factor.name} has arity {factor.arity}; rearrangement search is limited to {arity_limit}"
            )
        for index, representative in enumerate(representatives):
            permutation = find_rearrangement(factor, representative, values)
            if permutation is not None:
                rearranged[factor.name] = apply_argument_permutation(factor, permutation)
                clusters[index].append(factor.name)
                break
        else:
            representatives.append(factor)
            clusters.append([factor.name])
            rearranged[factor.name] = factor
    return clusters, rearranged
