# detection/naive.py
"""Baseline detector: test every argument subset in order of descending size."""
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from loguru import logger

from detection.antichain import CandidateSet
from detection.deadline import Deadline, Status
from factor_graph.commutativity import has_shared_range, is_commutative
from factor_graph.models import Factor


@dataclass
class NaiveResult:
    subset: Optional[CandidateSet]
    status: Status = Status.OK
    subsets_tested: int = 0
    subsets_rejected: int = 0


def subsets_descending(n: int) -> Iterator[Tuple[int, ...]]:
    """All subsets of range(n), largest first, lexicographic within one size, ending with the empty set."""
    if n < 1:
        raise ValueError(f"subset enumeration needs n >= 1, got {n}")
    positions = range(n)
    for size in range(n, -1, -1):
        yield from combinations(positions, size)


def naive_max_commutative(factor: Factor, deadline: Optional[Deadline] = None) -> NaiveResult:
    """
    Return the first subset of size at least two the factor is commutative with
    respect to; by the iteration order it has maximum size.
    """
    deadline = deadline or Deadline.never()
    result = NaiveResult(subset=None)
    for subset in subsets_descending(factor.arity):
        if len(subset) < 2:
            break
        if deadline.expired():
            logger.warning(f"Naive search on {factor.name} timed out after {result.subsets_tested} subsets")
            result.status = Status.TIMEOUT
            return result
        if not has_shared_range(factor, subset):
            result.subsets_rejected += 1
            continue
        result.subsets_tested += 1
        if is_commutative(factor, subset):
            result.subset = frozenset(subset)
            break
    found = sorted(result.subset) if result.subset else None
    logger.debug(f"Naive search on {factor.name} found {found}")
    return result


def naive_all_commutative(factor: Factor) -> List[CandidateSet]:
    """Every commutative subset of size at least two; exhaustive, meant for small factors."""
    return [
        frozenset(subset)
        for subset in subsets_descending(factor.arity)
        if len(subset) >= 2 and is_commutative(factor, subset)
    ]
