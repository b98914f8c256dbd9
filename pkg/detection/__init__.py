# detection/__init__.py
from .deadline import Deadline, Status
from .antichain import CandidateAntichain, CandidateSet, intersect_antichains, max_candidate
from .decor import (
    DecorResult,
    DecorStats,
    TraceStep,
    candidate_from_group,
    decor,
    decor_trace,
    elementwise_intersection,
    partition_identical_groups,
    range_groups,
    upper_bound,
)
from .naive import NaiveResult, naive_all_commutative, naive_max_commutative, subsets_descending
