# factor_graph/__init__.py
from .models import Assignment, Factor, FactorGraph, RandomVariable
from .potentials import Potential, format_potential, parse_potential
from .factors import apply_argument_permutation, build_factor, potential_of
from .buckets import (
    Bucket,
    BucketClass,
    bucket_count,
    bucket_of,
    bucket_partition,
    enumerate_buckets,
    multinomial,
    shared_range,
)
from .commutativity import is_commutative, is_commutative_by_permutation
from .crv import CompressedFactor, compress_to_crv, expand_crv
from .io import dump_factor_graph, load_factor_graph, parse_factor_graph, save_factor_graph
