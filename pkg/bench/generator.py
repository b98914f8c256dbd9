# bench/generator.py
from decimal import Decimal
from typing import Tuple

import numpy as np

from factor_graph.buckets import bucket_count, bucket_ranks, complement_index
from factor_graph.errors import InvalidFactorError, InvalidKError
from factor_graph.models import Factor, RandomVariable


def range_labels(range_size: int) -> Tuple[str, ...]:
    if range_size == 2:
        return ("true", "false")
    return tuple(f"v{i}" for i in range(range_size))


def generate_factor(n: int, k: int, range_size: int = 2, seed: int = 0, name: str = "phi") -> Factor:
    """
    Generate a benchmark factor over n arguments whose largest commutative subset is
    exactly the first k positions.

    Every (bucket over the first k arguments, assignment of the others) class gets its
    own potential, drawn as a seeded permutation of 1..number of classes. For k = 0
    every row gets its own potential.

    Args:
        n: Number of arguments.
        k: Size of the commutative subset; 0 or 2..n.
        range_size: Number of values of every argument.
        seed: Seed of the potential permutation.
        name: Factor name.

    Returns:
        Factor: The generated factor, arguments named R1..Rn.
    """
    if n < 1:
        raise InvalidFactorError(f"a benchmark factor needs at least one argument, got n={n}")
    if k == 1 or k < 0 or k > n:
        raise InvalidKError(f"k must be 0 or between 2 and n={n}, got {k}")

    labels = range_labels(range_size)
    args = [RandomVariable(f"R{i + 1}", labels) for i in range(n)]
    template = Factor.constant(name, args)

    if k == 0:
        classes = np.arange(template.size, dtype=np.int64)
        class_count = template.size
    else:
        commutative = list(range(k))
        buckets = bucket_count(k, range_size)
        classes = complement_index(template, commutative) * buckets + bucket_ranks(template, commutative)
        class_count = range_size ** (n - k) * buckets

    rng = np.random.default_rng(seed)
    potentials = rng.permutation(class_count) + 1
    return Factor(name, args, classes, [Decimal(int(value)) for value in potentials])
