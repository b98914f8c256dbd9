# factor_graph/factors.py
from decimal import Decimal
from typing import Dict, Sequence

import numpy as np

from factor_graph.errors import InvalidPermutationError
from factor_graph.models import Factor, RandomVariable
from factor_graph.potentials import PotentialLike, parse_potential


def build_factor(name: str, args: Sequence[RandomVariable], potentials: Sequence[PotentialLike]) -> Factor:
    """
    Build a validated factor from a row-major list of potentials.

    Args:
        name: Factor name.
        args: Ordered argument variables, no duplicates.
        potentials: One potential per joint assignment, last argument varying fastest.

    Returns:
        Factor: The validated factor.
    """
    index: Dict[Decimal, int] = {}
    codes = [index.setdefault(parse_potential(value), len(index)) for value in potentials]
    return Factor(name, args, np.asarray(codes, dtype=np.int64), list(index))


def potential_of(factor: Factor, assignment: Sequence[str]) -> Decimal:
    return factor.values[int(factor.codes[factor.row_index(assignment)])]


def apply_argument_permutation(factor: Factor, permutation: Sequence[int]) -> Factor:
    """
    Reorder the arguments of a factor while keeping its semantics.

    permutation[i] is the old position that moves to new position i, so the new
    factor evaluated on (r[permutation[0]], ..., r[permutation[n-1]]) equals the
    old factor evaluated on (r[0], ..., r[n-1]).
    """
    permutation = [int(p) for p in permutation]
    if sorted(permutation) != list(range(factor.arity)):
        raise InvalidPermutationError(
            f"{permutation} is not a permutation of the {factor.arity} positions of {factor.name}"
        )
    args = [factor.args[p] for p in permutation]
    codes = factor.codes.reshape(factor.shape).transpose(permutation).ravel()
    return Factor(factor.name, args, codes, factor.values)
