# factor_graph/models.py
from dataclasses import dataclass
from decimal import Decimal
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from factor_graph.errors import (
    DuplicateArgumentError,
    InvalidAssignmentError,
    InvalidFactorError,
    InvalidGraphError,
    InvalidVariableError,
    LengthMismatchError,
    UnknownNameError,
)
from factor_graph.potentials import format_potential, parse_potential

# One range label per factor argument, in argument order.
Assignment = Tuple[str, ...]


@dataclass(frozen=True)
class RandomVariable:
    """
    A named random variable with an ordered finite range and optional evidence.
    """

    name: str
    range: Tuple[str, ...]
    evidence: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "range", tuple(self.range))
        if not self.name:
            raise InvalidVariableError("variable name must not be empty")
        if len(self.range) < 2:
            raise InvalidVariableError(f"variable {self.name} needs at least two range values")
        if any(not label for label in self.range):
            raise InvalidVariableError(f"variable {self.name} has an empty range label")
        if len(set(self.range)) != len(self.range):
            raise InvalidVariableError(f"variable {self.name} has duplicate range labels")
        if self.evidence is not None and self.evidence not in self.range:
            raise InvalidVariableError(
                f"evidence {self.evidence!r} of {self.name} is not in its range {list(self.range)}"
            )

    @property
    def size(self) -> int:
        return len(self.range)

    def index_of(self, label: str) -> int:
        try:
            return self.range.index(label)
        except ValueError:
            raise InvalidAssignmentError(f"{label!r} is not a value of {self.name}") from None


class Factor:
    """
    A factor over an ordered argument list with a dense potential table.

    The table is stored as the tuple of distinct potentials plus one integer code
    per row. Rows are in row-major order with the last argument varying fastest,
    and codes are numbered by first appearance, so two factors with equal tables
    have identical code arrays.
    """

    def __init__(self, name: str, args: Sequence[RandomVariable], codes, values: Sequence[Decimal]):
        if not name:
            raise InvalidFactorError("factor name must not be empty")
        args = tuple(args)
        if not args:
            raise InvalidFactorError(f"factor {name} needs at least one argument")
        names = [arg.name for arg in args]
        duplicates = sorted({arg for arg in names if names.count(arg) > 1})
        if duplicates:
            raise DuplicateArgumentError(f"factor {name} repeats arguments {duplicates}")

        shape = tuple(arg.size for arg in args)
        codes = np.asarray(codes, dtype=np.int64).ravel()
        expected = int(np.prod(shape, dtype=np.int64))
        if codes.size != expected:
            raise LengthMismatchError(
                f"factor {name} has {codes.size} potentials, expected {expected} for ranges {shape}"
            )
        values = [parse_potential(value) for value in values]
        if codes.size and (codes.min() < 0 or codes.max() >= len(values)):
            raise InvalidFactorError(f"factor {name} references an unknown potential")

        self._name = name
        self._args = args
        self._shape = shape
        self._codes, self._values = _canonical_codes(codes, values)
        self._codes.setflags(write=False)

    @classmethod
    def constant(cls, name: str, args: Sequence[RandomVariable], value: Decimal = Decimal(1)) -> "Factor":
        """A factor mapping every assignment to `value`."""
        size = int(np.prod([arg.size for arg in args], dtype=np.int64))
        return cls(name, args, np.zeros(size, dtype=np.int64), [value])

    @property
    def name(self) -> str:
        return self._name

    @property
    def args(self) -> Tuple[RandomVariable, ...]:
        return self._args

    @property
    def arg_names(self) -> Tuple[str, ...]:
        return tuple(arg.name for arg in self._args)

    @property
    def arity(self) -> int:
        return len(self._args)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._shape

    @property
    def size(self) -> int:
        return int(self._codes.size)

    @property
    def codes(self) -> np.ndarray:
        return self._codes

    @property
    def values(self) -> Tuple[Decimal, ...]:
        return self._values

    @cached_property
    def table(self) -> Tuple[Decimal, ...]:
        values = self._values
        return tuple(values[code] for code in self._codes.tolist())

    @cached_property
    def assignment_matrix(self) -> np.ndarray:
        """Range indices of every row, shape (size, arity)."""
        index = np.indices(self._shape, dtype=np.int16).reshape(self.arity, -1).T
        matrix = np.ascontiguousarray(index)
        matrix.setflags(write=False)
        return matrix

    def position_of(self, name: str) -> int:
        try:
            return self.arg_names.index(name)
        except ValueError:
            raise UnknownNameError(f"{name} is not an argument of factor {self._name}") from None

    def row_index(self, assignment: Sequence[str]) -> int:
        if len(assignment) != self.arity:
            raise InvalidAssignmentError(
                f"assignment has {len(assignment)} values, factor {self._name} has {self.arity} arguments"
            )
        indices = tuple(arg.index_of(label) for arg, label in zip(self._args, assignment))
        return int(np.ravel_multi_index(indices, self._shape))

    def assignment(self, row: int) -> Assignment:
        indices = np.unravel_index(row, self._shape)
        return tuple(arg.range[int(i)] for arg, i in zip(self._args, indices))

    def assignments(self) -> Iterable[Assignment]:
        for row in range(self.size):
            yield self.assignment(row)

    def same_table(self, other: "Factor") -> bool:
        return (
            self._shape == other._shape
            and self._values == other._values
            and np.array_equal(self._codes, other._codes)
        )

    def table_strings(self) -> List[str]:
        formatted = [format_potential(value) for value in self._values]
        return [formatted[code] for code in self._codes.tolist()]

    def __eq__(self, other):
        if not isinstance(other, Factor):
            return NotImplemented
        return self._name == other._name and self._args == other._args and self.same_table(other)

    def __hash__(self):
        return hash((self._name, self.arg_names))

    def __repr__(self):
        return f"Factor({self._name!r}, args={list(self.arg_names)}, rows={self.size})"


def _canonical_codes(codes: np.ndarray, values: List[Decimal]):
    """Merge equal potentials and renumber codes by first appearance."""
    canonical: Dict[Decimal, int] = {}
    merged = np.array([canonical.setdefault(value, len(canonical)) for value in values], dtype=np.int64)
    distinct = list(canonical)
    if codes.size == 0:
        return codes.copy(), tuple()
    codes = merged[codes]
    used, first_seen, inverse = np.unique(codes, return_index=True, return_inverse=True)
    order = np.argsort(first_seen, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    new_codes = rank[inverse.ravel()].astype(np.int64)
    new_values = tuple(distinct[int(used[i])] for i in order)
    return new_codes, new_values


class FactorGraph:
    """
    Bipartite graph of random variables and factors; edges are implied by the
    factor argument lists.
    """

    def __init__(self, variables: Sequence[RandomVariable], factors: Sequence[Factor]):
        self._variables = tuple(variables)
        self._factors = tuple(factors)

        self._variables_by_name: Dict[str, RandomVariable] = {}
        for variable in self._variables:
            if variable.name in self._variables_by_name:
                raise InvalidGraphError(f"duplicate variable name {variable.name}")
            self._variables_by_name[variable.name] = variable

        self._factors_by_name: Dict[str, Factor] = {}
        for factor in self._factors:
            if factor.name in self._factors_by_name:
                raise InvalidGraphError(f"duplicate factor name {factor.name}")
            for arg in factor.args:
                declared = self._variables_by_name.get(arg.name)
                if declared is None:
                    raise InvalidGraphError(f"factor {factor.name} uses undeclared variable {arg.name}")
                if declared != arg:
                    raise InvalidGraphError(
                        f"factor {factor.name} uses {arg.name} with a range or evidence differing from its declaration"
                    )
            self._factors_by_name[factor.name] = factor

    @property
    def variables(self) -> Tuple[RandomVariable, ...]:
        return self._variables

    @property
    def factors(self) -> Tuple[Factor, ...]:
        return self._factors

    def variable(self, name: str) -> RandomVariable:
        try:
            return self._variables_by_name[name]
        except KeyError:
            raise UnknownNameError(f"unknown variable {name}") from None

    def factor(self, name: str) -> Factor:
        try:
            return self._factors_by_name[name]
        except KeyError:
            raise UnknownNameError(f"unknown factor {name}") from None

    def neighbours(self, variable_name: str) -> List[Tuple[Factor, int]]:
        """Factors touching a variable, with the variable's 0-based argument position."""
        self.variable(variable_name)
        return [
            (factor, factor.arg_names.index(variable_name))
            for factor in self._factors
            if variable_name in factor.arg_names
        ]

    def to_networkx(self) -> nx.Graph:
        """Bipartite view: variable nodes ("variable", name), factor nodes ("factor", name)."""
        graph = nx.Graph()
        for variable in self._variables:
            graph.add_node(("variable", variable.name), bipartite=0, range=variable.range, evidence=variable.evidence)
        for factor in self._factors:
            graph.add_node(("factor", factor.name), bipartite=1)
            for position, arg in enumerate(factor.args):
                graph.add_edge(("factor", factor.name), ("variable", arg.name), position=position)
        return graph

    def __repr__(self):
        return f"FactorGraph(variables={len(self._variables)}, factors={len(self._factors)})"
