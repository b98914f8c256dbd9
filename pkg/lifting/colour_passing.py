# lifting/colour_passing.py
"""
Colour passing over a factor graph. Variables and factors are repeatedly recoloured
by the colours of their neighbours until the induced grouping stops changing.
Factors that are commutative with respect to a set of arguments send those
arguments their colour without a position.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Tuple

from loguru import logger

from config import settings
from detection.antichain import max_candidate
from detection.decor import decor
from detection.naive import naive_max_commutative
from factor_graph.errors import InvalidAssignmentError
from factor_graph.models import Factor, FactorGraph
from lifting.canonical import group_equivalent_factors

DETECTORS = ("decor", "naive")


@dataclass
class Colouring:
    variable_colours: Dict[str, int]
    factor_colours: Dict[str, int]
    round: int = 0

    def class_counts(self) -> Tuple[int, int]:
        return len(set(self.variable_colours.values())), len(set(self.factor_colours.values()))


@dataclass
class Grouping:
    variable_groups: List[List[str]]
    factor_groups: List[List[str]]

    @classmethod
    def from_colouring(cls, colouring: Colouring) -> "Grouping":
        return cls(_groups(colouring.variable_colours), _groups(colouring.factor_colours))

    def to_dict(self) -> Dict[str, List[List[str]]]:
        return {"variable_groups": self.variable_groups, "factor_groups": self.factor_groups}


@dataclass
class ColourPassingResult:
    grouping: Grouping
    colouring: Colouring
    rounds: int
    # Chosen commutative positions per factor, relative to the rearranged argument order.
    commutative_sets: Dict[str, FrozenSet[int]] = field(default_factory=dict)
    rearranged: Dict[str, Factor] = field(default_factory=dict)


def _groups(colours: Mapping[str, int]) -> List[List[str]]:
    members: Dict[int, List[str]] = defaultdict(list)
    for name, colour in colours.items():
        members[colour].append(name)
    return sorted(sorted(group) for group in members.values())


def _recolour(signatures: Mapping[str, Hashable]) -> Dict[str, int]:
    """Dense colour ids in sorted signature order."""
    ids = {signature: colour for colour, signature in enumerate(sorted(set(signatures.values())))}
    return {name: ids[signature] for name, signature in signatures.items()}


def initial_variable_colours(graph: FactorGraph, evidence: Optional[Mapping[str, str]] = None) -> Dict[str, int]:
    """Colour variables by range and observed value; `evidence` overrides the variables' own evidence."""
    observed = {variable.name: variable.evidence for variable in graph.variables}
    for name, value in (evidence or {}).items():
        variable = graph.variable(name)
        if value is not None and value not in variable.range:
            raise InvalidAssignmentError(f"evidence {value!r} is not a value of {name}")
        observed[name] = value

    keys = {}
    for variable in graph.variables:
        value = observed[variable.name]
        keys[variable.name] = (variable.range, (value is not None, value or ""))
    return _recolour(keys)


def initial_factor_colours(graph: FactorGraph, arity_limit: Optional[int] = None) -> Tuple[Dict[str, int], Dict[str, Factor]]:
    """
    Colour factors so that two factors share a colour iff their tables are equal up to
    an argument rearrangement; matched factors are rearranged to a common order.

    Returns:
        Tuple[Dict[str, int], Dict[str, Factor]]: Factor colours and rearranged factors.
    """
    limit = settings.arity_limit if arity_limit is None else arity_limit
    clusters, rearranged = group_equivalent_factors(graph.factors, limit)
    order = {factor.name: index for index, factor in enumerate(graph.factors)}

    def cluster_key(cluster):
        first = rearranged[cluster[0]]
        return (
            first.arity,
            tuple(arg.range for arg in first.args),
            tuple(sorted(first.table)),
            order[cluster[0]],
        )

    colours = {}
    for colour, cluster in enumerate(sorted(clusters, key=cluster_key)):
        for name in cluster:
            colours[name] = colour
    return colours, rearranged


def detect_commutative_sets(
    factors: Mapping[str, Factor], colours: Mapping[str, int], detector: str = "decor"
) -> Dict[str, FrozenSet[int]]:
    """Maximum commutative subset per factor; factors of one initial colour share their tables."""
    if detector not in DETECTORS:
        logger.error(f"Unknown detector {detector}")
        raise ValueError(f"unknown detector {detector!r}, expected one of {DETECTORS}")

    by_colour: Dict[int, FrozenSet[int]] = {}
    result = {}
    for name, factor in factors.items():
        colour = colours[name]
        if colour not in by_colour:
            if detector == "decor":
                chosen = max_candidate(decor(factor).candidates)
            else:
                chosen = naive_max_commutative(factor).subset
            by_colour[colour] = chosen or frozenset()
        result[name] = by_colour[colour]
    return result


def _neighbours(graph: FactorGraph) -> Dict[str, List[Tuple[str, int]]]:
    """(factor name, 0-based position) pairs per variable, read off the bipartite networkx view."""
    view = graph.to_networkx()
    neighbours = {}
    for variable in graph.variables:
        node = ("variable", variable.name)
        neighbours[variable.name] = sorted(
            (factor_node[1], data["position"]) for factor_node, data in view[node].items()
        )
    return neighbours


def pass_round(
    graph: FactorGraph, colouring: Colouring, commutative_sets: Mapping[str, FrozenSet[int]]
) -> Colouring:
    """
    One round: factors are recoloured first, then variables see the new factor colours.

    Variables receive (factor colour, 1-based position), or (factor colour, 0) when they
    sit in the factor's commutative set.
    """
    factor_signatures = {}
    for factor in graph.factors:
        colours = [colouring.variable_colours[name] for name in factor.arg_names]
        exchangeable = sorted(commutative_sets.get(factor.name, frozenset()))
        if len(exchangeable) >= 2:
            for position, colour in zip(exchangeable, sorted(colours[p] for p in exchangeable)):
                colours[position] = colour
        factor_signatures[factor.name] = (tuple(colours), colouring.factor_colours[factor.name])
    factor_colours = _recolour(factor_signatures)

    variable_signatures = {}
    for name, incident in _neighbours(graph).items():
        messages = []
        for factor_name, position in incident:
            exchangeable = commutative_sets.get(factor_name, frozenset())
            suppressed = len(exchangeable) >= 2 and position in exchangeable
            messages.append((factor_colours[factor_name], 0 if suppressed else position + 1))
        variable_signatures[name] = (tuple(sorted(messages)), colouring.variable_colours[name])
    variable_colours = _recolour(variable_signatures)

    return Colouring(variable_colours, factor_colours, colouring.round + 1)


def colour_passing(
    graph: FactorGraph,
    evidence: Optional[Mapping[str, str]] = None,
    arity_limit: Optional[int] = None,
    detector: str = "decor",
) -> ColourPassingResult:
    """
    Run colour passing to a fixpoint.

    Args:
        graph: The factor graph.
        evidence: Observed values per variable name, merged over the variables' own evidence.
        arity_limit: Largest arity for the rearrangement search; defaults to the configured limit.
        detector: "decor" or "naive", the commutative-set detector.

    Returns:
        ColourPassingResult: Final grouping plus the intermediate state.
    """
    factor_colours, rearranged = initial_factor_colours(graph, arity_limit)
    working = FactorGraph(graph.variables, [rearranged[factor.name] for factor in graph.factors])
    commutative = detect_commutative_sets(rearranged, factor_colours, detector)
    colouring = Colouring(initial_variable_colours(graph, evidence), factor_colours)

    counts = colouring.class_counts()
    # Partitions only refine, so the number of classes bounds the rounds.
    for _ in range(len(graph.variables) + len(graph.factors) + 1):
        colouring = pass_round(working, colouring, commutative)
        new_counts = colouring.class_counts()
        logger.debug(f"Round {colouring.round}: {new_counts[0]} variable and {new_counts[1]} factor colours")
        if new_counts == counts:
            break
        counts = new_counts

    grouping = Grouping.from_colouring(colouring)
    logger.info(
        f"Colour passing finished after {colouring.round} rounds: "
        f"{len(grouping.variable_groups)} variable groups, {len(grouping.factor_groups)} factor groups"
    )
    return ColourPassingResult(grouping, colouring, colouring.round, commutative, rearranged)


def run_cpr(
    graph: FactorGraph,
    evidence: Optional[Mapping[str, str]] = None,
    arity_limit: Optional[int] = None,
    detector: str = "decor",
) -> Grouping:
    return colour_passing(graph, evidence, arity_limit, detector).grouping
