# detection/antichain.py
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

# A set of 0-based argument positions.
CandidateSet = FrozenSet[int]


def sort_key(candidate: CandidateSet) -> Tuple[int, Tuple[int, ...]]:
    return -len(candidate), tuple(sorted(candidate))


class CandidateAntichain:
    """A family of candidate sets in which no member contains another."""

    def __init__(self, sets: Iterable[Iterable[int]] = ()):
        self._sets: List[CandidateSet] = []
        for candidate in sets:
            self.add(candidate)

    def add(self, candidate: Iterable[int]) -> bool:
        """Insert unless subsumed; members strictly contained in the new set are dropped."""
        candidate = frozenset(candidate)
        if any(candidate <= member for member in self._sets):
            return False
        self._sets = [member for member in self._sets if not member < candidate]
        self._sets.append(candidate)
        return True

    def sorted(self) -> List[Tuple[int, ...]]:
        """Members as sorted tuples, largest first, ties in lexicographic order."""
        return [tuple(sorted(member)) for member in sorted(self._sets, key=sort_key)]

    def __iter__(self) -> Iterator[CandidateSet]:
        return iter(list(self._sets))

    def __len__(self):
        return len(self._sets)

    def __contains__(self, candidate):
        return frozenset(candidate) in self._sets

    def __eq__(self, other):
        if isinstance(other, CandidateAntichain):
            return set(self._sets) == set(other._sets)
        return NotImplemented

    def __repr__(self):
        return f"CandidateAntichain({self.sorted()})"


def intersect_antichains(left: CandidateAntichain, right: CandidateAntichain) -> CandidateAntichain:
    """Pairwise intersections of size at least two, reduced to an antichain."""
    result = CandidateAntichain()
    for a in left:
        for b in right:
            common = a & b
            if len(common) >= 2:
                result.add(common)
    return result


def max_candidate(antichain: Iterable[CandidateSet]) -> Optional[CandidateSet]:
    """A largest member; ties go to the lexicographically smallest position tuple."""
    members = list(antichain)
    if not members:
        return None
    return min(members, key=sort_key)
