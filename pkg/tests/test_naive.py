import pytest

from bench.generator import generate_factor
from detection import Deadline, Status, naive_all_commutative, naive_max_commutative, subsets_descending
from factor_graph import RandomVariable
from factor_graph.models import Factor


class TestSubsetsDescending:
    def test_order(self):
        assert list(subsets_descending(2)) == [(0, 1), (0,), (1,), ()]
        subsets = list(subsets_descending(3))
        assert subsets[:4] == [(0, 1, 2), (0, 1), (0, 2), (1, 2)]
        assert subsets[-1] == ()

    def test_count(self):
        assert len(list(subsets_descending(6))) == 2 ** 6

    def test_needs_an_argument(self):
        with pytest.raises(ValueError):
            list(subsets_descending(0))


class TestNaiveMaxCommutative:
    def test_pair(self, pair_factor):
        assert naive_max_commutative(pair_factor).subset == frozenset({0, 1})

    def test_three_args(self, three_arg_factor):
        result = naive_max_commutative(three_arg_factor)
        assert result.subset == frozenset({1, 2})
        assert result.status is Status.OK
        # {0,1,2}, {0,1}, {0,2} fail before {1,2}
        assert result.subsets_tested == 4

    def test_all_distinct(self):
        result = naive_max_commutative(generate_factor(4, 0, seed=3))
        assert result.subset is None
        assert result.subsets_tested == 11

    def test_full_set_is_tested_first(self):
        result = naive_max_commutative(generate_factor(6, 6, seed=3))
        assert result.subset == frozenset(range(6))
        assert result.subsets_tested == 1

    def test_mixed_ranges_are_rejected_without_a_scan(self):
        args = [
            RandomVariable("A", ("true", "false")),
            RandomVariable("B", ("x", "y", "z")),
            RandomVariable("C", ("true", "false")),
        ]
        result = naive_max_commutative(Factor.constant("phi", args))
        assert result.subset == frozenset({0, 2})
        assert result.subsets_rejected == 2
        assert result.subsets_tested == 1

    def test_timeout(self, three_arg_factor):
        result = naive_max_commutative(three_arg_factor, Deadline(expires_at=0.0))
        assert result.status is Status.TIMEOUT
        assert result.subset is None

    def test_log_messages_are_formatted(self, three_arg_factor, log_messages):
        naive_max_commutative(three_arg_factor)
        naive_max_commutative(three_arg_factor, Deadline(expires_at=0.0))
        assert "Naive search on phi found [1, 2]" in log_messages
        assert "Naive search on phi timed out after 0 subsets" in log_messages

    @pytest.mark.parametrize("n", range(2, 7))
    def test_result_is_maximum(self, n):
        for k in sorted({0, 2, n - 1, n} - {1}):
            factor = generate_factor(n, k, seed=n + k)
            exhaustive = naive_all_commutative(factor)
            found = naive_max_commutative(factor).subset
            assert max(map(len, exhaustive), default=0) == (len(found) if found else 0)
            if found:
                assert found in exhaustive
