import json
from decimal import Decimal
from itertools import product

import numpy as np
import pytest

from bench.generator import generate_factor
from detection.naive import subsets_descending
from factor_graph import (
    Bucket,
    FactorGraph,
    RandomVariable,
    apply_argument_permutation,
    build_factor,
    compress_to_crv,
    dump_factor_graph,
    expand_crv,
    format_potential,
    is_commutative,
    is_commutative_by_permutation,
    load_factor_graph,
    parse_factor_graph,
    parse_potential,
    potential_of,
    save_factor_graph,
)
from factor_graph.crv import CompressedFactor
from factor_graph.errors import (
    DuplicateArgumentError,
    InvalidAssignmentError,
    InvalidFactorError,
    InvalidGraphError,
    InvalidPermutationError,
    InvalidPotentialError,
    InvalidSubsetError,
    InvalidVariableError,
    LengthMismatchError,
    NonPositivePotentialError,
    NotCommutativeError,
    SubsetTooSmallError,
    UnknownNameError,
)
from factor_graph.models import Factor

BOOLEAN = ("true", "false")
TERNARY = ("v0", "v1", "v2")


def variables(names, labels=BOOLEAN):
    return [RandomVariable(name, labels) for name in names]


class TestPotentials:
    def test_decimal_strings_are_exact(self):
        assert parse_potential("0.50") == parse_potential("0.5") == Decimal("0.5")
        assert parse_potential(3) == Decimal(3)

    def test_rejects_floats_and_bools(self):
        with pytest.raises(InvalidPotentialError):
            parse_potential(0.5)
        with pytest.raises(InvalidPotentialError):
            parse_potential(True)

    @pytest.mark.parametrize("value", ["0", "-1", "-0.5"])
    def test_rejects_non_positive(self, value):
        with pytest.raises(NonPositivePotentialError):
            parse_potential(value)

    @pytest.mark.parametrize("value", ["abc", "", "NaN", "Infinity"])
    def test_rejects_non_numbers(self, value):
        with pytest.raises(InvalidPotentialError):
            parse_potential(value)

    def test_format_is_normalized(self):
        assert format_potential(Decimal("2.500")) == "2.5"
        assert format_potential(Decimal("1E+2")) == "100"


class TestRandomVariable:
    def test_valid(self):
        variable = RandomVariable("A", ("a", "b", "c"), evidence="b")
        assert variable.size == 3
        assert variable.index_of("c") == 2

    def test_range_needs_two_values(self):
        with pytest.raises(InvalidVariableError):
            RandomVariable("A", ("only",))

    def test_duplicate_labels(self):
        with pytest.raises(InvalidVariableError):
            RandomVariable("A", ("x", "x"))

    def test_evidence_outside_range(self):
        with pytest.raises(InvalidVariableError):
            RandomVariable("A", BOOLEAN, evidence="maybe")

    def test_unknown_label(self):
        with pytest.raises(InvalidAssignmentError):
            RandomVariable("A", BOOLEAN).index_of("maybe")


class TestBuildFactor:
    def test_lookup(self, pair_factor):
        assert potential_of(pair_factor, ("true", "true")) == Decimal(1)
        assert potential_of(pair_factor, ("true", "false")) == Decimal(2)
        assert potential_of(pair_factor, ("false", "true")) == Decimal(2)
        assert potential_of(pair_factor, ("false", "false")) == Decimal(3)

    def test_three_arg_lookup(self, three_arg_factor):
        assert potential_of(three_arg_factor, ("true", "false", "true")) == Decimal(2)
        assert potential_of(three_arg_factor, ("false", "false", "true")) == Decimal(5)

    def test_equal_potentials_share_a_code(self):
        factor = build_factor("phi", variables(["A"]), ["0.5", "0.50"])
        assert factor.values == (Decimal("0.5"),)
        assert factor.codes.tolist() == [0, 0]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            build_factor("phi", variables(["A", "B"]), ["1", "2", "3"])

    def test_non_positive_potential(self):
        with pytest.raises(NonPositivePotentialError):
            build_factor("phi", variables(["A"]), ["1", "0"])

    def test_duplicate_argument(self):
        a = RandomVariable("A", BOOLEAN)
        with pytest.raises(DuplicateArgumentError):
            build_factor("phi", [a, a], ["1", "2", "3", "4"])

    def test_no_arguments(self):
        with pytest.raises(InvalidFactorError):
            build_factor("phi", [], ["1"])

    def test_codes_are_read_only(self, pair_factor):
        with pytest.raises(ValueError):
            pair_factor.codes[0] = 1

    def test_row_major_bijection(self):
        factor = Factor.constant("phi", [RandomVariable("A", BOOLEAN), RandomVariable("B", TERNARY)])
        rows = [factor.row_index(assignment) for assignment in factor.assignments()]
        assert rows == list(range(6))
        assert factor.assignment(1) == ("true", "v1")
        assert factor.assignment(3) == ("false", "v0")

    def test_bad_assignment(self, pair_factor):
        with pytest.raises(InvalidAssignmentError):
            potential_of(pair_factor, ("true",))
        with pytest.raises(InvalidAssignmentError):
            potential_of(pair_factor, ("true", "maybe"))

    def test_position_of(self, three_arg_factor):
        assert three_arg_factor.position_of("R3") == 2
        with pytest.raises(UnknownNameError):
            three_arg_factor.position_of("R4")

    def test_table_strings(self, three_arg_factor):
        assert three_arg_factor.table_strings() == ["1", "2", "2", "3", "4", "5", "5", "6"]


class TestIsCommutative:
    def test_pair(self, pair_factor):
        assert is_commutative(pair_factor, [0, 1])

    def test_three_args(self, three_arg_factor):
        assert is_commutative(three_arg_factor, [1, 2])
        assert not is_commutative(three_arg_factor, [0, 1])
        assert not is_commutative(three_arg_factor, [0, 1, 2])

    def test_trivial_subsets(self, three_arg_factor):
        assert is_commutative(three_arg_factor, [])
        assert is_commutative(three_arg_factor, [0])

    def test_mixed_ranges_are_not_commutative(self):
        factor = Factor.constant("phi", [RandomVariable("A", BOOLEAN), RandomVariable("B", TERNARY)])
        assert not is_commutative(factor, [0, 1])

    def test_invalid_subset(self, three_arg_factor):
        with pytest.raises(InvalidSubsetError):
            is_commutative(three_arg_factor, [0, 3])
        with pytest.raises(InvalidSubsetError):
            is_commutative(three_arg_factor, [1, 1])

    def test_agrees_with_permutation_form(self):
        rng = np.random.default_rng(7)
        factors = []
        for n in range(1, 6):
            for labels in (BOOLEAN, TERNARY):
                args = variables([f"R{i}" for i in range(n)], labels)
                size = len(labels) ** n
                for _ in range(3):
                    # few distinct potentials so that some subsets are commutative
                    factors.append(Factor(f"phi{len(factors)}", args, rng.integers(0, 2, size), ["1", "2"]))
                for k in {0, 2, n} - {1}:
                    if k <= n:
                        factors.append(generate_factor(n, k, len(labels), seed=n))
        for factor in factors:
            for subset in subsets_descending(factor.arity):
                assert is_commutative(factor, subset) == is_commutative_by_permutation(factor, subset)

    def test_subsets_of_commutative_sets_are_commutative(self):
        factor = generate_factor(5, 4, seed=3)
        assert is_commutative(factor, [0, 1, 2, 3])
        for subset in subsets_descending(4):
            assert is_commutative(factor, subset)
        assert not is_commutative(factor, [3, 4])


class TestArgumentPermutation:
    def test_identity(self, three_arg_factor):
        assert apply_argument_permutation(three_arg_factor, [0, 1, 2]) == three_arg_factor

    def test_symmetric_swap_keeps_table(self, pair_factor):
        swapped = apply_argument_permutation(pair_factor, [1, 0])
        assert swapped.arg_names == ("R2", "R1")
        assert swapped.same_table(pair_factor)

    def test_semantics_preserved(self, three_arg_factor):
        permutation = [2, 0, 1]
        permuted = apply_argument_permutation(three_arg_factor, permutation)
        assert permuted.arg_names == ("R3", "R1", "R2")
        for assignment in three_arg_factor.assignments():
            moved = tuple(assignment[p] for p in permutation)
            assert potential_of(permuted, moved) == potential_of(three_arg_factor, assignment)

    def test_swap_first_two(self, three_arg_factor):
        permuted = apply_argument_permutation(three_arg_factor, [1, 0, 2])
        assert potential_of(permuted, ("true", "false", "true")) == Decimal(4)

    @pytest.mark.parametrize("permutation", [[0, 1], [0, 0, 1], [0, 1, 3]])
    def test_invalid(self, three_arg_factor, permutation):
        with pytest.raises(InvalidPermutationError):
            apply_argument_permutation(three_arg_factor, permutation)


class TestCountingRepresentation:
    def test_three_arg_rows(self, three_arg_factor):
        compressed = compress_to_crv(three_arg_factor, [1, 2])
        assert list(compressed.rows.items()) == [
            ((("true",), Bucket((2, 0))), Decimal(1)),
            ((("true",), Bucket((1, 1))), Decimal(2)),
            ((("true",), Bucket((0, 2))), Decimal(3)),
            ((("false",), Bucket((2, 0))), Decimal(4)),
            ((("false",), Bucket((1, 1))), Decimal(5)),
            ((("false",), Bucket((0, 2))), Decimal(6)),
        ]
        assert [arg.name for arg in compressed.fixed_args] == ["R1"]
        assert [arg.name for arg in compressed.counted_args] == ["R2", "R3"]
        assert compressed.potential(("false",), Bucket((1, 1))) == Decimal(5)

    def test_round_trip(self, three_arg_factor):
        assert expand_crv(compress_to_crv(three_arg_factor, [1, 2])) == three_arg_factor

    def test_constant_factor_over_all_arguments(self):
        factor = Factor.constant("phi", variables(["A", "B", "C"]), Decimal(3))
        compressed = compress_to_crv(factor, [0, 1, 2])
        assert len(compressed.rows) == 4
        assert set(compressed.rows.values()) == {Decimal(3)}
        assert expand_crv(compressed) == factor

    def test_generated_factor(self):
        factor = generate_factor(5, 3, range_size=2, seed=11)
        compressed = compress_to_crv(factor, [0, 1, 2])
        assert len(compressed.rows) == 4 * 4
        assert expand_crv(compressed) == factor

    def test_frame(self, three_arg_factor):
        frame = compress_to_crv(three_arg_factor, [1, 2]).to_frame()
        assert list(frame.columns) == ["R1", "bucket", "potential"]
        assert frame.iloc[0].tolist() == ["true", "[2,0]", "1"]
        assert len(frame) == 6

    def test_not_commutative(self, three_arg_factor):
        with pytest.raises(NotCommutativeError):
            compress_to_crv(three_arg_factor, [0, 1])

    def test_subset_too_small(self, three_arg_factor):
        with pytest.raises(SubsetTooSmallError):
            compress_to_crv(three_arg_factor, [1])

    def test_malformed_rows(self, three_arg_factor):
        with pytest.raises(InvalidFactorError):
            CompressedFactor("phi", three_arg_factor.args, (1, 2), {(("true",), Bucket((2, 0))): Decimal(1)})


class TestFactorGraph:
    def test_neighbours(self, chain_graph):
        neighbours = [(factor.name, position) for factor, position in chain_graph.neighbours("B")]
        assert neighbours == [("phi1", 1), ("phi2", 1)]
        assert [(f.name, p) for f, p in chain_graph.neighbours("C")] == [("phi2", 0)]

    def test_networkx_view(self, chain_graph):
        view = chain_graph.to_networkx()
        assert view.number_of_nodes() == 5
        assert view.number_of_edges() == 4
        assert view[("factor", "phi2")][("variable", "C")]["position"] == 0

    def test_unknown_names(self, chain_graph):
        with pytest.raises(UnknownNameError):
            chain_graph.factor("phi3")
        with pytest.raises(UnknownNameError):
            chain_graph.variable("D")

    def test_duplicate_variable(self):
        with pytest.raises(InvalidGraphError):
            FactorGraph(variables(["A", "A"]), [])

    def test_undeclared_variable(self):
        a, b = variables(["A", "B"])
        with pytest.raises(InvalidGraphError):
            FactorGraph([a], [build_factor("phi", [a, b], ["1", "2", "3", "4"])])


class TestGraphDocuments:
    def test_parse_and_dump(self, chain_document):
        graph = parse_factor_graph(chain_document)
        assert [v.name for v in graph.variables] == ["A", "B", "C"]
        assert graph.factor("phi2").arg_names == ("C", "B")
        assert dump_factor_graph(graph) == chain_document

    def test_load(self, tmp_path, chain_document):
        path = tmp_path / "graph.json"
        path.write_text(json.dumps(chain_document))
        assert load_factor_graph(path).factor("phi1").table_strings() == ["1", "2", "3", "4"]

    def test_save_then_load(self, tmp_path, chain_document):
        chain_document["variables"][0]["evidence"] = "false"
        chain_document["factors"][1]["table"] = ["0.5", "2", "2", "1e3"]
        path = tmp_path / "saved.json"
        save_factor_graph(parse_factor_graph(chain_document), path)
        loaded = load_factor_graph(path)
        assert loaded.variable("A").evidence == "false"
        assert potential_of(loaded.factor("phi2"), ("false", "false")) == Decimal(1000)
        assert dump_factor_graph(loaded) == dump_factor_graph(parse_factor_graph(chain_document))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "graph.json"
        path.write_text("{not json")
        with pytest.raises(InvalidGraphError):
            load_factor_graph(path)

    def test_float_potential_rejected(self, chain_document):
        chain_document["factors"][0]["table"] = [1.5, "2", "3", "4"]
        with pytest.raises(InvalidGraphError):
            parse_factor_graph(chain_document)

    def test_undeclared_argument(self, chain_document):
        chain_document["factors"][0]["args"] = ["A", "D"]
        with pytest.raises(InvalidGraphError):
            parse_factor_graph(chain_document)

    def test_invalid_potential(self, chain_document):
        chain_document["factors"][0]["table"] = ["1", "2", "3", "0"]
        with pytest.raises(NonPositivePotentialError):
            parse_factor_graph(chain_document)

    def test_integer_potentials(self, chain_document):
        chain_document["factors"][0]["table"] = [1, 2, 3, 4]
        graph = parse_factor_graph(chain_document)
        assert graph.factor("phi1").same_table(graph.factor("phi2"))


def test_assignment_matrix_matches_assignments(three_arg_factor):
    matrix = three_arg_factor.assignment_matrix
    for row, assignment in enumerate(three_arg_factor.assignments()):
        assert tuple(BOOLEAN[i] for i in matrix[row]) == assignment
    assert list(product(BOOLEAN, repeat=3)) == list(three_arg_factor.assignments())
