from fractions import Fraction
from itertools import product
from math import comb, prod

import numpy as np
import pytest

from polycode.errors import (
    BudgetExceeded,
    InexactParameters,
    NotASubset,
    OutOfBox,
    RuleInapplicable,
)
from polycode.expressions import (
    Atom,
    Box,
    Dilate,
    DirectSum,
    Embed,
    Hypothesis,
    Join,
    Product,
    Segment,
    Simplex,
)
from polycode.ff import field_new
from polycode.lattice import LatticePolytope, has_segment2_or_unit_square
from polycode.search import search_size
from polycode.toric import (
    compute_params,
    delta_monotone,
    embed_params,
    encode,
    generator_matrix,
    generic_bounds,
    hypercube_delta,
    join_delta,
    join_max_zeros,
    join_saddle_condition,
    max_zeros,
    min_distance_exhaustive,
    minimum_codeword,
    rank_check,
    slice_lower_bound,
    witness_upper_bound,
)

TRIANGLE = Atom(LatticePolytope([(0, 0), (2, 3), (4, 2)]))
FAT_TRIANGLE = Atom(LatticePolytope([(0, 0), (2, 1), (1, 2)]))
SEARCH_LIMIT = 10**7


class TestGeneratorMatrix:
    def test_unit_box_matrix(self, field5, resources_dir) -> None:
        G = generator_matrix(Box((1, 1)), field5)
        expected = (resources_dir / "unit_box_q5.txt").read_text()
        assert G.dump() == expected

    def test_single_point_row_of_ones(self, field5) -> None:
        G = generator_matrix(Atom(LatticePolytope([(0, 0)])), field5)
        assert G.rows.tolist() == [[1] * 16]

    def test_segment_over_f3(self) -> None:
        G = generator_matrix(Segment(1), field_new(3))
        assert G.rows.tolist() == [[1, 1], [1, 2]]

    def test_generator_matrix_raises_out_of_box(self, field5) -> None:
        with pytest.raises(OutOfBox):
            generator_matrix(Segment(4), field5)

    @pytest.mark.parametrize("q", [4, 5, 8, 9])
    def test_rank_equals_point_count(self, q: int) -> None:
        G = generator_matrix(Box((1, 2)), field_new(q))
        assert rank_check(G) == G.k == 6


class TestExhaustive:
    def test_unit_box_params(self, field5) -> None:
        params = min_distance_exhaustive(Box((1, 1)), field5)
        assert (params.block_length, params.k, params.d) == (16, 4, 9)
        assert params.max_zeros == 7
        assert params.delta == Fraction(9, 16)
        assert params.rate == Fraction(1, 4)

    def test_join_of_segments(self, field5) -> None:
        params = compute_params(Join(Segment(2), Segment(2)), field5, "exhaustive")
        assert params.d == 32

    def test_minimum_codeword_has_minimum_weight(self, field5) -> None:
        codeword = minimum_codeword(Box((1, 1)), field5)
        assert codeword.weight == 9
        assert codeword.message[0] in (0, 1)

    def test_encode_scales_weight_invariantly(self, field5) -> None:
        G = generator_matrix(Simplex(2, 1), field5)
        message = [1, 2, 3]
        weights = {
            encode(G, [field5.mul(c, m) for m in message]).weight
            for c in field5.nonzero_elements()
        }
        assert len(weights) == 1

    def test_budget_exceeded(self, field5) -> None:
        with pytest.raises(BudgetExceeded):
            min_distance_exhaustive(Box((1, 1)), field5, budget=10)


class TestFormulas:
    @pytest.mark.parametrize(
        "e, q, d",
        [
            (Box((1, 1)), 5, 9),
            (Box((1, 2)), 5, 6),
            (Simplex(2, 2), 5, 8),
            (Segment(3), 7, 3),
            (Product(Segment(1), Simplex(2, 1)), 5, 3 * 12),
            (Embed(Box((1, 1)), 3), 5, 36),
            (Dilate(Box((1,)), 2), 5, 2),
        ],
        ids=str,
    )
    def test_formula_matches_exhaustive(self, e, q: int, d: int) -> None:
        field = field_new(q)
        assert compute_params(e, field, "formula").d == d
        assert compute_params(e, field, "exhaustive").d == d

    def test_join_formula(self, field5) -> None:
        params = compute_params(Join(Segment(2), Segment(2)), field5, "formula")
        assert params.d == 32
        assert params.method == "join-corollary"

    def test_direct_sum_of_segments(self) -> None:
        params = compute_params(DirectSum(Segment(2), Segment(3)), field_new(7))
        assert params.delta == Fraction(1, 2)
        assert params.method == "directsum"

    def test_formula_raises_without_rule(self, field5) -> None:
        with pytest.raises(RuleInapplicable):
            compute_params(TRIANGLE, field_new(7), "formula")

    def test_auto_falls_back_to_exhaustive(self) -> None:
        params = compute_params(TRIANGLE, field_new(7))
        assert params.method == "exhaustive"

    def test_auto_falls_back_to_bounds(self, field5) -> None:
        params = compute_params(
            Atom(LatticePolytope([(0, 0), (3, 0), (0, 3)])), field5, budget=10
        )
        assert params.method == "bounds"
        assert params.budget_exceeded
        assert params.d_lo <= params.d_hi
        with pytest.raises(InexactParameters):
            params.d

    def test_max_zeros(self, field5) -> None:
        assert max_zeros(Box((1, 1)), field5) == 7


class TestDirectSumExample:
    def test_slice_lower_bound(self) -> None:
        e = DirectSum(TRIANGLE, Segment(5))
        assert slice_lower_bound(e, field_new(7)) == 36

    def test_witness_upper_bound(self) -> None:
        e = DirectSum(TRIANGLE, Segment(5))
        assert witness_upper_bound(e, field_new(7)) == 36

    def test_params_certified_by_sandwich(self) -> None:
        params = compute_params(DirectSum(TRIANGLE, Segment(5)), field_new(7))
        assert params.k == 18
        assert params.d == 6**3 - 5 * 6**2
        assert params.method == "directsum-sandwich"

    def test_asserted_flag_uses_formula(self) -> None:
        e = DirectSum(TRIANGLE, Segment(5), Hypothesis.ASSERTED)
        params = compute_params(e, field_new(7))
        assert params.d == 36
        assert params.method == "directsum"

    def test_witness_on_segment(self, field5) -> None:
        assert witness_upper_bound(Segment(2), field5) == 2


class TestClosedForms:
    def test_join_max_zeros_drops_torus_term(self) -> None:
        q, n = 5, 1
        with_term = join_max_zeros(n, n, 2, 2, q)
        without = join_max_zeros(n, n, 2, 2, q, corollary=True)
        assert with_term == without == 64 - 32

    def test_join_delta_of_segments(self) -> None:
        assert join_delta(Fraction(1, 2), Fraction(1, 2), 5) == Fraction(1, 2)

    def test_saddle_condition(self) -> None:
        assert join_saddle_condition(2, 2, 1, 1, 5)
        assert not join_saddle_condition(0, 2, 1, 1, 5)

    def test_hypercube_delta(self) -> None:
        assert hypercube_delta(2, 5) == Fraction(9, 16)

    def test_generic_bounds_bracket_distance(self, field5) -> None:
        low, high = generic_bounds(Simplex(2, 2), field5)
        assert low <= 8 <= high

    def test_generic_bounds_exact_for_box(self, field5) -> None:
        assert generic_bounds(Box((1, 1)), field5) == (9, 9)


class TestInvariance:
    def test_embed_params(self, field5) -> None:
        params = embed_params(compute_params(Box((1, 1)), field5), 3)
        assert params.delta == Fraction(9, 16)
        assert params.rate == Fraction(1, 16)

    def test_embed_matches_exhaustive(self, field5) -> None:
        params = compute_params(Embed(Box((1, 1)), 3), field5, "exhaustive")
        assert params.delta == Fraction(9, 16)

    def test_delta_monotone(self, field5) -> None:
        assert delta_monotone(Simplex(2, 1), Box((1, 1)), field5)

    def test_delta_monotone_raises_when_not_subset(self, field5) -> None:
        with pytest.raises(NotASubset):
            delta_monotone(Box((1, 1)), Simplex(2, 1), field5)


def _exhaustive_d(e, field) -> int:
    return compute_params(e, field, "exhaustive").d


SIMPLEX_GRID = [
    (n, length, q)
    for q in (3, 4, 5)
    for n in (1, 2, 3)
    for length in range(1, min(3, q - 2) + 1)
    if search_size(q, comb(n + length, n)) <= SEARCH_LIMIT
]

BOX_GRID = [
    sides
    for n in (1, 2, 3)
    for sides in product(range(3), repeat=n)
    if search_size(5, prod(side + 1 for side in sides)) <= SEARCH_LIMIT
]

PRODUCT_PAIRS = [
    (Segment(1), Segment(1)),
    (Segment(1), Segment(2)),
    (Segment(2), Segment(2)),
    (Segment(1), Segment(3)),
    (Segment(3), Segment(1)),
    (Segment(1), Simplex(2, 1)),
    (Simplex(2, 1), Segment(2)),
    (Segment(1), Box((1, 1))),
    (Segment(1), FAT_TRIANGLE),
    (Atom(LatticePolytope([(1,)])), Simplex(2, 1)),
]

JOIN_OPERANDS = {
    "seg1": Segment(1),
    "seg2": Segment(2),
    "seg3": Segment(3),
    "box11": Box((1, 1)),
    "simplex21": Simplex(2, 1),
}

JOIN_PAIRS = [
    (a, b)
    for a, b in product(JOIN_OPERANDS, repeat=2)
    if sum(JOIN_OPERANDS[name].num_lattice_points for name in (a, b)) <= 9
]


class TestSimplexGrid:
    @pytest.mark.parametrize("n, length, q", SIMPLEX_GRID)
    def test_simplex_distance(self, n: int, length: int, q: int) -> None:
        field = field_new(q)
        expected = (q - 1) ** n - length * (q - 1) ** (n - 1)
        assert _exhaustive_d(Simplex(n, length), field) == expected
        assert compute_params(Simplex(n, length), field, "formula").d == expected

    def test_grid_covers_every_field(self) -> None:
        assert {q for _, _, q in SIMPLEX_GRID} == {3, 4, 5}


class TestBoxGrid:
    @pytest.mark.parametrize("sides", BOX_GRID, ids=str)
    def test_box_distance(self, sides) -> None:
        field = field_new(5)
        expected = prod(4 - side for side in sides)
        assert _exhaustive_d(Box(sides), field) == expected
        assert compute_params(Box(sides), field, "formula").d == expected


class TestProductPairs:
    @pytest.mark.parametrize("left, right", PRODUCT_PAIRS, ids=str)
    def test_distance_is_multiplicative(self, field5, left, right) -> None:
        d = _exhaustive_d(Product(left, right), field5)
        assert d == _exhaustive_d(left, field5) * _exhaustive_d(right, field5)

    def test_ten_pairs(self) -> None:
        assert len(PRODUCT_PAIRS) == 10


class TestJoinPairs:
    @pytest.mark.parametrize("left, right", JOIN_PAIRS)
    def test_join_formula_matches_exhaustive(
        self, field5, left: str, right: str
    ) -> None:
        P, Q = JOIN_OPERANDS[left], JOIN_OPERANDS[right]
        n, m = P.dim, Q.dim
        zeros_p = compute_params(P, field5, "exhaustive").max_zeros
        zeros_q = compute_params(Q, field5, "exhaustive").max_zeros
        joined = compute_params(Join(P, Q), field5, "exhaustive").max_zeros
        assert joined == join_max_zeros(n, m, zeros_p, zeros_q, 5)

        both = all(has_segment2_or_unit_square(e.polytope)[0] for e in (P, Q))
        if both:
            without_torus = join_max_zeros(n, m, zeros_p, zeros_q, 5, True)
            assert without_torus == joined
            assert 4 ** (n + m) < without_torus


class TestBoundsSandwich:
    @pytest.mark.parametrize(
        "e",
        [
            DirectSum(Box((1, 1)), Segment(1)),
            DirectSum(Box((1, 1)), Segment(2)),
            DirectSum(Simplex(2, 1), Segment(2)),
            DirectSum(FAT_TRIANGLE, Segment(1)),
            DirectSum(Segment(2), Segment(3)),
        ],
        ids=str,
    )
    def test_slice_and_witness_bracket_distance(self, field5, e) -> None:
        d = _exhaustive_d(e, field5)
        assert slice_lower_bound(e, field5) <= d <= witness_upper_bound(e, field5)

    def test_sandwich_closes_on_triangle_sum(self) -> None:
        e = DirectSum(TRIANGLE, Segment(5))
        field = field_new(7)
        assert slice_lower_bound(e, field) == witness_upper_bound(e, field) == 36
