import pytest

from polycode.errors import DimensionMismatch, TargetTooSmall
from polycode.expressions import (
    Atom,
    Box,
    Dilate,
    DirectSum,
    Embed,
    Hypothesis,
    Join,
    MinkowskiSum,
    Product,
    Segment,
    Simplex,
    eval_expr,
)
from polycode.lattice import LatticePolytope, enumerate_lattice_points

STRUCTURAL = [
    Box((1, 2)),
    Box((1, 1, 1)),
    Simplex(2, 2),
    Simplex(3, 1),
    Product(Segment(2), Simplex(2, 1)),
    Join(Segment(2), Segment(2)),
    Join(Box((1, 1)), Segment(1)),
    Embed(Box((1, 1)), 3),
]


class TestStructuralPoints:
    @pytest.mark.parametrize("e", STRUCTURAL, ids=str)
    def test_structural_points_match_enumeration(self, e) -> None:
        P = eval_expr(e)
        assert enumerate_lattice_points(P) == P.lattice_points

    @pytest.mark.parametrize("e", STRUCTURAL, ids=str)
    def test_counts_match_points(self, e) -> None:
        assert e.num_lattice_points == len(e.polytope.lattice_points)

    def test_box_is_unit_square(self) -> None:
        assert eval_expr(Box((1, 1))) == LatticePolytope(
            [(0, 0), (1, 0), (0, 1), (1, 1)]
        )

    def test_direct_sum_of_segments(self) -> None:
        assert eval_expr(DirectSum(Segment(2), Segment(3))) == LatticePolytope(
            [(0, 0), (2, 0), (0, 3)]
        )

    def test_join_of_segments_has_six_points(self) -> None:
        assert Join(Segment(2), Segment(2)).num_lattice_points == 6


class TestDilate:
    def test_rescaled_box(self) -> None:
        assert Dilate(Box((1, 2)), 2).rescaled() == Box((2, 4))

    def test_rescaled_nested(self) -> None:
        assert Dilate(Dilate(Simplex(2, 1), 2), 3).rescaled() == Simplex(2, 6)

    def test_rescaled_atom_is_unknown(self) -> None:
        atom = Atom(LatticePolytope([(0, 0), (1, 2)]))
        assert Dilate(atom, 2).rescaled() is None

    def test_dilate_raises_on_zero_factor(self) -> None:
        with pytest.raises(ValueError):
            Dilate(Segment(1), 0)


class TestDirectSumHypothesis:
    def test_iterated_simplex_sum_is_asserted(self) -> None:
        e = DirectSum(DirectSum(Segment(1), Segment(2)), Segment(3))
        assert e.hypothesis_status is Hypothesis.ASSERTED

    def test_atom_summand_is_unknown(self) -> None:
        atom = Atom(LatticePolytope([(0, 0), (2, 3), (4, 2)]))
        assert DirectSum(atom, Segment(5)).hypothesis_status is Hypothesis.UNKNOWN

    def test_explicit_flag_wins(self) -> None:
        e = DirectSum(Segment(1), Segment(2), Hypothesis.VIOLATED)
        assert e.hypothesis_status is Hypothesis.VIOLATED

    def test_segment_summand_prefers_right(self) -> None:
        other, segment, axis = DirectSum(Box((1, 1)), Segment(2)).segment_summand()
        assert (other, segment, axis) == (Box((1, 1)), Segment(2), 2)

    def test_segment_summand_on_left(self) -> None:
        _, segment, axis = DirectSum(Segment(2), Box((1, 1))).segment_summand()
        assert (segment, axis) == (Segment(2), 0)


class TestValidation:
    def test_embed_raises_on_small_target(self) -> None:
        with pytest.raises(TargetTooSmall):
            Embed(Box((1, 1)), 2)

    def test_minkowski_sum_raises_on_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionMismatch):
            MinkowskiSum(Segment(1), Box((1, 1)))

    def test_segment_raises_on_negative_length(self) -> None:
        with pytest.raises(ValueError):
            Segment(-1)

    def test_expressions_are_hashable(self) -> None:
        assert len({Box((1, 1)), Box((1, 1)), Segment(1)}) == 2
