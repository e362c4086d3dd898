import pytest

from polycode.errors import (
    DimensionMismatch,
    EmptyInput,
    InvalidPolytopeDocument,
    MixedDimensions,
    NotUnimodular,
    OriginMissing,
    TargetTooSmall,
)
from polycode.lattice import (
    LatticePolytope,
    UnimodularMap,
    apply_unimodular,
    contains_point,
    dilate,
    direct_sum,
    dump_polytope,
    embed,
    enumerate_lattice_points,
    find_segment2,
    find_unit_square,
    fits_in_box,
    has_segment2_or_unit_square,
    is_subset,
    join,
    lattice_points,
    load_polytope,
    longest_lattice_segment,
    minkowski_sum,
    product,
    slice_at,
    translate,
)

UNIT_SQUARE = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = LatticePolytope([(0, 0), (2, 3), (4, 2)])
UNIT_TRIANGLE = LatticePolytope([(0, 0), (1, 0), (0, 1)])


def segment(length: int) -> LatticePolytope:
    return LatticePolytope([(0,), (length,)])


class TestLatticePolytope:
    def test_polytope_raises_on_no_generators(self) -> None:
        with pytest.raises(EmptyInput):
            LatticePolytope([])

    def test_polytope_raises_on_mixed_dimensions(self) -> None:
        with pytest.raises(MixedDimensions):
            LatticePolytope([(0, 0), (1,)])

    def test_single_point_is_valid(self) -> None:
        assert lattice_points(LatticePolytope([(2, 3)])) == ((2, 3),)

    def test_unit_square_points_in_colex_order(self) -> None:
        assert lattice_points(UNIT_SQUARE) == ((0, 0), (1, 0), (0, 1), (1, 1))

    def test_triangle_has_seven_points(self) -> None:
        assert TRIANGLE.num_lattice_points == 7

    def test_segment_points(self) -> None:
        assert lattice_points(segment(3)) == ((0,), (1,), (2,), (3,))

    def test_equality_ignores_generator_order(self) -> None:
        assert LatticePolytope([(1, 1), (0, 0)]) == LatticePolytope(
            [(0, 0), (1, 1)]
        )


class TestContainsPoint:
    def test_contains_vertex(self) -> None:
        assert contains_point(UNIT_SQUARE, (1, 1))

    def test_triangle_contains_interior_point(self) -> None:
        assert contains_point(TRIANGLE, (2, 2))

    def test_triangle_excludes_nearby_point(self) -> None:
        assert not contains_point(TRIANGLE, (3, 1))

    def test_contains_raises_on_wrong_dimension(self) -> None:
        with pytest.raises(DimensionMismatch):
            contains_point(UNIT_SQUARE, (0, 0, 0))

    def test_contains_point_on_flat_polytope(self) -> None:
        flat = LatticePolytope([(0, 0, 1), (2, 0, 1), (0, 2, 1)])
        assert contains_point(flat, (1, 1, 1))
        assert not contains_point(flat, (2, 1, 1))

    def test_contains_point_on_diagonal_segment(self) -> None:
        diagonal = LatticePolytope([(0, 0), (3, 3)])
        assert contains_point(diagonal, (2, 2))
        assert not contains_point(diagonal, (1, 2))


class TestEnumerateLatticePoints:
    def test_enumerates_flat_triangle_in_space(self) -> None:
        flat = LatticePolytope([(0, 0, 1), (2, 0, 1), (0, 2, 1)])
        assert enumerate_lattice_points(flat) == (
            (0, 0, 1),
            (1, 0, 1),
            (2, 0, 1),
            (0, 1, 1),
            (1, 1, 1),
            (0, 2, 1),
        )

    def test_enumerates_thin_triangle(self) -> None:
        # the centroid is the only non-vertex point
        thin = LatticePolytope([(0, 0), (1, 2), (2, 1)])
        assert enumerate_lattice_points(thin) == ((0, 0), (1, 1), (2, 1), (1, 2))


class TestConstructions:
    def test_product_of_unit_segments_is_square(self) -> None:
        assert product(segment(1), segment(1)) == UNIT_SQUARE

    def test_product_counts_multiply(self) -> None:
        assert product(segment(1), segment(2)).num_lattice_points == 6

    def test_product_with_segment_is_cube(self) -> None:
        assert product(UNIT_SQUARE, segment(1)).num_lattice_points == 8

    def test_join_of_segments(self) -> None:
        P = join(segment(2), segment(3))
        assert P.dim == 3
        assert P.num_lattice_points == 7

    def test_join_points_match_enumeration(self) -> None:
        P = join(UNIT_SQUARE, UNIT_SQUARE)
        assert P.num_lattice_points == 8
        assert enumerate_lattice_points(P) == P.lattice_points

    def test_join_of_points_is_segment(self) -> None:
        P = join(LatticePolytope([(0,)]), LatticePolytope([(0,)]))
        assert P.num_lattice_points == 2

    def test_direct_sum_of_segments_is_triangle(self) -> None:
        assert direct_sum(segment(2), segment(3)) == LatticePolytope(
            [(0, 0), (2, 0), (0, 3)]
        )

    def test_direct_sum_raises_without_origin(self) -> None:
        shifted = translate(segment(2), (1,))
        with pytest.raises(OriginMissing):
            direct_sum(shifted, segment(1))

    def test_minkowski_sum_of_segments_is_square(self) -> None:
        P = minkowski_sum(
            LatticePolytope([(0, 0), (1, 0)]), LatticePolytope([(0, 0), (0, 1)])
        )
        assert P == UNIT_SQUARE

    def test_minkowski_sum_in_one_dimension(self) -> None:
        assert minkowski_sum(segment(1), segment(1)).num_lattice_points == 3

    def test_minkowski_sum_raises_on_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionMismatch):
            minkowski_sum(segment(1), UNIT_SQUARE)

    def test_dilate_segment(self) -> None:
        assert dilate(segment(1), 3) == segment(3)

    def test_dilate_unit_triangle(self) -> None:
        assert dilate(UNIT_TRIANGLE, 2).num_lattice_points == 6

    def test_dilate_by_one_is_identity(self) -> None:
        assert dilate(TRIANGLE, 1) is TRIANGLE

    def test_embed_keeps_points(self) -> None:
        assert embed(UNIT_SQUARE, 3).num_lattice_points == 4
        assert embed(segment(2), 4).num_lattice_points == 3

    def test_embed_raises_on_small_target(self) -> None:
        with pytest.raises(TargetTooSmall):
            embed(UNIT_SQUARE, 2)

    def test_shear_keeps_point_count(self) -> None:
        P = apply_unimodular(UNIT_SQUARE, UnimodularMap([[1, 1], [0, 1]]))
        assert P.num_lattice_points == 4
        assert enumerate_lattice_points(P) == P.lattice_points

    def test_map_raises_when_not_unimodular(self) -> None:
        with pytest.raises(NotUnimodular):
            UnimodularMap([[2, 0], [0, 1]])


class TestPredicates:
    def test_fits_in_box(self) -> None:
        assert fits_in_box(UNIT_SQUARE, 5)
        assert not fits_in_box(segment(5), 5)
        assert fits_in_box(segment(5), 7)

    def test_is_subset(self) -> None:
        assert is_subset(UNIT_TRIANGLE, UNIT_SQUARE)
        assert not is_subset(UNIT_SQUARE, UNIT_TRIANGLE)

    def test_segment_of_length_two_has_witness(self) -> None:
        assert find_segment2(segment(2)) is not None
        assert has_segment2_or_unit_square(segment(2))[0]

    def test_unit_square_has_square_witness(self) -> None:
        witness = find_unit_square(UNIT_SQUARE)
        assert witness is not None
        assert set(witness.points) == set(UNIT_SQUARE.lattice_points)

    def test_unit_triangle_has_no_witness(self) -> None:
        assert has_segment2_or_unit_square(UNIT_TRIANGLE) == (False, None)

    def test_longest_segment_of_triangle(self) -> None:
        # (0, 0), (1, 1), (2, 2) is the longest run
        assert longest_lattice_segment(TRIANGLE).length == 2

    def test_slices_of_triangle(self) -> None:
        P = direct_sum(TRIANGLE, segment(5))
        counts = [slice_at(P, 2, i).num_lattice_points for i in range(6)]
        assert counts == [7, 4, 3, 2, 1, 1]


class TestDocuments:
    def test_load_reads_vertices(self, resources_dir) -> None:
        text = (resources_dir / "unit_square.json").read_text()
        assert load_polytope(text) == UNIT_SQUARE

    def test_dump_then_load_keeps_points(self) -> None:
        loaded = load_polytope(dump_polytope(TRIANGLE))
        assert loaded.lattice_points == TRIANGLE.lattice_points

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"dim": 2, "vertices": [[0, 0, 0]]}',
            '{"dim": 2, "vertices": []}',
            '{"dim": 2, "vertices": [[0, 0]], "extra": 1}',
            '{"dim": 0, "vertices": [[]]}',
            '{"dim": 1, "vertices": [[0.5]]}',
        ],
    )
    def test_load_raises_on_invalid_document(self, text: str) -> None:
        with pytest.raises(InvalidPolytopeDocument):
            load_polytope(text)
