"""Named worked examples, each a list of expected/actual checks."""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from polycode.decomp import full_minkowski_length, hypercube_dimension
from polycode.expressions import (
    Atom,
    Box,
    DirectSum,
    Embed,
    Join,
    PolytopeExpr,
    Segment,
    Simplex,
)
from polycode.families import (
    family_boxes,
    family_simplices,
    family_spec,
    verify_fixed_point,
)
from polycode.ff import field_new
from polycode.lattice import (
    LatticePolytope,
    contains_point,
    find_segment2,
    find_unit_square,
    fits_in_box,
    minkowski_sum,
    slice_at,
)
from polycode.models import Check, ReproduceReport
from polycode.syntax import parse_expression
from polycode.toric import (
    compute_params,
    generator_matrix,
    hypercube_delta,
    join_delta,
    join_saddle_condition,
    rank_check,
    slice_lower_bound,
    witness_upper_bound,
)
from polycode.utils import format_fraction

logger = logging.getLogger(__name__)

Example = Callable[[], List[Check]]

EXAMPLES: Dict[str, Example] = {}


def example(name: str) -> Callable[[Example], Example]:
    def register(f: Example) -> Example:
        EXAMPLES[name] = f
        return f

    return register


def _text(value) -> str:
    if isinstance(value, Fraction):
        return format_fraction(value)
    return str(value)


class _Checks:
    def __init__(self, example_name: str) -> None:
        self.example = example_name
        self.checks: List[Check] = []

    def add(self, name: str, expected, actual) -> None:
        self.checks.append(
            Check(
                example=self.example,
                name=name,
                expected=_text(expected),
                actual=_text(actual),
            )
        )


UNIT_BOX_ROWS = (
    "1111111111111111",
    "1111222233334444",
    "1234123412341234",
    "1234241331424321",
)


@example("unitbox")
def unit_box() -> List[Check]:
    checks = _Checks("unitbox")
    field = field_new(5)
    G = generator_matrix(Box((1, 1)), field)
    for point, row, expected in zip(G.row_labels, G.rows, UNIT_BOX_ROWS):
        checks.add(f"row {point}", expected, "".join(map(str, row)))
    checks.add("rank", 4, rank_check(G))
    nonzero = ",".join(map(str, field.nonzero_elements()))
    checks.add("nonzero elements", "1,2,3,4", nonzero)
    checks.add("fits in box", True, fits_in_box(Box((1, 1)).polytope, field.q))
    params = compute_params(Box((1, 1)), field)
    checks.add("N", 16, params.block_length)
    checks.add("k", 4, params.k)
    checks.add("d", 9, params.d)
    checks.add("max_zeros", 7, params.max_zeros)
    checks.add("delta", Fraction(9, 16), params.delta)
    checks.add("rate", Fraction(1, 4), params.rate)
    exhaustive = compute_params(Box((1, 1)), field, method="exhaustive")
    checks.add("d exhaustive", 9, exhaustive.d)
    return checks.checks


TRIANGLE = ((0, 0), (2, 3), (4, 2))


@example("triangle")
def triangle() -> List[Check]:
    checks = _Checks("triangle")
    P = LatticePolytope(TRIANGLE)
    checks.add("lattice points", 7, P.num_lattice_points)
    checks.add("contains (2,2)", True, contains_point(P, (2, 2)))
    checks.add("contains (3,1)", False, contains_point(P, (3, 1)))
    return checks.checks


@example("directsum-example")
def direct_sum_example() -> List[Check]:
    checks = _Checks("directsum-example")
    field = field_new(7)
    e = DirectSum(Atom(LatticePolytope(TRIANGLE)), Segment(5))
    checks.add("k", 18, e.num_lattice_points)
    counts = [slice_at(e.polytope, 2, i).num_lattice_points for i in range(6)]
    checks.add("slice points", "7,4,3,2,1,1", ",".join(map(str, counts)))
    checks.add("slice lower bound", 36, slice_lower_bound(e, field))
    checks.add("witness upper bound", 36, witness_upper_bound(e, field))
    params = compute_params(e, field)
    checks.add("d", 36, params.d)
    checks.add("method", "directsum-sandwich", params.method)
    return checks.checks


@example("join-segments")
def join_segments() -> List[Check]:
    checks = _Checks("join-segments")
    field = field_new(5)
    e = Join(Segment(2), Segment(2))
    checks.add("lattice points", 6, e.polytope.num_lattice_points)
    checks.add("d exhaustive", 32, compute_params(e, field, "exhaustive").d)
    checks.add("d formula", 32, compute_params(e, field, "formula").d)
    half = Fraction(1, 2)
    checks.add("delta by join formula", half, join_delta(half, half, 5))
    checks.add("torus term dominated", True, join_saddle_condition(2, 2, 1, 1, 5))
    uneven = Join(Segment(2), Segment(3))
    checks.add("[0,2]*[0,3] lattice points", 7, uneven.num_lattice_points)
    segment2 = find_segment2(Segment(2).polytope)
    checks.add("segment witness", ((0,), (1,), (2,)), segment2 and segment2.points)
    square = find_unit_square(Box((1, 1)).polytope)
    corners = ((0, 0), (1, 0), (0, 1), (1, 1))
    checks.add("square witness", corners, square and square.points)
    return checks.checks


@example("simplices")
def simplices() -> List[Check]:
    checks = _Checks("simplices")
    field = field_new(5)
    e = Simplex(2, 2)
    checks.add("d exhaustive", 8, compute_params(e, field, "exhaustive").d)
    checks.add("d formula", 8, compute_params(e, field, "formula").d)
    spec = family_spec(kind="simplices", q=5, lengths=[2], depth=5)
    for row in family_simplices(spec):
        checks.add(f"family delta_{row.i}", Fraction(1, 2), row.delta)
    return checks.checks


@example("segment-sum")
def segment_sum() -> List[Check]:
    checks = _Checks("segment-sum")
    params = compute_params(DirectSum(Segment(2), Segment(3)), field_new(7))
    checks.add("delta", Fraction(1, 2), params.delta)
    checks.add("method", "directsum", params.method)
    for n in (2, 3):
        iterated: PolytopeExpr = Segment(1)
        for _ in range(n - 1):
            iterated = DirectSum(iterated, Segment(1))
        checks.add(
            f"sum of {n} unit segments", Simplex(n, 1).polytope, iterated.polytope
        )
    return checks.checks


@example("minkowski-segments")
def minkowski_segments() -> List[Check]:
    checks = _Checks("minkowski-segments")
    square = minkowski_sum(
        LatticePolytope([(0, 0), (1, 0)]), LatticePolytope([(0, 0), (0, 1)])
    )
    checks.add("sum", Box((1, 1)).polytope, square)
    checks.add("L", 2, full_minkowski_length(square).value)
    return checks.checks


@example("embedding")
def embedding() -> List[Check]:
    checks = _Checks("embedding")
    params = compute_params(Embed(Box((1, 1)), 3), field_new(5))
    checks.add("delta", Fraction(9, 16), params.delta)
    checks.add("rate", Fraction(1, 16), params.rate)
    return checks.checks


DECOMPOSITIONS = {
    "fat_triangle": (1, 1),
    "double_simplex": (2, 2),
    "pentagon": (3, 2),
}


@example("fig7")
def decompositions() -> List[Check]:
    checks = _Checks("fig7")
    for name, (L, M) in DECOMPOSITIONS.items():
        P = parse_expression(f"atom(@{name})").polytope
        length = full_minkowski_length(P)
        cube = hypercube_dimension(P)
        checks.add(f"{name} L", L, length.value)
        checks.add(f"{name} M", M, cube.value)
        checks.add(f"{name} verified", True, length.verified and cube.verified)
    return checks.checks


@example("cube")
def cube() -> List[Check]:
    checks = _Checks("cube")
    P = Box((1, 1, 1)).polytope
    checks.add("L", 3, full_minkowski_length(P).value)
    checks.add("M", 3, hypercube_dimension(P).value)
    return checks.checks


@example("self-join")
def self_join() -> List[Check]:
    checks = _Checks("self-join")
    trajectory, stable = verify_fixed_point(Fraction(9, 16), 5)
    checks.add("unit square delta_2", Fraction(9, 16), trajectory[1])
    checks.add("unit square fixed point", True, stable)
    trajectory, stable = verify_fixed_point(Fraction(1), 5)
    checks.add("delta_1=1 delta_2", Fraction(3, 4), trajectory[1])
    checks.add("delta_1=1 fixed point", True, stable)
    trajectory, _ = verify_fixed_point(Fraction(4, 5), 5)
    checks.add("(q-1)/q fixed", Fraction(4, 5), trajectory[1])
    return checks.checks


@example("hypercube-delta")
def hypercube_delta_example() -> List[Check]:
    checks = _Checks("hypercube-delta")
    field = field_new(5)
    for M in (1, 2):
        e = Box((1,) * M)
        checks.add(
            f"delta of unit {M}-cube",
            hypercube_delta(M, 5),
            compute_params(e, field, "exhaustive").delta,
        )
    return checks.checks


@example("boxes")
def boxes() -> List[Check]:
    checks = _Checks("boxes")
    spec = family_spec(kind="boxes", q=5, lengths=[1, 2], depth=2)
    rows = family_boxes(spec)
    checks.add("delta_2", Fraction(3, 8), rows[1].delta)
    checks.add("d_2", 6, rows[1].d_lo)
    checks.add("verified", True, all(r.verified for r in rows))
    return checks.checks


def run_reproduction(names: Optional[Iterable[str]] = None) -> ReproduceReport:
    names = list(EXAMPLES) if names is None else list(names)
    unknown = [name for name in names if name not in EXAMPLES]
    if unknown:
        raise KeyError(f"Unknown examples {unknown}, known: {sorted(EXAMPLES)}.")
    checks: List[Check] = []
    for name in names:
        found = EXAMPLES[name]()
        failed = [c for c in found if not c.passed]
        logger.info("example %s: %d checks, %d failed", name, len(found), len(failed))
        checks.extend(found)
    return ReproduceReport(checks=checks)
