"""Finite prefixes of the box, simplex, self-join and custom families.

Parameters come from closed recurrences in exact rational arithmetic, or
from the formula engine for custom families. Rows
small enough for the exhaustive search are cross-checked against it.
"""

import csv
import io
import logging
from fractions import Fraction
from math import comb, prod
from itertools import islice
from typing import Dict, Iterable, List, Literal, Optional, Tuple, Union

from pydantic import PositiveInt, ValidationError, validator

from polycode.config import message_budget
from polycode.decomp import full_minkowski_length, hypercube_dimension
from polycode.errors import BudgetExceeded, ScheduleOutOfRange
from polycode.expressions import Box, DirectSum, Join, PolytopeExpr, Segment
from polycode.ff import FieldTable, field_new
from polycode.lattice import has_segment2_or_unit_square
from polycode.models import BaseModel, FamilyRow
from polycode.search import search_size
from polycode.syntax import parse_expression
from polycode.toric import (
    join_max_zeros,
    min_distance_exhaustive,
    params_by_formula,
)

logger = logging.getLogger(__name__)

CROSS_CHECK_K = 9
DECOMP_POINTS = 30
FIXED_POINT_STEPS = 20

CSV_COLUMNS = (
    "i",
    "n",
    "k",
    "d_lo",
    "d_hi",
    "delta_num",
    "delta_den",
    "rate_num",
    "rate_den",
    "method",
    "L",
    "M",
)


class FamilySpec(BaseModel):
    kind: Literal["boxes", "simplices", "self_join", "custom"]
    q: int
    lengths: List[int] = [1]
    depth: PositiveInt = 1
    seed: Optional[str] = None
    expressions: List[str] = []
    budget: Optional[PositiveInt] = None
    workers: PositiveInt = 1

    @validator("seed", always=True)
    def seed_for_self_join(cls, v: Optional[str], values) -> Optional[str]:
        if values.get("kind") == "self_join" and v is None:
            raise ValueError("self_join family needs a seed expression")
        return v


def family_spec(**kwargs) -> FamilySpec:
    try:
        return FamilySpec(**kwargs)
    except ValidationError as e:
        raise ScheduleOutOfRange(str(e)) from e


def schedule(spec: FamilySpec) -> List[int]:
    """Side lengths l_1..l_depth; a single length is repeated."""
    lengths = spec.lengths
    if len(lengths) == 1:
        lengths = lengths * spec.depth
    if len(lengths) < spec.depth:
        raise ScheduleOutOfRange(
            f"Schedule has {len(lengths)} lengths, depth is {spec.depth}."
        )
    lengths = lengths[: spec.depth]
    for length in lengths:
        if not 0 <= length <= spec.q - 2:
            raise ScheduleOutOfRange(
                f"Length {length} is outside [0, {spec.q - 2}]."
            )
    return lengths


def _within_budget(q: int, k: int, budget: Optional[int]) -> bool:
    return k <= CROSS_CHECK_K and search_size(q, k) <= message_budget(budget)


def _cross_check(
    e: PolytopeExpr,
    field: FieldTable,
    d: int,
    k: int,
    spec: FamilySpec,
) -> Optional[bool]:
    if not _within_budget(field.q, k, spec.budget):
        return None
    try:
        params = min_distance_exhaustive(e, field, spec.budget, spec.workers)
    except BudgetExceeded:
        return None
    verified = params.d == d and params.k == k
    if not verified:
        logger.error(
            "family row %s: recurrence d=%d k=%d, exhaustive d=%d k=%d",
            e.to_text(),
            d,
            k,
            params.d,
            params.k,
        )
    return verified


def _decomposition(
    e: PolytopeExpr, budget: Optional[int]
) -> Tuple[Optional[int], Optional[int]]:
    if e.num_lattice_points > DECOMP_POINTS:
        return None, None
    P = e.polytope
    L = full_minkowski_length(P, budget)
    M = hypercube_dimension(P, budget)
    return (
        None if L.budget_exceeded else L.value,
        None if M.budget_exceeded else M.value,
    )


def family_boxes(spec: FamilySpec) -> List[FamilyRow]:
    field = field_new(spec.q)
    q1 = spec.q - 1
    rows = []
    lengths = schedule(spec)
    delta, rate = Fraction(1), Fraction(1)
    for i, length in enumerate(lengths, start=1):
        delta *= 1 - Fraction(length, q1)
        rate *= Fraction(length + 1, q1)
        sides = tuple(lengths[:i])
        e = Box(sides)
        k = prod(side + 1 for side in sides)
        d = prod(q1 - side for side in sides)
        rows.append(
            FamilyRow(
                i=i,
                n=i,
                k=k,
                d_lo=d,
                d_hi=d,
                delta=delta,
                rate=rate,
                method="box",
                L=sum(sides),
                M=sum(1 for side in sides if side > 0),
                verified=_cross_check(e, field, d, k, spec),
            )
        )
    return rows


def simplex_point_count(lengths: Iterable[int]) -> int:
    """Lattice points of conv(0, l_1 e_1, ..., l_n e_n)."""
    counts: Dict[Fraction, int] = {Fraction(0): 1}
    for length in lengths:
        if length == 0:
            continue
        step: Dict[Fraction, int] = {}
        for used, count in counts.items():
            for x in range(length + 1):
                total = used + Fraction(x, length)
                if total > 1:
                    break
                step[total] = step.get(total, 0) + count
        counts = step
    return sum(counts.values())


def family_simplices(spec: FamilySpec) -> List[FamilyRow]:
    field = field_new(spec.q)
    q1 = spec.q - 1
    lengths = schedule(spec)
    rows = []
    e: Optional[PolytopeExpr] = None
    zeros = 0
    for i, length in enumerate(lengths, start=1):
        if e is None:
            e, zeros = Segment(length), length
        else:
            e = DirectSum(e, Segment(length))
            zeros = max(zeros * q1, length * q1 ** (i - 1))
        block_length = q1**i
        k = simplex_point_count(lengths[:i])
        d = block_length - zeros
        longest = max(lengths[:i])
        L, M = _decomposition(e, spec.budget)
        rows.append(
            FamilyRow(
                i=i,
                n=i,
                k=k,
                d_lo=d,
                d_hi=d,
                delta=Fraction(d, block_length),
                rate=Fraction(k, block_length),
                method="simplex" if i == 1 else "directsum",
                rate_bound=Fraction(comb(i + longest, longest), block_length),
                L=L,
                M=M,
                verified=_cross_check(e, field, d, k, spec),
            )
        )
    return rows


def family_self_join(spec: FamilySpec) -> List[FamilyRow]:
    field = field_new(spec.q)
    q1 = spec.q - 1
    e = parse_expression(spec.seed)
    seed = params_by_formula(e, field, spec.budget, spec.workers)
    corollary = has_segment2_or_unit_square(e.polytope)[0]
    if not corollary:
        logger.info(
            "seed %s has no segment of length 2 or unit square, "
            "rows are bounds only",
            e.to_text(),
        )

    n, k = e.dim, seed.k
    zeros_lo, zeros_hi = seed.max_zeros_lo, seed.max_zeros_hi
    L, M = _decomposition(e, spec.budget)
    rows = [
        FamilyRow(
            i=1,
            n=n,
            k=k,
            d_lo=seed.d_lo,
            d_hi=seed.d_hi,
            delta=seed.delta_lo,
            rate=seed.rate,
            method=seed.method,
            L=L,
            M=M,
        )
    ]
    for i in range(2, spec.depth + 1):
        previous_n = n
        # without the corollary the torus term is kept only in the upper end
        zeros_lo = join_max_zeros(n, n, zeros_lo, zeros_lo, spec.q, True)
        zeros_hi = join_max_zeros(n, n, zeros_hi, zeros_hi, spec.q, corollary)
        n, k = 2 * n + 1, 2 * k
        e = Join(e, e)
        block_length = q1**n
        d_lo, d_hi = block_length - zeros_hi, block_length - zeros_lo
        verified = None
        if d_lo == d_hi:
            verified = _cross_check(e, field, d_lo, k, spec)
        rows.append(
            FamilyRow(
                i=i,
                n=n,
                k=k,
                d_lo=d_lo,
                d_hi=d_hi,
                delta=Fraction(d_lo, block_length),
                rate=Fraction(k, block_length),
                method="join-corollary" if corollary else "bounds",
                rate_bound=Fraction(2, q1 ** (previous_n + 1)),
                verified=verified,
            )
        )
    return rows


def family_custom(
    spec: FamilySpec, expressions: Optional[Iterable[PolytopeExpr]] = None
) -> List[FamilyRow]:
    """Rows for the first ``depth`` expressions, dimensions strictly increasing.

    ``expressions`` may be any iterable, infinite ones included; without it
    the texts in ``spec.expressions`` are parsed.
    """
    field = field_new(spec.q)
    if expressions is None:
        expressions = (parse_expression(text) for text in spec.expressions)
    rows: List[FamilyRow] = []
    for i, e in enumerate(islice(expressions, spec.depth), start=1):
        if rows and e.dim <= rows[-1].n:
            raise ScheduleOutOfRange(
                f"Family dimensions have to increase, got {e.dim} after "
                f"{rows[-1].n}."
            )
        params = params_by_formula(e, field, spec.budget, spec.workers)
        verified: Optional[bool] = None
        if params.method == "exhaustive":
            verified = True
        elif params.d_lo == params.d_hi:
            verified = _cross_check(e, field, params.d_lo, params.k, spec)
        L, M = _decomposition(e, spec.budget)
        rows.append(
            FamilyRow(
                i=i,
                n=e.dim,
                k=params.k,
                d_lo=params.d_lo,
                d_hi=params.d_hi,
                delta=params.delta_lo,
                rate=params.rate,
                method=params.method,
                L=L,
                M=M,
                verified=verified,
            )
        )
    if not rows:
        raise ScheduleOutOfRange("Custom family needs at least one expression.")
    return rows


FAMILIES = {
    "boxes": family_boxes,
    "simplices": family_simplices,
    "self_join": family_self_join,
    "custom": family_custom,
}


def family(spec: FamilySpec) -> List[FamilyRow]:
    rows = FAMILIES[spec.kind](spec)
    logger.info("family %s q=%d depth=%d done", spec.kind, spec.q, spec.depth)
    return rows


def self_join_step(delta: Fraction, q: int) -> Fraction:
    return min(delta, 2 * delta - delta * delta * Fraction(q, q - 1))


def verify_fixed_point(
    delta_1: Union[Fraction, int], q: int, steps: int = FIXED_POINT_STEPS
) -> Tuple[List[Fraction], bool]:
    """Iterates the self-join recurrence; the flag says delta_k == delta_2 for k >= 2."""
    delta_1 = Fraction(delta_1)
    if not 0 <= delta_1 <= 1:
        raise ValueError(f"delta has to lie in [0, 1], got {delta_1}.")
    trajectory = [delta_1]
    for _ in range(steps - 1):
        trajectory.append(self_join_step(trajectory[-1], q))
    stable = all(delta == trajectory[1] for delta in trajectory[1:])
    return trajectory, stable


def _cell(value: Optional[int]) -> str:
    return "" if value is None else str(value)


def family_to_csv(rows: Iterable[FamilyRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.i,
                row.n,
                row.k,
                row.d_lo,
                row.d_hi,
                row.delta.numerator,
                row.delta.denominator,
                row.rate.numerator,
                row.rate.denominator,
                row.method,
                _cell(row.L),
                _cell(row.M),
            ]
        )
    return buffer.getvalue()
