"""Toric codes of lattice polytopes and their parameters.

``max_zeros`` is the largest number of torus zeros of a nonzero polynomial
supported on the polytope, so ``d = block_length - max_zeros``. The formula
engine works with intervals of ``max_zeros`` because every rule is monotone
nondecreasing in the values of its children.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from polycode.config import message_budget
from polycode.errors import (
    NOT_A_SUBSET_ERROR,
    OutOfBox,
    RuleInapplicable,
    TargetTooSmall,
)
from polycode.expressions import (
    Atom,
    Box,
    Dilate,
    DirectSum,
    Embed,
    Hypothesis,
    Join,
    PolytopeExpr,
    Product,
    Segment,
    Simplex,
)
from polycode.ff import FieldTable
from polycode.lattice import (
    LatticePolytope,
    find_unit_square,
    fits_in_box,
    has_segment2_or_unit_square,
    is_subset,
    longest_lattice_segment,
    slice_at,
)
from polycode.models import CodeParams, Codeword
from polycode.search import minimum_weight, search_size
from polycode.types import Point

logger = logging.getLogger(__name__)

Target = Union[LatticePolytope, PolytopeExpr]
METHODS = ("auto", "formula", "exhaustive", "bounds")


def as_expr(target: Target) -> PolytopeExpr:
    if isinstance(target, PolytopeExpr):
        return target
    return Atom(target)


def torus_points(field: FieldTable, n: int) -> List[Point]:
    """Torus points with the first coordinate most significant."""
    return list(cartesian(field.nonzero_elements(), repeat=n))


class GeneratorMatrix:
    def __init__(
        self,
        field: FieldTable,
        rows: np.ndarray,
        row_labels: Sequence[Point],
        col_labels: Sequence[Point],
    ) -> None:
        self.field = field
        self.rows = rows
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self._row_index = {p: i for i, p in enumerate(self.row_labels)}

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def block_length(self) -> int:
        return self.rows.shape[1]

    def row_index(self, point: Point) -> int:
        return self._row_index[tuple(point)]

    def dump(self) -> str:
        def label(point: Point) -> str:
            return "(" + ",".join(map(str, point)) + ")"

        n = len(self.col_labels[0])
        lines = [
            f"# q={self.field.q} n={n} k={self.k} N={self.block_length}",
            "columns: " + " ".join(label(a) for a in self.col_labels),
        ]
        for point, row in zip(self.row_labels, self.rows):
            lines.append(f"{label(point)}: " + " ".join(map(str, row)))
        return "\n".join(lines) + "\n"


def generator_matrix(P: Target, field: FieldTable) -> GeneratorMatrix:
    P = as_expr(P).polytope
    if not fits_in_box(P, field.q):
        raise OutOfBox(field.q)
    columns = torus_points(field, P.dim)
    logs = field.log[np.array(columns, dtype=np.int64)]
    exponents = np.array(P.lattice_points, dtype=np.int64) @ logs.T
    rows = field.exp[exponents % (field.q - 1)]
    return GeneratorMatrix(field, rows, P.lattice_points, columns)


def rank_check(G: GeneratorMatrix) -> int:
    return int(np.linalg.matrix_rank(G.field.galois_field(G.rows)))


def encode(G: GeneratorMatrix, message: Sequence[int]) -> Codeword:
    coefficients = np.array([message], dtype=np.int64)
    word = G.field.combine(coefficients, G.rows)[0]
    return Codeword(
        message=tuple(int(c) for c in message),
        word=tuple(int(c) for c in word),
        weight=int(np.count_nonzero(word)),
    )


def minimum_codeword(
    P: Target,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
) -> Codeword:
    G = generator_matrix(P, field)
    _, message = minimum_weight(G.rows, field, budget, workers)
    return encode(G, message)


def min_distance_exhaustive(
    P: Target,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
) -> CodeParams:
    e = as_expr(P)
    G = generator_matrix(e, field)
    d, _ = minimum_weight(G.rows, field, budget, workers)
    return CodeParams.build(field.q, e.dim, G.k, d, method="exhaustive")


# closed forms


def join_max_zeros(
    n: int, m: int, zeros_p: int, zeros_q: int, q: int, corollary: bool = False
) -> int:
    """Max zeros of the join of P (dimension n) and Q (dimension m).

    With ``corollary`` the all-torus term is left out, which is valid when
    both operands contain a lattice segment of length 2 or a unit square.
    """
    q1 = q - 1
    terms = [
        zeros_p * q1 ** (m + 1),
        zeros_q * q1 ** (n + 1),
        q1 * zeros_p * zeros_q + (q1**n - zeros_p) * (q1**m - zeros_q),
    ]
    if not corollary:
        terms.append(q1 ** (n + m))
    return max(terms)


def join_delta(delta_p: Fraction, delta_q: Fraction, q: int) -> Fraction:
    q1 = Fraction(q - 1)
    return min(
        1 - 1 / q1,
        delta_p,
        delta_q,
        delta_p + delta_q - delta_p * delta_q * q / q1,
    )


def join_saddle_condition(zeros_p: int, zeros_q: int, n: int, m: int, q: int) -> bool:
    """Sufficient condition for the all-torus term not to be the maximum."""
    q1 = q - 1
    return q * zeros_p >= 2 * q1**n and q * zeros_q >= 2 * q1**m


def directsum_max_zeros(n: int, zeros_p: int, length: int, q: int) -> int:
    """Max zeros of P (dimension n) direct sum [0, length], under the vertex hypothesis."""
    q1 = q - 1
    return max(zeros_p * q1, length * q1**n)


def hypercube_delta(M: int, q: int) -> Fraction:
    return Fraction(q - 2, q - 1) ** M


def generic_bounds(P: Target, field: FieldTable) -> Tuple[int, int]:
    """Certified (lower, upper) bounds on d without any search.

    The lower bound comes from the bounding box, the upper bound from
    explicit polynomials: a product of binomials along the longest lattice
    segment, or two binomials on a unimodular unit square.
    """
    P = as_expr(P).polytope
    q1, n = field.q - 1, P.dim
    low = prod(q1 - w for w in P.width)
    zeros = longest_lattice_segment(P).length * q1 ** (n - 1)
    if n >= 2 and find_unit_square(P) is not None:
        zeros = max(zeros, (2 * q1 - 1) * q1 ** (n - 2))
    return low, q1**n - zeros


# formula engine


@dataclass(frozen=True)
class ZeroBounds:
    lo: int
    hi: int
    method: str
    budget_exceeded: bool = False
    notes: Tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


class FormulaEngine:
    def __init__(
        self,
        field: FieldTable,
        budget: Optional[int] = None,
        workers: int = 1,
        fallback: bool = True,
    ) -> None:
        self.field = field
        self.budget = message_budget(budget)
        self.workers = workers
        self.fallback = fallback
        self._memo: Dict[PolytopeExpr, ZeroBounds] = {}

    @property
    def q1(self) -> int:
        return self.field.q - 1

    def max_zeros(self, e: PolytopeExpr) -> ZeroBounds:
        if e not in self._memo:
            try:
                result = self._rule(e)
            except RuleInapplicable:
                if not self.fallback:
                    raise
                result = self._fallback(e)
            logger.debug(
                "rule %s lo=%d hi=%d for %s",
                result.method,
                result.lo,
                result.hi,
                e.to_text(),
            )
            self._memo[e] = result
        return self._memo[e]

    def _exact(self, value: int, method: str) -> ZeroBounds:
        return ZeroBounds(value, value, method)

    def _rule(self, e: PolytopeExpr) -> ZeroBounds:
        if isinstance(e, Segment):
            return self._simplex(1, e.length)
        if isinstance(e, Simplex):
            return self._simplex(e.dimension, e.length)
        if isinstance(e, Box):
            return self._box(e)
        if isinstance(e, Product):
            return self._product(e)
        if isinstance(e, Join):
            return self._join(e)
        if isinstance(e, DirectSum):
            return self._direct_sum(e)
        if isinstance(e, Dilate):
            rescaled = e.rescaled()
            if rescaled is None:
                raise RuleInapplicable(f"No rule for {e.to_text()}.")
            return self.max_zeros(rescaled)
        if isinstance(e, Embed):
            return self._embed(e)
        raise RuleInapplicable(f"No rule for {e.to_text()}.")

    def _simplex(self, n: int, length: int) -> ZeroBounds:
        if length >= self.q1:
            raise RuleInapplicable("Simplex side has to be below q - 1.")
        return self._exact(length * self.q1 ** (n - 1), "simplex")

    def _box(self, e: Box) -> ZeroBounds:
        if any(length >= self.q1 for length in e.lengths):
            raise RuleInapplicable("Box sides have to be below q - 1.")
        d = prod(self.q1 - length for length in e.lengths)
        return self._exact(self.q1**e.dim - d, "box")

    def _product(self, e: Product) -> ZeroBounds:
        a, b = self.max_zeros(e.left), self.max_zeros(e.right)
        na, nb = self.q1**e.left.dim, self.q1**e.right.dim
        total = na * nb

        def zeros(za: int, zb: int) -> int:
            return total - (na - za) * (nb - zb)

        return ZeroBounds(
            zeros(a.lo, b.lo),
            zeros(a.hi, b.hi),
            "product",
            a.budget_exceeded or b.budget_exceeded,
        )

    def _join(self, e: Join) -> ZeroBounds:
        a, b = self.max_zeros(e.left), self.max_zeros(e.right)
        corollary = (
            has_segment2_or_unit_square(e.left.polytope)[0]
            and has_segment2_or_unit_square(e.right.polytope)[0]
        )
        n, m, q = e.left.dim, e.right.dim, self.field.q
        return ZeroBounds(
            join_max_zeros(n, m, a.lo, b.lo, q, corollary),
            join_max_zeros(n, m, a.hi, b.hi, q, corollary),
            "join-corollary" if corollary else "join",
            a.budget_exceeded or b.budget_exceeded,
        )

    def _embed(self, e: Embed) -> ZeroBounds:
        a = self.max_zeros(e.child)
        factor = self.q1 ** (e.target - e.child.dim)
        return ZeroBounds(
            a.lo * factor, a.hi * factor, "embed", a.budget_exceeded
        )

    def _direct_sum(self, e: DirectSum) -> ZeroBounds:
        summand = e.segment_summand()
        if summand is None:
            raise RuleInapplicable("Direct sum needs a segment summand.")
        other, segment, _ = summand
        if segment.length >= self.q1:
            raise RuleInapplicable("Segment has to be shorter than q - 1.")
        q, n = self.field.q, other.dim
        a = self.max_zeros(other)
        low = directsum_max_zeros(n, a.lo, segment.length, q)
        high = directsum_max_zeros(n, a.hi, segment.length, q)
        status = e.hypothesis_status
        if status is Hypothesis.ASSERTED:
            return ZeroBounds(low, high, "directsum", a.budget_exceeded)

        total = self.q1 ** e.dim
        d_low = slice_lower_bound(e, self.field, engine=self)
        sandwich_hi = total - d_low
        if sandwich_hi == low:
            return self._exact(low, "directsum-sandwich")

        notes = [f"vertex hypothesis {status.value}"]
        if search_size(q, e.num_lattice_points) <= self.budget:
            exhaustive = self._exhaustive(e)
            if a.exact:
                verdict = "agrees" if low == exhaustive else "disagrees"
                notes.append(
                    f"directsum formula gives max_zeros={low}, "
                    f"exhaustive gives {exhaustive} ({verdict})"
                )
            return ZeroBounds(
                exhaustive, exhaustive, "exhaustive", notes=tuple(notes)
            )
        return ZeroBounds(
            low, sandwich_hi, "bounds", True, notes=tuple(notes)
        )

    def _exhaustive(self, e: PolytopeExpr) -> int:
        G = generator_matrix(e, self.field)
        d, _ = minimum_weight(G.rows, self.field, self.budget, self.workers)
        return G.block_length - d

    def _fallback(self, e: PolytopeExpr) -> ZeroBounds:
        total = self.q1**e.dim
        if search_size(self.field.q, e.num_lattice_points) <= self.budget:
            return self._exact(self._exhaustive(e), "exhaustive")
        d_low, d_high = generic_bounds(e, self.field)
        logger.info(
            "budget exceeded, using bounds d=[%d,%d] for %s",
            d_low,
            d_high,
            e.to_text(),
        )
        return ZeroBounds(total - d_high, total - d_low, "bounds", True)


def _params(e: PolytopeExpr, field: FieldTable, zeros: ZeroBounds) -> CodeParams:
    total = (field.q - 1) ** e.dim
    return CodeParams.build(
        field.q,
        e.dim,
        e.num_lattice_points,
        total - zeros.hi,
        total - zeros.lo,
        method=zeros.method,
        budget_exceeded=zeros.budget_exceeded,
        notes=list(zeros.notes),
    )


def params_by_formula(
    e: Target,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
    fallback: bool = True,
) -> CodeParams:
    e = as_expr(e)
    if not e.fits_in_box(field.q):
        raise OutOfBox(field.q)
    engine = FormulaEngine(field, budget, workers, fallback)
    return _params(e, field, engine.max_zeros(e))


def params_by_bounds(e: Target, field: FieldTable) -> CodeParams:
    e = as_expr(e)
    if not e.fits_in_box(field.q):
        raise OutOfBox(field.q)
    d_low, d_high = generic_bounds(e, field)
    return CodeParams.build(
        field.q, e.dim, e.num_lattice_points, d_low, d_high, method="bounds"
    )


def compute_params(
    e: Target,
    field: FieldTable,
    method: str = "auto",
    budget: Optional[int] = None,
    workers: int = 1,
) -> CodeParams:
    if method == "auto":
        return params_by_formula(e, field, budget, workers)
    if method == "formula":
        return params_by_formula(e, field, budget, workers, fallback=False)
    if method == "exhaustive":
        return min_distance_exhaustive(e, field, budget, workers)
    if method == "bounds":
        return params_by_bounds(e, field)
    raise ValueError(f"Unknown method {method!r}, use one of {METHODS}.")


def max_zeros(
    target: Target,
    field: FieldTable,
    method: str = "auto",
    budget: Optional[int] = None,
    workers: int = 1,
) -> int:
    return compute_params(target, field, method, budget, workers).max_zeros


# direct sum bounds


def _segment_summand(e: PolytopeExpr) -> Tuple[DirectSum, Segment, int]:
    if isinstance(e, DirectSum):
        summand = e.segment_summand()
        if summand is not None:
            return e, summand[1], summand[2]
    raise RuleInapplicable("Expression is not a direct sum with a segment.")


def slice_lower_bound(
    e: PolytopeExpr,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
    engine: Optional[FormulaEngine] = None,
) -> int:
    """Lower bound min_i (q - 1 - i) d(P_i) over the slices along the segment.

    Slice distances are exhaustive (raising BudgetExceeded) unless an
    engine is given, in which case its certified lower bounds are used.
    """
    e, segment, axis = _segment_summand(e)
    P = e.polytope
    if not fits_in_box(P, field.q):
        raise OutOfBox(field.q)
    q1 = field.q - 1
    values = []
    for i in range(segment.length + 1):
        piece = Atom(slice_at(P, axis, i))
        if engine is None:
            d = min_distance_exhaustive(piece, field, budget, workers).d
        else:
            d = q1**piece.dim - engine.max_zeros(piece).hi
        values.append((q1 - i) * d)
    logger.debug("slice bounds %s", values)
    return min(values)


def witness_upper_bound(e: PolytopeExpr, field: FieldTable) -> int:
    """Weight of the codeword of (z - a_1)...(z - a_l) along the segment axis."""
    if isinstance(e, Segment):
        segment, axis = e, 0
    else:
        e, segment, axis = _segment_summand(e)
    length = segment.length
    if length > field.q - 2:
        raise RuleInapplicable("Segment too long for distinct nonzero roots.")

    coefficients = [1]
    for root in field.nonzero_elements()[:length]:
        shifted = [0] + coefficients
        scaled = [field.mul(field.neg(root), c) for c in coefficients] + [0]
        coefficients = [field.add(x, y) for x, y in zip(shifted, scaled)]

    G = generator_matrix(e, field)
    message = [0] * G.k
    for power, c in enumerate(coefficients):
        point = tuple(power if j == axis else 0 for j in range(e.dim))
        message[G.row_index(point)] = c
    return encode(G, message).weight


# invariance identities


def embed_params(params: CodeParams, m: int) -> CodeParams:
    """Parameters of the natural embedding into dimension m."""
    if m < params.n:
        raise TargetTooSmall(f"Cannot embed dimension {params.n} into {m}.")
    if m == params.n:
        return params
    factor = (params.q - 1) ** (m - params.n)
    return CodeParams.build(
        params.q,
        m,
        params.k,
        params.d_lo * factor,
        params.d_hi * factor,
        method="embed",
        budget_exceeded=params.budget_exceeded,
    )


def delta_monotone(
    P: Target,
    Q: Target,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
) -> bool:
    """Checks delta(P) >= delta(Q) for P inside Q, both searched exhaustively."""
    P, Q = as_expr(P), as_expr(Q)
    if not is_subset(P.polytope, Q.polytope):
        raise NOT_A_SUBSET_ERROR
    delta_p = min_distance_exhaustive(P, field, budget, workers).delta
    delta_q = min_distance_exhaustive(Q, field, budget, workers).delta
    return delta_p >= delta_q
