"""Full Minkowski length and hypercube dimension of lattice polytopes.

Both searches grow a set of primitive directions and keep track of the
admissible bases: the lattice points b such that b plus every subset sum of
the chosen directions stays in P. Adding a direction v shrinks the bases to
those b with both b and b + v admissible. A nonempty base set certifies
that the zonotope (or parallelepiped) spanned by the directions fits in P,
because P is convex and these subset sums are its vertices.
"""

import logging
from itertools import combinations
from math import ceil
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from polycode.config import node_budget
from polycode.errors import RuleInapplicable, SearchBudgetExceeded
from polycode.expressions import Box, PolytopeExpr, Segment
from polycode.lattice import LatticePolytope, contains_point
from polycode.models import DecompResult, DecompWitness
from polycode.types import Point, Vector
from polycode.utils import (
    add,
    is_primitive,
    is_primitive_extendable,
    lex_positive,
    primitive_part,
    sub,
)

logger = logging.getLogger(__name__)

Bases = FrozenSet[Point]

__all__ = [
    "box_bound_experiment",
    "candidate_directions",
    "full_minkowski_length",
    "hypercube_dimension",
    "is_primitive_extendable",
    "minkowski_length",
    "verify_witness",
]


def candidate_directions(P: LatticePolytope) -> List[Vector]:
    """Lexicographically positive primitive directions between lattice points."""
    directions = set()
    for a, b in combinations(P.lattice_points, 2):
        directions.add(lex_positive(primitive_part(sub(b, a))))
    return sorted(directions)


def _shift(bases: Bases, v: Vector) -> Bases:
    return frozenset(b for b in bases if add(b, v) in bases)


class _Counter:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)


class _Best:
    def __init__(self, base: Point) -> None:
        self.size = 0
        self.base = base
        self.vectors: Tuple[Vector, ...] = ()

    def offer(self, bases: Bases, vectors: Tuple[Vector, ...]) -> None:
        if len(vectors) > self.size:
            self.size = len(vectors)
            self.base = min(bases)
            self.vectors = vectors


def full_minkowski_length(
    P: LatticePolytope, budget: Optional[int] = None
) -> DecompResult:
    """Largest number of primitive segments whose Minkowski sum fits in P."""
    points = frozenset(P.lattice_points)
    directions = candidate_directions(P)
    counter = _Counter(node_budget(budget))
    best = _Best(min(points))
    memo: Dict[Tuple[Bases, int], Tuple[Vector, ...]] = {}

    def extend(bases: Bases, start: int, chosen: Tuple[Vector, ...]):
        key = (bases, start)
        if key in memo:
            return memo[key]
        counter.tick()
        best.offer(bases, chosen)
        # a sum of r more lex-positive segments needs r + 1 distinct bases
        ceiling = len(bases) - 1
        result: Tuple[Vector, ...] = ()
        for i in range(start, len(directions)):
            if len(result) >= ceiling:
                break
            shifted = _shift(bases, directions[i])
            if not shifted:
                continue
            tail = (directions[i],) + extend(shifted, i, chosen + (directions[i],))
            if len(tail) > len(result):
                result = tail
        memo[key] = result
        return result

    exceeded = False
    try:
        vectors = extend(points, 0, ())
        bases = points
        for v in vectors:
            bases = _shift(bases, v)
        best.offer(bases, vectors)
    except SearchBudgetExceeded:
        exceeded = True
        logger.warning(
            "minkowski length search stopped at %d nodes", counter.nodes
        )

    witness = DecompWitness(
        kind="zonotope", base=best.base, vectors=list(best.vectors)
    )
    return DecompResult(
        value=best.size,
        witness=witness,
        budget_exceeded=exceeded,
        nodes=counter.nodes,
        verified=verify_witness(P, witness),
    )


def hypercube_dimension(
    P: LatticePolytope, budget: Optional[int] = None
) -> DecompResult:
    """Largest i with a unimodular image of [0,1]^i inside P."""
    points = frozenset(P.lattice_points)
    directions = candidate_directions(P)
    counter = _Counter(node_budget(budget))
    best = _Best(min(points))

    def extend(bases: Bases, start: int, chosen: Tuple[Vector, ...]) -> None:
        counter.tick()
        best.offer(bases, chosen)
        depth = len(chosen)
        for i in range(start, len(directions)):
            room = min(P.dim - depth, len(bases).bit_length() - 1)
            if depth + room <= best.size:
                return
            v = directions[i]
            shifted = _shift(bases, v)
            if not shifted or not is_primitive_extendable(chosen + (v,)):
                continue
            extend(shifted, i + 1, chosen + (v,))

    exceeded = False
    try:
        extend(points, 0, ())
    except SearchBudgetExceeded:
        exceeded = True
        logger.warning(
            "hypercube search stopped at %d nodes", counter.nodes
        )

    witness = DecompWitness(
        kind="hypercube", base=best.base, vectors=list(best.vectors)
    )
    return DecompResult(
        value=best.size,
        witness=witness,
        budget_exceeded=exceeded,
        nodes=counter.nodes,
        verified=verify_witness(P, witness),
    )


def _subset_sums(base: Point, vectors: Sequence[Vector]) -> List[Point]:
    sums = {tuple(base)}
    for v in vectors:
        sums |= {add(s, v) for s in sums}
    return sorted(sums)


def verify_witness(P: LatticePolytope, witness: DecompWitness) -> bool:
    """Re-checks a witness with the exact membership oracle."""
    vectors = [tuple(v) for v in witness.vectors]
    if witness.kind == "zonotope":
        if not all(is_primitive(v) for v in vectors):
            return False
    elif len(vectors) > P.dim or not is_primitive_extendable(vectors):
        return False
    return all(
        contains_point(P, s) for s in _subset_sums(witness.base, vectors)
    )


def minkowski_length(e: PolytopeExpr) -> int:
    if isinstance(e, Segment):
        return e.length
    if isinstance(e, Box):
        return sum(e.lengths)
    raise RuleInapplicable(
        "Minkowski length is only known for segments and boxes."
    )


def box_bound_experiment(L: int, M: int, q: int) -> bool:
    """Finite form M >= ceil(L / (q - 2)) - 1 of the box dichotomy."""
    return M >= ceil(L / (q - 2)) - 1
