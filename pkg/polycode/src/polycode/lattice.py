"""Exact geometry of integral convex polytopes given by generators."""

import logging
from functools import cached_property
from typing import (
    Callable,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from pydantic import BaseModel, StrictInt, ValidationError, conlist, validator
from sympy import Add, Eq, Matrix, Symbol, ceiling, floor, symbols
from sympy.logic.boolalg import Boolean
from sympy.solvers.simplex import InfeasibleLPError, lpmax, lpmin

from polycode.errors import (
    DimensionMismatch,
    EMPTY_INPUT_ERROR,
    EmptyInput,
    InvalidPolytopeDocument,
    MixedDimensions,
    NotUnimodular,
    ORIGIN_MISSING_ERROR,
    TargetTooSmall,
)
from polycode.types import Point, Vector
from polycode.utils import (
    add,
    colex_sorted,
    content,
    is_primitive,
    is_primitive_extendable,
    primitive_part,
    sub,
)

logger = logging.getLogger(__name__)

PointsFactory = Callable[[], Iterable[Point]]


class LatticePolytope:
    """Convex hull of integer generators, with its lattice points cached.

    ``points_factory`` lets constructions that know their lattice points
    structurally skip enumeration. Enumeration by exact linear programming
    is the fallback.
    """

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        points_factory: Optional[PointsFactory] = None,
        name: Optional[str] = None,
    ) -> None:
        generators = colex_sorted(
            tuple(int(c) for c in g) for g in generators
        )
        if not generators:
            raise EMPTY_INPUT_ERROR
        dims = {len(g) for g in generators}
        if len(dims) != 1:
            raise MixedDimensions(
                f"Generators have different dimensions: {sorted(dims)}."
            )
        (dim,) = dims
        if dim < 1:
            raise EmptyInput("Points need at least one coordinate.")
        self.generators: Tuple[Point, ...] = generators
        self.dim = dim
        self.name = name
        self._points_factory = points_factory

    @cached_property
    def lattice_points(self) -> Tuple[Point, ...]:
        if self._points_factory is not None:
            return colex_sorted(self._points_factory())
        points = enumerate_lattice_points(self)
        logger.debug(
            "enumerated dim=%d generators=%d points=%d",
            self.dim,
            len(self.generators),
            len(points),
        )
        return points

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.lattice_points)

    @property
    def num_lattice_points(self) -> int:
        return len(self.lattice_points)

    @property
    def lower(self) -> Point:
        return tuple(min(c) for c in zip(*self.generators))

    @property
    def upper(self) -> Point:
        return tuple(max(c) for c in zip(*self.generators))

    @property
    def width(self) -> Tuple[int, ...]:
        return tuple(u - l for l, u in zip(self.lower, self.upper))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"LatticePolytope({list(self.generators)})"


class UnimodularMap:
    """Affine map ``x -> M x + shift`` with ``M`` in GL(n, Z)."""

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        shift: Optional[Sequence[int]] = None,
    ) -> None:
        self.matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise DimensionMismatch("Matrix has to be square.")
        self.shift = tuple(shift) if shift is not None else (0,) * n
        if len(self.shift) != n:
            raise DimensionMismatch("Shift does not match matrix size.")
        if abs(Matrix(self.matrix).det()) != 1:
            raise NotUnimodular(f"Matrix {self.matrix} has |det| != 1.")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, point: Sequence[int]) -> Point:
        return tuple(
            sum(m * x for m, x in zip(row, point)) + s
            for row, s in zip(self.matrix, self.shift)
        )


# membership and enumeration


def _barycentric_constraints(
    generators: Sequence[Point], coordinates: Sequence[int]
) -> Optional[Tuple[Tuple[Symbol, ...], List[Boolean]]]:
    """Convex weights on the generators matching the leading coordinates.

    Returns ``None`` when some fixed coordinate is already out of reach.
    """
    weights = symbols(f"w:{len(generators)}")
    constraints: List[Boolean] = [w >= 0 for w in weights]
    constraints.append(Eq(Add(*weights), 1))
    for i, x in enumerate(coordinates):
        lhs = Add(*(g[i] * w for g, w in zip(generators, weights)))
        if not lhs.free_symbols:
            if lhs != x:
                return None
            continue
        constraints.append(Eq(lhs, x))
    return weights, constraints


def _feasible(weights: Sequence[Symbol], constraints: List[Boolean]) -> bool:
    try:
        lpmin(weights[0], constraints)
    except InfeasibleLPError:
        return False
    return True


def contains_point(P: LatticePolytope, x: Sequence[int]) -> bool:
    if len(x) != P.dim:
        raise DimensionMismatch(
            f"Point has dimension {len(x)}, polytope has {P.dim}."
        )
    if any(c < l or c > u for c, l, u in zip(x, P.lower, P.upper)):
        return False
    if len(P.generators) == 1:
        return tuple(x) == P.generators[0]
    system = _barycentric_constraints(P.generators, x)
    return system is not None and _feasible(*system)


def _coordinate_range(
    generators: Sequence[Point], prefix: Sequence[int]
) -> Optional[Tuple[int, int]]:
    axis = len(prefix)
    values = [g[axis] for g in generators]
    if not prefix:
        return min(values), max(values)
    system = _barycentric_constraints(generators, prefix)
    if system is None:
        return None
    weights, constraints = system
    if len(set(values)) == 1:
        return (values[0], values[0]) if _feasible(*system) else None
    objective = Add(*(v * w for v, w in zip(values, weights)))
    try:
        low, _ = lpmin(objective, constraints)
    except InfeasibleLPError:
        return None
    high, _ = lpmax(objective, constraints)
    return int(ceiling(low)), int(floor(high))


def enumerate_lattice_points(P: LatticePolytope) -> Tuple[Point, ...]:
    """Depth-first scan fixing one coordinate at a time.

    The admissible range of the next coordinate, given the fixed prefix,
    is the projection of a convex fiber, so every integer in it extends.
    """
    if len(P.generators) == 1:
        return P.generators
    points = []
    stack: List[Tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == P.dim:
            points.append(prefix)
            continue
        bounds = _coordinate_range(P.generators, prefix)
        if bounds is None:
            continue
        low, high = bounds
        stack.extend(prefix + (v,) for v in range(low, high + 1))
    return colex_sorted(points)


# constructions


def polytope_from_vertices(
    points: Sequence[Sequence[int]], name: Optional[str] = None
) -> LatticePolytope:
    return LatticePolytope(points, name=name)


def lattice_points(P: LatticePolytope) -> Tuple[Point, ...]:
    return P.lattice_points


def product(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    return LatticePolytope(
        (p + q for p in P.generators for q in Q.generators),
        lambda: (p + q for p in P.lattice_points for q in Q.lattice_points),
    )


def join(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    n, m = P.dim, Q.dim

    def lift(first: Iterable[Point], second: Iterable[Point]):
        yield from (p + (0,) * m + (0,) for p in first)
        yield from ((0,) * n + q + (1,) for q in second)

    return LatticePolytope(
        lift(P.generators, Q.generators),
        lambda: lift(P.lattice_points, Q.lattice_points),
    )


def contains_origin(P: LatticePolytope) -> bool:
    return contains_point(P, (0,) * P.dim)


def subdirect_sum(
    P: LatticePolytope, Q: LatticePolytope, direct: bool = False
) -> LatticePolytope:
    if direct and not (contains_origin(P) and contains_origin(Q)):
        raise ORIGIN_MISSING_ERROR
    n, m = P.dim, Q.dim
    return LatticePolytope(
        [p + (0,) * m for p in P.generators]
        + [(0,) * n + q for q in Q.generators]
    )


def direct_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    return subdirect_sum(P, Q, direct=True)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim != Q.dim:
        raise DimensionMismatch(
            f"Cannot add polytopes of dimensions {P.dim} and {Q.dim}."
        )
    return LatticePolytope(
        add(p, q) for p in P.generators for q in Q.generators
    )


def dilate(P: LatticePolytope, c: int) -> LatticePolytope:
    if c < 1:
        raise ValueError(f"Dilation factor has to be positive, got {c}.")
    if c == 1:
        return P
    return LatticePolytope(tuple(c * x for x in g) for g in P.generators)


def embed(P: LatticePolytope, m: int) -> LatticePolytope:
    if m <= P.dim:
        raise TargetTooSmall(
            f"Cannot embed dimension {P.dim} polytope into dimension {m}."
        )
    padding = (0,) * (m - P.dim)
    return LatticePolytope(
        (g + padding for g in P.generators),
        lambda: (p + padding for p in P.lattice_points),
    )


def apply_unimodular(P: LatticePolytope, t: UnimodularMap) -> LatticePolytope:
    if t.dim != P.dim:
        raise DimensionMismatch(
            f"Map acts on dimension {t.dim}, polytope has {P.dim}."
        )
    return LatticePolytope(
        (t(g) for g in P.generators),
        lambda: (t(p) for p in P.lattice_points),
    )


def translate(P: LatticePolytope, shift: Sequence[int]) -> LatticePolytope:
    return LatticePolytope(
        (add(g, shift) for g in P.generators),
        lambda: (add(p, shift) for p in P.lattice_points),
    )


def hull_of_points(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Polytope whose lattice points are exactly the given saturated set."""
    points = colex_sorted(points)
    return LatticePolytope(points, lambda: points)


def slice_at(P: LatticePolytope, axis: int, value: int) -> LatticePolytope:
    """Hull of the lattice points on ``x_axis = value``, axis dropped."""
    if not 0 <= axis < P.dim or P.dim < 2:
        raise DimensionMismatch(f"Cannot slice dimension {P.dim} along {axis}.")
    points = [
        p[:axis] + p[axis + 1 :] for p in P.lattice_points if p[axis] == value
    ]
    if not points:
        raise EmptyInput(f"No lattice points with x_{axis} = {value}.")
    return hull_of_points(points)


def is_subset(P: LatticePolytope, Q: LatticePolytope) -> bool:
    return P.dim == Q.dim and all(contains_point(Q, g) for g in P.generators)


def fits_in_box(P: LatticePolytope, q: int) -> bool:
    return all(0 <= c <= q - 2 for g in P.generators for c in g)


# segments and squares


class SegmentWitness(NamedTuple):
    base: Point
    direction: Vector
    length: int


class CorollaryWitness(NamedTuple):
    kind: str
    points: Tuple[Point, ...]


def longest_lattice_segment(P: LatticePolytope) -> SegmentWitness:
    """Longest run of equally spaced lattice points in P."""
    points = P.lattice_points
    best = SegmentWitness(points[0], (0,) * P.dim, 0)
    for i, a in enumerate(points):
        for b in points[i + 1 :]:
            length = content(sub(b, a))
            if length > best.length:
                best = SegmentWitness(a, primitive_part(sub(b, a)), length)
    return best


def find_segment2(P: LatticePolytope) -> Optional[CorollaryWitness]:
    """Three lattice points b, b+v, b+2v of P with v primitive."""
    points = P.lattice_points
    present = P.point_set
    for a in points:
        for b in points:
            v = sub(b, a)
            if a < b and is_primitive(v) and add(b, v) in present:
                return CorollaryWitness("segment", (a, b, add(b, v)))
    return None


def find_unit_square(P: LatticePolytope) -> Optional[CorollaryWitness]:
    """Lattice points b, b+v, b+w, b+v+w of P with {v, w} extendable."""
    points = P.lattice_points
    present = P.point_set
    for a in points:
        vectors = [sub(b, a) for b in points if b > a]
        for i, v in enumerate(vectors):
            for w in vectors[i + 1 :]:
                corner = add(add(a, v), w)
                if corner in present and is_primitive_extendable([v, w]):
                    witness = (a, add(a, v), add(a, w), corner)
                    return CorollaryWitness("square", witness)
    return None


def has_segment2_or_unit_square(
    P: LatticePolytope,
) -> Tuple[bool, Optional[CorollaryWitness]]:
    witness = find_segment2(P) or find_unit_square(P)
    return witness is not None, witness


# documents


class PolytopeDocument(BaseModel):
    dim: StrictInt
    vertices: conlist(conlist(StrictInt, min_items=1), min_items=1)
    name: Optional[str] = None

    class Config:
        extra = "forbid"

    @validator("dim")
    def dim_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("dim has to be positive")
        return v

    @validator("vertices")
    def vertices_match_dim(cls, v: List[List[int]], values) -> List[List[int]]:
        dim = values.get("dim")
        if dim is not None and any(len(vertex) != dim for vertex in v):
            raise ValueError("every vertex needs dim coordinates")
        return v


def load_polytope(text: str) -> LatticePolytope:
    try:
        document = PolytopeDocument.parse_raw(text)
    except ValidationError as e:
        raise InvalidPolytopeDocument("Invalid polytope document.") from e
    return LatticePolytope(document.vertices, name=document.name)


def dump_polytope(P: LatticePolytope) -> str:
    document = PolytopeDocument(
        dim=P.dim,
        vertices=[list(g) for g in P.generators],
        name=P.name,
    )
    return document.json(exclude_none=True)
