from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product as cartesian
from math import comb, prod
from typing import Optional, Tuple

from polycode.errors import DimensionMismatch, TargetTooSmall
from polycode.lattice import (
    LatticePolytope,
    dilate,
    direct_sum,
    embed,
    fits_in_box,
    join,
    minkowski_sum,
    product,
)


class Hypothesis(str, Enum):
    """Status of the vertex hypothesis that the direct-sum formula needs."""

    ASSERTED = "asserted"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


class PolytopeExpr(ABC):
    @abstractmethod
    def build(self) -> LatticePolytope:
        pass

    @property
    @abstractmethod
    def dim(self) -> int:
        pass

    @abstractmethod
    def to_text(self) -> str:
        pass

    @cached_property
    def polytope(self) -> LatticePolytope:
        return self.build()

    @property
    def num_lattice_points(self) -> int:
        return self.polytope.num_lattice_points

    def children(self) -> Tuple["PolytopeExpr", ...]:
        return ()

    def fits_in_box(self, q: int) -> bool:
        return fits_in_box(self.polytope, q)

    def __str__(self) -> str:
        return self.to_text()


def _check_length(value: int, what: str) -> None:
    if value < 0:
        raise ValueError(f"{what} has to be non-negative, got {value}.")


@dataclass(frozen=True)
class Atom(PolytopeExpr):
    source: LatticePolytope
    reference: Optional[str] = None

    def build(self) -> LatticePolytope:
        return self.source

    @property
    def dim(self) -> int:
        return self.source.dim

    def to_text(self) -> str:
        if self.reference is not None:
            return f"atom(@{self.reference})"
        vertices = ",".join(
            "[" + ",".join(map(str, g)) + "]" for g in self.source.generators
        )
        return f"atom([{vertices}])"


@dataclass(frozen=True)
class Segment(PolytopeExpr):
    length: int

    def __post_init__(self) -> None:
        _check_length(self.length, "Segment length")

    def build(self) -> LatticePolytope:
        return LatticePolytope(
            [(0,), (self.length,)],
            lambda: ((i,) for i in range(self.length + 1)),
        )

    @property
    def dim(self) -> int:
        return 1

    @property
    def num_lattice_points(self) -> int:
        return self.length + 1

    def to_text(self) -> str:
        return f"seg({self.length})"


@dataclass(frozen=True)
class Box(PolytopeExpr):
    lengths: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.lengths:
            raise ValueError("Box needs at least one side.")
        for length in self.lengths:
            _check_length(length, "Box side")

    def build(self) -> LatticePolytope:
        return LatticePolytope(
            cartesian(*((0, length) for length in self.lengths)),
            lambda: cartesian(*(range(length + 1) for length in self.lengths)),
        )

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def num_lattice_points(self) -> int:
        return prod(length + 1 for length in self.lengths)

    def to_text(self) -> str:
        return f"box({','.join(map(str, self.lengths))})"


@dataclass(frozen=True)
class Simplex(PolytopeExpr):
    """The standard simplex of the given dimension dilated by ``length``."""

    dimension: int
    length: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("Simplex dimension has to be positive.")
        _check_length(self.length, "Simplex side")

    def build(self) -> LatticePolytope:
        n, length = self.dimension, self.length
        vertices = [(0,) * n] + [
            tuple(length * int(i == j) for j in range(n)) for i in range(n)
        ]
        return LatticePolytope(
            vertices,
            lambda: (
                x
                for x in cartesian(range(length + 1), repeat=n)
                if sum(x) <= length
            ),
        )

    @property
    def dim(self) -> int:
        return self.dimension

    @property
    def num_lattice_points(self) -> int:
        return comb(self.dimension + self.length, self.length)

    def to_text(self) -> str:
        return f"simplex({self.dimension},{self.length})"


@dataclass(frozen=True)
class Product(PolytopeExpr):
    left: PolytopeExpr
    right: PolytopeExpr

    def build(self) -> LatticePolytope:
        return product(self.left.polytope, self.right.polytope)

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    @property
    def num_lattice_points(self) -> int:
        return self.left.num_lattice_points * self.right.num_lattice_points

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return self.left, self.right

    def to_text(self) -> str:
        return f"prod({self.left.to_text()},{self.right.to_text()})"


@dataclass(frozen=True)
class Join(PolytopeExpr):
    left: PolytopeExpr
    right: PolytopeExpr

    def build(self) -> LatticePolytope:
        return join(self.left.polytope, self.right.polytope)

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim + 1

    @property
    def num_lattice_points(self) -> int:
        return self.left.num_lattice_points + self.right.num_lattice_points

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return self.left, self.right

    def to_text(self) -> str:
        return f"join({self.left.to_text()},{self.right.to_text()})"


def _simplex_like(e: PolytopeExpr) -> bool:
    if isinstance(e, (Segment, Simplex)):
        return True
    if isinstance(e, DirectSum):
        return _simplex_like(e.left) and _simplex_like(e.right)
    return False


@dataclass(frozen=True)
class DirectSum(PolytopeExpr):
    left: PolytopeExpr
    right: PolytopeExpr
    hypothesis: Optional[Hypothesis] = None

    def build(self) -> LatticePolytope:
        return direct_sum(self.left.polytope, self.right.polytope)

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return self.left, self.right

    def segment_summand(
        self,
    ) -> Optional[Tuple[PolytopeExpr, "Segment", int]]:
        """Returns (other summand, segment, segment axis) if there is one."""
        if isinstance(self.right, Segment):
            return self.left, self.right, self.dim - 1
        if isinstance(self.left, Segment):
            return self.right, self.left, 0
        return None

    @property
    def hypothesis_status(self) -> Hypothesis:
        if self.hypothesis is not None:
            return self.hypothesis
        summand = self.segment_summand()
        if summand is not None and _simplex_like(summand[0]):
            return Hypothesis.ASSERTED
        return Hypothesis.UNKNOWN

    def to_text(self) -> str:
        inner = f"{self.left.to_text()},{self.right.to_text()}"
        if self.hypothesis is not None:
            inner += f",{self.hypothesis.value}"
        return f"dsum({inner})"


@dataclass(frozen=True)
class Dilate(PolytopeExpr):
    child: PolytopeExpr
    factor: int

    def __post_init__(self) -> None:
        if self.factor < 1:
            raise ValueError("Dilation factor has to be positive.")

    def build(self) -> LatticePolytope:
        return dilate(self.child.polytope, self.factor)

    @property
    def dim(self) -> int:
        return self.child.dim

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return (self.child,)

    def rescaled(self) -> Optional[PolytopeExpr]:
        """The same polytope as a Segment, Box or Simplex node, if possible."""
        c, child = self.factor, self.child
        if isinstance(child, Dilate):
            inner = child.rescaled()
            return None if inner is None else Dilate(inner, c).rescaled()
        if isinstance(child, Segment):
            return Segment(c * child.length)
        if isinstance(child, Box):
            return Box(tuple(c * length for length in child.lengths))
        if isinstance(child, Simplex):
            return Simplex(child.dimension, c * child.length)
        return None

    @property
    def num_lattice_points(self) -> int:
        rescaled = self.rescaled()
        if rescaled is not None:
            return rescaled.num_lattice_points
        return self.polytope.num_lattice_points

    def to_text(self) -> str:
        return f"dilate({self.child.to_text()},{self.factor})"


@dataclass(frozen=True)
class Embed(PolytopeExpr):
    child: PolytopeExpr
    target: int

    def __post_init__(self) -> None:
        if self.target <= self.child.dim:
            raise TargetTooSmall(
                f"Cannot embed dimension {self.child.dim} "
                f"into dimension {self.target}."
            )

    def build(self) -> LatticePolytope:
        return embed(self.child.polytope, self.target)

    @property
    def dim(self) -> int:
        return self.target

    @property
    def num_lattice_points(self) -> int:
        return self.child.num_lattice_points

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return (self.child,)

    def to_text(self) -> str:
        return f"embed({self.child.to_text()},{self.target})"


@dataclass(frozen=True)
class MinkowskiSum(PolytopeExpr):
    left: PolytopeExpr
    right: PolytopeExpr

    def __post_init__(self) -> None:
        if self.left.dim != self.right.dim:
            raise DimensionMismatch(
                f"Cannot add polytopes of dimensions "
                f"{self.left.dim} and {self.right.dim}."
            )

    def build(self) -> LatticePolytope:
        return minkowski_sum(self.left.polytope, self.right.polytope)

    @property
    def dim(self) -> int:
        return self.left.dim

    def children(self) -> Tuple[PolytopeExpr, ...]:
        return self.left, self.right

    def to_text(self) -> str:
        return f"msum({self.left.to_text()},{self.right.to_text()})"


def eval_expr(e: PolytopeExpr) -> LatticePolytope:
    return e.polytope
