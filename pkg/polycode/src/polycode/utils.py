from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence, Tuple

from sympy import Matrix

from polycode.errors import MixedDimensions, TooManyVectors
from polycode.types import JSON, Point, Vector


def colex_key(point: Sequence[int]) -> Tuple[int, ...]:
    """Sort key with the last coordinate most significant."""
    return tuple(reversed(point))


def colex_sorted(points: Iterable[Sequence[int]]) -> Tuple[Point, ...]:
    return tuple(sorted({tuple(p) for p in points}, key=colex_key))


def content(vector: Sequence[int]) -> int:
    return reduce(gcd, (abs(c) for c in vector), 0)


def is_primitive(vector: Sequence[int]) -> bool:
    return content(vector) == 1


def primitive_part(vector: Sequence[int]) -> Vector:
    g = content(vector)
    if g == 0:
        raise ValueError("Zero vector has no primitive part.")
    return tuple(c // g for c in vector)


def lex_positive(vector: Sequence[int]) -> Vector:
    """Returns vector or its negation, whichever has a positive leading entry."""
    for c in vector:
        if c != 0:
            return tuple(vector) if c > 0 else tuple(-x for x in vector)
    return tuple(vector)


def add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Sequence[int], c: int) -> Point:
    return tuple(c * x for x in a)


@lru_cache(maxsize=65536)
def _extendable(vectors: Tuple[Vector, ...]) -> bool:
    count, dim = len(vectors), len(vectors[0])
    if count == 1:
        return is_primitive(vectors[0])
    matrix = Matrix(vectors)
    minors = (
        int(matrix.extract(list(range(count)), list(columns)).det())
        for columns in combinations(range(dim), count)
    )
    g = 0
    for minor in minors:
        g = gcd(g, abs(minor))
        if g == 1:
            return True
    return False


def is_primitive_extendable(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors can be completed to a basis of Z^n.

    Equivalent to all Smith invariants of the stacked matrix being 1,
    which holds iff the gcd of its maximal minors is 1.
    """
    vectors = tuple(tuple(int(c) for c in v) for v in vectors)
    if not vectors:
        return True
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise MixedDimensions("Vectors have different dimensions.")
    (dim,) = dims
    if len(vectors) > dim:
        raise TooManyVectors(
            f"Got {len(vectors)} vectors in dimension {dim}."
        )
    return _extendable(vectors)


def fraction_to_json(value: Fraction) -> JSON:
    return {"numerator": value.numerator, "denominator": value.denominator}


def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)
