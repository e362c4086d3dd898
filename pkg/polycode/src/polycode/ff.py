"""Finite fields with a pinned element encoding.

Elements are carried as integer indices ``0..q-1``. Index ``0`` is the
additive identity and index ``1`` is the multiplicative identity. For a
prime field the index is the residue itself. For ``q = p^e`` with ``e >= 2``
the index is the base-``p`` encoding of the coefficient vector of a
polynomial of degree below ``e`` (the coefficient of ``x^i`` is the ``i``-th
base-``p`` digit), reduced modulo the least monic irreducible polynomial
of degree ``e`` (coefficients compared lowest degree first).
"""

import logging
from functools import lru_cache
from itertools import product
from typing import List, Optional, Tuple

import galois
import numpy as np
from sympy import factorint, primefactors

from polycode.errors import (
    DIVISION_BY_ZERO_ERROR,
    FieldTooLarge,
    FieldTooSmall,
    NotAPrimePower,
)

logger = logging.getLogger(__name__)

MAX_ORDER = 2**16
MAX_TABLE_ORDER = 256
ZERO = 0
ONE = 1


class FieldTable:
    def __init__(
        self,
        q: int,
        p: int,
        e: int,
        modulus: Optional[Tuple[int, ...]],
        galois_field: type,
    ) -> None:
        self.q = q
        self.p = p
        self.e = e
        self.modulus = modulus
        self.galois_field = galois_field
        self.add_table, self.mul_table = self._tables()
        self.primitive = self._find_primitive()
        self.exp, self.log = self._powers()

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    @property
    def elements(self) -> List[int]:
        return list(range(self.q))

    def _tables(self) -> Tuple[Optional[np.ndarray], Optional[np.ndarray]]:
        if self.is_prime or self.q > MAX_TABLE_ORDER:
            return None, None
        x = self.galois_field(np.arange(self.q))
        add_table = np.asarray(x[:, None] + x[None, :], dtype=np.int64)
        mul_table = np.asarray(x[:, None] * x[None, :], dtype=np.int64)
        return add_table, mul_table

    def _find_primitive(self) -> int:
        exponents = [(self.q - 1) // r for r in primefactors(self.q - 1)]
        for g in range(2, self.q):
            if all(self._raw_pow(g, k) != ONE for k in exponents):
                return g
        raise AssertionError(f"No primitive element found for q={self.q}.")

    def _raw_pow(self, a: int, k: int) -> int:
        if self.is_prime:
            return pow(a, k, self.q)
        return int(self.galois_field(a) ** k)

    def _powers(self) -> Tuple[np.ndarray, np.ndarray]:
        exp = np.zeros(self.q - 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = ONE
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, self.primitive)
        return exp, log

    def _raw_mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.q
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        return int(self.galois_field(a) * self.galois_field(b))

    def nonzero_elements(self) -> List[int]:
        return list(range(1, self.q))

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.q
        if self.add_table is not None:
            return int(self.add_table[a, b])
        return int(self.galois_field(a) + self.galois_field(b))

    def neg(self, a: int) -> int:
        if self.is_prime:
            return -a % self.q
        return int(-self.galois_field(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise DIVISION_BY_ZERO_ERROR
        return int(self.exp[-self.log[a] % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == ZERO:
            if k < 0:
                raise DIVISION_BY_ZERO_ERROR
            return ONE if k == 0 else ZERO
        return int(self.exp[self.log[a] * k % (self.q - 1)])

    # vectorised arithmetic over index arrays

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return (a + b) % self.q
        if self.add_table is not None:
            return self.add_table[a, b]
        return np.asarray(self.galois_field(a) + self.galois_field(b))

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return a * b % self.q
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return np.asarray(self.galois_field(a) * self.galois_field(b))

    def combine(self, coefficients: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """Matrix product ``coefficients @ rows`` over the field."""
        coefficients = np.asarray(coefficients, dtype=np.int64)
        rows = np.asarray(rows, dtype=np.int64)
        if coefficients.shape[1] == 0:
            return np.zeros((coefficients.shape[0], rows.shape[1]), np.int64)
        if self.is_prime:
            return coefficients @ rows % self.q
        if self.mul_table is not None:
            acc = self.mul_table[coefficients[:, :1], rows[None, 0]]
            for i in range(1, rows.shape[0]):
                term = self.mul_table[coefficients[:, i : i + 1], rows[None, i]]
                acc = self.add_table[acc, term]
            return acc
        product_ = self.galois_field(coefficients) @ self.galois_field(rows)
        return np.asarray(product_, dtype=np.int64)

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q})"


def characteristic(q: int) -> Tuple[int, int]:
    factors = factorint(q)
    if len(factors) != 1:
        raise NotAPrimePower(q)
    ((p, e),) = factors.items()
    return int(p), int(e)


def least_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """Least monic irreducible polynomial of degree e over F_p.

    Returned as coefficients lowest degree first, leading 1 included.
    """
    prime_field = galois.GF(p)
    for low_first in product(range(p), repeat=e):
        if low_first[0] == 0:
            continue
        coefficients = (*low_first, 1)
        poly = galois.Poly(list(reversed(coefficients)), field=prime_field)
        if poly.is_irreducible():
            return coefficients
    raise AssertionError(f"No irreducible polynomial of degree {e} over F_{p}.")


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldTable:
    if q < 3:
        raise FieldTooSmall(q)
    if q > MAX_ORDER:
        raise FieldTooLarge(q)
    p, e = characteristic(q)
    if e == 1:
        field = FieldTable(q, p, e, None, galois.GF(q))
    else:
        modulus = least_irreducible(p, e)
        poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
        field = FieldTable(q, p, e, modulus, galois.GF(q, irreducible_poly=poly))
    logger.debug(
        "field built q=%d p=%d e=%d primitive=%d", q, p, e, field.primitive
    )
    return field
