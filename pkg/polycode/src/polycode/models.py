from abc import ABC
from fractions import Fraction
from typing import List, Literal, Optional, Tuple

from humps import camelize
from pydantic import BaseModel as PydanticBaseModel, Field, validator

from polycode.errors import INEXACT_PARAMETERS_ERROR
from polycode.types import Point, Vector
from polycode.utils import format_fraction, fraction_to_json


class BaseModel(PydanticBaseModel, ABC):
    def json(self, *args, by_alias: bool = True, **kwargs) -> str:
        return super().json(*args, by_alias=by_alias, **kwargs)

    class Config:
        allow_population_by_field_name = True
        alias_generator = camelize
        arbitrary_types_allowed = True
        json_encoders = {Fraction: fraction_to_json}


class CodeParams(BaseModel):
    """Parameters of a toric code; ``d`` may only be known as an interval."""

    q: int
    n: int
    block_length: int
    k: int
    d_lo: int
    d_hi: int
    max_zeros_lo: int
    max_zeros_hi: int
    delta_lo: Fraction
    delta_hi: Fraction
    rate: Fraction
    method: str
    budget_exceeded: bool = False
    notes: List[str] = Field(default_factory=list)

    @classmethod
    def build(
        cls,
        q: int,
        n: int,
        k: int,
        d_lo: int,
        d_hi: Optional[int] = None,
        method: str = "exhaustive",
        budget_exceeded: bool = False,
        notes: Optional[List[str]] = None,
    ) -> "CodeParams":
        d_hi = d_lo if d_hi is None else d_hi
        block_length = (q - 1) ** n
        return cls(
            q=q,
            n=n,
            block_length=block_length,
            k=k,
            d_lo=d_lo,
            d_hi=d_hi,
            max_zeros_lo=block_length - d_hi,
            max_zeros_hi=block_length - d_lo,
            delta_lo=Fraction(d_lo, block_length),
            delta_hi=Fraction(d_hi, block_length),
            rate=Fraction(k, block_length),
            method=method,
            budget_exceeded=budget_exceeded,
            notes=notes or [],
        )

    @validator("d_hi")
    def interval_ordered(cls, v: int, values) -> int:
        if "d_lo" in values and v < values["d_lo"]:
            raise ValueError("d_hi has to be at least d_lo")
        return v

    @property
    def is_exact(self) -> bool:
        return self.d_lo == self.d_hi

    @property
    def d(self) -> int:
        if not self.is_exact:
            raise INEXACT_PARAMETERS_ERROR
        return self.d_lo

    @property
    def delta(self) -> Fraction:
        if not self.is_exact:
            raise INEXACT_PARAMETERS_ERROR
        return self.delta_lo

    @property
    def max_zeros(self) -> int:
        return self.block_length - self.d

    def summary(self) -> str:
        if self.is_exact:
            d = str(self.d_lo)
            delta = format_fraction(self.delta_lo)
            zeros = str(self.max_zeros_lo)
        else:
            d = f"[{self.d_lo},{self.d_hi}]"
            delta = (
                f"[{format_fraction(self.delta_lo)},"
                f"{format_fraction(self.delta_hi)}]"
            )
            zeros = f"[{self.max_zeros_lo},{self.max_zeros_hi}]"
        return (
            f"N={self.block_length} k={self.k} d={d} max_zeros={zeros} "
            f"delta={delta} rate={format_fraction(self.rate)} "
            f"method={self.method}"
        )


class Codeword(BaseModel):
    message: Tuple[int, ...]
    word: Tuple[int, ...]
    weight: int

    @validator("weight")
    def weight_matches_word(cls, v: int, values) -> int:
        word = values.get("word")
        if word is not None and v != sum(1 for x in word if x != 0):
            raise ValueError("weight has to count nonzero entries of word")
        return v


class DecompWitness(BaseModel):
    kind: Literal["zonotope", "hypercube"]
    base: Point
    vectors: List[Vector]

    @property
    def size(self) -> int:
        return len(self.vectors)


class DecompResult(BaseModel):
    value: int
    witness: DecompWitness
    budget_exceeded: bool = False
    nodes: int = 0
    verified: bool = False


class FamilyRow(BaseModel):
    i: int
    n: int
    k: int
    d_lo: int
    d_hi: int
    delta: Fraction
    rate: Fraction
    method: str
    rate_bound: Optional[Fraction] = None
    L: Optional[int] = None
    M: Optional[int] = None
    verified: Optional[bool] = None

    class Config:
        fields = {"L": {"alias": "L"}, "M": {"alias": "M"}}


class ProbeSample(BaseModel):
    index: int
    dim: int
    vertices: List[Point]
    k: int
    L: int
    L_exact: bool
    M: int
    M_exact: bool
    d_lo: int
    d_hi: int
    rate: Fraction
    delta_hi: Fraction
    length_bound: Optional[Fraction] = None
    hypercube_bound: Fraction
    box_experiment: Optional[bool] = None
    violations: List[str] = Field(default_factory=list)
    outlier: bool = False

    class Config:
        fields = {
            "L": {"alias": "L"},
            "M": {"alias": "M"},
            "L_exact": {"alias": "lExact"},
            "M_exact": {"alias": "mExact"},
        }


class ProbeReport(BaseModel):
    q: int
    seed: int
    kind: str
    samples: List[ProbeSample]

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if s.violations)

    @property
    def outliers(self) -> int:
        return sum(1 for s in self.samples if s.outlier)


class Check(BaseModel):
    example: str
    name: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


class ReproduceReport(BaseModel):
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class DecompReport(BaseModel):
    L: Optional[DecompResult] = None
    M: Optional[DecompResult] = None

    class Config:
        fields = {"L": {"alias": "L"}, "M": {"alias": "M"}}
