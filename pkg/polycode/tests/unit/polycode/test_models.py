import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from polycode.errors import InexactParameters
from polycode.models import (
    Check,
    CodeParams,
    Codeword,
    DecompReport,
    DecompResult,
    DecompWitness,
    FamilyRow,
)


class TestCodeParams:
    def test_build_derives_ratios(self) -> None:
        params = CodeParams.build(5, 2, 4, 9, method="box")
        assert params.block_length == 16
        assert params.max_zeros == 7
        assert params.delta == Fraction(9, 16)
        assert params.rate == Fraction(1, 4)

    def test_summary_exact(self) -> None:
        params = CodeParams.build(5, 2, 4, 9, method="box")
        assert params.summary() == (
            "N=16 k=4 d=9 max_zeros=7 delta=9/16 rate=1/4 method=box"
        )

    def test_summary_interval(self) -> None:
        params = CodeParams.build(5, 2, 4, 6, 9, method="bounds")
        assert "d=[6,9]" in params.summary()
        assert "max_zeros=[7,10]" in params.summary()

    def test_inexact_distance_raises(self) -> None:
        params = CodeParams.build(5, 2, 4, 6, 9, method="bounds")
        assert not params.is_exact
        with pytest.raises(InexactParameters):
            params.d

    def test_interval_has_to_be_ordered(self) -> None:
        with pytest.raises(ValidationError):
            CodeParams.build(5, 2, 4, 9, 6)

    def test_json_uses_camel_case_and_fraction_objects(self) -> None:
        params = CodeParams.build(5, 2, 4, 9, method="box")
        document = json.loads(params.json())
        assert document["blockLength"] == 16
        assert document["maxZerosLo"] == 7
        assert document["deltaLo"] == {"numerator": 9, "denominator": 16}
        assert document["budgetExceeded"] is False


class TestCodeword:
    def test_weight_counts_nonzero_entries(self) -> None:
        word = Codeword(message=(1, 0), word=(0, 2, 3), weight=2)
        assert word.weight == 2

    def test_wrong_weight_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            Codeword(message=(1, 0), word=(0, 2, 3), weight=3)


class TestDecompModels:
    def test_report_keeps_invariant_names(self) -> None:
        witness = DecompWitness(kind="zonotope", base=(0, 0), vectors=[(1, 0)])
        report = DecompReport(L=DecompResult(value=1, witness=witness))
        document = json.loads(report.json(exclude_none=True))
        assert set(document) == {"L"}
        assert document["L"]["witness"]["vectors"] == [[1, 0]]
        assert document["L"]["budgetExceeded"] is False

    def test_witness_size(self) -> None:
        witness = DecompWitness(kind="hypercube", base=(0,), vectors=[])
        assert witness.size == 0


class TestFamilyRow:
    def test_json_aliases(self) -> None:
        row = FamilyRow(
            i=1,
            n=1,
            k=2,
            d_lo=3,
            d_hi=3,
            delta=Fraction(3, 4),
            rate=Fraction(1, 2),
            method="box",
            L=1,
            M=1,
        )
        document = json.loads(row.json())
        assert document["L"] == document["M"] == 1
        assert document["dLo"] == 3
        assert document["rateBound"] is None


class TestCheck:
    def test_passed_compares_text(self) -> None:
        assert Check(example="x", name="d", expected="9", actual="9").passed
        assert not Check(example="x", name="d", expected="9", actual="8").passed
