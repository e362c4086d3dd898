from itertools import product

import numpy as np
import pytest

from polycode import search
from polycode.errors import BudgetExceeded
from polycode.expressions import Box, Join, Segment, Simplex
from polycode.ff import field_new
from polycode.search import minimum_weight, plan_tasks, search_size
from polycode.toric import generator_matrix


def brute_force(rows: np.ndarray, field) -> int:
    best = rows.shape[1]
    for message in product(range(field.q), repeat=rows.shape[0]):
        if any(message):
            word = field.combine(np.array([message]), rows)[0]
            best = min(best, int(np.count_nonzero(word)))
    return best


class TestMinimumWeight:
    @pytest.mark.parametrize(
        "e, q",
        [
            (Box((1, 1)), 4),
            (Simplex(2, 1), 5),
            (Segment(2), 7),
            (Box((2,)), 9),
        ],
        ids=str,
    )
    def test_minimum_weight_matches_brute_force(self, e, q: int) -> None:
        field = field_new(q)
        rows = generator_matrix(e, field).rows
        weight, _ = minimum_weight(rows, field)
        assert weight == brute_force(rows, field)

    def test_message_is_normalized(self) -> None:
        field = field_new(5)
        rows = generator_matrix(Box((1, 1)), field).rows
        _, message = minimum_weight(rows, field)
        first = next(c for c in message if c != 0)
        assert first == 1

    def test_small_tail_blocks_give_same_result(self, monkeypatch) -> None:
        field = field_new(5)
        rows = generator_matrix(Simplex(2, 2), field).rows
        expected = minimum_weight(rows, field)
        monkeypatch.setattr(search, "BLOCK_CELLS", 16)
        monkeypatch.setattr(search, "CHUNK_COLUMNS", 3)
        assert minimum_weight(rows, field) == expected

    def test_parallel_result_is_identical(self, monkeypatch) -> None:
        field = field_new(5)
        rows = generator_matrix(Join(Segment(2), Segment(2)), field).rows
        expected = minimum_weight(rows, field, workers=1)
        monkeypatch.setattr(search, "PARALLEL_THRESHOLD", 0)
        assert minimum_weight(rows, field, workers=2) == expected

    def test_budget_exceeded_reports_sizes(self) -> None:
        field = field_new(5)
        rows = generator_matrix(Box((1, 1)), field).rows
        with pytest.raises(BudgetExceeded) as info:
            minimum_weight(rows, field, budget=100)
        assert info.value.required == search_size(5, 4) == 156

    def test_budget_from_environment(self, monkeypatch) -> None:
        monkeypatch.setenv("POLYCODE_BUDGET", "100")
        field = field_new(5)
        rows = generator_matrix(Box((1, 1)), field).rows
        with pytest.raises(BudgetExceeded):
            minimum_weight(rows, field)


class TestPlan:
    def test_tasks_cover_every_pivot(self) -> None:
        tasks = plan_tasks(5, 4, 16)
        assert {task.pivot for task in tasks} == {0, 1, 2, 3}
