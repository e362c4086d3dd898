"""Exhaustive minimum-weight search over the messages of a linear code.

Messages are enumerated up to scalars: the first nonzero coordinate (the
pivot) is fixed to 1. For each pivot the remaining coordinates split into
a head, enumerated one assignment at a time, and a tail whose codeword
contributions for all assignments are precomputed as one block. Every head
assignment then scans the block column chunk by column chunk, dropping
rows whose partial weight already exceeds the incumbent minimum.
"""

import logging
import multiprocessing as mp
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from typing import Iterable, List, Optional, Tuple

import numpy as np

from polycode.config import message_budget
from polycode.errors import BudgetExceeded
from polycode.ff import FieldTable, field_new

logger = logging.getLogger(__name__)

BLOCK_CELLS = 2**20
CHUNK_COLUMNS = 64
PARALLEL_THRESHOLD = 50_000

Candidate = Tuple[int, Tuple[int, ...]]


def search_size(q: int, k: int) -> int:
    """Number of nonzero messages up to scalar multiples."""
    return (q**k - 1) // (q - 1)


class Incumbent(ABC):
    @abstractmethod
    def get(self) -> int:
        pass

    @abstractmethod
    def offer(self, weight: int) -> None:
        pass


class LocalIncumbent(Incumbent):
    def __init__(self, value: int) -> None:
        self._value = value

    def get(self) -> int:
        return self._value

    def offer(self, weight: int) -> None:
        self._value = min(self._value, weight)


class SharedIncumbent(Incumbent):
    def __init__(self, value) -> None:
        self._value = value

    def get(self) -> int:
        return self._value.value

    def offer(self, weight: int) -> None:
        with self._value.get_lock():
            if weight < self._value.value:
                self._value.value = weight


@dataclass(frozen=True)
class Layout:
    k: int
    pivot: int
    tail: int

    @property
    def head(self) -> List[int]:
        return list(range(self.pivot + 1, self.k - self.tail))

    @property
    def tail_positions(self) -> List[int]:
        return list(range(self.k - self.tail, self.k))


@dataclass(frozen=True)
class SearchTask:
    pivot: int
    prefix: Tuple[int, ...]


def layout(q: int, k: int, n_columns: int, pivot: int) -> Layout:
    free = k - 1 - pivot
    tail = 0
    while tail < free and q ** (tail + 1) * n_columns <= BLOCK_CELLS:
        tail += 1
    return Layout(k, pivot, tail)


def plan_tasks(q: int, k: int, n_columns: int) -> List[SearchTask]:
    tasks = []
    for pivot in range(k):
        head = layout(q, k, n_columns, pivot).head
        split = 1 if head else 0
        for prefix in product(range(q), repeat=split):
            tasks.append(SearchTask(pivot, prefix))
    return tasks


def _scan(
    field: FieldTable, base: np.ndarray, block: np.ndarray, limit: int
) -> Optional[Tuple[int, int]]:
    alive = np.arange(block.shape[0])
    partial = np.zeros(block.shape[0], dtype=np.int64)
    for start in range(0, block.shape[1], CHUNK_COLUMNS):
        stop = start + CHUNK_COLUMNS
        words = field.add_arrays(base[None, start:stop], block[alive, start:stop])
        partial[alive] += np.count_nonzero(words, axis=1)
        alive = alive[partial[alive] <= limit]
        if alive.size == 0:
            return None
    weights = partial[alive]
    weight = int(weights.min())
    return weight, int(alive[weights == weight].min())


def run_task(
    task: SearchTask,
    rows: np.ndarray,
    field: FieldTable,
    incumbent: Incumbent,
) -> Optional[Candidate]:
    q = field.q
    k, n_columns = rows.shape
    plan = layout(q, k, n_columns, task.pivot)
    head, tail = plan.head, plan.tail_positions

    combos = np.array(
        list(product(range(q), repeat=plan.tail)), dtype=np.int64
    ).reshape(q**plan.tail, plan.tail)
    block = field.combine(combos, rows[tail])

    best: Optional[Candidate] = None
    free_head = len(head) - len(task.prefix)
    for rest in product(range(q), repeat=free_head):
        values = task.prefix + rest
        coefficients = np.array([[1, *values]], dtype=np.int64)
        base = field.combine(coefficients, rows[[task.pivot, *head]])[0]
        found = _scan(field, base, block, incumbent.get())
        if found is None:
            continue
        weight, index = found
        message = (0,) * task.pivot + (1,) + values + tuple(
            int(c) for c in combos[index]
        )
        if best is None or (weight, message) < best:
            best = (weight, message)
            incumbent.offer(weight)
    return best


_worker_state = {}


def _init_worker(value, rows: np.ndarray, q: int) -> None:
    _worker_state["incumbent"] = SharedIncumbent(value)
    _worker_state["rows"] = rows
    _worker_state["field"] = field_new(q)


def _run_pooled(task: SearchTask) -> Optional[Candidate]:
    return run_task(
        task,
        _worker_state["rows"],
        _worker_state["field"],
        _worker_state["incumbent"],
    )


def _reduce(candidates: Iterable[Optional[Candidate]]) -> Candidate:
    return min(c for c in candidates if c is not None)


def minimum_weight(
    rows: np.ndarray,
    field: FieldTable,
    budget: Optional[int] = None,
    workers: int = 1,
) -> Candidate:
    """Least (weight, message) over nonzero normalized messages.

    The result does not depend on ``workers``: ties are kept until the
    final reduction, which orders by weight and then by message.
    """
    rows = np.asarray(rows, dtype=np.int64)
    k, n_columns = rows.shape
    budget = message_budget(budget)
    required = search_size(field.q, k)
    if required > budget:
        raise BudgetExceeded(budget, required)

    tasks = plan_tasks(field.q, k, n_columns)
    if workers > 1 and required >= PARALLEL_THRESHOLD and len(tasks) > 1:
        value = mp.Value("q", n_columns)
        with mp.Pool(
            processes=workers,
            initializer=_init_worker,
            initargs=(value, rows, field.q),
        ) as pool:
            result = _reduce(pool.imap_unordered(_run_pooled, tasks))
    else:
        incumbent = LocalIncumbent(n_columns)
        result = _reduce(run_task(t, rows, field, incumbent) for t in tasks)

    logger.info(
        "search done q=%d k=%d d=%d messages=%d workers=%d",
        field.q,
        k,
        result[0],
        required,
        workers,
    )
    return result
