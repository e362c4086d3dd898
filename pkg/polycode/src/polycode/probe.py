"""Randomized sampling of polytopes against the proven rate and distance bounds.

Each sample records (L, M, k, R, delta) and is checked against bounds that
must hold; a failed check points at a bug, not at a counterexample. Samples
with a high rate and a small full Minkowski length are reported separately
as outliers.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import List, Literal, Optional

import numpy as np
from pydantic import PositiveInt, conlist

from polycode.decomp import (
    box_bound_experiment,
    full_minkowski_length,
    hypercube_dimension,
)
from polycode.expressions import Atom
from polycode.ff import FieldTable, field_new
from polycode.lattice import LatticePolytope
from polycode.models import BaseModel, ProbeReport, ProbeSample
from polycode.toric import hypercube_delta, params_by_formula

logger = logging.getLogger(__name__)


class ProbeSpec(BaseModel):
    q: int = 5
    samples: PositiveInt = 100
    dims: conlist(PositiveInt, min_items=1) = [2, 3]
    seed: int = 0
    kind: Literal["vertices", "simplex-sums"] = "vertices"
    budget: Optional[PositiveInt] = 10**6
    node_budget: Optional[PositiveInt] = 10**5
    rate_threshold: Fraction = Fraction(1, 2)
    length_threshold: int = 1
    workers: PositiveInt = 1


def random_vertices(
    rng: np.random.Generator, dim: int, q: int
) -> LatticePolytope:
    count = int(rng.integers(2, 7))
    vertices = rng.integers(0, q - 1, size=(count, dim))
    return LatticePolytope(vertices.tolist())


def random_simplex_sum(
    rng: np.random.Generator, dim: int, q: int
) -> LatticePolytope:
    """Minkowski sum of unit simplices on random coordinate subsets."""
    summands = []
    for _ in range(int(rng.integers(1, min(q - 2, 3) + 1))):
        axes = [j for j in range(dim) if rng.random() < 0.5] or [
            int(rng.integers(0, dim))
        ]
        vertices = [(0,) * dim] + [
            tuple(int(j == axis) for j in range(dim)) for axis in axes
        ]
        summands.append(vertices)
    sums = {
        tuple(map(sum, zip(*choice))) for choice in product(*summands)
    }
    return LatticePolytope(sums)


GENERATORS = {
    "vertices": random_vertices,
    "simplex-sums": random_simplex_sum,
}


def probe_sample(
    spec: ProbeSpec, index: int, field: FieldTable
) -> ProbeSample:
    rng = np.random.default_rng([spec.seed, index])
    dim = spec.dims[index % len(spec.dims)]
    P = GENERATORS[spec.kind](rng, dim, spec.q)
    q1 = spec.q - 1

    L = full_minkowski_length(P, spec.node_budget)
    M = hypercube_dimension(P, spec.node_budget)
    params = params_by_formula(Atom(P), field, spec.budget, spec.workers)
    L_exact, M_exact = not L.budget_exceeded, not M.budget_exceeded

    violations = []
    length_bound = None
    if L_exact:
        length_bound = Fraction((L.value + 1) ** dim, q1**dim)
        if params.k > (L.value + 1) ** dim:
            violations.append("k exceeds (L+1)^n")
        if spec.kind == "simplex-sums" and params.k > (dim + 1) ** L.value:
            violations.append("k exceeds (n+1)^L")
    hypercube_bound = hypercube_delta(M.value, spec.q)
    if params.delta_lo > hypercube_bound:
        violations.append("delta exceeds ((q-2)/(q-1))^M")
    if L_exact and M.value > L.value:
        violations.append("M exceeds L")
    if not (L.verified and M.verified):
        violations.append("decomposition witness failed verification")
    if violations:
        logger.error("sample %d %s: %s", index, P, "; ".join(violations))

    return ProbeSample(
        index=index,
        dim=dim,
        vertices=list(P.generators),
        k=params.k,
        L=L.value,
        L_exact=L_exact,
        M=M.value,
        M_exact=M_exact,
        d_lo=params.d_lo,
        d_hi=params.d_hi,
        rate=params.rate,
        delta_hi=params.delta_hi,
        length_bound=length_bound,
        hypercube_bound=hypercube_bound,
        box_experiment=(
            box_bound_experiment(L.value, M.value, spec.q)
            if L_exact and M_exact
            else None
        ),
        violations=violations,
        outlier=params.rate >= spec.rate_threshold
        and L.value <= spec.length_threshold,
    )


def conjecture_probe(spec: ProbeSpec) -> ProbeReport:
    field = field_new(spec.q)
    samples: List[ProbeSample] = [
        probe_sample(spec, index, field) for index in range(spec.samples)
    ]
    report = ProbeReport(q=spec.q, seed=spec.seed, kind=spec.kind, samples=samples)
    logger.info(
        "probe q=%d samples=%d violations=%d outliers=%d",
        spec.q,
        spec.samples,
        report.violations,
        report.outliers,
    )
    return report
