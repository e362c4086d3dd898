from polycode.decomp import (
    full_minkowski_length,
    hypercube_dimension,
    is_primitive_extendable,
)
from polycode.errors import (
    BudgetExceeded,
    CodeError,
    ExpressionSyntaxError,
    FieldError,
    GeometryError,
    InputError,
    InvalidExpression,
    NotAPrimePower,
    OutOfBox,
    PolycodeError,
)
from polycode.expressions import (
    Atom,
    Box,
    Dilate,
    DirectSum,
    Embed,
    Join,
    MinkowskiSum,
    PolytopeExpr,
    Product,
    Segment,
    Simplex,
    eval_expr,
)
from polycode.families import (
    FamilySpec,
    family_boxes,
    family_custom,
    family_self_join,
    family_simplices,
    verify_fixed_point,
)
from polycode.ff import FieldTable, field_new
from polycode.lattice import (
    LatticePolytope,
    UnimodularMap,
    contains_point,
    dump_polytope,
    lattice_points,
    load_polytope,
)
from polycode.models import CodeParams, Codeword, DecompResult, FamilyRow
from polycode.probe import ProbeSpec, conjecture_probe
from polycode.syntax import parse_expression, render
from polycode.toric import (
    compute_params,
    generator_matrix,
    max_zeros,
    min_distance_exhaustive,
    params_by_formula,
)
from polycode.types import JSON
