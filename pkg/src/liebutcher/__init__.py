"""Computer algebra for Lie-Butcher series on planar rooted forests.

Planar rooted trees carry a grafting product whose lift to ordered forests
yields two associative products, concatenation and Grossman-Larson; their
exponentials are the frozen-field Euler flow and the exact flow, and the
Magnus-type map chi translates between them.  Concrete realizations on
matrix splittings and on the unit sphere turn the symbolic calculus into
checkable numerics.
"""

from .lbseries import (
    FieldSeries,
    MethodCharacter,
    exact_flow_character,
    exp_concat,
    exp_gl,
    field_generator,
    first_defect,
    is_character,
    is_inf_character,
    lie_euler_character,
    lie_midpoint_character,
    lie_midpoint_field,
    log_gl,
    magnus_chi,
    order_of_agreement,
)
from .matrixpostlie import (
    ProjectionKind,
    check_matrix_postlie_axioms,
    check_projection_identity,
    eval_F,
    mat_triangleright,
    project_minus,
    project_plus,
)
from .postlie import (
    bracket,
    check_postlie_axioms,
    dbracket,
    gl_product,
    graft,
    triangleright,
)
from .series import Series, TruncationError, concat, deshuffle, pairing, shuffle, truncate
from .sphere import (
    convergence_order,
    convergence_study,
    hat,
    rigid_body_field,
    rot_exp,
    step_lie_euler,
    step_lie_midpoint,
)
from .trees import (
    DegreeCapError,
    Forest,
    ForestParseError,
    Tree,
    enumerate_forests,
    enumerate_trees,
    parse_forest,
    render_forest,
)

__version__ = "0.1.0"
