"""Exact computations around definite spin boundings of Brieskorn spheres:
plumbing graphs, blow-down calculus, lattice invariants, and bounded searches.
"""

from .errors import ConfigError, E8BoundsError, MoveError, ParseError, SeifertError
from .graph import (
    Configuration,
    StarGraph,
    branched_triangular,
    classify_shape,
    deserialize,
    gram_matrix,
    serialize,
    to_dot,
)
from .invariants import (
    InvariantReport,
    WuClass,
    consistency_checks,
    d_invariant,
    ds_feasibility,
    invariant_report,
    mu_bar,
    rokhlin_mu,
    wu_class,
)
from .lattice import (
    E8Certificate,
    IntegerSymmetricMatrix,
    determinant,
    is_even,
    is_negative_definite,
    is_unimodular,
    leading_principal_minors,
    recognize_negative_e8,
    signature,
)
from .moves import MoveStep, MoveTrace, blow_down, blow_up_corner, boundary_brieskorn, normalize_to_star
from .seifert import (
    BrieskornSpec,
    SeifertData,
    brieskorn_from_seifert,
    continuant,
    hj_expansion,
    is_minimal,
    minimal_resolution,
    read_seifert,
    resolution,
    seifert_from_brieskorn,
)
from .search import (
    FAMILIES,
    TABLE1_ROWS,
    TABLE2_ROWS,
    TABLE3_ROWS,
    DiophantineFamily,
    FamilySolution,
    classify_2221,
    classify_family1,
    classify_star_rank8_even,
    family_configuration,
    partition_parity_check,
    search_even_stars,
    solve_family,
    table1_generate,
    table2_match,
    table2_reproduce,
    table3_reproduce,
)

__version__ = "0.1.0"
