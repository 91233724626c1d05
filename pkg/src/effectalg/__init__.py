"""Finite effect-algebra workbench.

Build simplicial boxes and finite sum tables, classify the additive maps
between them as subunital integer matrices, check binary operations against
the axiom ladder S1..S5, and run exhaustive pruned searches over the
operations satisfying a given prefix.
"""

from .algebra import (
    AtomRecord,
    Elem,
    FiniteEffectAlgebra,
    Shape,
    SimplicialAlgebra,
    TableAlgebra,
    ValidationReport,
    algebra_from_json,
    algebra_to_json,
    atoms,
    has_obstruction_atom,
    isotropic_index,
    leq,
    load_algebra,
    make_simplicial,
    oplus,
    orthosupplement,
    unique_atom_chain,
    validate_table_algebra,
)
from .errors import CapExceeded, InvalidTableAlgebra, NodeBudgetExceeded
from .fixtures import FIXTURE_NAMES, chain_table, fixture_path, load_fixture, mo2
from .maps import (
    NotAdditive,
    SubunitalMatrix,
    additive_maps_bruteforce,
    apply_matrix,
    count_subunital,
    enumerate_subunital,
    is_coordinate_picker,
    is_subunital,
    matrix_from_json,
    matrix_of_map,
)
from .operations import (
    AxiomReport,
    NotS1,
    Operation,
    check_axioms,
    commutes,
    from_full_table,
    meet_boolean,
    op_from_json,
    replay_witness,
    right_unit_holds,
    sigma_universal,
    tau_perm,
    to_full_table,
)
from .search import (
    B2Classification,
    ChainReport,
    S4Existence,
    SearchResult,
    chain_report,
    classify_b2,
    count_s1s2,
    enumerate_s1,
    enumerate_s1s2,
    enumerate_s1sk,
    exists_s1s4,
    full_bruteforce_ops,
)
from .verify import SuiteReport, SuiteRow, run_suite

__version__ = "0.1.0"

__all__ = [
    "AtomRecord",
    "AxiomReport",
    "B2Classification",
    "CapExceeded",
    "ChainReport",
    "Elem",
    "FIXTURE_NAMES",
    "FiniteEffectAlgebra",
    "InvalidTableAlgebra",
    "NodeBudgetExceeded",
    "NotAdditive",
    "NotS1",
    "Operation",
    "S4Existence",
    "SearchResult",
    "Shape",
    "SimplicialAlgebra",
    "SubunitalMatrix",
    "SuiteReport",
    "SuiteRow",
    "TableAlgebra",
    "ValidationReport",
    "additive_maps_bruteforce",
    "algebra_from_json",
    "algebra_to_json",
    "apply_matrix",
    "atoms",
    "chain_report",
    "chain_table",
    "check_axioms",
    "classify_b2",
    "commutes",
    "count_s1s2",
    "count_subunital",
    "enumerate_s1",
    "enumerate_s1s2",
    "enumerate_s1sk",
    "enumerate_subunital",
    "exists_s1s4",
    "fixture_path",
    "from_full_table",
    "full_bruteforce_ops",
    "has_obstruction_atom",
    "is_coordinate_picker",
    "is_subunital",
    "isotropic_index",
    "leq",
    "load_algebra",
    "load_fixture",
    "make_simplicial",
    "matrix_from_json",
    "matrix_of_map",
    "meet_boolean",
    "mo2",
    "op_from_json",
    "oplus",
    "orthosupplement",
    "replay_witness",
    "right_unit_holds",
    "run_suite",
    "sigma_universal",
    "tau_perm",
    "to_full_table",
    "unique_atom_chain",
    "validate_table_algebra",
]
