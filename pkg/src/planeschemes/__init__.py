"""Association schemes of Galois affine planes of prime order.

Build the scheme of AG(2,p), enumerate and classify all of its fusions,
decide schurity computationally, and verify the structural laws at desk
scale.
"""

from .affine import (
    FusionRecord,
    SlopePartition,
    bell_number,
    build_affine_scheme,
    fuse,
    identity_partition,
    lambda_criteria,
    one_block_partition,
    partition_from_group,
    partitions_iter,
)
from .autsearch import AutGroup, automorphism_group, is_schurian, orbitals, refine
from .classify import (
    ClassificationResult,
    classify,
    classify_all,
    find_involutive_presentation,
    match_pgl_subgroup,
    verify_witness,
)
from .errors import (
    BudgetExceeded,
    ClosureBudgetExceeded,
    InconsistentIntersection,
    NonCanonicalPartition,
    NotAlgebraic,
    NotStarClosed,
    PlaneSchemesError,
    RankTooLarge,
    SingularMatrix,
    UnclassifiableSchurian,
    UnsupportedPrime,
    ZeroInverse,
)
from .permgroup import (
    OrbitData,
    PermGroup,
    StabilizerChain,
    group_closure,
    group_order,
    orbit_data,
    orbits,
)
from .projline import (
    PglElement,
    fp_inv,
    moebius_apply,
    pgl_canonical,
    pgl_elements,
    pgl_identity,
    pgl_inv,
    pgl_mul,
    point_permutation,
    slope_permutation,
)
from .report import (
    AutCache,
    ReportRecord,
    read_csv_report,
    report_digest,
    report_json_bytes,
    run_sweep,
    write_csv_report,
    write_json_report,
)
from .scheme import (
    AlgebraicFusionResult,
    ParabolicSet,
    RelationStats,
    Scheme,
    algebraic_automorphisms,
    algebraic_fusion,
    is_algebraic_map,
    is_primitive,
    is_pseudocyclic,
    is_subtensor,
    parabolic_classes,
    parabolics,
    quotient,
    relation_stats,
    restriction,
    scheme_digest,
    scheme_from_bytes,
    scheme_to_bytes,
    tensor_product,
    trivial_scheme,
    verify_scheme,
    wreath_product,
)
from .subgroups import (
    PglSubgroup,
    SubgroupSpec,
    exceptional_subgroups,
    find_subgroup,
    parse_spec,
    subgroup_lattice,
)
from .verifypaper import run_checks

__version__ = "0.1.0"
