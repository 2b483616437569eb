"""Double sequencings of finite groups: constructions, searches, verifiers."""

from .groups import (
    Classification,
    FiniteGroup,
    GroupConstructionError,
    GroupSpec,
    SpecAtom,
    build_group,
    classify,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius21_group,
    parse_group_spec,
    primary_decomposition,
    quaternion_group,
    table_from_file,
)
from .sequences import (
    DSequenceCertificate,
    double_latin_square,
    is_directed_terrace,
    partial_products,
    quotient_sequence,
    terrace_to_d_sequence,
    verify_d_sequence,
    verify_double_latin_square,
    verify_r_sequencing,
    verify_sequencing,
    verify_terrace,
    verify_uniform_multiplicity,
)
from .perms import Permutation, XBDTriple, make_xbd, perp
from .search import (
    SearchResult,
    find_d_sequence,
    find_r_sequencing,
    find_sequencing,
    find_terrace,
    search_all,
)
from .constructions import (
    AlphaSequence,
    PAssignment,
    RChoice,
    SigmaPairing,
    alpha_property_failures,
    alpha_sequence,
    assign_p,
    boolean_cube,
    build_sigma_pairing,
    dseq_from_r_sequencing,
    dseq_from_sequencing,
    lift_by_odd_cyclic,
    lift_by_power_of_two,
    lift_even_sequenceable_by_z2,
    lift_even_sequenceable_by_z2k,
    lift_odd_sequenceable_by_z2k,
    project_terrace_to_dsequence,
)
from .pipeline import (
    BatchReport,
    ConstructionCertificate,
    GroupReport,
    RouteStep,
    abelian_dsequence,
    batch_check,
    construct_dsequence,
    invariant_factor_lists,
)
from .seqfile import SequenceFile
from .errors import BudgetExhausted, ConstructionFailure, InternalVerificationError

__version__ = "0.1.0"
