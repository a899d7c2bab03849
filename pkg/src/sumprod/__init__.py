"""Sum sets, product sets and sum-product bound verification over Z_m."""

from .estimates import (
    FieldBoundReport,
    MasterInequalityCheck,
    NonunitBound,
    RingBoundReport,
    RingExtremalExample,
    RingProofChecks,
    count_quadruples,
    count_quadruples_bruteforce,
    field_bound_report,
    field_constant_holds,
    master_inequality_check,
    master_inequality_holds,
    nonunit_bound_check,
    ring_bound_report,
    ring_constant_holds,
    ring_proof_checks,
    zm_extremal,
)
from .extremal import ExtremalConstruction, best_window, build_extremal, power_prefix
from .residues import (
    Modulus,
    NonInvertibleError,
    ResidueSet,
    dlog_table,
    find_generator,
    make_modulus,
    min_gcd,
    mod_inverse,
    residue_set,
    unit_part,
)
from .setops import (
    MultiplicityVector,
    additive_rep,
    dilate,
    indicator,
    productset,
    quotient_rep,
    sumset,
    sumset_fast,
    unit_quotient_rep,
)
from .spectra import (
    CauchySchwarzCheck,
    DivisorBoundRow,
    ParsevalCheck,
    SpectrumVector,
    cauchy_schwarz_check,
    dft_counts,
    divisor_bound_checks,
    max_nontrivial,
    parseval_bound_check,
    spectral_quadruple_count,
    spectrum_of_set,
)
from .sweeps import (
    CSV_HEADER,
    DuplicateResidueWarning,
    ExhaustiveSummary,
    SweepConfig,
    SweepRow,
    derive_seed,
    parse_set_file,
    run_exhaustive,
    run_sweep,
    splitmix64,
)

__version__ = "0.1.0"
