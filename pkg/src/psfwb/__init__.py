"""Exact workbench for weighted automata and copyless register machines.

Everything computes over the rationals with exact arithmetic.  The modules
split roughly into machine models (wa, ccra), sequence analysis (lrs, eps),
structural tests (ambiguity, psf), a hardness reduction (qbf), and plumbing
(exprtree, matrix, poly, scalars, formats, fixtures, cli).
"""

from .errors import (
    BudgetExceeded,
    CopylessViolation,
    CopyPoolExhausted,
    CycleOfLengthAtLeastTwo,
    FactorBoundExceeded,
    FormatError,
    InsufficientData,
    IrrationalRoots,
    PsfwbError,
    SquareDetected,
)
from .matrix import Permutation, RatMatrix
from .poly import UniPoly, rational_roots
from .exprtree import (
    Const,
    ExprTree,
    PolyMap,
    Prod,
    Sum,
    Var,
    compose_maps,
    is_copyless,
    is_copyless_tree,
    render_tree,
)
from .wa import (
    WeightedAutomaton,
    difference,
    equivalence,
    trim,
    zeroness,
)
from .ccra import (
    Ccra,
    classify_registers,
    compose_word,
    difference_ccra,
    equivalence_ccra,
    extract_generators,
    pump_modulus,
    to_weighted_automaton,
    zeroness_ccra,
)
from .lrs import Lrs, minimal_recurrence
from .eps import (
    ExpPoly,
    FpExpPoly,
    charp_sum_invariants,
    coeff_sum,
    coeff_sums_in_semiring,
    fp_coeff_sum,
    from_lrs,
    is_pointwise_representable_mod_p,
    minimal_degree_reduce,
)
from .ambiguity import (
    RootOfRational,
    TriangularizationResult,
    group_membership,
    is_polynomially_ambiguous,
    prime_support_report,
    psf_characteristic_roots,
    triangularize_power,
)
from .psf import (
    PsfElement,
    ccra_obstruction_report,
    example24_formula_check,
    pa_obstruction_report,
    psf_element_ccra,
    psf_element_wa,
    subsample,
)
from .qbf import Qbf, brute_force_qbf, decide_via_ccra, parse_and_normalize, qbf_to_ccra
from .formats import CcraFile, Report, dumps, load_path, loads, parse_expression, save_path
from .fixtures import FIXTURES, fixture_by_slug

__all__ = [name for name in dir() if not name.startswith("_")]
