"""Bernstein-Sato ideals for parametric families, with symbolic certificates.

Exact computation over Q of Bernstein-Sato polynomials and ideals,
generic Bernstein-Sato data over prime parameter loci, and finite
stratifications of parameter space, every claim accompanied by an
operator identity that re-verifies by direct action on f^s.
"""

from .annbs import (
    BernsteinPoly,
    BSIdeal,
    OpContext,
    ann_fs,
    bs_ideal,
    bs_poly,
    malgrange_ideal,
    rationality_report,
)
from .cli import JobSpec, generic_family, main, run_command
from .errors import (
    DecompositionUnsupported,
    DivisionByZeroModQ,
    EmptyAnsatz,
    FamilyVanishesModQ,
    GenbsError,
    HomogeneityViolation,
    MixedRingError,
    NonRationalCertificate,
    ParseError,
    PointOutsideStratum,
    TimeoutBudget,
    UnitIdealError,
    ZeroPolynomialError,
)
from .factor import Factorization, factor, squarefree_decomposition, squarefree_part
from .fsmodule import (
    AnsatzBounds,
    FsElement,
    act,
    ansatz_bs,
    check_congruence,
    check_identity,
    congruence_remainder,
)
from .groebner import buchberger, eliminate, ideal_dim, normal_form
from .instance import ProblemInstance, make_instance
from .orders import Block, GRevLex, Lex, TermOrder, Weighted
from .parametric import (
    GenericBS,
    ResidueField,
    generic_bs,
    op_scale_clear,
    rationalize,
    residue_context,
    specialize_check,
)
from .parser import parse_op, parse_poly
from .poly import Poly, PolyRing, QQ
from .primes import PrimeIdealQ, minimal_primes, the_zero_prime
from .stratify import (
    LocallyClosedSet,
    Region,
    Stratification,
    Stratum,
    refine_partition,
    sample_point,
    stratify,
)
from .variables import VarRegistry
from .weyl import WeylOp, WeylRing, commutator
from .weyl_groebner import (
    GBBudget,
    LeftIdealW,
    left_buchberger,
    left_normal_form,
    weight_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzBounds",
    "BernsteinPoly",
    "Block",
    "BSIdeal",
    "DecompositionUnsupported",
    "DivisionByZeroModQ",
    "EmptyAnsatz",
    "Factorization",
    "FamilyVanishesModQ",
    "FsElement",
    "GBBudget",
    "GenbsError",
    "GenericBS",
    "GRevLex",
    "HomogeneityViolation",
    "JobSpec",
    "LeftIdealW",
    "Lex",
    "LocallyClosedSet",
    "MixedRingError",
    "NonRationalCertificate",
    "OpContext",
    "ParseError",
    "PointOutsideStratum",
    "Poly",
    "PolyRing",
    "PrimeIdealQ",
    "ProblemInstance",
    "QQ",
    "Region",
    "ResidueField",
    "Stratification",
    "Stratum",
    "TermOrder",
    "TimeoutBudget",
    "UnitIdealError",
    "VarRegistry",
    "Weighted",
    "WeylOp",
    "WeylRing",
    "ZeroPolynomialError",
    "act",
    "ann_fs",
    "ansatz_bs",
    "bs_ideal",
    "bs_poly",
    "buchberger",
    "check_congruence",
    "check_identity",
    "commutator",
    "congruence_remainder",
    "eliminate",
    "factor",
    "generic_bs",
    "generic_family",
    "ideal_dim",
    "left_buchberger",
    "left_normal_form",
    "main",
    "make_instance",
    "malgrange_ideal",
    "minimal_primes",
    "normal_form",
    "op_scale_clear",
    "parse_op",
    "parse_poly",
    "rationality_report",
    "rationalize",
    "refine_partition",
    "residue_context",
    "run_command",
    "sample_point",
    "specialize_check",
    "squarefree_decomposition",
    "squarefree_part",
    "stratify",
    "the_zero_prime",
    "weight_vector",
]
