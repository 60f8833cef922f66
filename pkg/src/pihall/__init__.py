"""Deciding solvable Hall subgroups in finite simple groups.

Two independent components: an arithmetic rule engine over group descriptors
(``decide_solvable_hall``) that answers Yes/No/Unknown with a cited trace, and
a brute-force permutation-group oracle (``hall_search``) that certifies the
answer on concretely constructible groups.
"""

from .arith import Factorization, PrimeSet
from .catalog import (
    DescriptorError,
    Family,
    GroupDescriptor,
    UnsupportedFamilyError,
    borel_order,
    group_order,
    parse_descriptor,
    prime_spectrum,
)
from .constructions import (
    UnsupportedConstructionError,
    build_group,
    sylow_conjugates,
    sylow_subgroup,
)
from .criteria import (
    ConsistencyReport,
    CriteriaContradictionError,
    Decision,
    Verdict,
    combine_pairwise,
    consistency_check,
    decide_pair,
    decide_solvable_hall,
    sym_has_pair_hall,
)
from .oracle import (
    CertKind,
    EnumerationCapError,
    HallCertificate,
    InconclusiveError,
    Theorem1Report,
    Theorem1ViolationError,
    conjugacy_scan,
    hall_search,
    solvable_hall_exists,
    theorem1_check,
    verify_certificate,
)
from .permgrp import PermGroup, closure, format_cycles

__version__ = "0.1.0"

__all__ = [
    "CertKind",
    "ConsistencyReport",
    "CriteriaContradictionError",
    "Decision",
    "DescriptorError",
    "EnumerationCapError",
    "Factorization",
    "Family",
    "GroupDescriptor",
    "HallCertificate",
    "InconclusiveError",
    "PermGroup",
    "PrimeSet",
    "Theorem1Report",
    "Theorem1ViolationError",
    "UnsupportedConstructionError",
    "UnsupportedFamilyError",
    "Verdict",
    "borel_order",
    "build_group",
    "closure",
    "combine_pairwise",
    "conjugacy_scan",
    "consistency_check",
    "decide_pair",
    "decide_solvable_hall",
    "format_cycles",
    "group_order",
    "hall_search",
    "parse_descriptor",
    "prime_spectrum",
    "solvable_hall_exists",
    "sylow_conjugates",
    "sylow_subgroup",
    "sym_has_pair_hall",
    "theorem1_check",
    "verify_certificate",
    "__version__",
]
