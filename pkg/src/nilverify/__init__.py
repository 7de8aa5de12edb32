"""Exact verification of nilmanifold cohomology, cyclic group actions and Lefschetz certificates."""

from .ce_complex import AlgebraSpec, betti_numbers, cohomology, differential, exactness_witness, verify_flatness
from .config import ManifoldConfig, load_config, parse_config
from .equivariance import ActionSpec, act, invariant_betti_numbers, invariant_cohomology, verify_equivariance
from .errors import ConfigError, DomainError, NilverifyError, PreconditionError
from .exterior import Form, GeneratorSet, conj_form, parse_form, wedge
from .fixed_locus import HeisenbergAction, HeisPoint, Lattice, group_mul, orbit_decomposition, singular_locus_report
from .geometry import (
    check_integrability,
    check_symplectic,
    lefschetz_report,
    universal_kernel_certificate,
    universal_kernel_search,
)
from .scalar import CycloScalar, CyclotomicField, sign_of_real

__version__ = "0.1.0"

__all__ = [
    "ActionSpec",
    "AlgebraSpec",
    "ConfigError",
    "CycloScalar",
    "CyclotomicField",
    "DomainError",
    "Form",
    "GeneratorSet",
    "HeisPoint",
    "HeisenbergAction",
    "Lattice",
    "ManifoldConfig",
    "NilverifyError",
    "PreconditionError",
    "act",
    "betti_numbers",
    "check_integrability",
    "check_symplectic",
    "cohomology",
    "conj_form",
    "differential",
    "exactness_witness",
    "group_mul",
    "invariant_betti_numbers",
    "invariant_cohomology",
    "lefschetz_report",
    "load_config",
    "orbit_decomposition",
    "parse_config",
    "parse_form",
    "sign_of_real",
    "singular_locus_report",
    "universal_kernel_certificate",
    "universal_kernel_search",
    "verify_equivariance",
    "verify_flatness",
    "wedge",
]
