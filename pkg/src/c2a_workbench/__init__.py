"""Classical 2-absorbing submodules over finite products of Z_n, checked exhaustively."""

from .classify import (
    classify_all,
    classify_submodule,
    evaluate_main2_conditions,
    evaluate_main_conditions,
    is_2_absorbing_submodule,
    is_c2a_m_closed,
    is_classical_2_absorbing,
    is_classical_prime,
    is_n_absorbing_submodule,
    is_prime_submodule,
    maximal_disjoint_submodules,
    minimal_classical_2_absorbing,
    replay,
)
from .errors import WorkbenchError
from .harness import InstanceFamily, SuiteReport, generate_instances, run_suite, search_separating
from .module import (
    Module,
    QuotientModule,
    Submodule,
    enumerate_submodules,
    hom,
    localize,
    parse_module_spec,
    quotient_module,
    submodule_generated,
)
from .ring import Ideal, Ring, enumerate_ideals, ideal_generated, parse_ring_spec

__version__ = "0.1.0"
