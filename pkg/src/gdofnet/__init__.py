"""Exact GDoF-region toolkit for K-cell cellular networks."""

from .errors import (
    CapabilityError,
    GdofError,
    InfeasiblePowerError,
    PreconditionError,
)
from .network import (
    NetworkSpec,
    RegimeLabel,
    check_sir_order,
    classify_regime,
    make_network,
    network_from_obj,
    network_to_obj,
    normalize_user_order,
    strongest_subnetwork,
    with_trivial_users,
)
from .cycles import Cycle, cycle_user_set, delta, delta_plus, enumerate_cycles
from .polyhedra import (
    LinSystem,
    LpResult,
    contains,
    equals,
    fm_eliminate,
    linsystem_from_obj,
    linsystem_to_obj,
    lp_max,
    minkowski_sum_membership,
    remove_redundant,
    vertices,
)
from .regions import (
    GdofTuple,
    homog_check,
    layered_region,
    mbc_outer_sum_gdof,
    mul_region,
    ptin_a_region,
    ptin_prime_region,
    ptin_region,
    sls_outer_region,
    tin_sum_gdof,
    two_cell_sls_achievable,
)
from .power import (
    PotentialGraph,
    PowerTuple,
    build_potential_graph,
    recover_powers,
    tin_feasible,
    verify_power_allocation,
)
from .polymatroid import (
    SetFunction,
    check_polymatroid,
    f_homog,
    f_mul,
    f_ptin_prime,
    polymatroid_sum,
    region_of,
)
from .extremal import (
    GainReport,
    gain_ratio,
    redundancy_check,
    search_extremal,
    verify_gain_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
