"""Hadamard matrix constructions and prime-density censuses."""

from .arith import (
    Method,
    PrimalityResult,
    Verdict,
    is_prime,
    jacobi,
    mult_order,
    pow_mod,
    totient,
)
from .census import (
    CensusParams,
    CensusReport,
    I_closed,
    I_quadrature,
    M_eps,
    N_eps,
    S_count,
    certified_H_lower,
    density_report,
    mangoldt,
    pi_count,
    property_p_census,
    psi,
    sigma,
    sum_S_squared,
)
from .construct import (
    ConstructionPlan,
    build_plan,
    hadamard_for,
    paley_I,
    paley_II,
    sylvester,
)
from .matrix import (
    PlusMinusMatrix,
    is_hadamard,
    kronecker,
    normalize,
    read_matrix,
    write_matrix,
)
from .solver import RieselCertificate, SearchResult, find_m, order_exponent, riesel_certificate

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
