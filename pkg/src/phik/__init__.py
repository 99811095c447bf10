"""Exact arithmetic for a k-dimensional generalization of Euler's totient.

phi_k(n) counts k-tuples (a_1, ..., a_k) with 1 <= a_i <= n whose product
and whose sum are both coprime to n.  The package provides closed forms,
brute-force cross-checks, gcd-sum identities over coprime tuples, exact
partial sums, and rigorous enclosures of the average-order constant.
"""

from .core import (
    DEFAULT_ORACLE_BUDGET,
    BudgetExceededError,
    Factorization,
    MultiplicativeFunction,
    dirichlet_convolve,
    divisors,
    epsilon_mf,
    euler_phi,
    eval_mf,
    factorize,
    id_k_mf,
    id_mf,
    jordan_mf,
    jordan_totient,
    mobius,
    mobius_mf,
    mobius_transform,
    one_mf,
    phi_mf,
    piltz_mf,
    pointwise_eval,
    reduce_gcd,
    tau,
    tau_mf,
)
from .totients import (
    alternating_unit_sum,
    g_k,
    g_k_mf,
    phi_k,
    phi_k_mf,
    phi_k_nm,
    phi_k_nm_oracle,
    phi_k_nm_recursion,
    phi_k_oracle,
)
from .menon import (
    FunctionSpec,
    IdentityReport,
    Instance,
    count_units_in_class,
    count_units_in_two_classes,
    gcd_sum_lhs_oracle,
    gcd_sum_rhs,
    lemma_sweep,
    menon_expansion_rhs,
    n_k,
    n_k_oracle,
    n_k_recursion,
    n_k_sweep,
    nageswara_rao_lhs_oracle,
    parse_function_spec,
    units_mod,
    verify_identity,
    verify_sweep,
)
from .summatory import (
    DEFAULT_PRIME_BOUND,
    DEFAULT_SIEVE_LIMIT,
    Enclosure,
    ErrorRow,
    PartialSum,
    average_order_constant,
    error_table_csv,
    error_term_rows,
    faulhaber_sum,
    primes_up_to,
    sum_phi_k_convolution,
    sum_phi_k_direct,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "DEFAULT_ORACLE_BUDGET",
    "DEFAULT_PRIME_BOUND",
    "DEFAULT_SIEVE_LIMIT",
    "Enclosure",
    "ErrorRow",
    "Factorization",
    "FunctionSpec",
    "IdentityReport",
    "Instance",
    "MultiplicativeFunction",
    "PartialSum",
    "alternating_unit_sum",
    "average_order_constant",
    "count_units_in_class",
    "count_units_in_two_classes",
    "dirichlet_convolve",
    "divisors",
    "epsilon_mf",
    "error_table_csv",
    "error_term_rows",
    "euler_phi",
    "eval_mf",
    "factorize",
    "faulhaber_sum",
    "g_k",
    "g_k_mf",
    "gcd_sum_lhs_oracle",
    "gcd_sum_rhs",
    "id_k_mf",
    "id_mf",
    "jordan_mf",
    "jordan_totient",
    "lemma_sweep",
    "menon_expansion_rhs",
    "mobius",
    "mobius_mf",
    "mobius_transform",
    "n_k",
    "n_k_oracle",
    "n_k_recursion",
    "n_k_sweep",
    "nageswara_rao_lhs_oracle",
    "one_mf",
    "parse_function_spec",
    "phi_k",
    "phi_k_mf",
    "phi_k_nm",
    "phi_k_nm_oracle",
    "phi_k_nm_recursion",
    "phi_k_oracle",
    "phi_mf",
    "piltz_mf",
    "pointwise_eval",
    "primes_up_to",
    "reduce_gcd",
    "sum_phi_k_convolution",
    "sum_phi_k_direct",
    "tau",
    "tau_mf",
    "units_mod",
    "verify_identity",
    "verify_sweep",
]
