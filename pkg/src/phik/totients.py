"""The k-dimensional totient phi_k, its two-parameter refinement, and g_k.

phi_k(n) counts tuples (a_1, ..., a_k), 1 <= a_i <= n, with
gcd(a_1 * ... * a_k, n) = 1 and gcd(a_1 + ... + a_k, n) = 1.

phi_k(n, m) relaxes the sum condition to gcd(a_1 + ... + a_k, m) = 1 for a
divisor m of n.  g_k is the multiplicative function with phi_k = id_k * g_k
(Dirichlet convolution); it is supported on squarefree numbers and drives
the partial-sum machinery in `summatory`.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import product
from math import gcd, prod

from .core import (
    DEFAULT_ORACLE_BUDGET,
    BudgetExceededError,
    MultiplicativeFunction,
    divisors,
    euler_phi,
    eval_mf,
    factorize,
    mobius,
)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"tuple length k must be a positive integer, got {k}")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"modulus n must be a positive integer, got {n}")


def _check_budget(cost: int, budget: int, what: str) -> None:
    if cost > budget:
        raise BudgetExceededError(
            f"{what} would visit {cost} tuples, over the budget of {budget}; "
            f"raise the budget explicitly to force the computation"
        )


def _phi_k_prime_power(k: int, p: int, e: int) -> int:
    # (p-1)**k == (-1)**k (mod p), so the division by p is exact.
    sign = -1 if k % 2 else 1
    q, r = divmod((p - 1) * ((p - 1) ** k - sign), p)
    assert r == 0
    return p ** ((e - 1) * k) * q


def phi_k_mf(k: int) -> MultiplicativeFunction:
    """phi_k as a registered multiplicative function."""
    _check_k(k)
    return MultiplicativeFunction(f"phi_{k}", lambda p, e: _phi_k_prime_power(k, p, e))


def phi_k(k: int, n: int) -> int:
    """Closed form for phi_k(n).  Zero exactly when k and n are both even."""
    _check_k(k)
    _check_n(n)
    if k == 1:
        return euler_phi(n)
    val = 1
    for p, e in factorize(n).factors:
        val *= _phi_k_prime_power(k, p, e)
        if val == 0:
            return 0
    return val


def phi_k_oracle(k: int, n: int, budget: int = DEFAULT_ORACLE_BUDGET) -> int:
    """Count phi_k(n) by enumerating all n**k tuples.  Independent of phi_k."""
    _check_k(k)
    _check_n(n)
    _check_budget(n**k, budget, f"phi_{k}({n}) oracle")
    count = 0
    for tup in product(range(1, n + 1), repeat=k):
        if gcd(prod(tup), n) == 1 and gcd(sum(tup), n) == 1:
            count += 1
    return count


def alternating_unit_sum(length: int, p: int) -> Fraction:
    """sum of (-1/(p-1))**j for j = 0 .. length-1, exactly."""
    return sum((Fraction(-1, p - 1) ** j for j in range(length)), Fraction(0))


def phi_k_nm(k: int, n: int, m: int) -> int:
    """Closed form for the two-parameter totient phi_k(n, m); requires m | n.

    phi_k(n, m) = phi(n)**k * prod over primes p | m of
    (1 - 1/(p-1) + 1/(p-1)**2 - ... +- 1/(p-1)**(k-1)).
    """
    _check_k(k)
    _check_n(n)
    if m < 1 or n % m != 0:
        raise ValueError(f"m must be a positive divisor of n, got m={m}, n={n}")
    if k == 1:
        # the sum condition is implied by the product condition when m | n
        return euler_phi(n)
    val = Fraction(euler_phi(n)) ** k
    for p in factorize(m).primes():
        val *= alternating_unit_sum(k, p)
    assert val.denominator == 1
    return int(val)


def phi_k_nm_recursion(k: int, n: int, m: int) -> int:
    """phi_k(n, m) via phi_k(n, m) = phi(n) * sum_{d | m} mu(d)/phi(d) * phi_{k-1}(n, d).

    Independent of the closed form; bottoms out at phi_1(n, d) = phi(n).
    """
    _check_k(k)
    _check_n(n)
    if m < 1 or n % m != 0:
        raise ValueError(f"m must be a positive divisor of n, got m={m}, n={n}")
    if k == 1:
        return euler_phi(n)
    total = Fraction(0)
    for d in divisors(m):
        mu_d = mobius(d)
        if mu_d:
            total += Fraction(mu_d, euler_phi(d)) * phi_k_nm_recursion(k - 1, n, d)
    total *= euler_phi(n)
    assert total.denominator == 1
    return int(total)


def phi_k_nm_oracle(
    k: int, n: int, m: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> int:
    """Count tuples with product coprime to n and sum coprime to m, literally.

    m need not divide n here; that regime is experimental (no closed form is
    provided for it) and a warning is emitted.
    """
    _check_k(k)
    _check_n(n)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if n % m != 0:
        warnings.warn(
            f"m={m} does not divide n={n}: experimental regime, "
            f"only this brute-force count is available",
            stacklevel=2,
        )
    _check_budget(n**k, budget, f"phi_{k}({n}, m={m}) oracle")
    count = 0
    for tup in product(range(1, n + 1), repeat=k):
        if gcd(prod(tup), n) == 1 and gcd(sum(tup), m) == 1:
            count += 1
    return count


def _g_k_prime(k: int, p: int) -> int:
    # g_k(p) = phi_k(p) - p**k; lies in (-(k+1) p**(k-1), 0) for k >= 2.
    return _phi_k_prime_power(k, p, 1) - p**k


def g_k_mf(k: int) -> MultiplicativeFunction:
    """Convolution inverse factor: phi_k = id_k * g_k.  Vanishes off squarefree n."""
    _check_k(k)
    return MultiplicativeFunction(
        f"g_{k}", lambda p, e: _g_k_prime(k, p) if e == 1 else 0
    )


def g_k(k: int, n: int) -> int:
    _check_k(k)
    _check_n(n)
    return int(eval_mf(g_k_mf(k), n))
