"""Integer factorization, divisors, and multiplicative arithmetic functions.

All values are exact: integers or `fractions.Fraction`, never floats.
Functions here are pure and safe to call concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, gcd
from typing import Callable, Mapping, Union

ArithValue = Union[int, Fraction]
ArithFn = Union["MultiplicativeFunction", Callable[[int], ArithValue], Mapping[int, ArithValue]]


class BudgetExceededError(Exception):
    """An exhaustive computation refused to run: it would exceed its budget."""


# Default cap on brute-force work, measured in tuples visited (n**k per call).
DEFAULT_ORACLE_BUDGET = 10**8


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition: n = prod p**e, primes increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def omega(self) -> int:
        return len(self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@lru_cache(maxsize=1 << 16)
def _trial_division(n: int) -> tuple[tuple[int, int], ...]:
    factors = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    d = 5
    while d * d <= m:
        for p in (d, d + 2):
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                factors.append((p, e))
        d += 6
    if m > 1:
        factors.append((m, 1))
    return tuple(factors)


def factorize(n: int) -> Factorization:
    """Factor a positive integer by trial division; n < 1 is a domain error."""
    if n < 1:
        raise ValueError(f"factorize: n must be a positive integer, got {n}")
    return Factorization(n, _trial_division(n))


def divisors(f: Factorization | int) -> list[int]:
    """All divisors of n in increasing order."""
    if isinstance(f, int):
        f = factorize(f)
    divs = [1]
    for p, e in f.factors:
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    return sorted(divs)


@dataclass(frozen=True)
class MultiplicativeFunction:
    """Arithmetic function f with f(1) = 1, defined by its prime-power values.

    `prime_power_rule(p, e)` gives f(p**e) for e >= 1; the value at any n is
    the product over the factorization of n.
    """

    name: str
    prime_power_rule: Callable[[int, int], ArithValue]

    def __call__(self, n: int) -> ArithValue:
        return eval_mf(self, n)


def eval_mf(f: MultiplicativeFunction, n: int) -> ArithValue:
    fac = factorize(n)
    val: ArithValue = 1
    for p, e in fac.factors:
        val *= f.prime_power_rule(p, e)
    if isinstance(val, Fraction) and val.denominator == 1:
        return int(val)
    return val


def dirichlet_convolve(
    f: MultiplicativeFunction, g: MultiplicativeFunction, name: str | None = None
) -> MultiplicativeFunction:
    """Dirichlet convolution f * g of two multiplicative functions."""

    def rule(p: int, e: int) -> ArithValue:
        total: ArithValue = 0
        for j in range(e + 1):
            fv = 1 if j == 0 else f.prime_power_rule(p, j)
            gv = 1 if j == e else g.prime_power_rule(p, e - j)
            total += fv * gv
        return total

    return MultiplicativeFunction(name or f"({f.name}*{g.name})", rule)


# -- registry of classical functions --------------------------------------

mobius_mf = MultiplicativeFunction("mu", lambda p, e: -1 if e == 1 else 0)
one_mf = MultiplicativeFunction("one", lambda p, e: 1)
epsilon_mf = MultiplicativeFunction("epsilon", lambda p, e: 0)
tau_mf = MultiplicativeFunction("tau", lambda p, e: e + 1)
phi_mf = MultiplicativeFunction("phi", lambda p, e: p ** (e - 1) * (p - 1))


def id_k_mf(k: int) -> MultiplicativeFunction:
    """Power function n -> n**k."""
    return MultiplicativeFunction(f"id_{k}", lambda p, e: p ** (e * k))


id_mf = id_k_mf(1)


def jordan_mf(k: int) -> MultiplicativeFunction:
    """Jordan totient J_k: counts k-tuples below n with joint gcd 1 against n."""
    if k < 1:
        raise ValueError("jordan_mf: k must be >= 1")
    return MultiplicativeFunction(f"J_{k}", lambda p, e: p ** ((e - 1) * k) * (p**k - 1))


def piltz_mf(j: int) -> MultiplicativeFunction:
    """Piltz divisor function tau_j: ordered factorizations into j factors."""
    if j < 1:
        raise ValueError("piltz_mf: j must be >= 1")
    return MultiplicativeFunction(f"tau_{j}", lambda p, e: comb(e + j - 1, j - 1))


@lru_cache(maxsize=1 << 16)
def euler_phi(n: int) -> int:
    return int(eval_mf(phi_mf, n))


@lru_cache(maxsize=1 << 16)
def mobius(n: int) -> int:
    return int(eval_mf(mobius_mf, n))


def jordan_totient(k: int, n: int) -> int:
    return int(eval_mf(jordan_mf(k), n))


def tau(n: int) -> int:
    return int(eval_mf(tau_mf, n))


# -- arbitrary (possibly non-multiplicative) functions --------------------


def as_arith_fn(f: ArithFn) -> Callable[[int], ArithValue]:
    """Normalize a function spec (callable, registry instance, or value table).

    Tables are divisor-indexed maps; a lookup outside the table is a domain
    error, never a silent default.
    """
    if isinstance(f, MultiplicativeFunction):
        return f
    if isinstance(f, Mapping):
        table = {int(k): v for k, v in f.items()}

        def lookup(n: int) -> ArithValue:
            try:
                return table[n]
            except KeyError:
                raise ValueError(f"value table has no entry for {n}") from None

        return lookup
    if callable(f):
        return f
    raise ValueError(f"cannot interpret {f!r} as an arithmetic function")


def pointwise_eval(f: ArithFn, n: int) -> ArithValue:
    """Evaluate an arbitrary arithmetic function at n."""
    return as_arith_fn(f)(n)


def mobius_transform(f: ArithFn, d: int) -> ArithValue:
    """(mu * f)(d) = sum over j | d of mu(d/j) f(j); f need not be multiplicative."""
    fn = as_arith_fn(f)
    total: ArithValue = 0
    for j in divisors(d):
        m = mobius(d // j)
        if m:
            total += m * fn(j)
    return total


def reduce_gcd(values, n: int) -> int:
    """gcd of values together with n, each value reduced mod n; gcd(0, n) = n."""
    return reduce(gcd, (v % n for v in values), n)
