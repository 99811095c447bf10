"""Gcd-sum identities over coprime tuples and the unit-counting machinery.

The central identity: summing f(gcd(a_1 + ... + a_k - 1, n)) over the
phi_k(n) admissible tuples equals phi_k(n) * sum_{d | n} (mu*f)(d)/phi(d)
for any arithmetic function f.  With f = id the divisor sum collapses to
tau(n).  Supporting pieces: counts of units in one or two residue classes,
and N_k(n, d, delta), the number of unit k-tuples whose sum is 1 mod d and
0 mod delta.  Every closed form has a brute-force oracle next to it.
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd, prod
from typing import Callable, Mapping, Union

from .core import (
    DEFAULT_ORACLE_BUDGET,
    ArithValue,
    BudgetExceededError,
    MultiplicativeFunction,
    divisors,
    euler_phi,
    factorize,
    jordan_totient,
    mobius,
    mobius_transform,
    reduce_gcd,
    tau,
)
from .totients import alternating_unit_sum, phi_k

IDENTITY_KINDS = ("menon_general", "menon_gcd", "sita_ramaiah", "nageswara_rao")


def _check_divisor(name: str, d: int, n: int) -> None:
    if d < 1 or n % d != 0:
        raise ValueError(f"{name}={d} must be a positive divisor of n={n}")


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0
    return q


# -- counting units in residue classes -------------------------------------


@lru_cache(maxsize=2048)
def units_mod(n: int) -> tuple[int, ...]:
    """The reduced residues 1 <= a <= n with gcd(a, n) = 1."""
    return tuple(a for a in range(1, n + 1) if gcd(a, n) == 1)


def count_units_in_class(n: int, d: int, r: int) -> tuple[int, int]:
    """Units a <= n with a = r (mod d), exhaustively, plus the prediction.

    Prediction: phi(n)/phi(d) when gcd(r, d) = 1, else 0.  d must divide n.
    """
    _check_divisor("d", d, n)
    count = sum(1 for a in units_mod(n) if a % d == r % d)
    predicted = _exact_div(euler_phi(n), euler_phi(d)) if gcd(r, d) == 1 else 0
    return count, predicted


def count_units_in_two_classes(
    n: int, d: int, e: int, r: int, s: int
) -> tuple[int, int]:
    """Units a <= n with a = r (mod d) and a = s (mod e), plus the prediction.

    Prediction: phi(n) gcd(d,e) / phi(de) when gcd(r,d) = gcd(s,e) = 1 and
    gcd(d,e) divides r - s, else 0.  Both d and e must divide n.
    """
    _check_divisor("d", d, n)
    _check_divisor("e", e, n)
    count = sum(1 for a in units_mod(n) if a % d == r % d and a % e == s % e)
    g = gcd(d, e)
    if gcd(r, d) == 1 and gcd(s, e) == 1 and (r - s) % g == 0:
        pred = Fraction(euler_phi(n) * g, euler_phi(d * e))
        assert pred.denominator == 1
        predicted = int(pred)
    else:
        predicted = 0
    return count, predicted


# -- N_k(n, d, delta): unit tuples with sum = 1 mod d, = 0 mod delta -------


def n_k(k: int, n: int, d: int, delta: int) -> int:
    """Closed form for N_k(n, d, delta); returns 0 when gcd(d, delta) > 1.

    For k >= 2 and gcd(d, delta) = 1:
    phi(n)**k / (phi(d) phi(delta)) times alternating unit sums of length k
    over primes dividing d and length k-1 over primes dividing delta.
    """
    if k < 1:
        raise ValueError(f"tuple length k must be >= 1, got {k}")
    _check_divisor("d", d, n)
    _check_divisor("delta", delta, n)
    if gcd(d, delta) > 1:
        return 0
    if k == 1:
        # a single unit sums to itself: a = 1 (mod d) picks one class,
        # a = 0 (mod delta) is impossible for a unit unless delta = 1
        return _exact_div(euler_phi(n), euler_phi(d)) if delta == 1 else 0
    val = Fraction(euler_phi(n)) ** k / (euler_phi(d) * euler_phi(delta))
    for p in factorize(d).primes():
        val *= alternating_unit_sum(k, p)
    for p in factorize(delta).primes():
        val *= alternating_unit_sum(k - 1, p)
    assert val.denominator == 1
    return int(val)


def n_k_recursion(k: int, n: int, d: int, delta: int) -> int:
    """N_k by the literal recursion over Moebius-weighted divisor pairs.

    Requires k >= 2 and gcd(d, delta) = 1; bottoms out at the k = 1 count.
    """
    if k < 2:
        raise ValueError(f"recursion path requires k >= 2, got k={k}")
    _check_divisor("d", d, n)
    _check_divisor("delta", delta, n)
    if gcd(d, delta) != 1:
        raise ValueError(
            f"recursion path requires gcd(d, delta) = 1, got d={d}, delta={delta}"
        )
    val = _n_k_rec(k, n, d, delta)
    assert val.denominator == 1
    return int(val)


def _n_k_rec(k: int, n: int, d: int, delta: int) -> Fraction:
    if k == 1:
        if delta != 1:
            return Fraction(0)
        return Fraction(euler_phi(n), euler_phi(d))
    total = Fraction(0)
    for j in divisors(d):
        mu_j = mobius(j)
        if not mu_j:
            continue
        for t in divisors(delta):
            mu_t = mobius(t)
            if not mu_t:
                continue
            total += mu_j * mu_t * _n_k_rec(k - 1, n, j, t)
    return Fraction(euler_phi(n), euler_phi(d) * euler_phi(delta)) * total


def n_k_oracle(
    k: int, n: int, d: int, delta: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> int:
    """Count N_k(n, d, delta) by enumerating all unit tuples."""
    if k < 1:
        raise ValueError(f"tuple length k must be >= 1, got {k}")
    _check_divisor("d", d, n)
    _check_divisor("delta", delta, n)
    units = units_mod(n)
    cost = len(units) ** k
    if cost > budget:
        raise BudgetExceededError(
            f"N_{k}({n}, {d}, {delta}) oracle would visit {cost} tuples, "
            f"over the budget of {budget}"
        )
    count = 0
    for tup in product(units, repeat=k):
        s = sum(tup)
        if s % d == 1 % d and s % delta == 0:
            count += 1
    return count


# -- arbitrary f: parsing and tables ----------------------------------------

FSpecInput = Union[str, Mapping, MultiplicativeFunction, Callable[[int], ArithValue], "FunctionSpec"]


@dataclass(frozen=True)
class FunctionSpec:
    """An arithmetic function f, plus (optionally) precomputed (mu * f) values.

    When `mu_fn` is given, the closed-form side of the gcd-sum identity uses
    it instead of computing the Moebius transform of `fn`; a table whose
    mu_fn disagrees with fn therefore yields genuine identity failures.
    """

    label: str
    fn: Callable[[int], ArithValue]
    mu_fn: Callable[[int], ArithValue] | None = None
    source: Union[str, Mapping, None] = None  # re-parseable spec, for worker processes

    def mobius_transform_at(self, d: int) -> ArithValue:
        if self.mu_fn is not None:
            return self.mu_fn(d)
        return mobius_transform(self.fn, d)


def _int_value(raw, context: str) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"{context}: boolean is not a valid value")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float) and raw.is_integer():
        return int(raw)
    raise ValueError(f"{context}: values must be exact integers, got {raw!r}")


def _table_lookup(table: Mapping[int, int], what: str) -> Callable[[int], int]:
    def lookup(n: int) -> int:
        try:
            return table[n]
        except KeyError:
            raise ValueError(f"{what} has no entry for {n}") from None

    return lookup


def _parse_table(data: Mapping, label: str) -> FunctionSpec:
    if "f" in data:
        raw_f = data["f"]
        raw_mu = data.get("mu_f")
    else:
        raw_f, raw_mu = data, None
    f_table = {int(key): _int_value(v, f"{label} f[{key}]") for key, v in raw_f.items()}
    mu_fn = None
    if raw_mu is not None:
        mu_table = {
            int(key): _int_value(v, f"{label} mu_f[{key}]") for key, v in raw_mu.items()
        }
        mu_fn = _table_lookup(mu_table, f"{label} mu_f table")
    # a plain dict round-trips through pickle, so parallel workers re-parse it
    return FunctionSpec(
        label, _table_lookup(f_table, f"{label} f table"), mu_fn, source=dict(data)
    )


@lru_cache(maxsize=64)
def _load_table_file(path: str) -> FunctionSpec:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"table file {path} must hold a JSON object")
    spec = _parse_table(data, f"table:{path}")
    return FunctionSpec(spec.label, spec.fn, spec.mu_fn, source=f"table:{path}")


def parse_function_spec(spec: FSpecInput) -> FunctionSpec:
    """Resolve a function spec: id | one | tau | mu | pow:j | table:<path>.

    Also accepts a divisor-indexed mapping (optionally {"f": ..., "mu_f": ...}),
    a registered multiplicative function, a plain callable, or an already
    parsed FunctionSpec.
    """
    if isinstance(spec, FunctionSpec):
        return spec
    if isinstance(spec, MultiplicativeFunction):
        return FunctionSpec(spec.name, spec)
    if isinstance(spec, Mapping):
        return _parse_table(spec, "table")
    if callable(spec):
        label = getattr(spec, "__name__", "callable")
        return FunctionSpec(label, spec)
    if not isinstance(spec, str):
        raise ValueError(f"cannot interpret {spec!r} as a function spec")
    text = spec.strip()
    if text == "id":
        return FunctionSpec("id", lambda x: x, source="id")
    if text == "one":
        return FunctionSpec("one", lambda x: 1, source="one")
    if text == "tau":
        return FunctionSpec("tau", tau, source="tau")
    if text == "mu":
        return FunctionSpec("mu", mobius, source="mu")
    if text.startswith("pow:"):
        try:
            j = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad power spec {text!r}, expected pow:<integer>") from None
        if j < 0:
            raise ValueError(f"pow:{j} rejected, exponent must be >= 0")
        return FunctionSpec(text, lambda x: x**j, source=text)
    if text.startswith("table:"):
        return _load_table_file(text.split(":", 1)[1])
    raise ValueError(
        f"unknown function spec {text!r}; expected id, one, tau, mu, pow:j, or table:<path>"
    )


# -- the gcd-sum identity ---------------------------------------------------


@lru_cache(maxsize=4096)
def _admissible_gcd_histogram(k: int, n: int) -> tuple[tuple[int, int], ...]:
    # histogram of gcd(a_1+...+a_k - 1, n) over admissible tuples; the literal
    # enumeration is shared by every f swept at the same (k, n)
    counts: Counter[int] = Counter()
    for tup in product(range(1, n + 1), repeat=k):
        if gcd(prod(tup), n) != 1:
            continue
        s = sum(tup)
        if gcd(s, n) != 1:
            continue
        counts[gcd((s - 1) % n, n)] += 1
    return tuple(sorted(counts.items()))


def gcd_sum_lhs_oracle(
    k: int, n: int, f: FSpecInput = "id", budget: int = DEFAULT_ORACLE_BUDGET
) -> ArithValue:
    """Sum f(gcd(a_1+...+a_k-1, n)) over admissible tuples, by enumeration.

    Admissible: every entry in [1, n], product and sum both coprime to n.
    The gcd is taken with the sum reduced mod n, so gcd(0, n) = n.
    """
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    cost = n**k
    if cost > budget:
        raise BudgetExceededError(
            f"gcd-sum oracle at k={k}, n={n} would visit {cost} tuples, "
            f"over the budget of {budget}"
        )
    spec = parse_function_spec(f)
    return sum(spec.fn(g) * c for g, c in _admissible_gcd_histogram(k, n))


def gcd_sum_rhs(k: int, n: int, f: FSpecInput = "id") -> ArithValue:
    """Closed form phi_k(n) * sum_{d | n} (mu*f)(d) / phi(d), exactly.

    Returns an int when the value is integral (always, for honest f); a
    Fraction survives only when a supplied mu_f table is inconsistent.
    """
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    spec = parse_function_spec(f)
    total = Fraction(0)
    for d in divisors(n):
        total += Fraction(spec.mobius_transform_at(d)) / euler_phi(d)
    val = phi_k(k, n) * total
    return int(val) if val.denominator == 1 else val


def menon_expansion_rhs(k: int, n: int, f: FSpecInput = "id") -> ArithValue:
    """The same gcd sum assembled from N_k values.

    sum_{d | n} (mu*f)(d) * sum_{delta | n} mu(delta) * N_k(n, d, delta);
    a third route to the identity, independent of the admissible-tuple loop.
    """
    spec = parse_function_spec(f)
    total: ArithValue = 0
    for d in divisors(n):
        inner = 0
        for delta in divisors(n):
            mu_delta = mobius(delta)
            if mu_delta:
                inner += mu_delta * n_k(k, n, d, delta)
        total += spec.mobius_transform_at(d) * inner
    return total


def nageswara_rao_lhs_oracle(
    k: int, n: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> int:
    """Sum gcd(a_1-1, ..., a_k-1, n)**k over tuples with gcd(a_1,...,a_k,n)=1."""
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    cost = n**k
    if cost > budget:
        raise BudgetExceededError(
            f"joint-gcd oracle at k={k}, n={n} would visit {cost} tuples, "
            f"over the budget of {budget}"
        )
    total = 0
    for tup in product(range(1, n + 1), repeat=k):
        if reduce(gcd, tup, n) == 1:
            total += reduce_gcd((a - 1 for a in tup), n) ** k
    return total


# -- identity verification and sweeps ---------------------------------------


@dataclass(frozen=True)
class Instance:
    """One verified identity instance: parameters and both exact sides."""

    params: tuple[tuple[str, object], ...]
    lhs: ArithValue
    rhs: ArithValue
    ok: bool
    trivial_zero: bool = False
    detail: str | None = None

    def as_dict(self) -> dict:
        out = dict(self.params)
        out["lhs"] = str(self.lhs)
        out["rhs"] = str(self.rhs)
        out["ok"] = self.ok
        if self.trivial_zero:
            out["trivial_zero"] = True
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class IdentityReport:
    """Outcome of an identity sweep; `failures` empty iff every lhs = rhs.

    A sweep that had to skip instances (budget) is `partial`, never silent.
    """

    identity: str
    swept: dict
    checked: int = 0
    trivial_zeros: int = 0
    instances: list[Instance] = field(default_factory=list)
    failures: list[Instance] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.skipped)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, inst: Instance, keep_instances: bool = True) -> None:
        self.checked += 1
        if inst.trivial_zero:
            self.trivial_zeros += 1
        if keep_instances:
            self.instances.append(inst)
        if not inst.ok:
            self.failures.append(inst)

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "swept": self.swept,
            "checked": str(self.checked),
            "trivial_zeros": str(self.trivial_zeros),
            "failures": [inst.as_dict() for inst in self.failures],
            "skipped": self.skipped,
            "partial": self.partial,
            "ok": self.ok,
        }


def verify_identity(
    kind: str,
    k: int,
    n: int,
    f: FSpecInput = "id",
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> Instance:
    """Check one instance of a named identity; returns both exact sides."""
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity {kind!r}, expected one of {IDENTITY_KINDS}")
    if kind == "sita_ramaiah" and k != 2:
        raise ValueError("the k = 2 specialization requires k = 2")
    detail = None
    trivial = False
    if kind == "nageswara_rao":
        lhs = nageswara_rao_lhs_oracle(k, n, budget)
        rhs = jordan_totient(k, n) * tau(n)
        ok = lhs == rhs
        params = (("identity", kind), ("k", k), ("n", n))
    elif kind == "menon_general":
        spec = parse_function_spec(f)
        lhs = gcd_sum_lhs_oracle(k, n, spec, budget)
        rhs = gcd_sum_rhs(k, n, spec)
        ok = lhs == rhs
        trivial = phi_k(k, n) == 0
        params = (("identity", kind), ("k", k), ("n", n), ("f", spec.label))
    else:  # menon_gcd, sita_ramaiah: f = id, rhs collapses to phi_k(n) tau(n)
        lhs = gcd_sum_lhs_oracle(k, n, "id", budget)
        rhs = phi_k(k, n) * tau(n)
        divisor_form = gcd_sum_rhs(k, n, "id")
        ok = lhs == rhs == divisor_form
        if divisor_form != rhs:
            detail = f"divisor-sum rhs = {divisor_form}"
        trivial = phi_k(k, n) == 0
        params = (("identity", kind), ("k", k), ("n", n), ("f", "id"))
    return Instance(params, lhs, rhs, ok, trivial, detail)


def _sweep_cell(args: tuple) -> Instance:
    kind, k, n, f_source, budget = args
    return verify_identity(kind, k, n, f_source, budget)


def verify_sweep(
    kind: str,
    k_max: int = 3,
    n_max: int = 40,
    f: FSpecInput = "id",
    budget: int = DEFAULT_ORACLE_BUDGET,
    workers: int = 1,
) -> IdentityReport:
    """Sweep an identity over 1 <= k <= k_max, 1 <= n <= n_max.

    Instances whose enumeration would exceed the budget are skipped and
    reported, making the report partial.  With workers > 1 the cells are
    evaluated in parallel and merged back in parameter order.
    """
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity {kind!r}, expected one of {IDENTITY_KINDS}")
    spec = parse_function_spec(f)
    ks = [2] if kind == "sita_ramaiah" else list(range(1, k_max + 1))
    swept = {"k": ks if kind == "sita_ramaiah" else f"1..{k_max}", "n": f"1..{n_max}"}
    if kind in ("menon_general", "menon_gcd"):
        swept["f"] = spec.label
    report = IdentityReport(kind, swept)
    cells = []
    for k in ks:
        for n in range(1, n_max + 1):
            if n**k > budget:
                report.skipped.append(
                    {"k": str(k), "n": str(n), "reason": f"n**k = {n ** k} over budget {budget}"}
                )
                continue
            cells.append((kind, k, n, spec if workers == 1 else spec.source, budget))
    if workers > 1 and any(cell[3] is None for cell in cells):
        raise ValueError(
            "parallel sweeps need a re-parseable f spec (name, pow:j, or table:<path>)"
        )
    if workers > 1 and cells:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, cells, chunksize=8))
    else:
        results = [_sweep_cell(cell) for cell in cells]
    for inst in results:
        report.record(inst)
    return report


def lemma_sweep(n_max: int = 40) -> IdentityReport:
    """Exhaustive residue-class count checks for all n <= n_max.

    Covers every divisor pair (d, e) of n and all residues 0 <= r < d,
    0 <= s < e, including the e = 1 collapse onto the one-congruence count.
    Only failures are stored; the instance stream is too large to keep.
    """
    report = IdentityReport("lemmas", {"n": f"1..{n_max}", "residues": "all"})
    for n in range(1, n_max + 1):
        divs = divisors(n)
        for d in divs:
            for r in range(d):
                count, predicted = count_units_in_class(n, d, r)
                inst = Instance(
                    (("lemma", "one_congruence"), ("n", n), ("d", d), ("r", r)),
                    count,
                    predicted,
                    count == predicted,
                )
                report.record(inst, keep_instances=False)
            for e in divs:
                for r in range(d):
                    for s in range(e):
                        count, predicted = count_units_in_two_classes(n, d, e, r, s)
                        inst = Instance(
                            (
                                ("lemma", "two_congruences"),
                                ("n", n),
                                ("d", d),
                                ("e", e),
                                ("r", r),
                                ("s", s),
                            ),
                            count,
                            predicted,
                            count == predicted,
                        )
                        report.record(inst, keep_instances=False)
    return report


def n_k_sweep(
    k_max: int = 3, n_max: int = 30, budget: int = DEFAULT_ORACLE_BUDGET
) -> IdentityReport:
    """Cross-check N_k oracle, closed form, and recursion over a full grid.

    All divisor pairs (d, delta) are swept: coprime pairs must agree across
    all three routes, non-coprime pairs must give 0.
    """
    report = IdentityReport("n_k_machinery", {"k": f"1..{k_max}", "n": f"1..{n_max}"})
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            if len(units_mod(n)) ** k > budget:
                report.skipped.append(
                    {"k": str(k), "n": str(n), "reason": f"phi(n)**k over budget {budget}"}
                )
                continue
            divs = divisors(n)
            for d in divs:
                for delta in divs:
                    brute = n_k_oracle(k, n, d, delta, budget)
                    closed = n_k(k, n, d, delta)
                    ok = brute == closed
                    detail = None
                    if gcd(d, delta) > 1:
                        ok = ok and closed == 0
                    elif k >= 2:
                        rec = n_k_recursion(k, n, d, delta)
                        ok = ok and rec == closed
                        if rec != closed:
                            detail = f"recursion = {rec}"
                    inst = Instance(
                        (("k", k), ("n", n), ("d", d), ("delta", delta)),
                        brute,
                        closed,
                        ok,
                        detail=detail,
                    )
                    report.record(inst, keep_instances=False)
    return report
