"""Desk-scale Goldbach arithmetic: von Mangoldt sieve, the weighted
representation counts r_2(n), the singular series S_2(n), the summatory
residue A_2(x), and its comparison against the zero-sum main term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import r2_convolve
from .errors import RangeError
from .spectral import CoefficientTable, eval_f_N

__all__ = [
    "ArithmeticTable", "GoldbachSums", "sieve_lambda", "r2_all",
    "twin_prime_constant", "singular_series", "singular_series_all",
    "a2_curve", "compare_main_term", "primes_up_to",
]

X_MAX_GUARD = 10 ** 7
MIN_PRIME_CUTOFF = 10 ** 5


@dataclass(frozen=True)
class ArithmeticTable:
    """Von Mangoldt values Lambda(n) for 0 <= n <= limit (Lambda(0)=Lambda(1)=0)."""
    limit: int
    lam: np.ndarray


@dataclass(frozen=True)
class GoldbachSums:
    """r_2, S_2 and the cumulative A_2 on a common index range."""
    r2: np.ndarray
    s2: np.ndarray
    a2: np.ndarray
    prime_cutoff: int


def primes_up_to(n: int) -> np.ndarray:
    """Ascending primes <= n (Eratosthenes on a numpy bool array)."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def sieve_lambda(x_max: int) -> ArithmeticTable:
    """Exact Lambda table: log p at prime powers p^k, zero elsewhere."""
    if not 2 <= x_max <= X_MAX_GUARD:
        raise RangeError(f"x_max={x_max} outside the desk-scale guard "
                         f"[2, {X_MAX_GUARD}]")
    lam = np.zeros(x_max + 1)
    for p in primes_up_to(x_max):
        logp = math.log(p)
        q = int(p)
        while q <= x_max:
            lam[q] = logp
            q *= int(p)
    return ArithmeticTable(limit=x_max, lam=lam)


def r2_all(table: ArithmeticTable) -> np.ndarray:
    """r_2(n) = sum_{l+m=n} Lambda(l) Lambda(m) for all n <= limit.

    Direct double loop over the nonzero support of Lambda (prime powers).
    """
    pp = np.nonzero(table.lam)[0].astype(np.int64)
    return r2_convolve(pp, table.lam[pp], table.limit)


@lru_cache(maxsize=8)
def twin_prime_constant(prime_cutoff: int) -> float:
    """Partial product of (1 - 1/(p-1)^2) over odd primes up to the cutoff."""
    p = primes_up_to(prime_cutoff)[1:].astype(np.float64)
    return float(np.exp(np.sum(np.log1p(-1.0 / (p - 1.0) ** 2))))


def singular_series(n: int, prime_cutoff: int) -> float:
    """S_2(n): zero for odd n, else 2*C_2 * prod_{p|n, p>2} (p-1)/(p-2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if prime_cutoff < MIN_PRIME_CUTOFF:
        raise RangeError(f"prime_cutoff={prime_cutoff} below the minimum "
                         f"{MIN_PRIME_CUTOFF}")
    if n % 2 == 1:
        return 0.0
    value = 2.0 * twin_prime_constant(prime_cutoff)
    m = n
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            value *= (p - 1.0) / (p - 2.0)
            while m % p == 0:
                m //= p
        p += 2
    if m > 1:
        value *= (m - 1.0) / (m - 2.0)
    return value


def singular_series_all(x_max: int, prime_cutoff: int) -> np.ndarray:
    """S_2(n) for all n <= x_max via a multiplicative sieve."""
    if prime_cutoff < MIN_PRIME_CUTOFF:
        raise RangeError(f"prime_cutoff={prime_cutoff} below the minimum "
                         f"{MIN_PRIME_CUTOFF}")
    s2 = np.zeros(x_max + 1)
    s2[2::2] = 2.0 * twin_prime_constant(prime_cutoff)
    for p in primes_up_to(x_max)[1:]:
        s2[2 * p::2 * p] *= (p - 1.0) / (p - 2.0)
    return s2


def _kahan_cumsum(values: np.ndarray) -> np.ndarray:
    """Compensated running sum; A_2 is a small difference of large sums."""
    out = np.empty_like(values)
    total = 0.0
    comp = 0.0
    for i, v in enumerate(values):
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[i] = total
    return out


def a2_curve(table: ArithmeticTable, prime_cutoff: int) -> GoldbachSums:
    """Cumulative A_2(x) = sum_{n<=x} (r_2(n) - n S_2(n)) at integer x."""
    r2 = r2_all(table)
    s2 = singular_series_all(table.limit, prime_cutoff)
    n = np.arange(table.limit + 1, dtype=np.float64)
    a2 = _kahan_cumsum(r2 - n * s2)
    return GoldbachSums(r2=r2, s2=s2, a2=a2, prime_cutoff=prime_cutoff)


def compare_main_term(sums: GoldbachSums, coeffs: CoefficientTable, n: int,
                      x_grid) -> list[dict]:
    """Rows (x, A_2, main term, residual, residual/(x log^3 x)) per grid x."""
    x_grid = sorted(int(x) for x in x_grid)
    if not x_grid or x_grid[0] < 2 or x_grid[-1] >= len(sums.a2):
        raise RangeError("x_grid must lie within [2, x_max]")
    rows = []
    for x in x_grid:
        main = -4.0 * x ** 1.5 * eval_f_N(coeffs, n, math.log(x)).real
        residual = float(sums.a2[x]) - main
        rows.append({
            "x": x,
            "a2": float(sums.a2[x]),
            "main_term": main,
            "residual": residual,
            "normalized_residual": residual / (x * math.log(x) ** 3),
        })
    return rows
