"""Ingestion and independent verification of zeta-zero ordinates.

A zero table is a plain text file with one positive ordinate per line
(ascending, ``#`` comments allowed).  Verification evaluates the Hardy
Z-function via Euler-Maclaurin summation of zeta(1/2+it) and brackets a
sign change around each claimed ordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import brentq
from scipy.special import loggamma

from .errors import AmbiguousBracketError, RangeError, ZeroTableError

__all__ = [
    "ZeroOrdinate", "ZeroTable", "load_zeros", "bundled_zeros_path",
    "hardy_z", "verify_zero", "verify_table", "counting_check",
]

# Euler-Maclaurin tuning: ~3t main terms and four Bernoulli corrections
# keep |error| well below 1e-9 for t <= 500.
_EM_FACTOR = 3.0
_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30)

_BRACKET = 0.05
_MAX_SHRINK = 4


@dataclass(frozen=True)
class ZeroOrdinate:
    index: int
    gamma: float
    verified: bool = False
    residual: float = math.inf

    def __post_init__(self):
        if self.gamma <= 0:
            raise ZeroTableError(f"ordinate #{self.index}: gamma must be "
                                 f"positive, got {self.gamma}")


@dataclass(frozen=True)
class ZeroTable:
    zeros: tuple[ZeroOrdinate, ...]
    source: str

    def __post_init__(self):
        if not self.zeros:
            raise ZeroTableError(f"empty zero table ({self.source})")
        for i, z in enumerate(self.zeros):
            if z.index != i + 1:
                raise ZeroTableError(
                    f"index gap at position {i}: expected {i + 1}, "
                    f"got {z.index}")
            if i and z.gamma <= self.zeros[i - 1].gamma:
                raise ZeroTableError(
                    f"ordinates not strictly increasing at index {z.index}: "
                    f"{self.zeros[i - 1].gamma} -> {z.gamma}")

    @property
    def count(self) -> int:
        return len(self.zeros)

    @property
    def gammas(self) -> np.ndarray:
        return np.array([z.gamma for z in self.zeros])

    def truncated(self, n: int) -> "ZeroTable":
        if not 1 <= n <= self.count:
            raise RangeError(f"truncation order {n} outside 1..{self.count}")
        return ZeroTable(self.zeros[:n], self.source)


def load_zeros(path) -> ZeroTable:
    """Parse a zero-ordinate file into a validated ZeroTable."""
    path = Path(path)
    zeros = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                gamma = float(text)
            except ValueError:
                raise ZeroTableError(
                    f"{path}:{lineno}: cannot parse ordinate {text!r}") from None
            if not math.isfinite(gamma) or gamma <= 0:
                raise ZeroTableError(
                    f"{path}:{lineno}: ordinate must be a positive finite "
                    f"number, got {text!r}")
            zeros.append(ZeroOrdinate(index=len(zeros) + 1, gamma=gamma))
    return ZeroTable(tuple(zeros), source=str(path))


def bundled_zeros_path() -> Path:
    """Path of the bundled table of the first 100 ordinates."""
    return Path(resources.files("mfun").joinpath("data/zeros100.txt"))


def _riemann_siegel_theta(t: float) -> float:
    return float(loggamma(0.25 + 0.5j * t).imag) - 0.5 * t * math.log(math.pi)


def _zeta_half_line(t: float) -> complex:
    """zeta(1/2 + it) by Euler-Maclaurin summation."""
    s = 0.5 + 1j * t
    m = max(int(_EM_FACTOR * abs(t)), 10)
    n = np.arange(1, m)
    total = complex(np.sum(n ** (-s)))
    total += m ** (1.0 - s) / (s - 1.0)
    total += 0.5 * m ** (-s)
    # Bernoulli corrections: B_{2k}/(2k)! * M^{1-s-2k} * prod_{j=0}^{2k-2}(s+j)
    fact = 1.0
    poch = 1.0 + 0j
    for k, b2k in enumerate(_BERNOULLI, start=1):
        fact *= (2 * k - 1) * (2 * k)
        poch *= (s + (2 * k - 2)) * (s + (2 * k - 3)) if k > 1 else s
        total += (b2k / fact) * poch * m ** (1.0 - s - 2 * k)
    return total


def hardy_z(t: float) -> float:
    """Hardy Z-function; real with the same zeros as zeta on the line."""
    z = _zeta_half_line(t)
    theta = _riemann_siegel_theta(t)
    return math.cos(theta) * z.real - math.sin(theta) * z.imag


def verify_zero(gamma: float, tolerance: float) -> tuple[bool, float]:
    """Check that a sign change of Z brackets `gamma` within `tolerance`.

    Returns (verified, residual).  If Z has no sign change anywhere in the
    bracket the ordinate is spurious and (False, inf) is returned.  A
    bracket holding two sign changes is shrunk up to four times; if the
    ambiguity persists, AmbiguousBracketError reports both roots.
    """
    if gamma <= 0 or tolerance <= 0:
        raise ValueError("gamma and tolerance must be positive")
    delta = _BRACKET
    for _ in range(_MAX_SHRINK + 1):
        grid = np.linspace(gamma - delta, gamma + delta, 21)
        vals = np.array([hardy_z(t) for t in grid])
        flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        if len(flips) == 0:
            return False, math.inf
        if len(flips) == 1:
            i = flips[0]
            root = brentq(hardy_z, grid[i], grid[i + 1], xtol=1e-13)
            residual = abs(root - gamma)
            return residual <= tolerance, residual
        delta *= 0.5
    roots = [brentq(hardy_z, grid[i], grid[i + 1], xtol=1e-13)
             for i in flips[:2]]
    raise AmbiguousBracketError(gamma, roots)


def verify_table(table: ZeroTable, tolerance: float = 1e-6) -> ZeroTable:
    """Run verify_zero over every entry, recording flags and residuals."""
    verified = []
    for z in table.zeros:
        ok, res = verify_zero(z.gamma, tolerance)
        verified.append(replace(z, verified=ok, residual=res))
    return ZeroTable(tuple(verified), table.source)


def counting_expected(t: float) -> float:
    """Riemann-von Mangoldt asymptotic for the number of zeros below t."""
    return t / (2 * math.pi) * math.log(t / (2 * math.pi * math.e)) + 7.0 / 8


def counting_check(table: ZeroTable, t: float) -> tuple[int, float]:
    """Observed vs expected zero count below t (completeness diagnostic)."""
    if t > table.zeros[-1].gamma:
        raise RangeError(
            f"T={t} exceeds the table range (max ordinate "
            f"{table.zeros[-1].gamma})")
    observed = int(np.count_nonzero(table.gammas <= t))
    return observed, counting_expected(t)
