"""Cascade representations, the Kruskal-Katona shadow function and
ratio bounds for families of bounded size.

Every quantity here is an exact integer or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .core import ShadowLabError

DEFAULT_EPS = Fraction(1, 2**20)


@lru_cache(maxsize=1 << 16)
def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 for 0 <= a < b and C(a, 0) = 1."""
    if a < 0:
        raise ShadowLabError(f"binomial with negative top argument {a}")
    if b < 0:
        return 0
    return math.comb(a, b)


def ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def max_binomial_top(m: int, i: int) -> int:
    """Largest a >= i - 1 with C(a, i) <= m."""
    if i == 1:
        return m
    # C(a, i) ~ (a - (i-1)/2)^i / i!, good to within a step or two.
    try:
        a = max(int((m * math.factorial(i)) ** (1.0 / i) + (i - 1) / 2), i - 1)
    except OverflowError:
        lo, hi = i - 1, 2 * i
        while binom(hi, i) <= m:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            lo, hi = (mid, hi) if binom(mid, i) <= m else (lo, mid)
        a = lo
    while binom(a + 1, i) <= m:
        a += 1
    while a >= i and binom(a, i) > m:
        a -= 1
    return a


@dataclass(frozen=True)
class BinomialRepresentation:
    """``m = C(a_k, k) + C(a_{k-1}, k-1) + ... + C(a_l, l)``.

    ``terms`` holds the ``(a_i, i)`` pairs with ``i`` descending.
    """

    order: int
    terms: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return sum(binom(a, i) for a, i in self.terms)

    def is_valid(self) -> bool:
        if not self.terms or self.terms[0][1] != self.order:
            return False
        for (a, i), (b, j) in zip(self.terms, self.terms[1:]):
            if j != i - 1 or b >= a:
                return False
        a_l, l = self.terms[-1]
        return a_l >= l >= 1

    def __str__(self) -> str:
        return "+".join(f"C({a},{i})" for a, i in self.terms)


def k_binomial_representation(m: int, k: int) -> BinomialRepresentation:
    if m < 1:
        raise ShadowLabError(f"k-binomial representation needs m >= 1, got {m}")
    if k < 1:
        raise ShadowLabError(f"order must be positive, got {k}")
    terms = []
    rest = m
    for i in range(k, 0, -1):
        a = max_binomial_top(rest, i)
        terms.append((a, i))
        rest -= binom(a, i)
        if rest == 0:
            break
    return BinomialRepresentation(k, tuple(terms))


def shadow_function(m: int, k: int) -> int:
    """F_k(m), the minimum shadow size of a k-uniform family of size m."""
    if k < 1:
        raise ShadowLabError(f"order must be positive, got {k}")
    if m < 0:
        raise ShadowLabError(f"size must be nonnegative, got {m}")
    if m == 0:
        return 0
    return sum(binom(a, i - 1) for a, i in k_binomial_representation(m, k).terms)


def real_binomial(x, k: int) -> Fraction:
    """x(x-1)...(x-k+1)/k! for rational ``x >= 0``.

    Increasing in ``x`` only on ``x >= k - 1``.
    """
    x = Fraction(x)
    if x < 0:
        raise ShadowLabError(f"real binomial needs x >= 0, got {x}")
    if k < 0:
        raise ShadowLabError(f"order must be nonnegative, got {k}")
    num = Fraction(1)
    for j in range(k):
        num *= x - j
    return num / math.factorial(k)


@dataclass(frozen=True)
class RealBinomialQuery:
    """Bracket ``C(x, k) <= m <= C(x + eps, k)`` with ``x >= k - 1``."""

    k: int
    m: int
    x: Fraction
    eps: Fraction

    @property
    def exact(self) -> bool:
        return real_binomial(self.x, self.k) == self.m

    @property
    def upper(self) -> Fraction:
        """Smallest certified point at which C(., k) reaches ``m``."""
        return self.x if self.exact else self.x + self.eps


def invert_binomial(m: int, k: int, eps=DEFAULT_EPS) -> RealBinomialQuery:
    """Bisection for the real ``x >= k - 1`` with ``C(x, k) = m``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ShadowLabError("eps must be positive")
    if m < 1 or k < 1:
        raise ShadowLabError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    a = max_binomial_top(m, k)
    lo, hi = Fraction(a), Fraction(a + 1)
    if binom(a, k) == m:
        return RealBinomialQuery(k, m, lo, eps)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if real_binomial(mid, k) <= m:
            lo = mid
        else:
            hi = mid
    return RealBinomialQuery(k, m, lo, eps)


def sperner_bound(m: int, k: int, a: int) -> Fraction:
    """k/(a-k+1); F_k(m)/m is at least this whenever m <= C(a, k)."""
    if not 1 <= k <= a:
        raise ShadowLabError(f"need 1 <= k <= a, got k={k}, a={a}")
    if not 1 <= m <= binom(a, k):
        raise ShadowLabError("Sperner hypothesis violated")
    return Fraction(k, a - k + 1)


def long_interval_terms(a: int, k: int) -> list[int]:
    if not 1 <= k <= a:
        raise ShadowLabError(f"need a >= k >= 1, got a={a}, k={k}")
    return [binom(a - ceil_div(u * (a + 1), k), k - u) for u in range(k)]


def long_interval_threshold(a: int, k: int) -> int:
    """Size up to which F_k(m)/m >= k/(a-k+1) is guaranteed."""
    return sum(long_interval_terms(a, k))


class LongIntervalCheck(NamedTuple):
    within: bool
    ratio: Fraction
    bound: Fraction


def check_long_interval(m: int, a: int, k: int) -> LongIntervalCheck:
    if m < 1:
        raise ShadowLabError(f"need m >= 1, got {m}")
    threshold = long_interval_threshold(a, k)
    return LongIntervalCheck(
        m <= threshold, Fraction(shadow_function(m, k), m), Fraction(k, a - k + 1)
    )


def short_interval_window(a: int, k: int) -> tuple[Fraction, int]:
    """Closed window of sizes d for which the short-interval bound applies."""
    if not 1 <= k <= a:
        raise ShadowLabError(f"need a >= k >= 1, got a={a}, k={k}")
    top = binom(a + 1, k)
    return top - Fraction(k - 1, k) * (a - k + 2), top


def short_interval_bound(d: int, a: int, k: int) -> Fraction:
    """C(a+1, k-1)/d, a lower bound on F_k(m)/m for all m <= d."""
    lo, hi = short_interval_window(a, k)
    if not lo <= d <= hi:
        raise ShadowLabError("short-interval hypothesis violated")
    return Fraction(binom(a + 1, k - 1), d)
