"""Lower bounds on the shadow ratio of k-uniform families with a degree bound.

Each ``bound_*`` function checks its own hypothesis and raises
:class:`ShadowLabError` outside it.  :func:`best_bound` runs every regime
that applies to ``(k, d)`` and reports all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import ShadowLabError, format_ratio
from .kknum import (
    DEFAULT_EPS,
    binom,
    invert_binomial,
    long_interval_terms,
)

# Tie-break order when two regimes give the same value.
REGIME_ORDER = ("low-degree", "long-interval", "short-interval", "lovasz", "graph")
THEOREM = {
    "graph": "prop1.1",
    "low-degree": "thm1.2",
    "lovasz": "thm1.4",
    "long-interval": "thm1.5",
    "short-interval": "thm1.7",
}


def _rational(d) -> Fraction:
    try:
        return Fraction(d)
    except (TypeError, ValueError) as exc:
        raise ShadowLabError(f"degree bound must be rational, got {d!r}") from exc


def bound_graph(d) -> Fraction:
    """2/d for graphs (k = 2) with maximum degree at most d."""
    d = _rational(d)
    if d < 1:
        raise ShadowLabError(f"graph bound needs d >= 1, got {d}")
    return 2 / d


def _check_low_degree(k: int, d: Fraction) -> None:
    if d < 1:
        raise ShadowLabError(f"degree bound must be at least 1, got {d}")
    if d >= k:
        raise ShadowLabError("use high-degree regimes: the low-degree bound needs d < k")


def bound_low_degree(k: int, d, m: int) -> int:
    """Minimum shadow size of m edges when every degree is below k.

    With ``d' = floor(d)`` and ``m = q d' + r``, ``0 <= r < d'``, this is
    ``mk - q C(d', 2) - C(r, 2)``.
    """
    d = _rational(d)
    _check_low_degree(k, d)
    if m < 1:
        raise ShadowLabError(f"size must be positive, got {m}")
    dd = math.floor(d)
    q, r = divmod(m, dd)
    return m * k - q * binom(dd, 2) - binom(r, 2)


def bound_low_degree_ratio(k: int, d) -> Fraction:
    d = _rational(d)
    _check_low_degree(k, d)
    return k - (d - 1) / 2


def lovasz_point(k: int, d, eps=DEFAULT_EPS) -> Fraction:
    """A certified real x >= k-1 with ceil(d) <= C(x, k-1)."""
    d = _rational(d)
    if k < 3:
        raise ShadowLabError(f"the Lovasz-type bound needs k >= 3, got {k}")
    if d < 1:
        raise ShadowLabError(f"degree bound must be at least 1, got {d}")
    return invert_binomial(math.ceil(d), k - 1, eps).upper


def bound_lovasz(k: int, d, eps=DEFAULT_EPS) -> Fraction:
    """k/(x - k + 2) at the certified point x from :func:`lovasz_point`.

    When ``ceil(d)`` is an exact binomial ``C(x, k-1)`` no slack is added;
    otherwise the bracket's upper end is used, which is slightly weaker than
    the real-valued bound but never invalid.
    """
    x = lovasz_point(k, d, eps)
    return k / (x - k + 2)


def long_interval_degree(k: int, t: int) -> int:
    """Largest degree bound for which the clique on t+1 vertices is extremal."""
    if not 3 <= k <= t:
        raise ShadowLabError(f"need t >= k >= 3, got k={k}, t={t}")
    return sum(long_interval_terms(t, k - 1))


def bound_long_interval(k: int, t: int) -> tuple[int, Fraction]:
    """(threshold D, bound k/(t-k+2)), valid for every d <= D."""
    return long_interval_degree(k, t), Fraction(k, t - k + 2)


def short_interval_window(k: int, t: int) -> tuple[Fraction, int]:
    """Half-open window [lo, hi) of degree bounds for the short-interval bound."""
    if not 3 <= k <= t:
        raise ShadowLabError(f"need t >= k >= 3, got k={k}, t={t}")
    hi = binom(t + 1, k - 1)
    return hi - Fraction(k - 2, k - 1) * (t - k + 3), hi


def bound_short_interval(k: int, t: int, d) -> Fraction:
    d = _rational(d)
    lo, hi = short_interval_window(k, t)
    if not lo <= d < hi:
        raise ShadowLabError("short-interval hypothesis violated")
    value = Fraction(k * binom(t + 1, k - 2)) / ((k - 1) * d)
    other = binom(t + 2, k - 1) / (binom(t + 2, k) - Fraction(t + 2, k) * (binom(t + 1, k - 1) - d))
    if value != other:
        raise AssertionError(f"short-interval forms disagree: {value} != {other}")
    return value


@dataclass(frozen=True)
class BoundEntry:
    regime: str
    value: Fraction
    theorem: str
    t: int | None = None
    eps: Fraction | None = None

    def to_json(self) -> dict:
        out = {"regime": self.regime, "value": format_ratio(self.value), "theorem": self.theorem}
        if self.t is not None:
            out["t"] = self.t
        if self.eps is not None:
            out["eps"] = format_ratio(self.eps)
        return out


@dataclass(frozen=True)
class BoundReport:
    k: int
    d: Fraction
    bounds: tuple[BoundEntry, ...]
    best: BoundEntry
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": format_ratio(self.d),
            "bounds": [b.to_json() for b in self.bounds],
            "best": self.best.to_json(),
            "notes": list(self.notes),
        }


def _t_range(k: int, d: Fraction) -> range:
    t = k
    while binom(t, k - 1) <= d:
        t += 1
    return range(k, t + 2)


def best_bound(k: int, d, eps=DEFAULT_EPS) -> BoundReport:
    d = _rational(d)
    if k < 2:
        raise ShadowLabError(f"need k >= 2, got {k}")
    if d < 1:
        raise ShadowLabError(f"need d >= 1, got {d}")
    entries: list[BoundEntry] = []
    if d < k:
        entries.append(BoundEntry("low-degree", bound_low_degree_ratio(k, d), THEOREM["low-degree"]))
    if k == 2:
        entries.append(BoundEntry("graph", bound_graph(d), THEOREM["graph"]))
    else:
        for t in _t_range(k, d):
            threshold, value = bound_long_interval(k, t)
            if d <= threshold:
                entries.append(BoundEntry("long-interval", value, THEOREM["long-interval"], t=t))
            lo, hi = short_interval_window(k, t)
            if lo <= d < hi:
                entries.append(
                    BoundEntry("short-interval", bound_short_interval(k, t, d), THEOREM["short-interval"], t=t)
                )
        entries.append(BoundEntry("lovasz", bound_lovasz(k, d, eps), THEOREM["lovasz"], eps=Fraction(eps)))
    best = min(entries, key=lambda e: (-e.value, REGIME_ORDER.index(e.regime), e.t or 0))
    notes = ()
    if best.regime == "lovasz":
        notes = ("no sharp bound known; Lovasz fallback",)
    return BoundReport(k, d, tuple(entries), best, notes)
