"""Exact computation of hypergraph shadows, Kruskal-Katona numbers, shadow
ratio bounds under a degree cap, and exhaustive extremal search."""

from .core import (
    Hypergraph,
    Ratio,
    ShadowLabError,
    components,
    degree,
    degrees,
    link,
    max_degree,
    shadow,
    shadow_ratio,
)
from .hgio import ParseError, format_json, format_text, parse_any, parse_json, parse_text
from .kknum import k_binomial_representation, shadow_function
from .bounds import best_bound
from .construct import clique, clique_minus_matchings, low_degree_extremal, prop16_family, shifted
from .search import SearchResult, SearchSpec, certify_bound, isomorphic, run_search

__all__ = [
    "Hypergraph",
    "ParseError",
    "Ratio",
    "SearchResult",
    "SearchSpec",
    "ShadowLabError",
    "best_bound",
    "certify_bound",
    "clique",
    "clique_minus_matchings",
    "components",
    "degree",
    "degrees",
    "format_json",
    "format_text",
    "isomorphic",
    "k_binomial_representation",
    "link",
    "low_degree_extremal",
    "max_degree",
    "parse_any",
    "parse_json",
    "parse_text",
    "prop16_family",
    "run_search",
    "shadow",
    "shadow_function",
    "shadow_ratio",
    "shifted",
]
