"""Products of simple commutators matching a word modulo F^(D+1).

``decompose`` peels a word of lower-central-series degree >= m+1 one
degree at a time: at each degree d the degree-d slice of the Magnus
expansion of the current remainder is a Lie element, which the Lyndon
solver turns into an integer combination of left-normed commutators of
weight d.  Multiplying the matching commutator words away pushes the
remainder one degree deeper; after degree D the residual lies in
F^(D+1).  Everything is verified internally against the expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .lyndon import left_normed_combination, left_normed_lie_polynomial
from .magnus import NCPolynomial, expand, nc_mul, unpack_monomial
from .words import invert, reduce_word, simple_commutator


@dataclass(frozen=True)
class CommutatorCombination:
    """Factors of a word modulo F^(valid_mod_degree + 1).

    The original word equals (product of the commutators of ``factors``
    in order, each raised to its +-1 exponent) * ``residual`` exactly,
    and the residual has Magnus degree > ``valid_mod_degree``.
    """

    factors: tuple[tuple[tuple[int, ...], int], ...]
    residual: tuple[int, ...]
    valid_mod_degree: int

    def factor_words(self) -> list[tuple[int, ...]]:
        out = []
        for entries, exponent in self.factors:
            w = commutator_group_word(entries)
            out.append(w if exponent > 0 else invert(w))
        return out

    def product_word(self) -> tuple[int, ...]:
        merged: list[int] = []
        for w in self.factor_words():
            merged.extend(w)
        return reduce_word(merged)


@lru_cache(maxsize=None)
def commutator_group_word(entries: tuple[int, ...]) -> tuple[int, ...]:
    return simple_commutator(entries).word()


@lru_cache(maxsize=256)
def _expand_nest_pair(entries: tuple[int, ...], degree: int) -> tuple[NCPolynomial, NCPolynomial]:
    """Expansions of a left-normed commutator and of its inverse.

    Each stage multiplies sparse series (support {0} union [k, D]), so
    this stays cheap where letterwise expansion of the 3*2^m-letter
    nest word would not; carrying the inverse along avoids series
    inversion, and recursing on the prefix shares work between the many
    factors of a solve that differ only in their last entries.
    """
    if len(entries) < 1:
        raise ValueError("need at least one entry")
    if len(entries) == 1:
        return expand(entries, degree), expand((-entries[0],), degree)
    p, p_inv = _expand_nest_pair(entries[:-1], degree)
    y = entries[-1]
    ey = expand((y,), degree)
    ey_inv = expand((-y,), degree)
    # W' = W y W^-1 y^-1 and W'^-1 = y W y^-1 W^-1
    new_p = nc_mul(nc_mul(nc_mul(p, ey), p_inv), ey_inv)
    new_inv = nc_mul(nc_mul(nc_mul(ey, p), ey_inv), p_inv)
    return new_p, new_inv


def expand_commutator(entries: tuple[int, ...], degree: int) -> NCPolynomial:
    """Magnus expansion of the left-normed commutator on ``entries``."""
    return _expand_nest_pair(tuple(entries), degree)[0]


def lie_component(word: Sequence[int], m: int) -> dict[tuple[int, ...], int]:
    """Degree-m coefficients of the Magnus expansion of ``word``.

    Requires lcs degree >= m; the slice is then a Lie element.
    """
    if m < 1:
        raise ValueError("degree must be >= 1")
    poly = expand(word, m)
    low = poly.min_positive_degree()
    if low is not None and low < m:
        raise ValueError(f"word has lcs degree {low} < {m}")
    return {unpack_monomial(mon): c for mon, c in poly.buckets[m].items()}


def _bucket_tuples(poly: NCPolynomial, d: int) -> dict[tuple[int, ...], int]:
    return {unpack_monomial(m): c for m, c in poly.buckets[d].items()}


def _try_single_factor(
    component: dict[tuple[int, ...], int], d: int
) -> dict[tuple[int, ...], int] | None:
    """Match the slice against c * [y1, ..., yd] for one entry sequence.

    Keeps a word that is a power of a single simple commutator decomposed
    as copies of that commutator instead of its Lyndon-basis rewriting.
    Bounded to small weights; the general solver handles everything else.
    """
    from itertools import permutations

    if d > 7:
        return None
    multiset = sorted(min(component))
    if any(sorted(mon) != multiset for mon in component):
        return None
    candidates = sorted(set(permutations(multiset)))
    if len(candidates) > 300:
        return None
    lead = min(component)
    target = component[lead]
    for entries in candidates:
        if entries[0] == entries[1]:
            continue
        ln = left_normed_lie_polynomial(entries)
        base = ln.get(lead)
        if not base or target % base:
            continue
        coeff = target // base
        if component == {mon: coeff * c for mon, c in ln.items()}:
            return {entries: coeff}
    return None


def decompose(word: Sequence[int], m: int, degree: int) -> CommutatorCombination:
    """Write ``word`` as simple commutators of weights m+1..degree.

    Preconditions: lcs degree of the word >= m+1 and degree >= m+1.
    At each weight the integer solve is triangular in Lyndon
    coordinates; a non-integer or non-Lie residue cannot occur for a
    genuine group element and raises RuntimeError.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if degree < m + 1:
        raise ValueError("degree must be >= m+1")
    word = reduce_word(word)
    remainder = expand(word, degree)
    low = remainder.min_positive_degree()
    if low is not None and low <= m:
        raise ValueError(f"word has lcs degree {low} <= m = {m}")

    factors: list[tuple[tuple[int, ...], int]] = []
    inverse_parts: list[tuple[int, ...]] = []
    for d in range(m + 1, degree + 1):
        component = _bucket_tuples(remainder, d)
        if not component:
            continue
        combo = _try_single_factor(component, d)
        if combo is None:
            combo = left_normed_combination(component)
        stage_inverses: list[NCPolynomial] = []
        for entries in sorted(combo):
            coeff = combo[entries]
            if len(entries) < 2:
                raise RuntimeError(f"degree-{d} slice needs weight-1 factor {entries}")
            exponent = 1 if coeff > 0 else -1
            base, base_inv = _expand_nest_pair(entries, degree)
            for _ in range(abs(coeff)):
                factors.append((entries, exponent))
                stage_inverses.append(base_inv if exponent > 0 else base)
                inverse_parts.append(
                    invert(commutator_group_word(entries)) if exponent > 0
                    else commutator_group_word(entries)
                )
        # remainder <- G_d^-1 * remainder; left-multiplying by the
        # factor inverses in emitted order builds f_k^-1 ... f_1^-1 R
        for poly in stage_inverses:
            remainder = nc_mul(poly, remainder)
        low = remainder.min_positive_degree()
        if low is not None and low <= d:
            raise RuntimeError(f"stage {d} left degree-{low} terms behind")

    # residual = G^-1 * word with G the factor product in emitted order
    merged: list[int] = []
    for part in reversed(inverse_parts):
        merged.extend(part)
    merged.extend(word)
    residual = reduce_word(merged)
    return CommutatorCombination(tuple(factors), residual, degree)
