"""Truncated non-commutative power series and the Magnus embedding.

The Magnus map sends x_k to 1 + X_k and x_k^-1 to the truncated
geometric series 1 - X_k + X_k^2 - ...; a word's expansion determines
its position in the lower central series: w lies in F^(k) iff the
expansion has no terms of degree 1..k-1.  Milnor invariants of a link
presented by longitude words are coefficients of these expansions.

Monomials X_{i1}...X_{id} are packed into integers, 10 bits per index,
first index in the low bits, and stored in one dict per degree.  All
arithmetic is exact over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .words import reduce_word

_SHIFT = 10
_MASK = (1 << _SHIFT) - 1
MAX_GENERATOR = _MASK  # 1023


def pack_monomial(indices: Sequence[int]) -> int:
    acc = 0
    for i in reversed(indices):
        if not 1 <= i <= MAX_GENERATOR:
            raise ValueError(f"generator index {i} out of range 1..{MAX_GENERATOR}")
        acc = (acc << _SHIFT) | i
    return acc


def unpack_monomial(packed: int) -> tuple[int, ...]:
    out = []
    while packed:
        out.append(packed & _MASK)
        packed >>= _SHIFT
    return tuple(out)


class NCPolynomial:
    """Integer polynomial in non-commuting X_i, truncated beyond ``degree``.

    ``buckets[d]`` maps packed degree-d monomials to nonzero integer
    coefficients.  Instances are never mutated after construction.
    """

    __slots__ = ("degree", "buckets")

    def __init__(self, degree: int, buckets: list[dict[int, int]] | None = None):
        if degree < 1:
            raise ValueError("truncation degree must be >= 1")
        self.degree = degree
        self.buckets = buckets if buckets is not None else [{} for _ in range(degree + 1)]

    @classmethod
    def one(cls, degree: int) -> "NCPolynomial":
        p = cls(degree)
        p.buckets[0][0] = 1
        return p

    @classmethod
    def from_terms(cls, degree: int, terms: Iterable[tuple[Sequence[int], int]]) -> "NCPolynomial":
        p = cls(degree)
        for mon, coeff in terms:
            if len(mon) > degree:
                raise ValueError("monomial exceeds truncation degree")
            if coeff:
                key = pack_monomial(mon)
                bucket = p.buckets[len(mon)]
                val = bucket.get(key, 0) + coeff
                if val:
                    bucket[key] = val
                else:
                    bucket.pop(key, None)
        return p

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """All (monomial, coefficient) pairs, by degree then lexicographic."""
        out: list[tuple[tuple[int, ...], int]] = []
        for bucket in self.buckets:
            out.extend(sorted((unpack_monomial(m), c) for m, c in bucket.items()))
        return out

    def coefficient(self, mon: Sequence[int]) -> int:
        if len(mon) > self.degree:
            raise ValueError("monomial exceeds truncation degree")
        return self.buckets[len(mon)].get(pack_monomial(mon), 0)

    def is_one(self) -> bool:
        return self.buckets[0] == {0: 1} and all(not b for b in self.buckets[1:])

    def min_positive_degree(self) -> int | None:
        """Smallest degree 1..D carrying a nonzero coefficient, else None."""
        for d in range(1, self.degree + 1):
            if self.buckets[d]:
                return d
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.buckets == other.buckets

    def __hash__(self):  # pragma: no cover - not used as dict key
        raise TypeError("NCPolynomial is unhashable")

    def __repr__(self) -> str:
        parts = []
        for mon, c in self.terms()[:8]:
            parts.append(f"{c}*{'.'.join(f'X{i}' for i in mon) or '1'}")
        more = "..." if len(self.terms()) > 8 else ""
        return f"<NCPolynomial D={self.degree}: {' + '.join(parts)}{more}>"


def _check_degrees(a: NCPolynomial, b: NCPolynomial) -> int:
    if a.degree != b.degree:
        raise ValueError(f"mismatched truncation degrees {a.degree} != {b.degree}")
    return a.degree


def nc_add(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    degree = _check_degrees(a, b)
    out = NCPolynomial(degree)
    for d in range(degree + 1):
        bucket = dict(a.buckets[d])
        for m, c in b.buckets[d].items():
            val = bucket.get(m, 0) + c
            if val:
                bucket[m] = val
            else:
                bucket.pop(m, None)
        out.buckets[d] = bucket
    return out


def nc_neg(a: NCPolynomial) -> NCPolynomial:
    out = NCPolynomial(a.degree)
    out.buckets = [{m: -c for m, c in bucket.items()} for bucket in a.buckets]
    return out


def nc_mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    degree = _check_degrees(a, b)
    out = NCPolynomial(degree)
    obuckets = out.buckets
    for i, abucket in enumerate(a.buckets):
        if not abucket:
            continue
        shift = _SHIFT * i
        for j in range(degree - i + 1):
            bbucket = b.buckets[j]
            if not bbucket:
                continue
            target = obuckets[i + j]
            get = target.get
            for mb, cb in bbucket.items():
                high = mb << shift
                for ma, ca in abucket.items():
                    key = ma | high
                    val = get(key, 0) + ca * cb
                    if val:
                        target[key] = val
                    else:
                        del target[key]
    return out


def nc_inverse(a: NCPolynomial) -> NCPolynomial:
    """Inverse of a series with constant term 1 (truncated geometric series)."""
    if a.buckets[0] != {0: 1}:
        raise ValueError("nc_inverse requires constant term 1")
    degree = a.degree
    u = NCPolynomial(degree)
    u.buckets = [dict(b) for b in a.buckets]
    u.buckets[0] = {}
    if u.min_positive_degree() is None:
        return NCPolynomial.one(degree)
    # inv = 1 - u + u^2 - ...; the powers lose their low buckets to the
    # truncation, so each term is smaller than the last
    inv = NCPolynomial.one(degree)
    term = u
    sign = -1
    while any(term.buckets):
        for d, bucket in enumerate(term.buckets):
            target = inv.buckets[d]
            for mon, coeff in bucket.items():
                val = target.get(mon, 0) + sign * coeff
                if val:
                    target[mon] = val
                else:
                    del target[mon]
        term = nc_mul(term, u)
        sign = -sign
    return inv


# ---------------------------------------------------------------------------
# Magnus expansion of words


def _mul_letter(p: NCPolynomial, letter: int) -> NCPolynomial:
    """Multiply on the right by the Magnus image of one letter."""
    degree = p.degree
    gen = abs(letter)
    if not 1 <= gen <= MAX_GENERATOR:
        raise ValueError(f"generator index {gen} out of range 1..{MAX_GENERATOR}")
    out = NCPolynomial(degree)
    obuckets = out.buckets
    if letter > 0:
        # p * (1 + X)
        for d, bucket in enumerate(p.buckets):
            if not bucket:
                continue
            target = obuckets[d]
            for m, c in bucket.items():
                target[m] = target.get(m, 0) + c
            if d < degree:
                high = gen << (_SHIFT * d)
                target = obuckets[d + 1]
                get = target.get
                for m, c in bucket.items():
                    key = m | high
                    val = get(key, 0) + c
                    if val:
                        target[key] = val
                    else:
                        del target[key]
    else:
        # p * (1 - X + X^2 - ...)
        for d, bucket in enumerate(p.buckets):
            if not bucket:
                continue
            xpow = 0
            for j in range(degree - d + 1):
                sign = 1 if j % 2 == 0 else -1
                target = obuckets[d + j]
                get = target.get
                high = xpow << (_SHIFT * d)
                for m, c in bucket.items():
                    key = m | high
                    val = get(key, 0) + sign * c
                    if val:
                        target[key] = val
                    else:
                        del target[key]
                xpow = (xpow << _SHIFT) | gen
    for d in range(degree + 1):
        bucket = obuckets[d]
        zeros = [m for m, c in bucket.items() if not c]
        for m in zeros:
            del bucket[m]
    return out


def expand(word: Sequence[int], degree: int) -> NCPolynomial:
    """Magnus expansion of a word, truncated beyond ``degree``."""
    if degree < 1:
        raise ValueError("truncation degree must be >= 1")
    p = NCPolynomial.one(degree)
    for letter in word:
        p = _mul_letter(p, letter)
    return p


def lcs_degree(word: Sequence[int], degree: int) -> int | None:
    """Smallest d in 1..degree with a nonzero degree-d Magnus coefficient.

    Returns None when every coefficient of degree <= ``degree`` vanishes
    ("exceeds D"); then the word lies in F^(degree+1).  The empty word
    exceeds every bound.  Membership w in F^(k) is ``lcs_degree(w, k-1)
    is None`` for k >= 2.
    """
    if degree < 1:
        raise ValueError("truncation degree must be >= 1")
    if not word:
        return None
    # Stage the expansion so shallow words exit before paying for the
    # full truncation degree.
    cap = 1
    while True:
        cap = min(cap, degree)
        d = expand(word, cap).min_positive_degree()
        if d is not None:
            return d
        if cap == degree:
            return None
        cap *= 3


def lcs_at_least(word: Sequence[int], k: int) -> bool:
    """True iff the word lies in F^(k) (Magnus criterion)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1 or not word:
        return True
    return lcs_degree(word, k - 1) is None


def fox_coefficient(word: Sequence[int], indices: Sequence[int], degree: int | None = None) -> int:
    """Coefficient of X_{i1}...X_{ik} in the Magnus expansion.

    Equals the augmentation of the iterated Fox derivative d/dx_{i1}
    ... d/dx_{ik} of the word.  The result does not depend on the
    truncation degree as long as it is >= len(indices), so the expansion
    is computed at exactly that degree.
    """
    if degree is not None and len(indices) > degree:
        raise ValueError("index sequence longer than truncation degree")
    if not indices:
        return 1
    return expand(word, len(indices)).coefficient(indices)


# ---------------------------------------------------------------------------
# Milnor invariants from longitude words


@dataclass(frozen=True)
class LongitudeSystem:
    """Longitude words of a link, over its meridian generators 1..r."""

    components: int
    longitudes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.components < 1:
            raise ValueError("component count must be >= 1")
        if len(self.longitudes) != self.components:
            raise ValueError("need one longitude per component")
        reduced = tuple(reduce_word(w) for w in self.longitudes)
        object.__setattr__(self, "longitudes", reduced)
        for w in reduced:
            for letter in w:
                if abs(letter) > self.components:
                    raise ValueError(
                        f"longitude uses generator {abs(letter)} > {self.components}"
                    )


def milnor_invariant(system: LongitudeSystem, index: Sequence[int], reduced: bool = False) -> int:
    """Milnor invariant mu(i1 ... ik) as a Magnus coefficient.

    The raw value is the coefficient of X_{i1}...X_{i_{k-1}} in the
    expansion of the longitude of component i_k.  With ``reduced=True``
    the value is returned modulo the gcd of the invariants of all
    multi-indices obtained by deleting one index (length-1 invariants
    are 0 by convention, and a vanishing gcd means no reduction).
    """
    k = len(index)
    if k < 2:
        raise ValueError("multi-index must have length >= 2")
    for i in index:
        if not 1 <= i <= system.components:
            raise ValueError(f"component index {i} out of range 1..{system.components}")
    raw = fox_coefficient(system.longitudes[index[-1] - 1], tuple(index[:-1]))
    if not reduced:
        return raw
    modulus = 0
    for drop in range(k):
        sub = tuple(index[:drop]) + tuple(index[drop + 1:])
        if len(sub) >= 2:
            modulus = gcd(modulus, milnor_invariant(system, sub))
    return raw % modulus if modulus else raw


def milnor_vanish_upto(system: LongitudeSystem, n: int) -> bool:
    """True iff every raw Milnor invariant of length <= n+1 vanishes.

    Equivalent to every longitude lying in F^(n+1): an invariant of
    length k reads a degree-(k-1) coefficient of a longitude.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return all(lcs_at_least(w, n + 1) for w in system.longitudes)
