"""Disjoint letter sets whose every nonempty subfamily deletion kills a word.

For a product of simple quasi-commutators of equal weight m+1, the
positions realizing entry i across all factors form the set C_i; the
C_1..C_{m+1} are disjoint, inserted canceling pairs belong to none of
them, and deleting the union of any nonempty subfamily frees the whole
word to the identity.  ``verify_family`` checks all 2^(m+1)-1 deletions
exhaustively rather than trusting the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .words import (
    TaggedWord,
    delete_letters,
    insert_canceling_pair,
    simple_commutator,
    successive_entry_check,
)


@dataclass(frozen=True)
class LetterSetFamily:
    """m+1 pairwise disjoint position sets into an unreduced tagged word."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.sets) < 2:
            raise ValueError("a family needs at least two sets")
        seen: set[int] = set()
        for s in self.sets:
            if seen & s:
                raise ValueError("letter sets must be pairwise disjoint")
            seen |= s

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    checked: int
    failing_subfamily: tuple[int, ...] | None = None
    failing_word: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def build_letter_sets(
    factors: Sequence[Sequence[int]],
    insertions: Sequence[tuple[int, int]] = (),
) -> tuple[TaggedWord, LetterSetFamily]:
    """Concatenate tagged commutator expansions and collect entry sets.

    All factors must have the same weight m+1; ``insertions`` is a list
    of (position, letter) canceling pairs applied in order to the
    growing concatenation (positions index the word as it stands when
    the insertion happens).  C_i collects every position whose tag is i;
    inserted letters carry no tag and land in no set.
    """
    if not factors:
        raise ValueError("need at least one factor")
    weights = {len(f) for f in factors}
    if len(weights) != 1:
        raise ValueError(f"factors have unequal weights {sorted(weights)}")
    (weight,) = weights
    if weight < 2:
        raise ValueError("factor weight must be >= 2")

    letters: list[int] = []
    tags: list[int | None] = []
    for entries in factors:
        expansion = simple_commutator(entries)
        letters.extend(expansion.letters)
        tags.extend(expansion.tags)
    tagged = TaggedWord(tuple(letters), tuple(tags))
    for position, letter in insertions:
        tagged = insert_canceling_pair(tagged, position, letter)

    family = LetterSetFamily(
        tuple(
            frozenset(i for i, t in enumerate(tagged.tags) if t == entry)
            for entry in range(1, weight + 1)
        )
    )
    return tagged, family


def verify_family(tagged: TaggedWord, family: LetterSetFamily) -> FamilyCheck:
    """Check that every nonempty subfamily deletion reduces to the identity.

    Walks all 2^(m+1)-1 nonempty subfamilies and reports the first one
    whose deletion leaves a nontrivial word.
    """
    indices = range(len(family))
    checked = 0
    for size in range(1, len(family) + 1):
        for chosen in combinations(indices, size):
            positions: set[int] = set()
            for i in chosen:
                positions |= family.sets[i]
            checked += 1
            leftover = delete_letters(tagged, positions)
            if leftover:
                return FamilyCheck(False, checked, chosen, leftover)
    return FamilyCheck(True, checked)


def extremal_entry_word(k: int, m: int) -> tuple[int, ...]:
    """Entry sequence with the bad-set-maximizing parity pattern.

    Generator 1 plays the band generator x0 and 1+i plays y_i.  The
    full period [x0, y1, y1, x0, x0, ..., yk, yk, x0, x0, y1, y1, ...,
    yk, yk] has length 6k+1; the sequence is cycled or truncated to
    weight m+1 and always passes the successive-entry check.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m + 1 < 3:
        raise ValueError("need weight m+1 >= 3")
    x0 = 1
    period: list[int] = [x0]
    for i in range(1, k + 1):
        period.extend((1 + i, 1 + i, x0, x0))
    for i in range(1, k + 1):
        period.extend((1 + i, 1 + i))
    entries = tuple(period[i % len(period)] for i in range(m + 1))
    if not successive_entry_check(entries):  # pragma: no cover - by construction
        raise RuntimeError("parity pattern violated the successive-entry bound")
    return entries
