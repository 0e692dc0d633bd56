"""Builders for synthetic certificates with known verdicts.

These constructions realize each certificate kind at desk scale: deep
memberships are witnessed by balanced commutators of conjugates of the
closure generators, which keep the pushoff words short (the q-value of
a word at depth m forces m+1 >= 6q, so q-values above 2 need
astronomically long words and are out of reach for any checker).  The
builders double as the reference corpus shipped with the CLI and as
the mutation-testing population.
"""

from __future__ import annotations

import random
from typing import Sequence

from .certify import (
    Curve,
    FLAG_ADMISSIBLE,
    FLAG_REGULAR_SPINE,
    FLAG_UNRELATED,
    SurfaceCertificate,
    UnknottedFactors,
    x_generator,
    y_generator,
)
from .words import commutator_word, concat, conjugate, invert


def bracket(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return concat(u, v, invert(u), invert(v))


def nest(*parts: Sequence[int]) -> tuple[int, ...]:
    """Left-normed bracket of whole words."""
    out = tuple(parts[0])
    for p in parts[1:]:
        out = bracket(out, p)
    return out


def closure_letters(base: int, conjugator: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two Schreier generators of the closure of ``base``: s and t s t^-1."""
    return (base,), conjugate((base,), (conjugator,))


def deep_closure_word(base: int, conjugator: int) -> tuple[int, ...]:
    """A word of the closure of ``base`` with closure lcs degree exactly 12.

    Bracket of two weight-6 balanced commutators in the Schreier letters
    s and t s t^-1; the two degree-6 Lie elements are independent, so
    the degree-12 bracket survives.
    """
    a, b = closure_letters(base, conjugator)
    c6 = bracket(nest(a, b, a), nest(b, a, b))
    c6p = bracket(nest(b, a, b, a), nest(b, a))
    return bracket(c6, c6p)


def mid_closure_word(base: int, conjugator: int) -> tuple[int, ...]:
    """A word of the closure of ``base`` with closure lcs degree exactly 6."""
    a, b = closure_letters(base, conjugator)
    return bracket(nest(a, b, a), nest(b, a, b))


def pair_commutator(index: int, weight: int) -> tuple[int, ...]:
    """Left-normed commutator of the given weight alternating x_i, y_i."""
    entries = tuple(
        x_generator(index) if j % 2 == 0 else y_generator(index) for j in range(weight)
    )
    return commutator_word(entries)


def hyperbolic_example(genus: int, n: int, conjugated: bool = True) -> SurfaceCertificate:
    """n-hyperbolic certificate: stage-i pushoff is a weight-(n+1) nest
    on the pair duals, conjugated by earlier duals killed at that stage."""
    curves = []
    for i in range(1, genus + 1):
        word = pair_commutator(i, n + 1)
        if conjugated and i > 1:
            word = conjugate(word, (x_generator(i - 1),))
        curves.append(Curve(name=f"a{i}", role="A", index=i, pushoff_plus=word))
        curves.append(
            Curve(name=f"b{i}", role="B", index=i, pushoff_plus=pair_commutator(i, n + 1))
        )
    return SurfaceCertificate(
        kind="hyperbolic",
        genus=genus,
        n=n,
        curves=tuple(curves),
        asserted_flags=(FLAG_REGULAR_SPINE, FLAG_ADMISSIBLE),
    )


def elliptic_example() -> SurfaceCertificate:
    """2-elliptic certificate of genus 1: q_A + q_B = 2 + 1 = 3."""
    w_a = deep_closure_word(x_generator(1), y_generator(1))
    w_b = mid_closure_word(y_generator(1), x_generator(1))
    curves = (
        Curve(name="a1", role="A", index=1, pushoff_plus=w_a, m=11),
        Curve(name="b1", role="B", index=1, pushoff_minus=w_b, m=5),
    )
    return SurfaceCertificate(
        kind="elliptic",
        genus=1,
        n=2,
        curves=curves,
        asserted_flags=(FLAG_REGULAR_SPINE, FLAG_UNRELATED),
    )


def parabolic_example() -> SurfaceCertificate:
    """2-parabolic certificate of genus 1 with simplicity 1: q_B + 1 = 3."""
    w_b = deep_closure_word(y_generator(1), x_generator(1))
    curves = (
        Curve(name="a1", role="A", index=1, pushoff_plus=(x_generator(1),) * 2),
        Curve(name="b1", role="B", index=1, pushoff_plus=w_b, m=11),
    )
    return SurfaceCertificate(
        kind="parabolic",
        genus=1,
        n=2,
        curves=curves,
        asserted_flags=(FLAG_REGULAR_SPINE, FLAG_UNRELATED, "simplicity=1"),
    )


def vacuous_parabolic_example(n: int = 3, s: int = 3) -> SurfaceCertificate:
    """Parabolic certificate with n <= s: the word conditions are vacuous."""
    if n > s:
        raise ValueError("vacuous example needs n <= s")
    curves = (
        Curve(name="a1", role="A", index=1, pushoff_plus=(x_generator(1),)),
        Curve(name="b1", role="B", index=1, pushoff_plus=(y_generator(1),), m=1),
    )
    return SurfaceCertificate(
        kind="parabolic",
        genus=1,
        n=n,
        curves=curves,
        asserted_flags=(FLAG_REGULAR_SPINE, FLAG_UNRELATED, f"simplicity={s}"),
    )


def unknotted_example() -> SurfaceCertificate:
    """2-unknotted certificate of genus 1, chi-flavored.

    Both pushoffs are pure chi factors with q_chi_A + q_chi_B = 3; the
    exclusion pattern then forces mu, zeta and x^l trivial.
    """
    chi_a = deep_closure_word(x_generator(1), y_generator(1))
    chi_b = mid_closure_word(y_generator(1), x_generator(1))
    curves = (
        Curve(
            name="a1",
            role="A",
            index=1,
            pushoff_plus=chi_a,
            factors=UnknottedFactors(x_exponent=0, chi=chi_a, m_chi=11),
        ),
        Curve(
            name="b1",
            role="B",
            index=1,
            pushoff_minus=chi_b,
            factors=UnknottedFactors(chi=chi_b, m_chi=5),
        ),
    )
    return SurfaceCertificate(
        kind="unknotted",
        genus=1,
        n=2,
        curves=curves,
        asserted_flags=(FLAG_REGULAR_SPINE, "simplicity=1"),
    )


def twist_unknotted_example(n: int = 4, s: int = 1) -> SurfaceCertificate:
    """n-unknotted certificate whose pairs are pure band twists.

    [gamma_A] = x_A^2 and [gamma_B] = 1 satisfy the definition at every
    level with all q-equations vacuous; this is the family the
    level-shift translation acts on at desk scale.
    """
    curves = (
        Curve(
            name="a1",
            role="A",
            index=1,
            pushoff_plus=(x_generator(1),) * 2,
            factors=UnknottedFactors(x_exponent=2),
        ),
        Curve(
            name="b1",
            role="B",
            index=1,
            pushoff_minus=(),
            factors=UnknottedFactors(),
        ),
    )
    return SurfaceCertificate(
        kind="unknotted",
        genus=1,
        n=n,
        curves=curves,
        asserted_flags=(FLAG_REGULAR_SPINE, f"simplicity={s}"),
    )


def spine_example(genus: int, n: int) -> SurfaceCertificate:
    """Certificate whose 2g pushoffs are weight-(n+1) pair commutators."""
    return hyperbolic_example(genus, n, conjugated=False)


# ---------------------------------------------------------------------------
# Mutation testing support


def checked_words(cert: SurfaceCertificate) -> list[tuple[str, str]]:
    """(curve name, field) pairs for the words the verifier conditions read."""
    out = []
    for curve in cert.curves:
        if cert.kind == "hyperbolic" and curve.role != "A":
            continue
        if cert.kind == "parabolic" and curve.role != "B":
            continue
        if curve.pushoff_plus:
            out.append((curve.name, "pushoff_plus"))
        if curve.pushoff_minus:
            out.append((curve.name, "pushoff_minus"))
    return out


def mutate_certificate(
    cert: SurfaceCertificate, rng: random.Random
) -> SurfaceCertificate:
    """Substitute one letter of one checked pushoff word by another letter.

    For unknotted certificates the matching factor word is edited in
    step, so the mutation tests the membership conditions rather than
    only the factorization product.
    """
    targets = checked_words(cert)
    name, field = rng.choice(targets)
    curves = []
    for curve in cert.curves:
        if curve.name != name:
            curves.append(curve)
            continue
        word = getattr(curve, field)
        pos = rng.randrange(len(word))
        alphabet = [g for g in range(1, 2 * cert.genus + 1)]
        choices = [s * g for g in alphabet for s in (1, -1) if s * g != word[pos]]
        letter = rng.choice(choices)
        mutated = tuple(word[:pos] + (letter,) + word[pos + 1:])
        fields = {
            "name": curve.name,
            "role": curve.role,
            "index": curve.index,
            "pushoff_plus": curve.pushoff_plus,
            "pushoff_minus": curve.pushoff_minus,
            "m": curve.m,
            "pair": curve.pair,
            "factors": curve.factors,
        }
        fields[field] = mutated
        if curve.factors is not None and curve.factors.chi == word:
            fields["factors"] = UnknottedFactors(
                x_exponent=curve.factors.x_exponent,
                chi=mutated,
                mu=curve.factors.mu,
                zeta=curve.factors.zeta,
                m_mu=curve.factors.m_mu,
                m_chi=curve.factors.m_chi,
                m_zeta=curve.factors.m_zeta,
            )
        curves.append(Curve(**fields))
    return SurfaceCertificate(
        kind=cert.kind,
        genus=cert.genus,
        n=cert.n,
        curves=tuple(curves),
        asserted_flags=cert.asserted_flags,
    )
