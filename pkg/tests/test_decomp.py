import pytest

from knotcert.decomp import decompose, expand_commutator, lie_component
from knotcert.lyndon import (
    bracketing,
    is_lyndon,
    left_normed_combination,
    left_normed_form,
    left_normed_lie_polynomial,
    lie_coordinates,
    lyndon_lie_polynomial,
    lyndon_words,
    standard_factorization,
)
from knotcert.magnus import expand, lcs_degree
from knotcert.words import commutator_word, concat, conjugate, invert, reduce_word


class TestLyndonWords:
    def test_counts_two_letters(self):
        # necklace counts over a binary alphabet
        for length, count in [(1, 2), (2, 1), (3, 2), (4, 3), (5, 6), (6, 9)]:
            words = lyndon_words((1, 2), length)
            assert len(words) == count
            assert words == sorted(words)
            assert all(is_lyndon(w) for w in words)

    def test_rejects_non_lyndon(self):
        assert not is_lyndon((2, 1))
        assert not is_lyndon((1, 2, 1, 2))
        assert not is_lyndon(())

    def test_standard_factorization(self):
        assert standard_factorization((1, 1, 2)) == ((1,), (1, 2))
        assert standard_factorization((1, 2, 2)) == ((1, 2), (2,))

    def test_bracketing_shape(self):
        assert bracketing((1, 1, 2)) == (1, (1, 2))
        assert bracketing((1, 2, 2)) == ((1, 2), 2)


class TestTriangularity:
    def test_leading_coefficient(self):
        for degree in range(2, 7):
            for u in lyndon_words((1, 2, 3), degree):
                poly = lyndon_lie_polynomial(u)
                assert poly[u] == 1
                assert min(poly) == u

    def test_left_normed_form_matches_lie_element(self):
        for degree in range(2, 6):
            for u in lyndon_words((1, 2, 3), degree):
                total = {}
                for entries, c in left_normed_form(u).items():
                    for mon, pc in left_normed_lie_polynomial(entries).items():
                        total[mon] = total.get(mon, 0) + c * pc
                        if not total[mon]:
                            del total[mon]
                assert total == lyndon_lie_polynomial(u)

    def test_lie_coordinates_roundtrip(self, rng):
        for _ in range(25):
            degree = rng.randint(2, 5)
            basis = lyndon_words((1, 2), degree)
            combo = {}
            for _ in range(rng.randint(1, 3)):
                u = rng.choice(basis)
                c = rng.choice([-2, -1, 1, 2, 3])
                combo[u] = combo.get(u, 0) + c
            combo = {k: v for k, v in combo.items() if v}
            element = {}
            for u, c in combo.items():
                for mon, pc in lyndon_lie_polynomial(u).items():
                    element[mon] = element.get(mon, 0) + c * pc
                    if not element[mon]:
                        del element[mon]
            assert dict(lie_coordinates(element)) == combo

    def test_non_lie_element_detected(self):
        with pytest.raises(RuntimeError):
            lie_coordinates({(2, 1): 1})  # yx alone is not a Lie element

    def test_left_normed_combination_drops_degenerate(self):
        out = left_normed_combination({(1, 2): 1, (2, 1): -1})
        assert out == {(1, 2): 1}


class TestExpandCommutator:
    def test_matches_letterwise(self):
        for entries in [(1, 2), (1, 2, 3), (2, 1, 3, 1), (1, 2, 1, 2), (1, 2, 3, 2)]:
            degree = len(entries) + 1
            assert expand_commutator(entries, degree) == expand(
                commutator_word(entries), degree
            )

    def test_weight_realized(self):
        for weight in range(2, 7):
            entries = tuple(range(1, weight + 1))
            assert expand_commutator(entries, weight).min_positive_degree() == weight


class TestLieComponent:
    def test_commutator(self):
        assert lie_component(commutator_word((1, 2)), 2) == {(1, 2): 1, (2, 1): -1}

    def test_empty(self):
        assert lie_component((), 3) == {}

    def test_square(self):
        w = concat(commutator_word((1, 2)), commutator_word((1, 2)))
        assert lie_component(w, 2) == {(1, 2): 2, (2, 1): -2}

    def test_too_shallow(self):
        with pytest.raises(ValueError):
            lie_component((1,), 2)


def random_f3_element(rng):
    parts = []
    for _ in range(rng.randint(1, 2)):
        entries = tuple(rng.choice([1, 2, 3]) for _ in range(3))
        conj = tuple(
            rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(0, 4))
        )
        parts.append(conjugate(commutator_word(entries), conj))
    return reduce_word([letter for p in parts for letter in p])


class TestDecompose:
    def test_single_commutator(self):
        comb = decompose(commutator_word((1, 2)), 1, 2)
        assert comb.factors == (((1, 2), 1),)
        assert comb.residual == ()
        assert comb.valid_mod_degree == 2

    def test_two_factor_product(self):
        w = concat(commutator_word((1, 2)), commutator_word((2, 3)))
        comb = decompose(w, 1, 2)
        assert len(comb.factors) == 2
        assert lcs_degree(comb.residual, 2) is None

    def test_inverse_factor(self):
        comb = decompose(invert(commutator_word((1, 2))), 1, 2)
        assert comb.factors == (((1, 2), -1),)

    def test_conjugated_weight3(self, rng):
        for _ in range(8):
            w = conjugate(commutator_word((1, 2, 3)), (rng.choice([1, -2, 3]), rng.choice([2, -1])))
            comb = decompose(w, 2, 5)
            # residual is trivial through degree 5 by the Magnus check
            assert lcs_degree(comb.residual, 5) is None
            # exact group identity: w = product * residual
            assert reduce_word(comb.product_word() + comb.residual) == w

    def test_already_simple_stays_single_at_lead(self, rng):
        for entries in [(1, 2, 3), (2, 3, 1), (1, 3, 2)]:
            comb = decompose(commutator_word(entries), 2, 3)
            weight3 = [f for f in comb.factors if len(f[0]) == 3]
            assert len(weight3) == 1

    def test_precondition(self):
        with pytest.raises(ValueError):
            decompose((1,), 1, 3)
        with pytest.raises(ValueError):
            decompose(commutator_word((1, 2)), 2, 3)

    def test_degree_window(self):
        with pytest.raises(ValueError):
            decompose(commutator_word((1, 2)), 1, 1)

    def test_empty_word(self):
        comb = decompose((), 1, 4)
        assert comb.factors == () and comb.residual == ()

    def test_residual_exact_identity(self, rng):
        for _ in range(10):
            w = random_f3_element(rng)
            if lcs_degree(w, 2) is not None:
                continue
            comb = decompose(w, 2, 4)
            assert reduce_word(comb.product_word() + comb.residual) == w
            assert lcs_degree(comb.residual, 4) is None


class TestSingleFactorWithSigns:
    def test_signed_nest_is_one_factor(self):
        # the nest on (x, y^-1, x) matches a single positive-alphabet
        # left-normed bracket with exponent -1
        for entries in [(1, -2, 1), (2, 1, -2, 1), (-1, 2, 2, 1)]:
            word = commutator_word(entries)
            weight = len(entries)
            comb = decompose(word, weight - 1, weight)
            lead = [f for f in comb.factors if len(f[0]) == weight]
            assert len(lead) == 1, (entries, comb.factors)

    def test_commutator_square_two_copies(self):
        w = concat(commutator_word((1, 2)), commutator_word((1, 2)))
        comb = decompose(w, 1, 2)
        assert comb.factors == (((1, 2), 1), ((1, 2), 1))


class TestDeterminism:
    def test_repeat_runs_identical(self, rng):
        for _ in range(5):
            w = random_f3_element(rng)
            first = decompose(w, 2, 4)
            second = decompose(w, 2, 4)
            assert first == second
