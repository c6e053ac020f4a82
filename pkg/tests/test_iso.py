"""Code isomorphisms: group laws, action invariance, stabilizers,
canonical forms and orbit deduplication."""

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polybox.alphabet import Alphabet
from polybox.core import (
    code_covered,
    density,
    is_covered,
    is_dichotomous,
    is_simple,
    make_code,
    overlap_weight,
    twin_pair_direction,
)
from polybox.catalog import small_covers, special_pair
from polybox.iso import (
    Group,
    apply_code,
    apply_word,
    canonical_form,
    code_stabilizer,
    compose,
    dedup_orbits,
    element,
    full_group,
    greedy_relabel,
    identity,
    inverse,
    word_stabilizer,
)
from polybox.pbxio import parse_word
from strategies import codes

W = parse_word


def _random_element(group: Group, rng: Random):
    g = identity(group.alphabet, group.dim)
    for _ in range(rng.randrange(1, 8)):
        g = compose(rng.choice(group.generators), g)
    return g


class TestGroupLaws:
    @given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 4))
    @settings(max_examples=40, deadline=None)
    def test_compose_matches_sequential_application(self, seed, pairs, dim):
        rng = Random(seed)
        alphabet = Alphabet(pairs)
        group = full_group(alphabet, dim)
        g, h = _random_element(group, rng), _random_element(group, rng)
        v = tuple(rng.randrange(alphabet.size) for _ in range(dim))
        assert apply_word(compose(g, h), v) == apply_word(g, apply_word(h, v))

    @given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 4))
    @settings(max_examples=40, deadline=None)
    def test_inverse_undoes(self, seed, pairs, dim):
        rng = Random(seed)
        alphabet = Alphabet(pairs)
        group = full_group(alphabet, dim)
        g = _random_element(group, rng)
        v = tuple(rng.randrange(alphabet.size) for _ in range(dim))
        assert apply_word(inverse(g), apply_word(g, v)) == v

    def test_identity_fixes_codes(self):
        code, _ = special_pair()
        assert apply_code(identity(Alphabet(2), 4), code) == code

    def test_element_validation(self):
        with pytest.raises(ValueError, match="complement"):
            element((0,), ((0, 2, 1, 3),))
        with pytest.raises(ValueError, match="permutation"):
            element((0, 0), ((0, 1, 2, 3),) * 2)


class TestActionInvariance:
    @given(codes(max_dim=3), st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_predicates_preserved(self, data, seed):
        alphabet, code = data
        if len(code) < 2:
            return
        rng = Random(seed)
        group = full_group(alphabet, len(code[0]))
        g = _random_element(group, rng)
        image = apply_code(g, code)
        v, w = code[0], code[1]
        gv, gw = apply_word(g, v), apply_word(g, w)
        assert overlap_weight(gv, gw) == overlap_weight(v, w)
        assert is_dichotomous(gv, gw) == is_dichotomous(v, w)
        assert (twin_pair_direction(gv, gw) is None) == (
            twin_pair_direction(v, w) is None
        )
        assert is_covered(gv, image) == is_covered(v, code)
        assert is_simple(image) == is_simple(code)
        assert density(image, (gv,)) == density(code, (v,))

    def test_covering_transported(self):
        # swapping the first two letter pairs everywhere maps the two-word
        # cover of bbbbb onto a cover of aaaaa -- wait: b maps to a, so the
        # image covers the image word
        alphabet = Alphabet(3)
        swap = [2, 3, 0, 1, 4, 5]
        g = element(tuple(range(5)), (tuple(swap),) * 5)
        cover = small_covers()[3]
        image = apply_code(g, cover)
        assert is_covered(W("aaaaa"), image)


class TestStabilizers:
    def test_word_stabilizer_order(self):
        stab = word_stabilizer(W("bbbbb"), Alphabet(2))
        assert stab.order == 120 * 2**5

    def test_word_stabilizer_small_enumeration(self):
        alphabet = Alphabet(2)
        v = W("bb")
        stab = word_stabilizer(v, alphabet)
        elements = list(stab.elements())
        assert len(elements) == stab.order == 2 * 2 * 2
        assert all(apply_word(g, v) == v for g in elements)
        # generator walk reaches the same orbit as full enumeration
        code = make_code([W("ab"), W("a'b")])
        assert stab.orbit(code) == frozenset(
            apply_code(g, code) for g in elements
        )

    def test_full_group_generators_cover_the_group(self):
        alphabet = Alphabet(2)
        group = full_group(alphabet, 2)
        code = make_code([W("ab")])
        assert group.orbit(code) == frozenset(
            apply_code(g, code) for g in group.elements()
        )

    def test_identity_enumerated(self):
        stab = word_stabilizer(W("bb"), Alphabet(2))
        assert identity(Alphabet(2), 2) in set(stab.elements())

    def test_code_stabilizer_of_singleton_matches_word_stabilizer(self):
        alphabet = Alphabet(2)
        v = W("bb")
        from_code = set(code_stabilizer(make_code([v]), alphabet).elements())
        from_word = set(word_stabilizer(v, alphabet).elements())
        assert from_code == from_word

    def test_code_stabilizer_fix_or_swap(self):
        alphabet = Alphabet(2)
        pair = make_code([W("bbbbb"), W("b'b'b'bb")])
        elements = list(code_stabilizer(pair, alphabet).elements())
        assert all(apply_code(g, pair) == pair for g in elements)
        fixing = [g for g in elements if apply_word(g, pair[1]) == pair[1]]
        swapping = [g for g in elements if apply_word(g, pair[1]) == pair[0]]
        assert len(fixing) == len(swapping) == len(elements) // 2

    def test_code_stabilizer_closed_under_composition(self):
        alphabet = Alphabet(2)
        pair = make_code([W("bbbbb"), W("b'b'b'bb")])
        elements = list(code_stabilizer(pair, alphabet).elements())
        rng = Random(3)
        sample = [rng.choice(elements) for _ in range(6)]
        pool = set(elements)
        for g in sample[:3]:
            for h in sample[3:]:
                assert compose(g, h) in pool


class TestCanonicalForms:
    def test_idempotent(self):
        stab = word_stabilizer(W("bbbbb"), Alphabet(3))
        for cover in small_covers():
            canonical = canonical_form(cover, stab)
            assert canonical_form(canonical, stab) == canonical

    def test_constant_on_orbits(self):
        alphabet = Alphabet(2)
        stab = word_stabilizer(W("bbbbb"), alphabet)
        cover = small_covers()[0]
        rng = Random(5)
        for _ in range(5):
            g = _random_element(stab, rng)
            assert canonical_form(apply_code(g, cover), stab) == canonical_form(
                cover, stab
            )

    def test_small_cover_dedup(self):
        alphabet = Alphabet(3)
        stab = word_stabilizer(W("bbbbb"), alphabet)
        family = []
        rng = Random(9)
        for cover in small_covers():
            family.append(cover)
            for _ in range(3):
                family.append(apply_code(_random_element(stab, rng), cover))
        assert len(dedup_orbits(family, stab)) == 4

    def test_orbit_stabilizer_consistency(self):
        alphabet = Alphabet(2)
        v = W("bb")
        stab = word_stabilizer(v, alphabet)
        code = make_code([W("ab"), W("a'b")])
        orbit = stab.orbit(code)
        fixing = sum(
            1 for g in stab.elements() if apply_code(g, code) == code
        )
        assert len(orbit) * fixing == stab.order

    def test_greedy_relabel_deterministic_not_canonical(self):
        code = make_code([W("cb"), W("c'b")])
        relabelled = greedy_relabel(code)
        assert relabelled == make_code([W("aa"), W("a'a")])
        assert greedy_relabel(relabelled) == relabelled
