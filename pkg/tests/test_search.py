"""Enumeration and reconstruction: weight compositions, cover families,
the deficiency bound, joins, anchored search and second-code rebuilding."""

import itertools
from random import Random

import pytest
from polybox.alphabet import Alphabet
from polybox.core import (
    are_equivalent,
    binary_code_set,
    code_covered,
    cover_weight,
    density,
    is_covered,
    is_dichotomous,
    is_polybox_code,
    make_code,
    overlap_weight,
)
from polybox.catalog import special_pair
from polybox.iso import dedup_orbits, word_stabilizer
from polybox.moves import twin_pairs
from polybox.pbxio import parse_word
from polybox.search import (
    PruneContext,
    cover_bound,
    cover_code,
    cover_word,
    covers_containing,
    enumerate_minimal_covers,
    extensions,
    find_second_codes,
    standard_seeds,
    weight_compositions,
)

W = parse_word
V5 = W("bbbbb")


class TestWeightCompositions:
    def test_every_composition_balances(self):
        for dim in (2, 3, 5):
            for size in (2, 4, 7):
                for x in weight_compositions(dim, size):
                    assert sum(x) == size
                    assert sum(c << i for i, c in enumerate(x)) == 1 << dim

    def test_lowest_occupied_level_is_even(self):
        for x in weight_compositions(5, 9):
            first = next(i for i in range(5) if x[i])
            assert x[first] % 2 == 0

    def test_exhaustive_at_d2(self):
        assert set(weight_compositions(2, 2)) == {(0, 2)}
        assert set(weight_compositions(2, 3)) == {(2, 1)}
        assert set(weight_compositions(2, 4)) == {(4, 0)}


class TestCoverWord:
    def test_seed_pairs_are_twin_free_codes(self):
        for seed in standard_seeds():
            assert is_polybox_code(seed)
            assert not twin_pairs(seed)

    def test_class_counts_small(self):
        alphabet = Alphabet(2)
        stabilizer = word_stabilizer(V5, alphabet)
        expected = {5: 1, 6: 1, 7: 3}
        for size, count in expected.items():
            family = cover_word(V5, size, alphabet)
            assert len(dedup_orbits(family, stabilizer)) == count

    def test_outputs_are_twin_free_minimal_covers(self):
        alphabet = Alphabet(2)
        for cover in cover_word(V5, 6, alphabet):
            assert is_covered(V5, cover)
            assert not twin_pairs(cover)
            assert all(overlap_weight(c, V5) > 0 for c in cover)

    def test_weight_accounting(self):
        alphabet = Alphabet(2)
        for cover in cover_word(V5, 7, alphabet):
            assert sum(overlap_weight(c, V5) for c in cover) == 32
            for c in cover:
                b_count = sum(1 for s in c if s == 2)
                assert overlap_weight(c, V5) == 1 << b_count

    def test_layout_embedding_does_not_change_classes(self):
        alphabet = Alphabet(2)
        stabilizer = word_stabilizer(V5, alphabet)
        for size in (5, 6, 7):
            with_layouts = dedup_orbits(cover_word(V5, size, alphabet), stabilizer)
            without = dedup_orbits(
                cover_word(V5, size, alphabet, embed_layouts=False), stabilizer
            )
            assert set(with_layouts) == set(without)

    def test_agrees_with_direct_enumeration(self):
        alphabet = Alphabet(2)
        stabilizer = word_stabilizer(V5, alphabet)
        for size in (5, 6):
            seeded = cover_word(V5, size, alphabet)
            direct = enumerate_minimal_covers(V5, size, alphabet, twin_free=True)
            assert set(seeded) <= set(direct)
            assert set(dedup_orbits(seeded, stabilizer)) == set(
                dedup_orbits(direct, stabilizer)
            )

    def test_rejects_non_anchor_words(self):
        with pytest.raises(ValueError, match="anchored"):
            cover_word(W("aaaaa"), 5, Alphabet(2))


class TestEnumerateMinimalCovers:
    def test_small_cover_census_d2(self):
        alphabet = Alphabet(3)
        v = W("bb")
        fam = []
        for size in (2, 3, 4):
            fam.extend(enumerate_minimal_covers(v, size, alphabet))
        classes = dedup_orbits(fam, word_stabilizer(v, alphabet))
        assert len(classes) == 4

    def test_small_cover_census_d5(self):
        # the bundled list of four plus the two genuine higher-dimensional
        # classes; all verified against the realization oracle
        alphabet = Alphabet(3)
        fam = []
        for size in (2, 3, 4):
            fam.extend(enumerate_minimal_covers(V5, size, alphabet))
        classes = dedup_orbits(fam, word_stabilizer(V5, alphabet))
        assert len(classes) == 6

    def test_keep_filter_streams(self):
        alphabet = Alphabet(2)
        everything = enumerate_minimal_covers(V5, 5, alphabet, twin_free=True)
        filtered = enumerate_minimal_covers(
            V5, 5, alphabet, twin_free=True, keep=lambda c: c[0][0] == 0
        )
        assert set(filtered) == {c for c in everything if c[0][0] == 0}


class TestCoverBound:
    def test_nothing_left_but_uncovered(self):
        ctx = PruneContext(partial=(), target=(W("bb"),), pool=(), slots=0)
        assert cover_bound(ctx) == 0

    def test_documented_d2_instance(self):
        pool = tuple(
            sorted(itertools.product(range(4), repeat=2))
        )
        ctx = PruneContext(
            partial=make_code([W("ab")]), target=(W("bb"),), pool=pool, slots=1
        )
        assert cover_bound(ctx) == 1

    def test_soundness_on_random_small_instances(self):
        rng = Random(13)
        alphabet = Alphabet(2)
        for _ in range(80):
            dim = rng.choice((1, 2, 3))
            target_word = (2,) * dim
            every = sorted(itertools.product(alphabet.letters(), repeat=dim))
            meeting = [q for q in every if overlap_weight(q, target_word) > 0]
            rng.shuffle(meeting)
            partial = []
            for q in meeting:
                if len(partial) == 2:
                    break
                if all(is_dichotomous(q, v) for v in partial):
                    partial.append(q)
            partial = tuple(sorted(partial))
            slots = rng.randrange(0, 4)
            ctx = PruneContext(
                partial=partial, target=(target_word,), pool=tuple(every), slots=slots
            )
            exists = False
            for combo in itertools.combinations(
                [q for q in meeting if q not in partial], slots
            ):
                cand = partial + combo
                if is_polybox_code(cand) and is_covered(target_word, cand):
                    exists = True
                    break
            if exists:
                assert cover_bound(ctx) == 1


class TestCoverCode:
    def test_single_word_passthrough(self):
        fam = (make_code([W("ab"), W("a'b")]),)
        out = cover_code((W("bb"),), 4, {W("bb"): fam})
        assert out == fam

    def test_join_of_two_words(self):
        alphabet = Alphabet(2)
        v, w = W("bb"), W("b'b")
        fam_v = [c for c in enumerate_minimal_covers(v, 2, alphabet)]
        # covers of b'b: mirror of covers of bb through b<->b' at position 1
        def mirror(code):
            return tuple(
                sorted(tuple((s ^ 1 if s >> 1 == 1 and i == 0 else s) for i, s in enumerate(x)) for x in code)
            )
        fam_w = [mirror(c) for c in fam_v]
        joint = cover_code((v, w), 4, {v: fam_v, w: fam_w})
        assert joint
        for code in joint:
            assert is_polybox_code(code)
            assert code_covered((v, w), code)
            assert len(code) <= 4

    def test_every_word_needs_a_family(self):
        with pytest.raises(ValueError, match="family"):
            cover_code((W("bb"),), 4, {})


class TestCoversContaining:
    def test_anchor_already_covering(self):
        first, second = special_pair()
        res = covers_containing(first, second, 3, Alphabet(2))
        assert res.covers == (second,)

    def test_tiny_instance_equals_brute_force(self):
        alphabet = Alphabet(2)
        target = make_code([W("bb")])
        anchor = make_code([W("ab")])
        pool = sorted(itertools.product(range(4), repeat=2))
        for slots in (1, 2, 3):
            res = covers_containing(
                target, anchor, slots, alphabet, final_density_min=1
            )
            brute = set()
            usable = [
                q
                for q in pool
                if q not in anchor
                and overlap_weight(q, W("bb")) > 0
                and is_dichotomous(q, W("ab"))
            ]
            for combo in itertools.combinations(usable, slots):
                cand = tuple(sorted(anchor + combo))
                if is_polybox_code(cand) and is_covered(W("bb"), cand):
                    brute.add(cand)
            assert set(res.covers) == brute

    def test_reduced_scale_partner_reconstruction(self):
        first, second = special_pair()
        anchor = second[:-2]
        res = covers_containing(
            first, anchor, 2, Alphabet(2), final_density_min=4, lock_budget=20000
        )
        assert second in res.covers
        assert res.undecided_lock_tests == 0

    def test_anchor_words_must_meet_the_target(self):
        with pytest.raises(ValueError, match="meet"):
            covers_containing(
                make_code([W("bb")]), make_code([W("b'a")]), 1, Alphabet(2)
            )


class TestFindSecondCodes:
    def test_rebuild_dropped_word(self):
        first, second = special_pair()
        family = find_second_codes(second, first[:-1], Alphabet(2))
        assert family == (first,)

    def test_members_share_binary_codes(self):
        first, second = special_pair()
        for code in find_second_codes(second, first[:-1], Alphabet(2)):
            assert binary_code_set(code) == binary_code_set(second)
            assert are_equivalent(code, second)

    def test_every_drop_position_recovers(self):
        first, second = special_pair()
        for drop in (0, 5, 11):
            partial = tuple(w for i, w in enumerate(first) if i != drop)
            family = find_second_codes(second, partial, Alphabet(2))
            assert first in family

    def test_low_density_rejected(self):
        with pytest.raises(ValueError, match="sparse"):
            find_second_codes(
                make_code([W("aa"), W("a'a"), W("aa'"), W("a'a'")]),
                make_code([W("aa")]),
                Alphabet(2),
            )


class TestExtensions:
    def test_zero_extension(self):
        code = make_code([W("aa")])
        assert extensions(code, 0, Alphabet(2)) == (code,)

    def test_one_dimensional_forcing(self):
        code = make_code([W("a")])
        assert extensions(code, 1, Alphabet(2)) == (make_code([W("a"), W("a'")]),)

    def test_counts_match_brute_force_d2(self):
        alphabet = Alphabet(2)
        code = make_code([W("aa")])
        for count in (1, 2):
            out = extensions(code, count, alphabet)
            pool = [
                q
                for q in itertools.product(range(4), repeat=2)
                if q != W("aa") and is_dichotomous(q, W("aa"))
            ]
            brute = {
                tuple(sorted(code + combo))
                for combo in itertools.combinations(pool, count)
                if is_polybox_code(code + combo)
            }
            assert set(out) == brute

    def test_flat_constraint(self):
        alphabet = Alphabet(2)
        code = make_code([W("ab")])
        out = extensions(code, 1, alphabet, flat_constraint=(1, 2))
        assert all(added[1] == 2 for c in out for added in set(c) - set(code))
        assert out == (make_code([W("ab"), W("a'b")]),)
