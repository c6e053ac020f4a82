"""Enumeration and reconstruction of covers.

The workhorses:

* ``cover_word`` builds the twin-pair-free minimal covers of the constant
  word ``b...b`` of a given size.  Every such cover contains a pair of
  words that agree or are complementary at every position (complementary
  at an odd number of at least three of them), and cover words never carry
  the complement of ``b``, so each word contributes a power-of-two weight
  given by its count of ``b``-s.  The enumeration therefore runs over
  weight compositions, seeds each with one of the standard pairs and grows
  level by level over precomputed compatibility bitmasks.
* ``enumerate_minimal_covers`` is a direct depth-first enumeration of
  minimal covers with no seeding assumptions; it doubles as an
  independent cross-check for ``cover_word`` and handles covers that are
  allowed to contain twin pairs.
* ``cover_code`` joins per-word cover families into covers of a code,
  ``covers_containing`` grows covers anchored at a mandatory subcode with
  the fast deficiency bound, and ``find_second_codes`` rebuilds the
  partner of a partially known equivalent code from its binary codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .alphabet import Alphabet
from .core import (
    Code,
    Word,
    binary_code,
    binary_code_set,
    code_covered,
    cover_weight,
    density,
    is_covered,
    is_dichotomous,
    make_code,
    overlap_weight,
)
from .moves import DEFAULT_STATE_BUDGET, Verdict, is_locked_cover_code

ANCHOR_LETTER = 2  # the letter written ``b``


def weight_compositions(dim: int, size: int) -> tuple[tuple[int, ...], ...]:
    """Vectors ``x`` with ``sum(x[i] * 2**i) == 2**dim`` and ``sum(x) == size``;
    the feasible level profiles of a minimal cover."""
    out: list[tuple[int, ...]] = []

    def rec(level: int, weight_left: int, words_left: int, acc: list[int]) -> None:
        if level == dim:
            if weight_left == 0 and words_left == 0:
                out.append(tuple(acc))
            return
        unit = 1 << level
        for count in range(min(words_left, weight_left // unit) + 1):
            rec(level + 1, weight_left - count * unit, words_left - count, acc + [count])

    rec(0, 1 << dim, size, [])
    return tuple(out)


def standard_seeds(dim: int = 5) -> tuple[Code, ...]:
    """The four anchor pairs every twin-pair-free cover can be mapped onto:
    three complementary positions with tail letters aa / ab / bb, or five
    complementary positions."""
    if dim != 5:
        raise ValueError("standard seeds are defined for dimension 5")
    a, ap, b = 0, 1, ANCHOR_LETTER
    return (
        ((a, a, a, a, a), (ap, ap, ap, a, a)),
        ((a, a, a, a, b), (ap, ap, ap, a, b)),
        ((a, a, a, b, b), (ap, ap, ap, b, b)),
        ((a, a, a, a, a), (ap, ap, ap, ap, ap)),
    )


# pools and compatibility bitmasks ----------------------------------------

@dataclass(frozen=True)
class _Pool:
    words: tuple[Word, ...]
    level_masks: tuple[int, ...]
    dichotomous: tuple[int, ...]
    twin_free: tuple[int, ...]
    weights: tuple[int, ...]


def _pack_rows(matrix: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return tuple(
        int.from_bytes(row.tobytes(), "little") for row in packed
    )


@lru_cache(maxsize=8)
def _cover_pool(pair_count: int, dim: int) -> _Pool:
    """Candidate words for covers of ``b...b``: everything without the
    complement of ``b`` and not the word itself, graded by ``b``-count."""
    letters = [s for s in range(2 * pair_count) if s != ANCHOR_LETTER ^ 1]
    words = sorted(
        w
        for w in itertools.product(letters, repeat=dim)
        if any(s != ANCHOR_LETTER for s in w)
    )
    arr = np.array(words, dtype=np.int16)
    count = len(words)
    levels = (arr == ANCHOR_LETTER).sum(axis=1)
    level_masks = [0] * dim
    for idx in range(count):
        level_masks[int(levels[idx])] |= 1 << idx
    dich_bits: list[int] = []
    twinfree_bits: list[int] = []
    step = max(1, (1 << 22) // max(count, 1))
    for start in range(0, count, step):
        block = arr[start : start + step]
        comp = (block[:, None, :] ^ 1) == arr[None, :, :]
        diff = (block[:, None, :] != arr[None, :, :]).sum(axis=2)
        dich = comp.any(axis=2)
        twin_free = dich & (diff != 1)
        dich_bits.extend(_pack_rows(dich))
        twinfree_bits.extend(_pack_rows(twin_free))
    return _Pool(
        words=tuple(words),
        level_masks=tuple(level_masks),
        dichotomous=tuple(dich_bits),
        twin_free=tuple(twinfree_bits),
        weights=tuple(1 << int(l) for l in levels),
    )


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _seed_placements(seed: Code, embed_layouts: bool) -> tuple[Code, ...]:
    """Position-permuted images of the seed, deduplicated."""
    if not embed_layouts:
        return (seed,)
    dim = len(seed[0])
    out = {
        tuple(sorted(tuple(w[p] for p in perm) for w in seed))
        for perm in itertools.permutations(range(dim))
    }
    return tuple(sorted(out))


def cover_word(
    u: Word,
    size: int,
    alphabet: Alphabet,
    seeds: Sequence[Code] | None = None,
    embed_layouts: bool = True,
    resume: tuple[int, int] | None = None,
) -> tuple[Code, ...]:
    """All twin-pair-free minimal covers of ``u = b...b`` with ``size``
    words that contain a (possibly position-permuted) seed pair.

    Up to isomorphisms fixing ``u`` this is every cover of that size; the
    family is complete outright once expanded by the word stabilizer.

    A ``resume`` cursor ``(composition_index, seed_index)`` skips all
    (composition, seed) units before it, so an interrupted long run can be
    continued and the partial families merged."""
    dim = len(u)
    if any(s != ANCHOR_LETTER for s in u):
        raise ValueError("cover enumeration is anchored at the constant word b...b")
    if alphabet.pair_count < 2:
        raise ValueError("need at least two letter pairs")
    if size < 2:
        raise ValueError("seeded covers have at least two words")
    pool = _cover_pool(alphabet.pair_count, dim)
    index = {w: i for i, w in enumerate(pool.words)}
    if seeds is None:
        seeds = standard_seeds(dim)
    seeds = [make_code(seed) for seed in seeds]
    seed_levels = []
    for seed in seeds:
        (level,) = {sum(1 for s in w if s == ANCHOR_LETTER) for w in seed}
        seed_levels.append(level)
    found: set[frozenset[int]] = set()
    for ci, x in enumerate(weight_compositions(dim, size)):
        if resume is not None and ci < resume[0]:
            continue
        support = [i for i in range(dim) if x[i] > 0]
        first = support[0]
        # the lowest occupied level always holds an even number of words
        assert x[first] % 2 == 0, x
        for si, (seed, level) in enumerate(zip(seeds, seed_levels)):
            if resume is not None and ci == resume[0] and si < resume[1]:
                continue
            if level != first:
                continue
            for placement in _seed_placements(seed, embed_layouts):
                try:
                    ids = [index[w] for w in placement]
                except KeyError:
                    continue
                allowed = pool.twin_free[ids[0]] & pool.twin_free[ids[1]]
                remaining: list[int] = []
                for lvl in support:
                    extra = x[lvl] - (2 if lvl == first else 0)
                    remaining.extend([lvl] * extra)
                _grow(
                    tuple(ids), allowed, tuple(remaining), pool, found.add,
                    twin_free=True,
                )
    return tuple(sorted(tuple(sorted(pool.words[i] for i in ids)) for ids in found))


def _grow(
    base: tuple[int, ...],
    allowed: int,
    level_seq: tuple[int, ...],
    pool: _Pool,
    collect,
    twin_free: bool,
) -> None:
    """Fill the remaining level multiset over the compatibility masks.

    Levels are taken heaviest first and every pick forward-checks that all
    later levels still have enough compatible candidates.  Each index set
    is produced exactly once per level profile."""
    if not level_seq:
        collect(frozenset(base))
        return
    compat = pool.twin_free if twin_free else pool.dichotomous
    masks = pool.level_masks
    groups: list[tuple[int, int]] = []
    for level in sorted(set(level_seq), reverse=True):
        groups.append((level, level_seq.count(level)))

    def feasible(mask: int, after: int) -> bool:
        for level, need in groups[after:]:
            if (mask & masks[level]).bit_count() < need:
                return False
        return True

    def pick(gi: int, candidates: int, mask: int, need: int, chosen: tuple[int, ...]) -> None:
        if need == 0:
            if gi + 1 == len(groups):
                collect(frozenset(chosen))
            else:
                level, count = groups[gi + 1]
                pick(gi + 1, mask & masks[level], mask, count, chosen)
            return
        while candidates:
            low = candidates & -candidates
            idx = low.bit_length() - 1
            candidates ^= low
            nmask = mask & compat[idx]
            if need > 1 and (candidates & nmask).bit_count() < need - 1:
                continue
            if not feasible(nmask, gi + 1):
                continue
            pick(gi, candidates & nmask, nmask, need - 1, chosen + (idx,))

    level, count = groups[0]
    if feasible(allowed, 0):
        pick(0, allowed & masks[level], allowed, count, base)


def enumerate_minimal_covers(
    u: Word,
    size: int,
    alphabet: Alphabet,
    twin_free: bool = False,
    keep=None,
) -> tuple[Code, ...]:
    """Every minimal cover of ``u = b...b`` with exactly ``size`` words,
    by direct depth-first search with weight pruning; no seeding and no
    structural assumptions.  A ``keep`` predicate filters covers as they
    stream out, keeping memory flat for large families."""
    dim = len(u)
    if any(s != ANCHOR_LETTER for s in u):
        raise ValueError("cover enumeration is anchored at the constant word b...b")
    if size < 2:
        raise ValueError("direct enumeration expects at least two words")
    pool = _cover_pool(alphabet.pair_count, dim)
    full = (1 << len(pool.words)) - 1
    out: list[Code] = []

    def collect(ids: frozenset[int]) -> None:
        code = tuple(sorted(pool.words[i] for i in ids))
        if keep is None or keep(code):
            out.append(code)

    for x in weight_compositions(dim, size):
        level_seq = tuple(
            level for level in range(dim) for _ in range(x[level])
        )
        _grow((), full, level_seq, pool, collect, twin_free=twin_free)
    return tuple(sorted(out))


# covers of codes ----------------------------------------------------------

def _cross_code(left: frozenset[Word], right: frozenset[Word]) -> bool:
    for v in left - right:
        for w in right - left:
            if not is_dichotomous(v, w):
                return False
    return True


def cover_code(
    code: Code,
    max_size: int,
    families: Mapping[Word, Iterable[Code]],
) -> tuple[Code, ...]:
    """All covers of the code (of at most ``max_size`` words) obtained by
    joining one cover per word; overlapping joins are looked up through a
    shared-word index when the size cap forces an overlap."""
    words = sorted(code)
    if not words:
        raise ValueError("cannot cover an empty code")
    for u in words:
        if u not in families or not families[u]:
            raise ValueError("every word needs a non-empty cover family")
    current = {frozenset(c) for c in families[words[0]] if len(c) <= max_size}
    for u in words[1:]:
        fam = sorted({frozenset(c) for c in families[u]}, key=sorted)
        fam = [d for d in fam if len(d) <= max_size]
        min_len = min((len(d) for d in fam), default=0)
        by_word: dict[Word, list[int]] = {}
        for pos, d in enumerate(fam):
            for w in d:
                by_word.setdefault(w, []).append(pos)
        new: set[frozenset[Word]] = set()
        for partial in current:
            if len(partial) + min_len > max_size:
                seen_ids: set[int] = set()
                for w in partial:
                    seen_ids.update(by_word.get(w, ()))
                candidates = [fam[i] for i in sorted(seen_ids)]
            else:
                candidates = fam
            for d in candidates:
                union = partial | d
                if len(union) <= max_size and _cross_code(partial, d):
                    new.add(union)
        current = new
    return tuple(sorted(tuple(sorted(c)) for c in current))


# deficiency bound ---------------------------------------------------------

@dataclass(frozen=True)
class PruneContext:
    """A partial cover ``partial`` of ``target``, a candidate pool and the
    number of words still allowed."""

    partial: Code
    target: Code
    pool: tuple[Word, ...]
    slots: int


def candidate_pool(ctx: PruneContext) -> tuple[Word, ...]:
    """Pool words that extend the partial code and meet the target."""
    out = []
    for q in ctx.pool:
        if q in ctx.partial:
            continue
        if cover_weight(q, ctx.target) == 0:
            continue
        if all(is_dichotomous(q, v) for v in ctx.partial):
            out.append(q)
    return tuple(out)


def cover_bound(ctx: PruneContext) -> int:
    """1 when the ``slots`` heaviest candidates could still make up the
    uncovered weight of the target, 0 when they provably cannot.  Never 0
    if a completion exists: each added word contributes exactly its own
    weight against the target."""
    if not ctx.target:
        raise ValueError("bound needs a non-empty target")
    dim = len(ctx.target[0])
    deficiency = sum((1 << dim) - cover_weight(v, ctx.partial) for v in ctx.target)
    weights = sorted(
        (cover_weight(q, ctx.target) for q in candidate_pool(ctx)), reverse=True
    )
    reachable = sum(weights[: ctx.slots])
    return 1 if reachable >= deficiency else 0


# anchored cover search ----------------------------------------------------

@dataclass(frozen=True)
class CoverSearchResult:
    covers: tuple[Code, ...]
    undecided_lock_tests: int
    lock_budget: int


def covers_containing(
    target: Code,
    anchor: Code,
    slots: int,
    alphabet: Alphabet,
    lock_threshold: int = 5,
    final_density_min: int = 4,
    lock_budget: int = DEFAULT_STATE_BUDGET,
) -> CoverSearchResult:
    """Minimal covers of ``target`` containing the ``anchor`` code, grown
    word by word with the deficiency bound.

    Partials that already cover the target so tightly that no flip
    sequence could ever free one of its words are harvested early; the
    final stage keeps full covers whose density against the target meets
    the stated minimum.  Lock tests that exhaust their budget are counted
    and reported, not guessed."""
    if slots < 1:
        raise ValueError("need at least one slot")
    if not all(cover_weight(w, target) > 0 for w in anchor):
        raise ValueError("every anchor word must meet the target")
    anchor = make_code(anchor)
    if code_covered(target, anchor):
        return CoverSearchResult((anchor,), 0, lock_budget)
    every_word = tuple(
        sorted(itertools.product(alphabet.letters(), repeat=len(target[0])))
    )
    gate = PruneContext(partial=anchor, target=target, pool=every_word, slots=slots)
    if cover_bound(gate) == 0:
        return CoverSearchResult((), 0, lock_budget)
    pool = candidate_pool(gate)
    if not pool:
        return CoverSearchResult((), 0, lock_budget)
    undecided = 0
    harvested: set[frozenset[Word]] = set()
    alive = [frozenset(anchor)]

    def locked(partial: frozenset[Word]) -> bool:
        nonlocal undecided
        state = tuple(sorted(partial))
        if not code_covered(target, state):
            return False
        verdict = is_locked_cover_code(
            target, state, alphabet, lock_threshold, lock_budget
        )
        if verdict == Verdict.EXCEEDED:
            undecided += 1
            return False
        return verdict == Verdict.YES

    for stage in range(1, slots):
        grown: set[frozenset[Word]] = set()
        for partial in alive:
            for q in pool:
                if q in partial:
                    continue
                if all(is_dichotomous(q, v) for v in partial):
                    grown.add(partial | {q})
        next_alive = []
        for candidate in sorted(grown, key=sorted):
            if locked(candidate):
                harvested.add(candidate)
                continue
            ctx = PruneContext(
                partial=tuple(sorted(candidate)),
                target=target,
                pool=pool,
                slots=slots - stage,
            )
            if cover_bound(ctx) == 1:
                next_alive.append(candidate)
        alive = next_alive
        if not alive:
            break
    finals: set[frozenset[Word]] = set()
    for partial in alive:
        for q in pool:
            if q in partial:
                continue
            if not all(is_dichotomous(q, v) for v in partial):
                continue
            candidate = tuple(sorted(partial | {q}))
            if code_covered(target, candidate) and density(candidate, target) >= final_density_min:
                finals.add(frozenset(candidate))
    covers = harvested | finals
    return CoverSearchResult(
        covers=tuple(sorted(tuple(sorted(c)) for c in covers)),
        undecided_lock_tests=undecided,
        lock_budget=lock_budget,
    )


# rebuilding the second code -----------------------------------------------

def find_second_codes(
    known: Code,
    partial: Code,
    alphabet: Alphabet,
    min_density: int = 5,
    max_candidates: int = 10**6,
) -> tuple[Code, ...]:
    """Codes equivalent to ``known`` that contain ``partial``.

    Candidate words are bucketed by binary code: equivalent codes share
    their binary code sets and binary codes are injective on a code, so
    each missing bit vector is one slot to fill.  Every returned code is a
    full equivalent partner (equal size, mutual covering)."""
    if not code_covered(partial, known):
        raise ValueError("the partial code must be covered by the known code")
    if len(partial) >= len(known):
        raise ValueError("the partial code must be strictly smaller")
    if density(known, partial) < min_density:
        raise ValueError("the known code is too sparse around the partial one")
    dim = len(known[0])
    have = {binary_code(r): r for r in partial}
    missing = sorted(binary_code_set(known) - set(have))
    pool: dict[tuple[int, ...], list[Word]] = {bits: [] for bits in missing}
    for q in itertools.product(alphabet.letters(), repeat=dim):
        bits = binary_code(q)
        if bits not in pool or q in partial:
            continue
        if not all(is_dichotomous(q, r) for r in partial):
            continue
        if not is_covered(q, known):
            continue
        if density(known, (q,)) < min_density:
            continue
        pool[bits].append(q)
    slots = [sorted(pool[bits]) for bits in missing]
    if any(not slot for slot in slots):
        return ()
    total = 1
    for slot in slots:
        total *= len(slot)
    if total > max_candidates:
        raise ValueError(f"slot product {total} exceeds the candidate budget")
    out = []
    base = tuple(sorted(partial))
    for picks in itertools.product(*slots):
        candidate = tuple(sorted(base + picks))
        ok = all(
            is_dichotomous(a, b)
            for a, b in itertools.combinations(picks, 2)
        )
        if ok and density(candidate, known) >= min_density:
            out.append(candidate)
    return tuple(sorted(out))


# generic extensions -------------------------------------------------------

def extensions(
    code: Code,
    count: int,
    alphabet: Alphabet,
    flat_constraint: tuple[int, int] | None = None,
) -> tuple[Code, ...]:
    """All codes obtained by adding exactly ``count`` new words; with a
    flat constraint the new words are pinned to one letter at one
    position, which is all a flat code's equivalents can use."""
    base = make_code(code)
    if count == 0:
        return (base,)
    dim = len(base[0]) if base else None
    if dim is None:
        raise ValueError("extension needs a non-empty code")
    pool = []
    for q in itertools.product(alphabet.letters(), repeat=dim):
        if q in base:
            continue
        if flat_constraint is not None and q[flat_constraint[0]] != flat_constraint[1]:
            continue
        if all(is_dichotomous(q, v) for v in base):
            pool.append(q)
    pool.sort()
    compat = [
        [j for j in range(len(pool)) if j > i and is_dichotomous(pool[i], pool[j])]
        for i in range(len(pool))
    ]
    out: list[Code] = []

    def rec(start: int, picked: tuple[int, ...], allowed: set[int]) -> None:
        if len(picked) == count:
            out.append(tuple(sorted(base + tuple(pool[i] for i in picked))))
            return
        for idx in range(start, len(pool)):
            if idx in allowed:
                rec(idx + 1, picked + (idx,), allowed & set(compat[idx]))
    rec(0, (), set(range(len(pool))))
    return tuple(sorted(out))
