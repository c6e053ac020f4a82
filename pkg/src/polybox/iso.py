"""Isomorphisms of codes: position permutations composed with per-position
letter bijections that respect complementation.

Canonical forms are exact lexicographic orbit minima.  Orbits are walked
breadth-first from generator sets, so the cost scales with the orbit, not
with the (possibly huge) group order; groups that only carry an element
enumerator fall back to a full sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .alphabet import STAR, Alphabet
from .core import Code, Word


@dataclass(frozen=True)
class GroupElement:
    """Acts as ``out[i] = maps[i][word[sigma[i]]]``: permute positions,
    then apply one complement-respecting letter bijection per position."""

    sigma: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]


def element(sigma: Iterable[int], maps: Iterable[Iterable[int]]) -> GroupElement:
    sigma = tuple(sigma)
    maps = tuple(tuple(m) for m in maps)
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError("sigma must be a permutation of positions")
    if len(maps) != len(sigma):
        raise ValueError("need one letter map per position")
    for m in maps:
        if sorted(m) != list(range(len(m))):
            raise ValueError("letter map must be a bijection")
        if any(m[s ^ 1] != m[s] ^ 1 for s in range(len(m))):
            raise ValueError("letter map must respect complementation")
    return GroupElement(sigma=sigma, maps=maps)


def identity(alphabet: Alphabet, dim: int) -> GroupElement:
    return GroupElement(
        sigma=tuple(range(dim)),
        maps=(tuple(alphabet.letters()),) * dim,
    )


def apply_word(g: GroupElement, v: Word) -> Word:
    return tuple(
        STAR if v[g.sigma[i]] == STAR else g.maps[i][v[g.sigma[i]]]
        for i in range(len(v))
    )


def apply_code(g: GroupElement, code: Code) -> Code:
    return tuple(sorted(apply_word(g, v) for v in code))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as ``g`` after ``h``."""
    sigma = tuple(h.sigma[g.sigma[i]] for i in range(len(g.sigma)))
    maps = tuple(
        tuple(g.maps[i][h.maps[g.sigma[i]][s]] for s in range(len(g.maps[i])))
        for i in range(len(g.sigma))
    )
    return GroupElement(sigma=sigma, maps=maps)


def inverse(g: GroupElement) -> GroupElement:
    dim = len(g.sigma)
    sigma_inv = [0] * dim
    for i, j in enumerate(g.sigma):
        sigma_inv[j] = i
    maps = []
    for j in range(dim):
        forward = g.maps[sigma_inv[j]]
        back = [0] * len(forward)
        for s, t in enumerate(forward):
            back[t] = s
        maps.append(tuple(back))
    return GroupElement(sigma=tuple(sigma_inv), maps=tuple(maps))


class Group:
    """A finite group of code isomorphisms.

    Carries generators (for orbit walks) and/or a lazy element enumerator;
    ``order`` is exact when known.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        dim: int,
        generators: tuple[GroupElement, ...] | None = None,
        elements_factory: Callable[[], Iterator[GroupElement]] | None = None,
        order: int | None = None,
    ) -> None:
        if generators is None and elements_factory is None:
            raise ValueError("a group needs generators or an enumerator")
        self.alphabet = alphabet
        self.dim = dim
        self.generators = generators
        self._elements_factory = elements_factory
        self.order = order

    def elements(self) -> Iterator[GroupElement]:
        if self._elements_factory is not None:
            return self._elements_factory()
        return self._close_generators()

    def _close_generators(self) -> Iterator[GroupElement]:
        assert self.generators is not None
        seen = {identity(self.alphabet, self.dim)}
        frontier = list(seen)
        yield from frontier
        while frontier:
            new: list[GroupElement] = []
            for g in frontier:
                for gen in self.generators:
                    candidate = compose(gen, g)
                    if candidate not in seen:
                        seen.add(candidate)
                        new.append(candidate)
                        yield candidate
            frontier = new

    def orbit(self, code: Code) -> frozenset[Code]:
        """All images of the code; walks generators when available."""
        if self.generators is not None:
            if not hasattr(self, "_word_caches"):
                self._word_caches: list[dict[Word, Word]] = [
                    {} for _ in self.generators
                ]
            seen = {code}
            frontier = [code]
            while frontier:
                new = []
                for state in frontier:
                    for gen, cache in zip(self.generators, self._word_caches):
                        image_words = []
                        for w in state:
                            t = cache.get(w)
                            if t is None:
                                t = apply_word(gen, w)
                                cache[w] = t
                            image_words.append(t)
                        image = tuple(sorted(image_words))
                        if image not in seen:
                            seen.add(image)
                            new.append(image)
                frontier = new
            return frozenset(seen)
        return frozenset(apply_code(g, code) for g in self.elements())


# letter-map building blocks ----------------------------------------------

def _identity_map(alphabet: Alphabet) -> tuple[int, ...]:
    return tuple(alphabet.letters())

def _orientation_flip(alphabet: Alphabet, pair: int) -> tuple[int, ...]:
    m = list(alphabet.letters())
    m[2 * pair], m[2 * pair + 1] = 2 * pair + 1, 2 * pair
    return tuple(m)

def _pair_swap(alphabet: Alphabet, p: int, q: int) -> tuple[int, ...]:
    m = list(alphabet.letters())
    m[2 * p], m[2 * p + 1] = 2 * q, 2 * q + 1
    m[2 * q], m[2 * q + 1] = 2 * p, 2 * p + 1
    return tuple(m)

def _transport(alphabet: Alphabet, source: int, target: int) -> tuple[int, ...]:
    """A canonical map sending ``source`` to ``target``."""
    if source == target:
        return _identity_map(alphabet)
    if source >> 1 == target >> 1:
        return _orientation_flip(alphabet, source >> 1)
    m = list(_pair_swap(alphabet, source >> 1, target >> 1))
    if (source & 1) != (target & 1):
        m[source & ~1], m[source | 1] = m[source | 1], m[source & ~1]
        m[target & ~1], m[target | 1] = m[target | 1], m[target & ~1]
    return tuple(m)


def _position_element(
    alphabet: Alphabet, dim: int, position: int, letter_map: tuple[int, ...]
) -> GroupElement:
    maps = [_identity_map(alphabet)] * dim
    maps[position] = letter_map
    return GroupElement(sigma=tuple(range(dim)), maps=tuple(maps))


def _pair_preserving_maps(alphabet: Alphabet) -> Iterator[tuple[int, ...]]:
    """All complement-respecting bijections of the alphabet."""
    k = alphabet.pair_count
    for pair_perm in itertools.permutations(range(k)):
        for orientation in itertools.product((0, 1), repeat=k):
            m = [0] * (2 * k)
            for p in range(k):
                m[2 * p] = 2 * pair_perm[p] + orientation[p]
                m[2 * p + 1] = 2 * pair_perm[p] + (orientation[p] ^ 1)
            yield tuple(m)


def _constrained_maps(
    alphabet: Alphabet, source: int, target: int
) -> Iterator[tuple[int, ...]]:
    """All complement-respecting bijections sending ``source`` to ``target``."""
    for m in _pair_preserving_maps(alphabet):
        if m[source] == target:
            yield m


def full_group(alphabet: Alphabet, dim: int) -> Group:
    generators = []
    for i in range(dim - 1):
        sigma = list(range(dim))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        generators.append(
            GroupElement(sigma=tuple(sigma), maps=(_identity_map(alphabet),) * dim)
        )
    for i in range(dim):
        generators.append(_position_element(alphabet, dim, i, _orientation_flip(alphabet, 0)))
        for p in range(alphabet.pair_count - 1):
            generators.append(
                _position_element(alphabet, dim, i, _pair_swap(alphabet, p, p + 1))
            )

    def enumerate_all() -> Iterator[GroupElement]:
        letter_maps = list(_pair_preserving_maps(alphabet))
        for sigma in itertools.permutations(range(dim)):
            for maps in itertools.product(letter_maps, repeat=dim):
                yield GroupElement(sigma=sigma, maps=maps)

    import math

    per_position = math.factorial(alphabet.pair_count) * 2**alphabet.pair_count
    return Group(
        alphabet,
        dim,
        generators=tuple(generators),
        elements_factory=enumerate_all,
        order=math.factorial(dim) * per_position**dim,
    )


def word_stabilizer(word: Word, alphabet: Alphabet) -> Group:
    """All isomorphisms fixing the word.

    Every position permutation extends to a stabilizing element; the letter
    maps are then constrained to carry the permuted letter back."""
    dim = len(word)
    generators = []
    for i in range(dim - 1):
        sigma = list(range(dim))
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
        maps = [_identity_map(alphabet)] * dim
        maps[i] = _transport(alphabet, word[i + 1], word[i])
        maps[i + 1] = _transport(alphabet, word[i], word[i + 1])
        generators.append(GroupElement(sigma=tuple(sigma), maps=tuple(maps)))
    for i in range(dim):
        fixed_pair = word[i] >> 1
        others = [p for p in range(alphabet.pair_count) if p != fixed_pair]
        for p in others:
            generators.append(
                _position_element(alphabet, dim, i, _orientation_flip(alphabet, p))
            )
        for p, q in zip(others, others[1:]):
            generators.append(
                _position_element(alphabet, dim, i, _pair_swap(alphabet, p, q))
            )

    def enumerate_all() -> Iterator[GroupElement]:
        for sigma in itertools.permutations(range(dim)):
            constrained = [
                list(_constrained_maps(alphabet, word[sigma[i]], word[i]))
                for i in range(dim)
            ]
            for maps in itertools.product(*constrained):
                yield GroupElement(sigma=sigma, maps=maps)

    import math

    per_position = math.factorial(alphabet.pair_count - 1) * 2 ** (
        alphabet.pair_count - 1
    )
    return Group(
        alphabet,
        dim,
        generators=tuple(generators),
        elements_factory=enumerate_all,
        order=math.factorial(dim) * per_position**dim,
    )


def code_stabilizer(code: Code, alphabet: Alphabet) -> Group:
    """All isomorphisms mapping the code onto itself (as a set).

    Enumerated by constraint propagation over (position permutation, word
    assignment) pairs, with the unconstrained letter pairs filled in
    freely; meant for small codes."""
    dim = len(code[0])
    words = list(code)

    def column_maps(sigma: tuple[int, ...], image: list[Word]) -> Optional[list[list[tuple[int, ...]]]]:
        per_position = []
        for i in range(dim):
            required: dict[int, int] = {}
            for w, target in zip(words, image):
                s, t = w[sigma[i]], target[i]
                if required.get(s, t) != t or required.get(s ^ 1, t ^ 1) != t ^ 1:
                    return None
                required[s] = t
                required[s ^ 1] = t ^ 1
            if len(set(required.values())) != len(required):
                return None
            options = [
                m
                for m in _pair_preserving_maps(alphabet)
                if all(m[s] == t for s, t in required.items())
            ]
            if not options:
                return None
            per_position.append(options)
        return per_position

    def enumerate_all() -> Iterator[GroupElement]:
        for sigma in itertools.permutations(range(dim)):
            for image in itertools.permutations(words):
                per_position = column_maps(sigma, list(image))
                if per_position is None:
                    continue
                for maps in itertools.product(*per_position):
                    g = GroupElement(sigma=sigma, maps=maps)
                    if apply_code(g, code) == code:
                        yield g

    return Group(alphabet, dim, generators=None, elements_factory=enumerate_all)


def canonical_form(code: Code, group: Group) -> Code:
    """Lexicographic minimum over the orbit; equal on all orbit members."""
    if group.generators is not None:
        return min(group.orbit(code))
    return min(apply_code(g, code) for g in group.elements())


def dedup_orbits(family: Iterable[Code], group: Group) -> tuple[Code, ...]:
    """One canonical representative per orbit met by the family."""
    seen: set[Code] = set()
    out = []
    for code in sorted(set(family)):
        if code in seen:
            continue
        orbit = group.orbit(code)
        seen.update(orbit)
        out.append(min(orbit))
    return tuple(sorted(out))


def greedy_relabel(code: Code) -> Code:
    """Cheap deterministic relabelling (first occurrence per position).

    Not guaranteed canonical: positions are not permuted and letter choices
    are greedy.  Never used where exact class counts matter."""
    if not code:
        return code
    dim = len(code[0])
    maps = []
    for i in range(dim):
        m: dict[int, int] = {}
        nxt = 0
        for v in sorted(code):
            s = v[i]
            if s not in m:
                m[s] = nxt
                m[s ^ 1] = nxt ^ 1
                nxt += 2
        maps.append(m)
    return tuple(sorted(tuple(maps[i][v[i]] for i in range(dim)) for v in code))
