"""Words, codes and the cover calculus.

A word is a tuple of letters; a (polybox) code is a sorted tuple of
pairwise dichotomous proper words.  Everything here is a pure function on
immutable data, so all of it is safe to call concurrently.

The central quantity is ``overlap_weight(v, w)``: the product over
positions of 2 (equal letters), 0 (complementary letters) or 1 (letters
from different pairs).  It is proportional to the volume of the
intersection of the boxes realizing ``v`` and ``w``; a word is covered by
a code exactly when its accumulated weight reaches ``2**d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .alphabet import MAX_DIM, STAR, Alphabet, complement, letter_name

Word = tuple[int, ...]
Code = tuple[Word, ...]


def _check_dims(v: Word, w: Word) -> None:
    if len(v) != len(w):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(w)}")


def is_proper(v: Word) -> bool:
    """True when the word contains no joker."""
    return STAR not in v


def _require_proper(v: Word) -> None:
    if not is_proper(v):
        raise ValueError(f"proper word required: {format_plain(v)}")


def format_plain(v: Word) -> str:
    return "".join(letter_name(s) for s in v)


def is_dichotomous(v: Word, w: Word) -> bool:
    """Some position carries complementary letters."""
    _check_dims(v, w)
    _require_proper(v)
    _require_proper(w)
    return any(a == b ^ 1 for a, b in zip(v, w))


def twin_pair_direction(v: Word, w: Word) -> Optional[int]:
    """The unique position (0-based) where the words differ, if they differ
    there by complementation only; None otherwise."""
    _check_dims(v, w)
    _require_proper(v)
    _require_proper(w)
    direction = None
    for i, (a, b) in enumerate(zip(v, w)):
        if a == b:
            continue
        if a != b ^ 1 or direction is not None:
            return None
        direction = i
    return direction


def overlap_weight(v: Word, w: Word) -> int:
    """Product of per-position factors 2 / 0 / 1 (equal / complementary /
    independent).  Zero exactly when the words are dichotomous."""
    _check_dims(v, w)
    _require_proper(v)
    _require_proper(w)
    weight = 1
    for a, b in zip(v, w):
        if a == b:
            weight <<= 1
        elif a == b ^ 1:
            return 0
    return weight


def cover_weight(w: Word, code: Iterable[Word]) -> int:
    """Total overlap weight of ``w`` against the code."""
    return sum(overlap_weight(v, w) for v in code)


def is_covered(w: Word, code: Iterable[Word]) -> bool:
    """The box of ``w`` lies inside the union of the code's boxes.

    For a code the weight can never exceed ``2**d``, and equality is the
    cover criterion."""
    return cover_weight(w, code) == 1 << len(w)


def code_covered(inner: Iterable[Word], outer: Code) -> bool:
    return all(is_covered(v, outer) for v in inner)


def are_equivalent(first: Code, second: Code) -> bool:
    """Mutual covering.  Disjointness is deliberately a separate predicate:
    several constructions need one without the other."""
    return code_covered(first, second) and code_covered(second, first)


def are_disjoint(first: Iterable[Word], second: Iterable[Word]) -> bool:
    return not set(first) & set(second)


def density(first: Iterable[Word], second: Iterable[Word]) -> int:
    """Minimum over the second code's words of how many words of the first
    one meet it (are not dichotomous with it)."""
    second = tuple(second)
    if not second:
        raise ValueError("density against an empty code")
    first = tuple(first)
    return min(
        sum(1 for v in first if overlap_weight(v, w) > 0) for w in second
    )


def common_density(first: Code, second: Code) -> int:
    return min(density(first, second), density(second, first))


def minimal_cover_within(w: Word, code: Code) -> Code:
    """The words of a covering code that actually meet ``w``; they cover it
    on their own."""
    if not is_covered(w, code):
        raise ValueError(f"{format_plain(w)} is not covered")
    return tuple(v for v in code if overlap_weight(v, w) > 0)


def make_code(words: Iterable[Word], alphabet: Alphabet | None = None) -> Code:
    """Canonical (sorted) code; raises on jokers, duplicates or a
    non-dichotomous pair."""
    out = sorted(words)
    if out and len(out[0]) > MAX_DIM:
        raise ValueError(f"dimension {len(out[0])} above the cap of {MAX_DIM}")
    for v in out:
        _require_proper(v)
        if alphabet is not None and any(s not in alphabet for s in v):
            raise ValueError(f"letter outside alphabet in {format_plain(v)}")
    for prev, cur in zip(out, out[1:]):
        if prev == cur:
            raise ValueError(f"duplicate word {format_plain(cur)}")
        if len(prev) != len(cur):
            raise ValueError("mixed dimensions in code")
    for i, v in enumerate(out):
        for w in out[i + 1 :]:
            if not is_dichotomous(v, w):
                raise ValueError(
                    f"not dichotomous: {format_plain(v)} / {format_plain(w)}"
                )
    return tuple(out)


def is_polybox_code(words: Iterable[Word]) -> bool:
    try:
        make_code(words)
    except ValueError:
        return False
    return True


def is_cube_tiling_code(code: Code) -> bool:
    return bool(code) and len(code) == 1 << len(code[0])


# binary codes -----------------------------------------------------------

def _check_bits(bits: Mapping[int, int]) -> None:
    for s in bits:
        if bits[s] + bits.get(s ^ 1, -1) != 1:
            raise ValueError(f"bit map must split the pair of {letter_name(s)}")


def binary_code(v: Word, bits: Mapping[int, int] | None = None) -> tuple[int, ...]:
    """Per-position bit of each letter; unprimed letters map to 0 by
    convention unless a custom complement-splitting map is supplied."""
    _require_proper(v)
    if bits is None:
        return tuple(s & 1 for s in v)
    _check_bits(bits)
    return tuple(bits[s] for s in v)


def binary_code_set(
    code: Iterable[Word], bits: Mapping[int, int] | None = None
) -> frozenset[tuple[int, ...]]:
    """On a code this is injective: dichotomy forces a differing bit."""
    return frozenset(binary_code(v, bits) for v in code)


# distributions ----------------------------------------------------------

@dataclass(frozen=True)
class Distribution:
    """Counts of each letter pair at one position: ``counts[j]`` is the
    pair (number of words with letter 2j, number with 2j+1)."""

    position: int
    counts: tuple[tuple[int, int], ...]

    @property
    def total(self) -> int:
        return sum(a + b for a, b in self.counts)


def distribution(code: Code, position: int, alphabet: Alphabet) -> Distribution:
    counts = []
    for s in alphabet.unprimed():
        counts.append(
            (
                sum(1 for v in code if v[position] == s),
                sum(1 for v in code if v[position] == s ^ 1),
            )
        )
    return Distribution(position=position, counts=tuple(counts))


def pairs_at(code: Iterable[Word], position: int) -> frozenset[int]:
    """Letter pairs occurring at one position."""
    return frozenset(v[position] >> 1 for v in code)


def is_simple(code: Code) -> bool:
    """Exactly one letter pair occurs at every position."""
    if not code:
        return True
    return all(len(pairs_at(code, i)) == 1 for i in range(len(code[0])))


def flat_witness(code: Code) -> Optional[tuple[int, int]]:
    """A position and letter shared by every word, if there is one."""
    if not code:
        return None
    for i in range(len(code[0])):
        letters = {v[i] for v in code}
        if len(letters) == 1:
            return i, next(iter(letters))
    return None
