"""Deterministic random generation of words and codes for fuzz checks.

Everything takes an explicit ``random.Random`` so runs are reproducible;
no global state is touched.
"""

from __future__ import annotations

import itertools
from random import Random

from .alphabet import Alphabet
from .core import Code, Word, is_dichotomous


def random_word(alphabet: Alphabet, dim: int, rng: Random) -> Word:
    return tuple(rng.randrange(alphabet.size) for _ in range(dim))


def random_code(
    alphabet: Alphabet, dim: int, rng: Random, max_size: int | None = None
) -> Code:
    """Greedy code from a shuffled word pool; size varies with the draw."""
    pool = list(itertools.product(alphabet.letters(), repeat=dim))
    rng.shuffle(pool)
    chosen: list[Word] = []
    for q in pool:
        if all(is_dichotomous(q, v) for v in chosen):
            chosen.append(q)
            if max_size is not None and len(chosen) >= max_size:
                break
    return tuple(sorted(chosen))


def random_tiling_code(alphabet: Alphabet, dim: int, rng: Random) -> Code:
    """A uniform-ish cube tiling code found by randomized backtracking."""
    pool = list(itertools.product(alphabet.letters(), repeat=dim))
    rng.shuffle(pool)
    target = 1 << dim
    chosen: list[Word] = []

    def rec(start: int) -> bool:
        if len(chosen) == target:
            return True
        for i in range(start, len(pool)):
            q = pool[i]
            if all(is_dichotomous(q, v) for v in chosen):
                chosen.append(q)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        raise RuntimeError("backtracking failed to complete a tiling code")
    return tuple(sorted(chosen))
