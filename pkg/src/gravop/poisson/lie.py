"""Multilinear Lie words for a bracket of odd degree.

The bracket of the Poisson model has odd degree, so it makes the shifted
space a graded Lie algebra: a generator z of degree |z| has shifted parity
|z| + 1, and a bracket word on k letters has shifted parity equal to the
sum of its letters' shifted parities.

A multilinear bracket expression is determined by its image in the free
associative algebra under the graded commutator
``[a, b] = ab - (-1)^(|a|'|b|') ba`` (primes: shifted parity). The left-normed
word ``[[..[z_m, z_2], ..], z_k]`` with m the smallest letter expands to the
associative word ``z_m z_2 .. z_k`` plus words that do not start with z_m.
So the coordinates of any Lie element in the basis of min-first left-normed
words are simply its associative coefficients on words beginning with the
smallest letter. That is the whole normalisation algorithm.

The operad itself uses the bracket {a, b} = (-1)^|a| [a, b], whose odd
symbol sits between its arguments; it is the bracket that Delta(mu_2)
produces. A left-normed {}-word differs from the [..]-word on the same
letters by the sign :func:`mid_sign`, so the ``*_mid`` functions are
conjugates of the plain ones.

Parities are passed as a tuple indexed by ``letter - 1``; ``None`` means every
generator is even.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

Word = tuple[int, ...]
Parities = tuple[int, ...] | None


def letter_parity(a: int, par: Parities) -> int:
    return 0 if par is None else par[a - 1]


def word_parity(word: Sequence[int], par: Parities) -> int:
    """Degree parity of a bracket word: letters plus one per bracket."""
    if par is None:
        return (len(word) - 1) & 1
    return (sum(par[a - 1] for a in word) + len(word) - 1) & 1


def shifted_parity(word: Sequence[int], par: Parities) -> int:
    return word_parity(word, par) ^ 1


@lru_cache(maxsize=None)
def _expansion(shifted: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Associative expansion of the left-normed word on positions 0..k-1
    with the given shifted parities, as (position sequence, coefficient)."""
    terms = {(0,): 1}
    acc = shifted[0]
    for pos in range(1, len(shifted)):
        s = shifted[pos]
        sign = -1 if acc & s else 1  # -(-1)^(acc*s)
        new: dict[tuple[int, ...], int] = {}
        for w, c in terms.items():
            new[w + (pos,)] = new.get(w + (pos,), 0) + c
            new[(pos,) + w] = new.get((pos,) + w, 0) - sign * c
        terms = {w: c for w, c in new.items() if c}
        acc ^= s
    return tuple(sorted(terms.items()))


def expand(word: Sequence[int], par: Parities = None) -> list[tuple[Word, int]]:
    """Associative expansion of the left-normed bracket of ``word``."""
    shifted = tuple(letter_parity(a, par) ^ 1 for a in word)
    return [(tuple(word[p] for p in pos), c) for pos, c in _expansion(shifted)]


def normalize_word(word: Sequence[int], par: Parities = None) -> dict[Word, int]:
    """Left-normed bracket of ``word`` in the min-first left-normed basis."""
    word = tuple(word)
    if len(set(word)) != len(word):
        raise ValueError(f"repeated letter in multilinear word {word}")
    m = min(word)
    if word[0] == m:
        return {word: 1}
    out: dict[Word, int] = {}
    for w, c in expand(word, par):
        if w[0] == m:
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def is_basis_word(word: Sequence[int]) -> bool:
    return len(word) > 0 and word[0] == min(word) and len(set(word)) == len(word)


def bracket_words(u: Word, v: Word, par: Parities = None) -> dict[Word, int]:
    """[u, v] for basis words on disjoint letters, in the basis."""
    if u[0] < v[0]:
        return {u + w: c for w, c in expand(v, par)}
    sign = -1 if (shifted_parity(u, par) & shifted_parity(v, par)) else 1
    return {v + w: -sign * c for w, c in expand(u, par)}


def mid_sign(word: Sequence[int], par: Parities = None) -> int:
    """{..{z_1, z_2}.., z_k} = mid_sign * [..[z_1, z_2].., z_k]."""
    e = 0
    acc = letter_parity(word[0], par)
    for j in range(1, len(word)):
        e ^= acc  # parity of the left-normed prefix on j letters
        acc ^= letter_parity(word[j], par) ^ 1
    return -1 if e & 1 else 1


def normalize_word_mid(word: Sequence[int], par: Parities = None) -> dict[Word, int]:
    k = mid_sign(word, par)
    return {w: k * c * mid_sign(w, par) for w, c in normalize_word(word, par).items()}


def bracket_words_mid(u: Word, v: Word, par: Parities = None) -> dict[Word, int]:
    """{u, v} for {}-basis words on disjoint letters."""
    k = mid_sign(u, par) * mid_sign(v, par)
    if word_parity(u, par):
        k = -k
    return {w: k * c * mid_sign(w, par) for w, c in bracket_words(u, v, par).items()}
