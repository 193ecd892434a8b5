"""Multilinear part of the free Poisson algebra with an odd bracket.

A monomial is a tuple of min-first left-normed {}-words on disjoint letters,
ordered by first letter; it stands for the graded-commutative product of
those brackets. Elements are plain ``{monomial: int}`` dicts.

Conventions, with |a| the degree parity and {a, b} = (-1)^|a| [a, b] the
bracket with its odd symbol between the arguments:

    ab = (-1)^(|a||b|) ba
    {a, b} = (-1)^(|a||b|) {b, a}
    {a, bc} = {a, b}c + (-1)^((|a|+1)|b|) b{a, c}
    {ab, c} = (-1)^|a| a{b, c} + (-1)^(|b||c|) {a, c}b
    Delta(ab) = Delta(a)b + (-1)^|a| a Delta(b) + {a, b}

with Delta zero on every bracket word. The monomial bracket is computed
through the [..] form, where the Leibniz rules carry no extra sign.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .lie import Parities, Word, bracket_words_mid, normalize_word_mid, word_parity

Monomial = tuple[Word, ...]
Element = dict  # Monomial -> int


def add_into(out: dict, key, value: int) -> None:
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def canonical_product(words: Sequence[Word], par: Parities = None) -> tuple[int, Monomial]:
    """Sort basis words by first letter, with the Koszul sign of the sort."""
    ws = list(words)
    pars = [word_parity(w, par) for w in ws]
    sign = 1
    for a in range(1, len(ws)):
        b = a
        while b > 0 and ws[b - 1][0] > ws[b][0]:
            if pars[b - 1] & pars[b]:
                sign = -sign
            ws[b - 1], ws[b] = ws[b], ws[b - 1]
            pars[b - 1], pars[b] = pars[b], pars[b - 1]
            b -= 1
    return sign, tuple(ws)


def monomial_parity(mono: Monomial, par: Parities = None) -> int:
    p = 0
    for w in mono:
        p ^= word_parity(w, par)
    return p


def element_parity(e: Mapping[Monomial, int], par: Parities = None) -> int:
    pars = {monomial_parity(m, par) for m in e}
    if len(pars) > 1:
        raise ValueError("element is not homogeneous")
    return pars.pop() if pars else 0


def product_of_words(factors: Iterable[Mapping[Word, int]], par: Parities = None) -> Element:
    """Expand a product of Lie elements (each a dict over basis words) given
    in this order."""
    partial: dict[tuple[Word, ...], int] = {(): 1}
    for f in factors:
        partial = {ws + (w,): c * k for ws, c in partial.items() for w, k in f.items()}
    out: Element = {}
    for ws, c in partial.items():
        s, mono = canonical_product(ws, par)
        add_into(out, mono, s * c)
    return out


def multiply(a: Mapping[Monomial, int], b: Mapping[Monomial, int], par: Parities = None) -> Element:
    out: Element = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            s, mono = canonical_product(m1 + m2, par)
            add_into(out, mono, s * c1 * c2)
    return out


def bracket_monomials(p: Monomial, q: Monomial, par: Parities = None) -> Element:
    """{p_1...p_r, q_1...q_s} = sum over (i, j) of
    (+-) p_1..^p_i..p_r {p_i, q_j} q_1..^q_j..q_s."""
    out: Element = {}
    ppar = [word_parity(w, par) for w in p]
    qpar = [word_parity(w, par) for w in q]
    total = sum(ppar) & 1
    for i, pi in enumerate(p):
        after = sum(ppar[i + 1:]) & 1
        # pull p_i to the end, then convert [p_i, q_j] to {p_i, q_j}
        sign_i = -1 if (ppar[i] & after) ^ total ^ ppar[i] else 1
        rest_p = p[:i] + p[i + 1:]
        before = 0
        for j, qj in enumerate(q):
            sign_j = -1 if qpar[j] & before else 1
            before ^= qpar[j]
            rest_q = q[:j] + q[j + 1:]
            for w, c in bracket_words_mid(pi, qj, par).items():
                s, mono = canonical_product(rest_p + (w,) + rest_q, par)
                add_into(out, mono, sign_i * sign_j * s * c)
    return out


def bracket(a: Mapping[Monomial, int], b: Mapping[Monomial, int], par: Parities = None) -> Element:
    out: Element = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            for mono, c in bracket_monomials(m1, m2, par).items():
                add_into(out, mono, c * c1 * c2)
    return out


def delta_monomial(mono: Monomial, par: Parities = None) -> Element:
    """Delta(L_1...L_r) = sum_{s<t} sign * L_1..^L_s..L_{t-1} {L_s, L_t} L_{t+1}..L_r,
    sign = (-1)^(|L_1|+..+|L_{s-1}| + (|L_s|+1)(|L_{s+1}|+..+|L_{t-1}|))."""
    out: Element = {}
    pars = [word_parity(w, par) for w in mono]
    r = len(mono)
    upto = 0
    for s in range(r):
        between = 0
        for t in range(s + 1, r):
            e = upto ^ ((pars[s] ^ 1) & between)
            sign = -1 if e else 1
            head = mono[:s] + mono[s + 1:t]
            tail = mono[t + 1:]
            for w, c in bracket_words_mid(mono[s], mono[t], par).items():
                k, m = canonical_product(head + (w,) + tail, par)
                add_into(out, m, sign * k * c)
            between ^= pars[t]
        upto ^= pars[s]
    return out


def delta(e: Mapping[Monomial, int], par: Parities = None) -> Element:
    out: Element = {}
    for mono, c in e.items():
        for m, k in delta_monomial(mono, par).items():
            add_into(out, m, c * k)
    return out


def relabel_monomial(mono: Monomial, mapping: Mapping[int, int], par: Parities = None) -> Element:
    """Rename letters (parities ``par`` refer to the new names) and
    re-canonicalise."""
    factors = [normalize_word_mid([mapping[a] for a in w], par) for w in mono]
    return product_of_words(factors, par)
