"""The Poisson operad with a bracket of degree 2d-1, as a model for the
homology of the little 2d-disks operad.

Arity n is the multilinear part of the free Poisson algebra on even
generators x_1..x_n (see :mod:`.algebra`); a basis is given by set
partitions of {1..n} with a min-first left-normed word on each block.
Degrees: a monomial with r blocks sits in degree (n - r)(2d - 1). All signs
depend only on parities, so d is just a degree label.

Composition a o_i b is substitution of b for x_i. Write a basis monomial
as L_1 ... L_r with x_i in L_s; reading the operation in prefix form, the
2d-1 degree bracket symbols of L_{s+1}, ..., L_r sit to the right of x_i,
so substituting b for x_i costs the Koszul sign (-1)^(|b| (|L_{s+1}| + ...
+ |L_r|)). The same reading gives :func:`evaluate`, which applies an
operation to generators of arbitrary parity.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Mapping, Sequence

from more_itertools import set_partitions

from .. import exactla
from ..exactla import GradedRankProfile, IntMatrix
from . import algebra
from .algebra import Monomial, add_into
from .lie import Parities, Word, is_basis_word, normalize_word_mid


class OperadError(ValueError):
    pass


def monomial_degree(mono: Monomial, d: int) -> int:
    return sum(len(w) - 1 for w in mono) * (2 * d - 1)


def monomial_letters(mono: Monomial) -> list[int]:
    return [a for w in mono for a in w]


def _check_monomial(mono: Monomial, n: int) -> None:
    letters = sorted(monomial_letters(mono))
    if letters != list(range(1, n + 1)):
        raise OperadError(f"{mono} is not multilinear in x_1..x_{n}")
    if any(not is_basis_word(w) for w in mono) or list(mono) != sorted(mono, key=lambda w: w[0]):
        raise OperadError(f"{mono} is not in canonical form")


class OperadElement:
    """Integer combination of canonical Poisson monomials of arity n.

    With ``parities`` set, the element lives in the free algebra on the
    graded generators z_1..z_n of those parities (the value of an
    operation on such generators) rather than in the operad itself.
    """

    __slots__ = ("n", "d", "terms", "parities")

    def __init__(self, n: int, d: int, terms: Mapping[Monomial, int], parities: Parities = None):
        if n < 1:
            raise OperadError("arity must be positive")
        if parities is not None:
            parities = tuple(int(p) & 1 for p in parities)
            if len(parities) != n:
                raise OperadError(f"need {n} parities, got {len(parities)}")
            if not any(parities):
                parities = None
        self.n, self.d, self.parities = n, d, parities
        self.terms = {m: c for m, c in terms.items() if c}

    # basic arithmetic -----------------------------------------------------
    def _check_compatible(self, other: OperadElement) -> None:
        if (self.n, self.d, self.parities) != (other.n, other.d, other.parities):
            raise OperadError("incompatible operad elements")

    def __add__(self, other):
        if not isinstance(other, OperadElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            add_into(out, m, c)
        return OperadElement(self.n, self.d, out, self.parities)

    def __neg__(self):
        return OperadElement(self.n, self.d, {m: -c for m, c in self.terms.items()}, self.parities)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return OperadElement(self.n, self.d, {m: k * c for m, c in self.terms.items()}, self.parities)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OperadElement):
            return NotImplemented
        return (self.n, self.d, self.parities, self.terms) == (other.n, other.d, other.parities, other.terms)

    def __hash__(self):
        return hash((self.n, self.d, self.parities, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        extra = f", parities={self.parities}" if self.parities else ""
        return f"OperadElement(n={self.n}, d={self.d}{extra}: {format_element(self)})"

    def __str__(self):
        return format_element(self)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items())

    def degrees(self) -> set[int]:
        return {monomial_degree(m, self.d) for m in self.terms}

    def degree(self) -> int:
        if self.parities is not None:
            raise OperadError("degree of an element on graded generators is not defined")
        degs = self.degrees()
        if len(degs) != 1:
            raise OperadError("degree of an inhomogeneous or zero element")
        return degs.pop()

    def parity(self) -> int:
        return algebra.element_parity(self.terms, self.parities)

    def check(self) -> OperadElement:
        for m in self.terms:
            _check_monomial(m, self.n)
        return self

    # JSON -------------------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "terms": [
                {"coeff": str(c), "blocks": [{"word": list(w)} for w in m]}
                for m, c in self.sorted_terms()
            ],
        }
        if self.parities:
            out["parities"] = list(self.parities)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> OperadElement:
        n, d = int(data["n"]), int(data["d"])
        par = tuple(data["parities"]) if data.get("parities") else None
        if "terms" in data:
            raw = [(int(t["coeff"]), t["blocks"]) for t in data["terms"]]
        else:
            raw = [(int(data.get("coeff", 1)), data["blocks"])]
        out: dict[Monomial, int] = {}
        for coeff, blocks in raw:
            words = [tuple(int(a) for a in b["word"]) for b in blocks]
            letters = sorted(a for w in words for a in w)
            if letters != list(range(1, n + 1)):
                raise OperadError(f"blocks {words} do not partition 1..{n}")
            for m, c in algebra.product_of_words([normalize_word_mid(w, par) for w in words], par).items():
                add_into(out, m, coeff * c)
        return cls(n, d, out, par)


# ---------------------------------------------------------------------------
# distinguished elements


def identity(d: int) -> OperadElement:
    return OperadElement(1, d, {((1,),): 1})


def mu(k: int, d: int) -> OperadElement:
    """The k-fold commutative product x_1 ... x_k."""
    return OperadElement(k, d, {tuple((a,) for a in range(1, k + 1)): 1})


def lam(d: int) -> OperadElement:
    """The bracket [x_1, x_2]."""
    return OperadElement(2, d, {((1, 2),): 1})


def monomial(blocks: Sequence[Sequence[int]], d: int) -> OperadElement:
    """Element given by words on blocks, normalised (the words need not be
    canonical)."""
    words = [tuple(w) for w in blocks]
    n = sum(len(w) for w in words)
    return OperadElement.from_json({"n": n, "d": d, "blocks": [{"word": list(w)} for w in words]})


# ---------------------------------------------------------------------------
# basis


@lru_cache(maxsize=None)
def _basis_by_blocks(n: int, r: int) -> tuple[Monomial, ...]:
    out = []
    for part in set_partitions(range(1, n + 1), r):
        per_block = []
        for block in part:
            block = sorted(block)
            per_block.append([(block[0],) + p for p in itertools.permutations(block[1:])])
        for words in itertools.product(*per_block):
            out.append(tuple(sorted(words, key=lambda w: w[0])))
    return tuple(sorted(out))


def poisson_basis(n: int, d: int, degree: int) -> list[Monomial]:
    if n < 1:
        raise OperadError("arity must be positive")
    h = 2 * d - 1
    if degree < 0 or degree % h:
        return []
    r = n - degree // h
    if not 1 <= r <= n:
        return []
    return list(_basis_by_blocks(n, r))


def poisson_profile(n: int, d: int) -> GradedRankProfile:
    h = 2 * d - 1
    return GradedRankProfile({(n - r) * h: len(_basis_by_blocks(n, r)) for r in range(1, n + 1)})


def basis_count(n: int) -> int:
    """Sum over set partitions of prod (|block| - 1)!; equals n!."""
    return sum(
        math.prod(math.factorial(len(b) - 1) for b in part)
        for r in range(1, n + 1)
        for part in set_partitions(range(1, n + 1), r)
    )


# ---------------------------------------------------------------------------
# composition


@lru_cache(maxsize=200_000)
def _compose_monomials(f: Monomial, i: int, g: Monomial, m: int) -> tuple[tuple[Monomial, int], ...]:
    def up(a: int) -> int:
        return a if a < i else a + m - 1

    g_shift = tuple(tuple(a + i - 1 for a in w) for w in g)
    g_par = (m - len(g)) & 1
    s = next(t for t, w in enumerate(f) if i in w)
    word = f[s]
    p = word.index(i)
    if p == 0:
        e = {g_shift: 1}
    else:
        e = algebra.bracket({(tuple(up(a) for a in word[:p]),): 1}, {g_shift: 1})
    for a in word[p + 1:]:
        e = algebra.bracket(e, {((up(a),),): 1})
    later = sum(len(w) - 1 for w in f[s + 1:]) & 1
    sign = -1 if g_par & later else 1
    left = tuple(tuple(up(a) for a in w) for w in f[:s])
    right = tuple(tuple(up(a) for a in w) for w in f[s + 1:])
    out = algebra.multiply(algebra.multiply({left: 1}, e), {right: 1})
    return tuple(sorted((mono, sign * c) for mono, c in out.items()))


def compose(a: OperadElement, i: int, b: OperadElement) -> OperadElement:
    """a o_i b: plug b into input i of a."""
    if a.parities or b.parities:
        raise OperadError("compose acts on operad elements, not on evaluations")
    if a.d != b.d:
        raise OperadError(f"d mismatch: {a.d} vs {b.d}")
    if not 1 <= i <= a.n:
        raise OperadError(f"slot {i} out of range 1..{a.n}")
    out: dict[Monomial, int] = {}
    for f, c1 in a.terms.items():
        for g, c2 in b.terms.items():
            for mono, c in _compose_monomials(f, i, g, b.n):
                add_into(out, mono, c * c1 * c2)
    return OperadElement(a.n + b.n - 1, a.d, out)


# ---------------------------------------------------------------------------
# symmetric group


def _perm_inversion_parity(seq: Sequence[int], weight) -> int:
    e = 0
    for x in range(len(seq)):
        for y in range(x + 1, len(seq)):
            if seq[x] > seq[y]:
                e ^= weight(seq[x]) & weight(seq[y])
    return e


class SignedPermutation:
    """A permutation p of {1..n}, stored as the tuple (p(1), ..., p(n))."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(a) for a in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise OperadError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.images)

    def __call__(self, t: int) -> int:
        return self.images[t - 1]

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"SignedPermutation({self.images})"

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        """(p * q)(t) = p(q(t))."""
        if len(other) != len(self):
            raise OperadError("size mismatch")
        return SignedPermutation(self.images[q - 1] for q in other.images)

    def inverse(self) -> SignedPermutation:
        inv = [0] * len(self.images)
        for t, a in enumerate(self.images, start=1):
            inv[a - 1] = t
        return SignedPermutation(inv)

    def koszul_sign(self, parities: Sequence[int] | None) -> int:
        """Sign of rearranging graded z_1..z_n into z_p(1)..z_p(n)."""
        if not parities or not any(parities):
            return 1
        if len(parities) != len(self.images):
            raise OperadError("size mismatch")
        return -1 if _perm_inversion_parity(self.images, lambda a: parities[a - 1]) else 1

    def act(self, e: OperadElement, parities: Sequence[int] | None = None) -> OperadElement:
        return sigma_act(self, e, parities)


def _as_perm(p) -> SignedPermutation:
    return p if isinstance(p, SignedPermutation) else SignedPermutation(p)


def relabel(e: OperadElement, p) -> OperadElement:
    """Rename each generator x_t to x_p(t). On graded generators the
    parity travels with the generator."""
    p = _as_perm(p)
    if len(p) != e.n:
        raise OperadError(f"size mismatch: permutation of {len(p)} on arity {e.n}")
    mapping = {t: p(t) for t in range(1, e.n + 1)}
    par = None
    if e.parities:
        new = [0] * e.n
        for t in range(1, e.n + 1):
            new[p(t) - 1] = e.parities[t - 1]
        par = tuple(new)
    out: dict[Monomial, int] = {}
    for mono, c in e.terms.items():
        for m, k in algebra.relabel_monomial(mono, mapping, par).items():
            add_into(out, m, c * k)
    return OperadElement(e.n, e.d, out, par)


def _evaluation_sign(mono: Monomial, slots: Sequence[int], par: Sequence[int]) -> int:
    pi = [par[s - 1] for s in slots]  # parity of the input in slot t is pi[t-1]
    e = 0
    seen = 0
    for w in mono:
        if (len(w) - 1) & seen & 1:
            e ^= 1
        for a in w:
            seen ^= pi[a - 1]
    e ^= _perm_inversion_parity(monomial_letters(mono), lambda a: pi[a - 1])
    return -1 if e else 1


def evaluate(e: OperadElement, slots, parities: Sequence[int] | None) -> OperadElement:
    """The value e(z_slots(1), ..., z_slots(n)) in the free algebra on
    generators z_1..z_n with the given parities."""
    if e.parities:
        raise OperadError("evaluate acts on operad elements")
    slots = _as_perm(slots)
    if len(slots) != e.n:
        raise OperadError("size mismatch")
    par = tuple(parities) if parities else (0,) * e.n
    if len(par) != e.n:
        raise OperadError(f"need {e.n} parities, got {len(par)}")
    mapping = {t: slots(t) for t in range(1, e.n + 1)}
    out: dict[Monomial, int] = {}
    for mono, c in e.terms.items():
        sign = _evaluation_sign(mono, slots.images, par)
        for m, k in algebra.relabel_monomial(mono, mapping, par).items():
            add_into(out, m, sign * c * k)
    return OperadElement(e.n, e.d, out, par)


def sigma_act(p, e: OperadElement, parities: Sequence[int] | None = None) -> OperadElement:
    """Symmetric-group action on graded inputs: the Koszul sign of p on
    the parities times e(z_p(1), ..., z_p(n)). For even inputs this is
    :func:`relabel`."""
    p = _as_perm(p)
    if parities is not None and len(parities) != e.n:
        raise OperadError(f"need {e.n} parities, got {len(parities)}")
    if not parities or not any(parities):
        return relabel(e, p)
    return p.koszul_sign(parities) * evaluate(e, p, parities)


# ---------------------------------------------------------------------------
# the operadic derivation


def delta(e: OperadElement) -> OperadElement:
    """Delta of degree 2d-1: the pairwise-bracket formula."""
    return OperadElement(e.n, e.d, algebra.delta(e.terms, e.parities), e.parities)


@lru_cache(maxsize=None)
def _delta_mu_recursive(k: int, d: int) -> OperadElement:
    if k < 2:
        return OperadElement(k, d, {})
    if k == 2:
        return lam(d)
    return compose(lam(d), 1, mu(k - 1, d)) + compose(mu(2, d), 1, _delta_mu_recursive(k - 1, d))


def _standard_word(word: Word) -> Word:
    rank = {a: t for t, a in enumerate(sorted(word), start=1)}
    return tuple(rank[a] for a in word)


def delta_recursive(e: OperadElement) -> OperadElement:
    """Delta computed from the derivation rule alone.

    Each monomial is built as (mu_r o_r L_r) ... o_1 L_1 followed by a
    relabelling; Delta kills bracket words and Delta(mu_r) follows from
    Delta(mu_2) = lambda, so Delta of the monomial is
    (Delta(mu_r) o_r L_r) ... o_1 L_1 relabelled the same way.
    """
    if e.parities:
        raise OperadError("delta_recursive acts on operad elements")
    d = e.d
    out = OperadElement(e.n, d, {})
    for mono, c in e.terms.items():
        r = len(mono)
        if r < 2:
            continue
        built = mu(r, d)
        dbuilt = _delta_mu_recursive(r, d)
        for s in range(r, 0, -1):
            word = OperadElement(len(mono[s - 1]), d, {(_standard_word(mono[s - 1]),): 1})
            built = compose(built, s, word)
            dbuilt = compose(dbuilt, s, word)
        images = [a for w in mono for a in sorted(w)]
        perm = SignedPermutation(images)
        target = relabel(built, perm)
        if set(target.terms) != {mono} or abs(target.terms[mono]) != 1:
            raise AssertionError(f"composition tree does not rebuild {mono}")
        out = out + (c * target.terms[mono]) * relabel(dbuilt, perm)
    return out


def bracket_generator(k: int, d: int) -> OperadElement:
    """B_k = Delta(mu_k), the k-ary bracket of degree 2d-1."""
    if k < 2:
        raise OperadError("brackets have arity at least 2")
    return delta(mu(k, d))


# ---------------------------------------------------------------------------
# ranks


def delta_matrix(n: int, d: int, degree: int) -> tuple[IntMatrix, list[Monomial], list[Monomial]]:
    """Matrix of Delta from ``degree`` to ``degree + 2d - 1``; columns index
    the source basis."""
    src = poisson_basis(n, d, degree)
    tgt = poisson_basis(n, d, degree + 2 * d - 1)
    index = {m: t for t, m in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for col, m in enumerate(src):
        for m2, c in algebra.delta_monomial(m).items():
            rows[index[m2]][col] = c
    return IntMatrix.from_rows(rows, cols=len(src)), src, tgt


def _delta_ranks(n: int, d: int) -> dict[int, tuple[int, int]]:
    """degree -> (dimension, rank of Delta leaving that degree)."""
    h = 2 * d - 1
    out = {}
    for r in range(1, n + 1):
        q = (n - r) * h
        m, src, _ = delta_matrix(n, d, q)
        out[q] = (len(src), exactla.rank(m) if m.rows and src else 0)
    return out


def kernel_rank_profile(n: int, d: int) -> GradedRankProfile:
    if n < 2:
        raise OperadError("kernel profile is defined for arity >= 2")
    return GradedRankProfile({q: dim - rk for q, (dim, rk) in _delta_ranks(n, d).items()})


def image_rank_profile(n: int, d: int) -> GradedRankProfile:
    h = 2 * d - 1
    return GradedRankProfile({q + h: rk for q, (_, rk) in _delta_ranks(n, d).items()})


def kernel_basis(n: int, d: int, degree: int) -> list[OperadElement]:
    m, src, _ = delta_matrix(n, d, degree)
    if not src:
        return []
    if m.rows == 0:
        return [OperadElement(n, d, {s: 1}) for s in src]
    return [OperadElement(n, d, {s: c for s, c in zip(src, v) if c}) for v in exactla.kernel_basis(m)]


def in_kernel(e: OperadElement) -> bool:
    return not delta(e)


# ---------------------------------------------------------------------------
# formatting


def format_word(w: Word) -> str:
    s = f"x{w[0]}"
    for a in w[1:]:
        s = f"{{{s},x{a}}}"
    return s


def format_monomial(m: Monomial) -> str:
    return "*".join(format_word(w) for w in m)


def format_element(e: OperadElement) -> str:
    if not e.terms:
        return "0"
    out = ""
    for m, c in e.sorted_terms():
        body = format_monomial(m)
        text = body if abs(c) == 1 else f"{abs(c)}*{body}"
        if not out:
            out = text if c > 0 else f"-{text}"
        else:
            out += f" + {text}" if c > 0 else f" - {text}"
    return out

