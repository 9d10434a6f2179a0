"""Words in G_Sigma and in the Gamma_n alphabet.

Both kinds of word are tuples of ``(symbol, sign)`` letters with sign in
{+1, -1}.  For words in G_Sigma the symbols are vertex names; for words in
Gamma_n they are presentation generators such as ``lambda``, ``t5`` or
``tau_s4``.
"""

import re
from collections.abc import Mapping
from dataclasses import dataclass

LAMBDA = "lambda"


class WordError(ValueError):
    pass


class Word(tuple):
    """Immutable word; concatenation is ``*``, inversion is ``~``."""

    __slots__ = ()

    def __new__(cls, letters=()):
        out = []
        for sym, sign in letters:
            if sign not in (1, -1):
                raise WordError(f"letter sign must be +1 or -1, got {sign}")
            out.append((sym, sign))
        return super().__new__(cls, out)

    @classmethod
    def gen(cls, sym, power=1):
        sign = 1 if power >= 0 else -1
        return cls([(sym, sign)] * abs(power))

    def __getitem__(self, k):
        out = tuple.__getitem__(self, k)
        return Word(out) if isinstance(k, slice) else out

    def __mul__(self, other):
        return Word(tuple.__add__(self, other))

    __add__ = __mul__

    def __invert__(self):
        return Word((s, -e) for s, e in reversed(self))

    inverse = __invert__

    def __pow__(self, k):
        base = self if k >= 0 else ~self
        return Word(tuple(base) * abs(k))

    def free_reduce(self):
        out = []
        for letter in self:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(out)

    def symbols(self):
        return {s for s, _ in self}

    def syllables(self):
        out = []
        for s, e in self:
            if out and out[-1][0] == s and (out[-1][1] > 0) == (e > 0):
                out[-1][1] += e
            else:
                out.append([s, e])
        return [(s, e) for s, e in out]

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


RaagWord = Word
SubgroupWord = Word
EMPTY = Word()


def format_word(w):
    if not w:
        return ""
    parts = []
    for s, e in Word(w).syllables():
        parts.append(s if e == 1 else f"{s}^{e}")
    return " ".join(parts)


_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def parse_word(text):
    """Parse ``t5^2 t4^-1 lambda``; the empty string is the identity.

    Vertex generators are named by their vertex, so ``1`` is the generator a_1.
    """
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"cannot parse token {tok!r}")
        letters += Word.gen(m.group(1), int(m.group(2) or 1))
    return Word(letters)


def commutator(a, b):
    return Word(a) * Word(b) * ~Word(a) * ~Word(b)


def exponent_sum(w):
    return sum(e for _, e in w)


@dataclass(frozen=True)
class HeightedWord:
    word: Word
    start_height: int = 0

    def heights(self):
        h = [self.start_height]
        for _, e in self.word:
            h.append(h[-1] + e)
        return h

    @property
    def end_height(self):
        return self.start_height + exponent_sum(self.word)

    def closed_at(self, n):
        return exponent_sum(self.word) % n == 0


# -- normal form in G_Sigma ------------------------------------------------------

def _reduce_piles(letters, c):
    """Heap-of-pieces reduction.  Returns per-vertex piles of signs / blockers."""
    idx = c.index
    adj = c.adjacency
    piles = {}
    noncomm = {}
    for v, e in letters:
        if v not in idx:
            raise WordError(f"unknown generator {v}")
        if v not in noncomm:
            noncomm[v] = [u for u in c.vertices if u != v and u not in adj[v]]
        pile = piles.setdefault(v, [])
        if pile and pile[-1] == -e:
            pile.pop()
            for u in noncomm[v]:
                piles[u].pop()
        else:
            pile.append(e)
            for u in noncomm[v]:
                piles.setdefault(u, []).append(0)
    return piles


def normal_form(w, c):
    """Shortlex normal form of ``w`` in the right-angled Artin group of ``c``.

    Generators are ordered by the vertex order of ``c``.  Two words are equal in
    G iff their normal forms coincide.
    """
    piles = _reduce_piles(w, c)
    order = [v for v in c.vertices if piles.get(v)]
    heads = {v: 0 for v in order}
    noncomm = {v: [u for u in c.vertices if u != v and u not in c.adjacency[v]] for v in order}
    out = []
    remaining = sum(1 for v in order for x in piles[v] if x)
    while remaining:
        for v in order:
            h = heads[v]
            if h < len(piles[v]) and piles[v][h]:
                out.append((v, piles[v][h]))
                heads[v] = h + 1
                for u in noncomm[v]:
                    if u in heads:
                        heads[u] += 1
                remaining -= 1
                break
        else:  # pragma: no cover - the pile invariant makes this unreachable
            raise AssertionError("pile structure corrupted")
    return Word(out)


def is_trivial(w, c):
    piles = _reduce_piles(w, c)
    return not any(x for p in piles.values() for x in p)


def equal_in_group(u, w, c):
    return is_trivial(Word(u) * ~Word(w), c)


def commutes(u, w, c):
    u, w = Word(u), Word(w)
    return is_trivial(commutator(u, w), c)


# -- the Gamma_n alphabet -------------------------------------------------------

def t_symbol(v):
    return f"t{v}" if str(v).isdigit() else f"t_{v}"


def tau_symbol(face):
    return f"tau{face}" if str(face).isdigit() else f"tau_{face}"


def theta(v, w, i, tree):
    """theta^i(v, w): the tree path from v to w, child->parent steps give t_child^i."""
    path = tree.path(v, w)
    out = []
    for a, b in zip(path, path[1:]):
        if tree.parent.get(a) == b:
            out += Word.gen(t_symbol(a), i)
        else:
            out += Word.gen(t_symbol(b), -i)
    return Word(out)


def psi(v, w, tree):
    """Tree path word equal in G to a_v^{-1} a_w (theta taken in reverse order)."""
    path = tree.path(v, w)
    out = []
    for a, b in zip(path, path[1:]):
        if tree.parent.get(a) == b:
            out.append((t_symbol(a), -1))
        else:
            out.append((t_symbol(b), 1))
    return Word(out)


def _images(ctx):
    if isinstance(ctx, Mapping):
        return ctx
    return ctx.images


def expand(w, ctx, reduce=False, complex=None):
    """Substitute generator images; optionally return the normal form."""
    images = _images(ctx)
    out = []
    for sym, e in w:
        try:
            img = images[sym]
        except KeyError:
            raise WordError(f"undeclared symbol {sym}") from None
        out += img if e == 1 else ~img
    out = Word(out)
    if reduce:
        c = complex if complex is not None else ctx.ambient
        return normal_form(out, c)
    return out


def rewrite_to_subgroup_alphabet(w, ctx):
    """Reidemeister-Schreier rewrite of a G-word lying in Gamma_n.

    Coset representatives are a_1^p.  The Schreier generator for a_j at coset
    q is theta^q(v_j, v_1)^-1 theta^{q+1}(v_j, v_1), with lambda appended when
    the coset wraps from n-1 back to 0.
    """
    n = ctx.n
    tree = ctx.tree
    v1 = tree.root
    if exponent_sum(w) % n:
        raise WordError(f"exponent sum {exponent_sum(w)} is not divisible by n={n}")

    def schreier(v, q):
        return ~theta(v, v1, q, tree) * theta(v, v1, q + 1, tree)

    h = 0
    out = []
    for v, e in w:
        if v not in tree.position:
            raise WordError(f"vertex {v} has no tree path")
        if e == 1:
            q = h % n
            out += schreier(v, q)
            if q == n - 1:
                out.append((LAMBDA, 1))
            h += 1
        else:
            h -= 1
            q = h % n
            if q == n - 1:
                out.append((LAMBDA, -1))
            out += ~schreier(v, q)
    return Word(out).free_reduce()
