"""Independent checks: Reidemeister-Schreier presentations of Gamma_n built from
the standard RAAG presentation, Todd-Coxeter coset enumeration, and the
composite verifier."""

import os
from dataclasses import dataclass, field

from .complex import euler_characteristic
from .presentation import Generator, Presentation, RelationTag, Relator, abelianize
from .words import Word, commutator, exponent_sum, expand, is_trivial

DEFAULT_COSET_LIMIT = 10**6
COSET_LIMIT_ENV = "RAAGPRES_COSET_LIMIT"


def default_coset_limit():
    val = os.environ.get(COSET_LIMIT_ENV)
    return int(val) if val else DEFAULT_COSET_LIMIT


def raag_presentation(c):
    """<a_v | [a_u, a_w] for every edge>, generator symbols are the vertex names."""
    gens = tuple(Generator(v, "vertex", Word([(v, 1)])) for v in c.vertices)
    rels = tuple(Relator(commutator(Word([(u, 1)]), Word([(w, 1)])), RelationTag("raag", edge=(u, w)))
                 for u, w in c.edge_list)
    return Presentation(gens, rels)


def reidemeister_schreier(c, n):
    """Presentation of Gamma_n = pi^-1(nZ) with transversal a_1^p, 0 <= p < n.

    After deleting the trivial Schreier generators s(p, v_1), p < n-1, there are
    n(N-1)+1 generators and n|E| relators.
    """
    v1 = c.vertices[0]

    def sym(p, v):
        return f"s{p}[{v}]"

    def letter(p, v, sign):
        # Schreier generator for a_v^sign read at coset p
        if sign == 1:
            q = p
        else:
            q = (p - 1) % n
        if v == v1 and q != n - 1:
            return []
        return [(sym(q, v), sign)]

    gens = []
    for p in range(n):
        for v in c.vertices:
            if v == v1 and p != n - 1:
                continue
            # a_1^p a_v (a_1^{p+1 mod n})^-1
            img = Word.gen(v1, p) * Word([(v, 1)]) * Word.gen(v1, -((p + 1) % n))
            gens.append(Generator(sym(p, v), "schreier", img))
    rels = []
    for u, w in c.edge_list:
        for p in range(n):
            word = []
            h = p
            for v, e in ((u, 1), (w, 1), (u, -1), (w, -1)):
                word += letter(h % n, v, e)
                h += e
            rels.append(Relator(Word(word), RelationTag("schreier", edge=(u, w), index=p)))
    return Presentation(tuple(gens), tuple(rels), n)


class CosetOverflow(Exception):
    pass


@dataclass(frozen=True)
class CosetResult:
    index: int = None
    overflow: bool = False
    defined: int = 0

    def __str__(self):
        return "overflow" if self.overflow else str(self.index)


def todd_coxeter(raag, subgroup_words, coset_limit=None):
    """Index of the subgroup generated by ``subgroup_words`` (HLT with lookahead).

    ``raag`` is any presentation whose generator symbols are the letters used in
    the words.  Returns a :class:`CosetResult`; overflow is reported, not raised.
    """
    limit = default_coset_limit() if coset_limit is None else coset_limit
    col = {}
    for k, s in enumerate(raag.symbols):
        col[s] = 2 * k
    ncols = 2 * len(raag.symbols)

    def encode(w):
        return [col[s] + (0 if e == 1 else 1) for s, e in w]

    relators = [encode(r.word) for r in raag.relators if r.word]
    subgens = [encode(Word(w)) for w in subgroup_words]

    table = [[-1] * ncols]
    fwd = [0]
    live = [1]

    def rep(c):
        r = c
        while fwd[r] != r:
            r = fwd[r]
        while fwd[c] != r:
            fwd[c], c = r, fwd[c]
        return r

    def define(c, x):
        if live[0] >= limit:
            lookahead()
            if live[0] >= limit:
                raise CosetOverflow
        d = len(table)
        table.append([-1] * ncols)
        fwd.append(d)
        live[0] += 1
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(k, m, queue):
        k, m = rep(k), rep(m)
        if k == m:
            return
        if k > m:
            k, m = m, k
        fwd[m] = k
        live[0] -= 1
        queue.append(m)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d < 0:
                    continue
                if table[d][x ^ 1] == g:
                    table[d][x ^ 1] = -1
                m1, d1 = rep(g), rep(d)
                if table[m1][x] >= 0:
                    merge(d1, table[m1][x], queue)
                elif table[d1][x ^ 1] >= 0:
                    merge(m1, table[d1][x ^ 1], queue)
                else:
                    table[m1][x] = d1
                    table[d1][x ^ 1] = m1

    def scan(c, w, fill):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            define(f, w[i])

    def lookahead():
        for c in range(len(table)):
            if fwd[c] != c:
                continue
            for r in relators:
                if fwd[c] != c:
                    break
                scan(c, r, False)

    try:
        for w in subgens:
            scan(0, w, True)
        c = 0
        while c < len(table):
            if fwd[c] == c:
                for r in relators:
                    if fwd[c] != c:
                        break
                    scan(c, r, True)
                if fwd[c] == c:
                    for x in range(ncols):
                        if table[c][x] < 0:
                            define(c, x)
            c += 1
    except CosetOverflow:
        return CosetResult(None, True, len(table))
    return CosetResult(live[0], False, len(table))


@dataclass(frozen=True)
class VerificationReport:
    n: int
    relator_soundness: tuple
    image_in_subgroup: tuple
    index: CosetResult
    abelianization_match: bool
    counts_match: bool = None
    notes: tuple = field(default=())

    @property
    def passed(self):
        return (all(self.relator_soundness) and all(self.image_in_subgroup)
                and not self.index.overflow and self.index.index == self.n
                and self.abelianization_match is not False and self.counts_match is not False)

    def to_dict(self):
        return {
            "status": "PASS" if self.passed else "FAIL",
            "n": self.n,
            "relator_soundness": list(self.relator_soundness),
            "failing_relators": [i for i, ok in enumerate(self.relator_soundness) if not ok],
            "image_in_subgroup": list(self.image_in_subgroup),
            "index": "overflow" if self.index.overflow else self.index.index,
            "abelianization_match": self.abelianization_match,
            "counts_match": "not applicable" if self.counts_match is None else self.counts_match,
            "notes": list(self.notes),
        }


def verify_presentation(p, ctx, coset_limit=None, abelianization=True):
    """Soundness, subgroup membership, Todd-Coxeter index, abelianization and
    relator count checks for a presentation of Gamma_n."""
    c = ctx.ambient
    n = ctx.n
    images = p.images
    sound = tuple(is_trivial(expand(r.word, images), c) for r in p.relators)
    member = []
    for g in p.generators:
        s = exponent_sum(g.image)
        member.append(s % n == 0 and (g.role != "lambda" or s == n))
    notes = []
    missing = set(c.vertices) - set().union(*(g.image.symbols() for g in p.generators))
    if missing:
        # retracting onto a missing vertex kills the subgroup but not G: infinite index
        index = CosetResult(None, True, 0)
        notes.append(f"vertices {sorted(missing)} occur in no generator image; index is infinite")
    else:
        index = todd_coxeter(raag_presentation(c), [g.image for g in p.generators], coset_limit)
    ab_match = None
    if abelianization:
        ab_match = abelianize(p) == abelianize(reidemeister_schreier(c, n))
    counts = None
    if not c.triangles and all(g.role in ("lambda", "tree_stable") for g in p.generators):
        counts = (len(p.generators) == len(c.vertices)
                  and len(p.relators) == len(c.vertices) - 1 + n * (1 - euler_characteristic(c)))
    return VerificationReport(n, sound, tuple(member), index, ab_match, counts, tuple(notes))
