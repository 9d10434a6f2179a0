"""Explicit presentations of Gamma_n for triangle-free Sigma, and the truncated
Dicks-Leary presentation of the kernel."""

from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .complex import ComplexError, euler_characteristic, ordering_and_tree
from .presentation import Generator, Presentation, RelationTag, Relator
from .words import LAMBDA, Word, commutator, is_trivial, t_symbol, theta


class BuildError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BuildContext:
    """Sigma (or Sigma_1), n and the ordered maximal tree.

    ``ambient`` is the complex whose RAAG the words live in; it differs from
    ``complex`` only in the 2-complex pipeline, where face barycentres exist in
    Sigma but not in Sigma_1.
    """

    complex: object
    n: int
    tree: object
    ambient: object = None

    def __post_init__(self):
        if self.n < 1:
            raise BuildError("n must be at least 1")
        if self.ambient is None:
            object.__setattr__(self, "ambient", self.complex)

    @property
    def v1(self):
        return self.tree.root

    @cached_property
    def S(self):
        pos = self.tree.position
        return {k: sorted((v for v in self.complex.adjacency[k] if pos[v] < pos[k]), key=pos.__getitem__)
                for k in self.tree.ordering[1:]}

    @cached_property
    def non_tree_predecessors(self):
        return {k: [v for v in s if v != self.tree.parent[k]] for k, s in self.S.items()}

    @cached_property
    def images(self):
        imgs = {LAMBDA: Word.gen(self.v1, self.n)}
        for k, p in self.tree.parent.items():
            imgs[t_symbol(k)] = Word([(k, 1), (p, -1)])
        return imgs

    def strand_vertex(self, k):
        return self.tree.parent[k]

    def gamma(self, k):
        """gamma_k = theta^n(parent(k), v_1) lambda, equal in G to a_parent^n."""
        return theta(self.tree.parent[k], self.v1, self.n, self.tree) * Word([(LAMBDA, 1)])


def make_context(c, n, seed_vertex=None, ordering=None, tree=None, ambient=None):
    try:
        t = ordering_and_tree(c, seed_vertex, ordering, tree)
    except ComplexError as exc:
        raise BuildError(str(exc)) from exc
    return BuildContext(c, n, t, ambient)


def _words_for(ctx, k, beta):
    alpha = ctx.tree.parent[k]
    out = []
    for j in range(ctx.n):
        # freely reduced form of theta^{j+1} w_{0}^{-1} ... w_{j-1}^{-1}
        w = theta(alpha, beta, j + 1, ctx.tree) * ~theta(alpha, beta, j, ctx.tree)
        out.append(w.free_reduce())
    return out


def family_words(ctx, k, i):
    """w_{i,0}, ..., w_{i,n-1} for the i-th (1-based) non-tree predecessor of v_k."""
    preds = ctx.non_tree_predecessors.get(k, [])
    if not 1 <= i <= len(preds):
        raise BuildError(f"vertex {k} has no non-tree predecessor number {i}")
    return _words_for(ctx, k, preds[i - 1])


def family_relators(ctx, k, beta):
    t = Word([(t_symbol(k), 1)])
    g = ctx.gamma(k)
    ws = _words_for(ctx, k, beta)
    rels = []
    for j, w in enumerate(ws):
        if j == 0:
            word = t * w * ~t * ~g * ~ws[-1] * g
        else:
            word = t * w * ~t * ~ws[j - 1]
        rels.append(Relator(word, RelationTag("family", edge=(beta, k), index=j)))
    return rels


def build_gamma_presentation(ctx):
    """The presentation P_N: generators lambda, t_2..t_N; one tree commutator per
    vertex and a size-n family per non-tree edge."""
    c = ctx.complex
    if c.triangles:
        raise BuildError("complex has 2-simplices; use the overlay pipeline")
    if not c.is_connected():
        raise BuildError("complex is disconnected")
    gens = [Generator(LAMBDA, "lambda", ctx.images[LAMBDA])]
    rels = []
    for k in ctx.tree.ordering[1:]:
        sym = t_symbol(k)
        gens.append(Generator(sym, "tree_stable", ctx.images[sym], vertex=k))
        rels.append(Relator(commutator(Word([(sym, 1)]), ctx.gamma(k)),
                            RelationTag("tree_commutator", vertex=k)))
        for beta in ctx.non_tree_predecessors[k]:
            rels += family_relators(ctx, k, beta)
    p = Presentation(tuple(gens), tuple(rels), ctx.n)
    expected = len(c.vertices) - 1 + ctx.n * (1 - euler_characteristic(c))
    if len(rels) != expected:  # pragma: no cover - would mean the construction is wrong
        raise AssertionError(f"relator count {len(rels)} != {expected}")
    return p


def build(c, n, **kw):
    ctx = make_context(c, n, **kw)
    return build_gamma_presentation(ctx), ctx


def edge_symbol(u, v):
    return f"d({u},{v})"


def directed_cycles(c, max_cycle_len):
    """Closed edge paths up to the given length, one per cyclic rotation class.

    Length 2 cycles are the back-and-forth paths u->v->u; longer ones are the
    simple cycles of the 1-skeleton in both orientations.
    """
    out = []
    if max_cycle_len >= 2:
        for u, v in c.edge_list:
            out.append((u, v))
    if max_cycle_len >= 3:
        g = nx.Graph()
        g.add_nodes_from(c.vertices)
        g.add_edges_from(c.edge_list)
        found = set()
        for cyc in nx.simple_cycles(g, length_bound=max_cycle_len):
            if len(cyc) < 3:
                continue
            k = min(range(len(cyc)), key=lambda i: c.index[cyc[i]])
            cyc = cyc[k:] + cyc[:k]
            found.add(tuple(cyc))
            found.add(tuple(cyc[:1] + cyc[:0:-1]))
        found = sorted(found, key=lambda t: (len(t), [c.index[x] for x in t]))
        out += found
    return out


def dicks_leary(c, n, max_cycle_len):
    """Truncated Dicks-Leary presentation: directed edges, relators e_1^m ... e_k^m
    for every enumerated directed cycle and 1 <= m <= n."""
    if not c.is_connected():
        raise BuildError("complex is disconnected")
    gens = []
    for u, v in c.edge_list:
        for a, b in ((u, v), (v, u)):
            gens.append(Generator(edge_symbol(a, b), "edge", Word([(a, 1), (b, -1)])))
    imgs = {g.symbol: g.image for g in gens}
    rels = []
    for cyc in directed_cycles(c, max_cycle_len):
        steps = list(zip(cyc, cyc[1:] + cyc[:1]))
        for m in range(1, n + 1):
            word = Word(x for a, b in steps for x in Word.gen(edge_symbol(a, b), m))
            image = Word(x for s, e in word for x in (imgs[s] if e == 1 else ~imgs[s]))
            if not is_trivial(image, c):  # pragma: no cover - contradicts the theorem
                raise AssertionError(f"Dicks-Leary relator for {cyc} is not trivial")
            rels.append(Relator(word, RelationTag("dicks_leary", edge=tuple(cyc), index=m)))
    return Presentation(tuple(gens), tuple(rels), n)
