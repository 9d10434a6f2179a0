"""Overlays of 2-simplices and elimination of size-n families.

Sigma is a barycentric subdivision (it carries provenance).  The presentation
is first built on Sigma_1, then every face barycentre b contributes a stable
letter tau = b a_i^-1 acting on a generating set of Gamma_n meet G_L, where L
is the hexagon linking b.  A family whose edge lies on the boundary of an
overlaid simplex can then be traded for one commutator relator.
"""

from dataclasses import dataclass, replace

from .builder import BuildContext, build_gamma_presentation
from .complex import (ComplexError, OrderedTree, barycentric_subdivide, cone, ordering_and_tree,
                      sigma_one, subdivision_ordering)
from .presentation import Generator, RelationTag, Relator, tietze_define
from .words import (LAMBDA, Word, commutator, commutes, expand, format_word, is_trivial, psi,
                    rewrite_to_subgroup_alphabet, t_symbol, tau_symbol, theta)


class SimplifyError(ValueError):
    pass


@dataclass(frozen=True)
class Overlay:
    simplex: str
    barycentre: str
    attachment: str
    link: tuple
    base_generators: tuple   # (label, word) pairs
    action_relations: tuple  # relator words tau g tau^-1 (image)^-1


@dataclass(frozen=True)
class Elimination:
    step: int
    simplex: str
    removed: tuple
    kept: tuple
    added: Word

    def to_dict(self):
        doc = {"step": self.step, "simplex": self.simplex,
               "removed_family_edge": list(self.removed), "added_relator": format_word(self.added)}
        if self.kept is not None:
            doc["kept_family_edge"] = list(self.kept)
        return doc

    def __str__(self):
        kept = f" keeping F({','.join(self.kept)})" if self.kept else ""
        return f"{self.step}. simplex {self.simplex}: F({','.join(self.removed)}) eliminated{kept}"


def faces(ctx):
    amb = ctx.ambient
    return [v for v in amb.vertices if amb.kind(v) == "face"]


def resolve_simplex(ctx, ident):
    """Accept a face barycentre name, or a bare label such as ``4`` for ``s4``."""
    names = faces(ctx)
    ident = str(ident)
    for cand in (ident, f"s{ident}"):
        if cand in names:
            return cand
    raise SimplifyError(f"unknown simplex {ident}")


def link(ctx, sigma):
    """Sigma_1 vertices adjacent to the barycentre, checked to form a cycle."""
    amb = ctx.ambient
    if sigma not in amb.index or amb.kind(sigma) != "face":
        raise SimplifyError(f"{sigma} is not a face barycentre")
    pos = ctx.tree.position
    L = sorted((v for v in amb.adjacency[sigma] if v in pos), key=pos.__getitem__)
    s1 = ctx.complex
    Lset = set(L)
    for v in L:
        if len(s1.adjacency[v] & Lset) != 2:
            raise SimplifyError(f"link of {sigma} is not a cycle in Sigma_1")
    return L


def boundary_edges(ctx, sigma):
    pos = ctx.tree.position
    L = link(ctx, sigma)
    Lset = set(L)
    out = set()
    for v in L:
        for w in ctx.complex.adjacency[v] & Lset:
            out.add(tuple(sorted((v, w), key=pos.__getitem__)))
    return sorted(out, key=lambda e: (pos[e[0]], pos[e[1]]))


def attachment_vertex(ctx, sigma):
    L = link(ctx, sigma)
    top = L[-1]
    p = ctx.tree.parent.get(top)
    return p if p in L else top


def _base_generators(p, ctx, sigma, tietze):
    """Generators of Gamma_n meet G_L: tree edges of L, one theta word per extra
    edge needed to span L, and the n-th power of the lowest vertex of L."""
    tree = ctx.tree
    pos = tree.position
    L = link(ctx, sigma)
    root = {v: v for v in L}

    def find(v):
        while root[v] != v:
            v = root[v]
        return v

    tree_part = []
    for y in reversed(L):
        z = tree.parent.get(y)
        if z in root:
            tree_part.append((t_symbol(y), Word([(t_symbol(y), 1)])))
            root[find(y)] = find(z)
    loops = []
    for x, y in boundary_edges(ctx, sigma):
        if tree.is_tree_edge(x, y) or find(x) == find(y):
            continue
        root[find(y)] = find(x)
        word = theta(y, x, 1, tree)
        label = f"theta({y},{x})"
        for g in p.generators:
            if g.role == "tietze" and g.definition == word:
                label, word = g.symbol, Word([(g.symbol, 1)])
                break
        else:
            if tietze:
                sym = f"theta_{y}_{x}"
                p = tietze_define(p, sym, word)
                label, word = sym, Word([(sym, 1)])
        loops.append((label, word))
    base = L[0]
    power = Word([(LAMBDA, 1)])
    if base != tree.root:
        power = theta(base, tree.root, ctx.n, tree) * power
    return p, tree_part + loops + [(LAMBDA if base == tree.root else f"a{base}^n", power)]


def tau_action(g, sigma, ctx, images):
    """Word in the Gamma_n alphabet equal in G to tau g tau^-1.

    Since b commutes with G_L, tau g tau^-1 = a_i^-1 g a_i.  We look for a
    vertex c whose generator commutes with g (closest to a_i in the tree, then
    earliest) and conjugate by the tree word for a_i^-1 a_c.  If no such vertex
    exists we fall back to Reidemeister-Schreier rewriting.
    """
    i = attachment_vertex(ctx, sigma)
    gimg = expand(g, images)
    amb = ctx.ambient
    cands = [c for c in ctx.tree.ordering if commutes(Word([(c, 1)]), gimg, amb)]
    if cands:
        c = min(cands, key=lambda v: (ctx.tree.distance(i, v), ctx.tree.position[v]))
        conj = psi(i, c, ctx.tree)
        out = (conj * g * ~conj).free_reduce()
    else:
        try:
            out = rewrite_to_subgroup_alphabet(Word([(i, -1)]) * gimg * Word([(i, 1)]), ctx)
        except Exception as exc:
            raise SimplifyError(f"cannot express tau action on {format_word(g)}: {exc}") from exc
    target = Word([(i, -1)]) * gimg * Word([(i, 1)])
    if not is_trivial(expand(out, images) * ~target, amb):
        raise SimplifyError(f"tau action on {format_word(g)} failed the normal-form check")
    return out


def overlay(p, sigma, ctx, tietze=False):
    """Compute the overlay for ``sigma``; returns (presentation, Overlay).

    The presentation may gain Tietze generators when ``tietze`` is set.
    """
    amb = ctx.ambient
    sym = tau_symbol(sigma)
    if sym in p.symbols:
        raise SimplifyError(f"simplex {sigma} is already overlaid")
    L = link(ctx, sigma)
    i = attachment_vertex(ctx, sigma)
    p, base = _base_generators(p, ctx, sigma, tietze)
    gen = Generator(sym, "simplex_stable", Word([(sigma, 1), (i, -1)]), vertex=sigma)
    p = p.with_generator(gen)
    images = p.images
    tau = Word([(sym, 1)])
    rels = []
    for label, g in base:
        image = tau_action(g, sigma, ctx, images)
        word = tau * g * ~tau * ~image
        if not is_trivial(expand(word, images), amb):
            raise SimplifyError(f"action relator for {label} is not trivial in G")
        rels.append(Relator(word, RelationTag("tau_action", simplex=sigma, generator=label)))
    return p, Overlay(sigma, sigma, i, tuple(L), tuple(base), tuple(r.word for r in rels)), rels


def add_simplex_overlay(p, sigma, ctx, tietze=False):
    """Add tau_sigma and its action relators to ``p``."""
    p, _, rels = overlay(p, sigma, ctx, tietze)
    return p.with_relators(rels)


def _eliminations(p):
    return p.tagged("elimination")


def pinned_edges(p):
    return {r.tag.kept for r in _eliminations(p) if r.tag.kept is not None}


def used_simplices(p):
    return {r.tag.simplex for r in _eliminations(p)}


def _live(p, ctx, sigma):
    fams = set(p.families())
    out = []
    for x, y in boundary_edges(ctx, sigma):
        if not ctx.tree.is_tree_edge(x, y) and (x, y) in fams:
            out.append((x, y))
    return out


def _valid_target(ctx, sigma, e):
    L = set(link(ctx, sigma))
    m = e[1]
    return ctx.tree.parent.get(m) in L


def eligible_eliminations(p, ctx):
    """Candidates (sigma, e, f): f is None when e is the only surviving family on
    the boundary of sigma, otherwise f is the other one and stays.  Single
    candidates come first, then pairs; within each, simplices in order."""
    pinned = pinned_edges(p)
    used = used_simplices(p)
    singles, pairs = [], []
    pos = ctx.tree.position
    for sigma in faces(ctx):
        if tau_symbol(sigma) not in p.symbols or sigma in used:
            continue
        live = _live(p, ctx, sigma)
        if len(live) == 1:
            e = live[0]
            if e not in pinned and _valid_target(ctx, sigma, e):
                singles.append((sigma, e, None))
        elif len(live) == 2:
            opts = [(e, f) for e, f in (live, live[::-1])
                    if e not in pinned and _valid_target(ctx, sigma, e)]
            opts.sort(key=lambda ef: -pos[ef[0][1]])
            pairs += [(sigma, e, f) for e, f in opts]
    return singles + pairs


def elimination_relator(p, ctx, sigma, e):
    """[t_m^-1 tau theta(i, alpha), w_0] for the family of e = (beta, m)."""
    beta, m = e
    alpha = ctx.tree.parent[m]
    i = attachment_vertex(ctx, sigma)
    tau = Word([(tau_symbol(sigma), 1)])
    x = Word([(t_symbol(m), -1)]) * tau * theta(i, alpha, 1, ctx.tree)
    w0 = theta(alpha, beta, 1, ctx.tree)
    return commutator(x, w0)


def eliminate_family(p, sigma, e, ctx, keep=None):
    """Replace the n relators of family ``e`` by one relator from ``sigma``."""
    e = tuple(e)
    keep = tuple(keep) if keep is not None else None
    if e not in p.families():
        raise SimplifyError(f"family F({','.join(e)}) is not present")
    cands = [c for c in eligible_eliminations(p, ctx) if c[0] == sigma and c[1] == e]
    if keep is not None:
        cands = [c for c in cands if c[2] == keep]
    if not cands:
        raise SimplifyError(f"(simplex {sigma}, F({','.join(e)})) is not eligible")
    kept = cands[0][2]
    word = elimination_relator(p, ctx, sigma, e)
    if not is_trivial(expand(word, p.images), ctx.ambient):
        raise SimplifyError("elimination relator is not trivial in G")
    q = p.without(lambda t: t.kind == "family" and t.edge == e)
    return q.with_relators([Relator(word, RelationTag("elimination", edge=e, simplex=sigma, kept=kept))])


def simplify(p, ctx, order=None, keep=()):
    """Greedy elimination; ``order`` forces the simplex sequence, ``keep`` says
    which family to retain when a simplex has two surviving families."""
    keep = {tuple(k) for k in keep}
    log = []

    def apply(cand):
        nonlocal p
        sigma, e, f = cand
        p = eliminate_family(p, sigma, e, ctx, keep=f)
        log.append(Elimination(len(log) + 1, sigma, e, f, p.relators[-1].word))

    if order is None:
        while True:
            cands = eligible_eliminations(p, ctx)
            if not cands:
                break
            apply(cands[0])
        return p, log
    for ident in order:
        sigma = resolve_simplex(ctx, ident)
        cands = [c for c in eligible_eliminations(p, ctx) if c[0] == sigma]
        if not cands:
            raise SimplifyError(f"simplex {sigma} has no eligible elimination")
        pinned = pinned_edges(p)
        cands.sort(key=lambda c: (c[2] is not None, not (c[2] in keep or c[2] in pinned)))
        apply(cands[0])
    return p, log


# -- pipelines --------------------------------------------------------------------

def prepare(sigma, ordering=None, tree=None, seed_vertex=None):
    """Subdivide when needed and pick the Sigma_1 ordering; returns (Sigma, tree)."""
    if sigma.provenance is None:
        if sigma.triangles:
            sigma = barycentric_subdivide(sigma)
        else:
            sigma = replace(sigma, provenance={v: "original" for v in sigma.vertices})
    s1 = sigma_one(sigma)
    if ordering is not None or tree is not None or s1.ordering is not None:
        t = ordering_and_tree(s1, seed_vertex, ordering, tree)
    elif any(s1.kind(v) == "edge" for v in s1.vertices):
        t = subdivision_ordering(s1, seed_vertex)
    else:
        t = ordering_and_tree(s1, seed_vertex)
    return sigma, s1, t


def overlay_pipeline(sigma, n, ordering=None, tree=None, seed_vertex=None, tietze=False):
    """Build on Sigma_1 and overlay every face; returns (presentation, ctx)."""
    try:
        sigma, s1, t = prepare(sigma, ordering, tree, seed_vertex)
    except ComplexError as exc:
        raise SimplifyError(str(exc)) from exc
    ctx = BuildContext(s1, n, t, sigma)
    p = build_gamma_presentation(ctx)
    for f in faces(ctx):
        p = add_simplex_overlay(p, f, ctx, tietze)
    return p, ctx


def overlay_simplify(sigma, n, order=None, keep=(), **kw):
    p, ctx = overlay_pipeline(sigma, n, **kw)
    q, log = simplify(p, ctx, order, keep)
    return q, log, ctx


def cone_off_pipeline(sigma, loop, n, apex="c"):
    """Cone off ``loop`` and remove the family of its first non-tree edge.

    The tree is extended by one full spoke at an endpoint of that edge and by
    the outer halves of the other spokes.  Overlays of the cone simplices are
    eliminated walking around the cone away from the edge, the edge last.
    """
    try:
        made = cone(sigma, loop, apex)
        base = sigma if sigma.provenance is not None else barycentric_subdivide(sigma)
        base, s1, t = prepare(base)
    except ComplexError as exc:
        raise SimplifyError(str(exc)) from exc
    sub = list(made.loop)
    k = len(sub)
    target = None
    for j in range(k):
        x, y = sub[j], sub[(j + 1) % k]
        if not t.is_tree_edge(x, y):
            target = j
            break
    if target is None:
        raise SimplifyError("loop lies entirely in the tree; there is no family to remove")
    x, y = sub[target], sub[(target + 1) % k]
    # x, y are an original and an edge barycentre; orient the walk so that the
    # edge barycentre of e is the "forward" neighbour of the spoke vertex
    if s1.kind(x) == "original":
        va, forward = x, 1
    else:
        va, forward = y, -1
    originals = sub[0::2]
    a = originals.index(va)
    korig = len(originals)
    face_at = {}
    for f, v, e, w in made.faces:
        face_at[(v, w)] = f
    ordering = list(t.ordering)
    parent = dict(t.parent)
    spoke_a = made.spokes[va]
    ordering += [spoke_a, apex]
    parent[spoke_a] = va
    parent[apex] = spoke_a
    walk = [originals[(a - forward * s) % korig] for s in range(1, korig)]
    for v in walk:
        ordering.append(made.spokes[v])
        parent[made.spokes[v]] = v
    edges = frozenset(frozenset((v, q)) for v, q in parent.items())
    s1c = sigma_one(made.complex)
    tree = ordering_and_tree(s1c, ordering=ordering, tree=edges)
    ctx = BuildContext(s1c, n, tree, made.complex)
    p = build_gamma_presentation(ctx)
    cone_faces = []
    prev = va
    for v in walk + [va]:
        pair = (v, prev) if forward == 1 else (prev, v)
        f = face_at.get(pair) or face_at[(pair[1], pair[0])]
        cone_faces.append((f, v))
        prev = v
    # cone_faces[0] is the face between va and its backward neighbour; the last
    # one contains e.  Overlay other faces first, then the cone in walk order.
    cone_set = {f for f, _ in cone_faces}
    for f in faces(ctx):
        if f not in cone_set:
            p = add_simplex_overlay(p, f, ctx)
    for f, _ in cone_faces:
        p = add_simplex_overlay(p, f, ctx)
    log = []
    pos = tree.position
    e_edge = tuple(sorted((x, y), key=pos.__getitem__))
    for step, (f, v) in enumerate(cone_faces):
        if step < len(cone_faces) - 1:
            goal = tuple(sorted((apex, made.spokes[v]), key=pos.__getitem__))
        else:
            goal = e_edge
        live = _live(p, ctx, f)
        others = [g for g in live if g != goal]
        if goal not in live or len(others) > 1:
            raise SimplifyError(f"cone simplex {f} cannot eliminate F({','.join(goal)})")
        p = eliminate_family(p, f, goal, ctx, keep=others[0] if others else None)
        log.append(Elimination(step + 1, f, goal, others[0] if others else None, p.relators[-1].word))
    return p, log, ctx
