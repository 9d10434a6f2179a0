"""Finite flag complexes of dimension at most 2.

A complex is an immutable value: an ordered vertex list (the order is the
default generator order everywhere downstream), edges, triangles and an
optional provenance map produced by barycentric subdivision.
"""

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .snf import abelian_invariants

PROVENANCE_KINDS = ("original", "edge", "face")


class ComplexError(ValueError):
    """Raised for malformed complexes or orderings."""


@dataclass(frozen=True, eq=False)
class FlagComplex:
    vertices: tuple
    edges: frozenset
    triangles: frozenset = frozenset()
    provenance: dict = None
    ordering: tuple = None
    tree: frozenset = None

    @classmethod
    def build(cls, vertices, edges=(), triangles=(), provenance=None, ordering=None, tree=None):
        vertices = tuple(str(v) for v in vertices)
        edges = frozenset(frozenset(str(x) for x in e) for e in edges)
        triangles = frozenset(frozenset(str(x) for x in t) for t in triangles)
        if provenance is not None:
            provenance = {str(k): v for k, v in provenance.items()}
        if ordering is not None:
            ordering = tuple(str(v) for v in ordering)
        if tree is not None:
            tree = frozenset(frozenset(str(x) for x in e) for e in tree)
        return cls(vertices, edges, triangles, provenance, ordering, tree)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self):
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            if len(e) == 2:
                u, w = tuple(e)
                if u in adj and w in adj:
                    adj[u].add(w)
                    adj[w].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbours(self, v):
        """Neighbours of ``v`` sorted by vertex order."""
        return sorted(self.adjacency[v], key=self.index.__getitem__)

    def has_edge(self, u, w):
        return w in self.adjacency.get(u, ())

    def sort_vertices(self, vs):
        return sorted(vs, key=self.index.__getitem__)

    @cached_property
    def edge_list(self):
        pairs = [tuple(self.sort_vertices(e)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index[p[0]], self.index[p[1]]))

    @cached_property
    def triangle_list(self):
        tris = [tuple(self.sort_vertices(t)) for t in self.triangles]
        return sorted(tris, key=lambda t: tuple(self.index[x] for x in t))

    @property
    def dimension(self):
        if self.triangles:
            return 2
        return 1 if self.edges else 0

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def kind(self, v):
        """Provenance of ``v`` ("original" when there is no provenance)."""
        if self.provenance is None:
            return "original"
        return self.provenance[v]

    def __eq__(self, other):
        if not isinstance(other, FlagComplex):
            return NotImplemented
        return (self.vertices, self.edges, self.triangles, self.provenance, self.ordering, self.tree) == (
            other.vertices, other.edges, other.triangles, other.provenance, other.ordering, other.tree)

    def __hash__(self):
        return hash((self.vertices, self.edges, self.triangles))

    def __repr__(self):
        return f"FlagComplex(V={len(self.vertices)}, E={len(self.edges)}, T={len(self.triangles)})"


def validate(c, flag=True):
    """List every violated invariant of ``c``; empty means valid.

    With ``flag=False`` only simplicial well-formedness is checked, which is
    what a complex that is about to be subdivided needs.
    """
    problems = []
    known = set(c.vertices)
    if len(known) != len(c.vertices):
        problems.append("duplicate vertex identifiers")
    for e in sorted(c.edges, key=sorted):
        if len(e) != 2:
            problems.append(f"degenerate edge {sorted(e)}")
        for v in sorted(e - known):
            problems.append(f"edge {sorted(e)} uses undeclared vertex {v}")
    for t in sorted(c.triangles, key=sorted):
        if len(t) != 3:
            problems.append(f"degenerate triangle {sorted(t)}")
            continue
        missing = sorted(t - known)
        for v in missing:
            problems.append(f"triangle {sorted(t)} uses undeclared vertex {v}")
        for pair in combinations(sorted(t), 2):
            if frozenset(pair) not in c.edges:
                problems.append(f"triangle {sorted(t)} lacks edge {list(pair)}")
    if problems:
        return problems
    if flag:
        for a, b in c.edge_list:
            common = c.sort_vertices(c.adjacency[a] & c.adjacency[b])
            for x in common:
                if c.index[x] > c.index[b] and frozenset((a, b, x)) not in c.triangles:
                    problems.append(f"unfilled 3-clique {[a, b, x]}")
            for x, y in combinations(common, 2):
                if c.index[x] > c.index[b] and c.has_edge(x, y):
                    problems.append(f"4-clique present {[a, b, x, y]}")
    if c.provenance is not None:
        for v in c.vertices:
            if c.provenance.get(v) not in PROVENANCE_KINDS:
                problems.append(f"vertex {v} has no valid provenance")
        for v in sorted(set(c.provenance) - known):
            problems.append(f"provenance names undeclared vertex {v}")
    if c.ordering is not None and sorted(c.ordering) != sorted(
            v for v in c.vertices if c.kind(v) != "face"):
        if sorted(c.ordering) != sorted(c.vertices):
            problems.append("ordering is not a permutation of the vertices")
    return problems


def euler_characteristic(c):
    return len(c.vertices) - len(c.edges) + len(c.triangles)


def raag_euler_characteristic(c):
    """chi(G) = 1 - chi(Sigma)."""
    return 1 - euler_characteristic(c)


@dataclass(frozen=True)
class H1:
    free_rank: int
    torsion: tuple

    @property
    def trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def one_acyclic(self):
        # reduced H_0 vanishes for connected complexes, so 1-acyclic means H_1 = 0
        return self.trivial

    @property
    def not_simply_connected(self):
        return not self.trivial


def _components(c):
    seen = set()
    count = 0
    for v in c.vertices:
        if v in seen:
            continue
        count += 1
        todo = [v]
        seen.add(v)
        while todo:
            x = todo.pop()
            for y in c.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return count


def boundary_matrices(c):
    """Return (d1, d2) as dense row lists, edges oriented low -> high index."""
    edges = c.edge_list
    epos = {e: k for k, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in c.vertices]
    for k, (u, w) in enumerate(edges):
        d1[c.index[u]][k] -= 1
        d1[c.index[w]][k] += 1
    tris = c.triangle_list
    d2 = [[0] * len(tris) for _ in edges]
    for k, (a, b, x) in enumerate(tris):
        d2[epos[(b, x)]][k] += 1
        d2[epos[(a, x)]][k] -= 1
        d2[epos[(a, b)]][k] += 1
    return d1, d2


def homology_h1(c):
    """H_1(c; Z) from the simplicial boundary maps."""
    edges = c.edge_list
    epos = {e: k for k, e in enumerate(edges)}
    rank_d1 = len(c.vertices) - _components(c)
    rows = []
    for a, b, x in c.triangle_list:
        rows.append({epos[(b, x)]: 1, epos[(a, x)]: -1, epos[(a, b)]: 1})
    free, torsion = abelian_invariants(rows, len(edges))
    return H1(free - rank_d1, tuple(torsion))


@dataclass(frozen=True)
class OrderedTree:
    ordering: tuple
    tree_edges: frozenset
    parent: dict = field(hash=False)

    @cached_property
    def position(self):
        return {v: i for i, v in enumerate(self.ordering)}

    @property
    def root(self):
        return self.ordering[0]

    def ancestors(self, v):
        chain = [v]
        while chain[-1] in self.parent:
            chain.append(self.parent[chain[-1]])
        return chain

    def path(self, u, w):
        """Vertices of the unique tree path from u to w."""
        if u not in self.position or w not in self.position:
            raise ComplexError(f"vertex not in tree: {u if u not in self.position else w}")
        up = self.ancestors(u)
        wp = self.ancestors(w)
        wset = set(wp)
        meet = next(x for x in up if x in wset)
        head = up[: up.index(meet) + 1]
        tail = wp[: wp.index(meet)]
        return head + tail[::-1]

    def distance(self, u, w):
        return len(self.path(u, w)) - 1

    def is_tree_edge(self, u, w):
        return frozenset((u, w)) in self.tree_edges


def _bfs_tree(c, seed):
    order = [seed]
    parent = {}
    seen = {seed}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for w in c.neighbours(v):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
                queue.append(w)
    return order, parent


def ordering_and_tree(c, seed_vertex=None, ordering=None, tree=None):
    """Vertex ordering plus maximal tree.

    Explicit arguments win over the ``ordering``/``tree`` stored on the complex.
    Without either, a breadth-first search from ``seed_vertex`` (default: the
    first vertex) with lowest-index tie-breaking is used.  A supplied ordering
    without a tree gets parent(v) = the latest earlier neighbour of v.
    """
    if not c.vertices:
        raise ComplexError("empty complex")
    if not c.is_connected():
        raise ComplexError("complex is disconnected")
    if ordering is None:
        ordering = c.ordering
        if tree is None:
            tree = c.tree
    if ordering is None:
        if tree is not None:
            raise ComplexError("a tree needs an ordering")
        seed = seed_vertex if seed_vertex is not None else c.vertices[0]
        if seed not in c.index:
            raise ComplexError(f"unknown seed vertex {seed}")
        order, parent = _bfs_tree(c, seed)
        edges = frozenset(frozenset((v, p)) for v, p in parent.items())
        return OrderedTree(tuple(order), edges, parent)

    ordering = tuple(str(v) for v in ordering)
    if sorted(ordering) != sorted(c.vertices):
        raise ComplexError("ordering is not a permutation of the vertices")
    pos = {v: i for i, v in enumerate(ordering)}
    for v in ordering[1:]:
        if not any(pos[w] < pos[v] for w in c.adjacency[v]):
            raise ComplexError(f"vertex {v} has no earlier neighbour in the ordering")
    if tree is None:
        parent = {v: max((w for w in c.adjacency[v] if pos[w] < pos[v]), key=pos.__getitem__)
                  for v in ordering[1:]}
        edges = frozenset(frozenset((v, p)) for v, p in parent.items())
        return OrderedTree(ordering, edges, parent)

    tree = frozenset(frozenset(str(x) for x in e) for e in tree)
    for e in tree:
        if e not in c.edges:
            raise ComplexError(f"tree edge {sorted(e)} is not an edge")
    if len(tree) != len(c.vertices) - 1:
        raise ComplexError("tree does not have |V|-1 edges")
    tadj = {v: [] for v in c.vertices}
    for e in tree:
        u, w = tuple(e)
        tadj[u].append(w)
        tadj[w].append(u)
    parent = {}
    seen = {ordering[0]}
    todo = [ordering[0]]
    while todo:
        v = todo.pop()
        for w in tadj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                todo.append(w)
    if len(seen) != len(c.vertices):
        raise ComplexError("tree is not spanning")
    for v, p in parent.items():
        if pos[p] > pos[v]:
            raise ComplexError(f"tree parent {p} of {v} comes later in the ordering")
    return OrderedTree(ordering, tree, parent)


def _fresh(name, taken):
    out = name
    k = 1
    while out in taken:
        k += 1
        out = f"{name}#{k}"
    taken.add(out)
    return out


def barycentric_subdivide(d):
    """Full barycentric subdivision with provenance.

    Edge barycentres are named ``u_w`` and face barycentres ``u_v_w``, corners in
    vertex order.  The input only has to be a simplicial complex; the output is
    always flag.
    """
    taken = set(d.vertices)
    verts = list(d.vertices)
    prov = {v: "original" for v in d.vertices}
    ebary = {}
    for u, w in d.edge_list:
        name = _fresh(f"{u}_{w}", taken)
        ebary[frozenset((u, w))] = name
        verts.append(name)
        prov[name] = "edge"
    edges = set()
    for e, b in ebary.items():
        for v in e:
            edges.add(frozenset((v, b)))
    triangles = set()
    for a, b, x in d.triangle_list:
        f = _fresh(f"{a}_{b}_{x}", taken)
        verts.append(f)
        prov[f] = "face"
        for v in (a, b, x):
            edges.add(frozenset((v, f)))
        for pair in ((a, b), (a, x), (b, x)):
            eb = ebary[frozenset(pair)]
            edges.add(frozenset((eb, f)))
            for v in pair:
                triangles.add(frozenset((v, eb, f)))
    return FlagComplex.build(verts, edges, triangles, prov)


def sigma_one(s):
    """Delete face barycentres (and everything touching them)."""
    if s.provenance is None:
        raise ComplexError("sigma_one needs provenance")
    keep = [v for v in s.vertices if s.provenance[v] != "face"]
    ks = set(keep)
    edges = [e for e in s.edges if e <= ks]
    tris = [t for t in s.triangles if t <= ks]
    prov = {v: s.provenance[v] for v in keep}
    ordering = None
    if s.ordering is not None:
        ordering = [v for v in s.ordering if v in ks]
    return FlagComplex.build(keep, edges, tris, prov, ordering, s.tree)


def edge_barycentre(s, u, w):
    """The edge barycentre between originals u and w of a subdivided complex."""
    for x in s.adjacency[u] & s.adjacency[w]:
        if s.kind(x) == "edge":
            return x
    raise ComplexError(f"no edge barycentre between {u} and {w}")


def _check_loop(s, loop):
    loop = [str(v) for v in loop]
    if len(loop) > 1 and loop[0] == loop[-1]:
        loop = loop[:-1]
    if len(loop) < 3:
        raise ComplexError("loop must have at least 3 vertices")
    if len(set(loop)) != len(loop):
        raise ComplexError("loop is not simple: a vertex repeats")
    for v in loop:
        if v not in s.index:
            raise ComplexError(f"loop vertex {v} is not in the complex")
    for a, b in zip(loop, loop[1:] + loop[:1]):
        if not s.has_edge(a, b):
            raise ComplexError(f"loop is not closed: {a} and {b} are not adjacent")
    return loop


@dataclass(frozen=True)
class Cone:
    complex: FlagComplex
    apex: str
    loop: tuple          # subdivided loop, starting at an original vertex
    spokes: dict         # loop original -> spoke barycentre
    faces: tuple         # (face barycentre, v_j, loop edge barycentre, v_{j+1})


def cone(s, loop, apex="c"):
    """Cone off ``loop`` and return the construction with its bookkeeping."""
    loop = _check_loop(s, loop)
    if s.provenance is None:
        s = barycentric_subdivide(s)
        sub = []
        for a, b in zip(loop, loop[1:] + loop[:1]):
            sub += [a, edge_barycentre(s, a, b)]
        loop = sub
    else:
        if s.kind(loop[0]) != "original":
            loop = loop[1:] + loop[:1]
        for k, v in enumerate(loop):
            want = "original" if k % 2 == 0 else "edge"
            if s.kind(v) != want or len(loop) % 2:
                raise ComplexError("loop must alternate original vertices and edge barycentres")
    taken = set(s.vertices)
    if apex in taken:
        raise ComplexError(f"apex name {apex} already used")
    taken.add(apex)
    verts = list(s.vertices) + [apex]
    prov = dict(s.provenance)
    prov[apex] = "original"
    edges = set(s.edges)
    tris = set(s.triangles)
    originals = loop[0::2]
    spokes = {}
    for v in originals:
        m = _fresh(f"{apex}_{v}", taken)
        spokes[v] = m
        verts.append(m)
        prov[m] = "edge"
        edges |= {frozenset((apex, m)), frozenset((m, v))}
    faces = []
    k = len(originals)
    for j in range(k):
        v, e, w = originals[j], loop[2 * j + 1], originals[(j + 1) % k]
        f = _fresh(f"{apex}_{v}_{w}", taken)
        verts.append(f)
        prov[f] = "face"
        for x in (apex, v, w, e, spokes[v], spokes[w]):
            edges.add(frozenset((x, f)))
        for chain in ((apex, spokes[v]), (apex, spokes[w]), (v, spokes[v]),
                      (w, spokes[w]), (v, e), (w, e)):
            tris.add(frozenset(chain + (f,)))
        faces.append((f, v, e, w))
    out = FlagComplex.build(verts, edges, tris, prov)
    return Cone(out, apex, tuple(loop), spokes, tuple(faces))


def cone_off(s, loop, apex="c"):
    """Attach a cone of subdivided 2-simplices over an edge loop."""
    return cone(s, loop, apex).complex


def subdivision_ordering(s, seed=None):
    """Ordering and tree for Sigma_1 of a subdivided complex.

    Breadth-first over the original complex: a tree edge u-w becomes the
    two-step path u, bary(uw), w.  Barycentres of the remaining edges come last,
    each hanging off its earlier endpoint, so every non-tree edge of Sigma_1
    ends at a barycentre.
    """
    if s.provenance is None:
        raise ComplexError("subdivision ordering needs provenance")
    originals = [v for v in s.vertices if s.kind(v) == "original"]
    ends = {}
    for v in s.vertices:
        if s.kind(v) == "edge":
            ends[v] = s.sort_vertices(w for w in s.adjacency[v] if s.kind(w) == "original")
    incident = {v: [] for v in originals}
    for b, pair in ends.items():
        if len(pair) != 2:
            raise ComplexError(f"edge barycentre {b} does not sit between two originals")
        for v in pair:
            incident[v].append(b)
    seed = originals[0] if seed is None else seed
    order = [seed]
    parent = {}
    seen = {seed}
    queue = deque([seed])
    used = set()
    while queue:
        u = queue.popleft()
        nxt = [(ends[b][0] if ends[b][1] == u else ends[b][1], b) for b in incident[u]]
        for w, b in sorted(nxt, key=lambda p: (s.index[p[0]], s.index[p[1]])):
            if w in seen:
                continue
            seen.add(w)
            used.add(b)
            order += [b, w]
            parent[b] = u
            parent[w] = b
            queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    for b in s.vertices:
        if s.kind(b) == "edge" and b not in used:
            if any(x not in pos for x in ends[b]):
                raise ComplexError("original complex is disconnected")
            parent[b] = min(ends[b], key=pos.__getitem__)
            pos[b] = len(order)
            order.append(b)
    edges = frozenset(frozenset((v, p)) for v, p in parent.items())
    return OrderedTree(tuple(order), edges, parent)


# -- file format ---------------------------------------------------------------

def complex_from_dict(doc):
    try:
        return FlagComplex.build(doc["vertices"], doc.get("edges", ()), doc.get("triangles", ()),
                                 doc.get("provenance"), doc.get("ordering"), doc.get("tree"))
    except (KeyError, TypeError) as exc:
        raise ComplexError(f"malformed complex document: {exc}") from exc


def complex_to_dict(c):
    doc = {
        "vertices": list(c.vertices),
        "edges": [list(e) for e in c.edge_list],
        "triangles": [list(t) for t in c.triangle_list],
    }
    if c.ordering is not None:
        doc["ordering"] = list(c.ordering)
    if c.provenance is not None:
        doc["provenance"] = {v: c.provenance[v] for v in c.vertices}
    if c.tree is not None:
        doc["tree"] = sorted([c.sort_vertices(e) for e in c.tree],
                             key=lambda p: (c.index[p[0]], c.index[p[1]]))
    return doc


def load_complex(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"cannot parse {path}: {exc}") from exc
    return complex_from_dict(doc)


def dump_complex(c, path):
    Path(path).write_text(json.dumps(complex_to_dict(c), indent=1) + "\n", encoding="utf-8")


FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_names():
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def fixture(name):
    """Load a bundled complex by name (``hexagon``, ``rp2``, ...)."""
    path = FIXTURE_DIR / f"{name}.json"
    if not path.exists():
        raise ComplexError(f"no bundled fixture named {name}")
    return load_complex(path)
