import pytest

from raagpres.builder import BuildError, build, dicks_leary, directed_cycles, family_words, make_context
from raagpres.complex import FlagComplex, euler_characteristic, fixture
from raagpres.oracle import reidemeister_schreier
from raagpres.presentation import abelianize
from raagpres.words import Word, expand, is_trivial, normal_form, parse_word

from reference_p6 import p6_relators


def test_hexagon_matches_published_presentation(hexagon):
    for n in (1, 2, 3, 4):
        p, ctx = build(hexagon, n)
        assert p.symbols == ["lambda", "t2", "t3", "t4", "t5", "t6"]
        trees, family = p6_relators(n)
        ours_tree = [r.word.free_reduce() for r in p.tagged("tree_commutator")]
        ours_family = [r.word.free_reduce() for r in p.tagged("family")]
        assert ours_tree == [w.free_reduce() for w in trees]
        assert ours_family == [w.free_reduce() for w in family]


@pytest.mark.parametrize("n", [1, 2, 5])
def test_single_edge(n):
    p, _ = build(fixture("edge"), n)
    assert p.symbols == ["lambda", "t2"]
    assert [r.word for r in p.relators] == [parse_word("t2 lambda t2^-1 lambda^-1")]


def test_cycle4_n2():
    c = fixture("cycle4")
    p, _ = build(c, 2)
    assert len(p.generators) == 4 and len(p.relators) == 3 + 2
    assert abelianize(p) == abelianize(reidemeister_schreier(c, 2))


def test_family_words(hexagon):
    ctx = make_context(hexagon, 3)
    ws = family_words(ctx, "6", 1)
    assert ws[0] == parse_word("t5 t4 t3 t2")
    assert ws[1] == parse_word("t5^2 t4^2 t3^2 t2^2 t2^-1 t3^-1 t4^-1 t5^-1").free_reduce()
    w0 = expand(ws[0], ctx)
    for j, w in enumerate(ws):
        target = Word.gen("5", j) * w0 * Word.gen("5", -j)
        assert is_trivial(expand(w, ctx) * ~target, hexagon)
    assert len(family_words(make_context(hexagon, 1), "6", 1)) == 1
    with pytest.raises(BuildError):
        family_words(ctx, "6", 2)


def test_refuses_triangles_and_disconnected():
    with pytest.raises(BuildError):
        build(fixture("triangle"), 2)
    with pytest.raises(BuildError):
        build(FlagComplex.build(["1", "2", "3"], [("1", "2")]), 2)


@pytest.mark.parametrize("name", ["hexagon", "cycle4", "path4", "tree5", "edge", "rp2_sigma1", "point"])
@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_counts_and_soundness(name, n):
    c = fixture(name)
    p, ctx = build(c, n)
    assert len(p.generators) == len(c.vertices)
    assert len(p.relators) == len(c.vertices) - 1 + n * (1 - euler_characteristic(c))
    for r in p.relators:
        assert is_trivial(expand(r.word, ctx), c)
    for g in p.generators:
        s = sum(e for _, e in g.image)
        assert s == (n if g.role == "lambda" else 0)


def test_step_counts_match_base_rank():
    c = fixture("rp2_sigma1")
    n = 3
    p, ctx = build(c, n)
    for k in ctx.tree.ordering[1:]:
        contributed = [r for r in p.relators if r.tag.vertex == k or (r.tag.edge and r.tag.edge[1] == k)]
        assert len(contributed) == 1 + n * (len(ctx.S[k]) - 1)


def test_n1_is_the_raag():
    c = fixture("cycle4")
    p, _ = build(c, 1)
    assert abelianize(p).free_rank == 4


def test_free_rank_is_vertex_count():
    for name in ["hexagon", "cycle4", "rp2_sigma1"]:
        for n in (2, 3):
            p, _ = build(fixture(name), n)
            assert abelianize(p).free_rank == len(fixture(name).vertices)


def test_dicks_leary_examples(hexagon):
    tri = fixture("triangle")
    p = dicks_leary(tri, 1, 3)
    cyc = [r for r in p.relators if len(r.tag.edge) == 3]
    assert cyc and all(len(r.word) == 3 for r in cyc)
    p = dicks_leary(hexagon, 2, 6)
    six = [r for r in p.relators if len(r.tag.edge) == 6 and r.tag.index == 2]
    assert len(six) == 2 and all(len(r.word) == 12 for r in six)
    p = dicks_leary(hexagon, 3, 2)
    assert all(len(r.tag.edge) == 2 for r in p.relators)
    images = p.images
    for r in p.relators:
        assert is_trivial(expand(r.word, images), hexagon)


def test_directed_cycles_count(hexagon):
    cycles = directed_cycles(hexagon, 6)
    assert sum(1 for c in cycles if len(c) == 2) == 6
    assert sum(1 for c in cycles if len(c) == 6) == 2
