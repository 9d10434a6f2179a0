import pytest

from raagpres.builder import BuildContext, build_gamma_presentation
from raagpres.complex import euler_characteristic, fixture, homology_h1
from raagpres.oracle import verify_presentation
from raagpres.presentation import abelianize
from raagpres.simplifier import (SimplifyError, add_simplex_overlay, attachment_vertex, cone_off_pipeline,
                                 eliminate_family, eligible_eliminations, overlay, overlay_pipeline,
                                 overlay_simplify, prepare, simplify, tau_action)
from raagpres.words import Word, commutator, expand, is_trivial, parse_word

RP2_ORDER = [4, 9, 8, 10, 5, 2, 1, 3, 6]
RP2_STEPS = [("s4", ("1", "6"), None), ("s9", ("5", "19"), None), ("s8", ("8", "9"), None),
             ("s10", ("5", "20"), None), ("s5", ("3", "21"), None), ("s2", ("8", "18"), ("8", "14")),
             ("s1", ("3", "17"), None), ("s3", ("1", "16"), None), ("s6", ("13", "15"), None)]


def ctx_for(name, n, **kw):
    sigma, s1, t = prepare(fixture(name), **kw)
    ctx = BuildContext(s1, n, t, sigma)
    return build_gamma_presentation(ctx), ctx


def relation(lhs, rhs):
    return (parse_word(lhs) * ~parse_word(rhs)).free_reduce()


def test_disc_relation_set_exact():
    n = 3
    p, ctx = ctx_for("disc", n)
    q = add_simplex_overlay(p, "b", ctx)
    got = [r.word.free_reduce() for r in q.tagged("tau_action")]
    T = "tau_b"
    want = [
        commutator(parse_word(T), parse_word("t6")),
        commutator(parse_word(T), parse_word("t5")),
        relation(f"{T} t4 {T}^-1", "t5^-1 t4 t5"),
        relation(f"{T} t3 {T}^-1", "t5^-1 t4^-1 t3 t4 t5"),
        relation(f"{T} t2 {T}^-1", "t5^-1 t4^-1 t3^-1 t2 t3 t4 t5"),
        relation(f"{T} lambda {T}^-1", "t6 lambda t6^-1"),
    ]
    assert got == [w.free_reduce() for w in want]
    assert attachment_vertex(ctx, "b") == "5"


def test_disc_elimination_relator():
    p, log, ctx = overlay_simplify(fixture("disc"), 4)
    (elim,) = p.tagged("elimination")
    w0 = parse_word("t5 t4 t3 t2")
    assert elim.word.free_reduce() == commutator(parse_word("t6^-1 tau_b"), w0).free_reduce()
    assert [str(e) for e in log] == ["1. simplex b: F(1,6) eliminated"]


def test_tau_action_examples():
    p, ctx = ctx_for("disc", 3)
    imgs = dict(ctx.images)
    imgs["tau_b"] = parse_word("b 5^-1")
    assert tau_action(parse_word("t4"), "b", ctx, imgs) == parse_word("t5^-1 t4 t5")
    assert tau_action(parse_word("t6"), "b", ctx, imgs) == parse_word("t6")
    assert tau_action(parse_word("lambda"), "b", ctx, imgs) == parse_word("t6 lambda t6^-1")


def test_two_triangle_relation_set():
    n = 3
    p, ctx = ctx_for("two_triangles", n)
    q = add_simplex_overlay(p, "b", ctx, tietze=True)
    assert q.generator("theta_6_1").definition == parse_word("t6 t5 t4 t3 t2")
    got = {r.tag.generator: r.word for r in q.tagged("tau_action")}
    T, th = "tau_b", "theta_6_1"
    exact = {
        "t9": commutator(parse_word(T), parse_word("t9")),
        "t8": commutator(parse_word(T), parse_word("t8")),
        "t7": relation(f"{T} t7 {T}^-1", "t8^-1 t7 t8"),
        "t6": relation(f"{T} t6 {T}^-1", "t8^-1 t7^-1 t6 t7 t8"),
        th: relation(f"{T} {th} {T}^-1", f"t8^-1 t7^-1 t6 {th} t6^-1 t7 t8"),
    }
    assert list(got) == ["t9", "t8", "t7", "t6", th, "lambda"]
    for k, w in exact.items():
        assert got[k].free_reduce() == w.free_reduce()
    # lambda: a different but equal conjugating word is chosen (see notes)
    published = relation(f"{T} lambda {T}^-1", "t8^-1 t7^-1 t6 lambda t6^-1 t7 t8")
    assert is_trivial(expand(published, q.images), ctx.ambient)
    assert is_trivial(expand(got["lambda"] * ~published, q.images), ctx.ambient)


def test_two_triangle_elimination():
    for n in (2, 3, 5):
        p, ctx = ctx_for("two_triangles", n)
        p = add_simplex_overlay(p, "b", ctx, tietze=True)
        cands = eligible_eliminations(p, ctx)
        assert ("b", ("1", "9"), ("1", "6")) in cands
        q = eliminate_family(p, "b", ("1", "9"), ctx, keep=("1", "6"))
        assert q.families() == [("1", "6")]
        assert len(q.relators) == 1 + 5 + 3 + n + 6 + 1
        (elim,) = q.tagged("elimination")
        u0 = parse_word("t8 t7 t5 t4 t3 t2")
        assert elim.word.free_reduce() == commutator(parse_word("t9^-1 tau_b"), u0).free_reduce()
        assert verify_presentation(q, ctx).passed


def test_overlay_twice_rejected():
    p, ctx = ctx_for("disc", 2)
    p = add_simplex_overlay(p, "b", ctx)
    with pytest.raises(SimplifyError):
        add_simplex_overlay(p, "b", ctx)


def test_eliminate_errors():
    p, log, ctx = overlay_simplify(fixture("disc"), 3)
    with pytest.raises(SimplifyError):
        eliminate_family(p, "b", ("1", "6"), ctx)
    p, ctx = ctx_for("disc", 3)
    with pytest.raises(SimplifyError):   # no overlay yet
        eliminate_family(p, "b", ("1", "6"), ctx)


def test_disc_single_candidate():
    p, ctx = overlay_pipeline(fixture("disc"), 3)
    assert eligible_eliminations(p, ctx) == [("b", ("1", "6"), None)]


@pytest.mark.parametrize("n", [2, 3, 8])
def test_rp2_published_sequence(n):
    p, log, ctx = overlay_simplify(fixture("rp2"), n, order=RP2_ORDER, keep=[("8", "14")])
    assert [(e.simplex, e.removed, e.kept) for e in log] == RP2_STEPS
    assert p.families() == [("8", "14")]
    assert len(p.relators) == 89 + n
    assert len(p.generators) == 31


def test_rp2_pinned_family_is_never_eliminated():
    p, log, ctx = overlay_simplify(fixture("rp2"), 3, order=RP2_ORDER, keep=[("8", "14")])
    assert eligible_eliminations(p, ctx) == []
    q, more = simplify(p, ctx)
    assert more == []


@pytest.mark.parametrize("name,expect_zero", [("disc", True), ("sphere", True), ("torus", False),
                                              ("rp2", False), ("triangle", True)])
def test_surface_dichotomy(name, expect_zero):
    c = fixture(name)
    for n in (2, 3):
        p, log, ctx = overlay_simplify(c, n)
        fams = len(p.families())
        assert fams >= max(0, 1 - euler_characteristic(ctx.ambient))
        assert (fams == 0) == expect_zero


def test_torus_orderings():
    # several breadth-first seeds, none gets rid of every family
    c = fixture("torus")
    for seed in ["1", "4", "7"]:
        p, log, ctx = overlay_simplify(c, 2, seed_vertex=seed)
        assert len(p.families()) >= 1


def test_each_simplex_used_once():
    p, log, ctx = overlay_simplify(fixture("sphere"), 2)
    used = [e.simplex for e in log]
    assert len(used) == len(set(used))
    assert len(p.tagged("elimination")) == len(log)


@pytest.mark.parametrize("name", ["disc", "two_triangles", "sphere", "rp2", "torus"])
def test_soundness_and_abelianization_preserved(name):
    n = 2
    p, ctx = overlay_pipeline(fixture(name), n)
    q, log = simplify(p, ctx)
    assert abelianize(p) == abelianize(q)
    for r in q.relators:
        assert is_trivial(expand(r.word, q.images), ctx.ambient)


def test_overlay_record():
    p, ctx = ctx_for("disc", 2)
    q, ov, rels = overlay(p, "b", ctx)
    assert ov.attachment == "5"
    assert set(ov.link) == set("123456")
    assert [label for label, _ in ov.base_generators] == ["t6", "t5", "t4", "t3", "t2", "lambda"]
    assert len(ov.action_relations) == 6


@pytest.mark.parametrize("n", [2, 3, 6])
def test_cone_off_hexagon(n):
    p, log, ctx = cone_off_pipeline(fixture("hexagon"), list("123456"), n)
    assert p.families() == []
    assert len(p.relators) == 60
    assert len(log) == 6 and log[-1].removed[0] in "123456"


def test_cone_off_cycle4():
    p, log, ctx = cone_off_pipeline(fixture("cycle4"), list("1234"), 2)
    assert p.families() == []
    assert verify_presentation(p, ctx).passed
    assert homology_h1(ctx.ambient).trivial


def test_cone_off_tree_loop_rejected():
    # a loop made only of tree edges: cone the disc boundary path inside a complex
    # whose tree contains the whole loop is impossible for a cycle, so use a
    # loop on an already coned hexagon whose non-tree edge was removed
    from raagpres.complex import cone_off
    coned = cone_off(fixture("cycle4"), list("1234"))
    with pytest.raises(SimplifyError):
        cone_off_pipeline(coned, ["c", "c_1", "1", "1_2", "2", "c_2"], 2)
