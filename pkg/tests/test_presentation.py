import pytest

from raagpres.builder import build
from raagpres.complex import fixture
from raagpres.oracle import reidemeister_schreier
from raagpres.presentation import (AbelianInvariants, Generator, Presentation, PresentationError,
                                   RelationTag, Relator, abelianize, presentation_stats, tietze_define)
from raagpres.simplifier import overlay_simplify
from raagpres.words import Word, commutator, parse_word


def pres(gens, rels):
    return Presentation(tuple(Generator(g, "lambda") for g in gens),
                        tuple(Relator(parse_word(r), RelationTag("tree_commutator", vertex=str(k)))
                              for k, r in enumerate(rels)))


def test_abelianize_examples():
    assert abelianize(pres(["lambda", "t"], ["t lambda t^-1 lambda^-1"])) == AbelianInvariants(2)
    z3 = pres(["lambda", "t", "u"], [str(commutator(parse_word(a), parse_word(b)))
                                     for a, b in (("lambda", "t"), ("lambda", "u"), ("t", "u"))])
    assert abelianize(z3) == AbelianInvariants(3)
    assert abelianize(pres(["a"], ["a^6"])) == AbelianInvariants(0, (6,))


def test_hexagon_matches_oracle():
    p, _ = build(fixture("hexagon"), 2)
    assert abelianize(p) == abelianize(reidemeister_schreier(fixture("hexagon"), 2))


def test_abelianize_invariances():
    p, ctx = build(fixture("hexagon"), 3)
    ab = abelianize(p)
    rev = Presentation(p.generators, tuple(reversed(p.relators)), p.n)
    assert abelianize(rev) == ab
    r = p.relators[-1]
    rot = Relator(Word(r.word[3:] + r.word[:3]), r.tag)
    inv = Relator(~r.word, r.tag)
    for new in (rot, inv):
        q = Presentation(p.generators, p.relators[:-1] + (new,), p.n)
        assert abelianize(q) == ab
    assert abelianize(tietze_define(p, "theta", parse_word("t6 t5 t4"))) == ab


def test_tietze_define():
    p, ctx = build(fixture("hexagon"), 3)
    q = tietze_define(p, "x", Word())
    assert q.symbols[-1] == "x" and len(q.relators) == len(p.relators) + 1
    assert q.relators[-1].tag.kind == "tietze_definition"
    with pytest.raises(PresentationError):
        tietze_define(p, "lambda", parse_word("t2"))
    with pytest.raises(PresentationError):
        tietze_define(p, "y", parse_word("zz"))


def test_duplicate_tag_rejected():
    with pytest.raises(PresentationError):
        pres(["a"], ["a", "a^2"]).with_relators([Relator(parse_word("a"), RelationTag("tree_commutator", vertex="0"))])


def test_stats_examples():
    for n in (1, 3, 7):
        p, _ = build(fixture("hexagon"), n)
        s = presentation_stats(p, fixture("hexagon"), n)
        assert s["deficiency"] == n - 1
        assert s["euler_lower_bound"] == n - 1
        p, _ = build(fixture("tree5"), n)
        assert presentation_stats(p, fixture("tree5"), n)["deficiency"] == -1
    p, log, ctx = overlay_simplify(fixture("disc"), 4)
    assert presentation_stats(p, ctx.ambient, 4)["deficiency"] == 5


def test_document_round_trip():
    p, ctx = build(fixture("cycle4"), 2)
    q = Presentation.from_dict(p.to_dict())
    assert q == p
