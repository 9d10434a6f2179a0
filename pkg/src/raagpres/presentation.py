"""Finite presentations with tagged relators.

Relators are stored exactly as built (no reduction) together with a
:class:`RelationTag` recording how they were derived.  Every generator also
carries its image in G_Sigma, so a presentation can be checked on its own.
"""

import json
from dataclasses import dataclass, field, replace

from .snf import abelian_invariants, smith_normal_form  # noqa: F401  (re-export)
from .words import Word, format_word, parse_word

ROLES = ("lambda", "tree_stable", "simplex_stable", "tietze", "edge", "vertex", "schreier")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    symbol: str
    role: str
    image: Word = Word()
    vertex: str = None      # tree_stable: the child vertex k; simplex_stable: face
    definition: Word = None  # tietze generators only

    def to_dict(self):
        doc = {"symbol": self.symbol, "role": self.role, "image": format_word(self.image)}
        if self.vertex is not None:
            doc["vertex"] = self.vertex
        if self.definition is not None:
            doc["definition"] = format_word(self.definition)
        return doc


@dataclass(frozen=True)
class RelationTag:
    kind: str
    vertex: str = None
    edge: tuple = None
    index: int = None
    simplex: str = None
    generator: str = None
    kept: tuple = None

    @property
    def key(self):
        return (self.kind, self.vertex, self.edge, self.index, self.simplex, self.generator)

    def to_dict(self):
        doc = {"kind": self.kind}
        for name in ("vertex", "edge", "index", "simplex", "generator", "kept"):
            val = getattr(self, name)
            if val is not None:
                doc[name] = list(val) if isinstance(val, tuple) else val
        return doc

    @classmethod
    def from_dict(cls, doc):
        kw = dict(doc)
        for name in ("edge", "kept"):
            if kw.get(name) is not None:
                kw[name] = tuple(kw[name])
        return cls(**kw)

    def __str__(self):
        bits = [f"{k}={v}" for k, v in self.to_dict().items() if k != "kind"]
        return f"{self.kind}({', '.join(bits)})"


@dataclass(frozen=True)
class Relator:
    word: Word
    tag: RelationTag


@dataclass(frozen=True)
class Presentation:
    generators: tuple = ()
    relators: tuple = ()
    n: int = None

    def __post_init__(self):
        syms = [g.symbol for g in self.generators]
        if len(set(syms)) != len(syms):
            raise PresentationError("duplicate generator symbols")
        known = set(syms)
        keys = set()
        for r in self.relators:
            bad = r.word.symbols() - known
            if bad:
                raise PresentationError(f"relator {format_word(r.word)} uses undeclared {sorted(bad)}")
            if r.tag.key in keys:
                raise PresentationError(f"duplicate relation tag {r.tag}")
            keys.add(r.tag.key)

    @property
    def symbols(self):
        return [g.symbol for g in self.generators]

    @property
    def images(self):
        return {g.symbol: g.image for g in self.generators}

    def generator(self, symbol):
        for g in self.generators:
            if g.symbol == symbol:
                return g
        raise KeyError(symbol)

    def with_generator(self, gen):
        return replace(self, generators=self.generators + (gen,))

    def with_relators(self, rels):
        return replace(self, relators=self.relators + tuple(rels))

    def without(self, predicate):
        return replace(self, relators=tuple(r for r in self.relators if not predicate(r.tag)))

    def families(self):
        """Edges whose size-n family is present, in first-appearance order."""
        out = []
        for r in self.relators:
            if r.tag.kind == "family" and r.tag.edge not in out:
                out.append(r.tag.edge)
        return out

    def tagged(self, kind):
        return [r for r in self.relators if r.tag.kind == kind]

    # -- serialization --------------------------------------------------------

    def to_text(self):
        lines = ["< " + ", ".join(self.symbols) + " |"]
        for r in self.relators:
            lines.append(f"    {format_word(r.word)}    # {r.tag}")
        lines.append(">")
        return "\n".join(lines) + "\n"

    def to_dict(self, stats=None):
        doc = {
            "n": self.n,
            "generators": [g.to_dict() for g in self.generators],
            "relators": [{"word": format_word(r.word), "tag": r.tag.to_dict()} for r in self.relators],
        }
        if stats is not None:
            doc["stats"] = stats
        return doc

    def to_json(self, stats=None):
        return json.dumps(self.to_dict(stats), indent=1, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, doc):
        gens = []
        for g in doc["generators"]:
            gens.append(Generator(g["symbol"], g["role"], parse_word(g.get("image", "")),
                                  g.get("vertex"),
                                  parse_word(g["definition"]) if "definition" in g else None))
        rels = [Relator(parse_word(r["word"]), RelationTag.from_dict(r["tag"])) for r in doc["relators"]]
        return cls(tuple(gens), tuple(rels), doc.get("n"))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple = field(default=())

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(p):
    col = {s: i for i, s in enumerate(p.symbols)}
    rows = []
    for r in p.relators:
        row = {}
        for s, e in r.word:
            row[col[s]] = row.get(col[s], 0) + e
        rows.append(row)
    return rows


def abelianize(p):
    """H_1 of the presented group via Smith normal form of the exponent matrix."""
    free, torsion = abelian_invariants(exponent_matrix(p), len(p.generators))
    return AbelianInvariants(free, tuple(torsion))


def tietze_define(p, symbol, w, images=None):
    """Add a generator ``symbol`` together with the relator ``symbol * w^-1``."""
    if symbol in p.symbols:
        raise PresentationError(f"symbol {symbol} already declared")
    w = Word(w)
    bad = w.symbols() - set(p.symbols)
    if bad:
        raise PresentationError(f"definition uses undeclared {sorted(bad)}")
    imgs = p.images
    image = Word(x for s, e in w for x in (imgs[s] if e == 1 else ~imgs[s]))
    gen = Generator(symbol, "tietze", image, definition=w)
    rel = Relator(Word([(symbol, 1)]) * ~w, RelationTag("tietze_definition", generator=symbol))
    return replace(p, generators=p.generators + (gen,), relators=p.relators + (rel,))


def deficiency(p):
    """Relators minus generators (the convention used throughout)."""
    return len(p.relators) - len(p.generators)


def presentation_stats(p, c, n):
    """Counts and deficiency bounds for a presentation of Gamma_n(c)."""
    from .complex import euler_characteristic, homology_h1

    chi = euler_characteristic(c)
    ab = abelianize(p)
    stats = {
        "n": n,
        "generators": len(p.generators),
        "relators": len(p.relators),
        "deficiency": deficiency(p),
        "families": len(p.families()),
        "euler_characteristic": chi,
        "euler_lower_bound": n * (1 - chi) - 1 if c.dimension <= 2 else None,
        "abelianization": {"free_rank": ab.free_rank, "torsion": list(ab.torsion)},
        # homological bound d(H2) - rk(H1): only the H1 part is computable here
        "homological_bound_h1_part": -ab.free_rank,
        "homological_bound_h2_part": "unavailable",
    }
    if not c.triangles:
        stats["formula_relators"] = len(c.vertices) - 1 + n * (1 - chi)
    h1 = homology_h1(c)
    stats["complex_h1"] = {"free_rank": h1.free_rank, "torsion": list(h1.torsion)}
    return stats
