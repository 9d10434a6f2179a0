"""Regenerate the bundled complex fixtures in src/raagpres/fixtures."""

from pathlib import Path

from raagpres.complex import FlagComplex, barycentric_subdivide, dump_complex, sigma_one, validate

OUT = Path(__file__).resolve().parents[1] / "src" / "raagpres" / "fixtures"


def names(k):
    return [str(i) for i in range(1, k + 1)]


def cycle(k, ordering=True):
    vs = names(k)
    return FlagComplex.build(vs, [(vs[i], vs[(i + 1) % k]) for i in range(k)],
                             ordering=vs if ordering else None)




def disc():
    # subdivided 2-simplex labelled around the hexagon, odd labels original
    vs = names(6) + ["b"]
    hexa = [(str(i), str(i % 6 + 1)) for i in range(1, 7)]
    prov = {str(i): "original" if i % 2 else "edge" for i in range(1, 7)}
    prov["b"] = "face"
    return FlagComplex.build(vs, hexa + [(v, "b") for v in names(6)],
                             [(u, w, "b") for u, w in hexa], prov, ordering=names(6))


def two_triangles():
    # triangles {1,3,5} (unfilled) and {1,5,8} (filled) glued along 1-5
    vs = names(9) + ["b"]
    ring = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "1"),
            ("5", "7"), ("7", "8"), ("8", "9"), ("9", "1")]
    left = ["1", "6", "5", "7", "8", "9"]
    left_edges = [(left[i], left[(i + 1) % 6]) for i in range(6)]
    prov = {v: "original" for v in ("1", "3", "5", "8")}
    prov.update({v: "edge" for v in ("2", "4", "6", "7", "9")})
    prov["b"] = "face"
    return FlagComplex.build(vs, ring + [(v, "b") for v in left], [(u, w, "b") for u, w in left_edges],
                             prov, ordering=names(9))


RP2_BARY = {2: (1, 3), 4: (3, 5), 6: (1, 5), 7: (5, 8), 9: (1, 8), 10: (8, 11), 12: (11, 13),
            14: (8, 13), 15: (1, 13), 16: (1, 11), 17: (3, 11), 18: (3, 8), 19: (5, 11),
            20: (5, 13), 21: (3, 13)}
RP2_FACES = {1: (3, 8, 11), 2: (3, 8, 13), 3: (1, 3, 11), 4: (1, 3, 5), 5: (3, 5, 13),
             6: (1, 11, 13), 7: (1, 8, 13), 8: (1, 5, 8), 9: (5, 8, 11), 10: (5, 11, 13)}
RP2_FAMILIES = [(1, 6), (5, 19), (8, 9), (5, 20), (3, 21), (8, 18), (3, 17), (1, 16), (13, 15), (8, 14)]


def rp2():
    """Subdivided six-vertex projective plane, labelled to match the worked
    elimination tables (Sigma_1 labels 1..21, faces s1..s10)."""
    vs = names(21) + [f"s{k}" for k in range(1, 11)]
    prov = {}
    edges, tris = [], []
    bary_of = {}
    for b, (u, w) in RP2_BARY.items():
        prov[str(b)] = "edge"
        bary_of[frozenset((u, w))] = b
        edges += [(str(u), str(b)), (str(w), str(b))]
    for v in (1, 3, 5, 8, 11, 13):
        prov[str(v)] = "original"
    for k, tri in RP2_FACES.items():
        f = f"s{k}"
        prov[f] = "face"
        for v in tri:
            edges.append((str(v), f))
        for i in range(3):
            for j in range(i + 1, 3):
                b = bary_of[frozenset((tri[i], tri[j]))]
                edges.append((str(b), f))
                tris += [(str(tri[i]), str(b), f), (str(tri[j]), str(b), f)]
    fam = {frozenset(map(str, e)) for e in RP2_FAMILIES}
    s1_edges = [e for e in edges if not e[1].startswith("s")]
    tree = [e for e in s1_edges if frozenset(e) not in fam]
    return FlagComplex.build(vs, edges, tris, prov, ordering=names(21), tree=tree)


def octahedron():
    vs = names(6)
    opposite = {"1": "6", "2": "5", "3": "4"}
    edges = [(u, w) for i, u in enumerate(vs) for w in vs[i + 1:]
             if opposite.get(u) != w]
    tris = [(a, b, c) for a in ("1", "6") for b in ("2", "5") for c in ("3", "4")]
    return FlagComplex.build(vs, edges, tris)


def torus7():
    # Moebius' seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
    vs = names(7)
    tris = set()
    for i in range(7):
        tris.add(frozenset((str(i % 7 + 1), str((i + 1) % 7 + 1), str((i + 3) % 7 + 1))))
        tris.add(frozenset((str(i % 7 + 1), str((i + 2) % 7 + 1), str((i + 3) % 7 + 1))))
    edges = {frozenset(p) for t in tris for p in [(a, b) for a in t for b in t if a < b]}
    return FlagComplex.build(vs, edges, tris)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    path4 = FlagComplex.build(names(4), [("1", "2"), ("2", "3"), ("3", "4")])
    star = FlagComplex.build(names(5), [("1", "2"), ("1", "3"), ("1", "4"), ("4", "5")])
    fixtures = {
        "point": FlagComplex.build(["1"]),
        "edge": FlagComplex.build(["1", "2"], [("1", "2")]),
        "path4": path4,
        "tree5": star,
        "cycle4": cycle(4),
        "hexagon": cycle(6),
        "triangle": FlagComplex.build(names(3), [("1", "2"), ("2", "3"), ("1", "3")], [names(3)]),
        "disc": disc(),
        "two_triangles": two_triangles(),
        "rp2": rp2(),
        "rp2_sigma1": sigma_one(rp2()),
        "sphere": barycentric_subdivide(octahedron()),
        "torus": barycentric_subdivide(torus7()),
    }
    for name, c in fixtures.items():
        problems = validate(c)
        if problems:
            raise SystemExit(f"{name}: {problems[:3]}")
        dump_complex(c, OUT / f"{name}.json")
        print(name, c)


if __name__ == "__main__":
    main()
