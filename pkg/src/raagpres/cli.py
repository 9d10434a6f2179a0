"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .builder import BuildError, build, dicks_leary
from .complex import (ComplexError, complex_to_dict, cone_off, euler_characteristic, fixture,
                      fixture_names, homology_h1, load_complex, raag_euler_characteristic, validate)
from .oracle import COSET_LIMIT_ENV, default_coset_limit, verify_presentation
from .presentation import presentation_stats
from .simplifier import SimplifyError, cone_off_pipeline, overlay_pipeline, overlay_simplify
from .words import WordError

OK, FAILED, INVALID = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str
    ns: list = field(default_factory=lambda: [1])
    seed: str = None
    order: list = None
    keep: list = field(default_factory=list)
    max_cycle_len: int = 6
    coset_limit: int = None
    format: str = "text"
    loop: list = None
    tietze: bool = False
    no_simplify: bool = False
    plot: str = None
    output: str = None

    def __post_init__(self):
        if not self.ns or any(n < 1 for n in self.ns):
            raise InputError("n must be a positive integer or a nonempty range a..b")


def parse_n(text):
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise InputError(f"empty range {text}")
            return list(range(a, b + 1))
        return [int(text)]
    except ValueError:
        raise InputError(f"cannot read n from {text!r}") from None


def parse_complex_file(path):
    """Load and validate a complex from a path or a bundled fixture name."""
    p = Path(path)
    if p.exists():
        c = load_complex(p)
    elif p.suffix == ".json" and p.stem in fixture_names():
        c = fixture(p.stem)
    elif path in fixture_names():
        c = fixture(path)
    else:
        raise InputError(f"no such file or bundled fixture: {path}")
    # an unsubdivided 2-complex is allowed to be non-flag; it is subdivided later
    flag = not (c.triangles and c.provenance is None)
    problems = validate(c, flag=flag)
    if problems:
        raise InputError("invalid complex:\n  " + "\n  ".join(problems))
    return c


def _emit(cfg, text):
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(doc):
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def _presentation_doc(p, stats, log=None):
    doc = p.to_dict(stats)
    if log is not None:
        doc["eliminations"] = [e.to_dict() for e in log]
    return doc


def _presentation_text(p, stats, log=None):
    lines = [p.to_text().rstrip("\n")]
    if log:
        lines.append("eliminations:")
        lines += [f"  {e}" for e in log]
    lines.append(f"generators: {stats['generators']}  relators: {stats['relators']}  "
                 f"deficiency: {stats['deficiency']}  families: {stats['families']}")
    return "\n".join(lines) + "\n"


def _pipeline(c, n, cfg):
    """Triangle-free inputs are built directly, anything else goes through overlays."""
    if not c.triangles and c.provenance is None:
        p, ctx = build(c, n, seed_vertex=cfg.seed)
        return p, ctx, None
    if cfg.no_simplify:
        p, ctx = overlay_pipeline(c, n, seed_vertex=cfg.seed, tietze=cfg.tietze)
        return p, ctx, []
    p, log, ctx = overlay_simplify(c, n, order=cfg.order, keep=cfg.keep, seed_vertex=cfg.seed,
                                   tietze=cfg.tietze)
    return p, ctx, log


def cmd_validate(cfg):
    c = parse_complex_file(cfg.input)
    _emit(cfg, f"valid: {len(c.vertices)} vertices, {len(c.edges)} edges, {len(c.triangles)} triangles\n")
    return OK


def cmd_invariants(cfg):
    c = parse_complex_file(cfg.input)
    h1 = homology_h1(c)
    doc = {
        "vertices": len(c.vertices),
        "edges": len(c.edges),
        "triangles": len(c.triangles),
        "euler_characteristic": euler_characteristic(c),
        "raag_euler_characteristic": raag_euler_characteristic(c),
        "h1": {"free_rank": h1.free_rank, "torsion": list(h1.torsion)},
        "one_acyclic": h1.one_acyclic,
        "not_simply_connected": h1.not_simply_connected,
        # the kernel H is FP_2 exactly when Sigma is 1-acyclic; finite
        # presentability needs simple connectivity, which is only refuted here
        "kernel_FP2": h1.one_acyclic,
        "kernel_finitely_presented": False if h1.not_simply_connected else "undecided",
    }
    if cfg.format == "json":
        _emit(cfg, _dump(doc))
    else:
        _emit(cfg, "".join(f"{k}: {v}\n" for k, v in doc.items()))
    return OK


def cmd_build(cfg):
    c = parse_complex_file(cfg.input)
    if c.triangles:
        raise InputError("complex has 2-simplices; use overlay-simplify")
    out = []
    for n in cfg.ns:
        p, ctx = build(c, n, seed_vertex=cfg.seed)
        stats = presentation_stats(p, c, n)
        out.append((p, stats))
    if cfg.format == "json":
        docs = [_presentation_doc(p, s) for p, s in out]
        _emit(cfg, _dump(docs[0] if len(docs) == 1 else docs))
    else:
        _emit(cfg, "\n".join(_presentation_text(p, s) for p, s in out))
    return OK


def cmd_overlay_simplify(cfg):
    c = parse_complex_file(cfg.input)
    out = []
    for n in cfg.ns:
        p, ctx, log = _pipeline(c, n, cfg)
        out.append((p, presentation_stats(p, ctx.ambient, n), log or []))
    if cfg.format == "json":
        docs = [_presentation_doc(*x) for x in out]
        _emit(cfg, _dump(docs[0] if len(docs) == 1 else docs))
    else:
        _emit(cfg, "\n".join(_presentation_text(*x) for x in out))
    return OK


def cmd_verify(cfg):
    c = parse_complex_file(cfg.input)
    status = OK
    reports = []
    for n in cfg.ns:
        if cfg.loop:
            p, log, ctx = cone_off_pipeline(c, cfg.loop, n)
        else:
            p, ctx, _ = _pipeline(c, n, cfg)
        rep = verify_presentation(p, ctx, cfg.coset_limit)
        reports.append(rep.to_dict())
        if not rep.passed:
            status = FAILED
    if cfg.format == "json":
        _emit(cfg, _dump(reports[0] if len(reports) == 1 else reports))
    else:
        lines = []
        for r in reports:
            bad = r["failing_relators"]
            lines.append(f"n={r['n']}: {r['status']}  index={r['index']}  "
                         f"sound={len(r['relator_soundness']) - len(bad)}/{len(r['relator_soundness'])}  "
                         f"images={'ok' if all(r['image_in_subgroup']) else 'bad'}  "
                         f"abelianization={r['abelianization_match']}  counts={r['counts_match']}")
            if bad:
                lines.append(f"  failing relators: {bad}")
        _emit(cfg, "\n".join(lines) + "\n")
    return status


def cmd_dicks_leary(cfg):
    c = parse_complex_file(cfg.input)
    n = cfg.ns[-1]
    p = dicks_leary(c, n, cfg.max_cycle_len)
    if cfg.format == "json":
        _emit(cfg, p.to_json({"generators": len(p.generators), "relators": len(p.relators),
                              "max_cycle_len": cfg.max_cycle_len}))
    else:
        _emit(cfg, p.to_text() + f"generators: {len(p.generators)}  relators: {len(p.relators)}  "
                                 f"(all trivial in G)\n")
    return OK


def cmd_cone_off(cfg):
    c = parse_complex_file(cfg.input)
    if not cfg.loop:
        raise InputError("cone-off needs --loop v1,v2,...")
    out = []
    for n in cfg.ns:
        p, log, ctx = cone_off_pipeline(c, cfg.loop, n)
        out.append((p, presentation_stats(p, ctx.ambient, n), log))
    if cfg.format == "json":
        docs = [_presentation_doc(*x) for x in out]
        body = docs[0] if len(docs) == 1 else docs
        _emit(cfg, _dump({"complex": complex_to_dict(cone_off(c, cfg.loop)), "presentations": body}))
    else:
        _emit(cfg, "\n".join(_presentation_text(*x) for x in out))
    return OK


TABLE_COLUMNS = ["n", "generators", "relators", "deficiency", "euler_lower_bound", "families",
                 "formula_relators"]


def table_rows(c, cfg):
    rows = []
    for n in cfg.ns:
        if cfg.loop:
            p, _, ctx = cone_off_pipeline(c, cfg.loop, n)
        else:
            p, ctx, _ = _pipeline(c, n, cfg)
        s = presentation_stats(p, ctx.ambient, n)
        row = {k: s.get(k) for k in TABLE_COLUMNS}
        if row["formula_relators"] is not None and row["formula_relators"] != row["relators"]:
            raise BuildError(f"relator count {row['relators']} disagrees with the formula "
                             f"{row['formula_relators']} at n={n}")
        rows.append(row)
    return rows


def plot_table(rows, path, title):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r["relators"] for r in rows], "o-", label="relators")
    ax.plot(ns, [r["deficiency"] for r in rows], "s-", label="deficiency (relators - generators)")
    ax.plot(ns, [r["euler_lower_bound"] for r in rows], "--", label="Euler lower bound n(1-chi)-1")
    ax.set_xlabel("n")
    ax.set_title(title)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def cmd_table(cfg):
    c = parse_complex_file(cfg.input)
    rows = table_rows(c, cfg)
    fmt = cfg.format
    if fmt == "json":
        _emit(cfg, _dump(rows))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, TABLE_COLUMNS, delimiter="\t" if fmt in ("text", "tsv") else ",",
                                lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: "" if v is None else v for k, v in r.items()})
        _emit(cfg, buf.getvalue())
    if cfg.plot:
        plot_table(rows, cfg.plot, Path(cfg.input).stem)
    return OK


COMMANDS = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "build": cmd_build,
    "overlay-simplify": cmd_overlay_simplify,
    "verify": cmd_verify,
    "dicks-leary": cmd_dicks_leary,
    "cone-off": cmd_cone_off,
    "table": cmd_table,
}


def _edge(text):
    parts = [x for x in text.replace("-", ",").split(",") if x]
    if len(parts) != 2:
        raise InputError(f"cannot read edge {text!r}; use u-v")
    return tuple(parts)


def make_parser():
    ap = argparse.ArgumentParser(prog="raagpres", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("complex", help="complex file or bundled fixture name")
    ap.add_argument("--n", default="1", help="n or a range a..b (default 1)")
    ap.add_argument("--seed", help="seed vertex for the breadth-first ordering")
    ap.add_argument("--order", help="comma separated simplex sequence for elimination")
    ap.add_argument("--keep", action="append", default=[], help="family edge u-v to retain (repeatable)")
    ap.add_argument("--max-cycle-len", type=int, default=6)
    ap.add_argument("--coset-limit", type=int, default=None,
                    help=f"coset limit (default ${COSET_LIMIT_ENV} or 10^6)")
    ap.add_argument("--format", choices=["text", "json", "csv", "tsv"], default="text")
    ap.add_argument("--loop", help="comma separated loop vertices (cone-off)")
    ap.add_argument("--tietze", action="store_true", help="name theta loops as Tietze generators")
    ap.add_argument("--no-simplify", action="store_true", help="overlay without eliminating")
    ap.add_argument("--plot", help="write a PNG figure (table)")
    ap.add_argument("--output", "-o", help="write the document here instead of stdout")
    return ap


def config_from_args(argv):
    a = make_parser().parse_args(argv)
    return RunConfig(
        command=a.command, input=a.complex, ns=parse_n(a.n), seed=a.seed,
        order=[x for x in a.order.split(",") if x] if a.order else None,
        keep=[_edge(k) for k in a.keep], max_cycle_len=a.max_cycle_len,
        coset_limit=a.coset_limit if a.coset_limit is not None else default_coset_limit(),
        format=a.format, loop=[x for x in a.loop.split(",") if x] if a.loop else None,
        tietze=a.tietze, no_simplify=a.no_simplify, plot=a.plot, output=a.output)


def run(cfg):
    try:
        return COMMANDS[cfg.command](cfg)
    except (InputError, ComplexError, WordError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID
    except (BuildError, SimplifyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID if "disconnected" in str(exc) or "2-simplices" in str(exc) else FAILED


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID
    return run(cfg)
