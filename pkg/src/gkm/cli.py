"""Command-line interface: ``gkm COMMAND FILE [options]``.

Exit codes: 0 success, 1 a hypothesis or validation check failed,
2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .covers import CoveringError, check_pbim, covering_from_document, validate_covering
from .dot import to_dot
from .extension import ExtensionError, build_extension, torus_extension_pipeline
from .graph import FaceTraversalError, enumerate_2faces, transversal_monodromy_trivial
from .homotopy import (
    HypothesisError,
    betti_numbers,
    check_acyclic,
    decompose_loop,
    face_betti_numbers,
    face_complex_h1,
    free_reduce,
)
from .io import (
    DocumentError,
    GraphDocument,
    load_cover_document,
    load_graph_document,
    orientation_from_table,
    serialize_graph_document,
)
from .labels import validate_gkm
from .monodromy import axial_group

OK, FAILED, MALFORMED = 0, 1, 2


class Failure(Exception):
    """A check failed; carries the report to print before exiting with 1."""

    def __init__(self, report):
        self.report = report


def _names(g, word) -> list[str]:
    return [g.name(d) for d in word]


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _load(path) -> GraphDocument:
    return load_graph_document(path)


def _is_cover(path) -> bool:
    try:
        return json.loads(Path(path).read_text()).get("format") == "gkm-cover/1"
    except (OSError, ValueError, AttributeError):
        return False


def _orientation(args, doc: GraphDocument):
    path = getattr(args, "orientation", None)
    if path is None:
        if doc.orientation is None:
            raise DocumentError("no orientation in the document; pass --orientation FILE")
        return doc.orientation
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DocumentError(str(exc), str(path)) from None
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    if isinstance(data, dict) and isinstance(data.get("orientation"), dict):
        data = data["orientation"]
    if not isinstance(data, dict):
        raise DocumentError("orientation file must map edge ids to 1 or -1", str(path))
    return orientation_from_table(doc.graph, data, str(path))


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    if _is_cover(args.file):
        return cmd_cover_verify(args)
    doc = _load(args.file)
    problems = validate_gkm(doc.graph, doc.labeling)
    if doc.orientation is not None:
        ok, cycle = check_acyclic(doc.graph, doc.orientation)
        if not ok:
            problems.append("orientation has a cycle: " + " ".join(_names(doc.graph, cycle)))
    report = {"valid": not problems, "problems": problems, "connection_derived": doc.connection_derived}
    lines = ["valid"] if not problems else ["invalid"] + [f"  {p}" for p in problems]
    if doc.connection_derived:
        lines.append("connection derived from the labels")
    _emit(args, report, lines)
    return OK if not problems else FAILED


def cmd_faces(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    faces = enumerate_2faces(g)
    rows, lines = [], []
    for k, f in enumerate(faces):
        trans = transversal_monodromy_trivial(g, f)
        rows.append(
            {
                "index": k,
                "length": f.length,
                "simple": f.simple,
                "boundary": _names(g, f.boundary),
                "transversal_trivial": all(trans.values()),
            }
        )
        flags = ("simple" if f.simple else "non-simple") + (
            "" if all(trans.values()) else ", transversal monodromy nontrivial"
        )
        lines.append(f"face {k}: length {f.length} ({flags}): {' '.join(_names(g, f.boundary))}")
    _emit(args, {"faces": rows}, lines or ["no 2-faces"])
    return OK


def cmd_rank(args) -> int:
    doc = _load(args.file)
    A = axial_group(doc.graph, doc.labeling)
    basis = [[int(x) for x in row] for row in A.basis]
    _emit(args, {"rank": A.rank, "basepoint": A.basepoint, "basis": basis}, [str(A.rank)])
    return OK


def cmd_extend(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    try:
        res = build_extension(g, doc.labeling, args.target_rank)
    except ExtensionError as exc:
        _emit(args, {"error": str(exc)}, [f"cannot extend: {exc}"])
        return FAILED
    proj = [[int(x) for x in r] for r in res.projection]
    labels = {str(eid): list(res.labeling[2 * j]) for j, eid in enumerate(g.edge_ids)}
    lines = [f"p = {json.dumps(proj)}"] + [f"{k}: {json.dumps(v)}" for k, v in labels.items()]
    if args.output:
        out = GraphDocument(g, res.labeling, f"{doc.name} extended to rank {res.rank}".strip(), doc.orientation)
        Path(args.output).write_text(serialize_graph_document(out))
        lines.append(f"written to {args.output}")
    _emit(args, {"rank": res.rank, "projection": proj, "labels": labels}, lines)
    return OK


def cmd_torus(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    o = _orientation(args, doc) if (args.orientation or doc.orientation is not None) else None
    rep = torus_extension_pipeline(g, doc.labeling, o)
    lines = [f"valency {rep.valency}, rk A = {rep.rank}"]
    if not rep.gkm3:
        v, sub = rep.gkm3_witness
        lines.append(f"not GKM_{min(3, rep.valency)}: labels of {' '.join(_names(g, sub))} at {v!r}")
    trans = [
        {"face": _names(g, f.boundary), "position": pos, "edge": g.name(e)}
        for f, pos, e in rep.transversal_witnesses
    ]
    if trans:
        w = trans[0]
        lines.append(
            f"transversal monodromy nontrivial: face {' '.join(w['face'])}, corner {w['position']}, edge {w['edge']}"
        )
    else:
        lines.append("transversal monodromy trivial on every 2-face")
    mono = [
        {"generator": i, "loop": _names(g, word), "matrix": [[int(x) for x in r] for r in m]}
        for i, word, m in rep.monodromy_witnesses
    ]
    if mono:
        w = mono[0]
        lines.append(f"A-monodromy nontrivial on generator {w['generator']}: {' '.join(w['loop'])}")
        lines.append(f"  matrix {json.dumps(w['matrix'])}")
    else:
        lines.append("A-monodromy trivial on every generator")
    if rep.hamcase:
        lines.append(f"conjugated 2-faces: {rep.hamcase}")
    ext = None
    if rep.extension is not None:
        ext = {str(eid): list(rep.extension.labeling[2 * j]) for j, eid in enumerate(g.edge_ids)}
        lines.append(f"extends to a rank-{rep.extension.rank} torus graph")
    else:
        lines.append("no torus extension certified")
    report = {
        "success": rep.success,
        "valency": rep.valency,
        "rank": rep.rank,
        "gkm3": rep.gkm3,
        "transversal_witnesses": trans,
        "monodromy_witnesses": mono,
        "hamcase": rep.hamcase,
        "extension": ext,
    }
    _emit(args, report, lines)
    return OK if rep.success else FAILED


def cmd_homology(args) -> int:
    doc = _load(args.file)
    faces = enumerate_2faces(doc.graph)
    h = face_complex_h1(doc.graph, faces)
    _emit(args, {"free_rank": h.free_rank, "torsion": list(h.torsion), "text": str(h)}, [f"H1 = {h}"])
    return OK


def cmd_betti(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    o = _orientation(args, doc)
    ok, cycle = check_acyclic(g, o)
    b = betti_numbers(g, o)
    faces = enumerate_2faces(g)
    fb = [face_betti_numbers(g, f, o) for f in faces]
    lines = [" ".join(f"b{2 * i}={x}" for i, x in enumerate(b))]
    if not ok:
        lines.insert(0, "orientation has a cycle: " + " ".join(_names(g, cycle)))
    for k, (f, x) in enumerate(zip(faces, fb)):
        lines.append(f"face {k} (length {f.length}): b4={x[2]}")
    report = {"acyclic": ok, "betti": b, "faces": [{"index": k, "betti": x} for k, x in enumerate(fb)]}
    _emit(args, report, lines)
    return OK if ok else FAILED


def cmd_decompose(args) -> int:
    doc = _load(args.file)
    g = doc.graph
    if args.loop not in doc.loops:
        raise DocumentError(f"no loop named {args.loop!r}", "loops")
    loop = doc.loops[args.loop]
    o = _orientation(args, doc)
    try:
        word = decompose_loop(g, enumerate_2faces(g), o, loop)
    except HypothesisError as exc:
        _emit(args, {"error": str(exc)}, [f"hypothesis violated: {exc}"])
        return FAILED
    items = [
        {"conjugator": _names(g, it.conjugator), "face": _names(g, it.face.boundary), "loop": _names(g, it.loop)}
        for it in word.items
    ]
    same = free_reduce(word.expand()) == free_reduce(loop)
    lines = [f"{len(items)} conjugated 2-face(s)"]
    for k, it in enumerate(items):
        lines.append(f"{k}: [{' '.join(it['conjugator'])}] {' '.join(it['loop'])}")
    lines.append("expanded word reduces to the input" if same else "expanded word differs from the input")
    _emit(args, {"items": items, "reduces_to_input": same}, lines)
    return OK if same else FAILED


def cmd_cover_verify(args) -> int:
    doc = load_cover_document(args.file)
    cov = covering_from_document(doc)
    problems = validate_covering(cov)
    report = {"valid": not problems, "problems": problems}
    lines = ["covering valid" if not problems else "covering invalid"] + [f"  {p}" for p in problems]
    ok = not problems
    if ok:
        try:
            res = check_pbim(cov)
        except CoveringError as exc:
            problems.append(str(exc))
            ok = False
        else:
            report.update(
                pbim=res.equal, base_rank=res.base_rank, total_rank=res.total_rank, invariant_rank=res.invariants.shape[0]
            )
            lines.append(f"rk A(base) = {res.base_rank}, rk A(total) = {res.total_rank}")
            lines.append(
                "pullback image equals the deck invariants" if res.equal else "pullback image differs from the deck invariants"
            )
            ok = res.equal
    _emit(args, report, lines)
    return OK if ok else FAILED


def cmd_export_dot(args) -> int:
    doc = _load(args.file)
    faces = []
    if args.faces is not None:
        all_faces = enumerate_2faces(doc.graph)
        pick = range(len(all_faces)) if not args.faces else args.faces
        for k in pick:
            if not 0 <= k < len(all_faces):
                raise DocumentError(f"face index {k} out of range (0..{len(all_faces) - 1})")
            faces.append(all_faces[k])
    sys.stdout.write(to_dot(doc, faces))
    return OK


COMMANDS = {
    "validate": (cmd_validate, "check the GKM axioms (or a cover file)"),
    "faces": (cmd_faces, "list the 2-faces"),
    "rank": (cmd_rank, "rank of the group of axial functions"),
    "extend": (cmd_extend, "build an extension of the given rank"),
    "torus": (cmd_torus, "check whether the graph extends to a torus graph"),
    "homology": (cmd_homology, "H1 of the graph with all 2-faces glued in"),
    "betti": (cmd_betti, "Betti numbers of an orientation"),
    "decompose": (cmd_decompose, "write a named loop as conjugated 2-faces"),
    "cover-verify": (cmd_cover_verify, "validate a covering and compare invariants"),
    "export-dot": (cmd_export_dot, "Graphviz output"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    parser = argparse.ArgumentParser(prog="gkm", description="GKM graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")
        if name == "extend":
            p.add_argument("--target-rank", type=int, required=True)
            p.add_argument("--output", help="write the extended graph here")
        if name in ("torus", "betti", "decompose"):
            p.add_argument("--orientation", help="JSON file mapping edge ids to 1 or -1")
        if name == "decompose":
            p.add_argument("--loop", required=True)
        if name == "export-dot":
            p.add_argument("--faces", type=int, nargs="*", help="dot these faces (all if no index given)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except FaceTraversalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except BrokenPipeError:
        return OK


if __name__ == "__main__":
    sys.exit(main())
