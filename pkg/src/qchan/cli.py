"""Command-line front end.

Exit codes: 0 success (or CP), 2 input error, 3 the map is not CP.
Documents and reports are JSON with a top-level ``"schema": "qchan/1"``;
plot data is CSV with columns ``x,y[,z],branch``.
"""
import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .canonical import reduce
from .capacity import (CapacityConfig, binary_channel_capacity, holevo_capacity,
                       orthogonal_and_minentropy_baselines)
from .choi import choi_of, choi_rank, min_eigenvalue
from .cpcheck import inequality_report, is_cp_theorem1, r_phi
from .decompose import decompose_midpoint
from .errors import DocumentError, NotCP, NotTypeIA, QchanError, SlotPositivityViolated
from .extreme import TrigParams, channel_from_trig, classify
from .geometry import (extreme_curve, figure1_data, rounded_segments, tetrahedron_edges)
from .pauli import KrausSet, TMatrix, channel_from_kraus
from .sampling import random_cp_channel, random_extreme_channel, random_tp_map

SCHEMA = "qchan/1"
EXIT_OK, EXIT_INPUT, EXIT_NOT_CP = 0, 2, 3
DOC_KEYS = ("kraus", "tmatrix", "canonical", "trig")


# ---------------------------------------------------------------- documents

def _floats(x, shape, what):
    try:
        a = np.asarray(x, dtype=np.float64)
    except (TypeError, ValueError):
        raise DocumentError(f"{what}: expected numbers") from None
    if a.shape != shape:
        raise DocumentError(f"{what}: expected shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DocumentError(f"{what}: non-finite entry")
    return a


def _complex_matrix(m, what):
    try:
        a = np.asarray(m, dtype=np.float64)
    except (TypeError, ValueError):
        raise DocumentError(f"{what}: expected numbers or [re, im] pairs") from None
    if a.shape == (2, 2):
        return a.astype(np.complex128)
    if a.shape == (2, 2, 2):
        return a[..., 0] + 1j * a[..., 1]
    raise DocumentError(f"{what}: expected a 2x2 matrix of [re, im] pairs, got shape {a.shape}")


def parse_document(obj, tol=None):
    """ChannelDocument (or a report carrying one under "input") -> TMatrix."""
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    if "input" in obj:
        obj = obj["input"]
        if not isinstance(obj, dict):
            raise DocumentError("report input must be a JSON object")
    present = [k for k in DOC_KEYS if k in obj]
    if len(present) != 1:
        raise DocumentError(f"document needs exactly one of {', '.join(DOC_KEYS)}; found {present or 'none'}")
    key = present[0]
    body = obj[key]
    try:
        if key == "kraus":
            if not isinstance(body, list) or not 1 <= len(body) <= 4:
                raise DocumentError("kraus: expected a list of 1 to 4 matrices")
            ops = [_complex_matrix(m, f"kraus[{i}]") for i, m in enumerate(body)]
            return channel_from_kraus(KrausSet(tuple(ops), tol), tol)
        if not isinstance(body, dict):
            raise DocumentError(f"{key}: expected an object")
        if key == "tmatrix":
            if "M" in body:
                m = _floats(body["M"], (4, 4), "tmatrix.M")
                if np.abs(m[0] - [1, 0, 0, 0]).max() > 1e-12:
                    raise DocumentError("tmatrix.M: first row must be (1, 0, 0, 0) for a trace-preserving map")
                return TMatrix(m)
            return TMatrix.from_parts(_floats(body.get("t"), (3,), "tmatrix.t"),
                                      _floats(body.get("T"), (3, 3), "tmatrix.T"))
        if key == "canonical":
            return TMatrix.diagonal(_floats(body.get("lambda"), (3,), "canonical.lambda"),
                                    _floats(body.get("t", [0, 0, 0]), (3,), "canonical.t"))
        u = _floats(body.get("u"), (), "trig.u")
        v = _floats(body.get("v"), (), "trig.v")
        return channel_from_trig(TrigParams(float(u), float(v)))
    except DocumentError:
        raise
    except QchanError as exc:
        raise DocumentError(f"{key}: {exc}") from None


def tmatrix_doc(ch):
    return {"tmatrix": {"t": ch.t.tolist(), "T": ch.T.tolist()}}


def _cplx(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def canonical_block(cf):
    return {"lambda": cf.lam.tolist(), "t": cf.tvec.tolist(), "U": _cplx(cf.U), "V": _cplx(cf.V)}


# ---------------------------------------------------------------- analyses

def analyze(ch, tol=None):
    cf = reduce(ch)
    beta = choi_of(ch)
    mineig = min_eigenvalue(beta)
    psd_tol = tol if tol is not None else 1e-9
    thm1 = is_cp_theorem1(cf, tol)
    ineq = inequality_report(cf, tol)
    methods = {
        "theorem1": thm1,
        "inequalities": ineq.all_satisfied,
        "choi_psd": bool(mineig >= -psd_tol),
        "choi_min_eigenvalue": mineig,
    }
    methods["agree"] = len({thm1, ineq.all_satisfied, methods["choi_psd"]}) == 1
    try:
        rep = r_phi(cf, tol)
        contraction = {
            "boundary_case": rep.boundary_case,
            "singular_values": None if rep.r_phi is None else list(rep.singular_values),
            "is_contraction": rep.is_contraction,
            "is_unitary": rep.is_unitary,
        }
    except SlotPositivityViolated as exc:
        contraction = {"boundary_case": "slot_violated", "singular_values": None,
                       "is_contraction": False, "is_unitary": False, "detail": str(exc)}
    report = {
        "schema": SCHEMA,
        "input": tmatrix_doc(ch),
        "cp": thm1,
        "methods": methods,
        "canonical": canonical_block(cf),
        "choi_rank": choi_rank(beta),
        "contraction": contraction,
        "inequalities": {k: getattr(ineq, k) for k in ineq.__dataclass_fields__},
        "class": None,
    }
    if thm1:
        c = classify(ch)
        report["class"] = {"kind": c.kind.value, "detail": c.detail}
    return report


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, allow_nan=False, default=_json_default))
    out.write("\n")


def _json_default(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _load(args):
    src = args.doc
    try:
        if src is None or src == "-":
            text = sys.stdin.read()
        elif src.lstrip().startswith("{"):
            text = src
        else:
            with open(src, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    except OSError as exc:
        raise DocumentError(f"cannot read {src}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    return parse_document(obj, args.tol)


def cmd_check(args, out):
    rep = analyze(_load(args), args.tol)
    if not rep["methods"]["agree"]:
        sys.stderr.write("warning: CP methods disagree at this tolerance; see methods block\n")
    _emit(rep, out)
    return EXIT_OK if rep["cp"] else EXIT_NOT_CP


def cmd_canon(args, out):
    ch = _load(args)
    cf = reduce(ch)
    _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "canonical": canonical_block(cf)}, out)
    return EXIT_OK


def cmd_classify(args, out):
    ch = _load(args)
    try:
        c = classify(ch)
    except NotCP:
        _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "cp": False, "class": None}, out)
        return EXIT_NOT_CP
    _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "cp": True,
           "class": {"kind": c.kind.value, "detail": c.detail},
           "choi_rank": choi_rank(choi_of(ch))}, out)
    return EXIT_OK


def _part_doc(ch):
    cf = reduce(ch)
    doc = tmatrix_doc(ch)
    doc["schema"] = SCHEMA
    doc["meta"] = {"canonical": {"lambda": cf.lam.tolist(), "t": cf.tvec.tolist()},
                   "choi_rank": choi_rank(choi_of(ch))}
    return doc


def cmd_decompose(args, out):
    ch = _load(args)
    try:
        d = decompose_midpoint(ch, args.tol)
    except NotCP:
        _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "cp": False}, out)
        return EXIT_NOT_CP
    _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "weight": d.weight,
           "left": _part_doc(d.left), "right": _part_doc(d.right),
           "residual": d.residual}, out)
    return EXIT_OK


def cmd_capacity(args, out):
    ch = _load(args)
    cfg = CapacityConfig(bits=args.bits)
    try:
        res = holevo_capacity(ch, cfg)
    except NotCP:
        _emit({"schema": SCHEMA, "input": tmatrix_doc(ch), "cp": False}, out)
        return EXIT_NOT_CP
    scale = 1 / np.log(2) if args.bits else 1.0
    cf = reduce(ch)
    rep = {"schema": SCHEMA, "input": tmatrix_doc(ch), "value": res.value, "unit": res.unit,
           "ensemble": {"probs": res.ensemble.probs.tolist(), "states": res.ensemble.states.tolist()},
           "iterations": res.iterations, "converged": res.converged}
    try:
        orth, minent = orthogonal_and_minentropy_baselines(cf)
        rep["baselines"] = {"orthogonal": orth * scale, "min_entropy": minent * scale}
    except NotTypeIA:
        pass
    if abs(cf.lam[1]) < 1e-7 and abs(cf.lam[2]) < 1e-7:
        closed = binary_channel_capacity(cf) * scale
        rep["closed_form"] = closed
        rep["closed_form_disagrees"] = abs(closed - res.value) > 1e-4 * scale
    _emit(rep, out)
    return EXIT_OK


def _plot_rows(args):
    kind = args.kind
    n = args.n
    if kind == "curve":
        return 3, [(p, f"piece{i}") for i, p in enumerate(extreme_curve(args.t3, n))]
    if kind == "rounded":
        parts = [(p, f"curve{i}") for i, p in enumerate(extreme_curve(args.t3, n))]
        parts += [(p, f"segment{i}") for i, p in enumerate(rounded_segments(args.t3, n))]
        return 3, parts
    if kind == "tetrahedron":
        return 3, [(p, f"edge{i}") for i, p in enumerate(tetrahedron_edges(n))]
    ch = _load(args) if args.doc is not None else channel_from_trig(TrigParams(args.u, args.v))
    data = figure1_data(reduce(ch), n)
    return 2, [(v, k) for k, v in data.items()]


def cmd_plotdata(args, out):
    dim, parts = _plot_rows(args)
    cols = ["x", "y", "z"][:dim] + ["branch"]
    rows = [list(map(float, p)) + [name] for arr, name in parts for p in arr]
    target = open(args.out, "w", newline="", encoding="utf-8") if args.out else out
    try:
        if args.format == "json":
            _emit({"schema": SCHEMA, "kind": args.kind, "columns": cols, "rows": rows}, target)
        else:
            w = csv.writer(target, lineterminator="\n")
            w.writerow(cols)
            for r in rows:
                w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    finally:
        if args.out:
            target.close()
    return EXIT_OK


def cmd_random(args, out):
    if args.n < 1:
        raise DocumentError("n must be at least 1")
    rng = np.random.default_rng(args.seed)
    for i in range(args.n):
        if args.filter == "cp":
            ch = random_cp_channel(rng)
        elif args.filter == "extreme":
            ch = random_extreme_channel(rng)
        else:
            pick = int(rng.integers(3))
            ch = (random_cp_channel, random_extreme_channel, random_tp_map)[pick](rng)
        doc = tmatrix_doc(ch)
        doc["schema"] = SCHEMA
        doc["meta"] = {"index": i, "seed": args.seed, "filter": args.filter,
                       "cp": bool(is_cp_theorem1(reduce(ch)))}
        out.write(json.dumps(doc, allow_nan=False) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance for CP verdicts (default 1e-9 or $QCHAN_TOL)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--bits", action="store_true", help="report capacities in bits")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="qchan", description="Qubit channel analysis")
    p.add_argument("--version", action="version", version=f"qchan {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    doc_help = "channel document: path, inline JSON, or - for stdin (default)"
    for name, fn in (("check", cmd_check), ("canon", cmd_canon), ("classify", cmd_classify),
                     ("decompose", cmd_decompose), ("capacity", cmd_capacity)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("doc", nargs="?", help=doc_help)
        s.set_defaults(func=fn)
    s = sub.add_parser("plotdata", parents=[common])
    s.add_argument("kind", choices=("figure1", "tetrahedron", "rounded", "curve"))
    s.add_argument("doc", nargs="?", help=doc_help + "; figure1 falls back to --u/--v")
    s.add_argument("--t3", type=float, default=0.0)
    s.add_argument("--u", type=float, default=0.4)
    s.add_argument("--v", type=float, default=0.9)
    s.add_argument("--n", type=int, default=101)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_plotdata)
    s = sub.add_parser("random", parents=[common])
    s.add_argument("n", type=int)
    s.add_argument("--filter", choices=("cp", "extreme", "all"), default="cp")
    s.set_defaults(func=cmd_random)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.verb == "plotdata" else "json"
    try:
        return args.func(args, out)
    except (DocumentError, QchanError, ValueError) as exc:
        sys.stderr.write(f"qchan: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
