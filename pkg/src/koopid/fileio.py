"""File formats owned by the command-line layer: dataset JSON, dictionary /
weight / functional-basis / model records, and the CSV result schemas.

All files are written atomically (temp file in the target directory, then
rename) and numbers are serialized at full round-trip precision, so identical
inputs yield byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import List, Sequence

import numpy as np

from .errors import InvalidInputError
from .fields import Field, Grid1D
from .identify import ConvergenceReport, IdentificationResult
from .koopman import SpectrumResult
from .observables import (
    Bump,
    ConstantWeight,
    FunctionalSpec,
    InnerProductPower,
    LiftedTerm,
    PointEvaluation,
    PowerLaw,
    WeightSpec,
)
from .operators import (
    Constant,
    Dictionary,
    GraphonKernel,
    KernelSpec,
    MonomialDerivative,
    TermSpec,
    describe_term,
)
from .simulate import ICFamily, Model, SnapshotDataset


def atomic_write_text(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# term / dictionary / weight / functional records

def term_to_record(term: TermSpec) -> dict:
    if isinstance(term, Constant):
        return {"kind": "constant"}
    if isinstance(term, MonomialDerivative):
        return {"kind": "monomial", "j": term.j, "k": term.k}
    if isinstance(term, GraphonKernel):
        ker = term.kernel
        return {"kind": "graphon", "f": {"c0": ker.c0, "cx": ker.cx, "cy": ker.cy}}
    raise InvalidInputError(f"unknown term type: {term!r}")


def term_from_record(rec: dict) -> TermSpec:
    kind = rec.get("kind")
    if kind == "constant":
        return Constant()
    if kind == "monomial":
        return MonomialDerivative(int(rec["j"]), int(rec["k"]))
    if kind == "graphon":
        f = rec["f"]
        return GraphonKernel(KernelSpec(float(f["c0"]), float(f["cx"]), float(f["cy"])))
    raise InvalidInputError(f"unknown term kind: {kind!r}")


def dictionary_to_records(dictionary: Dictionary) -> List[dict]:
    return [term_to_record(t) for t in dictionary.terms]


def dictionary_from_records(records: Sequence[dict]) -> Dictionary:
    return Dictionary(tuple(term_from_record(r) for r in records))


def weight_to_record(weight: WeightSpec) -> dict:
    if isinstance(weight, Bump):
        rec = {"kind": "bump", "L": weight.L}
        if weight.recentered:
            rec["recentered"] = True
        return rec
    if isinstance(weight, PowerLaw):
        return {"kind": "power", "p": weight.p}
    if isinstance(weight, ConstantWeight):
        return {"kind": "constant"}
    raise InvalidInputError(f"unknown weight spec: {weight!r}")


def weight_from_record(rec: dict) -> WeightSpec:
    kind = rec.get("kind")
    if kind == "bump":
        return Bump(float(rec["L"]), recentered=bool(rec.get("recentered", False)))
    if kind == "power":
        return PowerLaw(int(rec["p"]))
    if kind == "constant":
        return ConstantWeight()
    raise InvalidInputError(f"unknown weight kind: {kind!r}")


def parse_weight_spec(text: str) -> WeightSpec:
    """Parse the CLI shorthand: ``bump:L``, ``power:p`` or ``constant``."""
    parts = text.split(":")
    if parts[0] == "constant" and len(parts) == 1:
        return ConstantWeight()
    if parts[0] == "bump" and len(parts) in (2, 3):
        recentered = len(parts) == 3 and parts[2] == "recentered"
        return Bump(float(parts[1]), recentered=recentered)
    if parts[0] == "power" and len(parts) == 2:
        return PowerLaw(int(parts[1]))
    raise InvalidInputError(f"cannot parse weight spec {text!r}")


def functional_to_record(spec: FunctionalSpec) -> dict:
    if isinstance(spec, InnerProductPower):
        return {"kind": "cosine", "a": spec.a, "b": spec.b, "k": spec.state_power, "l": spec.outer_power}
    if isinstance(spec, PointEvaluation):
        return {"kind": "point", "x": spec.x_j}
    if isinstance(spec, LiftedTerm):
        return {"kind": "lifted", "term": term_to_record(spec.term), "weight": weight_to_record(spec.weight)}
    raise InvalidInputError(f"unknown functional spec: {spec!r}")


def functional_from_record(rec: dict) -> FunctionalSpec:
    kind = rec.get("kind")
    if kind == "cosine":
        return InnerProductPower(float(rec["a"]), float(rec["b"]), int(rec["k"]), int(rec["l"]))
    if kind == "point":
        return PointEvaluation(float(rec["x"]))
    if kind == "lifted":
        return LiftedTerm(term_from_record(rec["term"]), weight_from_record(rec["weight"]))
    raise InvalidInputError(f"unknown functional kind: {kind!r}")


# ---------------------------------------------------------------------------
# dataset JSON

def dataset_to_json(dataset: SnapshotDataset) -> str:
    doc = {
        "grid": {
            "x_min": dataset.grid.x_min,
            "x_max": dataset.grid.x_max,
            "num_points": dataset.grid.num_points,
        },
        "sampling_time": dataset.sampling_time,
        "dirichlet": bool(dataset.pairs[0][0].dirichlet),
        "provenance": dataset.provenance or {},
        "pairs": [
            {"u": u.values.tolist(), "u_next": un.values.tolist()}
            for u, un in dataset.pairs
        ],
    }
    return json.dumps(doc, indent=1)


def dataset_from_json(text: str) -> SnapshotDataset:
    doc = json.loads(text)
    g = doc["grid"]
    grid = Grid1D(float(g["x_min"]), float(g["x_max"]), int(g["num_points"]))
    dirichlet = bool(doc.get("dirichlet", False))
    pairs = tuple(
        (
            Field(grid, np.array(p["u"], dtype=float), dirichlet=dirichlet),
            Field(grid, np.array(p["u_next"], dtype=float), dirichlet=dirichlet),
        )
        for p in doc["pairs"]
    )
    return SnapshotDataset(
        grid, float(doc["sampling_time"]), pairs, provenance=doc.get("provenance") or None
    )


def write_dataset(path: str, dataset: SnapshotDataset):
    atomic_write_text(path, dataset_to_json(dataset))


def read_dataset(path: str) -> SnapshotDataset:
    with open(path) as fh:
        return dataset_from_json(fh.read())


# ---------------------------------------------------------------------------
# model files (custom models for the CLI)

def model_from_record(doc: dict, num_points: int | None = None) -> Model:
    g = doc["grid"]
    grid = Grid1D(
        float(g["x_min"]), float(g["x_max"]), int(num_points or g.get("num_points", 256))
    )
    terms = tuple(term_from_record(r) for r in doc["dictionary"])
    coefficients = tuple(float(c) for c in doc["coefficients"])
    dic = Dictionary(terms, coefficients)
    boundary = doc.get("boundary", "none")
    if boundary not in ("dirichlet", "none"):
        raise InvalidInputError(f"boundary must be 'dirichlet' or 'none', got {boundary!r}")
    return Model(str(doc.get("name", "custom")), dic, grid, dirichlet=boundary == "dirichlet")


def read_model(path: str, num_points: int | None = None):
    """Read a custom model file; returns (model, ic_family)."""
    with open(path) as fh:
        doc = json.load(fh)
    family = ICFamily(doc.get("family", "burgers"))
    return model_from_record(doc, num_points), family


def read_dictionary(path: str) -> Dictionary:
    with open(path) as fh:
        return dictionary_from_records(json.load(fh))


def read_basis(path: str) -> List[FunctionalSpec]:
    with open(path) as fh:
        return [functional_from_record(r) for r in json.load(fh)]


def read_truth(path: str) -> np.ndarray:
    with open(path) as fh:
        return np.array(json.load(fh), dtype=float)


# ---------------------------------------------------------------------------
# CSV result schemas

def _fmt(x: float) -> str:
    return repr(float(x))


def spectrum_to_csv(result: SpectrumResult) -> str:
    rows = [["re_lambda_L", "im_lambda_L", "re_lambda_U", "im_lambda_U", "residual_score"]]
    for mode in result.modes:
        if mode.lambda_l is None:
            re_l, im_l = "", ""
        else:
            re_l, im_l = _fmt(mode.lambda_l.real), _fmt(mode.lambda_l.imag)
        rows.append(
            [re_l, im_l, _fmt(mode.lambda_u.real), _fmt(mode.lambda_u.imag), _fmt(mode.residual_score)]
        )
    return _csv_text(rows)


def identification_to_csv(result: IdentificationResult, truth: np.ndarray | None = None) -> str:
    rows = [["term_index", "term_descriptor", "c_true", "c_hat", "abs_error"]]
    for i, term in enumerate(result.dictionary.terms):
        c_hat = result.estimates[i]
        if truth is None:
            c_true, err = "", ""
        else:
            c_true = _fmt(truth[i])
            err = _fmt(abs(c_hat - truth[i]))
        rows.append([str(i + 1), describe_term(term), c_true, _fmt(c_hat), err])
    return _csv_text(rows)


def sweep_to_csv(report: ConvergenceReport, dictionary: Dictionary) -> str:
    header = ["ts", "max_abs_error"] + [
        f"err_{i + 1}_{describe_term(t)}" for i, t in enumerate(dictionary.terms)
    ]
    rows = [header]
    for entry in report.entries:
        rows.append([_fmt(entry.t_s), _fmt(entry.max_error)] + [_fmt(e) for e in entry.errors])
    return _csv_text(rows)


def _csv_text(rows: List[List[str]]) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()
