"""File formats: root-set lists, slice exports, reports.

Everything is UTF-8 JSON.  Report bytes are canonical (sorted keys, fixed
separators, trailing newline) so identical configurations produce
byte-identical files.
"""

from __future__ import annotations

import json

from .closed import ClosureResult, RootSet, root_set
from .errors import InputFormatError
from .gcm import GCM, Vec
from .levi import LeviReport
from .roots import RootSlice, height

# re-exported here so the CLI has one import site for file handling
from .gcm import load_gcm as load_gcm  # noqa: F401


def canonical_json_bytes(obj) -> bytes:
    return (
        json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        + "\n"
    ).encode("utf-8")


def load_root_vectors(path) -> list[Vec]:
    """Read the list-of-integer-vectors root file format."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputFormatError(
                "root file is not valid JSON (line %d, column %d): %s"
                % (exc.lineno, exc.colno, exc.msg)
            ) from exc
    if not isinstance(data, list) or not all(
        isinstance(v, list) and all(isinstance(x, int) for x in v) for v in data
    ):
        raise InputFormatError("root file must be a list of integer vectors")
    return [tuple(v) for v in data]


def resolve_root_set(gcm: GCM, vectors: list[Vec], slice_: RootSlice) -> RootSet:
    """Attach coroots to raw vectors; every vector must be a real root
    within the slice."""
    out = []
    for v in vectors:
        if len(v) != gcm.rank:
            raise InputFormatError("vector %r has wrong length" % (v,))
        if v not in slice_ or not slice_.is_real(v):
            raise InputFormatError(
                "%r is not a real root within height %d" % (v, slice_.height_bound)
            )
        out.append(slice_.real_root(v))
    return root_set(gcm, out)


def slice_to_dict(s: RootSlice) -> dict:
    return {
        "height_bound": s.height_bound,
        "roots": [
            {"coeffs": list(v), "real": s.is_real(v)} for v in s.sorted_roots
        ],
    }


def root_set_to_list(rs: RootSet) -> list[list[int]]:
    return [list(rr.root) for rr in rs.elements]


def closure_result_to_dict(res: ClosureResult) -> dict:
    return {
        "status": res.status,
        "roots": root_set_to_list(res.roots),
        "witness": list(res.witness) if res.witness is not None else None,
    }


def levi_report_to_dict(rep: LeviReport) -> dict:
    return {
        "psi_s": root_set_to_list(rep.psi_s),
        "psi_n": root_set_to_list(rep.psi_n),
        "type": rep.finite_type.name if rep.finite_type is not None else None,
        "coroot_rank": rep.coroot_rank,
        "checks": dict(sorted(rep.checks.items())),
        "witnesses": {k: repr(v) for k, v in sorted(rep.witnesses.items())},
        "ok": rep.ok,
    }


def write_report(path, report: dict) -> bytes:
    data = canonical_json_bytes(report)
    with open(path, "wb") as fh:
        fh.write(data)
    return data
