"""Generalised Cartan matrices and the root/coroot pairing.

All vectors are integer coordinate tuples: a root lives over the simple
roots, a coroot over the simple coroots.  Every pairing in the package is
routed through :func:`pairing` with the fixed convention
``pairing(alpha_j, alpha_i_coroot) == a[i][j]``, so there is a single
place where the sign/transpose convention is pinned down.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DimensionMismatch, GCMValidationError, InputFormatError

Vec = tuple[int, ...]
Matrix = tuple[Vec, ...]

DIAGONAL_NOT_TWO = "DiagonalNotTwo"
POSITIVE_OFF_DIAGONAL = "PositiveOffDiagonal"
ASYMMETRIC_ZERO = "AsymmetricZero"


@dataclass(frozen=True)
class GCM:
    """A validated generalised Cartan matrix."""

    rank: int
    entries: Matrix

    def __post_init__(self):
        violations = gcm_violations(self.entries)
        if violations:
            raise GCMValidationError(violations)

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def __str__(self) -> str:
        return "GCM(rank=%d, %s)" % (self.rank, list(map(list, self.entries)))


def gcm_violations(matrix) -> list[tuple[str, int, int]]:
    """List every GCM invariant violated by ``matrix`` (1-based cells)."""
    rows = [tuple(int(x) for x in row) for row in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionMismatch("expected a non-empty square integer matrix")
    out = []
    for i in range(n):
        if rows[i][i] != 2:
            out.append((DIAGONAL_NOT_TWO, i + 1, i + 1))
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                out.append((POSITIVE_OFF_DIAGONAL, i + 1, j + 1))
            if rows[i][j] == 0 and rows[j][i] != 0:
                out.append((ASYMMETRIC_ZERO, i + 1, j + 1))
    return out


def validate_gcm(matrix) -> GCM:
    """Validate an integer matrix and wrap it as a :class:`GCM`.

    Raises :class:`GCMValidationError` carrying every violated invariant
    with its cell coordinates.
    """
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    return GCM(rank=len(rows), entries=rows)


def pairing(alpha: Vec, beta_coroot: Vec, gcm: GCM) -> int:
    """<alpha, beta_coroot> = sum_{i,j} d_i a[i][j] c_j, bilinear in both."""
    n = gcm.rank
    if len(alpha) != n or len(beta_coroot) != n:
        raise DimensionMismatch(
            "pairing needs length-%d vectors, got %d and %d"
            % (n, len(alpha), len(beta_coroot))
        )
    a = gcm.entries
    total = 0
    for i in range(n):
        d = beta_coroot[i]
        if d:
            row = a[i]
            total += d * sum(row[j] * alpha[j] for j in range(n) if alpha[j])
    return total


def pairing_with_simple_coroot(alpha: Vec, i: int, gcm: GCM) -> int:
    """<alpha, alpha_i_coroot>; the row-i contraction used by reflections."""
    row = gcm.entries[i]
    return sum(row[j] * alpha[j] for j in range(gcm.rank) if alpha[j])


def pairing_of_simple_root(i: int, coroot: Vec, gcm: GCM) -> int:
    """<alpha_i, h> for a coroot-lattice vector h; column-i contraction."""
    a = gcm.entries
    return sum(a[k][i] * coroot[k] for k in range(gcm.rank) if coroot[k])


def parse_gcm_json(text: str) -> GCM:
    """Parse the ``{"rank": n, "matrix": [[...], ...]}`` file format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            "GCM file is not valid JSON (line %d, column %d): %s"
            % (exc.lineno, exc.colno, exc.msg)
        ) from exc
    if not isinstance(data, dict) or "rank" not in data or "matrix" not in data:
        raise InputFormatError('GCM file must be {"rank": n, "matrix": [[...], ...]}')
    gcm = validate_gcm(data["matrix"])
    if gcm.rank != int(data["rank"]):
        raise InputFormatError(
            "declared rank %s does not match matrix size %d" % (data["rank"], gcm.rank)
        )
    return gcm


def load_gcm(path) -> GCM:
    """Load a GCM from a UTF-8 JSON file."""
    with open(path, encoding="utf-8") as fh:
        return parse_gcm_json(fh.read())


def gcm_to_json(gcm: GCM) -> str:
    return json.dumps({"rank": gcm.rank, "matrix": [list(r) for r in gcm.entries]})
