"""Levi decomposition of a closed set of real roots.

The symmetric part of a closed set is a finite root system; this module
extracts a simple system for it, classifies the resulting Cartan matrix
against the finite Dynkin diagrams, and verifies the decomposition facts
(symmetric part closed, asymmetric part a pro-nilpotent ideal, coroot span
rank matching the classified type).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .closed import (
    RootSet,
    SliceCache,
    closedness_witness,
    ideal_witness,
    pronilpotent_filtration,
    root_set,
)
from .errors import NotFiniteType, PreconditionViolated, UnrecognizedDiagram
from .gcm import GCM, Vec, gcm_violations, pairing
from .roots import RealRoot, RootSlice, root_sort_key, vec_add, vec_neg


def split(psi: RootSet) -> tuple[RootSet, RootSet]:
    """(psi_s, psi_n): the symmetric part psi cap -psi and its complement."""
    vecs = psi.vectors()
    sym = [rr for rr in psi.elements if vec_neg(rr.root) in vecs]
    asym = [rr for rr in psi.elements if vec_neg(rr.root) not in vecs]
    return root_set(psi.gcm, sym), root_set(psi.gcm, asym)


# ---------------------------------------------------------------------------
# finite-type classification

_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}
_FAMILY_MAX_RANK = {"E": 8, "F": 4, "G": 2}


def _root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family in ("B", "C"):
        return 2 * rank * rank
    if family == "D":
        return 2 * rank * (rank - 1)
    if family == "E":
        return {6: 72, 7: 126, 8: 240}[rank]
    if family == "F":
        return 48
    if family == "G":
        return 12
    raise ValueError(family)


def reference_cartan(family: str, rank: int) -> tuple[Vec, ...]:
    """The reference Cartan matrix of a finite family, c[i][j] = <a_j, a_i^v>."""
    lo = _FAMILY_MIN_RANK.get(family)
    hi = _FAMILY_MAX_RANK.get(family, None)
    if lo is None or rank < lo or (hi is not None and rank > hi):
        raise ValueError("no finite type %s%d" % (family, rank))
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def chain(i, j, down=-1, up=-1):
        m[i][j] = down
        m[j][i] = up

    if family in ("A", "B", "C"):
        for i in range(rank - 1):
            chain(i, i + 1)
        if family == "B" and rank >= 2:
            # short root at the end: <a_{r-1}, a_r^v> = -2
            m[rank - 1][rank - 2] = -2
        if family == "C":
            m[rank - 2][rank - 1] = -2
    elif family == "D":
        for i in range(rank - 2):
            chain(i, i + 1)
        chain(rank - 3, rank - 1)
    elif family == "E":
        for i in range(rank - 2):
            chain(i, i + 1)
        chain(2, rank - 1)
    elif family == "F":
        chain(0, 1)
        chain(1, 2, down=-2, up=-1)
        chain(2, 3)
    elif family == "G":
        m[0][1] = -1
        m[1][0] = -3
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class FiniteType:
    """A multiset of finite Dynkin components, canonically sorted."""

    components: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components)))
        for fam, rank in self.components:
            lo = _FAMILY_MIN_RANK.get(fam)
            hi = _FAMILY_MAX_RANK.get(fam)
            assert lo is not None and rank >= lo, (fam, rank)
            assert hi is None or rank <= hi, (fam, rank)

    @property
    def name(self) -> str:
        if not self.components:
            return "0"
        return "x".join("%s%d" % (fam, rank) for fam, rank in self.components)

    @property
    def total_rank(self) -> int:
        return sum(rank for _, rank in self.components)

    @property
    def root_count(self) -> int:
        return sum(_root_count(fam, rank) for fam, rank in self.components)


def _connected_components(c: tuple[Vec, ...]) -> list[list[int]]:
    n = len(c)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in range(n):
                if u not in seen and (c[v][u] != 0 or c[u][v] != 0):
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _match_component(c: tuple[Vec, ...]) -> tuple[str, int]:
    """Match a connected Cartan matrix against the finite diagrams by
    labeled-graph isomorphism (brute-force over node permutations)."""
    k = len(c)
    labels = sorted(
        sorted((c[i][j], c[j][i])) for i in range(k) for j in range(i + 1, k)
        if c[i][j] != 0
    )
    for family in "ABCDEFG":
        lo = _FAMILY_MIN_RANK[family]
        hi = _FAMILY_MAX_RANK.get(family)
        if k < lo or (hi is not None and k > hi):
            continue
        ref = reference_cartan(family, k)
        ref_labels = sorted(
            sorted((ref[i][j], ref[j][i]))
            for i in range(k)
            for j in range(i + 1, k)
            if ref[i][j] != 0
        )
        if labels != ref_labels:
            continue
        for perm in permutations(range(k)):
            if all(
                c[perm[i]][perm[j]] == ref[i][j] for i in range(k) for j in range(k)
            ):
                return family, k
    raise UnrecognizedDiagram("connected Cartan matrix %r matches no finite type"
                              % (list(map(list, c)),))


def simple_system(psi_s: RootSet, slice_: RootSlice,
                  assume_closed: bool = False) -> list[RealRoot]:
    """The indecomposable positive elements of a symmetric closed set.

    Positivity is inherited from the ambient positive roots; the result is
    verified to be a simple system: pairwise non-positive pairings, and
    every positive element decomposes as a non-negative integer
    combination (witnessed by recursive splitting into two positives).
    assume_closed skips the closedness re-check for saturation outputs,
    which are closed by construction.
    """
    if not len(psi_s):
        raise PreconditionViolated("simple system of an empty set")
    vecs = psi_s.vectors()
    if any(vec_neg(v) not in vecs for v in vecs):
        raise PreconditionViolated("set is not symmetric")
    if not assume_closed and closedness_witness(psi_s, slice_) is not None:
        raise PreconditionViolated("set is not closed")
    pos = [rr for rr in psi_s.elements if rr.height > 0]
    pos_vecs = {rr.root for rr in pos}
    simples = [
        rr
        for rr in pos
        if not any(
            vec_add(a.root, b.root) == rr.root
            for a in pos
            for b in pos
        )
    ]
    gcm = psi_s.gcm
    for a in simples:
        for b in simples:
            if a.root != b.root:
                assert pairing(a.root, b.coroot, gcm) <= 0, (a, b)
    # every positive element must split down to the simples; splits strictly
    # lower the height, so a bottom-up pass settles expressibility
    simple_vecs = {rr.root for rr in simples}
    expressible: dict[Vec, bool] = {}
    for rr in sorted(pos, key=lambda r: root_sort_key(r.root)):
        v = rr.root
        ok = v in simple_vecs
        if not ok:
            for a in pos_vecs:
                rest = tuple(x - y for x, y in zip(v, a))
                if (
                    rest in pos_vecs
                    and expressible.get(a, False)
                    and expressible.get(rest, False)
                ):
                    ok = True
                    break
        expressible[v] = ok
        assert ok, "positive %r has no simple expansion" % (v,)
    return sorted(simples, key=lambda rr: root_sort_key(rr.root))


def cartan_type(psi_s: RootSet, slice_: RootSlice,
                assume_closed: bool = False) -> FiniteType:
    """Classify a symmetric closed set as a finite root system.

    Builds the Cartan matrix of the extracted simple system, checks it is a
    valid GCM, matches each connected component against the finite
    diagrams, and cross-checks the root count of the identified type
    against |psi_s|.
    """
    if not len(psi_s):
        return FiniteType(())
    simples = simple_system(psi_s, slice_, assume_closed=assume_closed)
    gcm = psi_s.gcm
    k = len(simples)
    c = tuple(
        tuple(pairing(simples[j].root, simples[i].coroot, gcm) for j in range(k))
        for i in range(k)
    )
    if gcm_violations(c):
        raise NotFiniteType("simple-system matrix is not a GCM: %r" % (c,))
    comps = _connected_components(c)
    parts = []
    for comp in comps:
        sub = tuple(tuple(c[i][j] for j in comp) for i in comp)
        parts.append(_match_component(sub))
    ftype = FiniteType(tuple(parts))
    if ftype.root_count != len(psi_s):
        raise NotFiniteType(
            "type %s expects %d roots, set has %d"
            % (ftype.name, ftype.root_count, len(psi_s))
        )
    return ftype


def integer_rank(rows: list[Vec]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free
    row elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    row = 0
    for col in range(cols):
        piv = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            x = m[r][col]
            if x:
                m[r] = [pv * a - x * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == len(m):
            break
    return rank


def coroot_span_rank(psi_s: RootSet) -> int:
    """Rank of the span of the coroots of psi_s, over the rationals."""
    return integer_rank([rr.coroot for rr in psi_s.elements])


@dataclass(frozen=True)
class LeviReport:
    psi_s: RootSet
    psi_n: RootSet
    finite_type: FiniteType | None
    coroot_rank: int
    checks: dict
    witnesses: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_levi(psi: RootSet, slices: SliceCache | None = None,
                cap: int | None = None) -> LeviReport:
    """Verify the decomposition facts for a closed set psi.

    (a) the symmetric part is closed; (b) the asymmetric part is an ideal
    in psi; (c) the asymmetric part is free of symmetric pairs and its
    height filtration consists of nilpotent levels; (d) the symmetric part
    classifies as a finite type whose root count and total rank match.
    Any failed check carries a witness and would falsify the
    implementation, not the decomposition.
    """
    if slices is None:
        slices = SliceCache(psi.gcm)
    depth = max(2 * psi.max_abs_height() + 2, 8)
    slice_ = slices.at_least(depth)
    w = closedness_witness(psi, slice_)
    if w is not None:
        raise PreconditionViolated("input set is not closed: %r" % (w,))
    psi_s, psi_n = split(psi)
    checks: dict = {}
    witnesses: dict = {}

    ws = closedness_witness(psi_s, slice_)
    checks["symmetric_part_closed"] = ws is None
    if ws is not None:
        witnesses["symmetric_part_closed"] = ws

    wi = ideal_witness(psi_n, psi, slice_)
    checks["asymmetric_part_ideal"] = wi is None
    if wi is not None:
        witnesses["asymmetric_part_ideal"] = wi

    checks["asymmetric_part_symmetric_free"] = psi_n.is_symmetric_free()
    try:
        levels = pronilpotent_filtration(psi_n, max(psi_n.max_abs_height(), 1),
                                         slices)
        checks["asymmetric_part_filtration"] = all(lv.nilpotent.ok for lv in levels)
    except Exception as exc:  # escalated as implementation-falsifying
        checks["asymmetric_part_filtration"] = False
        witnesses["asymmetric_part_filtration"] = repr(exc)

    ftype = None
    rank = coroot_span_rank(psi_s)
    try:
        ftype = cartan_type(psi_s, slice_)
        checks["symmetric_part_classified"] = True
        checks["root_count_matches"] = ftype.root_count == len(psi_s)
        checks["coroot_rank_matches"] = ftype.total_rank == rank
    except Exception as exc:
        checks["symmetric_part_classified"] = False
        witnesses["symmetric_part_classified"] = repr(exc)
        checks["root_count_matches"] = False
        checks["coroot_rank_matches"] = False

    return LeviReport(psi_s, psi_n, ftype, rank, checks, witnesses)
