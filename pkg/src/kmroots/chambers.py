"""Chamber-level geometry: half-spaces, walls, galleries, nestedness.

Chambers are Weyl elements (x = w C0 identified with w).  Membership of a
chamber in the half-space of a real root alpha is the sign test
w^{-1} alpha > 0, so no root slice is needed for membership itself.  The
dihedral classification of a pair of real roots and the gallery-approach
property are checked here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EqualOrOpposite, InstancePreconditionViolated, SliceTooShallow
from .gcm import GCM, Matrix, Vec, pairing, pairing_with_simple_coroot
from .roots import (
    RealRoot,
    RootSlice,
    height,
    reflect,
    reflect_root_by_simple,
    root_sort_key,
    simple_coroot,
    simple_root,
    vec_neg,
)
from .weyl import (
    WeylElt,
    act,
    act_coroot,
    canonical_word_from_inverse,
    element_from_word,
    identity,
    inverse,
    matmul,
    matvec,
    multiply,
    reflection_of,
    simple_reflection,
    simple_reflection_matrices,
)

Chamber = WeylElt

NOT_PRENILPOTENT = "not_prenilpotent"
FINITE_DIHEDRAL = "finite_dihedral"
INFINITE_PRENILPOTENT = "infinite_dihedral_prenilpotent"

_FINITE_TYPE_BY_MN = {0: "A1xA1", 1: "A2", 2: "B2", 3: "G2"}


def in_halfspace(x: Chamber, alpha: Vec) -> bool:
    """x in H(alpha) iff w^{-1} alpha is positive, where x = w C0."""
    return height(matvec(x.m_root_inv, alpha)) > 0


def chamber_distance(x: Chamber, y: Chamber) -> int:
    """Word length of x^{-1} y = number of separating walls."""
    return len(canonical_word_from_inverse(x.gcm, matmul(y.m_root_inv, x.m_root)))


def separating_walls(x: Chamber, y: Chamber, slice_: RootSlice) -> list[RealRoot]:
    """Positive representatives of the walls separating x and y."""
    out = [
        rr
        for rr in slice_.positive_real_roots()
        if in_halfspace(x, rr.root) != in_halfspace(y, rr.root)
    ]
    d = chamber_distance(x, y)
    if len(out) < d:
        raise SliceTooShallow(
            "found %d separating walls for distance %d" % (len(out), d)
        )
    assert len(out) == d
    return out


def minimal_gallery(x: Chamber, y: Chamber) -> list[Chamber]:
    """A minimal gallery from x to y, crossing the lowest simple index first."""
    gcm = x.gcm
    mats = simple_reflection_matrices(gcm)
    gallery = [x]
    p = matmul(y.m_root_inv, x.m_root)  # matrix of y^{-1} x
    cur = x
    ident = tuple(
        tuple(1 if i == j else 0 for j in range(gcm.rank)) for i in range(gcm.rank)
    )
    while p != ident:
        i = _first_negative_column_index(p)
        assert i is not None
        cur = multiply(cur, simple_reflection(gcm, i))
        p = matmul(p, mats[i][0])
        gallery.append(cur)
    return gallery


def _first_negative_column_index(m: Matrix) -> int | None:
    n = len(m)
    for i in range(n):
        col = [m[r][i] for r in range(n)]
        if any(x < 0 for x in col) and not any(x > 0 for x in col):
            return i
    return None


def neighbors(x: Chamber) -> list[Chamber]:
    """The chambers adjacent to x, one per simple index."""
    return [multiply(x, simple_reflection(x.gcm, i)) for i in range(x.gcm.rank)]


def wall_root_of_step(x: Chamber, i: int) -> RealRoot:
    """The real root beta with x in H(beta) whose wall separates x from x r_i."""
    gcm = x.gcm
    return RealRoot(act(x, simple_root(gcm, i)), act_coroot(x, simple_coroot(gcm, i)))


# ---------------------------------------------------------------------------
# pair classification and nestedness


@dataclass(frozen=True)
class PairClass:
    kind: str  # NOT_PRENILPOTENT | FINITE_DIHEDRAL | INFINITE_PRENILPOTENT
    finite_type: str | None
    m: int
    n: int


def pair_relation(alpha: RealRoot, beta: RealRoot, gcm: GCM) -> PairClass:
    """Classify a pair of real roots by m = <a,b_cor>, n = <b,a_cor>.

    mn in {0,1,2,3} generates a finite dihedral group and the closure of
    {+/-a, +/-b} is a rank-2 finite root system of the matching type;
    mn >= 4 with m,n < 0 is the non-prenilpotent case; mn >= 4 with
    m,n > 0 is the nested-but-prenilpotent case.  Mixed signs cannot occur
    for two real roots.
    """
    if alpha.root == beta.root or alpha.root == vec_neg(beta.root):
        raise EqualOrOpposite("pair classification needs alpha != +/-beta")
    m = pairing(alpha.root, beta.coroot, gcm)
    n = pairing(beta.root, alpha.coroot, gcm)
    mn = m * n
    assert mn >= 0, "pairings of two real roots cannot have mixed signs"
    if mn >= 4:
        if m < 0:
            return PairClass(NOT_PRENILPOTENT, None, m, n)
        return PairClass(INFINITE_PRENILPOTENT, None, m, n)
    return PairClass(FINITE_DIHEDRAL, _FINITE_TYPE_BY_MN[mn], m, n)


def dihedral_product_order(alpha: RealRoot, beta: RealRoot, gcm: GCM,
                           cap: int = 24) -> int | None:
    """Order of r_alpha r_beta, or None when it exceeds cap (infinite).

    A finite-order product of two reflections acting on the root lattice of
    a GCM of rank <= 4 has order at most 12, so the default cap decides.
    """
    ra = reflection_of(gcm, alpha).m_root
    rb = reflection_of(gcm, beta).m_root
    p = matmul(ra, rb)
    ident = tuple(
        tuple(1 if i == j else 0 for j in range(gcm.rank)) for i in range(gcm.rank)
    )
    q = p
    for k in range(1, cap + 1):
        if q == ident:
            return k
        q = matmul(q, p)
    return None


def _descend_to_simple(gcm: GCM, v: Vec) -> tuple[list[int], int]:
    """Letters i1..ik and index j with v = r_{i1}...r_{ik}(alpha_j), for a
    positive real root v."""
    letters: list[int] = []
    cur = v
    while True:
        ones = [k for k, x in enumerate(cur) if x != 0]
        if len(ones) == 1 and cur[ones[0]] == 1:
            return letters, ones[0]
        i = None
        for k in range(gcm.rank):
            if pairing_with_simple_coroot(cur, k, gcm) > 0:
                i = k
                break
        assert i is not None, "no height descent from %r" % (cur,)
        letters.append(i)
        cur = reflect_root_by_simple(gcm, i, cur)
        assert height(cur) > 0


def boundary_pair(gcm: GCM, alpha: RealRoot) -> tuple[Chamber, Chamber, int]:
    """(x, x', j) with x in H(alpha), x' = x r_j adjacent and outside."""
    root = alpha.root
    flip = height(root) < 0
    if flip:
        root = vec_neg(root)
    letters, j = _descend_to_simple(gcm, root)
    x = element_from_word(gcm, letters)
    if flip:
        # the pair straddling the wall of -alpha, reversed orientation
        x2 = multiply(x, simple_reflection(gcm, j))
        return x2, x, j
    return x, multiply(x, simple_reflection(gcm, j)), j


def _containment_orientation(gcm: GCM, a: RealRoot, b: RealRoot) -> str:
    """Given that {a, b} is nested, decide which half-space contains which.

    A chamber pair straddling the wall of a agrees on membership in H(b);
    agreement inside H(b) rules out H(b) <= H(a), agreement outside rules
    out H(a) <= H(b).
    """
    if height(a.root) < 0:
        o = _containment_orientation(gcm, a.negate(), b.negate())
        return (
            "beta_inside_alpha" if o == "alpha_inside_beta" else "alpha_inside_beta"
        )
    x, x_out, _ = boundary_pair(gcm, a)
    assert in_halfspace(x, a.root) and not in_halfspace(x_out, a.root)
    if in_halfspace(x, b.root):
        return "alpha_inside_beta"
    return "beta_inside_alpha"


@dataclass(frozen=True)
class NestResult:
    """Exact nestedness relation of H(alpha) and H(beta), with ball evidence.

    relation is one of "alpha_inside_beta", "beta_inside_alpha",
    "not_nested".  For the non-prenilpotent case the nested pair among
    {+/-alpha, +/-beta} is reported: "alpha_inside_minus_beta" means
    H(alpha) and H(beta) are disjoint, "minus_beta_inside_alpha" means they
    cover every chamber.  Witnesses are chambers found in the scanned ball
    proving non-containment in each direction.
    """

    relation: str
    exact: bool
    nested_pair: str | None
    witness_alpha_only: Chamber | None
    witness_beta_only: Chamber | None


def nestedness(alpha: RealRoot, beta: RealRoot, gcm: GCM,
               ball: list[Chamber] | None = None) -> NestResult:
    """Decide whether H(alpha) and H(beta) are nested, and how.

    The relation is resolved exactly through the pair classification plus
    one boundary-pair membership test; when a ball is supplied, it is also
    scanned for witness chambers, which are asserted consistent with the
    exact answer.
    """
    rel = pair_relation(alpha, beta, gcm)
    nested_pair = None
    if rel.kind == FINITE_DIHEDRAL:
        relation = "not_nested"
    elif rel.kind == INFINITE_PRENILPOTENT:
        relation = _containment_orientation(gcm, alpha, beta)
    else:
        relation = "not_nested"
        o = _containment_orientation(gcm, alpha, beta.negate())
        nested_pair = (
            "alpha_inside_minus_beta" if o == "alpha_inside_beta"
            else "minus_beta_inside_alpha"
        )
    w_a = w_b = None
    if ball is not None:
        for x in ball:
            ia = in_halfspace(x, alpha.root)
            ib = in_halfspace(x, beta.root)
            if ia and not ib and w_a is None:
                w_a = x
            elif ib and not ia and w_b is None:
                w_b = x
            if w_a is not None and w_b is not None:
                break
        if relation == "alpha_inside_beta":
            assert w_a is None, "ball contradicts H(alpha) <= H(beta)"
        elif relation == "beta_inside_alpha":
            assert w_b is None, "ball contradicts H(beta) <= H(alpha)"
        if nested_pair == "alpha_inside_minus_beta":
            for x in ball:
                assert not (
                    in_halfspace(x, alpha.root) and in_halfspace(x, beta.root)
                ), "ball contradicts H(alpha) cap H(beta) = empty"
        elif nested_pair == "minus_beta_inside_alpha":
            for x in ball:
                assert in_halfspace(x, alpha.root) or in_halfspace(x, beta.root), (
                    "ball contradicts H(alpha) cup H(beta) = everything"
                )
    return NestResult(relation, True, nested_pair, w_a, w_b)


def quadrant_witnesses(alpha: RealRoot, beta: RealRoot,
                       ball: list[Chamber]) -> dict[tuple[int, int], Chamber]:
    """First chamber of the ball in each of the four sign quadrants."""
    found: dict[tuple[int, int], Chamber] = {}
    for x in ball:
        key = (
            1 if in_halfspace(x, alpha.root) else -1,
            1 if in_halfspace(x, beta.root) else -1,
        )
        if key not in found:
            found[key] = x
            if len(found) == 4:
                break
    return found


def geometric_pair_prenilpotent(alpha: RealRoot, beta: RealRoot, gcm: GCM,
                                chambers) -> bool | None:
    """Prenilpotency of {alpha, beta} decided by chamber geometry alone.

    Witnesses in both the (+,+) and (-,-) quadrants certify that
    {alpha, -beta} is not nested, hence prenilpotent.  A finite dihedral
    product order certifies meeting walls, hence prenilpotent.  When the
    product order is infinite, exactly one quadrant is empty; three
    witnessed quadrants identify it, and the pair is prenilpotent exactly
    when the empty quadrant is a mixed one.  None when the supplied
    chamber iterable is too small to decide.
    """
    if dihedral_product_order(alpha, beta, gcm) is not None:
        return True
    found: set[tuple[int, int]] = set()
    for x in chambers:
        found.add(
            (
                1 if in_halfspace(x, alpha.root) else -1,
                1 if in_halfspace(x, beta.root) else -1,
            )
        )
        if (1, 1) in found and (-1, -1) in found:
            return True
        if len(found) == 3:
            (missing,) = (
                q for q in ((1, 1), (1, -1), (-1, 1), (-1, -1)) if q not in found
            )
            return missing in ((1, -1), (-1, 1))
    return None


# ---------------------------------------------------------------------------
# gallery approach property (first crossing toward a half-space)


def nearest_in_halfspace(x: Chamber, alpha: Vec, depth_cap: int = 24
                         ) -> tuple[int, Chamber] | None:
    """(distance, chamber) for the closest chamber of H(alpha) to x.

    Deterministic breadth-first search over the chamber graph; the first
    member found at the minimal depth (letters scanned in ascending order)
    is returned.  None when the cap is exhausted.
    """
    gcm = x.gcm
    mats = simple_reflection_matrices(gcm)
    if height(matvec(x.m_root_inv, alpha)) > 0:
        return 0, x
    frontier = [x.m_root_inv]
    seen = {x.m_root_inv}
    for depth in range(1, depth_cap + 1):
        nxt = []
        for inv in frontier:
            for s in range(gcm.rank):
                ninv = matmul(mats[s][0], inv)
                if ninv in seen:
                    continue
                seen.add(ninv)
                if height(matvec(ninv, alpha)) > 0:
                    # ninv is the inverse-action matrix of the found chamber
                    y = element_from_word(gcm, canonical_word_from_inverse(gcm, ninv))
                    return depth, y
                nxt.append(ninv)
        frontier = nxt
    return None


@dataclass(frozen=True)
class GalleryApproachInstance:
    """A chamber x outside H(alpha), a nearest chamber y inside it, and a
    wall beta of x whose half-space contains x but not y."""

    x: Chamber
    alpha: RealRoot
    y: Chamber
    beta: RealRoot


@dataclass(frozen=True)
class ApproachOutcome:
    passed: bool
    failed: str | None
    pairing_value: int


def check_gallery_approach(inst: GalleryApproachInstance, gcm: GCM,
                           verify_minimality: bool = True) -> ApproachOutcome:
    """Check the two approach assertions on a validated instance.

    (i) the wall root beta pairs strictly negatively with the target root
    alpha; (ii) x still lies outside the half-space of beta-reflected
    alpha.  A failure would falsify the implementation, not the property.
    """
    x, alpha, y, beta = inst.x, inst.alpha, inst.y, inst.beta
    if beta.root == vec_neg(alpha.root):
        raise InstancePreconditionViolated("beta_not_opposite_alpha")
    if in_halfspace(x, alpha.root):
        raise InstancePreconditionViolated("x_outside_target")
    if not in_halfspace(y, alpha.root):
        raise InstancePreconditionViolated("y_inside_target")
    if not in_halfspace(x, beta.root):
        raise InstancePreconditionViolated("beta_contains_x")
    if in_halfspace(y, beta.root):
        raise InstancePreconditionViolated("beta_excludes_y")
    if not any(
        not in_halfspace(nb, beta.root) for nb in neighbors(x)
    ):
        raise InstancePreconditionViolated("wall_adjacent_to_x")
    if verify_minimality:
        d = chamber_distance(x, y)
        best = nearest_in_halfspace(x, alpha.root, depth_cap=d)
        if best is None or best[0] != d:
            raise InstancePreconditionViolated("y_minimal")
    m = pairing(alpha.root, beta.coroot, gcm)
    if m >= 0:
        return ApproachOutcome(False, "pairing_negative", m)
    if in_halfspace(x, reflect(beta, alpha.root, gcm)):
        return ApproachOutcome(False, "reflected_target_excludes_x", m)
    return ApproachOutcome(True, None, m)


def instance_walls(x: Chamber, alpha: RealRoot, y: Chamber) -> list[RealRoot]:
    """The walls beta of x admissible for the approach instance (x, alpha, y)."""
    gcm = x.gcm
    out = []
    for i in range(gcm.rank):
        beta = wall_root_of_step(x, i)
        if beta.root == vec_neg(alpha.root):
            continue
        if not in_halfspace(y, beta.root):
            out.append(beta)
    return out


def exhaustive_approach_instances(gcm: GCM, chambers: list[Chamber],
                                  slice_: RootSlice) -> list[GalleryApproachInstance]:
    """Every valid instance over a full finite chamber set."""
    out = []
    reals = slice_.real_roots()
    for x in chambers:
        for rr in reals:
            if in_halfspace(x, rr.root):
                continue
            dists = [(chamber_distance(x, y), y) for y in chambers
                     if in_halfspace(y, rr.root)]
            dmin = min(d for d, _ in dists)
            for d, y in dists:
                if d != dmin:
                    continue
                for beta in instance_walls(x, rr, y):
                    out.append(GalleryApproachInstance(x, rr, y, beta))
    return out
