"""Closed sets of real roots: closures, ideals, prenilpotency, nilpotency,
pro-nilpotent filtrations, and the constructive chamber-intersection search.

Sums in every closedness test are checked against the full root system
(imaginary roots included); a sum landing on an imaginary root is exactly
how a closure escapes the real roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .chambers import Chamber, in_halfspace
from .errors import (
    ClosureEscaped,
    NotASubset,
    NotNilpotent,
    PreconditionViolated,
    SliceTooShallow,
)
from .gcm import GCM, Vec, pairing
from .roots import (
    RealRoot,
    RootSlice,
    enumerate_root_slice,
    height,
    leq,
    root_sort_key,
    vec_add,
    vec_neg,
)
from .weyl import WeylElt, act_real, identity, inverse, multiply, weyl_ball

CLOSED = "closed"
EXCEEDED_CAP = "exceeded_cap"
ESCAPED_REAL_ROOTS = "escaped_real_roots"


@dataclass(frozen=True, eq=False)
class RootSet:
    """A finite set of real roots of one GCM, kept in (height, lex) order."""

    gcm: GCM
    elements: tuple[RealRoot, ...]

    def __post_init__(self):
        vecs = [rr.root for rr in self.elements]
        assert len(set(vecs)) == len(vecs), "duplicate roots"
        for rr in self.elements:
            assert pairing(rr.root, rr.coroot, self.gcm) == 2, rr

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v: Vec) -> bool:
        return v in self.vectors()

    def vectors(self) -> frozenset[Vec]:
        return frozenset(rr.root for rr in self.elements)

    def max_abs_height(self) -> int:
        return max((abs(rr.height) for rr in self.elements), default=0)

    def negatives(self) -> list[RealRoot]:
        return [rr for rr in self.elements if rr.height < 0]

    def positives(self) -> list[RealRoot]:
        return [rr for rr in self.elements if rr.height > 0]

    def is_symmetric_free(self) -> bool:
        vecs = self.vectors()
        return not any(vec_neg(v) in vecs for v in vecs)


def root_set(gcm: GCM, roots) -> RootSet:
    """Build a RootSet from RealRoots, deduplicating and sorting."""
    by_vec = {}
    for rr in roots:
        if rr.root in by_vec:
            assert by_vec[rr.root].coroot == rr.coroot, rr
        by_vec[rr.root] = rr
    ordered = sorted(by_vec.values(), key=lambda rr: root_sort_key(rr.root))
    return RootSet(gcm, tuple(ordered))


def _require_depth(max_sum_height: int, slice_: RootSlice) -> None:
    if slice_.height_bound < max_sum_height:
        raise SliceTooShallow(
            "pair sums reach height %d but the slice stops at %d"
            % (max_sum_height, slice_.height_bound)
        )


def closedness_witness(
    psi: RootSet, slice_: RootSlice
) -> tuple[RealRoot, RealRoot, Vec] | None:
    """None if psi is closed, else the first (alpha, beta, alpha+beta) with
    the sum a root outside psi.  Sums are tested against all roots, real
    and imaginary."""
    elems = psi.elements
    if len(elems) >= 2:
        _require_depth(
            max(
                abs(a.height + b.height)
                for a, b in combinations(elems, 2)
            ),
            slice_,
        )
    vecs = psi.vectors()
    for a, b in combinations(elems, 2):
        s = vec_add(a.root, b.root)
        if any(s) and s in slice_ and s not in vecs:
            return (a, b, s)
    return None


def is_closed(psi: RootSet, slice_: RootSlice) -> bool:
    return closedness_witness(psi, slice_) is None


def ideal_witness(
    sub: RootSet, psi: RootSet, slice_: RootSlice
) -> tuple[RealRoot, RealRoot, Vec] | None:
    """None if sub is an ideal in psi, else a violating (alpha, beta, sum)
    with alpha in psi, beta in sub."""
    if not sub.vectors() <= psi.vectors():
        raise NotASubset("ideal test needs sub <= psi")
    if len(psi) and len(sub):
        _require_depth(
            max(
                abs(a.height + b.height)
                for a in psi.elements
                for b in sub.elements
            ),
            slice_,
        )
    sub_vecs = sub.vectors()
    for a in psi.elements:
        for b in sub.elements:
            s = vec_add(a.root, b.root)
            if any(s) and s in slice_ and s not in sub_vecs:
                return (a, b, s)
    return None


def is_ideal(sub: RootSet, psi: RootSet, slice_: RootSlice) -> bool:
    return ideal_witness(sub, psi, slice_) is None


@dataclass(frozen=True)
class ClosureResult:
    status: str  # CLOSED | EXCEEDED_CAP | ESCAPED_REAL_ROOTS
    roots: RootSet  # partial when not closed
    witness: Vec | None  # the imaginary root reached, when escaped


class SliceCache:
    """Per-GCM cache of root slices, grown in stages as queries deepen."""

    def __init__(self, gcm: GCM):
        self.gcm = gcm
        self._by_height: dict[int, RootSlice] = {}

    def at_least(self, h: int) -> RootSlice:
        h = max(h, 1)
        usable = [s for s in self._by_height.values() if s.height_bound >= h]
        if usable:
            return min(usable, key=lambda s: s.height_bound)
        s = enumerate_root_slice(self.gcm, h)
        self._by_height[h] = s
        return s


def closure(psi: RootSet, cap: int, slices: SliceCache | None = None) -> ClosureResult:
    """Saturate psi under root sums, up to the height cap.

    Deterministic: pairs are scanned in (height, lex) order and new roots
    are inserted in that order, so the first offending sum decides the
    status.  A sum that is an imaginary root escapes; a sum taller than
    the cap exceeds it.
    """
    if psi.max_abs_height() > cap:
        raise PreconditionViolated("cap is below the tallest input root")
    if slices is None:
        slices = SliceCache(psi.gcm)
    current = {rr.root: rr for rr in psi.elements}
    # stage the slice: most closures stay far below the cap
    stage = min(cap, max(2 * psi.max_abs_height() + 2, 8))
    slice_ = slices.at_least(stage)
    while True:
        added = []
        offender = None
        ordered = sorted(current, key=root_sort_key)
        for a, b in combinations(ordered, 2):
            s = vec_add(a, b)
            if not any(s) or s in current:
                continue
            hs = abs(height(s))
            if hs > cap:
                offender = ("cap", s)
                break
            if hs > slice_.height_bound:
                slice_ = slices.at_least(cap)
            if s not in slice_:
                continue
            if not slice_.is_real(s):
                offender = ("imaginary", s)
                break
            added.append(slice_.real_root(s))
        partial = root_set(psi.gcm, current.values())
        if offender is not None:
            kind, s = offender
            if kind == "cap":
                return ClosureResult(EXCEEDED_CAP, partial, None)
            return ClosureResult(ESCAPED_REAL_ROOTS, partial, s)
        if not added:
            return ClosureResult(CLOSED, partial, None)
        for rr in added:
            current[rr.root] = rr


def pair_prenilpotent(alpha: RealRoot, beta: RealRoot, gcm: GCM) -> bool:
    """The two-root prenilpotency criterion.

    {alpha, alpha} is prenilpotent, {alpha, -alpha} never is; otherwise the
    pair fails exactly when both pairings are negative with product >= 4.
    """
    if alpha.root == beta.root:
        return True
    if alpha.root == vec_neg(beta.root):
        return False
    m = pairing(alpha.root, beta.coroot, gcm)
    n = pairing(beta.root, alpha.coroot, gcm)
    return not (m < 0 and n < 0 and m * n >= 4)


YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PrenilpotencyResult:
    status: str  # YES | NO | UNKNOWN
    closure: RootSet | None  # the nilpotent closure, when YES
    witness: Vec | None  # imaginary escape root or symmetric-pair root, when NO
    reason: str | None  # "imaginary" | "symmetric_pair" | "cap"


def set_prenilpotent(psi: RootSet, cap: int,
                     slices: SliceCache | None = None) -> PrenilpotencyResult:
    """Decide prenilpotency through the closure: a set is prenilpotent
    exactly when its closure stays real, finite and free of symmetric
    pairs.  Sound whenever decisive; the cap makes the third outcome
    explicit rather than silently truncating."""
    res = closure(psi, cap, slices)
    if res.status == ESCAPED_REAL_ROOTS:
        return PrenilpotencyResult(NO, None, res.witness, "imaginary")
    if res.status == EXCEEDED_CAP:
        return PrenilpotencyResult(UNKNOWN, None, None, "cap")
    vecs = res.roots.vectors()
    for v in sorted(vecs, key=root_sort_key):
        if vec_neg(v) in vecs:
            return PrenilpotencyResult(NO, None, v, "symmetric_pair")
    return PrenilpotencyResult(YES, res.roots, None, None)


@dataclass(frozen=True)
class NilpotencyCheck:
    ok: bool
    failed: str | None  # "closed" | "symmetric_pair"
    witness: tuple | None

    def __bool__(self) -> bool:
        return self.ok


def is_nilpotent(psi: RootSet, slice_: RootSlice) -> NilpotencyCheck:
    """Closed, finite (every RootSet is), and free of symmetric pairs."""
    w = closedness_witness(psi, slice_)
    if w is not None:
        return NilpotencyCheck(False, "closed", w)
    vecs = psi.vectors()
    for v in sorted(vecs, key=root_sort_key):
        if vec_neg(v) in vecs:
            return NilpotencyCheck(False, "symmetric_pair", (v, vec_neg(v)))
    return NilpotencyCheck(True, None, None)


# ---------------------------------------------------------------------------
# constructive chamber in the intersection of half-spaces


def upward_filter(phi: RootSet, psi: RootSet) -> RootSet:
    """{f in phi : f >= p for some p in psi} in the root-lattice order."""
    out = [
        f
        for f in phi.elements
        if any(leq(p.root, f.root) for p in psi.elements)
    ]
    return root_set(phi.gcm, out)


@dataclass(frozen=True)
class IntersectionResult:
    status: str  # "found" | "inconclusive"
    chamber: Chamber | None
    target: RootSet  # the upward filter whose half-spaces were intersected
    cap_hit: str | None


def chamber_in_intersection(phi: RootSet, psi: RootSet, radius: int,
                            slice_: RootSlice,
                            ball: list[Chamber] | None = None,
                            max_rounds: int | None = None) -> IntersectionResult:
    """Find a chamber inside every H(f) for f in the upward filter of psi.

    Implements the constructive induction: while the transformed target
    still has negative members, look for a chamber C inside every
    half-space of a positive current-phi root and inside at least one
    half-space of a negative one, then translate everything by C^{-1}.
    Each translation keeps the positives positive and makes the chosen
    negative positive, so the number of negative members of phi strictly
    drops; the base case returns the fundamental chamber.  The returned
    chamber is independently re-checked against the original filter.
    """
    if not len(psi):
        raise PreconditionViolated("psi must be non-empty")
    if not psi.vectors() <= phi.vectors():
        raise NotASubset("psi must be a subset of phi")
    if not phi.is_symmetric_free():
        raise PreconditionViolated("phi contains a symmetric pair")
    w = closedness_witness(phi, slice_)
    if w is not None:
        raise PreconditionViolated("phi is not closed: %r" % (w,))
    gcm = phi.gcm
    if ball is None:
        ball = weyl_ball(gcm, radius)
    target0 = upward_filter(phi, psi)
    cur_phi = list(phi.elements)
    cur_target = list(target0.elements)
    w_total = identity(gcm)
    rounds = 0
    limit = max_rounds if max_rounds is not None else len(phi) + 4
    while rounds <= limit:
        if all(rr.height > 0 for rr in cur_target):
            chamber = inverse(w_total)
            for f in target0.elements:
                assert in_halfspace(chamber, f.root), (
                    "certificate failed for %r" % (f,)
                )
            return IntersectionResult("found", chamber, target0, None)
        rounds += 1
        pos = [rr.root for rr in cur_phi if rr.height > 0]
        neg = [rr.root for rr in cur_phi if rr.height < 0]
        found = None
        for x in ball:
            if all(in_halfspace(x, v) for v in pos) and any(
                in_halfspace(x, v) for v in neg
            ):
                found = x
                break
        if found is None:
            return IntersectionResult("inconclusive", None, target0, "radius")
        step = inverse(found)
        before = sum(1 for rr in cur_phi if rr.height < 0)
        cur_phi = [act_real(step, rr) for rr in cur_phi]
        cur_target = [act_real(step, rr) for rr in cur_target]
        after = sum(1 for rr in cur_phi if rr.height < 0)
        assert after < before, "translation made no progress"
        w_total = multiply(step, w_total)
    return IntersectionResult("inconclusive", None, target0, "rounds")


# ---------------------------------------------------------------------------
# filtrations and nilpotency class


@dataclass(frozen=True)
class FiltrationLevel:
    max_height: int
    roots: RootSet
    nilpotent: NilpotencyCheck


def pronilpotent_filtration(phi: RootSet, n_max: int,
                            slices: SliceCache | None = None
                            ) -> list[FiltrationLevel]:
    """The ascending chain of closures of the height truncations of phi.

    Every level is verified nilpotent and contained in the next; within
    height n_max the union of the levels recovers phi when phi is closed.
    An escaping closure would contradict the finiteness of closures inside
    a closed symmetric-free set and is escalated.
    """
    if slices is None:
        slices = SliceCache(phi.gcm)
    slice_ = slices.at_least(max(2 * max(phi.max_abs_height(), n_max) + 2, 8))
    if not phi.is_symmetric_free():
        raise PreconditionViolated("phi contains a symmetric pair")
    w = closedness_witness(phi, slice_)
    if w is not None:
        raise PreconditionViolated("phi is not closed: %r" % (w,))
    levels: list[FiltrationLevel] = []
    prev_vecs: frozenset[Vec] = frozenset()
    cap = max(4 * (phi.max_abs_height() + 1), 2 * n_max)
    for n in range(1, n_max + 1):
        truncated = root_set(
            phi.gcm, [rr for rr in phi.elements if abs(rr.height) <= n]
        )
        res = closure(truncated, cap, slices)
        if res.status != CLOSED:
            raise ClosureEscaped(
                "closure of a truncation of a closed symmetric-free set "
                "did not saturate: %s" % res.status
            )
        check = is_nilpotent(res.roots, slices.at_least(
            2 * res.roots.max_abs_height() + 2))
        level = FiltrationLevel(n, res.roots, check)
        assert check.ok, "filtration level %d is not nilpotent: %r" % (n, check)
        assert prev_vecs <= res.roots.vectors(), "filtration chain not ascending"
        assert res.roots.vectors() <= phi.vectors(), (
            "closure left phi although phi is closed"
        )
        prev_vecs = res.roots.vectors()
        levels.append(level)
    union_within = {
        v for lv in levels for v in lv.roots.vectors() if abs(height(v)) <= n_max
    }
    expected = {v for v in phi.vectors() if abs(height(v)) <= n_max}
    assert union_within == expected, "filtration union mismatch"
    return levels


def nilpotency_class(psi: RootSet, slice_: RootSlice, radius: int = 8) -> int:
    """Longest k with beta_1..beta_k in psi whose partial sums stay in psi.

    The prenilpotency certificate w (sending psi into the positives) makes
    the one-step sum relation strictly height-increasing, so the longest
    chain is a longest path in a finite DAG.
    """
    check = is_nilpotent(psi, slice_)
    if not check.ok:
        raise NotNilpotent("nilpotency class needs a nilpotent set: %r" % (check,))
    if not len(psi):
        return 0
    res = chamber_in_intersection(psi, psi, radius, slice_)
    if res.status != "found":
        raise NotNilpotent("no prenilpotency certificate within radius %d" % radius)
    w = inverse(res.chamber)
    pos_height = {rr.root: height(act_real(w, rr).root) for rr in psi.elements}
    assert all(h > 0 for h in pos_height.values())
    order = sorted(psi.elements, key=lambda rr: (pos_height[rr.root], rr.root))
    vecs = psi.vectors()
    longest: dict[Vec, int] = {}
    for rr in order:
        best = 1
        for step in psi.elements:
            prev = tuple(a - b for a, b in zip(rr.root, step.root))
            if prev in vecs and prev in longest:
                best = max(best, longest[prev] + 1)
        longest[rr.root] = best
    return max(longest.values())
