"""Root enumeration up to a height bound.

Two independent constructions are kept side by side: the Weyl-orbit
breadth-first search, which produces the real roots together with their
coroots, and the height-inductive string construction, which produces the
full root system (real and imaginary) and is the membership oracle used by
all closedness tests.  Agreement of the two on real roots is asserted at
slice construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch, PreconditionViolated
from .gcm import (
    GCM,
    Vec,
    pairing,
    pairing_of_simple_root,
    pairing_with_simple_coroot,
)


def height(alpha: Vec) -> int:
    """Sum of the coefficients over the simple roots."""
    return sum(alpha)


def is_positive(alpha: Vec) -> bool:
    """Positivity of a root: positive height.  Only meaningful for roots."""
    return height(alpha) > 0


def leq(alpha: Vec, beta: Vec) -> bool:
    """alpha <= beta in the root-lattice order: beta - alpha has no negative
    coefficient."""
    if len(alpha) != len(beta):
        raise DimensionMismatch("leq needs vectors of equal length")
    return all(b >= a for a, b in zip(alpha, beta))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def root_sort_key(v: Vec) -> tuple:
    return (height(v), v)


def simple_root(gcm: GCM, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(gcm.rank))


def simple_coroot(gcm: GCM, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(gcm.rank))


def reflect_root_by_simple(gcm: GCM, i: int, v: Vec) -> Vec:
    """r_i on the root lattice: v - <v, alpha_i_coroot> alpha_i."""
    c = pairing_with_simple_coroot(v, i, gcm)
    if not c:
        return v
    return tuple(x - c if j == i else x for j, x in enumerate(v))


def reflect_coroot_by_simple(gcm: GCM, i: int, h: Vec) -> Vec:
    """r_i on the coroot lattice: h - <alpha_i, h> alpha_i_coroot."""
    c = pairing_of_simple_root(i, h, gcm)
    if not c:
        return h
    return tuple(x - c if j == i else x for j, x in enumerate(h))


@dataclass(frozen=True, order=True)
class RealRoot:
    """A real root together with the coroot carried along its Weyl orbit."""

    root: Vec
    coroot: Vec

    def negate(self) -> "RealRoot":
        return RealRoot(vec_neg(self.root), vec_neg(self.coroot))

    @property
    def height(self) -> int:
        return height(self.root)


def reflect(alpha: RealRoot, beta: Vec, gcm: GCM) -> Vec:
    """r_alpha(beta) = beta - <beta, alpha_coroot> alpha.  Involutive."""
    c = pairing(beta, alpha.coroot, gcm)
    if not c:
        return beta
    return tuple(b - c * a for b, a in zip(beta, alpha.root))


def reflect_real(alpha: RealRoot, beta: RealRoot, gcm: GCM) -> RealRoot:
    """r_alpha applied to a real root, tracking root and coroot together."""
    c = pairing(beta.root, alpha.coroot, gcm)
    root = tuple(b - c * a for b, a in zip(beta.root, alpha.root))
    d = pairing(alpha.root, beta.coroot, gcm)
    coroot = tuple(b - d * a for b, a in zip(beta.coroot, alpha.coroot))
    return RealRoot(root, coroot)


def enumerate_real_roots(gcm: GCM, max_height: int) -> list[RealRoot]:
    """All real roots of |height| <= max_height, with coroots.

    Breadth-first orbit of the simple (root, coroot) pairs under the simple
    reflections, never expanding through heights beyond the bound: every
    positive real root of height >= 2 admits a height-decreasing simple
    reflection, so nothing is missed.  When two reflection paths meet, the
    tracked coroots are asserted to coincide.
    """
    if max_height < 1:
        raise PreconditionViolated("height bound must be >= 1")
    n = gcm.rank
    found: dict[Vec, Vec] = {}
    frontier: list[RealRoot] = []
    for i in range(n):
        for sign in (1, -1):
            rr = RealRoot(
                tuple(sign if j == i else 0 for j in range(n)),
                tuple(sign if j == i else 0 for j in range(n)),
            )
            found[rr.root] = rr.coroot
            frontier.append(rr)
    while frontier:
        nxt: list[RealRoot] = []
        for rr in frontier:
            for i in range(n):
                root = reflect_root_by_simple(gcm, i, rr.root)
                if abs(height(root)) > max_height:
                    continue
                coroot = reflect_coroot_by_simple(gcm, i, rr.coroot)
                if root in found:
                    # coroot well-definedness along different orbit paths
                    assert found[root] == coroot, (root, found[root], coroot)
                    continue
                found[root] = coroot
                nxt.append(RealRoot(root, coroot))
        frontier = nxt
    out = [RealRoot(r, c) for r, c in found.items()]
    out.sort(key=lambda rr: root_sort_key(rr.root))
    for rr in out:
        assert pairing(rr.root, rr.coroot, gcm) == 2, rr
    return out


def _positive_roots_by_strings(gcm: GCM, max_height: int) -> list[Vec]:
    """Positive roots of height <= max_height by the inductive string test.

    A candidate beta = alpha + alpha_i (with alpha a known positive root) is
    a root iff q > 0, where p is the largest m with alpha - m*alpha_i a
    root and q = p - <alpha, alpha_i_coroot>.  Scanning p among positive
    roots of lower height is exact: a root string never changes sign except
    through 0, which only happens on the line through a simple root.
    """
    n = gcm.rank
    members: set[Vec] = set()
    by_height: list[list[Vec]] = [[] for _ in range(max_height + 1)]
    for i in range(n):
        v = tuple(1 if j == i else 0 for j in range(n))
        members.add(v)
        by_height[1].append(v)
    for k in range(1, max_height):
        for alpha in by_height[k]:
            for i in range(n):
                beta = tuple(x + 1 if j == i else x for j, x in enumerate(alpha))
                if beta in members:
                    continue
                p = 0
                probe = tuple(
                    x - 1 if j == i else x for j, x in enumerate(alpha)
                )
                while probe in members:
                    p += 1
                    probe = tuple(
                        x - 1 if j == i else x for j, x in enumerate(probe)
                    )
                q = p - pairing_with_simple_coroot(alpha, i, gcm)
                if q > 0:
                    members.add(beta)
                    by_height[k + 1].append(beta)
    out = []
    for k in range(1, max_height + 1):
        out.extend(sorted(by_height[k]))
    return out


@dataclass(frozen=True, eq=False)
class RootSlice:
    """All roots of |height| <= height_bound, with real flags and coroots.

    Closed under negation; the membership oracle for the full root system
    (imaginary roots included) that every closedness test quantifies over.
    """

    gcm: GCM
    height_bound: int
    real_flags: dict[Vec, bool]
    coroots: dict[Vec, Vec]
    sorted_roots: tuple[Vec, ...] = field(default=())

    def __contains__(self, v: Vec) -> bool:
        return v in self.real_flags

    def is_real(self, v: Vec) -> bool:
        return self.real_flags.get(v, False)

    def coroot(self, v: Vec) -> Vec:
        return self.coroots[v]

    def real_root(self, v: Vec) -> RealRoot:
        return RealRoot(v, self.coroots[v])

    def roots(self) -> tuple[Vec, ...]:
        return self.sorted_roots

    def real_roots(self) -> list[RealRoot]:
        return [self.real_root(v) for v in self.sorted_roots if self.real_flags[v]]

    def positive_real_roots(self) -> list[RealRoot]:
        return [
            self.real_root(v)
            for v in self.sorted_roots
            if height(v) > 0 and self.real_flags[v]
        ]

    def imaginary_roots(self) -> list[Vec]:
        return [v for v in self.sorted_roots if not self.real_flags[v]]


def _assert_slice_invariants(s: RootSlice) -> None:
    gcm, h = s.gcm, s.height_bound
    n = gcm.rank
    zero = (0,) * n
    for v, real in s.real_flags.items():
        assert v in s.real_flags and vec_neg(v) in s.real_flags
        assert s.real_flags[vec_neg(v)] == real
        if real:
            assert pairing(v, s.coroots[v], gcm) == 2, v
            if abs(height(v)) <= h - 1:
                for i in range(n):
                    img = reflect_root_by_simple(gcm, i, v)
                    if abs(height(img)) <= h:
                        assert img in s.real_flags and s.real_flags[img], (v, i)
        # the alpha_i-string through v, restricted to the height window,
        # is an unbroken interval (0 counts as present on the +/-alpha_i line)
        ht_v = height(v)
        for i in range(n):

            def present(k: int) -> bool:
                u = tuple(x + k if j == i else x for j, x in enumerate(v))
                return u in s.real_flags or u == zero

            def in_window(k: int) -> bool:
                return abs(ht_v + k) <= h

            k = 1
            while in_window(k) and present(k):
                k += 1
            while in_window(k):
                assert not present(k), (v, i, k)
                k += 1
            k = -1
            while in_window(k) and present(k):
                k -= 1
            while in_window(k):
                assert not present(k), (v, i, k)
                k -= 1


def enumerate_root_slice(gcm: GCM, max_height: int, check: bool = True) -> RootSlice:
    """The full root system up to |height| <= max_height.

    Real flags come from the independent Weyl-orbit enumeration; the orbit
    roots are asserted to be a subset of the string-enumerated roots.
    """
    if max_height < 1:
        raise PreconditionViolated("height bound must be >= 1")
    positives = _positive_roots_by_strings(gcm, max_height)
    real = enumerate_real_roots(gcm, max_height)
    real_pos = {rr.root: rr.coroot for rr in real if rr.height > 0}
    pos_set = set(positives)
    for v in real_pos:
        assert v in pos_set, "orbit root missing from string enumeration: %r" % (v,)
    flags: dict[Vec, bool] = {}
    coroots: dict[Vec, Vec] = {}
    for v in positives:
        r = v in real_pos
        flags[v] = r
        flags[vec_neg(v)] = r
        if r:
            coroots[v] = real_pos[v]
            coroots[vec_neg(v)] = vec_neg(real_pos[v])
    ordered = sorted(flags, key=root_sort_key)
    s = RootSlice(
        gcm=gcm,
        height_bound=max_height,
        real_flags=flags,
        coroots=coroots,
        sorted_roots=tuple(ordered),
    )
    if check:
        _assert_slice_invariants(s)
    return s
