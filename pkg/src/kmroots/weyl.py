"""Weyl group elements as integer matrices with reduced-word certificates.

Elements are canonicalised by their root-lattice matrix; the stored word is
always the lexicographically least reduced word, recovered from the matrix
by greedily stripping the smallest left descent.  Balls are enumerated
breadth-first and are closed under taking word prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionMismatch, SliceTooShallow
from .gcm import GCM, Matrix, Vec
from .roots import RealRoot, RootSlice, height, vec_neg


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matvec(a: Matrix, v: Vec) -> Vec:
    if len(v) != len(a[0]):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


@lru_cache(maxsize=None)
def simple_reflection_matrices(gcm: GCM) -> tuple[tuple[Matrix, Matrix], ...]:
    """(root action, coroot action) matrices of each simple reflection."""
    n = gcm.rank
    a = gcm.entries
    out = []
    for i in range(n):
        root = tuple(
            tuple((1 if r == c else 0) - (a[i][c] if r == i else 0) for c in range(n))
            for r in range(n)
        )
        coroot = tuple(
            tuple((1 if r == c else 0) - (a[c][i] if r == i else 0) for c in range(n))
            for r in range(n)
        )
        out.append((root, coroot))
    return tuple(out)


def _first_negative_column(m: Matrix) -> int | None:
    """Smallest i whose column is a negative root image, else None."""
    n = len(m)
    for i in range(n):
        neg = False
        pos = False
        for r in range(n):
            x = m[r][i]
            if x > 0:
                pos = True
                break
            if x < 0:
                neg = True
        if neg and not pos:
            return i
    return None


def canonical_word_from_inverse(gcm: GCM, inv: Matrix) -> tuple[int, ...]:
    """Lex-least reduced word of w, from the matrix of w^{-1}.

    Column i of inv is w^{-1}(alpha_i); i is a left descent of w exactly
    when that column is negative.  Stripping the smallest descent first
    yields the lex-least reduced word letter by letter.
    """
    mats = simple_reflection_matrices(gcm)
    word = []
    u = inv
    while True:
        i = _first_negative_column(u)
        if i is None:
            assert u == identity_matrix(gcm.rank), "matrix is not a Weyl element"
            return tuple(word)
        word.append(i)
        u = matmul(u, mats[i][0])


@dataclass(frozen=True)
class WeylElt:
    """A Weyl group element: canonical reduced word plus lattice actions."""

    gcm: GCM
    word: tuple[int, ...]
    m_root: Matrix
    m_root_inv: Matrix
    m_coroot: Matrix
    m_coroot_inv: Matrix

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        return "e" if not self.word else "*".join("r%d" % (i + 1) for i in self.word)


def identity(gcm: GCM) -> WeylElt:
    e = identity_matrix(gcm.rank)
    return WeylElt(gcm, (), e, e, e, e)


def _from_matrices(gcm: GCM, m_root, m_root_inv, m_coroot, m_coroot_inv) -> WeylElt:
    word = canonical_word_from_inverse(gcm, m_root_inv)
    return WeylElt(gcm, word, m_root, m_root_inv, m_coroot, m_coroot_inv)


def simple_reflection(gcm: GCM, i: int) -> WeylElt:
    root, coroot = simple_reflection_matrices(gcm)[i]
    return WeylElt(gcm, (i,), root, root, coroot, coroot)


def multiply(u: WeylElt, v: WeylElt) -> WeylElt:
    return _from_matrices(
        u.gcm,
        matmul(u.m_root, v.m_root),
        matmul(v.m_root_inv, u.m_root_inv),
        matmul(u.m_coroot, v.m_coroot),
        matmul(v.m_coroot_inv, u.m_coroot_inv),
    )


def inverse(w: WeylElt) -> WeylElt:
    return _from_matrices(w.gcm, w.m_root_inv, w.m_root, w.m_coroot_inv, w.m_coroot)


def element_from_word(gcm: GCM, word) -> WeylElt:
    """Product of simple reflections; the stored word is re-canonicalised."""
    mats = simple_reflection_matrices(gcm)
    n = gcm.rank
    m = mi = c = ci = identity_matrix(n)
    for i in word:
        m = matmul(m, mats[i][0])
        mi = matmul(mats[i][0], mi)
        c = matmul(c, mats[i][1])
        ci = matmul(mats[i][1], ci)
    return _from_matrices(gcm, m, mi, c, ci)


def act(w: WeylElt, alpha: Vec) -> Vec:
    """Action on the root lattice; roots map to roots."""
    return matvec(w.m_root, alpha)


def act_coroot(w: WeylElt, h: Vec) -> Vec:
    return matvec(w.m_coroot, h)


def act_real(w: WeylElt, rr: RealRoot) -> RealRoot:
    return RealRoot(matvec(w.m_root, rr.root), matvec(w.m_coroot, rr.coroot))


def weyl_ball(gcm: GCM, radius: int) -> list[WeylElt]:
    """All elements of length <= radius, sorted by (length, word).

    Layer k holds exactly the elements of length k; elements are
    deduplicated by their root-action matrix, and the first word that
    reaches a matrix in the breadth-first, letter-ascending scan is its
    lex-least reduced word.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    mats = simple_reflection_matrices(gcm)
    n = gcm.rank
    e = identity(gcm)
    seen = {e.m_root}
    out = [e]
    layer = [e]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for s in range(n):
                m_root = matmul(w.m_root, mats[s][0])
                if m_root in seen:
                    continue
                seen.add(m_root)
                elt = WeylElt(
                    gcm,
                    w.word + (s,),
                    m_root,
                    matmul(mats[s][0], w.m_root_inv),
                    matmul(w.m_coroot, mats[s][1]),
                    matmul(mats[s][1], w.m_coroot_inv),
                )
                nxt.append(elt)
        if not nxt:
            break
        out.extend(nxt)
        layer = nxt
    return out


class BallGenerator:
    """Lazily grown breadth-first ball, shared across many queries.

    Layers are cached; iteration yields chambers in (length, word) order
    and only computes the layers a consumer actually reaches.
    """

    def __init__(self, gcm: GCM):
        self.gcm = gcm
        e = identity(gcm)
        self._layers: list[list[WeylElt]] = [[e]]
        self._seen = {e.m_root}
        self._exhausted = False

    def _extend(self) -> bool:
        if self._exhausted:
            return False
        mats = simple_reflection_matrices(self.gcm)
        nxt = []
        for w in self._layers[-1]:
            for s in range(self.gcm.rank):
                m_root = matmul(w.m_root, mats[s][0])
                if m_root in self._seen:
                    continue
                self._seen.add(m_root)
                nxt.append(
                    WeylElt(
                        self.gcm,
                        w.word + (s,),
                        m_root,
                        matmul(mats[s][0], w.m_root_inv),
                        matmul(w.m_coroot, mats[s][1]),
                        matmul(mats[s][1], w.m_coroot_inv),
                    )
                )
        if not nxt:
            self._exhausted = True
            return False
        self._layers.append(nxt)
        return True

    def chambers(self, radius: int):
        """Yield all elements of length <= radius, lazily."""
        k = 0
        while k <= radius:
            if k >= len(self._layers) and not self._extend():
                return
            if k >= len(self._layers):
                return
            yield from self._layers[k]
            k += 1


def full_weyl_group(gcm: GCM, max_size: int = 100_000) -> list[WeylElt]:
    """The whole group of a finite-type GCM (errors out if growth exceeds
    max_size before the ball closes)."""
    radius = 1
    while True:
        ball = weyl_ball(gcm, radius)
        if len(ball) > max_size:
            raise ValueError("Weyl group is larger than %d" % max_size)
        if max(w.length for w in ball) < radius:
            return ball
        radius += 1


def inversion_set(w: WeylElt, slice_: RootSlice) -> list[Vec]:
    """{alpha > 0 real : w^{-1} alpha < 0}; size equals the word length."""
    out = []
    for rr in slice_.positive_real_roots():
        if height(matvec(w.m_root_inv, rr.root)) < 0:
            out.append(rr.root)
    if len(out) < w.length:
        raise SliceTooShallow(
            "found %d inversions for a length-%d element; slice of height %d "
            "is too shallow" % (len(out), w.length, slice_.height_bound)
        )
    assert len(out) == w.length, "word is not reduced"
    return out


def reflection_of(gcm: GCM, rr: RealRoot) -> WeylElt:
    """The reflection r_alpha as a Weyl element."""
    n = gcm.rank
    a = gcm.entries
    # column j of the root action is alpha_j - <alpha_j, coroot> root
    cols_root = []
    cols_coroot = []
    for j in range(n):
        c = sum(a[i][j] * rr.coroot[i] for i in range(n))
        cols_root.append(tuple((1 if k == j else 0) - c * rr.root[k] for k in range(n)))
        d = sum(a[j][i] * rr.root[i] for i in range(n))
        cols_coroot.append(
            tuple((1 if k == j else 0) - d * rr.coroot[k] for k in range(n))
        )
    m_root = tuple(zip(*cols_root))
    m_coroot = tuple(zip(*cols_coroot))
    return _from_matrices(gcm, m_root, m_root, m_coroot, m_coroot)
