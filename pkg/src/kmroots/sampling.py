"""Seeded random instances: GCMs, real-root pairs, closed root sets.

All samplers consume the SplitMix64 stream in a fixed order, so a seed
pins down the whole campaign.  Closed sets are sampled by translating a
few positive real roots through a random Weyl element and saturating; only
saturated results are kept.
"""

from __future__ import annotations

from .closed import CLOSED, RootSet, SliceCache, closure, root_set
from .gcm import GCM, validate_gcm
from .rng import SplitMix64
from .roots import RealRoot, RootSlice
from .weyl import WeylElt, act_real, weyl_ball


def random_gcm(rng: SplitMix64, rank: int, min_entry: int = -4) -> GCM:
    """A random GCM with off-diagonal entries in [min_entry, 0], zeros
    placed symmetrically."""
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            if rng.chance(1, 3):
                continue  # symmetric zero pair
            m[i][j] = -rng.randint(1, -min_entry)
            m[j][i] = -rng.randint(1, -min_entry)
    return validate_gcm(m)


def random_real_pair(rng: SplitMix64, slice_: RootSlice
                     ) -> tuple[RealRoot, RealRoot]:
    """Two distinct, non-opposite real roots from a slice."""
    reals = slice_.real_roots()
    while True:
        a = rng.choice(reals)
        b = rng.choice(reals)
        if a.root != b.root and any(x + y for x, y in zip(a.root, b.root)):
            return a, b


def random_closed_asymmetric(rng: SplitMix64, gcm: GCM, slices: SliceCache,
                             ball: list[WeylElt], seed_height: int = 4,
                             seed_size: int = 3, cap: int = 40,
                             attempts: int = 40) -> RootSet | None:
    """A closed set free of symmetric pairs: the closure of a few positive
    real roots pushed through a random Weyl element.  The image of the
    positive system is closed and sign-coherent, so saturated results are
    automatically free of symmetric pairs."""
    slice_ = slices.at_least(seed_height)
    pos = [rr for rr in slice_.positive_real_roots() if rr.height <= seed_height]
    for _ in range(attempts):
        w = rng.choice(ball)
        k = rng.randint(1, seed_size)
        seed = [act_real(w, rr) for rr in rng.sample(pos, min(k, len(pos)))]
        res = closure(root_set(gcm, seed), cap, slices)
        if res.status == CLOSED:
            assert res.roots.is_symmetric_free()
            return res.roots
    return None


def random_closed_mixed(rng: SplitMix64, gcm: GCM, slices: SliceCache,
                        ball: list[WeylElt], seed_height: int = 3,
                        cap: int = 40, attempts: int = 40) -> RootSet | None:
    """A closed set with a symmetric part: closure of one or two full
    +/- pairs plus optionally a few one-sided roots."""
    slice_ = slices.at_least(seed_height)
    pos = [rr for rr in slice_.positive_real_roots() if rr.height <= seed_height]
    for _ in range(attempts):
        w = rng.choice(ball)
        seed: list[RealRoot] = []
        for _ in range(rng.randint(1, 2)):
            rr = act_real(w, rng.choice(pos))
            seed.append(rr)
            seed.append(rr.negate())
        for _ in range(rng.randint(0, 2)):
            seed.append(act_real(w, rng.choice(pos)))
        res = closure(root_set(gcm, seed), cap, slices)
        if res.status == CLOSED:
            return res.roots
    return None


def gcm_pool(rng: SplitMix64, count: int, ranks=(2, 3, 4)) -> list[GCM]:
    """count random GCMs cycling through the requested ranks."""
    out = []
    for i in range(count):
        out.append(random_gcm(rng, ranks[i % len(ranks)]))
    return out
