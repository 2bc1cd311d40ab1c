"""Verification campaigns: seeded instance generation, suite runners,
canonical machine-readable reports.

Each suite checks one family of statements on randomly generated (or, for
small finite complexes, exhaustively enumerated) instances.  A case ends
pass, fail, or inconclusive; failures carry witnesses and would falsify
the implementation.  Reports are canonical JSON: identical configurations
produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chambers import (
    GalleryApproachInstance,
    check_gallery_approach,
    exhaustive_approach_instances,
    geometric_pair_prenilpotent,
    in_halfspace,
    instance_walls,
    nearest_in_halfspace,
    nestedness,
    pair_relation,
    FINITE_DIHEDRAL,
)
from .closed import (
    CLOSED,
    ESCAPED_REAL_ROOTS,
    EXCEEDED_CAP,
    NO,
    UNKNOWN,
    YES,
    RootSet,
    SliceCache,
    chamber_in_intersection,
    closure,
    is_nilpotent,
    pair_prenilpotent,
    pronilpotent_filtration,
    root_set,
    set_prenilpotent,
    upward_filter,
)
from .errors import InstancePreconditionViolated
from .gcm import GCM, validate_gcm
from .io import root_set_to_list
from .levi import cartan_type, verify_levi
from .rng import GENERATOR_NAME, SplitMix64
from .roots import RealRoot, vec_neg
from .sampling import (
    gcm_pool,
    random_closed_asymmetric,
    random_closed_mixed,
    random_real_pair,
)
from .weyl import BallGenerator, full_weyl_group, weyl_ball

SUITES = (
    "dictionary",
    "lemma12",
    "intersection",
    "nilpotency",
    "closure-finite",
    "filtration",
    "levi",
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

# fixed complexes for the gallery-approach suite
ZOO_FINITE = {
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A1xA1": [[2, 0], [0, 2]],
}
ZOO_AFFINE_A1 = [[2, -2], [-2, 2]]
ZOO_RANK3 = [[2, -2, -1], [-2, 2, -1], [-1, -1, 2]]


@dataclass(frozen=True)
class CampaignConfig:
    suite: str
    seed: int = 0
    cases: int = 100
    radius: int = 8
    cap: int = 40
    gcm: GCM | None = None  # fixed GCM instead of the sampled pool

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "radius": self.radius,
            "cap": self.cap,
            "gcm": [list(r) for r in self.gcm.entries] if self.gcm else None,
        }


class GcmContext:
    """Per-GCM caches shared across the cases of one campaign."""

    def __init__(self, gcm: GCM):
        self.gcm = gcm
        self.slices = SliceCache(gcm)
        self.lazy_ball = BallGenerator(gcm)
        self._balls: dict[int, list] = {}

    def ball(self, radius: int) -> list:
        if radius not in self._balls:
            self._balls[radius] = weyl_ball(self.gcm, radius)
        return self._balls[radius]


def _real_root_case(rr: RealRoot) -> list[int]:
    return list(rr.root)


def _verdict(v: bool | None) -> str | None:
    if v is None:
        return None
    return "prenilpotent" if v else "not_prenilpotent"


_RANK2_COUNT = {"A1xA1": 4, "A2": 6, "B2": 8, "G2": 12}


def _dictionary_case(ctx: GcmContext, a: RealRoot, b: RealRoot,
                     config: CampaignConfig) -> dict:
    """Compare the three prenilpotency deciders on one pair and, when the
    pair is finite dihedral, classify the rank-2 system it generates."""
    gcm = ctx.gcm
    record: dict = {"alpha": _real_root_case(a), "beta": _real_root_case(b)}
    v_mn = pair_prenilpotent(a, b, gcm)
    res_closure = set_prenilpotent(root_set(gcm, [a, b]), config.cap, ctx.slices)
    v_closure = {YES: True, NO: False, UNKNOWN: None}[res_closure.status]
    v_geom = geometric_pair_prenilpotent(
        a, b, gcm, ctx.lazy_ball.chambers(config.radius)
    )
    record["mn"] = _verdict(v_mn)
    record["closure"] = _verdict(v_closure)
    record["geometric"] = _verdict(v_geom)

    # nested-pair orientation must match the pairing criterion exactly,
    # and its ball scan must not contradict the claimed containments
    nest = nestedness(a, b.negate(), gcm, ball=ctx.ball(min(4, config.radius)))
    v_nest = nest.relation == "not_nested"
    record["nested_pair_route"] = _verdict(v_nest)
    if v_nest != v_mn:
        record["disagreement"] = "nestedness vs pairing"
        return {**record, "outcome": FAIL}

    decisive = [v for v in (v_mn, v_closure, v_geom) if v is not None]
    if any(v != decisive[0] for v in decisive):
        record["disagreement"] = "deciders"
        return {**record, "outcome": FAIL}

    rel = pair_relation(a, b, gcm)
    if rel.kind == FINITE_DIHEDRAL:
        # the mn value fixes the order of r_a r_b; the closure of the four
        # roots is one of the rank-2 finite systems (possibly larger than
        # the reflection span of the pair) with the matching root count
        order = dihedral_product_order(a, b, gcm)
        record["product_order"] = order
        if order != {0: 2, 1: 3, 2: 4, 3: 6}[rel.m * rel.n]:
            record["disagreement"] = "product order vs mn"
            return {**record, "outcome": FAIL}
        full = root_set(gcm, [a, a.negate(), b, b.negate()])
        res = closure(full, config.cap, ctx.slices)
        record["dihedral_label"] = rel.finite_type
        if res.status != CLOSED:
            record["rank2_error"] = "closure did not saturate: %s" % res.status
            return {**record, "outcome": FAIL}
        got = cartan_type(res.roots, ctx.slices.at_least(2), assume_closed=True)
        record["rank2_type"] = got.name
        record["rank2_size"] = len(res.roots)
        if got.name not in _RANK2_COUNT or len(res.roots) != _RANK2_COUNT[got.name]:
            return {**record, "outcome": FAIL}

    if v_closure is None or v_geom is None:
        return {**record, "outcome": INCONCLUSIVE}
    return {**record, "outcome": PASS}


def run_dictionary(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(20, (config.cases + 49) // 50))
    cases = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        slice8 = ctx.slices.at_least(8)
        for _ in range(per_gcm):
            if len(cases) == config.cases:
                break
            a, b = random_real_pair(rng, slice8)
            try:
                rec = _dictionary_case(ctx, a, b, config)
            except AssertionError as exc:
                rec = {
                    "alpha": _real_root_case(a),
                    "beta": _real_root_case(b),
                    "outcome": FAIL,
                    "error": "consistency assertion: %s" % exc,
                }
            rec["gcm_index"] = gi
            cases.append(rec)
    return cases, pool


def _approach_case(inst: GalleryApproachInstance, gcm: GCM, gi: int,
                   verify_minimality: bool) -> dict:
    rec = {
        "gcm_index": gi,
        "x": list(inst.x.word),
        "alpha": _real_root_case(inst.alpha),
        "y": list(inst.y.word),
        "beta": _real_root_case(inst.beta),
    }
    out = check_gallery_approach(inst, gcm, verify_minimality=verify_minimality)
    rec["pairing"] = out.pairing_value
    rec["outcome"] = PASS if out.passed else FAIL
    if not out.passed:
        rec["failed_assertion"] = out.failed
    return rec


def run_lemma12(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    cases: list[dict] = []
    pool: list[GCM] = []
    if config.gcm is not None:
        pool = [config.gcm]
        ctx = GcmContext(config.gcm)
        cases.extend(
            _lemma12_sampled(ctx, rng, config, 0, config.cases)
        )
        return cases, pool
    for name, matrix in ZOO_FINITE.items():
        gcm = validate_gcm(matrix)
        pool.append(gcm)
        gi = len(pool) - 1
        ctx = GcmContext(gcm)
        chambers = full_weyl_group(gcm)
        slice_ = ctx.slices.at_least(8)
        for inst in exhaustive_approach_instances(gcm, chambers, slice_):
            rec = _approach_case(inst, gcm, gi, verify_minimality=True)
            rec["complex"] = name
            cases.append(rec)
    for matrix in (ZOO_AFFINE_A1, ZOO_RANK3):
        gcm = validate_gcm(matrix)
        pool.append(gcm)
        ctx = GcmContext(gcm)
        cases.extend(
            _lemma12_sampled(ctx, rng, config, len(pool) - 1, config.cases)
        )
    return cases, pool


def _lemma12_sampled(ctx: GcmContext, rng: SplitMix64, config: CampaignConfig,
                     gi: int, want: int) -> list[dict]:
    gcm = ctx.gcm
    ball = ctx.ball(config.radius)
    slice_ = ctx.slices.at_least(5)
    reals = slice_.real_roots()
    out: list[dict] = []
    attempts = 0
    while len(out) < want and attempts < 60 * want:
        attempts += 1
        x = rng.choice(ball)
        alpha = rng.choice(reals)
        if in_halfspace(x, alpha.root):
            continue
        hit = nearest_in_halfspace(x, alpha.root, depth_cap=24)
        if hit is None:
            continue
        _, y = hit
        for beta in instance_walls(x, alpha, y):
            if len(out) == want:
                break
            try:
                # y came from the exact breadth-first search, skip re-proof
                out.append(
                    _approach_case(
                        GalleryApproachInstance(x, alpha, y, beta),
                        gcm,
                        gi,
                        verify_minimality=False,
                    )
                )
            except InstancePreconditionViolated:
                continue
    return out


def run_intersection(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(10, (config.cases + 24) // 25), ranks=(2, 3))
    cases: list[dict] = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        ball = ctx.ball(min(config.radius, 6))
        search_ball = ctx.ball(config.radius)
        for _ in range(per_gcm):
            if len(cases) == config.cases:
                break
            phi = None
            for _ in range(30):
                cand = random_closed_asymmetric(
                    rng, gcm, ctx.slices, ball, seed_height=3, cap=config.cap
                )
                if cand is not None and len(cand) and cand.max_abs_height() <= 6:
                    phi = cand
                    break
            if phi is None:
                cases.append({"gcm_index": gi, "outcome": INCONCLUSIVE,
                              "note": "no closed set sampled"})
                continue
            k = rng.randint(1, len(phi))
            psi = root_set(gcm, rng.sample(list(phi.elements), k))
            slice_ = ctx.slices.at_least(2 * phi.max_abs_height() + 2)
            rec: dict = {
                "gcm_index": gi,
                "phi": root_set_to_list(phi),
                "psi": root_set_to_list(psi),
            }
            try:
                res = chamber_in_intersection(
                    phi, psi, config.radius, slice_, ball=search_ball
                )
            except AssertionError as exc:
                rec["outcome"] = FAIL
                rec["error"] = str(exc)
                cases.append(rec)
                continue
            if res.status != "found":
                rec["outcome"] = INCONCLUSIVE
                rec["cap_hit"] = res.cap_hit
            else:
                target = upward_filter(phi, psi)
                ok = all(
                    in_halfspace(res.chamber, f.root) for f in target.elements
                )
                rec["chamber"] = list(res.chamber.word)
                rec["target_size"] = len(target)
                rec["outcome"] = PASS if ok else FAIL
            cases.append(rec)
    return cases, pool


def run_nilpotency(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(10, (config.cases + 39) // 40), ranks=(2, 3, 4))
    cases: list[dict] = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        ball = ctx.ball(min(config.radius, 5))
        search_ball = ctx.ball(config.radius)
        for local in range(per_gcm):
            if len(cases) == config.cases:
                break
            phi = random_closed_asymmetric(
                rng, gcm, ctx.slices, ball, seed_height=3, cap=config.cap
            )
            if phi is None or not len(phi) or phi.max_abs_height() > 8:
                cases.append({"gcm_index": gi, "outcome": INCONCLUSIVE,
                              "note": "no closed set sampled"})
                continue
            slice_ = ctx.slices.at_least(2 * phi.max_abs_height() + 2)
            rec: dict = {"gcm_index": gi, "set": root_set_to_list(phi)}
            if local % 2 == 0:
                rec["kind"] = "certificate"
                check = is_nilpotent(phi, slice_)
                if not check.ok:
                    rec["outcome"] = FAIL
                    rec["error"] = "sampled set not nilpotent: %r" % (check,)
                    cases.append(rec)
                    continue
                neg = root_set(gcm, [rr.negate() for rr in phi.elements])
                try:
                    r1 = chamber_in_intersection(
                        phi, phi, config.radius, slice_, ball=search_ball
                    )
                    r2 = chamber_in_intersection(
                        neg, neg, config.radius, slice_, ball=search_ball
                    )
                except AssertionError as exc:
                    rec["outcome"] = FAIL
                    rec["error"] = str(exc)
                    cases.append(rec)
                    continue
                if r1.status == "found" and r2.status == "found":
                    rec["outcome"] = PASS
                else:
                    rec["outcome"] = INCONCLUSIVE
            else:
                broken, expected = _violated_set(rng, gcm, ctx, phi, config.cap)
                if broken is None:
                    rec["outcome"] = INCONCLUSIVE
                    rec["note"] = "no violation constructed"
                    cases.append(rec)
                    continue
                rec["kind"] = "violation"
                rec["set"] = root_set_to_list(broken)
                rec["expected"] = expected
                deep = ctx.slices.at_least(2 * broken.max_abs_height() + 2)
                check = is_nilpotent(broken, deep)
                rec["reported"] = check.failed
                rec["outcome"] = (
                    PASS if (not check.ok and check.failed == expected) else FAIL
                )
            cases.append(rec)
    return cases, pool


def _violated_set(rng: SplitMix64, gcm: GCM, ctx: GcmContext, phi: RootSet,
                  cap: int) -> tuple[RootSet | None, str | None]:
    """A set violating exactly one nilpotency condition, with its label."""
    vecs = phi.vectors()
    if rng.chance(1, 2):
        removable = [
            rr
            for rr in phi.elements
            if any(
                tuple(x - y for x, y in zip(rr.root, other.root)) in vecs
                for other in phi.elements
                if other.root != rr.root
            )
        ]
        if removable:
            drop = rng.choice(removable)
            broken = root_set(
                gcm, [rr for rr in phi.elements if rr.root != drop.root]
            )
            return broken, "closed"
    gamma = rng.choice(list(phi.elements))
    res = closure(
        root_set(gcm, list(phi.elements) + [gamma.negate()]), cap, ctx.slices
    )
    if res.status == CLOSED and res.roots.max_abs_height() <= 10:
        return res.roots, "symmetric_pair"
    return None, None


def run_closure_finite(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(10, (config.cases + 49) // 50), ranks=(2, 3, 4))
    cases: list[dict] = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    cap = max(config.cap, 60)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        ball = ctx.ball(min(config.radius, 5))
        for _ in range(per_gcm):
            if len(cases) == config.cases:
                break
            phi = random_closed_asymmetric(
                rng, gcm, ctx.slices, ball, seed_height=3, cap=config.cap
            )
            if phi is None or not len(phi):
                cases.append({"gcm_index": gi, "outcome": INCONCLUSIVE,
                              "note": "no closed set sampled"})
                continue
            k = rng.randint(1, len(phi))
            psi = root_set(gcm, rng.sample(list(phi.elements), k))
            res = closure(psi, cap, ctx.slices)
            rec = {
                "gcm_index": gi,
                "phi": root_set_to_list(phi),
                "psi": root_set_to_list(psi),
                "status": res.status,
            }
            ok = res.status == CLOSED and res.roots.vectors() <= phi.vectors()
            rec["outcome"] = PASS if ok else FAIL
            if res.status == ESCAPED_REAL_ROOTS:
                rec["witness"] = list(res.witness)
            cases.append(rec)
    return cases, pool


def run_filtration(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(10, (config.cases + 49) // 50), ranks=(2, 3, 4))
    cases: list[dict] = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        ball = ctx.ball(min(config.radius, 5))
        for _ in range(per_gcm):
            if len(cases) == config.cases:
                break
            phi = random_closed_asymmetric(
                rng, gcm, ctx.slices, ball, seed_height=3, cap=config.cap
            )
            if phi is None or phi.max_abs_height() > 8:
                cases.append({"gcm_index": gi, "outcome": INCONCLUSIVE,
                              "note": "no closed set sampled"})
                continue
            rec = {"gcm_index": gi, "phi": root_set_to_list(phi)}
            try:
                levels = pronilpotent_filtration(
                    phi, max(phi.max_abs_height(), 1), ctx.slices
                )
                rec["levels"] = [len(lv.roots) for lv in levels]
                rec["outcome"] = PASS
            except Exception as exc:
                rec["outcome"] = FAIL
                rec["error"] = repr(exc)
            cases.append(rec)
    return cases, pool


def run_levi(config: CampaignConfig) -> tuple[list[dict], list[GCM]]:
    rng = SplitMix64(config.seed)
    if config.gcm is not None:
        pool = [config.gcm]
    else:
        pool = gcm_pool(rng, max(10, (config.cases + 24) // 25), ranks=(2, 3, 4))
    cases: list[dict] = []
    per_gcm = (config.cases + len(pool) - 1) // len(pool)
    for gi, gcm in enumerate(pool):
        ctx = GcmContext(gcm)
        ball = ctx.ball(min(config.radius, 4))
        for local in range(per_gcm):
            if len(cases) == config.cases:
                break
            if local % 2 == 0:
                psi = random_closed_mixed(
                    rng, gcm, ctx.slices, ball, cap=config.cap
                )
            else:
                psi = random_closed_asymmetric(
                    rng, gcm, ctx.slices, ball, seed_height=3, cap=config.cap
                )
            if psi is None or psi.max_abs_height() > 8:
                cases.append({"gcm_index": gi, "outcome": INCONCLUSIVE,
                              "note": "no closed set sampled"})
                continue
            rec = {"gcm_index": gi, "set": root_set_to_list(psi)}
            try:
                rep = verify_levi(psi, ctx.slices)
                rec["type"] = rep.finite_type.name if rep.finite_type else None
                rec["coroot_rank"] = rep.coroot_rank
                rec["checks"] = dict(sorted(rep.checks.items()))
                rec["outcome"] = PASS if rep.ok else FAIL
                if not rep.ok:
                    rec["witnesses"] = {
                        k: repr(v) for k, v in sorted(rep.witnesses.items())
                    }
            except Exception as exc:
                rec["outcome"] = FAIL
                rec["error"] = repr(exc)
            cases.append(rec)
    return cases, pool


_RUNNERS = {
    "dictionary": run_dictionary,
    "lemma12": run_lemma12,
    "intersection": run_intersection,
    "nilpotency": run_nilpotency,
    "closure-finite": run_closure_finite,
    "filtration": run_filtration,
    "levi": run_levi,
}


def run_campaign(config: CampaignConfig) -> dict:
    """Run a suite and assemble the canonical report dictionary."""
    if config.suite not in _RUNNERS:
        raise ValueError("unknown suite %r (choose from %s)"
                         % (config.suite, ", ".join(SUITES)))
    cases, pool = _RUNNERS[config.suite](config)
    agg = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for c in cases:
        agg[c["outcome"]] += 1
    return {
        "schema": 1,
        "suite": config.suite,
        "generator": GENERATOR_NAME,
        "config": config.echo(),
        "gcms": [[list(r) for r in g.entries] for g in pool],
        "cases": cases,
        "aggregate": {
            "pass": agg[PASS],
            "fail": agg[FAIL],
            "inconclusive": agg[INCONCLUSIVE],
        },
    }


def exit_code_for(report: dict) -> int:
    agg = report["aggregate"]
    if agg["fail"]:
        return 1
    if agg["inconclusive"]:
        return 3
    return 0
