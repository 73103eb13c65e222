"""Seeded generators of bad UP sequences and the audit suites.

Every suite returns an AuditReport whose JSON form (without timing) is
byte-identical across runs for the same seed, spec and bounds.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from . import colorer, derive, embed, qo
from .shiftgraph import COLORS
from .upseq import UPSeq, canonicalize, is_bad, to_literal


# -- the spec zoo -----------------------------------------------------------

def zoo() -> dict:
    A2 = qo.antichain(["a", "b"])
    return {
        "A2": A2,
        "A3": qo.antichain(["a", "b", "c"]),
        "C3": qo.chain(["a", "b", "c"]),
        "A2+A2": qo.union(A2, qo.antichain(["a", "b"])),
        "A2xA2": qo.product(A2, A2),
        "C2xA2": qo.product(qo.chain(["a", "b"]), A2),
        "Seq(A2)": qo.seq(A2),
        "Seq(Seq(A2))": qo.seq(qo.seq(A2)),
        "FinSet(A2)": qo.finset(A2),
        "Tree1(A2)": qo.tree1(A2),
        "Tree1(a,b,c0)": qo.tree1(qo.antichain(["a", "b", "c0"])),
    }


def crossing_labels() -> qo.QoSpec:
    """Labels {a,b,p,q} with a <= q and b <= p."""
    return qo.from_pairs(["a", "b", "p", "q"], [("a", "q"), ("b", "p")])


# -- reports ----------------------------------------------------------------

@dataclass
class AuditReport:
    suite: str
    spec: str
    seed: object = None
    attempted: int = 0
    valid: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "spec": self.spec, "seed": self.seed,
             "attempted": self.attempted, "valid": self.valid,
             "passed": self.passed, "violations": self.violations,
             "stats": self.stats, "notes": self.notes}
        if timing:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


# -- generators -------------------------------------------------------------

class _Successors:
    """Lazy table of y with x !<= y over a fixed pool."""

    def __init__(self, spec, pool):
        self.spec, self.pool = spec, pool
        self._succ: dict = {}

    def __call__(self, i):
        s = self._succ.get(i)
        if s is None:
            x, leq = self.pool[i], self.spec.leq
            s = self._succ[i] = [j for j, y in enumerate(self.pool) if not leq(x, y)]
        return s


def gen_bad(spec, seed: int, count: int, max_pre: int = 2, max_per: int = 4,
            max_size: int = 4, stale_limit: int = 2000) -> list:
    """Up to ``count`` distinct canonical bad UP sequences.

    Attempt i draws from its own RNG seeded by (seed, i): a random walk along
    non-embeddings, closed into a cycle and kept if the result is bad. Stops
    early once ``stale_limit`` consecutive attempts produce nothing new.
    """
    if max_per < 2:
        return []
    pool = qo.enumerate_elements(spec, max_size)
    succ = _Successors(spec, pool)
    starts = [i for i in range(len(pool)) if succ(i)]
    if not starts:
        return []
    found, seen = [], set()
    stale = 0
    for attempt in range(40 * count):
        if len(found) >= count or stale >= stale_limit:
            break
        rng = random.Random(f"{seed}:{attempt}")
        lp = rng.randint(0, max_pre)
        lq = rng.randint(2, max_per)
        walk = [rng.choice(starts)]
        for _ in range(lp + lq - 1):
            nxt = succ(walk[-1])
            if not nxt:
                break
            walk.append(rng.choice(nxt))
        stale += 1
        if len(walk) < lp + lq:
            continue
        elems = [pool[j] for j in walk]
        X = canonicalize(elems[:lp], elems[lp:])
        if X in seen or len(X.per) < 2 or not is_bad(spec, X):
            continue
        seen.add(X)
        found.append(X)
        stale = 0
    return found


def exhaustive_bad(spec, max_pre: int, max_per: int, max_size: int = 1) -> list:
    """Every canonical bad UP sequence with the given bounds, sorted."""
    pool = qo.enumerate_elements(spec, max_size)
    out = set()
    for lp in range(max_pre + 1):
        for lq in range(1, max_per + 1):
            for pre in itertools.product(pool, repeat=lp):
                for per in itertools.product(pool, repeat=lq):
                    X = canonicalize(pre, per)
                    if is_bad(spec, X):
                        out.add(X)
    key = lambda X: ([qo.sort_key(spec, e) for e in X.pre],
                     [qo.sort_key(spec, e) for e in X.per])
    return sorted(out, key=key)


# -- properness -------------------------------------------------------------

def audit_properness(spec, seed: int, count: int, max_pre: int = 2, max_per: int = 4,
                     max_size: int = 4, color_fn=None, name: str = None) -> AuditReport:
    color_fn = color_fn or colorer.color
    t0 = time.perf_counter()
    rep = AuditReport("properness", name or spec.describe(), seed=seed, attempted=count)
    samples = gen_bad(spec, seed, count, max_pre, max_per, max_size)
    rep.valid = len(samples)
    branches: Counter = Counter()
    colors: Counter = Counter()
    for X in samples:
        try:
            a = color_fn(spec, X)
            b = color_fn(spec, X.shift())
        except colorer.PipelineError as exc:
            rep.violations.append({"input": to_literal(spec, X),
                                   "property": "error-branch-unreachable",
                                   "observed": f"{type(exc).__name__}: {exc}"})
            continue
        colors[str(a.color)] += 1
        for br in {e["branch"] for e in a.trace}:
            branches[br] += 1
        if a.color not in COLORS:
            rep.violations.append({"input": to_literal(spec, X),
                                   "property": "color-in-range", "observed": a.color})
        if a.color == b.color:
            rep.violations.append({"input": to_literal(spec, X),
                                   "property": "color(X) != color(S X)",
                                   "observed": [a.to_json(), b.to_json()]})
        if colorer.replay(a.trace) != a.color:
            rep.violations.append({"input": to_literal(spec, X),
                                   "property": "trace-replay", "observed": a.to_json()})
    rep.stats = {"branches": dict(sorted(branches.items())),
                 "colors": dict(sorted(colors.items()))}
    if not samples:
        rep.notes.append("no bad sequences found within bounds; passes vacuously")
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- oracle equivalence -----------------------------------------------------

def audit_oracle_equiv(spec, bound: int, guard: int = 6, name: str = None) -> AuditReport:
    """Compare spec.leq against brute_force_leq on all element pairs."""
    t0 = time.perf_counter()
    rep = AuditReport("oracle", name or spec.describe(), seed=None)
    elems = qo.enumerate_elements(spec, bound)
    rep.valid = len(elems)
    extra: Counter = Counter()
    for x, y in itertools.product(elems, repeat=2):
        rep.attempted += 1
        fast = spec.leq(x, y)
        slow = embed.brute_force_leq(spec, x, y, guard)
        if fast != slow:
            rep.violations.append({"input": [qo.element_to_literal(spec, x),
                                             qo.element_to_literal(spec, y)],
                                   "property": "decider == oracle",
                                   "observed": {"decider": fast, "oracle": slow}})
        if spec.kind in qo.SEQ_LIKE:
            _check_higman_extras(spec, x, y, fast, rep, extra)
        elif spec.kind in qo.TREE_KINDS:
            _check_tree_extras(spec, x, y, rep, extra)
    rep.stats = dict(sorted(extra.items()))
    rep.stats["pairs"] = rep.attempted
    rep.elapsed = time.perf_counter() - t0
    return rep


def _check_higman_extras(spec, x, y, ok, rep, extra):
    lit = [qo.element_to_literal(spec, x), qo.element_to_literal(spec, y)]
    if ok:
        _, wit = embed.le_higman(spec.of, x, y)
        h = [j for _, j in wit]
        others = embed.all_higman_witnesses(spec.of, x, y)
        extra["witnesses_checked"] += len(others)
        if tuple(h) not in others or any(
                any(a > b for a, b in zip(h, g)) for g in others):
            rep.violations.append({"input": lit, "property": "greedy witness is leftmost",
                                   "observed": h})
        for m in range(len(x)):
            if not embed.le_higman(spec.of, x[:m], y)[0]:
                rep.violations.append({"input": lit, "property": "prefix monotonicity",
                                       "observed": m})


def _check_tree_extras(spec, x, y, rep, extra):
    inj = embed.le_tree_inj(spec.of, x, y)
    mono = embed.le_tree_mono(spec.of, x, y)
    if inj[0] and not mono[0]:
        rep.violations.append({"input": [qo.element_to_literal(spec, x),
                                         qo.element_to_literal(spec, y)],
                               "property": "<=_1 implies <=_m", "observed": False})
    for ok, wit, injective in ((inj[0], inj[1], True), (mono[0], mono[1], False)):
        if ok:
            extra["witnesses_checked"] += 1
            if not _valid_tree_witness(spec.of, x, y, wit, injective):
                rep.violations.append({"input": [qo.element_to_literal(spec, x),
                                                 qo.element_to_literal(spec, y)],
                                       "property": "witness satisfies definition",
                                       "observed": wit})


def _valid_tree_witness(labels, s, t, wit, injective):
    sl, sp, sdesc, _ = embed.tree_info(s)
    tl, _, tdesc, _ = embed.tree_info(t)
    f = dict(wit)
    if len(f) != len(sl):
        return False
    if injective and len(set(f.values())) != len(f):
        return False
    for u in range(len(sl)):
        if not labels.leq(sl[u], tl[f[u]]):
            return False
        for w in sdesc[u]:
            if injective and f[w] not in tdesc[f[u]]:
                return False
            if not injective and f[w] != f[u] and f[w] not in tdesc[f[u]]:
                return False
    return True


# -- derivative identities --------------------------------------------------

def audit_identities(spec, seed: int, count: int, max_pre: int = 2, max_per: int = 4,
                     max_size: int = 4, name: str = None) -> AuditReport:
    """Shift identities of the derivative machinery on sampled points of B.

    A sample that is not itself in B contributes its first shift that is.
    """
    t0 = time.perf_counter()
    rep = AuditReport("identities", name or spec.describe(), seed=seed, attempted=count)
    tally: Counter = Counter()
    for X in gen_bad(spec, seed, count, max_pre, max_per, max_size):
        Z = next((W for W in X.states() if derive.in_B(spec, W)), None)
        if Z is None:
            continue
        rep.valid += 1
        for prop, ok in _identity_checks(spec, Z, tally):
            if not ok:
                rep.violations.append({"input": to_literal(spec, Z), "property": prop,
                                       "observed": False})
    rep.stats = dict(sorted(tally.items()))
    if not rep.valid:
        rep.notes.append("no eligible samples")
    rep.elapsed = time.perf_counter() - t0
    return rep


def _identity_checks(spec, X, tally):
    SX = X.shift()
    prof, sprof = derive.deriv_profile(spec, X), derive.deriv_profile(spec, SX)
    yield "profile(S X) == S profile(X)", (sprof.m == prof.m.shift()
                                           and sprof.n == prof.n.shift())
    yield "m_k <= n_k", all(prof.m.at(k) <= prof.n.at(k) for k in range(X.window))
    yield "m_k < len X(k)", all(prof.m.at(k) < len(X.at(k)) for k in range(X.window))
    chain = derive.derivation_chain(spec, X)
    tally["derivations"] += len(chain) - 1
    heads = [len(Y.at(0)) for Y in chain]
    yield "derivation shortens X(0)", all(a > b for a, b in zip(heads, heads[1:]))
    if derive.is_derivable(spec, X):
        tally["derivable"] += 1
        D = derive.d_once(spec, X)
        yield "d(S X) == S d(X)", derive.d_once(spec, SX) == D.shift()
        yield "d(X) in B", derive.in_B(spec, D)
    W, M = derive.d_infty_detail(spec, X)
    yield "M_k nondecreasing", all(M.at(k) <= M.at(k + 1) for k in range(M.window))
    yield "d_inf(S X) == S d_inf(X)", derive.d_infty(spec, SX) == W.shift()
    yield "d_inf(X) bad", is_bad(spec, W)
    tail = next((V for V in W.states() if derive.in_stab(spec, V)), None)
    yield "d_inf(X) eventually stable", tail is not None
    stable = derive.in_stab(spec, W)
    yield "d_inf(X) stable", stable
    # d_inf is only defined on B, so idempotence is undecidable off B
    yield "d_inf idempotent", derive.in_B(spec, W) and derive.d_infty(spec, W) == W
    if derive.in_stab(spec, X):
        tally["already_stable"] += 1
        yield "d_inf identity on stable set", W == X
    if not stable:
        tally["d_inf_unstable"] += 1
        if tail is None:
            return
        W = tail
    wp = derive.deriv_profile(spec, W)
    if all(wp.m.at(k + 1) >= wp.n.at(k) for k in range(W.window)):
        tally["witness_eligible"] += 1
        Y = derive.witness_extract(spec, W)
        yield "witness bad", is_bad(spec.of, Y)
        yield "witness(S Z) == S witness(Z)", derive.witness_extract(spec, W.shift()) == Y.shift()


# -- linearization ----------------------------------------------------------

def audit_linearization(labels, node_bound: int, max_witnesses: int = 25,
                        order: str = "tree1", name: str = None) -> AuditReport:
    """Check both directions of tree -> preorder word monotonicity.

    (i)  s <= t      =>  lin(s) <=_H lin(t)
    (ii) s !<= t     =>  lin(s) !<=_H lin(t)   (what pulling back a coloring needs)
    Counts are exact; the first ``max_witnesses`` violations per direction
    are listed and re-verified with the brute-force oracle.
    """
    t0 = time.perf_counter()
    tspec = qo.QoSpec(order, of=labels)
    sspec = qo.seq(labels)
    rep = AuditReport("linearization", name or tspec.describe(), seed=None)
    trees = [t for t in qo.enumerate_elements(tspec, node_bound)
             if len(qo.tree_nodes(t)[0]) <= node_bound]
    lins = [qo.linearize(t) for t in trees]
    counts = {"forward": 0, "reverse": 0}
    listed = {"forward": [], "reverse": []}
    for i, j in itertools.product(range(len(trees)), repeat=2):
        rep.attempted += 1
        s, t = trees[i], trees[j]
        tle = tspec.leq(s, t)
        hle = sspec.leq(lins[i], lins[j])
        if tle == hle:
            continue
        direction = "forward" if tle else "reverse"
        counts[direction] += 1
        if len(listed[direction]) < max_witnesses:
            listed[direction].append(_lin_witness(tspec, sspec, s, t, lins[i], lins[j],
                                                  direction))
    rep.valid = len(trees)
    for direction in ("forward", "reverse"):
        rep.violations.extend(listed[direction])
    rep.stats = {"trees": len(trees), "pairs": rep.attempted,
                 "forward_violations": counts["forward"],
                 "reverse_violations": counts["reverse"],
                 "all_witnesses_verified": all(v["verified"] for v in rep.violations)}
    rep.elapsed = time.perf_counter() - t0
    return rep


def _lin_witness(tspec, sspec, s, t, ls, lt, direction):
    bt = embed.brute_force_leq(tspec, s, t)
    bh = embed.brute_force_leq(sspec, ls, lt)
    expect = (True, False) if direction == "forward" else (False, True)
    return {"direction": direction,
            "property": ("s <= t implies lin(s) <= lin(t)" if direction == "forward"
                         else "s !<= t implies lin(s) !<= lin(t)"),
            "input": [qo.element_to_literal(tspec, s), qo.element_to_literal(tspec, t)],
            "pretty": [qo.format_element(tspec, s), qo.format_element(tspec, t)],
            "linearized": [qo.format_element(sspec, ls), qo.format_element(sspec, lt)],
            "observed": {"tree_leq": bt, "higman_leq": bh},
            "verified": (bt, bh) == expect}


# -- well-orders ------------------------------------------------------------

def audit_wellorder(spec, max_pre: int = 2, max_per: int = 4, max_size: int = 1,
                    name: str = None) -> AuditReport:
    """Exhaustive search for bad UP sequences; every one found is reported."""
    t0 = time.perf_counter()
    rep = AuditReport("well-order", name or spec.describe(), seed=None)
    pool = qo.enumerate_elements(spec, max_size)
    rep.attempted = sum(len(pool) ** (lp + lq) for lp in range(max_pre + 1)
                        for lq in range(1, max_per + 1))
    found = exhaustive_bad(spec, max_pre, max_per, max_size)
    rep.valid = 0
    rep.violations = [{"input": to_literal(spec, X), "property": "no bad sequence",
                       "observed": "bad"} for X in found]
    rep.stats = {"candidates": rep.attempted, "bad_found": len(found)}
    if not found:
        rep.notes.append("no bad UP sequence exists within bounds: pass with zero samples")
    rep.elapsed = time.perf_counter() - t0
    return rep
