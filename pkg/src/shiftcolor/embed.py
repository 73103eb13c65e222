"""Decision procedures for the composite embedding relations.

Each decider takes the quasi-order of the *labels* and two composite values.
Witnesses are lists of ``(source, target)`` index pairs: positions for
sequences, preorder node indices for trees.

``brute_force_leq`` is the independent oracle: it enumerates candidate maps
outright and shares nothing with the deciders beyond the finite base tables.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import qo


class OracleGuardError(ValueError):
    """Input too large for exhaustive enumeration."""


# -- sequences --------------------------------------------------------------

def higman_prefix(spec, s, t) -> tuple:
    """Greedy leftmost matching of ``s`` into ``t``.

    Returns ``(m, n, positions)``: ``m`` is the longest prefix of ``s`` that
    embeds in ``t``, ``n`` the least ``n`` with ``s[:m]`` embedding in
    ``t[:n]``, and ``positions`` the leftmost witness for ``s[:m]``.
    """
    positions = []
    j = 0
    nt = len(t)
    leq = spec.leq
    for x in s:
        while j < nt and not leq(x, t[j]):
            j += 1
        if j == nt:
            break
        positions.append(j)
        j += 1
    n = positions[-1] + 1 if positions else 0
    return len(positions), n, positions


def le_higman(spec, s, t) -> tuple:
    """Higman embedding ``s <= t``; returns ``(ok, witness)``."""
    if len(s) > len(t):
        return False, None
    m, _, pos = higman_prefix(spec, s, t)
    if m < len(s):
        return False, None
    return True, list(enumerate(pos))


# -- trees ------------------------------------------------------------------

@lru_cache(maxsize=65536)
def tree_info(t) -> tuple:
    """(labels, parents, strict-descendant sets, children lists) in preorder."""
    labels, parents = qo.tree_nodes(t)
    n = len(labels)
    children = [[] for _ in range(n)]
    for i, p in enumerate(parents):
        if p >= 0:
            children[p].append(i)
    desc = [None] * n
    for i in reversed(range(n)):
        d = set()
        for c in children[i]:
            d.add(c)
            d |= desc[c]
        desc[i] = frozenset(d)
    return (tuple(labels), tuple(parents), tuple(desc),
            tuple(tuple(c) for c in children))


def le_tree_inj(spec, s, t) -> tuple:
    """Injective embedding preserving strict ancestry (the ``<=_1`` order).

    Backtracking over source nodes in preorder; a node only has to land
    strictly below its parent's image. Failed states are memoized on
    (next node, used targets, images of parents still owed children).
    """
    sl, sp, _, _ = tree_info(s)
    tl, _, tdesc, _ = tree_info(t)
    ns, nt = len(sl), len(tl)
    if ns > nt:
        return False, None
    cands = [[v for v in range(nt) if spec.leq(sl[i], tl[v])] for i in range(ns)]
    if any(not c for c in cands):
        return False, None
    live = _live_parents(s)
    img = [-1] * ns
    failed = set()

    def rec(i, used):
        if i == ns:
            return True
        key = (i, used, tuple(img[j] for j in live[i]))
        if key in failed:
            return False
        p = sp[i]
        allowed = tdesc[img[p]] if p >= 0 else None
        for v in cands[i]:
            if used >> v & 1:
                continue
            if allowed is not None and v not in allowed:
                continue
            img[i] = v
            if rec(i + 1, used | (1 << v)):
                return True
        img[i] = -1
        failed.add(key)
        return False

    if rec(0, 0):
        return True, list(enumerate(img))
    return False, None


@lru_cache(maxsize=65536)
def _live_parents(t) -> tuple:
    """live[i]: nodes j < i that still have a child with preorder index >= i."""
    _, parents, _, children = tree_info(t)
    n = len(parents)
    return tuple(tuple(j for j in range(min(i, n)) if children[j] and children[j][-1] >= i)
                 for i in range(n + 1))


@lru_cache(maxsize=65536)
def _below(t) -> tuple:
    """Descendants-or-self of each node, in preorder."""
    desc = tree_info(t)[2]
    return tuple((v,) + tuple(sorted(d)) for v, d in enumerate(desc))


def le_tree_mono(spec, s, t) -> tuple:
    """Order-preserving (not necessarily injective) embedding, ``<=_m``."""
    sl, _, _, sch = tree_info(s)
    tl = tree_info(t)[0]
    below = _below(t)
    ns, nt = len(sl), len(tl)
    emb = [[False] * nt for _ in range(ns)]
    for u in reversed(range(ns)):
        for v in range(nt):
            if not spec.leq(sl[u], tl[v]):
                continue
            if all(any(emb[c][w] for w in below[v]) for c in sch[u]):
                emb[u][v] = True
    roots = [v for v in range(nt) if emb[0][v]]
    if not roots:
        return False, None
    img = [-1] * ns
    img[0] = roots[0]
    for u in range(ns):
        for c in sch[u]:
            img[c] = next(w for w in below[img[u]] if emb[c][w])
    return True, list(enumerate(img))


# -- finite sets ------------------------------------------------------------

def le_finset(spec, s, t) -> bool:
    """Is there an injection f: s -> t with x <= f(x)? (augmenting paths)"""
    if len(s) > len(t):
        return False
    adj = [[j for j, y in enumerate(t) if spec.leq(x, y)] for x in s]
    match_t = [-1] * len(t)

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_t[j] < 0 or augment(match_t[j], seen):
                match_t[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(s)))


# -- oracle -----------------------------------------------------------------

def brute_force_leq(spec, x, y, guard: int = 6) -> bool:
    """Decide ``x <= y`` by enumerating every candidate map.

    Label comparisons recurse into the oracle itself. Raises
    OracleGuardError when a composite level has more than ``guard``
    positions or nodes on either side.
    """
    k = spec.kind
    if k == "finite":
        return spec.table[x][y]
    if k == "union":
        if x[0] != y[0]:
            return False
        side = spec.left if x[0] == qo.LEFT else spec.right
        return brute_force_leq(side, x[1], y[1], guard)
    if k == "product":
        return (brute_force_leq(spec.left, x[0], y[0], guard)
                and brute_force_leq(spec.right, x[1], y[1], guard))
    if k in qo.SEQ_LIKE or k == "finset":
        xs, ys = list(x), list(y)
    else:
        xs, xp = qo.tree_nodes(x)
        ys, yp = qo.tree_nodes(y)
    if max(len(xs), len(ys)) > guard:
        raise OracleGuardError(f"{len(xs)}x{len(ys)} exceeds guard {guard}")
    lab = [[brute_force_leq(spec.of, a, b, guard) for b in ys] for a in xs]
    if k in qo.SEQ_LIKE:
        return any(all(lab[i][h[i]] for i in range(len(xs)))
                   for h in itertools.combinations(range(len(ys)), len(xs)))
    if k == "finset":
        return any(all(lab[i][f[i]] for i in range(len(xs)))
                   for f in itertools.permutations(range(len(ys)), len(xs)))
    xanc = _ancestor_matrix(xp)
    yanc = _ancestor_matrix(yp)
    n = len(xs)
    # maps violating the label condition are skipped; all others are checked
    cands = [[j for j in range(len(ys)) if lab[i][j]] for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(n) if xanc[a][b]]
    if k == "tree1":
        return any(all(yanc[f[a]][f[b]] for a, b in pairs)
                   for f in _injective_maps(cands))
    for f in itertools.product(*cands):
        if all(yanc[f[a]][f[b]] or f[a] == f[b] for a, b in pairs):
            return True
    return False


def _injective_maps(cands):
    """Every injective choice f[i] in cands[i]."""
    n = len(cands)
    f = [0] * n
    used = set()

    def rec(i):
        if i == n:
            yield tuple(f)
            return
        for j in cands[i]:
            if j not in used:
                used.add(j)
                f[i] = j
                yield from rec(i + 1)
                used.discard(j)

    return rec(0)


def _ancestor_matrix(parents):
    """anc[a][b] is True iff a is a strict ancestor of b."""
    n = len(parents)
    anc = [[False] * n for _ in range(n)]
    for b in range(n):
        p = parents[b]
        while p >= 0:
            anc[p][b] = True
            p = parents[p]
    return anc


def all_higman_witnesses(spec, s, t) -> list:
    """Every strictly increasing label-dominating map, by enumeration."""
    return [h for h in itertools.combinations(range(len(t)), len(s))
            if all(brute_force_leq(spec, s[i], t[h[i]]) for i in range(len(s)))]
