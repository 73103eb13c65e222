"""Derivatives of bad sequences over a Higman sequence order.

Throughout, ``spec`` is the sequence spec (kind ``seq`` or ``linord``) and X
is a UP sequence of its elements. ``s[:m]`` is the restriction to the first
m coordinates. B is the set of bad X whose lengths never decrease.

For consecutive terms, m_k is the longest prefix of X(k) that Higman-embeds
in X(k+1), and n_k the shortest prefix of X(k+1) that still receives it.
X is derivable when m_k <= m_{k+1} < n_k <= n_{k+1} for every k, and then
the derivative cuts every X(k) down to its first m_k coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import embed, qo
from .upseq import UPSeq, from_values, is_bad


class NotInBError(ValueError):
    """Sequence is not bad, or its lengths decrease somewhere."""


class NotDerivableError(ValueError):
    pass


class SideConditionError(ValueError):
    """Witness extraction needs m_{k+1} >= n_k for every k."""


@dataclass(frozen=True)
class DerivProfile:
    m: UPSeq
    n: UPSeq


def lengths_nondecreasing(X: UPSeq) -> bool:
    return all(len(X.at(k)) <= len(X.at(k + 1)) for k in range(X.window))


def in_B(spec, X: UPSeq) -> bool:
    return lengths_nondecreasing(X) and is_bad(spec, X)


def _require_B(spec, X):
    if not lengths_nondecreasing(X):
        raise NotInBError("lengths decrease somewhere")
    if not is_bad(spec, X):
        raise NotInBError("sequence is not bad")


def _mn(spec, X, k):
    m, n, _ = embed.higman_prefix(spec.of, X.at(k), X.at(k + 1))
    return m, n


def mk_nk(spec, X: UPSeq, k: int) -> tuple:
    _require_B(spec, X)
    return _mn(spec, X, k)


def _profile(spec, X):
    vals = [_mn(spec, X, k) for k in range(X.window)]
    lp, lq = len(X.pre), len(X.per)
    return DerivProfile(from_values([v[0] for v in vals], lp, lq),
                        from_values([v[1] for v in vals], lp, lq))


def deriv_profile(spec, X: UPSeq) -> DerivProfile:
    _require_B(spec, X)
    return _profile(spec, X)


def _derivable(prof: DerivProfile, window: int) -> bool:
    m, n = prof.m, prof.n
    return all(m.at(k) <= m.at(k + 1) < n.at(k) <= n.at(k + 1)
               for k in range(window + 1))


def is_derivable(spec, X: UPSeq) -> bool:
    _require_B(spec, X)
    return _derivable(_profile(spec, X), X.window)


def _cut(X, prof):
    vals = [X.at(k)[:prof.m.at(k)] for k in range(X.window)]
    return from_values(vals, len(X.pre), len(X.per))


def d_once(spec, X: UPSeq) -> UPSeq:
    _require_B(spec, X)
    prof = _profile(spec, X)
    if not _derivable(prof, X.window):
        raise NotDerivableError("sequence is not 1-derivable")
    return _cut(X, prof)


def derivation_chain(spec, X: UPSeq) -> list:
    """[X, dX, d^2 X, ...] up to the last derivable stage."""
    _require_B(spec, X)
    chain = [X]
    while True:
        prof = _profile(spec, X)
        if not _derivable(prof, X.window):
            return chain
        X = _cut(X, prof)
        chain.append(X)


def max_derivability(spec, X: UPSeq) -> int:
    return len(derivation_chain(spec, X)) - 1


def d_infty_detail(spec, X: UPSeq) -> tuple:
    """(d_infty X, M) where M is the UP sequence k -> max_derivability(S^k X)."""
    _require_B(spec, X)
    Ms, vals = [], []
    for Z in X.states():
        chain = derivation_chain(spec, Z)
        Ms.append(len(chain) - 1)
        vals.append(chain[-1].at(0))
    lp, lq = len(X.pre), len(X.per)
    return from_values(vals, lp, lq), from_values(Ms, lp, lq)


def d_infty(spec, X: UPSeq) -> UPSeq:
    return d_infty_detail(spec, X)[0]


def in_stab(spec, X: UPSeq) -> bool:
    """X in B and no shift of X is 1-derivable."""
    if not in_B(spec, X):
        return False
    return not any(_derivable(_profile(spec, Z), Z.window) for Z in X.states())


def witness_extract(spec, Z: UPSeq) -> UPSeq:
    """k -> Z(k)[m_k], the first coordinate of Z(k) that fails to embed."""
    _require_B(spec, Z)
    prof = _profile(spec, Z)
    m, n = prof.m, prof.n
    for k in range(Z.window + 1):
        if m.at(k + 1) < n.at(k):
            raise SideConditionError(f"m_{k + 1} = {m.at(k + 1)} < n_{k} = {n.at(k)}")
    vals = [Z.at(k)[m.at(k)] for k in range(Z.window)]
    return from_values(vals, len(Z.pre), len(Z.per))


def fill_closure(spec, R) -> list:
    """Least superset of R closed under s -> s[:m(s,t)] and t -> t[:n(s,t)]."""
    closed = set(R)
    frontier = set(closed)
    while frontier:
        new = set()
        for s, t in itertools.chain(itertools.product(frontier, closed),
                                    itertools.product(closed, frontier)):
            m, n, _ = embed.higman_prefix(spec.of, s, t)
            for r in (s[:m], t[:n]):
                if r not in closed:
                    new.add(r)
        closed |= new
        frontier = new
    return sorted(closed, key=lambda e: qo.sort_key(spec, e))
