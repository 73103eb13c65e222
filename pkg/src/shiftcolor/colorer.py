"""Recursive 3-coloring of bad UP sequences, one rule per constructor.

Every rule is an instance of the same splitting scheme. A shift-equivariant
binary pattern P is computed from X. If P is not eventually constant, X is
colored through P itself. Otherwise X eventually lands in one homogeneous
piece and is colored there, stepping back +1 mod 3 per shift (tail steps).

The trace is a list of dicts. Exactly one entry carries a terminal
``color`` ("base", "binary-factor" or "fallback"); ``tail-step`` entries carry
``steps``. The final color is the terminal color plus all steps, mod 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import derive, qo
from .shiftgraph import NeverEntersError, cycle_color, tail_color
from .upseq import UPSeq, from_values, is_bad, phi_pattern, to_literal


class NotBadError(ValueError):
    """Input is not a vertex of the shift graph."""


class PipelineError(RuntimeError):
    """A branch the construction proves empty was reached."""


class WellFoundednessBreach(PipelineError):
    pass


class EmptyPieceError(PipelineError):
    pass


class FinsetBadnessBroken(PipelineError):
    pass


@dataclass
class ColorTrace:
    color: int
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"color": self.color, "trace": self.trace}


TERMINALS = ("base", "binary-factor", "fallback")


def replay(trace: list) -> int:
    terminal = [e["color"] for e in trace if e["branch"] in TERMINALS]
    if len(terminal) != 1:
        raise ValueError(f"trace has {len(terminal)} terminal entries")
    steps = sum(e["steps"] for e in trace if e["branch"] == "tail-step")
    return (terminal[0] + steps) % 3


# -- the splitting scheme ---------------------------------------------------

def _split(X: UPSeq, pattern: Callable[[UPSeq], UPSeq], hom, antihom, name: str,
           trace: list) -> int:
    P = pattern(X)
    if not P.is_eventually_constant():
        c = cycle_color(P)
        trace.append({"branch": "binary-factor", "split": name,
                      "pattern": to_literal(None, P), "color": c})
        return c
    piece = hom if P.per[0] == 1 else antihom

    def member(Z):
        Q = pattern(Z)
        return not Q.pre and Q.per == P.per

    def step(e):
        trace.append({"branch": "tail-step", "split": name, "steps": e})

    return tail_color(member, piece, on_step=step)(X)


def split_color(spec, phi: Callable[..., bool], c_hom, c_antihom,
                arity: int = 2) -> Callable[[UPSeq], int]:
    """Combine colorers of the phi-homogeneous and anti-homogeneous pieces."""
    def pattern(X):
        return phi_pattern(spec, X, phi, arity)

    def colorer(X):
        return _split(X, pattern, c_hom, c_antihom, "phi", [])
    return colorer


def _empty(kind, what):
    def fail(Z):
        raise kind(f"{what}: reached at {Z!r}")
    return fail


# -- per-constructor rules --------------------------------------------------

def _color(spec, X: UPSeq, trace: list) -> int:
    k = spec.kind
    if k == "finite":
        return _color_base(spec, X, trace)
    if k == "union":
        return _color_union(spec, X, trace)
    if k == "product":
        return _color_product(spec, X, trace)
    if k in qo.SEQ_LIKE:
        return _color_seq(spec, X, trace)
    if k in qo.TREE_KINDS:
        return _color_tree(spec, X, trace)
    if k == "finset":
        return _color_finset(spec, X, trace)
    raise ValueError(f"unsupported kind {k!r}")


def _color_base(spec, X, trace):
    if not is_bad(spec, X):
        raise NotBadError("sequence is not bad")
    c = cycle_color(X, spec)
    trace.append({"branch": "base", "color": c})
    return c


def _color_union(spec, X, trace):
    def pattern(Z):
        return phi_pattern(spec, Z, lambda q: q[0] == qo.LEFT, 1)

    def side(sub, tag):
        def piece(Z):
            trace.append({"branch": tag})
            return _color(sub, Z.map(lambda e: e[1]), trace)
        return piece

    return _split(X, pattern, side(spec.left, "union-left"),
                  side(spec.right, "union-right"), "union", trace)


def _color_product(spec, X, trace):
    left = spec.left

    def pattern(Z):
        return phi_pattern(spec, Z, lambda p, q: left.leq(p[0], q[0]), 2)

    # first coordinates ascend on the hom piece, so badness lives in the second
    def second(Z):
        trace.append({"branch": "product-pi2"})
        return _color(spec.right, Z.map(lambda e: e[1]), trace)

    def first(Z):
        trace.append({"branch": "product-pi1"})
        return _color(spec.left, Z.map(lambda e: e[0]), trace)

    return _split(X, pattern, second, first, "product", trace)


def _color_seq(spec, X, trace):
    def pattern(Z):
        return phi_pattern(spec, Z, lambda r, t: len(r) <= len(t), 2)

    def on_B(Z):
        trace.append({"branch": "B"})
        W, M = derive.d_infty_detail(spec, Z)
        trace.append({"branch": "d-infty", "M": to_literal(None, M),
                      "z": to_literal(spec, W)})
        # W is bad but its lengths can still drop before M_k settles;
        # from then on it is a derivative of a shift, hence stable
        stable = tail_color(lambda V: derive.in_stab(spec, V),
                            lambda V: _color_stab(spec, V, trace),
                            on_step=lambda e: trace.append(
                                {"branch": "tail-step", "split": "stable", "steps": e}))
        try:
            return stable(W)
        except NeverEntersError:
            raise EmptyPieceError(f"d_infty output never becomes stable: {W!r}") from None

    return _split(X, pattern, on_B,
                  _empty(WellFoundednessBreach, "lengths decrease forever"),
                  "length", trace)


def _profile_pattern(spec, test):
    def pattern(Z):
        prof = derive._profile(spec, Z)
        vals = [int(test(prof.m, prof.n, k)) for k in range(Z.window)]
        return from_values(vals, len(Z.pre), len(Z.per))
    return pattern


_M_UP = lambda m, n, k: m.at(k) <= m.at(k + 1)
_N_UP = lambda m, n, k: n.at(k) <= n.at(k + 1)
_PSI = lambda m, n, k: m.at(k + 1) >= n.at(k)


def _color_stab(spec, W, trace):
    def witness(Z):
        Y = derive.witness_extract(spec, Z)
        trace.append({"branch": "witness", "y": to_literal(spec.of, Y)})
        return _color(spec.of, Y, trace)

    def psi_split(Z):
        return _split(Z, _profile_pattern(spec, _PSI), witness,
                      _empty(EmptyPieceError, "derivable point in stable set"),
                      "psi", trace)

    def n_split(Z):
        return _split(Z, _profile_pattern(spec, _N_UP), psi_split,
                      _empty(EmptyPieceError, "n_k decreases forever"),
                      "n-monotone", trace)

    return _split(W, _profile_pattern(spec, _M_UP), n_split,
                  _empty(EmptyPieceError, "m_k decreases forever"),
                  "m-monotone", trace)


def _color_tree(spec, X, trace):
    lin = qo.seq_view(spec)

    def pattern(Z):
        return phi_pattern(
            spec, Z, lambda s, t: not lin.leq(qo.linearize(s), qo.linearize(t)), 2)

    def linearized(Z):
        trace.append({"branch": "linearized"})
        return _color_seq(lin, Z.map(qo.linearize), trace)

    def fallback(Z):
        c = cycle_color(Z, spec)
        trace.append({"branch": "fallback", "color": c})
        return c

    return _split(X, pattern, linearized, fallback, "linearization", trace)


def _color_finset(spec, X, trace):
    lin = qo.seq_view(spec)
    # sets are stored as canonically sorted tuples: that tuple is the sorted word
    if not is_bad(lin, X):
        raise FinsetBadnessBroken("sorted words of a bad set sequence are not bad")
    trace.append({"branch": "finset-sorted"})
    return _color_seq(lin, X, trace)


# -- public surface ---------------------------------------------------------

def color(spec, X: UPSeq) -> ColorTrace:
    if not is_bad(spec, X):
        raise NotBadError("sequence is not bad")
    trace: list = []
    c = _color(spec, X, trace)
    return ColorTrace(c, trace)


def _public(rule, kinds):
    def colorer(spec, X: UPSeq) -> int:
        if spec.kind not in kinds:
            raise ValueError(f"expected kind in {kinds}, got {spec.kind!r}")
        if not is_bad(spec, X):
            raise NotBadError("sequence is not bad")
        return rule(spec, X, [])
    colorer.__name__ = rule.__name__.lstrip("_")
    return colorer


color_base = _public(_color_base, ("finite",))
color_union = _public(_color_union, ("union",))
color_product = _public(_color_product, ("product",))
color_seq = _public(_color_seq, qo.SEQ_LIKE)
color_tree = _public(_color_tree, qo.TREE_KINDS)
color_finset = _public(_color_finset, ("finset",))
