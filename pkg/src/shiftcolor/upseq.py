"""Ultimately periodic infinite sequences ``pre + per + per + ...``.

Values are kept in canonical form: ``per`` primitive and ``pre`` as short as
possible, so two UPSeq compare equal exactly when they denote the same
infinite sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import qo


@dataclass(frozen=True)
class UPSeq:
    pre: tuple
    per: tuple

    def at(self, k: int):
        lp = len(self.pre)
        if k < lp:
            return self.pre[k]
        return self.per[(k - lp) % len(self.per)]

    def shift(self) -> "UPSeq":
        if self.pre:
            return UPSeq(self.pre[1:], self.per)
        return UPSeq((), self.per[1:] + self.per[:1])

    def shift_by(self, k: int) -> "UPSeq":
        lp = len(self.pre)
        if k <= lp:
            return UPSeq(self.pre[k:], self.per)
        r = (k - lp) % len(self.per)
        return UPSeq((), self.per[r:] + self.per[:r])

    @property
    def window(self) -> int:
        """Number of distinct shift states: len(pre) + len(per)."""
        return len(self.pre) + len(self.per)

    def states(self):
        """Yield X, S(X), ... through one full cycle past the preperiod."""
        x = self
        for _ in range(self.window):
            yield x
            x = x.shift()

    def prefix(self, n: int) -> tuple:
        return tuple(self.at(k) for k in range(n))

    def map(self, f: Callable) -> "UPSeq":
        """Apply ``f`` coordinatewise; the result is re-canonicalized."""
        return canonicalize([f(e) for e in self.pre], [f(e) for e in self.per])

    def is_eventually_constant(self) -> bool:
        return len(self.per) == 1


def primitive_root(word: tuple) -> tuple:
    p = len(word)
    for d in range(1, p + 1):
        if p % d == 0 and word == word[:d] * (p // d):
            return word[:d]
    return word


def canonicalize(pre, per) -> UPSeq:
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise ValueError("period must be nonempty")
    per = primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return UPSeq(pre, per)


def make_up(pre, per) -> UPSeq:
    return canonicalize(pre, per)


def from_values(values, len_pre: int, len_per: int) -> UPSeq:
    """Build from the first len_pre + len_per coordinates of a sequence that
    is periodic from index len_pre with period len_per."""
    values = list(values)
    return canonicalize(values[:len_pre], values[len_pre:len_pre + len_per])


def tabulate(X: UPSeq, f: Callable[[UPSeq], object]) -> UPSeq:
    """The UP sequence k -> f(S^k X) for a shift-equivariant quantity ``f``."""
    return from_values((f(Z) for Z in X.states()), len(X.pre), len(X.per))


# -- literals ---------------------------------------------------------------

def parse_up(spec, lit) -> UPSeq:
    if not isinstance(lit, dict) or set(lit) != {"pre", "per"}:
        raise qo.ShapeError(f"UP literal needs exactly 'pre' and 'per', got {lit!r}")
    if not isinstance(lit["pre"], list) or not isinstance(lit["per"], list):
        raise qo.ShapeError("'pre' and 'per' must be lists")
    if not lit["per"]:
        raise qo.ShapeError("'per' must be nonempty")
    pre = [qo.parse_element(spec, e) for e in lit["pre"]]
    per = [qo.parse_element(spec, e) for e in lit["per"]]
    return canonicalize(pre, per)


def to_literal(spec, X: UPSeq) -> dict:
    if spec is None:
        return {"pre": list(X.pre), "per": list(X.per)}
    return {"pre": [qo.element_to_literal(spec, e) for e in X.pre],
            "per": [qo.element_to_literal(spec, e) for e in X.per]}


def format_up(spec, X: UPSeq) -> str:
    fmt = (lambda e: str(e)) if spec is None else (lambda e: qo.format_element(spec, e))
    pre = " ".join(fmt(e) for e in X.pre)
    per = " ".join(fmt(e) for e in X.per)
    return f"{pre} ({per})^w" if pre else f"({per})^w"


# -- queries ----------------------------------------------------------------

def is_bad(spec, X: UPSeq) -> bool:
    """X(k) is never <= X(k+1)."""
    leq = spec.leq
    return not any(leq(X.at(k), X.at(k + 1)) for k in range(X.window))


def phi_pattern(spec, X: UPSeq, phi: Callable[..., bool], arity: int = 2) -> UPSeq:
    """Binary word k -> 1 iff phi(X(k), ..., X(k+arity-1))."""
    vals = [int(bool(phi(*(X.at(k + j) for j in range(arity)))))
            for k in range(X.window)]
    return from_values(vals, len(X.pre), len(X.per))


def entry_time(X: UPSeq, member: Callable[[UPSeq], bool]) -> Optional[int]:
    """Least k with member(S^k X), or None if no shift is a member.

    ``member`` must be shift-closed, so one cycle past the preperiod decides.
    """
    for k, Z in enumerate(X.states()):
        if member(Z):
            return k
    return None
