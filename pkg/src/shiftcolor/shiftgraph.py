"""Proper 3-colorings of shift orbits of UP sequences, and the rules that
transport a coloring backwards along factor maps.

A *colorer* is any callable ``UPSeq -> int`` with values in {0, 1, 2}. It
is proper on a shift-closed family when ``c(X) != c(S(X))`` throughout.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from . import qo
from .upseq import UPSeq, entry_time

COLORS = (0, 1, 2)


class ShiftFixedError(ValueError):
    """The sequence is (eventually) constant, so S has a fixed point there."""


class FactorIdentityError(AssertionError):
    """A map claimed to commute with the shift does not."""


class NeverEntersError(ValueError):
    """tail_color was asked about a point that never reaches its piece."""


def check_color(c: int) -> int:
    if c not in COLORS:
        raise ValueError(f"color out of range: {c!r}")
    return c


def least_rotation(per: tuple, key: Callable) -> int:
    """Offset i such that per = base[i:] + base[:i], base the least rotation."""
    p = len(per)
    keys = [key(e) for e in per]
    rots = [tuple(keys[j:] + keys[:j]) for j in range(p)]
    j = min(range(p), key=rots.__getitem__)
    # per starts at index j of itself; base = rotation j, so per = base shifted by -j
    return (p - j) % p


def cycle_color(X: UPSeq, spec=None) -> int:
    """Color a UP point from its position on its cycle.

    On the cycle, the offset i from the least rotation gets i mod 2, except
    the last offset of an odd cycle which gets 2. Each preperiod symbol adds
    one step: color(X) = color(S(X)) + 1 mod 3.
    """
    p = len(X.per)
    if p == 1:
        raise ShiftFixedError(f"eventually constant sequence has no proper cycle color")
    key = (lambda e: e) if spec is None else (lambda e: qo.sort_key(spec, e))
    i = least_rotation(X.per, key)
    if p % 2 == 0 or i < p - 1:
        c = i % 2
    else:
        c = 2
    return (c + len(X.pre)) % 3


def pullback_color(f: Callable[[UPSeq], UPSeq], base_color: Callable[[UPSeq], int],
                   audit: bool = False) -> Callable[[UPSeq], int]:
    """X -> base_color(f(X)); proper whenever f commutes with the shift."""
    def colorer(X):
        Y = f(X)
        if audit and f(X.shift()) != Y.shift():
            raise FactorIdentityError(f"f(S X) != S f(X) at {X!r}")
        return base_color(Y)
    return colorer


def tail_color(piece_member: Callable[[UPSeq], bool],
               piece_color: Callable[[UPSeq], int],
               on_step: Optional[Callable[[int], None]] = None) -> Callable[[UPSeq], int]:
    """Extend a coloring of a shift-closed piece to every point that
    eventually enters it: color(X) = color(S(X)) + 1 mod 3 outside the piece.
    """
    def colorer(X):
        e = entry_time(X, piece_member)
        if e is None:
            raise NeverEntersError(f"{X!r} never enters the piece")
        if e and on_step is not None:
            on_step(e)
        return (piece_color(X.shift_by(e)) + e) % 3
    return colorer


def monotone_pullback_check(f: Callable, spec_src, spec_dst,
                            pairs: Iterable[tuple]) -> dict:
    """Check q !<= p  =>  f(q) !<= f(p) on the given (q, p) pairs."""
    checked = 0
    violations = []
    for q, p in pairs:
        checked += 1
        if spec_src.leq(q, p):
            continue
        fq, fp = f(q), f(p)
        if spec_dst.leq(fq, fp):
            violations.append({
                "q": qo.element_to_literal(spec_src, q),
                "p": qo.element_to_literal(spec_src, p),
                "f(q)": qo.element_to_literal(spec_dst, fq),
                "f(p)": qo.element_to_literal(spec_dst, fp),
            })
    return {"checked": checked, "violations": violations,
            "passed": not violations}
