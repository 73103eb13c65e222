"""Quasi-order specifications built from constructors, and their carriers.

Element representation (interpreted relative to the owning spec):

    finite          atom index (int)
    union           (0, x) for the left copy, (1, x) for the right copy
    product         (x, y)
    seq / linord    tuple of elements
    tree1 / treem   (label, children) with children a tuple of trees sorted
                    by canonical key, so equal tuples mean isomorphic trees
    finset          tuple of distinct elements sorted by canonical key

All elements are plain nested tuples and ints, hence hashable and immutable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from . import embed

KINDS = ("finite", "union", "product", "seq", "tree1", "treem", "finset", "linord")
UNARY_KINDS = ("seq", "tree1", "treem", "finset", "linord")
SEQ_LIKE = ("seq", "linord")
TREE_KINDS = ("tree1", "treem")

LEFT, RIGHT = 0, 1


class SpecError(ValueError):
    """Malformed spec document or a table that is not a quasi-order."""


class ShapeError(ValueError):
    """Element does not match the shape of its spec."""


@dataclass(frozen=True, eq=False)
class QoSpec:
    kind: str
    names: tuple = ()
    table: tuple = ()
    left: Optional["QoSpec"] = None
    right: Optional["QoSpec"] = None
    of: Optional["QoSpec"] = None
    _leq_cache: dict = field(default_factory=dict, repr=False)
    _enc_cache: dict = field(default_factory=dict, repr=False)
    _views: dict = field(default_factory=dict, repr=False)

    def leq(self, x, y) -> bool:
        key = (x, y)
        cache = self._leq_cache
        try:
            return cache[key]
        except KeyError:
            pass
        r = _leq(self, x, y)
        cache[key] = r
        return r

    def to_json(self) -> dict:
        if self.kind == "finite":
            return {"kind": "finite", "names": list(self.names),
                    "leq": [list(row) for row in self.table]}
        if self.kind in ("union", "product"):
            return {"kind": self.kind, "left": self.left.to_json(),
                    "right": self.right.to_json()}
        return {"kind": self.kind, "of": self.of.to_json()}

    def describe(self) -> str:
        if self.kind == "finite":
            return "Finite(" + ",".join(self.names) + ")"
        if self.kind == "union":
            return f"Union({self.left.describe()},{self.right.describe()})"
        if self.kind == "product":
            return f"Product({self.left.describe()},{self.right.describe()})"
        label = {"seq": "Seq", "tree1": "Tree1", "treem": "TreeM",
                 "finset": "FinSet", "linord": "LinOrd"}[self.kind]
        return f"{label}({self.of.describe()})"

    def __eq__(self, other):
        if not isinstance(other, QoSpec):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self):
        return hash(json.dumps(self.to_json(), sort_keys=True))


# -- constructors -----------------------------------------------------------

def finite(names: Sequence[str], table: Sequence[Sequence[bool]]) -> QoSpec:
    names = tuple(names)
    table = tuple(tuple(bool(v) for v in row) for row in table)
    _validate_table(names, table)
    return QoSpec("finite", names=names, table=table)


def antichain(names: Sequence[str]) -> QoSpec:
    n = len(names)
    return finite(names, [[i == j for j in range(n)] for i in range(n)])


def chain(names: Sequence[str]) -> QoSpec:
    """Linear order names[0] < names[1] < ..."""
    n = len(names)
    return finite(names, [[i <= j for j in range(n)] for i in range(n)])


def from_pairs(names: Sequence[str], pairs: Iterable[tuple]) -> QoSpec:
    """Reflexive closure of the given (lower, upper) name pairs; must be transitive."""
    idx = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    table = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in pairs:
        table[idx[lo]][idx[hi]] = True
    return finite(names, table)


def union(left: QoSpec, right: QoSpec) -> QoSpec:
    return QoSpec("union", left=left, right=right)


def product(left: QoSpec, right: QoSpec) -> QoSpec:
    return QoSpec("product", left=left, right=right)


def seq(of: QoSpec) -> QoSpec:
    return QoSpec("seq", of=of)


def tree1(of: QoSpec) -> QoSpec:
    return QoSpec("tree1", of=of)


def treem(of: QoSpec) -> QoSpec:
    return QoSpec("treem", of=of)


def finset(of: QoSpec) -> QoSpec:
    return QoSpec("finset", of=of)


def linord(of: QoSpec) -> QoSpec:
    return QoSpec("linord", of=of)


def _validate_table(names, table):
    n = len(names)
    if len(set(names)) != n:
        dup = sorted({x for x in names if names.count(x) > 1})
        raise SpecError(f"duplicate atom names: {dup}")
    if n > 255:
        raise SpecError("at most 255 atoms are supported")
    if len(table) != n or any(len(row) != n for row in table):
        raise SpecError(f"leq table must be {n}x{n}")
    for i in range(n):
        if not table[i][i]:
            raise SpecError(f"not reflexive: {names[i]} <= {names[i]} missing")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[i][j] and table[j][k] and not table[i][k]:
            raise SpecError(
                f"not transitive: {names[i]} <= {names[j]} <= {names[k]} "
                f"but not {names[i]} <= {names[k]}")


# -- parsing ----------------------------------------------------------------

def parse_spec(text) -> QoSpec:
    """Parse a JSON spec document (string or already-decoded object)."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
    else:
        doc = text
    return _spec_from_doc(doc, depth=0)


def _spec_from_doc(doc, depth):
    if depth > 64:
        raise SpecError("constructor tree too deep")
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SpecError(f"expected an object with a 'kind' field, got {doc!r}")
    kind = doc["kind"]
    if kind == "finite":
        names = doc.get("names")
        table = doc.get("leq")
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            raise SpecError("finite spec needs 'names': list of strings")
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise SpecError("finite spec needs 'leq': boolean matrix")
        if any(not isinstance(v, bool) for r in table for v in r):
            raise SpecError("'leq' entries must be booleans")
        return finite(names, table)
    if kind in ("union", "product"):
        if "left" not in doc or "right" not in doc:
            raise SpecError(f"{kind} spec needs 'left' and 'right'")
        return QoSpec(kind, left=_spec_from_doc(doc["left"], depth + 1),
                      right=_spec_from_doc(doc["right"], depth + 1))
    if kind in UNARY_KINDS:
        if "of" not in doc:
            raise SpecError(f"{kind} spec needs 'of'")
        return QoSpec(kind, of=_spec_from_doc(doc["of"], depth + 1))
    raise SpecError(f"unknown kind {kind!r}")


def parse_element(spec: QoSpec, lit: Any):
    """Convert a JSON element literal into the internal representation."""
    k = spec.kind
    if k == "finite":
        if not isinstance(lit, str):
            raise ShapeError(f"expected atom name, got {lit!r}")
        try:
            return spec.names.index(lit)
        except ValueError:
            raise ShapeError(f"unknown atom {lit!r}") from None
    if not isinstance(lit, dict) or len(lit) != 1:
        raise ShapeError(f"expected a single-key object for {k}, got {lit!r}")
    (tag, body), = lit.items()
    if k == "union":
        if tag == "L":
            return (LEFT, parse_element(spec.left, body))
        if tag == "R":
            return (RIGHT, parse_element(spec.right, body))
        raise ShapeError(f"union literal needs 'L' or 'R', got {tag!r}")
    if k == "product":
        if tag != "pair" or not isinstance(body, list) or len(body) != 2:
            raise ShapeError(f"product literal needs 'pair' of two, got {lit!r}")
        return (parse_element(spec.left, body[0]), parse_element(spec.right, body[1]))
    if k in SEQ_LIKE:
        if tag != "seq" or not isinstance(body, list):
            raise ShapeError(f"sequence literal needs 'seq' list, got {lit!r}")
        return tuple(parse_element(spec.of, e) for e in body)
    if k in TREE_KINDS:
        if tag != "tree":
            raise ShapeError(f"tree literal needs 'tree', got {lit!r}")
        return _parse_tree(spec, body)
    if k == "finset":
        if tag != "set" or not isinstance(body, list):
            raise ShapeError(f"set literal needs 'set' list, got {lit!r}")
        items = [parse_element(spec.of, e) for e in body]
        return make_set(spec, items)
    raise ShapeError(f"unknown kind {k!r}")


def _parse_tree(spec, body):
    if not isinstance(body, dict) or "label" not in body:
        raise ShapeError(f"tree node needs 'label', got {body!r}")
    children = body.get("children", [])
    if not isinstance(children, list):
        raise ShapeError("tree 'children' must be a list")
    kids = []
    for c in children:
        if isinstance(c, dict) and set(c) == {"tree"}:
            c = c["tree"]
        kids.append(_parse_tree(spec, c))
    return make_tree(spec, parse_element(spec.of, body["label"]), kids)


def element_to_literal(spec: QoSpec, x) -> Any:
    k = spec.kind
    if k == "finite":
        return spec.names[x]
    if k == "union":
        side = spec.left if x[0] == LEFT else spec.right
        return {"L" if x[0] == LEFT else "R": element_to_literal(side, x[1])}
    if k == "product":
        return {"pair": [element_to_literal(spec.left, x[0]),
                         element_to_literal(spec.right, x[1])]}
    if k in SEQ_LIKE:
        return {"seq": [element_to_literal(spec.of, e) for e in x]}
    if k in TREE_KINDS:
        return {"tree": _tree_literal(spec, x)}
    if k == "finset":
        return {"set": [element_to_literal(spec.of, e) for e in x]}
    raise ShapeError(f"unknown kind {k!r}")


def _tree_literal(spec, t):
    label, kids = t
    return {"label": element_to_literal(spec.of, label),
            "children": [_tree_literal(spec, c) for c in kids]}


def format_element(spec: QoSpec, x) -> str:
    """Compact human-readable form, e.g. ``[a,b]`` or ``a(b,c)``."""
    k = spec.kind
    if k == "finite":
        return spec.names[x]
    if k == "union":
        side = spec.left if x[0] == LEFT else spec.right
        return ("L:" if x[0] == LEFT else "R:") + format_element(side, x[1])
    if k == "product":
        return f"({format_element(spec.left, x[0])},{format_element(spec.right, x[1])})"
    if k in SEQ_LIKE:
        return "[" + ",".join(format_element(spec.of, e) for e in x) + "]"
    if k == "finset":
        return "{" + ",".join(format_element(spec.of, e) for e in x) + "}"
    label, kids = x
    s = format_element(spec.of, label)
    if kids:
        s += "(" + ",".join(format_element(spec, c) for c in kids) + ")"
    return s


# -- element construction and validation ------------------------------------

def make_tree(spec: QoSpec, label, children: Iterable = ()):
    kids = sorted(children, key=lambda c: sort_key(spec, c))
    return (label, tuple(kids))


def make_set(spec: QoSpec, items: Iterable):
    """Finite set of ``spec.of`` elements, duplicates removed."""
    uniq = {sort_key(spec.of, e): e for e in items}
    return tuple(uniq[k] for k in sorted(uniq))


def check_element(spec: QoSpec, x) -> None:
    """Raise ShapeError unless ``x`` is a canonical element of ``spec``."""
    k = spec.kind
    if k == "finite":
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(spec.names):
            raise ShapeError(f"bad atom {x!r} for {spec.describe()}")
    elif k == "union":
        if not (isinstance(x, tuple) and len(x) == 2 and x[0] in (LEFT, RIGHT)):
            raise ShapeError(f"bad union element {x!r}")
        check_element(spec.left if x[0] == LEFT else spec.right, x[1])
    elif k == "product":
        if not (isinstance(x, tuple) and len(x) == 2):
            raise ShapeError(f"bad pair {x!r}")
        check_element(spec.left, x[0])
        check_element(spec.right, x[1])
    elif k in SEQ_LIKE:
        if not isinstance(x, tuple):
            raise ShapeError(f"bad sequence {x!r}")
        for e in x:
            check_element(spec.of, e)
    elif k == "finset":
        if not isinstance(x, tuple):
            raise ShapeError(f"bad set {x!r}")
        for e in x:
            check_element(spec.of, e)
        keys = [sort_key(spec.of, e) for e in x]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ShapeError("set elements must be distinct and in canonical order")
    elif k in TREE_KINDS:
        if not (isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], tuple)):
            raise ShapeError(f"bad tree {x!r}")
        check_element(spec.of, x[0])
        for c in x[1]:
            check_element(spec, c)
        keys = [sort_key(spec, c) for c in x[1]]
        if any(a > b for a, b in zip(keys, keys[1:])):
            raise ShapeError("tree children must be in canonical order")
    else:
        raise ShapeError(f"unknown kind {k!r}")


def size(spec: QoSpec, x) -> int:
    """Atom count, where every container slot counts at least one.

    So ``[a,b,a]`` has size 3, ``[]`` size 0 and ``[[],[]]`` size 2.
    """
    k = spec.kind
    if k == "finite":
        return 1
    if k == "union":
        return size(spec.left if x[0] == LEFT else spec.right, x[1])
    if k == "product":
        return size(spec.left, x[0]) + size(spec.right, x[1])
    if k in SEQ_LIKE or k == "finset":
        return sum(max(1, size(spec.of, e)) for e in x)
    label, kids = x
    return max(1, size(spec.of, label)) + sum(size(spec, c) for c in kids)


# -- canonical encoding -----------------------------------------------------

def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def canonical_encode(spec: QoSpec, x) -> bytes:
    """Prefix-free, injective byte encoding of an element."""
    cache = spec._enc_cache
    try:
        return cache[x]
    except KeyError:
        pass
    k = spec.kind
    if k == "finite":
        enc = bytes([x])
    elif k == "union":
        side = spec.left if x[0] == LEFT else spec.right
        enc = bytes([x[0]]) + canonical_encode(side, x[1])
    elif k == "product":
        enc = canonical_encode(spec.left, x[0]) + canonical_encode(spec.right, x[1])
    elif k in SEQ_LIKE or k == "finset":
        enc = _varint(len(x)) + b"".join(canonical_encode(spec.of, e) for e in x)
    else:
        label, kids = x
        enc = (canonical_encode(spec.of, label) + _varint(len(kids))
               + b"".join(canonical_encode(spec, c) for c in kids))
    cache[x] = enc
    return enc


def sort_key(spec: QoSpec, x) -> tuple:
    """Length-lexicographic key on canonical encodings."""
    enc = canonical_encode(spec, x)
    return (len(enc), enc)


# -- order ------------------------------------------------------------------

def leq(spec: QoSpec, x, y) -> bool:
    return spec.leq(x, y)


def _leq(spec, x, y):
    k = spec.kind
    if k == "finite":
        return spec.table[x][y]
    if k == "union":
        if x[0] != y[0]:
            return False
        side = spec.left if x[0] == LEFT else spec.right
        return side.leq(x[1], y[1])
    if k == "product":
        return spec.left.leq(x[0], y[0]) and spec.right.leq(x[1], y[1])
    if k in SEQ_LIKE:
        return embed.le_higman(spec.of, x, y)[0]
    if k == "tree1":
        return embed.le_tree_inj(spec.of, x, y)[0]
    if k == "treem":
        return embed.le_tree_mono(spec.of, x, y)[0]
    if k == "finset":
        return embed.le_finset(spec.of, x, y)
    raise ShapeError(f"unknown kind {k!r}")


# -- enumeration ------------------------------------------------------------

def enumerate_elements(spec: QoSpec, size_bound: int) -> list:
    """All elements of size <= size_bound, sorted by canonical key."""
    out = []
    memo: dict = {}
    for n in range(size_bound + 1):
        out.extend(_exact(spec, n, memo))
    return sorted(out, key=lambda e: sort_key(spec, e))


def _weighted(spec, w, memo):
    # items occupying exactly w container slots
    if w == 1:
        return _exact(spec, 0, memo) + _exact(spec, 1, memo)
    return _exact(spec, w, memo)


def _exact(spec, n, memo):
    key = (id(spec), n)
    if key in memo:
        return memo[key]
    k = spec.kind
    res: list = []
    if k == "finite":
        if n == 1:
            res = list(range(len(spec.names)))
    elif k == "union":
        res = ([(LEFT, e) for e in _exact(spec.left, n, memo)]
               + [(RIGHT, e) for e in _exact(spec.right, n, memo)])
    elif k == "product":
        for i in range(n + 1):
            for a in _exact(spec.left, i, memo):
                for b in _exact(spec.right, n - i, memo):
                    res.append((a, b))
    elif k in SEQ_LIKE:
        if n == 0:
            res = [()]
        else:
            for w in range(1, n + 1):
                heads = _weighted(spec.of, w, memo)
                for tail in _exact(spec, n - w, memo):
                    res.extend((h,) + tail for h in heads)
    elif k == "finset":
        pool = []
        for w in range(1, n + 1):
            pool.extend((w, e) for e in _weighted(spec.of, w, memo))
        pool.sort(key=lambda we: sort_key(spec.of, we[1]))
        res = [tuple(e for _, e in combo) for combo in _subsets_with_weight(pool, n)]
    elif k in TREE_KINDS:
        for w in range(1, n + 1):
            labels = _weighted(spec.of, w, memo)
            for kids in _tree_forests(spec, n - w, memo):
                res.extend((lab, kids) for lab in labels)
    memo[key] = res
    return res


def _subsets_with_weight(pool, n, start=0):
    if n == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        w, e = pool[i]
        if w <= n:
            for rest in _subsets_with_weight(pool, n - w, i + 1):
                yield ((w, e),) + rest


def _tree_forests(spec, n, memo):
    """Multisets of trees of total size n, as canonically sorted tuples."""
    if n == 0:
        return [()]
    pool = []
    for w in range(1, n + 1):
        pool.extend((w, t) for t in _exact(spec, w, memo))
    pool.sort(key=lambda wt: sort_key(spec, wt[1]))
    out = []

    def rec(rem, start, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(pool)):
            w, t = pool[i]
            if w <= rem:
                acc.append(t)
                rec(rem - w, i, acc)
                acc.pop()

    rec(n, 0, [])
    return out


def seq_view(spec: QoSpec) -> QoSpec:
    """Seq(spec.of), shared per spec so its caches persist across calls."""
    v = spec._views.get("seq")
    if v is None:
        v = spec._views["seq"] = seq(spec.of)
    return v


# -- trees ------------------------------------------------------------------

def tree_nodes(t) -> tuple:
    """Flatten a tree in preorder: (labels, parents) with parent -1 at the root."""
    labels, parents = [], []

    def walk(node, parent):
        i = len(labels)
        labels.append(node[0])
        parents.append(parent)
        for c in node[1]:
            walk(c, i)

    walk(t, -1)
    return labels, parents


def linearize(t) -> tuple:
    """Preorder label sequence; siblings already sit in canonical order."""
    return tuple(tree_nodes(t)[0])
