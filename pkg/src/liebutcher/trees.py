"""Planar rooted trees and ordered forests.

Trees are written in a bracket grammar: "[]" is a single node and
"[t1 t2 ... tk]" is a root whose ordered children are t1..tk.  A forest is
a space-separated sequence of trees; the empty forest is written "1".
Planarity means child order matters: "[[[]] []]" and "[[] [[]]]" are
different trees.

The canonical order used for enumeration and printing is graded by degree
(number of nodes), ties broken lexicographically on the rendered string
with '[' < ']' < ' '.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DegreeCapError",
    "EMPTY_FOREST",
    "Forest",
    "ForestParseError",
    "LEAF",
    "Tree",
    "enumerate_forests",
    "enumerate_trees",
    "forest_sort_key",
    "parse_forest",
    "render_forest",
    "render_tree",
    "tree_sort_key",
]

# Enumeration refuses degrees above this unless the caller raises the cap;
# counts grow like Catalan numbers, so unbounded requests are a footgun.
DEFAULT_DEGREE_CAP = 8


class ForestParseError(ValueError):
    """Malformed forest string; `offset` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class DegreeCapError(ValueError):
    """An enumeration request exceeded the configured degree cap."""


@dataclass(frozen=True)
class Tree:
    """A planar rooted tree; the empty child tuple is a single node."""

    children: tuple["Tree", ...] = ()
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "degree", 1 + sum(c.degree for c in self.children))

    def __repr__(self) -> str:
        return f"Tree({render_tree(self)!r})"


@dataclass(frozen=True)
class Forest:
    """An ordered (possibly empty) sequence of planar rooted trees."""

    trees: tuple[Tree, ...] = ()
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(self, "degree", sum(t.degree for t in self.trees))

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __repr__(self) -> str:
        return f"Forest({render_forest(self)!r})"


LEAF = Tree()
EMPTY_FOREST = Forest()


@lru_cache(maxsize=None)
def render_tree(t: Tree) -> str:
    return "[" + " ".join(render_tree(c) for c in t.children) + "]"


def render_forest(f: Forest) -> str:
    """Canonical text form: single spaces between siblings, "1" when empty."""
    if not f.trees:
        return "1"
    return " ".join(render_tree(t) for t in f.trees)


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_tree(text: str, i: int) -> tuple[Tree, int]:
    # caller guarantees text[i] == "["
    start = i
    i += 1
    children = []
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            raise ForestParseError("unbalanced brackets: unclosed '['", start)
        ch = text[i]
        if ch == "]":
            return Tree(tuple(children)), i + 1
        if ch == "[":
            child, i = _parse_tree(text, i)
            children.append(child)
        else:
            raise ForestParseError(f"stray character {ch!r}", i)


def parse_forest(text: str) -> Forest:
    """Parse the bracket grammar: Forest := "1" | Tree+, Tree := "[" Tree* "]".

    Whitespace between siblings is optional; render_forest(parse_forest(s))
    is the canonical form of s.
    """
    i = _skip_ws(text, 0)
    if i >= len(text):
        raise ForestParseError("empty input", i)
    if text[i] == "1":
        j = _skip_ws(text, i + 1)
        if j < len(text):
            raise ForestParseError(f"stray character {text[j]!r} after empty forest", j)
        return EMPTY_FOREST
    trees = []
    while i < len(text):
        if text[i] != "[":
            raise ForestParseError(f"stray character {text[i]!r}", i)
        t, i = _parse_tree(text, i)
        trees.append(t)
        i = _skip_ws(text, i)
    return Forest(tuple(trees))


_CHAR_RANK = {"[": 0, "]": 1, " ": 2}


def tree_sort_key(t: Tree) -> tuple[int, tuple[int, ...]]:
    return (t.degree, tuple(_CHAR_RANK[c] for c in render_tree(t)))


def forest_sort_key(f: Forest) -> tuple[int, tuple[int, ...]]:
    if not f.trees:
        return (0, ())
    return (f.degree, tuple(_CHAR_RANK[c] for c in render_forest(f)))


def _check_cap(n: int, cap: int | None) -> None:
    limit = DEFAULT_DEGREE_CAP if cap is None else cap
    if n > limit:
        raise DegreeCapError(
            f"degree {n} exceeds the enumeration cap {limit}; pass a larger cap to proceed"
        )


@lru_cache(maxsize=None)
def _trees_raw(n: int) -> tuple[Tree, ...]:
    # a degree-n tree is a root over a forest of total degree n-1
    return tuple(Tree(f.trees) for f in _forests_raw(n - 1))


@lru_cache(maxsize=None)
def _forests_raw(n: int) -> tuple[Forest, ...]:
    if n == 0:
        return (EMPTY_FOREST,)
    out = []
    for k in range(1, n + 1):
        for t in _trees_raw(k):
            for rest in _forests_raw(n - k):
                out.append(Forest((t,) + rest.trees))
    return tuple(out)


def enumerate_trees(n: int, cap: int | None = None) -> list[Tree]:
    """All planar rooted trees of degree n, in canonical order."""
    if n < 1:
        raise ValueError("there is no tree of degree < 1")
    _check_cap(n, cap)
    return sorted(_trees_raw(n), key=tree_sort_key)


def enumerate_forests(n: int, cap: int | None = None) -> list[Forest]:
    """All ordered forests of total degree n, in canonical order."""
    if n < 0:
        raise ValueError("forest degree must be >= 0")
    _check_cap(n, cap)
    return sorted(_forests_raw(n), key=forest_sort_key)
