"""Left grafting on planar trees and its lift to ordered forests.

Tree-level grafting attaches the left operand's root by a new edge at every
node of the right operand, always as the new leftmost branch.  The lift to
forests follows the two defining rules, for a single tree x,

    x |> (B . c) = (x |> B) . c + B . (x |> c)      (peel right letters)
    (x . A) |> B = x |> (A |> B) - (x |> A) |> B    (peel left letters)

closed off by I |> B = B and A |> I = <A, I> I.  The Grossman-Larson
product is assembled from the deshuffle coproduct,

    A * B = sum over splits A -> (A1, A2) of A1 . (A2 |> B),

which restricts to a.b + a |> b on single trees and is associative with
unit I.  Everything here is exact and degree-additive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import Series, concat, deshuffle_forest, min_trunc
from .trees import Forest, Tree, enumerate_trees, render_forest, tree_sort_key

__all__ = [
    "AxiomReport",
    "GraftExtension",
    "associator",
    "bracket",
    "check_postlie_axioms",
    "dbracket",
    "forget_planarity",
    "gl_product",
    "graft",
    "graft_attachments",
    "symmetrized_associator_defect",
    "triangleright",
]


@lru_cache(maxsize=None)
def graft_attachments(t1: Tree, t2: Tree) -> tuple[Tree, ...]:
    """Trees obtained by attaching t1 at each node of t2 (root first).

    One entry per node of t2, repeats kept, so the list length equals
    degree(t2).
    """
    out = [Tree((t1,) + t2.children)]
    for i, child in enumerate(t2.children):
        for sub in graft_attachments(t1, child):
            out.append(Tree(t2.children[:i] + (sub,) + t2.children[i + 1 :]))
    return tuple(out)


def graft(t1: Tree, t2: Tree) -> Series:
    """Left grafting of trees: the sum over all attachment nodes of t2."""
    acc: dict[Forest, Fraction] = {}
    for t in graft_attachments(t1, t2):
        f = Forest((t,))
        acc[f] = acc.get(f, Fraction(0)) + 1
    return Series(acc)


class GraftExtension:
    """Lift of a tree-level grafting rule to ordered forests.

    The attachments argument exists so tests can substitute a corrupted
    tree product; the module default drives triangleright and gl_product.
    Per-instance caches are plain dicts, safe under the GIL.
    """

    def __init__(self, attachments=graft_attachments):
        self._attach = attachments
        self._cache: dict[tuple[Forest, Forest], tuple] = {}
        self._gl_cache: dict[tuple[Forest, Forest], tuple] = {}

    def basis(self, w: Forest, v: Forest) -> tuple[tuple[Forest, Fraction], ...]:
        """w |> v for basis forests, as (forest, coefficient) pairs."""
        key = (w, v)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        acc: dict[Forest, Fraction] = {}
        if not w.trees:
            acc[v] = Fraction(1)
        elif not v.trees:
            pass  # <w, I> = 0 once w is non-empty
        elif len(w.trees) > 1:
            x = Forest(w.trees[:1])
            rest = Forest(w.trees[1:])
            for f, c in self.basis(rest, v):
                for g, d in self.basis(x, f):
                    acc[g] = acc.get(g, Fraction(0)) + c * d
            for f, c in self.basis(x, rest):
                for g, d in self.basis(f, v):
                    acc[g] = acc.get(g, Fraction(0)) - c * d
        elif len(v.trees) == 1:
            for t in self._attach(w.trees[0], v.trees[0]):
                f = Forest((t,))
                acc[f] = acc.get(f, Fraction(0)) + 1
        else:
            head = Forest(v.trees[:-1])
            tail = v.trees[-1]
            for f, c in self.basis(w, head):
                g = Forest(f.trees + (tail,))
                acc[g] = acc.get(g, Fraction(0)) + c
            for f, c in self.basis(w, Forest((tail,))):
                g = Forest(head.trees + f.trees)
                acc[g] = acc.get(g, Fraction(0)) + c
        pairs = tuple((f, c) for f, c in acc.items() if c != 0)
        self._cache[key] = pairs
        return pairs

    def gl_basis(self, w: Forest, v: Forest) -> tuple[tuple[Forest, Fraction], ...]:
        """w * v for basis forests via the deshuffle coproduct."""
        key = (w, v)
        cached = self._gl_cache.get(key)
        if cached is not None:
            return cached
        acc: dict[Forest, Fraction] = {}
        for (left, right), mult in deshuffle_forest(w):
            for f, c in self.basis(right, v):
                g = Forest(left.trees + f.trees)
                acc[g] = acc.get(g, Fraction(0)) + mult * c
        pairs = tuple((f, c) for f, c in acc.items() if c != 0)
        self._gl_cache[key] = pairs
        return pairs


_DEFAULT_EXTENSION = GraftExtension()


def _bilinear(a: Series, b: Series, basis_fn) -> Series:
    trunc = min_trunc(a.trunc, b.trunc)
    acc: dict[Forest, Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            if trunc is not None and wa.degree + wb.degree > trunc:
                continue
            scale = ca * cb
            for f, c in basis_fn(wa, wb):
                acc[f] = acc.get(f, Fraction(0)) + scale * c
    return Series(acc, trunc)


def triangleright(a: Series, b: Series, extension: GraftExtension | None = None) -> Series:
    """The grafting action of a on b, lifted to series of forests."""
    ext = extension if extension is not None else _DEFAULT_EXTENSION
    return _bilinear(a, b, ext.basis)


def bracket(a: Series, b: Series) -> Series:
    """Concatenation commutator a.b - b.a."""
    return concat(a, b) - concat(b, a)


def dbracket(a: Series, b: Series, extension: GraftExtension | None = None) -> Series:
    """The second Lie bracket: a |> b - b |> a + [a, b]."""
    return (
        triangleright(a, b, extension)
        - triangleright(b, a, extension)
        + bracket(a, b)
    )


def gl_product(a: Series, b: Series, extension: GraftExtension | None = None) -> Series:
    """Grossman-Larson product of series."""
    ext = extension if extension is not None else _DEFAULT_EXTENSION
    return _bilinear(a, b, ext.gl_basis)


def associator(a: Series, b: Series, c: Series, extension: GraftExtension | None = None) -> Series:
    """a |> (b |> c) - (a |> b) |> c."""
    return triangleright(a, triangleright(b, c, extension), extension) - triangleright(
        triangleright(a, b, extension), c, extension
    )


@dataclass
class AxiomReport:
    passed: bool
    triples: int
    witness: dict | None = None


def _witness(name: str, x: Tree, y: Tree, z: Tree, lhs: Series, rhs: Series) -> dict:
    return {
        "axiom": name,
        "x": render_forest(Forest((x,))),
        "y": render_forest(Forest((y,))),
        "z": render_forest(Forest((z,))),
        "lhs": lhs.to_json()["terms"],
        "rhs": rhs.to_json()["terms"],
    }


def check_postlie_axioms(max_degree: int, extension: GraftExtension | None = None) -> AxiomReport:
    """Verify the two defining identities on basis-tree triples.

    For all trees x, y, z with total degree <= max_degree:
      bracket rule:      x |> [y,z] = [x |> y, z] + [y, x |> z]
      associator rule:   [x,y] |> z = a(x,y,z) - a(y,x,z)
    Stops at the first violation and reports it.
    """
    trees: list[Tree] = []
    for d in range(1, max_degree - 1):
        trees.extend(enumerate_trees(d))
    singles = {t: Series.of(t) for t in trees}
    count = 0
    for x in trees:
        sx = singles[x]
        for y in trees:
            if x.degree + y.degree + 1 > max_degree:
                continue
            sy = singles[y]
            for z in trees:
                if x.degree + y.degree + z.degree > max_degree:
                    continue
                sz = singles[z]
                lhs1 = triangleright(sx, bracket(sy, sz), extension)
                rhs1 = bracket(triangleright(sx, sy, extension), sz) + bracket(
                    sy, triangleright(sx, sz, extension)
                )
                if lhs1 != rhs1:
                    return AxiomReport(False, count, _witness("bracket_rule", x, y, z, lhs1, rhs1))
                lhs2 = triangleright(bracket(sx, sy), sz, extension)
                rhs2 = associator(sx, sy, sz, extension) - associator(sy, sx, sz, extension)
                if lhs2 != rhs2:
                    return AxiomReport(
                        False, count, _witness("associator_rule", x, y, z, lhs2, rhs2)
                    )
                count += 1
    return AxiomReport(True, count)


def _symmetrize_tree(t: Tree) -> Tree:
    kids = sorted((_symmetrize_tree(c) for c in t.children), key=tree_sort_key)
    return Tree(tuple(kids))


def forget_planarity(a: Series) -> Series:
    """Project onto non-planar normal form: children and forest letters sorted.

    Coefficients of trees that differ only by branch order merge, which is
    the quotient where left grafting degenerates to the symmetric-associator
    (pre-Lie) product.
    """
    acc: dict[Forest, Fraction] = {}
    for f, c in a.terms.items():
        ts = sorted((_symmetrize_tree(t) for t in f.trees), key=tree_sort_key)
        g = Forest(tuple(ts))
        acc[g] = acc.get(g, Fraction(0)) + c
    return Series(acc, a.trunc)


def symmetrized_associator_defect(
    x: Tree, y: Tree, z: Tree, extension: GraftExtension | None = None
) -> Series:
    """Planarity-forgetting image of a(x,y,z) - a(y,x,z); zero for grafting."""
    sx, sy, sz = Series.of(x), Series.of(y), Series.of(z)
    return forget_planarity(
        associator(sx, sy, sz, extension) - associator(sy, sx, sz, extension)
    )
