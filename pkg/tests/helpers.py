"""Shared test utilities: short builders, independent oracles, generators."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from liebutcher.postlie import bracket
from liebutcher.series import Series
from liebutcher.trees import Forest, Tree, enumerate_trees, parse_forest


def F(text: str) -> Forest:
    return parse_forest(text)


def T(text: str) -> Tree:
    forest = parse_forest(text)
    assert len(forest.trees) == 1, f"{text!r} is not a single tree"
    return forest.trees[0]


def S(text: str, coeff=1, trunc=None) -> Series:
    return Series.of(text, coeff, trunc)


def brute_force_trees(n: int) -> set[Tree]:
    """Independent enumeration oracle: filter all balanced bracket strings.

    A tree of degree n is a balanced string of n '[' and n ']' that starts
    with '[' and first returns to depth zero only at the end.
    """
    found = set()
    for bits in itertools.product("[]", repeat=2 * n):
        depth = 0
        ok = True
        for i, ch in enumerate(bits):
            depth += 1 if ch == "[" else -1
            if depth < 0 or (depth == 0 and i != 2 * n - 1):
                ok = False
                break
        if ok and depth == 0:
            found.add(T("".join(bits)))
    return found


def brute_force_forests(n: int) -> set[Forest]:
    """All ordered forests of total degree n, by composing oracle trees."""
    if n == 0:
        return {Forest()}
    out = set()
    for k in range(1, n + 1):
        for t in brute_force_trees(k):
            for rest in brute_force_forests(n - k):
                out.add(Forest((t,) + rest.trees))
    return out


def shuffle_oracle(u: Forest, v: Forest) -> dict[Forest, int]:
    """Shuffle by explicit position choice, independent of the recursion."""
    k, l = len(u.trees), len(v.trees)
    out: dict[Forest, int] = {}
    for positions in itertools.combinations(range(k + l), k):
        chosen = set(positions)
        it_u = iter(u.trees)
        it_v = iter(v.trees)
        word = tuple(next(it_u) if i in chosen else next(it_v) for i in range(k + l))
        f = Forest(word)
        out[f] = out.get(f, 0) + 1
    return out


def random_lie_monomial(rng: random.Random, degree: int) -> Series:
    """A tree or a nested concatenation-commutator of exact total degree."""
    if degree <= 1 or rng.random() < 0.4:
        return Series.of(rng.choice(enumerate_trees(degree)))
    split = rng.randint(1, degree - 1)
    out = bracket(
        random_lie_monomial(rng, split), random_lie_monomial(rng, degree - split)
    )
    if not out:  # bracket of equal factors vanishes; fall back to a tree
        return Series.of(rng.choice(enumerate_trees(degree)))
    return out


def random_lie_series(rng: random.Random, trunc: int) -> Series:
    """A random combination of Lie monomials, at least the degree-1 term."""
    acc = Series.of("[]", Fraction(rng.randint(1, 3)), trunc)
    for d in range(2, trunc + 1):
        num = rng.randint(-4, 4)
        if num:
            acc = acc + random_lie_monomial(rng, d) * Fraction(num, rng.randint(1, 4))
    return acc.truncated(trunc)
