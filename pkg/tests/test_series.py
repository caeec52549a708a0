import json
from fractions import Fraction

import pytest

from helpers import F, S, shuffle_oracle
from liebutcher.series import (
    Series,
    TruncationError,
    concat,
    deshuffle,
    deshuffle_forest,
    pairing,
    shuffle,
    truncate,
)
from liebutcher.trees import EMPTY_FOREST, enumerate_forests

UNIT = Series.unit()


def forests_up_to(n):
    return [f for d in range(0, n + 1) for f in enumerate_forests(d)]


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        s = Series({F("[]"): Fraction(0), F("[[]]"): Fraction(2)})
        assert list(s.terms) == [F("[[]]")]

    def test_trunc_filters_terms(self):
        s = Series({F("[]"): 1, F("[] [] []"): 1}, trunc=2)
        assert s.coeff("[]") == 1
        assert s.coeff("[] [] []") == 0

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            Series.of("[]", 0.5)
        with pytest.raises(TypeError):
            S("[]") * 0.5


class TestVectorSpace:
    def test_add_merges_and_cancels(self):
        assert S("[]") + S("[]", -1) == Series.zero()
        assert S("[]") + S("[[]]") == Series({F("[]"): 1, F("[[]]"): 1})

    def test_scalar_action(self):
        assert S("[]", 2) == 2 * S("[]") == S("[]") * 2
        assert S("[]") / 2 == S("[]", Fraction(1, 2))
        assert -S("[]") == S("[]", -1)

    def test_trunc_min_rule(self):
        a = Series.of("[]", 1, 3)
        b = Series.of("[] [] [] []", 1)
        assert (a + b).trunc == 3
        assert (a + b).coeff("[] [] [] []") == 0

    def test_component_and_max_degree(self):
        s = UNIT + S("[]") + S("[] []")
        assert s.component(2) == Series({F("[] []"): 1})
        assert s.max_degree() == 2
        assert Series.zero().max_degree() == 0


class TestConcat:
    def test_unit(self):
        assert concat(UNIT, S("[]")) == S("[]")
        assert concat(S("[]"), UNIT) == S("[]")

    def test_juxtaposition(self):
        assert concat(S("[]"), S("[[]]")) == S("[] [[]]")

    def test_bilinearity(self):
        assert concat(S("[]") + S("[[]]"), S("[]")) == S("[] []") + S("[[]] []")

    def test_associativity_exhaustive(self):
        forests = forests_up_to(3)
        for a in forests:
            for b in forests:
                if a.degree + b.degree > 4:
                    continue
                for c in forests:
                    if a.degree + b.degree + c.degree > 5:
                        continue
                    sa, sb, sc = Series.of(a), Series.of(b), Series.of(c)
                    assert concat(concat(sa, sb), sc) == concat(sa, concat(sb, sc))

    def test_truncation_drops_terms(self):
        a = Series.of("[]", 1, 2)
        assert concat(a, Series.of("[] []")) == Series.zero(2)


class TestShuffle:
    def test_unit(self):
        assert shuffle(S("[]"), UNIT) == S("[]")
        assert shuffle(UNIT, S("[]")) == S("[]")

    def test_repeated_letter(self):
        assert shuffle(S("[] []"), S("[]")) == S("[] [] []", 3)

    def test_distinct_letters(self):
        assert shuffle(S("[]"), S("[[]]")) == S("[] [[]]") + S("[[]] []")

    def test_against_position_oracle(self):
        forests = forests_up_to(4)
        for u in forests:
            for v in forests:
                if u.degree + v.degree > 4:
                    continue
                expected = shuffle_oracle(u, v)
                got = shuffle(Series.of(u), Series.of(v))
                assert got.terms == {f: Fraction(m) for f, m in expected.items()}

    def test_commutative(self):
        forests = forests_up_to(4)
        for a in forests:
            for b in forests:
                assert shuffle(Series.of(a), Series.of(b)) == shuffle(
                    Series.of(b), Series.of(a)
                )

    def test_associative(self):
        forests = forests_up_to(3)
        for a in forests:
            for b in forests:
                if a.degree + b.degree > 5:
                    continue
                sab = shuffle(Series.of(a), Series.of(b))
                for c in forests:
                    if a.degree + b.degree + c.degree > 5:
                        continue
                    sc = Series.of(c)
                    assert shuffle(sab, sc) == shuffle(
                        Series.of(a), shuffle(Series.of(b), sc)
                    )


class TestDeshuffle:
    def test_empty(self):
        assert deshuffle(UNIT) == {(EMPTY_FOREST, EMPTY_FOREST): 1}

    def test_single_letter(self):
        assert deshuffle(S("[]")) == {
            (F("[]"), F("1")): 1,
            (F("1"), F("[]")): 1,
        }

    def test_two_distinct_letters(self):
        assert deshuffle(S("[] [[]]")) == {
            (F("1"), F("[] [[]]")): 1,
            (F("[]"), F("[[]]")): 1,
            (F("[[]]"), F("[]")): 1,
            (F("[] [[]]"), F("1")): 1,
        }

    def test_duality_with_shuffle(self):
        for n in range(0, 5):
            for w in enumerate_forests(n):
                splits = dict(deshuffle_forest(w))
                for p in range(0, n + 1):
                    for u in enumerate_forests(p):
                        for v in enumerate_forests(n - p):
                            lhs = shuffle(Series.of(u), Series.of(v)).coeff(w)
                            assert lhs == splits.get((u, v), 0)

    def test_coassociative_and_cocommutative(self):
        for n in range(0, 6):
            for w in enumerate_forests(n):
                splits = dict(deshuffle_forest(w))
                # cocommutativity
                for (u, v), m in splits.items():
                    assert splits.get((v, u)) == m
                # coassociativity as multisets of ordered triples
                left = {}
                right = {}
                for (u, v), m in splits.items():
                    for (u1, u2), m2 in deshuffle_forest(u):
                        key = (u1, u2, v)
                        left[key] = left.get(key, 0) + m * m2
                    for (v1, v2), m2 in deshuffle_forest(v):
                        key = (u, v1, v2)
                        right[key] = right.get(key, 0) + m * m2
                assert left == right


class TestPairingAndTruncate:
    def test_coefficient_extraction(self):
        a = S("[]") + S("[[]]", 2)
        assert pairing(a, F("[[]]")) == 2
        assert pairing(a, F("[] []")) == 0

    def test_orthonormal_basis(self):
        forests = forests_up_to(3)
        for u in forests:
            for v in forests:
                assert pairing(Series.of(u), v) == (1 if u == v else 0)

    def test_truncation_guard(self):
        a = Series.of("[]", 1, 2)
        with pytest.raises(TruncationError):
            pairing(a, F("[] [] []"))
        assert a.coeff("[] [] []") == 0  # unguarded access stays silent

    def test_truncate_examples(self):
        a = UNIT + S("[]") + S("[] []")
        assert truncate(a, 1) == (UNIT + S("[]")).truncated(1)
        assert truncate(a, 0) == Series.unit(0)
        assert truncate(truncate(a, 3), 5).trunc == 3


class TestJson:
    def test_schema_and_order(self):
        s = Series({F("[[]]"): Fraction(-1, 2), F("[]"): 1}, trunc=3)
        data = s.to_json()
        assert data == {
            "trunc": 3,
            "terms": [
                {"forest": "[]", "coeff": "1"},
                {"forest": "[[]]", "coeff": "-1/2"},
            ],
        }
        assert json.loads(json.dumps(data)) == data

    def test_roundtrip(self):
        s = Series({F("[[]]"): Fraction(-1, 2), F("[] []"): Fraction(7, 3)}, trunc=4)
        assert Series.from_json(s.to_json()) == s

    def test_unbounded_trunc_is_null(self):
        s = Series.of("[]")
        assert s.to_json()["trunc"] is None
        assert Series.from_json(s.to_json()) == s
