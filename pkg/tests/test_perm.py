from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from classtrans import (
    FinitePermutation,
    NotHorizontal,
    cycle_decomposition,
    embed_phi,
    horizontal_product_perm,
    lift_cycles,
    parse_transposition,
    perm_order,
)
from classtrans.errors import DegreeMismatch, InvalidArgument, ParseError
from classtrans.perm import parse_cycle_family, parse_cycle_text
from classtrans.search import horizontal_transpositions
from oracles import horizontal_pair_order

P = parse_transposition
PAIR_2_3 = [P("0(2),1(2)"), P("0(3),1(3)")]
PAIR_3_4 = [P("0(3),1(3)"), P("2(4),3(4)")]


def cyc(text, degree):
    return FinitePermutation.parse(text, degree)


class TestFinitePermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidArgument):
            FinitePermutation((0, 0, 1))

    def test_left_to_right_product(self):
        a = cyc("(0,1)(2,3)(4,5)", 6)
        b = cyc("(0,1)(3,4)", 6)
        assert a * b == cyc("(2,4,5,3)", 6)
        # the other convention gives a different permutation
        assert b * a != a * b

    def test_inverse(self):
        p = cyc("(0,3,1)(2,4)", 5)
        assert (p * p.inverse()).is_identity

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            FinitePermutation.identity(3) * FinitePermutation.identity(4)

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_cycle_text("(0,1")
        with pytest.raises(ParseError):
            parse_cycle_text("(0,x)")
        with pytest.raises(InvalidArgument):
            FinitePermutation.parse("(0,1)(1,2)", 3)


class TestHorizontalProduct:
    def test_pair_2_3(self):
        p = horizontal_product_perm(PAIR_2_3)
        assert p == cyc("(0,1)(2,3)(4,5)", 6) * cyc("(0,1)(3,4)", 6)

    def test_pair_3_4(self):
        p = horizontal_product_perm(PAIR_3_4)
        assert p == cyc("(0,1)(3,4)(6,7)(9,10)", 12) * cyc("(2,3)(6,7)(10,11)", 12)

    def test_square_is_identity(self):
        t = P("2(5),4(5)")
        p = horizontal_product_perm([t, t])
        assert p.degree == 5 and p.is_identity

    def test_rejects_oblique(self):
        with pytest.raises(NotHorizontal):
            horizontal_product_perm([P("0(2),1(2)"), P("1(2),0(4)")])

    def test_rejects_empty(self):
        with pytest.raises(InvalidArgument):
            horizontal_product_perm([])

    @given(st.lists(st.sampled_from(horizontal_transpositions(8)), min_size=1, max_size=4),
           st.integers(-10**6, 10**6))
    def test_reduction_agrees_on_all_integers(self, ts, x):
        p = horizontal_product_perm(ts)
        N = p.degree
        y = x
        for t in ts:
            y = t(y)
        assert y == x - x % N + p(x % N)


class TestCycles:
    def test_pair_2_3(self):
        cs = cycle_decomposition(horizontal_product_perm(PAIR_2_3))
        assert cs.cycles == ((2, 4, 5, 3),)
        assert cs.fixed == (0, 1)

    def test_identity(self):
        cs = cycle_decomposition(FinitePermutation.identity(4))
        assert cs.cycles == () and cs.fixed == (0, 1, 2, 3)

    def test_pair_3_4(self):
        cs = cycle_decomposition(horizontal_product_perm(PAIR_3_4))
        assert cs.cycles == ((0, 1), (2, 3, 4), (9, 11, 10))
        assert cs.fixed == (5, 6, 7, 8)

    def test_json(self):
        doc = cycle_decomposition(horizontal_product_perm(PAIR_3_4)).to_json()
        assert doc == {
            "degree": 12,
            "cycles": [[0, 1], [2, 3, 4], [9, 11, 10]],
            "fixed": [5, 6, 7, 8],
            "order": "6",
        }

    @given(st.permutations(list(range(9))))
    def test_partition(self, images):
        cs = cycle_decomposition(FinitePermutation(tuple(images)))
        points = [x for c in cs.cycles for x in c] + list(cs.fixed)
        assert sorted(points) == list(range(9))
        for c in cs.cycles:
            assert c[0] == min(c)
        assert [c[0] for c in cs.cycles] == sorted(c[0] for c in cs.cycles)


class TestOrder:
    def test_examples(self):
        assert perm_order(horizontal_product_perm(PAIR_2_3)) == 4
        assert perm_order(horizontal_product_perm(PAIR_3_4)) == 6
        assert perm_order(FinitePermutation.identity(7)) == 1

    def test_big(self):
        # cycles of the first primes up to 59: order is their product
        primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        cycles, start = [], 0
        for q in primes:
            cycles.append(list(range(start, start + q)))
            start += q
        p = FinitePermutation.from_cycles(cycles, start)
        expected = 1
        for q in primes:
            expected *= q
        assert perm_order(p) == expected
        assert expected > 2**64

    def test_reduced_order_matches_orbit_closure(self):
        for t1 in horizontal_transpositions(10):
            for t2 in horizontal_transpositions(10):
                expected = horizontal_pair_order(
                    t1.cell_a.residue, t1.cell_b.residue, t1.cell_a.modulus,
                    t2.cell_a.residue, t2.cell_b.residue, t2.cell_a.modulus,
                )
                assert perm_order(horizontal_product_perm([t1, t2])) == expected


class TestLift:
    def test_pair_2_3(self):
        p = horizontal_product_perm(PAIR_2_3)
        assert lift_cycles(p, 6) == "(6s)(1+6s)(2+6s,4+6s,5+6s,3+6s)"

    def test_identity(self):
        assert lift_cycles(FinitePermutation.identity(2), 2) == "(2s)(1+2s)"

    def test_pair_3_4_display(self):
        shown = ("(12 s, 1+12s)(2 + 12s, 3+12s, 4+12s) (5+12s) (6+12s) (7+12s) (8+12s) "
                 "(9+12s, 11+12s, 10+12s)")
        p = horizontal_product_perm(PAIR_3_4)
        assert lift_cycles(p, 12) == "".join(shown.split())

    def test_wrong_period(self):
        with pytest.raises(DegreeMismatch):
            lift_cycles(FinitePermutation.identity(3), 6)

    @given(st.permutations(list(range(7))))
    def test_roundtrip(self, images):
        p = FinitePermutation(tuple(images))
        assert parse_cycle_family(lift_cycles(p), 7) == cycle_decomposition(p)


class TestEmbed:
    def test_parity_map(self):
        f = embed_phi(2, cyc("(0,1)", 2))
        assert f.pieces == P("0(2),1(2)").to_rcwa().pieces
        for n in range(-50, 51):
            assert f(n) == n + (-1) ** (n % 2)

    def test_identity(self):
        f = embed_phi(3, FinitePermutation.identity(3))
        assert all(f(n) == n for n in range(-30, 30))

    def test_matches_transposition(self):
        f = embed_phi(3, cyc("(0,1)", 3))
        t = P("0(3),1(3)")
        for n in range(-100, 101):
            assert f(n) == t(n)

    def test_degree_check(self):
        with pytest.raises(DegreeMismatch):
            embed_phi(4, FinitePermutation.identity(3))

    def test_homomorphism_s4(self):
        group = [FinitePermutation(p) for p in permutations(range(4))]
        for s in group:
            fs = embed_phi(4, s)
            assert fs.is_integral
            for r in group:
                fr, fsr = embed_phi(4, r), embed_phi(4, s * r)
                for n in range(100):
                    assert fsr(n) == fr(fs(n))

    def test_injective_s4(self):
        group = [FinitePermutation(p) for p in permutations(range(4))]
        signatures = {tuple(embed_phi(4, s)(n) for n in range(4)) for s in group}
        assert len(signatures) == 24

    def test_bijective(self):
        f = embed_phi(5, cyc("(0,3,1)(2,4)", 5))
        window = range(-50, 50)
        images = {f(n) for n in window}
        assert len(images) == len(window)
        assert images == set(window)
