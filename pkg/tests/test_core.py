import itertools

import numpy as np
import pytest

from parendist.core import (Alignment, AlignmentError, Alphabet, ParenString, ParseError, Window,
                            WeightedWindowPair, alignment_cost, height_profile, is_consistent_decomposition,
                            is_fold_irreducible, pair_cost, paren, parse_input, pivot_candidates,
                            reduce_dyck, reduce_fold, reverse_complement, serialize, valleys)
from parendist.exact import exact_dyck_cubic, exact_dyck_pivots, exact_fold
from parendist.testkit import brute_force_dyck, random_string

FIG2 = "([)[(]](]))"


def test_alphabet_complement_rules():
    a = Alphabet(3)
    for s in a.symbols():
        assert a.complement(a.complement(s)) == s
        assert a.complement(s) != s
        assert a.is_open(s) != a.is_open(a.complement(s))


def test_alphabet_from_pairs_rejects_bad_tables():
    with pytest.raises(ParseError):
        Alphabet.from_pairs("(")
    with pytest.raises(ParseError):
        Alphabet.from_pairs("((")


def test_parse_examples():
    alpha, x = parse_input(b"pairs: ()\n()")
    assert alpha.type_count == 1 and len(x) == 2
    alpha, x = parse_input("types: 2\n1 2 -2 -1")
    assert alpha.type_count == 2 and list(x) == [1, 2, -2, -1]
    with pytest.raises(ParseError, match="not in alphabet"):
        parse_input("pairs: ()\n(]")


@pytest.mark.parametrize("bad", ["", "# only a comment\n", "nonsense\n()", "types: x\n1", "types: 1\n0",
                                 "types: 1\n2", "types: 1\n1 a"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_input(bad)


def test_parse_skips_comments_and_whitespace():
    _, x = parse_input("# hello\n\npairs: ()[]\n([\n ])\n")
    assert x == paren("([])")


def test_serialize_round_trip(rng):
    for t in (1, 2, 5):
        x = random_string(int(rng.integers(0, 30)), t, int(rng.integers(1 << 30)))
        alpha = Alphabet(t)
        assert parse_input(serialize(alpha, x, comment="c"))[1] == x
    alpha = Alphabet.from_pairs("()[]")
    x = paren(FIG2)
    assert serialize(alpha, x) == f"pairs: ()[]\n{FIG2}\n"
    assert parse_input(serialize(alpha, x))[1] == x


def test_reverse_complement():
    assert len(reverse_complement(paren(""))) == 0
    assert reverse_complement(paren("([")) == paren("])")
    assert reverse_complement(paren("()")) == paren("()")
    x = paren(FIG2)
    assert reverse_complement(reverse_complement(x)) == x


def test_pair_cost_examples_and_exhaustive():
    o, c = 1, -1
    assert pair_cost(o, c) == 0
    assert pair_cost(1, -2) == 1
    assert pair_cost(c, o) == 2
    for t in (1, 2, 3):
        syms = Alphabet(t).symbols()
        for a, b in itertools.product(syms, syms):
            assert pair_cost(a, b) == brute_force_dyck(ParenString([a, b], Alphabet(t)))


def test_heights():
    assert height_profile(paren("()")).tolist() == [0, 1, 0]
    assert height_profile(paren("")).tolist() == [0]
    assert height_profile(paren(FIG2)).tolist() == [0, 1, 2, 1, 2, 3, 2, 1, 2, 1, 0, -1]


def test_height_steps(rng):
    x = random_string(50, 2, 3)
    h = x.heights()
    assert h[0] == 0
    assert (np.abs(np.diff(h)) == 1).all()
    assert ((np.diff(h) == 1) == (x.symbols > 0)).all()


def test_valleys_and_pivots():
    assert valleys(paren(FIG2)) == [3, 7]
    assert valleys(paren("()")) == []
    assert valleys(paren(")(")) == [1]
    assert pivot_candidates(paren(FIG2)) == [2, 3, 4, 6, 7, 8]
    assert pivot_candidates(paren("()")) == []
    assert pivot_candidates(paren(")(")) == [0, 1, 2]


def test_reductions():
    assert len(reduce_dyck(paren("()"))) == 0
    assert len(reduce_dyck(paren("(()[])"))) == 0
    assert reduce_dyck(paren(")(")) == paren(")(")
    assert len(reduce_fold(paren("()"))) == 0
    assert len(reduce_fold(paren(")("))) == 0
    assert reduce_fold(paren("((")) == paren("((")
    assert is_fold_irreducible(reduce_fold(paren("([)]])(")))


def test_alignment_cost_examples():
    M = Alignment(((1, 11), (2, 9), (4, 7), (5, 6)))
    assert alignment_cost(paren(FIG2), M) == 4
    assert alignment_cost(paren("()"), Alignment(((1, 2),))) == 0
    assert alignment_cost(paren("()"), Alignment()) == 2


def test_alignment_validation():
    with pytest.raises(AlignmentError):
        Alignment(((1, 3), (2, 4)))
    with pytest.raises(AlignmentError):
        Alignment(((1, 2), (2, 3)))
    with pytest.raises(AlignmentError):
        Alignment(((3, 3),))
    with pytest.raises(AlignmentError):
        alignment_cost(paren("()"), Alignment(((1, 5),)))


def test_alignment_cost_bounds_dyck(rng):
    for seed in range(100):
        x = random_string(int(rng.integers(1, 14)), 2, seed)
        v, M = exact_dyck_cubic(x)
        assert alignment_cost(x, M) == v
        # any sub-matching of an optimum is still an upper bound
        sub = Alignment(M.pairs[::2])
        assert alignment_cost(x, sub) >= v


def test_height_drop_bound(rng):
    # h(k) >= max(h(i), h(j)) - 2 dyck(x(i..j]) for i <= k <= j
    for seed in range(30):
        x = random_string(int(rng.integers(1, 16)), 2, seed)
        h = x.heights()
        n = len(x)
        for i in range(n + 1):
            for j in range(i, n + 1):
                d = exact_dyck_pivots(x.fragment(i, j))
                assert h[i:j + 1].min() >= max(h[i], h[j]) - 2 * d


def test_windows():
    w = Window(3, 5)
    assert len(w) == 3 and not w.is_empty and list(w.positions()) == [3, 4, 5]
    e = Window.empty(4)
    assert len(e) == 0 and e.is_empty and e.anchor == 4
    assert Window(1, 8).contains(w)
    with pytest.raises(ValueError):
        Window(0, 2)
    with pytest.raises(ValueError):
        WeightedWindowPair(Window(1, 3), Window(3, 4), 1)
    with pytest.raises(ValueError):
        WeightedWindowPair(Window(1, 2), Window(3, 4), -1)
    p = WeightedWindowPair(Window(1, 1), Window(4, 4), 1)
    assert p.text(paren("([[)")) == paren("()")


def test_consistent_decomposition():
    W = Window
    assert is_consistent_decomposition([(W(1, 1), W(4, 4)), (W(2, 2), W(3, 3))], 4)
    assert not is_consistent_decomposition([(W(1, 2), W(4, 4)), (W(3, 3), W(5, 5))], 5)
    assert not is_consistent_decomposition([(W(1, 2), W(2, 3))])
    assert not is_consistent_decomposition([(W(1, 1), W(3, 3))], 3)
    assert is_consistent_decomposition([(W(1, 2), W.empty(2)), (W(3, 4), W.empty(4))], 4)


def test_fold_and_dyck_oracles_on_reductions(rng):
    for seed in range(60):
        x = random_string(int(rng.integers(0, 40)), 2, seed)
        assert exact_dyck_pivots(reduce_dyck(x)) == exact_dyck_pivots(x)
        assert exact_fold(reduce_fold(x)) == exact_fold(x)
