import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from bvgraph.graded import (EVEN, ODD, SuperSpace, average_tensor, koszul_sign,
                            perm_parity, permute_tensor, symmetrize_tensor,
                            tensor_space)
from bvgraph.sampling import rational


def test_koszul_sign_identity():
    assert koszul_sign((0, 1, 2), (ODD, ODD, ODD)) == 1


def test_koszul_sign_odd_swap():
    assert koszul_sign((1, 0), (ODD, ODD)) == -1


def test_koszul_sign_mixed_swap():
    assert koszul_sign((1, 0), (EVEN, ODD)) == 1
    assert koszul_sign((1, 0), (ODD, EVEN)) == 1


def test_koszul_sign_length_mismatch():
    with pytest.raises(ValueError):
        koszul_sign((0, 1), (ODD,))


def test_koszul_reduces_to_sign_for_all_odd():
    for order in permutations(range(4)):
        assert koszul_sign(order, (ODD,) * 4) == perm_parity(order)


def test_koszul_trivial_for_all_even():
    for order in permutations(range(4)):
        assert koszul_sign(order, (EVEN,) * 4) == 1


def test_koszul_homomorphism_all_odd():
    rng = random.Random(7)
    for _ in range(30):
        a = list(range(5)); rng.shuffle(a)
        b = list(range(5)); rng.shuffle(b)
        ab = [a[b[i]] for i in range(5)]
        assert (koszul_sign(ab, (ODD,) * 5)
                == koszul_sign(a, (ODD,) * 5) * koszul_sign(b, (ODD,) * 5))


def test_tensor_space_dimensions():
    e = SuperSpace(("a",), (EVEN,))
    o = SuperSpace(("b",), (ODD,))
    eo = SuperSpace(("a", "b"), (EVEN, ODD))
    assert tensor_space(e, e).dim() == (1, 0)
    assert tensor_space(eo, eo).dim() == (2, 2)
    assert tensor_space(o, o).dim() == (1, 0)


def test_tensor_space_parity_table_exhaustive():
    for pa, pb in product((EVEN, ODD), repeat=2):
        a = SuperSpace(("a",), (pa,))
        b = SuperSpace(("b",), (pb,))
        assert tensor_space(a, b).parities == ((pa + pb) % 2,)


def test_dual_space_round_trip():
    w = SuperSpace(("u", "v"), (EVEN, ODD))
    assert w.dual().names == ("u*", "v*")
    assert w.dual().dual() is w
    assert w.dual().parities == w.parities


def test_parity_reversion():
    w = SuperSpace(("u", "v"), (EVEN, ODD))
    assert w.parity_reversed().parities == (ODD, EVEN)


def test_symmetrize_even_square():
    w = SuperSpace(("x",), (EVEN,))
    t = {(0, 0): Fraction(1)}
    assert symmetrize_tensor(w, t, 2) == {(0, 0): Fraction(2)}


def test_symmetrize_odd_square_vanishes():
    w = SuperSpace(("xi",), (ODD,))
    t = {(0, 0): Fraction(1)}
    assert symmetrize_tensor(w, t, 2) == {}


def test_average_after_symmetrize_recovers_symmetric_input():
    # pi_n o i_n = id on symmetric tensors, random rationals, n <= 6 would be
    # slow at rank 6 over big spaces; the spec asks ranks up to 6 on small ones.
    rng = random.Random(3)
    w = SuperSpace(("x", "y", "xi"), (EVEN, EVEN, ODD))
    for rank in range(1, 5):
        raw = {}
        for _ in range(4):
            key = tuple(rng.randrange(3) for _ in range(rank))
            raw[key] = rational(rng, zero_ok=False)
        sym = average_tensor(w, symmetrize_tensor(w, raw, rank), rank)
        twice = average_tensor(w, symmetrize_tensor(
            w, symmetrize_tensor(w, raw, rank), rank), rank)
        from math import factorial
        scaled = {k: v * factorial(rank) for k, v in sym.items()}
        assert twice == scaled


def test_pi_i_identity_rank_up_to_6():
    rng = random.Random(11)
    w = SuperSpace(("x", "xi"), (EVEN, ODD))
    for rank in (2, 3, 4, 5, 6):
        raw = {tuple(rng.randrange(2) for _ in range(rank)): rational(rng, zero_ok=False)
               for _ in range(3)}
        sym = symmetrize_tensor(w, raw, rank)
        # sym is invariant; pi then i must reproduce it
        back = symmetrize_tensor(w, average_tensor(w, sym, rank), rank)
        assert back == sym


def test_permute_tensor_signs():
    w = SuperSpace(("xi", "eta"), (ODD, ODD))
    t = {(0, 1): Fraction(1)}
    assert permute_tensor(w, t, (1, 0)) == {(1, 0): Fraction(-1)}
