"""Pairing, Riemann-Roch numerics, subdivisors, connectivity, canonical forms."""

import random

import pytest

import dvg
from dvg import CurveConfig, Divisor

from conftest import random_config, random_divisor


def test_config_validation():
    with pytest.raises(dvg.InvalidInputError):
        CurveConfig.build([("A", -1), ("A", -2)])
    with pytest.raises(dvg.InvalidInputError):
        CurveConfig.build([("A", -1), ("B", -2)], [("A", "B", -1)])
    with pytest.raises(dvg.InvalidInputError):
        CurveConfig(("A",), (-1,), (0,), ((-2,),))  # diagonal != weight
    with pytest.raises(dvg.InvalidInputError):
        CurveConfig.build([("A", -1, -1)])  # negative genus


def test_pairing_star_square_zero():
    # doubled (-1) center meeting -3, -3, -2 once each: square 0
    cfg = CurveConfig.star(-1, [-3, -3, -2], labels=["E", "A", "A'", "B"])
    d = cfg.divisor({"E": 2, "A": 1, "A'": 1, "B": 1})
    assert dvg.pairing(d, d) == 0


def test_pairing_zero_divisor():
    cfg = CurveConfig.chain([-2, -3])
    d = cfg.reduced_divisor()
    assert dvg.pairing(cfg.zero_divisor(), d) == 0


def test_pairing_five_chain():
    # expanding the form by hand: 1*(-3) + 4*(-1) + 4*(-3) + 4*(-1) + 1*(-3)
    # + 2*(2 + 4 + 4 + 2) = -26 + 24 = -2
    d = CurveConfig.chain([-3, -1, -3, -1, -3]).divisor([1, 2, 2, 2, 1])
    assert dvg.pairing(d, d) == -2


def test_pairing_rejects_mismatched_configs():
    a = CurveConfig.chain([-2, -2]).reduced_divisor()
    b = CurveConfig.chain([-2, -3]).reduced_divisor()
    with pytest.raises(dvg.ConfigMismatchError):
        dvg.pairing(a, b)


def test_k_degree_star():
    cfg = CurveConfig.star(-2, [-3, -2, -1], labels=["C", "B", "C'", "E"])
    d = cfg.divisor({"B": 1, "C": 2, "C'": 1, "E": 1})
    assert dvg.k_degree(d) == 0


def test_k_degree_single_minus_two():
    assert dvg.k_degree(CurveConfig.build([("C", -2)]).curve(0)) == 0


def test_k_degree_elliptic():
    cfg = CurveConfig.build([("C", -2, 1)])
    assert dvg.k_degree(cfg.curve(0)) == 2


def test_k_degree_reduced_rational():
    # for reduced rational D with m components: D.K = -sum(w) - 2m
    rng = random.Random(7)
    for _ in range(50):
        cfg = random_config(rng)
        d = cfg.reduced_divisor()
        assert dvg.k_degree(d) == -sum(cfg.weights) - 2 * len(cfg)


def test_euler_char_double_minus_one():
    cfg = CurveConfig.build([("E", -1)])
    d = cfg.divisor([2])
    assert d.square == -4 and dvg.k_degree(d) == -2
    assert dvg.euler_char(d) == 3


def test_euler_char_single_rational():
    for w in (-3, -2, -1, 0, 2):
        assert dvg.euler_char(CurveConfig.build([("C", w)]).curve(0)) == 1


def test_euler_char_elliptic_singularity_cycle(fixture_doc):
    doc = fixture_doc("elliptic-singularity")
    z = doc.divisor()
    assert z.mult == (3, 2, 2, 2, 2, 1, 1, 1, 1)
    assert dvg.euler_char(z) == 0


def test_euler_char_twisted():
    cfg = CurveConfig.chain([-2, -3])
    d = cfg.reduced_divisor()
    assert dvg.euler_char_twisted(d, cfg.zero_divisor()) == dvg.euler_char(d)
    line = cfg.divisor([2, 1])
    assert dvg.euler_char_twisted(d, line) == dvg.euler_char(d) + dvg.pairing(d, line)


def test_chi_additivity_on_double_curve():
    cfg = CurveConfig.build([("C", -2)])
    c = cfg.curve(0)
    assert dvg.euler_char(c + c) == 4
    assert dvg.chi_additivity_check(c, c)


def test_chi_additivity_rejects_zero():
    cfg = CurveConfig.build([("C", -2)])
    with pytest.raises(dvg.InvalidInputError):
        dvg.chi_additivity_check(cfg.curve(0), cfg.zero_divisor())


def test_subdivisors_single_curve():
    cfg = CurveConfig.build([("C", -2)])
    assert list(dvg.subdivisors(cfg.curve(0), proper=True)) == []
    double = cfg.divisor([2])
    assert [a.mult for a in dvg.subdivisors(double, proper=True)] == [(1,)]
    assert [a.mult for a in dvg.subdivisors(double)] == [(1,), (2,)]


def test_subdivisors_two_curves():
    cfg = CurveConfig.build([("A", -2), ("B", -3)])
    d = cfg.reduced_divisor()
    proper = list(dvg.subdivisors(d, proper=True))
    assert [a.mult for a in proper] == [(0, 1), (1, 0)]


def test_subdivisors_cap():
    cfg = CurveConfig.chain([-2] * 5)
    d = cfg.divisor([9] * 5)
    with pytest.raises(dvg.CapExceededError):
        list(dvg.subdivisors(d, cap=1000))


def test_subdivisors_lexicographic():
    cfg = CurveConfig.chain([-2, -2])
    d = cfg.divisor([1, 2])
    assert [a.mult for a in dvg.subdivisors(d)] == [
        (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_connectivity_double_intersection(fixture_doc):
    d = fixture_doc("double-intersection").divisor()
    assert dvg.is_connected(d)
    assert not dvg.is_tree(d)


def test_connectivity_triangle(fixture_doc):
    d = fixture_doc("triangle-doubled").divisor()
    assert dvg.is_connected(d)
    assert not dvg.is_tree(d)


def test_connectivity_single_curve():
    d = CurveConfig.build([("C", -2)]).curve(0)
    assert dvg.is_connected(d) and dvg.is_tree(d)


def test_disconnected_support():
    cfg = CurveConfig.build([("A", -2), ("B", -2)])
    assert not dvg.is_connected(cfg.reduced_divisor())
    assert dvg.is_connected(cfg.curve(0))


def test_canonicalize_palindromic_chain():
    d = CurveConfig.chain([-3, -1, -3, -1, -3]).divisor([1, 2, 2, 2, 1])
    rev = CurveConfig.chain([-3, -1, -3, -1, -3]).divisor([1, 2, 2, 2, 1])
    assert dvg.is_isomorphic(d, rev)


def test_canonicalize_reversed_chain():
    d1 = CurveConfig.chain([-2, -3, -1, -2, -3]).divisor([1, 2, 3, 2, 1])
    d2 = CurveConfig.chain([-3, -2, -1, -3, -2]).divisor([2, 1, 3, 1, 2])
    assert dvg.is_isomorphic(d1, d2)


def test_canonicalize_distinguishes_the_two_five_chains():
    d1 = CurveConfig.chain([-3, -1, -3, -1, -3]).divisor([1, 2, 2, 2, 1])
    d2 = CurveConfig.chain([-2, -3, -1, -2, -3]).divisor([1, 2, 3, 2, 1])
    assert not dvg.is_isomorphic(d1, d2)


def test_canonicalize_permutation_invariance():
    rng = random.Random(11)
    for _ in range(200):
        cfg = random_config(rng, max_curves=6)
        d = random_divisor(rng, cfg)
        canonical = dvg.canonicalize(d)
        perm = list(range(len(cfg)))
        rng.shuffle(perm)
        assert dvg.canonicalize(dvg.lattice.permuted_divisor(d, perm)) == canonical


def test_canonicalize_idempotent():
    rng = random.Random(13)
    for _ in range(100):
        cfg = random_config(rng, max_curves=5)
        d = random_divisor(rng, cfg)
        perm = dvg.lattice.canonical_permutation(d)
        reordered = dvg.lattice.permuted_divisor(d, perm)
        assert dvg.canonicalize(reordered) == dvg.canonicalize(d)


def test_canonicalize_size_bound():
    cfg = CurveConfig.chain([-2] * 13)
    with pytest.raises(dvg.CapExceededError):
        dvg.canonicalize(cfg.reduced_divisor())


def test_twelve_chain_canonicalizable(fixture_doc):
    # classes of size <= 2 after refinement, so well within the bound
    d = fixture_doc("twelve-chain").divisor()
    assert dvg.canonicalize(d) == dvg.canonicalize(d)


def test_parity_guard():
    # fabricate an odd D^2 + D.K via a weight-1 curve of genus 0: chi stays integral
    cfg = CurveConfig.build([("C", 1)])
    assert dvg.euler_char(cfg.curve(0)) == 1
