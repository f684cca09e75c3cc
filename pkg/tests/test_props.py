"""Negativity, connectivity and rigidity-as-numerics checkers with witnesses."""

import random

import pytest

import dvg
from dvg import CurveConfig, VerdictStatus, WitnessKind

from conftest import find_one_decomposable, random_config, random_divisor


# --- negative definiteness ---------------------------------------------------

def test_negative_definite_double_intersection(fixture_doc):
    doc = fixture_doc("double-intersection")
    assert dvg.is_negative_definite(doc.config)


def test_not_negative_definite_star(fixture_doc):
    # (B + 3E + C1 + C2)^2 = 2 on the (-1)-center star
    doc = fixture_doc("star-not-negdef")
    d = doc.config.divisor({"B": 1, "E": 3, "C1": 1, "C2": 1})
    assert d.square == 2
    assert not dvg.is_negative_definite(doc.config)


def test_negative_definite_single_curves():
    assert dvg.is_negative_definite(CurveConfig.build([("C", -1)]))
    assert not dvg.is_negative_definite(CurveConfig.build([("C", 0)]))
    assert not dvg.is_negative_definite(CurveConfig.build([("C", 1)]))


def test_negative_definite_support_subset():
    cfg = CurveConfig.chain([-2, 0, -2])
    assert not dvg.is_negative_definite(cfg)
    assert dvg.is_negative_definite(cfg, support=(0, 2))


def test_negative_definite_needs_support():
    with pytest.raises(dvg.InvalidInputError):
        dvg.is_negative_definite(CurveConfig.build([("C", -2)]), support=())


def test_negative_definite_agrees_with_rational_eigen_route():
    # cross-check Sylvester/Bareiss against the congruence signature
    rng = random.Random(23)
    for _ in range(300):
        cfg = random_config(rng, max_curves=5, weight_range=(-4, 2))
        expected = dvg.inertia(cfg) == dvg.Inertia(0, 0, len(cfg))
        assert dvg.is_negative_definite(cfg) == expected


# --- diagonal dominance -------------------------------------------------------

def test_dominance_single_curves():
    assert dvg.dominance_sufficient(CurveConfig.build([("C", -2)]).curve(0))
    assert dvg.dominance_sufficient(CurveConfig.build([("E", -1)]).curve(0))


def test_dominance_fails_after_blow_up():
    d = CurveConfig.chain([-1, -2]).reduced_divisor()
    assert not dvg.dominance_sufficient(d)


def test_dominance_implies_negative_definite():
    rng = random.Random(31)
    hits = 0
    while hits < 100:
        cfg = random_config(rng, max_curves=4, weight_range=(-5, -1))
        d = random_divisor(rng, cfg, max_mult=2)
        if dvg.dominance_sufficient(d):
            hits += 1
            assert dvg.is_negative_definite(cfg, d.support)


# --- negatively closed ----------------------------------------------------------

def test_not_negatively_closed_square_zero(fixture_doc):
    d = fixture_doc("filtered-not-closed").divisor()
    assert d.square == 0
    assert not dvg.is_negatively_closed(d)


def test_negatively_closed_tripod(fixture_doc):
    d = fixture_doc("tripod-doubled").divisor()
    assert dvg.is_negatively_closed(d)


def test_negatively_closed_single_negative_curve():
    for w in (-1, -3):
        assert dvg.is_negatively_closed(CurveConfig.build([("C", w)]).curve(0))


def test_negatively_closed_implies_filtered():
    rng = random.Random(37)
    hits = 0
    while hits < 150:
        cfg = random_config(rng, max_curves=4)
        d = random_divisor(rng, cfg, max_mult=2)
        if dvg.is_negatively_closed(d):
            hits += 1
            assert dvg.find_negative_filtration(d) is not None


# --- negative filtrations --------------------------------------------------------

def test_filtration_of_square_zero_star(fixture_doc):
    d = fixture_doc("filtered-not-closed").divisor()
    witness = dvg.find_negative_filtration(d)
    assert witness is not None
    assert witness.labels(d.config) == ("A", "A'", "E", "B", "E")
    assert dvg.witness_is_valid(d, witness)


def test_filtration_absent_for_nonnegative_curve():
    for w in (0, 1):
        d = CurveConfig.build([("C", w)]).curve(0)
        assert dvg.find_negative_filtration(d) is None


def test_filtration_of_sph_2_321(fixture_doc):
    d = fixture_doc("sph-2-321").divisor()
    witness = dvg.find_negative_filtration(d)
    assert witness is not None and dvg.witness_is_valid(d, witness)
    # the paper's order validates as well
    cfg = d.config
    manual = dvg.SequenceWitness(
        WitnessKind.NEGATIVE_FILTRATION,
        tuple(cfg.index(lab) for lab in ("C", "B", "C'", "C", "E")))
    assert dvg.witness_is_valid(d, manual)


# --- 1-decompositions --------------------------------------------------------------

def test_one_decomposition_sph_2_321(fixture_doc):
    d = fixture_doc("sph-2-321").divisor()
    witness = dvg.find_one_decomposition(d)
    assert witness is not None and dvg.witness_is_valid(d, witness)
    cfg = d.config
    manual = dvg.SequenceWitness(
        WitnessKind.ONE_DECOMPOSITION,
        tuple(cfg.index(lab) for lab in ("C", "B", "C'", "C", "E")))
    assert dvg.witness_is_valid(d, manual)


def test_one_decomposition_absent_for_triangle(fixture_doc):
    assert dvg.find_one_decomposition(fixture_doc("triangle-doubled").divisor()) is None


def test_one_decomposition_absent_for_elliptic_cycle(fixture_doc):
    assert dvg.find_one_decomposition(fixture_doc("elliptic-singularity").divisor()) is None


def test_witness_rejects_wrong_counts():
    d = CurveConfig.chain([-2, -2]).reduced_divisor()
    bad = dvg.SequenceWitness(WitnessKind.ONE_DECOMPOSITION, (0, 0))
    assert not dvg.witness_is_valid(d, bad)


# --- 1-connectedness -----------------------------------------------------------------

def test_triangle_not_one_connected(fixture_doc):
    d = fixture_doc("triangle-doubled").divisor()
    reduced = d.config.reduced_divisor()
    assert reduced.square == 0
    assert dvg.pairing(reduced, d - reduced) == 0
    assert not dvg.is_one_connected(d)


def test_single_curve_vacuously_one_connected():
    assert dvg.is_one_connected(CurveConfig.build([("C", -2)]).curve(0))


def test_one_decomposable_implies_one_connected():
    rng = random.Random(41)
    for _ in range(150):
        d = find_one_decomposable(rng)
        assert dvg.is_one_connected(d)


# --- the curvelike verdict --------------------------------------------------------------

def test_sph_2_321_is_spherelike(fixture_doc):
    d = fixture_doc("sph-2-321").divisor()
    verdict = dvg.is_curvelike(d)
    assert verdict.status is VerdictStatus.CURVELIKE
    assert verdict.n == 2
    assert dvg.witness_is_valid(d, verdict.one_decomposition)
    assert dvg.witness_is_valid(d, verdict.negative_filtration)


def test_tripod_not_curvelike(fixture_doc):
    d = fixture_doc("tripod-doubled").divisor()
    verdict = dvg.is_curvelike(d)
    assert verdict.status is VerdictStatus.NOT_CURVELIKE
    assert dvg.is_negatively_closed(d)
    assert dvg.find_one_decomposition(d) is None


def test_elliptic_curve_inapplicable(fixture_doc):
    d = fixture_doc("elliptic-curve").divisor()
    verdict = dvg.is_curvelike(d)
    assert verdict.status is VerdictStatus.INAPPLICABLE


def test_twelve_chain_passes_numerical_checks(fixture_doc):
    d = fixture_doc("twelve-chain").divisor()
    verdict = dvg.is_curvelike(d)
    assert verdict.status is VerdictStatus.CURVELIKE and verdict.n == 2


# --- minimality ------------------------------------------------------------------------

def test_sph_3_2211_minimal(fixture_doc):
    d = fixture_doc("sph-3-2211").divisor()
    report = dvg.is_minimal(d)
    assert report.minimal
    degrees = {d.config.labels[i]: value for i, value in report.degrees}
    assert degrees == {"C": 0, "C'": 0, "E": 1, "E'": 1}


def test_sph_2_321_not_minimal(fixture_doc):
    d = fixture_doc("sph-2-321").divisor()
    report = dvg.is_minimal(d)
    assert not report.minimal
    cfg = d.config
    assert [(kind, cfg.labels[i]) for kind, i in report.violations] == [("twistoff", "C")]
    assert dvg.pairing(cfg.curve("C"), d) == -1


def test_single_negative_reduced_curves_minimal():
    # any negative reduced curve is minimally curvelike except a (-1)-curve
    assert dvg.is_minimal(CurveConfig.build([("C", -2)]).curve(0)).minimal
    assert dvg.is_minimal(CurveConfig.build([("C", -5)]).curve(0)).minimal
    report = dvg.is_minimal(CurveConfig.build([("E", -1)]).curve(0))
    assert not report.minimal and report.violations[0][0] == "contract"


def test_minimality_rejects_non_curvelike(fixture_doc):
    with pytest.raises(dvg.NotCurvelikeError):
        dvg.is_minimal(fixture_doc("tripod-doubled").divisor())
    with pytest.raises(dvg.NotCurvelikeError):
        dvg.is_minimal(fixture_doc("elliptic-curve").divisor())


# --- spec invariants ----------------------------------------------------------------------

def test_multiple_curve_constraint():
    # a multiple curve in a 1-decomposable divisor has C^2 <= 0,
    # except exactly D = 2C with C^2 = 1
    rng = random.Random(43)
    for _ in range(200):
        d = find_one_decomposable(rng)
        for i in d.support:
            if d.mult[i] >= 2:
                assert d.config.weights[i] <= 0
    exceptional = CurveConfig.build([("C", 1)]).divisor([2])
    assert dvg.find_one_decomposition(exceptional) is not None


def test_spherelike_all_minus_two_support():
    # curvelike on only (-2)-curves forces D.K = 0 and D^2 = -2
    rng = random.Random(47)
    hits = 0
    while hits < 60:
        from conftest import random_tree_config
        cfg = random_tree_config(rng, rng.randint(1, 4), weight_range=(-2, -2))
        d = random_divisor(rng, cfg, max_mult=3)
        if all(d.mult) and dvg.is_curvelike(d):
            hits += 1
            assert dvg.k_degree(d) == 0 and d.square == -2


def test_partial_one_decomposition_extends(fixture_doc):
    # every valid first pick of a curvelike divisor extends to a full witness
    for name in ("sph-2-321", "sph-3-2211", "chain-31313", "chain-23123"):
        d = fixture_doc(name).divisor()
        assert dvg.is_curvelike(d)
        for i in d.support:
            head = d.config.curve(i)
            if dvg.pairing(head, d - head) == 1:
                assert dvg.find_one_decomposition(d - head) is not None
