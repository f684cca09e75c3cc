"""Shared fixtures and random instance generators for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

import dvg
from dvg import CurveConfig, Divisor

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> dvg.DvgDocument:
    return dvg.parse((FIXTURE_DIR / f"{name}.dvg").read_text())


@pytest.fixture
def fixture_doc():
    return load_fixture


# --- random generators ----------------------------------------------------------

def random_config(rng: random.Random, max_curves: int = 5,
                  weight_range: tuple[int, int] = (-4, -1),
                  edge_prob: float = 0.5, max_pair: int = 2) -> CurveConfig:
    n = rng.randint(1, max_curves)
    curves = [(f"C{i}", rng.randint(*weight_range)) for i in range(n)]
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                pairs.append((f"C{i}", f"C{j}", rng.randint(1, max_pair)))
    return CurveConfig.build(curves, pairs)


def random_tree_config(rng: random.Random, vertices: int,
                       weight_range: tuple[int, int] = (-4, -1)) -> CurveConfig:
    curves = [(f"C{i}", rng.randint(*weight_range)) for i in range(vertices)]
    pairs = []
    for i in range(1, vertices):
        pairs.append((f"C{rng.randint(0, i - 1)}", f"C{i}", 1))
    return CurveConfig.build(curves, pairs)


def random_divisor(rng: random.Random, config: CurveConfig,
                   max_mult: int = 3) -> Divisor:
    while True:
        mult = tuple(rng.randint(0, max_mult) for _ in range(len(config)))
        if any(mult):
            return Divisor(config, mult)


def attach_curve(config: CurveConfig, label: str, weight: int,
                 meets: dict[int, int]) -> CurveConfig:
    """Extend a configuration by one curve with the given intersections."""
    curves = [(lab, config.weights[i], config.genera[i])
              for i, lab in enumerate(config.labels)]
    curves.append((label, weight, 0))
    pairs = []
    n = len(config)
    for i in range(n):
        for j in range(i + 1, n):
            if config.pairs[i][j]:
                pairs.append((config.labels[i], config.labels[j], config.pairs[i][j]))
    for i, value in meets.items():
        pairs.append((config.labels[i], label, value))
    return CurveConfig.build(curves, pairs)


def extend_divisor(d: Divisor, config: CurveConfig) -> Divisor:
    """The same divisor on a configuration extended by fresh curves."""
    return Divisor(config, d.mult + (0,) * (len(config) - len(d.mult)))


def random_curvelike(rng: random.Random, max_steps: int = 4) -> Divisor:
    """A guaranteed-curvelike divisor: grown from a single negative curve by
    blow-ups (pullbacks) and twist-ons, both of which preserve the property."""
    config = CurveConfig.build([("C0", -rng.randint(1, 3))])
    d = config.curve(0)
    for step in range(rng.randint(0, max_steps)):
        if rng.random() < 0.55:
            supp = d.support
            i = rng.choice(supp)
            sites = [dvg.GenericPointOn(i)]
            for j in supp:
                if j != i and config.pairs[i][j] >= 1:
                    sites.append(dvg.IntersectionOf(min(i, j), max(i, j)))
            site = sites[rng.randrange(len(sites))]
            config, pull = dvg.blow_up(config, site)
            d = pull(d)
        else:
            targets = [i for i in d.support if d.mult[i] == 1]
            if not targets:
                continue
            target = rng.choice(targets)
            config = attach_curve(config, f"T{step}", -rng.randint(2, 3), {target: 1})
            d = dvg.twist_on(extend_divisor(d, config), len(config) - 1)
    return d


def find_one_decomposable(rng: random.Random, max_tries: int = 40) -> Divisor:
    """A 1-decomposable divisor, biased toward small non-trivial instances."""
    for _ in range(max_tries):
        if rng.random() < 0.5:
            d = random_curvelike(rng)
            if d.total_multiplicity >= 2:
                return d
            continue
        config = random_tree_config(rng, rng.randint(2, 4), weight_range=(-4, -1))
        d = random_divisor(rng, config, max_mult=2)
        if dvg.find_one_decomposition(d) is not None and d.total_multiplicity >= 2:
            return d
    return random_curvelike(rng, max_steps=4)
