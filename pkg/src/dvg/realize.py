"""Realizability of weighted graphs as dual intersection graphs of divisors
on rational surfaces: a sufficient case table with constructive blow-up
scripts, and an exact-signature necessary condition (at most one positive
direction in the Neron-Severi lattice of any smooth projective surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import (
    CurveConfig,
    Inertia,
    InvalidInputError,
    is_connected,
    is_tree,
)
from .transforms import (
    BlowUpGeneric,
    Contract,
    MoveScript,
    blow_up,
    contract,
    GenericPointOn,
)


# --- exact signature ---------------------------------------------------------

def inertia(config: CurveConfig, support: Sequence[int] | None = None) -> Inertia:
    """Signature of the Gram form, by congruence diagonalization over Q.

    Symmetric pivoting; an all-zero diagonal with a nonzero off-diagonal
    entry is opened up by a row+column addition (the hyperbolic block
    contributes one positive and one negative direction).
    """
    idx = list(range(len(config))) if support is None else list(support)
    if not idx:
        raise InvalidInputError("support must be non-empty")
    m = [[Fraction(config.pairs[i][j]) for j in idx] for i in idx]
    positives = zeros = negatives = 0
    while m:
        size = len(m)
        pivot_at = next((k for k in range(size) if m[k][k] != 0), None)
        if pivot_at is None:
            hyperbolic = next(
                ((i, j) for i in range(size) for j in range(i + 1, size) if m[i][j] != 0),
                None)
            if hyperbolic is None:
                zeros += size
                break
            i, j = hyperbolic
            for k in range(size):
                m[i][k] += m[j][k]
            for k in range(size):
                m[k][i] += m[k][j]
            pivot_at = i
        if pivot_at != 0:
            k = pivot_at
            m[0], m[k] = m[k], m[0]
            for row in m:
                row[0], row[k] = row[k], row[0]
        pivot = m[0][0]
        if pivot > 0:
            positives += 1
        else:
            negatives += 1
        reduced = []
        for i in range(1, size):
            factor = m[i][0] / pivot
            reduced.append([m[i][j] - factor * m[0][j] for j in range(1, size)])
        m = reduced
    return Inertia(positives, zeros, negatives)


def hodge_obstructed(config: CurveConfig) -> bool:
    """Two or more positive directions cannot embed in any surface lattice."""
    return inertia(config).positives >= 2


# --- badness bookkeeping -------------------------------------------------------

@dataclass(frozen=True)
class RealizableWith:
    seed: str
    seed_config: CurveConfig
    script: MoveScript


@dataclass(frozen=True)
class Obstructed:
    evidence: Inertia
    stage: CurveConfig


@dataclass(frozen=True)
class Unknown:
    reason: str


Verdict = RealizableWith | Obstructed | Unknown


@dataclass(frozen=True)
class RealizabilityReport:
    config: CurveConfig
    valency: tuple[int, ...]
    excess: tuple[int, ...]                    # sigma(C) = C^2 + v(C)
    badness: int                               # #{C : sigma(C) >= 1}
    bad_vertices: tuple[int, ...]
    distances: tuple[tuple[int, int, int], ...]  # (i, j, d) among bad vertices
    verdict: Verdict | None = None


def _require_unit_tree(config: CurveConfig) -> None:
    n = len(config)
    for i in range(n):
        for j in range(i + 1, n):
            if config.pairs[i][j] > 1:
                raise InvalidInputError(
                    "realizability bookkeeping needs unit edge multiplicities")
    if not is_tree(config.reduced_divisor()):
        raise InvalidInputError("realizability bookkeeping needs a tree")


def _distances_from(config: CurveConfig, start: int) -> list[int]:
    n = len(config)
    dist = [-1] * n
    dist[start] = 0
    queue = [start]
    while queue:
        nxt = []
        for node in queue:
            for j in range(n):
                if j != node and config.pairs[node][j] > 0 and dist[j] < 0:
                    dist[j] = dist[node] + 1
                    nxt.append(j)
        queue = nxt
    return dist


def badness_report(config: CurveConfig) -> RealizabilityReport:
    """Per-vertex valency and excess, badness count, bad-vertex distances."""
    _require_unit_tree(config)
    n = len(config)
    valency = tuple(
        sum(1 for j in range(n) if j != i and config.pairs[i][j] > 0) for i in range(n))
    excess = tuple(config.weights[i] + valency[i] for i in range(n))
    bad = tuple(i for i in range(n) if excess[i] >= 1)
    distances = []
    for a in range(len(bad)):
        dist = _distances_from(config, bad[a])
        for b in range(a + 1, len(bad)):
            distances.append((bad[a], bad[b], dist[bad[b]]))
    return RealizabilityReport(config, valency, excess, len(bad), bad, tuple(distances))


# --- the sufficient construction -------------------------------------------------

def _case_matches(report: RealizabilityReport) -> bool:
    b = report.badness
    if b <= 1:
        return True
    sigma = [report.excess[i] for i in report.bad_vertices]
    if b == 2:
        d = report.distances[0][2]
        if d == 1:
            return sigma[0] == 1 or sigma[1] == 1 or sigma == [2, 2]
        if d == 2:
            return sigma == [1, 1]
        return False
    if b == 3:
        if sigma != [1, 1, 1]:
            return False
        dist = sorted(entry[2] for entry in report.distances)
        return dist == [1, 1, 2]
    return False


def _leaf_contraction_closure(config: CurveConfig) -> tuple[CurveConfig, list[tuple[str, str]]]:
    """Contract (-1)-leaves (lowest index first) until none remain.

    Returns the terminal configuration and the (neighbour, leaf) record of
    each contraction, in order.
    """
    record = []
    current = config
    while True:
        n = len(current)
        target = None
        for i in range(n):
            if current.weights[i] != -1 or current.genera[i] != 0:
                continue
            neighbours = [j for j in range(n) if j != i and current.pairs[i][j] > 0]
            if len(neighbours) == 1:
                target = (i, neighbours[0])
                break
        if target is None:
            return current, record
        leaf, neighbour = target
        record.append((current.labels[neighbour], current.labels[leaf]))
        current, _ = contract(current, leaf)


def _identify_seed(terminal: CurveConfig, badness: int) -> str | None:
    weights = sorted(terminal.weights)
    n = len(terminal)
    if badness == 0:
        return "quadric-zero-curve" if n == 1 and weights == [0] else None
    if badness == 1:
        if n == 1 and weights[0] >= 1:
            return f"hirzebruch-F{weights[0]}-section"
        return None
    if badness == 2 and n == 2 and terminal.pairs[0][1] == 1:
        if weights == [1, 1]:
            return "plane-line-pair"
        if weights[0] == 0 and weights[1] >= 0:
            return f"hirzebruch-F{weights[1]}-fiber-and-section"
        return None
    if badness == 2 and n == 3 and weights == [-2, 0, 0]:
        return "base-chain-0-m2-0"
    if badness == 3 and n == 3 and weights == [-1, 0, 0]:
        return "base-chain-0-m1-0"
    return None


def replay_realization(verdict: RealizableWith, target: CurveConfig) -> CurveConfig:
    """Blow the seed up along the script and restrict to the target's curves."""
    current = verdict.seed_config
    for move in verdict.script.moves:
        if not isinstance(move, BlowUpGeneric):
            raise InvalidInputError("realization scripts consist of generic blow-ups")
        current, _ = blow_up(
            current, GenericPointOn(current.index(move.curve)), new_label=move.new_label)
    return current.restricted([current.index(lab) for lab in target.labels])


def realizability_sufficient(config: CurveConfig) -> RealizableWith | Unknown:
    """Apply the sufficient case table (badness <= 1, and the listed b = 2, 3
    shapes).  On a match, emit the seed surface and the forward blow-up
    script whose replay reproduces the input; otherwise Unknown.
    """
    report = badness_report(config)
    if not _case_matches(report):
        return Unknown("outside the sufficient case table")

    n = len(config)
    valency = report.valency
    # raise good vertices to excess 0; the gap is restored by extra blow-ups
    lifted_weights = tuple(
        config.weights[i] if report.excess[i] >= 1 else -valency[i] for i in range(n))
    deltas = tuple(lifted_weights[i] - config.weights[i] for i in range(n))
    lifted = CurveConfig(config.labels, lifted_weights, config.genera,
                         tuple(tuple(lifted_weights[i] if i == j else config.pairs[i][j]
                                     for j in range(n)) for i in range(n)))

    terminal, contractions = _leaf_contraction_closure(lifted)
    seed = _identify_seed(terminal, report.badness)
    if seed is None:
        raise AssertionError("sufficient case matched but terminal is not a seed")

    moves = [BlowUpGeneric(neighbour, new_label=leaf)
             for neighbour, leaf in reversed(contractions)]
    for i in range(n):
        moves.extend([BlowUpGeneric(config.labels[i])] * deltas[i])
    verdict = RealizableWith(seed, terminal, MoveScript(tuple(moves)))
    assert replay_realization(verdict, config) == config
    return verdict


# --- contraction closure ----------------------------------------------------------

@dataclass(frozen=True)
class ClosureResult:
    config: CurveConfig
    script: MoveScript
    obstruction: Obstructed | None = None


def contraction_closure(config: CurveConfig) -> ClosureResult:
    """Contract weight-(-1) genus-0 vertices (lowest index first) until none
    remain, testing the Hodge obstruction at every stage; an obstructed stage
    short-circuits the closure with its evidence.
    """
    moves: list[Contract] = []
    current = config
    while True:
        signature = inertia(current)
        if signature.positives >= 2:
            return ClosureResult(current, MoveScript(tuple(moves)),
                                 Obstructed(signature, current))
        target = next(
            (i for i in range(len(current))
             if current.weights[i] == -1 and current.genera[i] == 0),
            None)
        if target is None or len(current) == 1:
            return ClosureResult(current, MoveScript(tuple(moves)))
        moves.append(Contract(current.labels[target]))
        current, _ = contract(current, target)


def realizability_report(config: CurveConfig) -> RealizabilityReport:
    """Badness bookkeeping plus the final verdict.

    Obstructed (two positive directions at some contraction stage) and
    RealizableWith are mutually exclusive; between them lies an honest
    Unknown.
    """
    report = badness_report(config)
    closure = contraction_closure(config)
    if closure.obstruction is not None:
        verdict: Verdict = closure.obstruction
    else:
        verdict = realizability_sufficient(config)
    return RealizabilityReport(report.config, report.valency, report.excess,
                               report.badness, report.bad_vertices,
                               report.distances, verdict)
