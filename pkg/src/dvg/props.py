"""Property checkers with witnesses: negativity, connectivity, the curvelike
criterion and minimality.

The witness searches are exhaustive backtracking over remaining-divisor
states with memoized failures, so returned witnesses are reproducible
(lowest curve index wins ties) and absence of a witness is a proof within
the finite state space prod(c_i + 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .lattice import (
    CapExceededError,
    CurveConfig,
    Divisor,
    DvgError,
    InvalidInputError,
    DEFAULT_SUBDIVISOR_CAP,
    k_degree,
    pairing,
    subdivisors,
)


class NotCurvelikeError(DvgError):
    """An operation that needs a curvelike divisor got something else."""


class WitnessKind(enum.Enum):
    ONE_DECOMPOSITION = "one-decomposition"
    NEGATIVE_FILTRATION = "negative-filtration"


@dataclass(frozen=True)
class SequenceWitness:
    """An ordered list of curve indices (with repetitions) certifying either a
    1-decomposition or a negative filtration of a divisor."""

    kind: WitnessKind
    order: tuple[int, ...]

    def labels(self, config: CurveConfig) -> tuple[str, ...]:
        return tuple(config.labels[i] for i in self.order)


def witness_is_valid(d: Divisor, witness: SequenceWitness) -> bool:
    """Check the defining inequalities of a witness against its divisor."""
    counts = [0] * len(d.config)
    for i in witness.order:
        counts[i] += 1
    if tuple(counts) != d.mult:
        return False
    remaining = list(d.mult)
    m = len(witness.order)
    for pos, i in enumerate(witness.order):
        tail = d.config.divisor(remaining)
        value = pairing(d.config.curve(i), tail)
        if witness.kind is WitnessKind.NEGATIVE_FILTRATION:
            if value >= 0:
                return False
        else:
            # the last curve of a 1-decomposition carries no condition
            if pos < m - 1 and value - d.config.weights[i] != 1:
                return False
        remaining[i] -= 1
    return True


class VerdictStatus(enum.Enum):
    CURVELIKE = "curvelike"
    NOT_CURVELIKE = "not-curvelike"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class CurvelikeVerdict:
    status: VerdictStatus
    n: int | None = None
    one_decomposition: SequenceWitness | None = None
    negative_filtration: SequenceWitness | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.status is VerdictStatus.CURVELIKE


# --- negativity ------------------------------------------------------------

def _leading_minor_signs_negative_definite(matrix: list[list[int]]) -> bool:
    """Sylvester's criterion via fraction-free (Bareiss) elimination.

    The pivot produced at step k equals the leading principal k+1 minor, so
    negative definiteness is exactly the alternating sign pattern
    (-1)^(k+1) det(M_{k+1}) > 0; a zero pivot already refutes definiteness.
    """
    m = [row[:] for row in matrix]
    n = len(m)
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0 or (pivot > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return True


def is_negative_definite(config: CurveConfig, support: Sequence[int] | None = None) -> bool:
    """Is the Gram matrix restricted to ``support`` negative definite?"""
    if support is None:
        support = range(len(config))
    idx = list(support)
    if not idx:
        raise InvalidInputError("support must be non-empty")
    matrix = [[config.pairs[i][j] for j in idx] for i in idx]
    return _leading_minor_signs_negative_definite(matrix)


def dominance_sufficient(d: Divisor) -> bool:
    """C.D < 0 for every curve C in D.

    When true the support is negative definite: the negated weighted Gram
    matrix is strictly diagonally dominant with positive diagonal.
    """
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    return all(pairing(d.config.curve(i), d) < 0 for i in d.support)


def is_negatively_closed(d: Divisor, cap: int = DEFAULT_SUBDIVISOR_CAP) -> bool:
    """A^2 < 0 for every non-zero subdivisor A <= D, exhaustively."""
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    return all(a.square < 0 for a in subdivisors(d, cap=cap))


def is_one_connected(d: Divisor, cap: int = DEFAULT_SUBDIVISOR_CAP) -> bool:
    """A.(D-A) >= 1 for every proper non-zero subdivisor, exhaustively."""
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    return all(pairing(a, d - a) >= 1 for a in subdivisors(d, proper=True, cap=cap))


# --- witness searches ------------------------------------------------------

def find_negative_filtration(d: Divisor) -> SequenceWitness | None:
    """A negative filtration of D if one exists.

    Backtracking over the remaining divisor: the next curve C must satisfy
    C.(remaining) < 0, then recurse on remaining - C.  Failures are memoized
    on the remaining multiplicity vector; ties break to the lowest index.
    """
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    config = d.config
    pairs = config.pairs
    failed: set[tuple[int, ...]] = set()

    def search(rem: tuple[int, ...]) -> list[int] | None:
        if not any(rem):
            return []
        if rem in failed:
            return None
        for i, m in enumerate(rem):
            if m == 0:
                continue
            row = pairs[i]
            if sum(c * row[j] for j, c in enumerate(rem) if c) < 0:
                child = list(rem)
                child[i] -= 1
                tail = search(tuple(child))
                if tail is not None:
                    return [i] + tail
        failed.add(rem)
        return None

    order = search(d.mult)
    if order is None:
        return None
    witness = SequenceWitness(WitnessKind.NEGATIVE_FILTRATION, tuple(order))
    assert witness_is_valid(d, witness)
    return witness


def find_one_decomposition(d: Divisor) -> SequenceWitness | None:
    """A 1-decomposition of D if one exists.

    D is 1-decomposable iff D is a single curve or some curve C <= D has
    C.(D-C) = 1 with D-C again 1-decomposable.  Memoized on the remaining
    multiplicity vector, lowest-index tie-break.
    """
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    config = d.config
    pairs = config.pairs
    weights = config.weights
    failed: set[tuple[int, ...]] = set()

    def search(rem: tuple[int, ...]) -> list[int] | None:
        if sum(rem) == 1:
            return [rem.index(1)]
        if rem in failed:
            return None
        for i, m in enumerate(rem):
            if m == 0:
                continue
            row = pairs[i]
            tail_value = sum(c * row[j] for j, c in enumerate(rem) if c) - weights[i]
            if tail_value == 1:
                child = list(rem)
                child[i] -= 1
                tail = search(tuple(child))
                if tail is not None:
                    return [i] + tail
        failed.add(rem)
        return None

    order = search(d.mult)
    if order is None:
        return None
    witness = SequenceWitness(WitnessKind.ONE_DECOMPOSITION, tuple(order))
    assert witness_is_valid(d, witness)
    return witness


# --- the curvelike criterion ------------------------------------------------

def is_curvelike(d: Divisor) -> CurvelikeVerdict:
    """Numerical curvelike test: rational, 1-decomposable, negatively filtered.

    Inapplicable when a supported curve has positive genus -- there is no
    purely numerical criterion off the rational case.  For a curvelike
    divisor the verdict carries n = -D^2 and both validating witnesses;
    D.K = n - 2 then holds automatically by Riemann-Roch.
    """
    if not d.is_effective:
        raise InvalidInputError("needs an effective divisor")
    bad = [d.config.labels[i] for i in d.support if d.config.genera[i] > 0]
    if bad:
        return CurvelikeVerdict(
            VerdictStatus.INAPPLICABLE,
            reason=f"non-rational curves in support: {', '.join(bad)}")
    decomposition = find_one_decomposition(d)
    if decomposition is None:
        return CurvelikeVerdict(VerdictStatus.NOT_CURVELIKE,
                                reason="no 1-decomposition exists")
    filtration = find_negative_filtration(d)
    if filtration is None:
        return CurvelikeVerdict(VerdictStatus.NOT_CURVELIKE,
                                reason="no negative filtration exists",
                                one_decomposition=decomposition)
    n = -d.square
    assert n >= 1 and k_degree(d) == n - 2
    return CurvelikeVerdict(VerdictStatus.CURVELIKE, n=n,
                            one_decomposition=decomposition,
                            negative_filtration=filtration)


# --- minimality -------------------------------------------------------------

@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    violations: tuple[tuple[str, int], ...]  # (move kind, curve index)
    degrees: tuple[tuple[int, int], ...]     # (curve index, D.C) for -1/-2 curves

    def __bool__(self) -> bool:
        return self.minimal


def is_minimal(d: Divisor) -> MinimalityReport:
    """Minimality of a curvelike divisor per the two single-curve moves.

    Violations are contractible (-1)-curves (D.C = 0) and twistable
    (-2)-curves (D.C = -1); checking single curves suffices.
    """
    verdict = is_curvelike(d)
    if not verdict:
        raise NotCurvelikeError(
            f"minimality is defined for curvelike divisors only ({verdict.reason})")
    violations = []
    degrees = []
    for i in d.support:
        if d.config.genera[i] != 0:
            continue
        w = d.config.weights[i]
        if w not in (-1, -2):
            continue
        degree = pairing(d.config.curve(i), d)
        degrees.append((i, degree))
        if w == -1 and degree == 0:
            violations.append(("contract", i))
        elif w == -2 and degree == -1:
            violations.append(("twistoff", i))
    return MinimalityReport(not violations, tuple(violations), tuple(degrees))
