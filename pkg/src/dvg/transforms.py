"""Birational and twist moves on configurations and divisors.

Blow-ups and numerical contractions change the ambient configuration;
twist-off/twist-on only move the divisor.  Spherical twists are modelled
purely by their divisor-level effect (O_D -> O_{D-A}); the functor itself
is out of scope.  All operations are pure and return new values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .lattice import (
    CurveConfig,
    Divisor,
    DvgError,
    InvalidInputError,
    is_connected,
    pairing,
)
from .props import (
    NotCurvelikeError,
    find_one_decomposition,
    is_curvelike,
    is_minimal,
    is_negative_definite,
)


class MoveError(DvgError):
    """A move's precondition failed; the message names the failed inequality."""


# --- move records ------------------------------------------------------------

@dataclass(frozen=True)
class BlowUpGeneric:
    curve: str
    new_label: str | None = None

    def trace(self) -> str:
        return f"blowup {self.curve}"


@dataclass(frozen=True)
class BlowUpIntersection:
    curve1: str
    curve2: str
    new_label: str | None = None

    def trace(self) -> str:
        return f"blowup {self.curve1}*{self.curve2}"


@dataclass(frozen=True)
class Contract:
    curve: str

    def trace(self) -> str:
        return f"contract {self.curve}"


@dataclass(frozen=True)
class TwistOff:
    curve: str

    def trace(self) -> str:
        return f"twistoff {self.curve}"


@dataclass(frozen=True)
class TwistOn:
    curve: str

    def trace(self) -> str:
        return f"twiston {self.curve}"


Move = BlowUpGeneric | BlowUpIntersection | Contract | TwistOff | TwistOn


@dataclass(frozen=True)
class MoveScript:
    """An ordered list of moves relating two divisor presentations."""

    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def trace(self) -> str:
        return "\n".join(move.trace() for move in self.moves)


def replay(script: MoveScript, config: CurveConfig,
           divisor: Divisor | None = None) -> tuple[CurveConfig, Divisor | None]:
    """Replay a script on a presentation, returning the target presentation."""
    cur = divisor if divisor is not None else config.zero_divisor()
    for move in script.moves:
        cfg = cur.config
        if isinstance(move, Contract):
            _, push = contract(cfg, cfg.index(move.curve))
            cur = push(cur)
        elif isinstance(move, TwistOff):
            cur = twist_off(cur, cfg.index(move.curve))
        elif isinstance(move, TwistOn):
            cur = twist_on(cur, cfg.index(move.curve))
        elif isinstance(move, BlowUpGeneric):
            _, pull = blow_up(cfg, GenericPointOn(cfg.index(move.curve)),
                              new_label=move.new_label)
            cur = pull(cur)
        elif isinstance(move, BlowUpIntersection):
            _, pull = blow_up(
                cfg, IntersectionOf(cfg.index(move.curve1), cfg.index(move.curve2)),
                new_label=move.new_label)
            cur = pull(cur)
        else:
            raise MoveError(f"unknown move {move!r}")
    return cur.config, (cur if divisor is not None else None)


# --- blow-up and contraction -------------------------------------------------

@dataclass(frozen=True)
class GenericPointOn:
    curve: int


@dataclass(frozen=True)
class IntersectionOf:
    curve1: int
    curve2: int


def _fresh_label(config: CurveConfig, proposed: str | None) -> str:
    if proposed is not None:
        if proposed in config.labels:
            raise MoveError(f"label {proposed!r} already present")
        return proposed
    counter = 1
    while f"E{counter}" in config.labels:
        counter += 1
    return f"E{counter}"


def blow_up(config: CurveConfig, site: GenericPointOn | IntersectionOf,
            new_label: str | None = None) -> tuple[CurveConfig, Callable[[Divisor], Divisor]]:
    """Blow up a point, appending the exceptional (-1)-curve.

    The site is either a generic point on one curve or a transversal
    intersection of two curves.  The returned pullback adds the exceptional
    curve with multiplicity equal to the sum of multiplicities of the curves
    through the site; it preserves all intersection numbers.
    """
    n = len(config)
    label = _fresh_label(config, new_label)
    weights = list(config.weights)
    matrix = [list(row) + [0] for row in config.pairs]
    new_row = [0] * (n + 1)

    if isinstance(site, GenericPointOn):
        i = site.curve
        if not 0 <= i < n:
            raise MoveError(f"no curve with index {i}")
        through = (i,)
        weights[i] -= 1
        matrix[i][n] = new_row[i] = 1
    elif isinstance(site, IntersectionOf):
        i, j = site.curve1, site.curve2
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise MoveError("intersection site needs two distinct curves")
        if config.pairs[i][j] < 1:
            raise MoveError(
                f"{config.labels[i]}.{config.labels[j]} = {config.pairs[i][j]} < 1: "
                "no intersection point to blow up")
        through = (i, j)
        weights[i] -= 1
        weights[j] -= 1
        matrix[i][j] -= 1
        matrix[j][i] -= 1
        matrix[i][n] = new_row[i] = 1
        matrix[j][n] = new_row[j] = 1
    else:
        raise MoveError(f"unknown blow-up site {site!r}")

    for k in through:
        matrix[k][k] = weights[k]
    new_row[n] = -1
    matrix.append(new_row)
    new_config = CurveConfig(
        config.labels + (label,),
        tuple(weights) + (-1,),
        config.genera + (0,),
        tuple(tuple(row) for row in matrix),
    )

    def pullback(d: Divisor) -> Divisor:
        if d.config != config:
            raise InvalidInputError("pullback applies to divisors on the blown-up configuration")
        exceptional = sum(d.mult[k] for k in through)
        return Divisor(new_config, d.mult + (exceptional,))

    return new_config, pullback


def contract(config: CurveConfig, i: int) -> tuple[CurveConfig, Callable[[Divisor], Divisor]]:
    """Numerically contract a (-1)-curve, merging its neighbours.

    Weights gain p_ji^2 and pairs gain p_ji * p_ki -- the combinatorial
    shadow of blowing down.  The returned pushforward drops the coefficient.
    """
    if not 0 <= i < len(config):
        raise MoveError(f"no curve with index {i}")
    if config.weights[i] != -1:
        raise MoveError(
            f"{config.labels[i]}^2 = {config.weights[i]} != -1: not contractible")
    if config.genera[i] != 0:
        raise MoveError(f"{config.labels[i]} has genus {config.genera[i]} != 0")
    keep = [k for k in range(len(config)) if k != i]
    matrix = []
    for j in keep:
        row = []
        for k in keep:
            if j == k:
                row.append(config.pairs[j][j] + config.pairs[j][i] ** 2)
            else:
                row.append(config.pairs[j][k] + config.pairs[j][i] * config.pairs[k][i])
        matrix.append(tuple(row))
    new_config = CurveConfig(
        tuple(config.labels[k] for k in keep),
        tuple(matrix[a][a] for a in range(len(keep))),
        tuple(config.genera[k] for k in keep),
        tuple(matrix),
    )

    def pushforward(d: Divisor) -> Divisor:
        if d.config != config:
            raise InvalidInputError("pushforward applies to divisors on the source configuration")
        return Divisor(new_config, tuple(d.mult[k] for k in keep))

    return new_config, pushforward


def pullback_through_contraction(config: CurveConfig, i: int,
                                 contracted: CurveConfig) -> Callable[[Divisor], Divisor]:
    """Total-transform map inverse to ``contract(config, i)``'s pushforward.

    The contracted curve reappears with multiplicity sum_j c_j p_ji, which
    preserves all pairings.
    """
    keep = [k for k in range(len(config)) if k != i]

    def pullback(d: Divisor) -> Divisor:
        if d.config != contracted:
            raise InvalidInputError("pullback applies to divisors on the contracted configuration")
        exceptional = sum(c * config.pairs[k][i] for c, k in zip(d.mult, keep))
        mult = list(d.mult)
        mult.insert(i, exceptional)
        return Divisor(config, tuple(mult))

    return pullback


def contractible_in(d: Divisor, i: int) -> bool:
    """Can curve i be blown down inside D?  Needs a (-1)-curve with D.C = 0;
    the pushforward is then again a divisor of the same square."""
    config = d.config
    return (config.weights[i] == -1 and config.genera[i] == 0
            and d.mult[i] >= 1 and pairing(config.curve(i), d) == 0)


# --- spherical twists at the divisor level -----------------------------------

def twist_off(d: Divisor, i: int) -> Divisor:
    """Remove a (-2)-curve C with D.C = -1 from D; preserves D^2."""
    config = d.config
    name = config.labels[i]
    if config.weights[i] != -2:
        raise MoveError(f"{name}^2 = {config.weights[i]} != -2")
    if config.genera[i] != 0:
        raise MoveError(f"genus({name}) = {config.genera[i]} != 0")
    if d.mult[i] < 1:
        raise MoveError(f"multiplicity of {name} in D is 0, need >= 1")
    degree = pairing(config.curve(i), d)
    if degree != -1:
        raise MoveError(f"D.{name} = {degree} != -1")
    return d - config.curve(i)


def twist_on(d: Divisor, i: int) -> Divisor:
    """Add a (-m)-curve C (m >= 2) with D.C = 1 to D; -D^2 grows by m - 2."""
    config = d.config
    name = config.labels[i]
    if config.weights[i] > -2:
        raise MoveError(f"{name}^2 = {config.weights[i]} > -2")
    if config.genera[i] != 0:
        raise MoveError(f"genus({name}) = {config.genera[i]} != 0")
    degree = pairing(config.curve(i), d)
    if degree != 1:
        raise MoveError(f"D.{name} = {degree} != 1")
    return d + config.curve(i)


# --- reduction to minimal form ------------------------------------------------

@dataclass(frozen=True)
class ReduceResult:
    divisor: Divisor
    config: CurveConfig
    script: MoveScript


def reduce_to_minimal(d: Divisor) -> ReduceResult:
    """Contract and twist off until the divisor is minimally curvelike.

    Deterministic order: all contractions by lowest index, then all
    twist-offs by lowest index, repeated until neither move applies.
    """
    verdict = is_curvelike(d)
    if not verdict:
        raise NotCurvelikeError(f"reduction needs a curvelike divisor ({verdict.reason})")
    moves: list[Move] = []
    cur = d
    while True:
        progressed = False
        while True:
            target = next((i for i in cur.support if contractible_in(cur, i)), None)
            if target is None:
                break
            moves.append(Contract(cur.config.labels[target]))
            _, push = contract(cur.config, target)
            cur = push(cur)
            progressed = True
        while True:
            target = next(
                (i for i in cur.support
                 if cur.config.weights[i] == -2 and cur.config.genera[i] == 0
                 and pairing(cur.config.curve(i), cur) == -1),
                None)
            if target is None:
                break
            moves.append(TwistOff(cur.config.labels[target]))
            cur = twist_off(cur, target)
            progressed = True
        if not progressed:
            break
    assert is_minimal(cur).minimal
    return ReduceResult(cur, cur.config, MoveScript(tuple(moves)))


class EssentiallyCurve(NamedTuple):
    is_curve: bool
    terminal_weight: int | None


def is_essentially_curve(d: Divisor) -> EssentiallyCurve:
    """Does reduction end on a single reduced curve?  Reports its weight."""
    result = reduce_to_minimal(d)
    terminal = result.divisor
    if terminal.total_multiplicity == 1:
        return EssentiallyCurve(True, terminal.config.weights[terminal.support[0]])
    return EssentiallyCurve(False, None)


# --- curvelike decompositions --------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Parts D_1, ..., D_m on the configuration reached by the recorded
    contractions, with D_i.(D_{i+1}+...+D_m) = 1 and squares within bounds."""

    config: CurveConfig
    parts: tuple[Divisor, ...]
    script: MoveScript = field(default_factory=MoveScript)

    @property
    def total(self) -> Divisor:
        total = self.config.zero_divisor()
        for part in self.parts:
            total = total + part
        return total


def decomposition_is_valid(dec: Decomposition, original: Divisor) -> bool:
    """Validate against the defining inequalities.

    Checks: the script contracts the original divisor onto ``dec.config``;
    parts sum to the pushed-forward divisor; every part is curvelike; each
    D_i meets the sum of the later parts in exactly 1; squares lie between
    D^2 and -2 (between D^2 and -1 for (-1)-divisors, where the literal
    bound is unsatisfiable even for a single curve).
    """
    cur = original
    for move in dec.script.moves:
        if not isinstance(move, Contract):
            return False
        idx = cur.config.index(move.curve)
        if not contractible_in(cur, idx):
            return False
        _, push = contract(cur.config, idx)
        cur = push(cur)
    if cur.config != dec.config or not dec.parts:
        return False
    if dec.total != cur:
        return False
    square = cur.square
    upper = -2 if square <= -2 else -1
    for part in dec.parts:
        if not part.is_effective or not is_curvelike(part):
            return False
        if not square <= part.square <= upper:
            return False
    for i in range(len(dec.parts) - 1):
        tail = dec.config.zero_divisor()
        for part in dec.parts[i + 1:]:
            tail = tail + part
        if pairing(dec.parts[i], tail) != 1:
            return False
    return True


def _first_contractible(d: Divisor) -> int | None:
    return next((i for i in d.support if contractible_in(d, i)), None)


def _simple_chain_part(r: Divisor, n: int) -> Divisor:
    """The simple (-n)-chain part of the chopping construction.

    Finds a 1-decomposition starting on a (-n-1)-curve, follows it until the
    first (-1)-curve, then walks the unique intersection path back to the
    start.  The result is a reduced chain with weights -n-1, -2, ..., -2, -1.
    """
    config = r.config
    weights = config.weights
    pairs = config.pairs
    sequence = None
    for i in r.support:
        if weights[i] != -n - 1:
            continue
        head = config.curve(i)
        if pairing(head, r - head) != 1:
            continue
        tail = find_one_decomposition(r - head)
        if tail is not None:
            sequence = [i] + list(tail.order)
            break
    if sequence is None:
        raise AssertionError("chopping invariant failed: no chain-opening 1-decomposition")

    prefix: list[int] = []
    partial = config.zero_divisor()
    stop = None
    for pos, idx in enumerate(sequence):
        if pos > 0:
            if weights[idx] not in (-1, -2) or pairing(partial, config.curve(idx)) != 1:
                raise AssertionError("chopping invariant failed: unexpected chain step")
        prefix.append(idx)
        partial = partial + config.curve(idx)
        if pos > 0 and weights[idx] == -1:
            stop = pos
            break
    if stop is None:
        raise AssertionError("chopping invariant failed: no (-1)-curve reached")

    path = [stop]
    cursor = stop
    while cursor != 0:
        nearer = [p for p in range(cursor) if pairs[prefix[p]][prefix[cursor]] == 1]
        if not nearer:
            raise AssertionError("chopping invariant failed: broken chain path")
        cursor = min(nearer)
        path.append(cursor)
    curves = [prefix[p] for p in reversed(path)]  # from the (-n-1)-curve to the (-1)-curve
    if len(set(curves)) != len(curves):
        raise AssertionError("chopping invariant failed: chain not reduced")
    chain_weights = [weights[c] for c in curves]
    if (chain_weights[0] != -n - 1 or chain_weights[-1] != -1
            or any(w != -2 for w in chain_weights[1:-1])):
        raise AssertionError("chopping invariant failed: wrong chain weights")
    mult = [0] * len(config)
    for c in curves:
        mult[c] = 1
    return Divisor(config, tuple(mult))


def _chop(r: Divisor) -> list[Divisor]:
    """Recursive part extraction; parts are pulled back onto r's configuration."""
    pullbacks = []
    while True:
        target = _first_contractible(r)
        if target is None:
            break
        source = r.config
        contracted, push = contract(source, target)
        pullbacks.append(pullback_through_contraction(source, target, contracted))
        r = push(r)

    if r.total_multiplicity == 1:
        parts = [r]
    else:
        square = r.square
        n = -square
        part = None
        rest = None
        for i in r.support:
            w = r.config.weights[i]
            if not (-2 >= w >= square):
                continue
            head = r.config.curve(i)
            candidate_rest = r - head
            if pairing(head, candidate_rest) != 1:
                continue
            if is_curvelike(candidate_rest):
                part, rest = head, candidate_rest
                break
        if part is None:
            part = _simple_chain_part(r, n)
            rest = r - part
            if not rest.is_effective or not is_curvelike(rest):
                raise AssertionError("chopping invariant failed: chain remainder not curvelike")
        parts = [part] + _chop(rest)

    for pull in reversed(pullbacks):
        parts = [pull(p) for p in parts]
    return parts


def curvelike_decomposition(d: Divisor) -> Decomposition:
    """Decompose a curvelike divisor into curves and simple chains.

    Contractible (-1)-curves are contracted first (recorded in the script);
    single-curve parts C with C.(D-C) = 1 and -2 >= C^2 >= D^2 are preferred,
    otherwise a simple chain is built through the (-n-1)-branch of the
    constructive case analysis.  The output always validates.
    """
    verdict = is_curvelike(d)
    if not verdict:
        raise NotCurvelikeError(f"decomposition needs a curvelike divisor ({verdict.reason})")
    moves: list[Move] = []
    cur = d
    while True:
        target = _first_contractible(cur)
        if target is None:
            break
        moves.append(Contract(cur.config.labels[target]))
        _, push = contract(cur.config, target)
        cur = push(cur)
    parts = _chop(cur)
    dec = Decomposition(cur.config, tuple(parts), MoveScript(tuple(moves)))
    assert decomposition_is_valid(dec, d)
    return dec


# --- Laufer's algorithm ---------------------------------------------------------

LAUFER_ITERATION_CAP = 10_000


def laufer_cycle(config: CurveConfig, support: Sequence[int] | None = None,
                 cap: int = LAUFER_ITERATION_CAP) -> Divisor:
    """The numerical cycle: minimal Z with z_i > 0 and Z.C_i <= 0 on the support.

    Laufer's incremental algorithm, made deterministic: start at the lowest
    support index and always add the lowest-index curve with Z.C > 0.  The
    support must be connected and negative definite (termination guard).
    """
    if support is None:
        support = tuple(range(len(config)))
    else:
        support = tuple(dict.fromkeys(support))
    if not support:
        raise InvalidInputError("support must be non-empty")
    probe = config.divisor([1 if i in support else 0 for i in range(len(config))])
    if not is_connected(probe):
        raise InvalidInputError("support must be connected")
    if not is_negative_definite(config, support):
        raise InvalidInputError("support is not negative definite; the cycle would diverge")

    mult = [0] * len(config)
    mult[support[0]] = 1
    for _ in range(cap):
        z = Divisor(config, tuple(mult))
        violator = next(
            (i for i in support if pairing(config.curve(i), z) > 0), None)
        if violator is None:
            assert all(mult[i] >= 1 for i in support)
            return z
        mult[violator] += 1
    raise RuntimeError("Laufer iteration cap exceeded on a negative definite support")
