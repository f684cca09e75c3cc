"""Core value types for curve configurations and effective divisors.

A configuration is a finite set of curves with integer self-intersections
(weights), genera and pairwise intersection numbers -- equivalently a
weighted multigraph, the dual intersection graph.  A divisor is a
non-negative integer multiplicity vector over a configuration.  Everything
here is exact integer arithmetic on immutable values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class DvgError(Exception):
    """Base class for errors raised by this package."""


class ConfigMismatchError(DvgError):
    """Two divisors living on different configurations were combined."""


class InvalidInputError(DvgError):
    """Input violates a documented precondition (corrupt or unusable data)."""


class CapExceededError(DvgError):
    """A configurable search cap or size bound was exceeded."""


@dataclass(frozen=True)
class Inertia:
    """Signature triple of a symmetric integer form: eigenvalue sign counts."""

    positives: int
    zeros: int
    negatives: int

    @property
    def dimension(self) -> int:
        return self.positives + self.zeros + self.negatives


@dataclass(frozen=True)
class CurveConfig:
    """A curve configuration: weights, genera and the intersection matrix.

    ``pairs`` is the full symmetric Gram matrix; its diagonal equals
    ``weights`` and off-diagonal entries are the (non-negative) pairwise
    intersection numbers.
    """

    labels: tuple[str, ...]
    weights: tuple[int, ...]
    genera: tuple[int, ...]
    pairs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise InvalidInputError("configuration needs at least one curve")
        if len(set(self.labels)) != n:
            raise InvalidInputError("curve labels must be pairwise distinct")
        if len(self.weights) != n or len(self.genera) != n or len(self.pairs) != n:
            raise InvalidInputError("field lengths disagree")
        for g in self.genera:
            if g < 0:
                raise InvalidInputError("genus must be non-negative")
        for i, row in enumerate(self.pairs):
            if len(row) != n:
                raise InvalidInputError("pair matrix is not square")
            if row[i] != self.weights[i]:
                raise InvalidInputError(
                    f"diagonal pair entry of {self.labels[i]} differs from its weight")
            for j, value in enumerate(row):
                if value != self.pairs[j][i]:
                    raise InvalidInputError("pair matrix is not symmetric")
                if i != j and value < 0:
                    raise InvalidInputError(
                        f"negative intersection number {self.labels[i]}.{self.labels[j]}")

    @classmethod
    def build(cls, curves: Sequence[tuple], pairs: Mapping | Iterable = ()) -> "CurveConfig":
        """Build a configuration from ``(label, weight[, genus])`` tuples.

        ``pairs`` maps label pairs to intersection numbers, either as a dict
        ``{("A", "B"): 1}`` or an iterable of ``(a, b, value)`` triples.
        Undeclared pairs are 0.
        """
        labels = tuple(c[0] for c in curves)
        weights = tuple(int(c[1]) for c in curves)
        genera = tuple(int(c[2]) if len(c) > 2 else 0 for c in curves)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise InvalidInputError("curve labels must be pairwise distinct")
        matrix = [[0] * len(labels) for _ in labels]
        for i, w in enumerate(weights):
            matrix[i][i] = w
        if isinstance(pairs, Mapping):
            items = [(a, b, v) for (a, b), v in pairs.items()]
        else:
            items = [tuple(entry) for entry in pairs]
        for a, b, value in items:
            if a not in index or b not in index:
                raise InvalidInputError(f"pair references unknown curve {a!r} or {b!r}")
            i, j = index[a], index[b]
            if i == j:
                raise InvalidInputError(f"pair {a}.{a} is the weight, not a pair entry")
            matrix[i][j] = matrix[j][i] = int(value)
        return cls(labels, weights, genera, tuple(tuple(row) for row in matrix))

    @classmethod
    def chain(cls, weights: Sequence[int], labels: Sequence[str] | None = None,
              genera: Sequence[int] | None = None) -> "CurveConfig":
        """A chain of curves, consecutive ones meeting transversally once."""
        n = len(weights)
        if labels is None:
            labels = tuple(f"C{i + 1}" for i in range(n))
        if genera is None:
            genera = (0,) * n
        pairs = [(labels[i], labels[i + 1], 1) for i in range(n - 1)]
        return cls.build(list(zip(labels, weights, genera)), pairs)

    @classmethod
    def star(cls, center_weight: int, leaf_weights: Sequence[int],
             labels: Sequence[str] | None = None) -> "CurveConfig":
        """A star: one central curve meeting each leaf once."""
        n = len(leaf_weights) + 1
        if labels is None:
            labels = tuple(["Z"] + [f"L{i + 1}" for i in range(n - 1)])
        curves = [(labels[0], center_weight)] + [
            (labels[i + 1], w) for i, w in enumerate(leaf_weights)]
        pairs = [(labels[0], lab, 1) for lab in labels[1:]]
        return cls.build(curves, pairs)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInputError(f"unknown curve {label!r}") from None

    def pair(self, i: int, j: int) -> int:
        return self.pairs[i][j]

    @property
    def canonical_degrees(self) -> tuple[int, ...]:
        """Adjunction degrees K.C_i = 2g_i - 2 - w_i."""
        return tuple(2 * g - 2 - w for g, w in zip(self.genera, self.weights))

    def divisor(self, mult: Mapping[str, int] | Sequence[int]) -> "Divisor":
        if isinstance(mult, Mapping):
            vec = [0] * len(self)
            for lab, m in mult.items():
                vec[self.index(lab)] = int(m)
            return Divisor(self, tuple(vec))
        return Divisor(self, tuple(int(m) for m in mult))

    def curve(self, i: int | str) -> "Divisor":
        """The reduced divisor consisting of a single curve."""
        if isinstance(i, str):
            i = self.index(i)
        vec = [0] * len(self)
        vec[i] = 1
        return Divisor(self, tuple(vec))

    def reduced_divisor(self) -> "Divisor":
        return Divisor(self, (1,) * len(self))

    def zero_divisor(self) -> "Divisor":
        return Divisor(self, (0,) * len(self))

    def permuted(self, perm: Sequence[int]) -> "CurveConfig":
        """Relabelled copy: new slot k holds old curve perm[k]."""
        idx = tuple(perm)
        return CurveConfig(
            tuple(self.labels[i] for i in idx),
            tuple(self.weights[i] for i in idx),
            tuple(self.genera[i] for i in idx),
            tuple(tuple(self.pairs[i][j] for j in idx) for i in idx),
        )

    def restricted(self, keep: Sequence[int]) -> "CurveConfig":
        """Sub-configuration on the given curve indices, in the given order."""
        idx = tuple(keep)
        return CurveConfig(
            tuple(self.labels[i] for i in idx),
            tuple(self.weights[i] for i in idx),
            tuple(self.genera[i] for i in idx),
            tuple(tuple(self.pairs[i][j] for j in idx) for i in idx),
        )


@dataclass(frozen=True)
class Divisor:
    """An effective divisor: non-negative multiplicities over a configuration."""

    config: CurveConfig
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != len(self.config):
            raise InvalidInputError("multiplicity vector length disagrees with configuration")
        for m in self.mult:
            if m < 0:
                raise InvalidInputError("multiplicities must be non-negative")

    @property
    def is_effective(self) -> bool:
        return any(self.mult)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mult) if m > 0)

    @property
    def total_multiplicity(self) -> int:
        return sum(self.mult)

    @property
    def is_reduced(self) -> bool:
        return all(m <= 1 for m in self.mult)

    @property
    def square(self) -> int:
        return pairing(self, self)

    @property
    def k_degree(self) -> int:
        return k_degree(self)

    @property
    def chi(self) -> int:
        return euler_char(self)

    def multiplicity(self, label: str) -> int:
        return self.mult[self.config.index(label)]

    def __add__(self, other: "Divisor") -> "Divisor":
        _same_config(self, other)
        return Divisor(self.config, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        _same_config(self, other)
        return Divisor(self.config, tuple(a - b for a, b in zip(self.mult, other.mult)))

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.config, tuple(k * m for m in self.mult))

    __rmul__ = __mul__

    def __le__(self, other: "Divisor") -> bool:
        _same_config(self, other)
        return all(a <= b for a, b in zip(self.mult, other.mult))

    def __lt__(self, other: "Divisor") -> bool:
        return self <= other and self.mult != other.mult

    def describe(self) -> str:
        terms = [f"{m if m > 1 else ''}{lab}"
                 for lab, m in zip(self.config.labels, self.mult) if m > 0]
        return " + ".join(terms) if terms else "0"


def _same_config(a: Divisor, b: Divisor) -> None:
    if a.config is not b.config and a.config != b.config:
        raise ConfigMismatchError("divisors live on different configurations")


def pairing(a: Divisor, b: Divisor) -> int:
    """Intersection number A.B of two divisors on the same configuration."""
    _same_config(a, b)
    pairs = a.config.pairs
    total = 0
    for i, ai in enumerate(a.mult):
        if ai == 0:
            continue
        row = pairs[i]
        total += ai * sum(bj * row[j] for j, bj in enumerate(b.mult) if bj)
    return total


def k_degree(d: Divisor) -> int:
    """Canonical degree D.K = sum of c_i (2g_i - 2 - w_i)."""
    return sum(m * k for m, k in zip(d.mult, d.config.canonical_degrees))


def euler_char(d: Divisor) -> int:
    """Euler characteristic chi(O_D) = -(D^2 + D.K)/2, always an integer."""
    if not d.is_effective:
        raise InvalidInputError("euler_char needs an effective divisor")
    s = d.square + k_degree(d)
    if s % 2 != 0:
        raise InvalidInputError("D^2 + D.K is odd: corrupted genus or weight data")
    return -s // 2


def euler_char_twisted(d: Divisor, line: Divisor) -> int:
    """chi(O_D(L)) = chi(O_D) + D.L."""
    return euler_char(d) + pairing(d, line)


def chi_additivity_check(a: Divisor, b: Divisor) -> bool:
    """Self-test hook for A.B = chi(A) + chi(B) - chi(A+B); must always hold."""
    _same_config(a, b)
    if not (a.is_effective and b.is_effective):
        raise InvalidInputError("chi additivity needs two effective divisors")
    return pairing(a, b) == euler_char(a) + euler_char(b) - euler_char(a + b)


DEFAULT_SUBDIVISOR_CAP = 10_000_000


def subdivisor_count(d: Divisor) -> int:
    """Number of non-zero subdivisors of D (including D itself)."""
    count = 1
    for m in d.mult:
        count *= m + 1
    return count - 1


def subdivisors(d: Divisor, proper: bool = False,
                cap: int = DEFAULT_SUBDIVISOR_CAP) -> Iterator[Divisor]:
    """All effective A with 0 < A <= D, in lexicographic multiplicity order.

    With ``proper`` the divisor itself is excluded.  Raises CapExceededError
    when the total count prod(c_i + 1) exceeds ``cap``: quantified checks
    must be exact or fail loudly.
    """
    if not d.is_effective:
        raise InvalidInputError("subdivisors of the zero divisor are not defined")
    count = 1
    for m in d.mult:
        count *= m + 1
        if count > cap:
            raise CapExceededError(
                f"subdivisor space exceeds cap ({cap}); raise the cap to insist")
    config = d.config
    for vec in itertools.product(*(range(m + 1) for m in d.mult)):
        if not any(vec):
            continue
        if proper and vec == d.mult:
            continue
        yield Divisor(config, vec)


def _support_adjacency(d: Divisor) -> dict[int, list[int]]:
    supp = d.support
    pairs = d.config.pairs
    return {i: [j for j in supp if j != i and pairs[i][j] > 0] for i in supp}


def is_connected(d: Divisor) -> bool:
    """Connectivity of the support graph (edge iff the curves meet)."""
    if not d.is_effective:
        raise InvalidInputError("connectivity of the zero divisor is not defined")
    adj = _support_adjacency(d)
    supp = d.support
    seen = {supp[0]}
    stack = [supp[0]]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(supp)


def is_tree(d: Divisor) -> bool:
    """Support is connected with edge count (with multiplicity) |supp| - 1.

    A double intersection point counts as two edges and creates a cycle.
    """
    if not is_connected(d):
        return False
    supp = d.support
    pairs = d.config.pairs
    edges = sum(pairs[i][j] for i, j in itertools.combinations(supp, 2))
    return edges == len(supp) - 1


# --- canonical forms -------------------------------------------------------

DEFAULT_CANONICAL_CURVES = 12
DEFAULT_CANONICAL_PERMS = 2_000_000


def _refined_colors(d: Divisor) -> list:
    """Stable vertex colours: (weight, genus, mult) refined by neighbourhoods."""
    pairs = d.config.pairs
    n = len(d.config)
    colors = [(d.config.weights[i], d.config.genera[i], d.mult[i]) for i in range(n)]
    for _ in range(n):
        refined = [
            (colors[i], tuple(sorted((pairs[i][j], colors[j])
                                     for j in range(n) if j != i and pairs[i][j])))
            for i in range(n)
        ]
        if len(set(refined)) == len(set(colors)):
            colors = refined
            break
        colors = refined
    return colors


def _twin_groups(d: Divisor, members: Sequence[int]) -> list[list[int]]:
    """Partition same-colour vertices into twin classes (interchangeable rows)."""
    pairs = d.config.pairs
    groups: list[list[int]] = []
    for v in members:
        for group in groups:
            u = group[0]
            if all(pairs[u][w] == pairs[v][w] for w in range(len(d.config)) if w not in (u, v)):
                group.append(v)
                break
        else:
            groups.append([v])
    return groups


def _multiset_permutations(counts: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct sequences using counts[k] copies of symbol k."""
    total = sum(counts)
    if total == 0:
        yield ()
        return
    for k, c in enumerate(counts):
        if c == 0:
            continue
        counts[k] -= 1
        for rest in _multiset_permutations(counts):
            yield (k,) + rest
        counts[k] += 1


def _class_orderings(d: Divisor, members: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a colour class, exchanging twins for free."""
    groups = _twin_groups(d, members)
    for key in _multiset_permutations([len(g) for g in groups]):
        iters = [iter(g) for g in groups]
        yield tuple(next(iters[k]) for k in key)


def _canonical(d: Divisor, max_curves: int, perm_cap: int) -> tuple[bytes, tuple[int, ...]]:
    n = len(d.config)
    if n > max_curves:
        raise CapExceededError(
            f"canonical form limited to {max_curves} curves (got {n})")
    colors = _refined_colors(d)
    classes: dict = {}
    for i, c in enumerate(colors):
        classes.setdefault(c, []).append(i)
    ordered_classes = [classes[c] for c in sorted(classes)]

    total = 1
    for members in ordered_classes:
        sizes = [len(g) for g in _twin_groups(d, members)]
        arrangements = 1
        for k in range(2, len(members) + 1):
            arrangements *= k
        for s in sizes:
            for k in range(2, s + 1):
                arrangements //= k
        total *= arrangements
        if total > perm_cap:
            raise CapExceededError(
                f"canonical form needs more than {perm_cap} candidate orderings")

    pairs = d.config.pairs
    keys = [(d.config.weights[i], d.config.genera[i], d.mult[i]) for i in range(n)]
    best = None
    best_perm = None
    for pieces in itertools.product(*(_class_orderings(d, m) for m in ordered_classes)):
        perm = tuple(itertools.chain.from_iterable(pieces))
        encoding = (
            tuple(keys[i] for i in perm),
            tuple(pairs[perm[i]][perm[j]] for i in range(n) for j in range(i + 1, n)),
        )
        if best is None or encoding < best:
            best = encoding
            best_perm = perm
    return repr(best).encode(), best_perm


def canonicalize(d: Divisor, max_curves: int = DEFAULT_CANONICAL_CURVES,
                 perm_cap: int = DEFAULT_CANONICAL_PERMS) -> bytes:
    """Canonical byte string, invariant under relabellings that preserve
    (weight, genus, multiplicity, pairs)."""
    return _canonical(d, max_curves, perm_cap)[0]


def canonical_permutation(d: Divisor, max_curves: int = DEFAULT_CANONICAL_CURVES,
                          perm_cap: int = DEFAULT_CANONICAL_PERMS) -> tuple[int, ...]:
    """A permutation realizing the canonical form (slot k holds curve perm[k])."""
    return _canonical(d, max_curves, perm_cap)[1]


def permuted_divisor(d: Divisor, perm: Sequence[int]) -> Divisor:
    return Divisor(d.config.permuted(perm), tuple(d.mult[i] for i in perm))


def is_isomorphic(d1: Divisor, d2: Divisor) -> bool:
    """True iff the two weighted, multiplicitied graphs are isomorphic."""
    if len(d1.config) != len(d2.config):
        return False
    return canonicalize(d1) == canonicalize(d2)
