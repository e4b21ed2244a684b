"""
Exact finite-group algebra over an explicit multiplication table.

Elements are integer ids into a Cayley table with the identity pinned at id 0.
Every set the toolkit produces is an ElementSet: a sorted, deduplicated tuple of
ids, so equality is structural and reports are deterministic.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.lib.utils import ToolkitError, ValidationError

ElementId = int

MAX_ORDER = 64
IDENTITY: ElementId = 0


class GroupTableError(ToolkitError):
    """Base exception for malformed Cayley tables."""

    pass


class NotLatinSquare(GroupTableError):
    """Raised when a row or column of the table is not a permutation."""

    pass


class NotAssociative(GroupTableError):
    """Raised when some triple violates associativity."""

    pass


class NoIdentityAtZero(GroupTableError):
    """Raised when the table has no identity element (or not at id 0)."""

    pass


class OrderTooLarge(GroupTableError):
    """Raised when a table exceeds the desk-scale order limit."""

    pass


@dataclass(frozen=True)
class ElementSet:
    """Canonical sorted set of element ids over one parent group."""

    members: Tuple[ElementId, ...] = ()

    @classmethod
    def of(cls, ids: Iterable[ElementId]) -> "ElementSet":
        return cls(tuple(sorted(set(ids))))

    @cached_property
    def as_frozenset(self) -> FrozenSet[ElementId]:
        return frozenset(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.as_frozenset

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def issubset(self, other: "ElementSet") -> bool:
        return self.as_frozenset <= other.as_frozenset

    def intersection(self, other: "ElementSet") -> "ElementSet":
        return ElementSet.of(self.as_frozenset & other.as_frozenset)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A finite group given by its complete multiplication table.

    table[i][j] is the id of the product of element i by element j. Instances are
    only built through from_cayley_table (or the trusted constructor used for
    permutation groups), so the group axioms always hold.
    """

    order: int
    table: Tuple[Tuple[ElementId, ...], ...]
    labels: Tuple[str, ...]
    relabeling: Optional[Tuple[ElementId, ...]] = None
    name: str = "group"
    identity: ElementId = field(default=IDENTITY, init=False)

    @cached_property
    def inverses(self) -> Tuple[ElementId, ...]:
        return tuple(row.index(IDENTITY) for row in self.table)

    @cached_property
    def elements(self) -> ElementSet:
        return ElementSet(tuple(range(self.order)))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def label_index(self) -> Dict[str, ElementId]:
        return {label: i for i, label in enumerate(self.labels)}

    def mul(self, x: ElementId, y: ElementId) -> ElementId:
        return self.table[x][y]

    def inv(self, x: ElementId) -> ElementId:
        return self.inverses[x]

    def conjugate(self, x: ElementId, y: ElementId) -> ElementId:
        """Return y^-1 x y."""
        return self.table[self.table[self.inverses[y]][x]][y]

    def element_order(self, x: ElementId) -> int:
        n, power = 1, x
        while power != IDENTITY:
            power = self.table[power][x]
            n += 1
        return n

    def power(self, x: ElementId, k: int) -> ElementId:
        if k < 0:
            x, k = self.inverses[x], -k
        result = IDENTITY
        for _ in range(k):
            result = self.table[result][x]
        return result

    def label(self, x: ElementId) -> str:
        return self.labels[x]

    def lookup(self, token: str) -> ElementId:
        """Resolve a label (or a bare integer id) to an element id."""
        token = token.strip()
        if token in self.label_index:
            return self.label_index[token]
        try:
            value = int(token)
        except ValueError:
            raise KeyError(f"unknown element '{token}' in {self.name}") from None
        if not 0 <= value < self.order:
            raise KeyError(f"element id {value} out of range for {self.name}")
        return value

    @cached_property
    def is_abelian(self) -> bool:
        arr = self.array
        return bool(np.array_equal(arr, arr.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _check_labels(labels: Sequence[str], n: int) -> None:
    if len(labels) != n:
        raise ValidationError(f"expected {n} labels, got {len(labels)}")
    seen = set()
    for label in labels:
        if label in seen:
            raise ValidationError(f"duplicate element label '{label}'")
        seen.add(label)


def _check_latin_square(arr: np.ndarray) -> None:
    n = arr.shape[0]
    expected = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), expected):
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(arr[:, i]), expected):
            raise NotLatinSquare(f"column {i} is not a permutation of 0..{n - 1}")


def _find_identity(arr: np.ndarray) -> Optional[int]:
    n = arr.shape[0]
    expected = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], expected) and np.array_equal(arr[:, e], expected):
            return e
    return None


def _check_associative(arr: np.ndarray) -> None:
    # left[a, b, c] = (ab)c, right[a, b, c] = a(bc)
    left = arr[arr, :]
    right = arr[:, arr]
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(
            f"({a}*{b})*{c} = {int(left[a, b, c])} but {a}*({b}*{c}) = "
            f"{int(right[a, b, c])}"
        )


def _relabel_identity_to_zero(arr: np.ndarray, e: int) -> Tuple[np.ndarray, List[int]]:
    """Swap ids 0 and e; returns the new table and old-id -> new-id mapping."""
    n = arr.shape[0]
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    perm_arr = np.array(perm)
    # new id i corresponds to old id perm[i]; perm is its own inverse
    relabeled = perm_arr[arr[np.ix_(perm_arr, perm_arr)]]
    return relabeled, perm


def from_cayley_table(
    table: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "group",
    normalize: bool = True,
    max_order: int = MAX_ORDER,
) -> FiniteGroup:
    """
    Build a verified FiniteGroup from a multiplication table.

    Args:
        table: n x n array of ids, table[i][j] = i * j
        labels: optional display strings (defaults to g0..g{n-1})
        name: display name of the group
        normalize: relabel so the identity sits at id 0 when it does not already
        max_order: refuse tables larger than this

    Raises:
        OrderTooLarge, NotLatinSquare, NoIdentityAtZero, NotAssociative
        ValidationError: If labels are missing or repeated
    """
    n = len(table)
    if n < 1:
        raise NotLatinSquare("table must have at least one row")
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the limit of {max_order}")
    if any(len(row) != n for row in table):
        raise NotLatinSquare(f"table is not square ({n} rows)")
    arr = np.array(table, dtype=np.int64).reshape(n, n)
    if arr.min() < 0 or arr.max() >= n:
        raise NotLatinSquare(f"entries must lie in [0, {n})")
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    _check_labels(labels, n)

    _check_latin_square(arr)
    e = _find_identity(arr)
    if e is None:
        raise NoIdentityAtZero("table has no two-sided identity element")

    relabeling = None
    if e != IDENTITY:
        if not normalize:
            raise NoIdentityAtZero(f"identity found at id {e}, expected id 0")
        arr, relabeling = _relabel_identity_to_zero(arr, e)
        labels = [labels[old] for old in relabeling]

    _check_associative(arr)

    return FiniteGroup(
        order=n,
        table=tuple(tuple(int(v) for v in row) for row in arr),
        labels=tuple(labels),
        relabeling=tuple(relabeling) if relabeling is not None else None,
        name=name,
    )


def trusted_group(
    table: Sequence[Sequence[int]], labels: Sequence[str], name: str
) -> FiniteGroup:
    """Build a group whose table is associative by construction.

    Used for the S5 and A5 composition tables, which exceed MAX_ORDER; the
    label, Latin-square and identity checks still run.
    """
    _check_labels(labels, len(table))
    arr = np.array(table, dtype=np.int64)
    _check_latin_square(arr)
    if _find_identity(arr) != IDENTITY:
        raise NoIdentityAtZero(f"{name}: identity must be element 0")
    return FiniteGroup(
        order=len(table),
        table=tuple(tuple(int(v) for v in row) for row in arr),
        labels=tuple(labels),
        name=name,
    )


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subset of a FiniteGroup closed under product and inverse."""

    parent: FiniteGroup
    members: ElementSet
    generators: Tuple[ElementId, ...] = ()

    def __post_init__(self):
        members = self.members
        if IDENTITY not in members:
            raise GroupTableError("subgroup must contain the identity")
        for x in members:
            if self.parent.inv(x) not in members:
                raise GroupTableError(f"subgroup not closed under inverse at {x}")
            for y in members:
                if self.parent.mul(x, y) not in members:
                    raise GroupTableError(f"subgroup not closed at {x}*{y}")
        assert self.parent.order % len(members) == 0

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def sort_key(self) -> Tuple[int, Tuple[ElementId, ...]]:
        return (self.order, self.members.members)

    @cached_property
    def is_abelian(self) -> bool:
        g = self.parent
        return all(g.mul(x, y) == g.mul(y, x) for x in self for y in self)

    @cached_property
    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conjugate(x, y) in self.members for x in self for y in g.elements)

    def labels(self) -> List[str]:
        return [self.parent.label(x) for x in self]


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, G.elements)


def commutator(G: FiniteGroup, x: ElementId, y: ElementId) -> ElementId:
    """Return [x, y] = x^-1 y^-1 x y."""
    t = G.table
    return t[t[t[G.inv(x)][G.inv(y)]][x]][y]


def commutator_rows(
    G: FiniteGroup, xs: Sequence[ElementId], ys: Optional[Sequence[ElementId]] = None
) -> np.ndarray:
    """Matrix whose row i holds [xs[i], y] for every y in ys (default: all of G)."""
    table = G.array
    inv = np.array(G.inverses, dtype=np.int64)
    cols = np.arange(G.order) if ys is None else np.asarray(ys, dtype=np.int64)
    rows = []
    for x in xs:
        step = table[inv[x], inv[cols]]
        step = table[step, x]
        rows.append(table[step, cols])
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(cols))


def commutator_counts(
    G: FiniteGroup, xs: Sequence[ElementId], ys: Optional[Sequence[ElementId]] = None
) -> np.ndarray:
    """counts[c] = number of pairs (x, y) in xs x ys with [x, y] = c."""
    return np.bincount(commutator_rows(G, xs, ys).ravel(), minlength=G.order)


def centralizer(
    G: FiniteGroup, x: ElementId, within: Optional[Iterable[ElementId]] = None
) -> ElementSet:
    """C_within(x) = {y in within : xy = yx}; within defaults to all of G."""
    carrier = G.elements if within is None else within
    row, t = G.table[x], G.table
    return ElementSet.of(y for y in carrier if row[y] == t[y][x])


def relative_center(H: Subgroup, G: FiniteGroup) -> ElementSet:
    """Z(H, G): elements of H commuting with every element of G."""
    return ElementSet.of(x for x in H if len(centralizer(G, x)) == G.order)


def cocentralizer(G: FiniteGroup, H: Subgroup) -> ElementSet:
    """Z(G, H): elements of G commuting with every element of H."""
    return ElementSet.of(
        x for x in G.elements if len(centralizer(G, x, H)) == H.order
    )


def center(G: FiniteGroup) -> ElementSet:
    return relative_center(whole_group(G), G)


def commutator_set(H: Subgroup, G: FiniteGroup) -> ElementSet:
    """K(H, G) = {[x, y] : x in H, y in G}."""
    return ElementSet.of(commutator(G, x, y) for x in H for y in G.elements)


def generated_subgroup(G: FiniteGroup, gens: Iterable[ElementId]) -> Subgroup:
    """Smallest subgroup containing gens, by breadth-first closure."""
    gens = tuple(dict.fromkeys(gens))
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    # finite group: closure under right multiplication by gens is closed under inverses
    return Subgroup(G, ElementSet.of(seen), gens)


def commutator_subgroup(H: Subgroup, G: FiniteGroup) -> Subgroup:
    """[H, G] = <K(H, G)>."""
    return generated_subgroup(G, commutator_set(H, G))


def conjugacy_classes(
    G: FiniteGroup,
    acting: Optional[Subgroup] = None,
    carrier: Optional[Subgroup] = None,
) -> List[ElementSet]:
    """
    Orbits of the carrier under conjugation by the acting subgroup.

    With only G given these are the classes of G. With carrier = H and acting
    omitted, the H-classes of H; pass acting = whole_group(G) for the G-classes
    meeting a normal H.
    """
    if carrier is None:
        carrier = acting if acting is not None else whole_group(G)
    if acting is None:
        acting = carrier
    remaining = set(carrier.members)
    classes = []
    for x in carrier:
        if x not in remaining:
            continue
        orbit = ElementSet.of(G.conjugate(x, y) for y in acting)
        remaining -= orbit.as_frozenset
        classes.append(orbit)
    return classes


def class_count(H: Subgroup) -> int:
    """k(H): number of conjugacy classes of H."""
    return len(conjugacy_classes(H.parent, carrier=H))


def conjugating_witnesses(
    G: FiniteGroup, x: ElementId, target: ElementId, within: Iterable[ElementId]
) -> ElementSet:
    """All y in within with y^-1 x y = target."""
    return ElementSet.of(y for y in within if G.conjugate(x, y) == target)


def conjugating_witness(
    G: FiniteGroup, x: ElementId, target: ElementId, within: Iterable[ElementId]
) -> Optional[ElementId]:
    """Some y in within with y^-1 x y = target, or None."""
    for y in within:
        if G.conjugate(x, y) == target:
            return y
    return None


def is_nilpotent(G: FiniteGroup) -> bool:
    """A finite group is nilpotent iff each Sylow subgroup is normal.

    Each Sylow p-subgroup is normal iff the p-elements form a subgroup of
    order p^a (then it is the unique Sylow p-subgroup).
    """
    n = G.order
    for p in prime_factors(n):
        p_part = 1
        while n % (p_part * p) == 0:
            p_part *= p
        p_elements = [x for x in G.elements if _is_power_of(G.element_order(x), p)]
        if len(p_elements) != p_part:
            return False
    return True


def _is_power_of(value: int, p: int) -> bool:
    while value % p == 0:
        value //= p
    return value == 1


def prime_factors(n: int) -> List[int]:
    factors, d = [], 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def smallest_prime_divisor(n: int) -> Optional[int]:
    factors = prime_factors(n)
    return factors[0] if factors else None


def is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == [n]
