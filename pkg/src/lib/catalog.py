"""
Constructors for the standard group families and Cayley-table files.

Group specs follow the grammar

    C<n> | D<n> | Q8 | S<n> | A<n> | <spec>x<spec> | file:<path>

where D<n> is the dihedral group of order 2n and `x` is a left-associative
direct product. A `file:` spec takes the rest of the string as a path and so
can only appear on its own.
"""

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List, Optional, Sequence, Tuple

from src.lib.group_core import (
    MAX_ORDER,
    FiniteGroup,
    OrderTooLarge,
    Subgroup,
    from_cayley_table,
    generated_subgroup,
    trusted_group,
)
from src.lib.utils import ToolkitError, safe_read_text

PROBE_MAX_ORDER = 120
# the only specs allowed past MAX_ORDER, and only up to PROBE_MAX_ORDER
LARGE_PROBE_GROUPS = frozenset({(("S", 5),), (("A", 5),)})
PERMUTATION_DEGREE_LIMIT = 5

_FACTOR_PATTERN = re.compile(r"^(C|D|S|A)(\d+)$|^(Q8)$")


class ParseError(ToolkitError):
    """Raised when a group spec does not match the grammar."""

    pass


class FormatError(ToolkitError):
    """Raised when a Cayley-table file is malformed."""

    pass


@dataclass(frozen=True)
class GroupSpec:
    """A parsed group expression: a list of factor tokens or a file path."""

    expression: str
    factors: Tuple[Tuple[str, int], ...] = ()
    path: Optional[str] = None

    @classmethod
    def parse(cls, expression: str) -> "GroupSpec":
        text = expression.strip()
        if not text:
            raise ParseError("empty group spec")
        if text.startswith("file:"):
            path = text[len("file:") :]
            if not path:
                raise ParseError("file: spec needs a path")
            return cls(text, path=path)

        factors = []
        for token in text.split("x"):
            match = _FACTOR_PATTERN.match(token.strip())
            if match is None:
                raise ParseError(f"cannot parse factor '{token}' in '{expression}'")
            if match.group(3):
                factors.append(("Q", 8))
                continue
            family, n = match.group(1), int(match.group(2))
            if n < 1:
                raise ParseError(f"'{token}': parameter must be positive")
            if family in "SA" and n > PERMUTATION_DEGREE_LIMIT:
                raise ParseError(
                    f"'{token}': degree above {PERMUTATION_DEGREE_LIMIT} not supported"
                )
            factors.append((family, n))
        return cls(text, factors=tuple(factors))

    def predicted_order(self) -> Optional[int]:
        if self.path is not None:
            return None
        return math.prod(_family_order(family, n) for family, n in self.factors)

    def order_limit(self, max_order: int) -> int:
        """The order guard for this spec: max_order for S5 and A5, else at most MAX_ORDER."""
        if self.factors in LARGE_PROBE_GROUPS:
            return max_order
        return min(max_order, MAX_ORDER)


def _family_order(family: str, n: int) -> int:
    if family == "C":
        return n
    if family == "D":
        return 2 * n
    if family == "Q":
        return 8
    if family == "S":
        return math.factorial(n)
    return max(1, math.factorial(n) // 2)


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1", "a"] + [f"a^{i}" for i in range(2, n)]
    return from_cayley_table(table, labels[:n], name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element r^i s^j has id i + n*j."""

    def decode(k: int) -> Tuple[int, int]:
        return k % n, k // n

    def mul(a: int, b: int) -> int:
        i, j = decode(a)
        k, m = decode(b)
        rot = (i + (k if j == 0 else -k)) % n
        return rot + n * ((j + m) % 2)

    def label(k: int) -> str:
        i, j = decode(k)
        rot = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        if j == 0:
            return rot or "1"
        return f"{rot}s"

    size = 2 * n
    table = [[mul(a, b) for b in range(size)] for a in range(size)]
    labels = [label(k) for k in range(size)]
    return from_cayley_table(table, labels, name=f"D{n}")


_QUATERNION_UNITS = ["1", "i", "j", "k"]
# unit product table: (sign, unit) for unit_a * unit_b
_QUATERNION_PRODUCTS = {
    ("1", "1"): (1, "1"),
    ("1", "i"): (1, "i"),
    ("1", "j"): (1, "j"),
    ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"),
    ("i", "i"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"),
    ("j", "i"): (-1, "k"),
    ("j", "j"): (-1, "1"),
    ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"),
    ("k", "i"): (1, "j"),
    ("k", "j"): (-1, "i"),
    ("k", "k"): (-1, "1"),
}


def quaternion_group() -> FiniteGroup:
    """Q8 with ids ordered 1, -1, i, -i, j, -j, k, -k."""
    elements = [(sign, unit) for unit in _QUATERNION_UNITS for sign in (1, -1)]

    def label(element: Tuple[int, str]) -> str:
        sign, unit = element
        return unit if sign == 1 else f"-{unit}"

    def mul(a: Tuple[int, str], b: Tuple[int, str]) -> Tuple[int, str]:
        sign, unit = _QUATERNION_PRODUCTS[(a[1], b[1])]
        return (a[0] * b[0] * sign, unit)

    table = [[elements.index(mul(a, b)) for b in elements] for a in elements]
    return from_cayley_table(table, [label(e) for e in elements], name="Q8")


def _cycle_label(perm: Tuple[int, ...]) -> str:
    """Cycle notation on points 1..n, e.g. (12)(34); identity is 'e'."""
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, point = [], start
        while point not in seen:
            seen.add(point)
            cycle.append(str(point + 1))
            point = perm[point]
        cycles.append("(" + "".join(cycle) + ")")
    return "".join(cycles) or "e"


def _is_even(perm: Tuple[int, ...]) -> bool:
    inversions = sum(
        1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j]
    )
    return inversions % 2 == 0


def permutation_group(n: int, alternating: bool = False) -> FiniteGroup:
    """S_n or A_n; the product p*q applies p first, then q."""
    perms = [p for p in itertools.permutations(range(n))]
    if alternating:
        perms = [p for p in perms if _is_even(p)]
    index = {p: i for i, p in enumerate(perms)}

    def mul(p: Tuple[int, ...], q: Tuple[int, ...]) -> int:
        return index[tuple(q[p[i]] for i in range(n))]

    table = [[mul(p, q) for q in perms] for p in perms]
    labels = [_cycle_label(p) for p in perms]
    name = f"{'A' if alternating else 'S'}{n}"
    if len(perms) > MAX_ORDER:
        return trusted_group(table, labels, name)
    return from_cayley_table(table, labels, name=name)


def direct_product(
    left: FiniteGroup, right: FiniteGroup, max_order: int = MAX_ORDER
) -> FiniteGroup:
    """Element (a, b) gets id a*|right| + b, so (1, 1) stays at id 0."""
    m = right.order
    size = left.order * m
    if size > max_order:
        raise OrderTooLarge(f"{left.name}x{right.name} has order {size}")
    table = [
        [
            left.mul(a // m, b // m) * m + right.mul(a % m, b % m)
            for b in range(size)
        ]
        for a in range(size)
    ]
    labels = [
        f"({left.label(a // m)},{right.label(a % m)})" for a in range(size)
    ]
    return from_cayley_table(
        table, labels, name=f"{left.name}x{right.name}", max_order=max_order
    )


def _build_factor(family: str, n: int) -> FiniteGroup:
    if family == "C":
        return cyclic_group(n)
    if family == "D":
        return dihedral_group(n)
    if family == "Q":
        return quaternion_group()
    return permutation_group(n, alternating=(family == "A"))


@lru_cache(maxsize=None)
def build_group(expression: str, max_order: int = MAX_ORDER) -> FiniteGroup:
    """
    Build a verified group from a spec string.

    Raises:
        ParseError: If the spec is malformed
        OrderTooLarge: If the resulting order exceeds max_order
        FileError, FormatError: For file: specs
    """
    spec = GroupSpec.parse(expression)
    limit = spec.order_limit(max_order)
    if spec.path is not None:
        return load_cayley_file(spec.path, max_order=limit)

    order = spec.predicted_order()
    if order > limit:
        raise OrderTooLarge(f"'{expression}' has order {order} > {limit}")
    factors = [_build_factor(family, n) for family, n in spec.factors]
    group = reduce(lambda a, b: direct_product(a, b, limit), factors)
    if len(factors) == 1:
        return group
    return FiniteGroup(
        order=group.order,
        table=group.table,
        labels=group.labels,
        name=spec.expression,
    )


def all_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """
    Every subgroup of G, found layer by layer by cyclic extension.

    Layer one holds the cyclic subgroups; each later layer joins one more element
    to a subgroup from the previous layer and closes. Every subgroup is
    generated by a chain of such joins, so the search is exhaustive.
    """
    found = {}
    layer = []
    for x in G.elements:
        sub = generated_subgroup(G, [x])
        if sub.members not in found:
            found[sub.members] = sub
            layer.append(sub)

    while layer:
        next_layer = []
        for sub in layer:
            for x in G.elements:
                if x in sub:
                    continue
                gens = sub.generators + (x,)
                bigger = generated_subgroup(G, gens)
                if bigger.members not in found:
                    found[bigger.members] = bigger
                    next_layer.append(bigger)
        layer = next_layer

    return sorted(found.values(), key=Subgroup.sort_key)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_cayley_text(text: str) -> Tuple[List[List[int]], Optional[List[str]]]:
    """Parse the Cayley-table text format into a table and optional labels."""
    lines = [_strip_comment(line) for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise FormatError("empty Cayley file")
    try:
        n = int(lines[0])
    except ValueError as err:
        raise FormatError(f"first line must be the order, got '{lines[0]}'") from err
    if n < 1:
        raise FormatError("order must be positive")
    if len(lines) < n + 1:
        raise FormatError(f"expected {n} table rows, found {len(lines) - 1}")

    table = []
    for row_number, line in enumerate(lines[1 : n + 1], start=1):
        try:
            row = [int(token) for token in line.split()]
        except ValueError as err:
            raise FormatError(f"row {row_number}: non-integer entry") from err
        if len(row) != n:
            raise FormatError(f"row {row_number}: expected {n} entries")
        table.append(row)

    labels = None
    rest = lines[n + 1 :]
    if rest:
        if len(rest) > 1 or not rest[0].startswith("labels:"):
            raise FormatError(f"unexpected trailing line '{rest[0]}'")
        labels = rest[0][len("labels:") :].split()
        if len(labels) != n:
            raise FormatError(f"expected {n} labels, found {len(labels)}")
        if len(set(labels)) != n:
            raise FormatError("labels must be distinct")
    return table, labels


def load_cayley_file(path: str, max_order: int = MAX_ORDER) -> FiniteGroup:
    """Load and verify a group from a Cayley-table file."""
    text = safe_read_text(path)
    table, labels = parse_cayley_text(text)
    return from_cayley_table(
        table, labels, name=f"file:{path}", max_order=max_order
    )


def format_cayley_text(G: FiniteGroup) -> str:
    """Serialize a group in the Cayley-table text format."""
    lines = [str(G.order)]
    lines.extend(" ".join(str(v) for v in row) for row in G.table)
    if all(" " not in label for label in G.labels):
        lines.append("labels: " + " ".join(G.labels))
    return "\n".join(lines) + "\n"


# Fixed family list for default sweeps; filtered by order at use.
_DEFAULT_FAMILIES = (
    [f"C{n}" for n in range(1, MAX_ORDER + 1)]
    + [f"D{n}" for n in range(3, MAX_ORDER // 2 + 1)]
    + ["Q8", "S3", "A4", "S4"]
    + [
        "C2xC2",
        "C2xC4",
        "C2xC2xC2",
        "C3xC3",
        "C2xC6",
        "C2xS3",
        "C4xC4",
        "C2xC8",
        "C2xC2xC4",
        "C2xC2xC2xC2",
        "C2xD4",
        "C2xQ8",
        "C3xS3",
        "C2xA4",
        "C4xS3",
        "C2xC2xS3",
        "C3xQ8",
        "C3xD4",
        "C2xS4",
        "C4xQ8",
        "C4xD4",
        "C2xC2xD4",
        "C2xC2xQ8",
    ]
)


def default_families(max_order: int) -> List[str]:
    """Catalog specs of order <= max_order, in a fixed order."""
    return [
        spec
        for spec in _DEFAULT_FAMILIES
        if GroupSpec.parse(spec).predicted_order() <= max_order
    ]


def resolve_elements(G: FiniteGroup, tokens: Sequence[str]) -> List[int]:
    """Look up labels or ids; raises ParseError on unknown tokens."""
    try:
        return [G.lookup(token) for token in tokens if token.strip()]
    except KeyError as err:
        raise ParseError(str(err.args[0])) from err


def split_generators(text: str) -> List[str]:
    """Split a comma list of labels, ignoring commas inside parentheses."""
    tokens, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(char)
    tokens.append("".join(current))
    return [token.strip() for token in tokens if token.strip()]


def parse_subgroup(G: FiniteGroup, text: str) -> Subgroup:
    """'all' is G itself; otherwise the subgroup generated by the listed elements."""
    if text.strip() == "all":
        return generated_subgroup(G, G.elements)
    return generated_subgroup(G, resolve_elements(G, split_generators(text)))



def parse_element(G: FiniteGroup, token: str) -> int:
    """One element by label or id; raises ParseError on unknown or empty tokens."""
    ids = resolve_elements(G, [token])
    if len(ids) != 1:
        raise ParseError(f"expected one element of {G.name}, got '{token}'")
    return ids[0]
