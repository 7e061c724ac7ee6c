"""Multiplication tables of finite groups, one representative per isomorphism class.

A table of order r is an r x r array ``cells[i][j] = k`` meaning u_i.u_j = u_k,
with element 0 pinned as the identity.  Valid tables satisfy the identity
row/column, the Latin-square property, and associativity; a finite associative
cancellative structure with identity is a group, so inverses need no separate
check.

Enumeration works row by row: each row of a group table is the permutation
given by left multiplication, and once rows x and y are placed, the row of
x.y is forced to be their composition.  Backtracking over the free rows with
this propagation (plus Latin pruning) visits every complete table exactly
once, in lexicographic row-major order.  The first table of each isomorphism
class encountered this way is the lexicographic minimum over all relabelings
fixing 0, i.e. the canonical form; later members of the class are rejected
by an explicit isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .words import Word

# Enumeration cost grows steeply with the order (the raw backtracking space
# for order 12 has ~10^7 complete tables); 8 covers the full corpus while
# keeping worst-case solve latency at desk scale.  Configurable per run.
DEFAULT_MAX_TABLE_ORDER = 8


class MissingImageError(ValueError):
    """A word uses a generator with no assigned table element."""


@dataclass(frozen=True)
class MultiplicationTable:
    cells: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.cells)

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        """inverses[e] is the unique element with e.inverses[e] = 0."""
        inv = [0] * self.order
        for e, row in enumerate(self.cells):
            inv[e] = row.index(0)
        return tuple(inv)


def is_group_table(cells) -> tuple[bool, str | None]:
    """Check the three table invariants; report the first violation found."""
    r = len(cells)
    if r < 1:
        return False, "empty table"
    for i, row in enumerate(cells):
        if len(row) != r:
            return False, f"row {i} has length {len(row)}, expected {r}"
        for j, v in enumerate(row):
            if not 0 <= v < r:
                return False, f"cell ({i},{j}) value {v} out of range"
    for j in range(r):
        if cells[0][j] != j:
            return False, f"identity row violated at column {j}"
    for i in range(r):
        if cells[i][0] != i:
            return False, f"identity column violated at row {i}"
    for i in range(r):
        if len(set(cells[i])) != r:
            return False, f"row {i} is not a permutation"
    for j in range(r):
        if len({cells[i][j] for i in range(r)}) != r:
            return False, f"column {j} is not a permutation"
    for i in range(r):
        for j in range(r):
            ij = cells[i][j]
            for k in range(r):
                if cells[ij][k] != cells[i][cells[j][k]]:
                    return False, f"associativity fails at ({i},{j},{k})"
    return True, None


def element_orders(cells) -> tuple[int, ...]:
    orders = []
    for e in range(len(cells)):
        x, m = e, 1
        while x != 0:
            x = cells[x][e]
            m += 1
        orders.append(m)
    return tuple(orders)


def isomorphisms(c1, c2):
    """Yield every relabeling fixing 0 that carries table c1 onto table c2."""
    r = len(c1)
    if r != len(c2):
        return
    ord1 = element_orders(c1)
    ord2 = element_orders(c2)
    if sorted(ord1) != sorted(ord2):
        return
    phi = [0] * r
    used = [False] * r
    used[0] = True

    def consistent(x):
        for p in range(x + 1):
            row = c1[p]
            for q in range(x + 1):
                z = row[q]
                if z <= x and c2[phi[p]][phi[q]] != phi[z]:
                    return False
        return True

    def rec(x):
        if x == r:
            yield tuple(phi)
            return
        for y in range(1, r):
            if used[y] or ord2[y] != ord1[x]:
                continue
            phi[x] = y
            used[y] = True
            if consistent(x):
                yield from rec(x + 1)
            used[y] = False
        phi[x] = 0

    yield from rec(1)


def find_isomorphism(c1, c2):
    """Some relabeling fixing 0 carrying c1 onto c2, or None."""
    return next(isomorphisms(c1, c2), None)


def _complete_tables(r):
    """All group tables of order r with identity 0, in row-major lex order."""
    if r == 1:
        yield ((0,),)
        return
    identity = tuple(range(r))
    rows: list = [None] * r
    rows[0] = identity
    placed = [0]
    col_used = [1 << j for j in range(r)]

    def place(idx, perm):
        rows[idx] = perm
        placed.append(idx)
        for j in range(r):
            col_used[j] |= 1 << perm[j]

    def unplace_to(mark):
        while len(placed) > mark:
            idx = placed.pop()
            perm = rows[idx]
            rows[idx] = None
            for j in range(r):
                col_used[j] &= ~(1 << perm[j])

    def propagate(start):
        # Close the placed rows under composition: rows[x.y] = rows[x] o rows[y].
        qi = start
        while qi < len(placed):
            n = placed[qi]
            qi += 1
            fn = rows[n]
            for m in list(placed):
                fm = rows[m]
                for x, fx, y, fy in ((n, fn, m, fm), (m, fm, n, fn)):
                    target = fx[y]
                    comp = tuple(fx[fy[j]] for j in range(r))
                    existing = rows[target]
                    if existing is None:
                        for j in range(1, r):
                            if col_used[j] & (1 << comp[j]):
                                return False
                        place(target, comp)
                    elif existing != comp:
                        return False
                    if x == y:
                        break
        return True

    def row_candidates(i):
        row = [i] + [0] * (r - 1)
        used = 1 << i

        def rec(pos):
            nonlocal used
            if pos == r:
                yield tuple(row)
                return
            for v in range(r):
                bit = 1 << v
                if used & bit or col_used[pos] & bit:
                    continue
                row[pos] = v
                used |= bit
                yield from rec(pos + 1)
                used &= ~bit

        yield from rec(1)

    def search():
        i = next((n for n in range(r) if rows[n] is None), None)
        if i is None:
            yield tuple(rows)
            return
        for perm in row_candidates(i):
            mark = len(placed)
            place(i, perm)
            if propagate(mark):
                yield from search()
            unplace_to(mark)

    yield from search()


_TABLE_CACHE: dict[int, tuple[MultiplicationTable, ...]] = {}


def enumerate_tables(order: int) -> tuple[MultiplicationTable, ...]:
    """One table per isomorphism class of groups of the given order.

    The representative emitted for each class is the lexicographically
    minimal member of the class (relabelings fixing element 0), because
    generation is exhaustive in lex order and the first member wins.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    cached = _TABLE_CACHE.get(order)
    if cached is not None:
        return cached
    reps: list[tuple] = []
    for cells in _complete_tables(order):
        ok, why = is_group_table(cells)
        assert ok, why
        if all(find_isomorphism(cells, rep) is None for rep in reps):
            reps.append(cells)
    result = tuple(MultiplicationTable(cells) for cells in reps)
    _TABLE_CACHE[order] = result
    return result


def table_at_cursor(c: int, max_order: int = DEFAULT_MAX_TABLE_ORDER) -> MultiplicationTable | None:
    """Fixed total enumeration: tables of order 1, then 2, ... up to the cap."""
    if c < 0:
        raise ValueError("cursor must be a natural number")
    order = 1
    while order <= max_order:
        block = enumerate_tables(order)
        if c < len(block):
            return block[c]
        c -= len(block)
        order += 1
    return None


def eval_in_table(table: MultiplicationTable, images, w: Word) -> int:
    """Evaluate a word in the table; images maps generator index -> element.

    Inverse letters go through the table's unique inverses; the empty word
    evaluates to the identity 0.
    """
    cells = table.cells
    inv = table.inverses
    e = 0
    for x in w:
        try:
            elem = images[x >> 1]
        except (KeyError, IndexError):
            raise MissingImageError(f"no image for generator index {x >> 1}") from None
        if x & 1:
            elem = inv[elem]
        e = cells[e][elem]
    return e
