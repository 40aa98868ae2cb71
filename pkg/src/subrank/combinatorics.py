"""Admissible row tuples, the cyclic shift action, orbits and blocks.

Rows of the pattern matrix are k-tuples over [r] in which no single value
occupies k-1 or more of the k coordinates (for k=3: three pairwise distinct
entries).  The simultaneous cyclic shift acts freely on this set, so rows
group into orbits of size exactly r.  A t-block collects orbits whose
members differ only in coordinate t; blocks are the crossing unit of the
certificate search.

Indices are 1-based throughout; residue 0 of the shift maps back to r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product


def is_admissible(coords: tuple[int, ...]) -> bool:
    """True if no value occupies k-1 or more of the k coordinates."""
    k = len(coords)
    for v in set(coords):
        if sum(1 for c in coords if c == v) >= k - 1:
            return False
    return True


def enumerate_rows(r: int, k: int) -> list[tuple[int, ...]]:
    """All admissible k-tuples over [r], in lexicographic order.

    Empty for small r (e.g. r <= 2, k = 3); that is a legal degenerate
    instance, not an error.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if k < 3:
        raise ValueError(f"order k must be at least 3, got {k}")
    return [p for p in product(range(1, r + 1), repeat=k) if is_admissible(p)]


def count_rows(r: int, k: int) -> int:
    """Closed-form size of the admissible row set: r^k - k*r^2 + (k-1)*r."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if k < 3:
        raise ValueError(f"order k must be at least 3, got {k}")
    return max(0, r**k - k * r**2 + (k - 1) * r)


def act(a: int, p: tuple[int, ...], r: int) -> tuple[int, ...]:
    """Shift every coordinate of p by a, cyclically within [r]."""
    return tuple((c - 1 + a) % r + 1 for c in p)


@dataclass(frozen=True)
class Orbit:
    """Cyclic-shift orbit of a row tuple; always has exactly r members.

    `canonical` is the lexicographically smallest member, `members` lists
    the orbit in shift order starting from the canonical representative.
    """

    canonical: tuple[int, ...]
    r: int
    members: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.members)


def orbit_of(p: tuple[int, ...], r: int) -> Orbit:
    """Orbit of p under the simultaneous cyclic shift."""
    if not is_admissible(p):
        raise ValueError(f"{p} is not an admissible row tuple")
    if any(c < 1 or c > r for c in p):
        raise ValueError(f"{p} has coordinates outside [1, {r}]")
    members = [act(a, p, r) for a in range(r)]
    if len(set(members)) != r:
        raise AssertionError(f"cyclic action is not free on {p} (r={r})")
    canonical = min(members)
    start = members.index(canonical)
    ordered = tuple(members[(start + a) % r] for a in range(r))
    return Orbit(canonical=canonical, r=r, members=ordered)


@dataclass(frozen=True)
class Block:
    """A t-block: orbits whose members differ only in coordinate t.

    `orbits` is sorted by canonical representative; the first orbit serves
    as the deterministic base for sweep order during crossing.
    """

    direction: int
    orbits: tuple[Orbit, ...]

    @property
    def size(self) -> int:
        return len(self.orbits)

    @property
    def rows(self) -> list[tuple[int, ...]]:
        return [p for o in self.orbits for p in o.members]


def substitution_family(p: tuple[int, ...], t: int, r: int) -> list[tuple[int, ...]]:
    """Admissible tuples obtained from p by substituting coordinate t."""
    out = []
    for v in range(1, r + 1):
        q = p[: t - 1] + (v,) + p[t:]
        if is_admissible(q):
            out.append(q)
    return out


def maximal_uncrossed_block(
    o: Orbit,
    t: int,
    crossed: set[tuple[int, ...]],
    r: int,
    k: int,
) -> Block:
    """Maximal t-block through o among orbits not in `crossed`.

    `crossed` holds canonical representatives of crossed orbits.
    """
    if not 1 <= t <= k:
        raise ValueError(f"direction t={t} out of range [1, {k}]")
    if o.canonical in crossed:
        raise ValueError(f"orbit of {o.canonical} is already crossed")
    orbits = []
    for q in substitution_family(o.canonical, t, r):
        oq = orbit_of(q, r)
        if oq.canonical not in crossed:
            orbits.append(oq)
    orbits.sort(key=lambda x: x.canonical)
    return Block(direction=t, orbits=tuple(orbits))


def block_intersection_count(b1: Block, b2: Block) -> int:
    """Number of orbits shared by a t1-block and a t2-block, t1 != t2."""
    if b1.direction == b2.direction:
        raise ValueError("blocks must have different directions")
    c1 = {o.canonical for o in b1.orbits}
    c2 = {o.canonical for o in b2.orbits}
    return len(c1 & c2)


def all_orbits(r: int, k: int) -> list[Orbit]:
    """Orbits partitioning the admissible row set, sorted by canonical."""
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for p in enumerate_rows(r, k):
        if p in seen:
            continue
        o = orbit_of(p, r)
        seen.update(o.members)
        orbits.append(o)
    return orbits
