"""Exact linear algebra over a prime field for numeric verification.

Certificates prove generic full row rank symbolically; this module sanity
checks them numerically by instantiating patterns at seeded random field
points and running exact Gaussian elimination mod p.  A trial reaching the
expected rank is conclusive (any specialization lower-bounds the generic
rank); trials below it are inconclusive and only reported.

The default prime is the Mersenne prime 2^61 - 1: residues fit in machine
words, double-width intermediates stay inside uint64 after 31-bit limb
splitting, and the per-trial false-negative probability is bounded by
(#rows)/p, which is negligible at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .certificate import Certificate, Verdict
from .combinatorics import is_admissible
from .pattern import PatternMatrix, Variable

MERSENNE61 = (1 << 61) - 1
DEFAULT_PRIME = MERSENNE61

_M64 = (1 << 64) - 1
_M61 = MERSENNE61
_M31 = (1 << 31) - 1
_M30 = (1 << 30) - 1
_M21 = (1 << 21) - 1


# -- seeded value stream ----------------------------------------------------


def _mix64(x: int) -> int:
    """splitmix64 finalizer; the documented generator behind assignments."""
    x &= _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def seeded_value(seed: int, index: int, p: int) -> int:
    """Deterministic nonzero residue for item `index` of stream `seed`."""
    h = _mix64((seed + (index + 1) * 0x9E3779B97F4A7C15) & _M64)
    return 1 + h % (p - 1)


@dataclass(frozen=True)
class RandomAssignment:
    """Seeded nonzero values for every variable of a pattern.

    Reproducible from (seed, p, variable enumeration order); variables are
    enumerated in lexicographic (t, s, reduced) order.
    """

    seed: int
    p: int
    values: dict[Variable, int]


def random_assignment(pm: PatternMatrix, seed: int, p: int = DEFAULT_PRIME) -> RandomAssignment:
    values = {v: seeded_value(seed, i, p) for i, v in enumerate(pm.variables)}
    return RandomAssignment(seed=seed, p=p, values=values)


# -- matrices ----------------------------------------------------------------


@dataclass
class ModularMatrix:
    """Matrix over F_p, stored dense; zero entries are residue 0."""

    n_rows: int
    n_cols: int
    p: int
    data: np.ndarray  # uint64, shape (n_rows, n_cols), residues reduced

    @classmethod
    def from_entries(
        cls, n_rows: int, n_cols: int, p: int,
        entries: dict[tuple[int, int], int],
    ) -> "ModularMatrix":
        data = np.zeros((n_rows, n_cols), dtype=np.uint64)
        for (i, j), v in entries.items():
            data[i, j] = v % p
        return cls(n_rows, n_cols, p, data)

    def nonzero_items(self):
        """Iterate (i, j, value) over nonzero positions, row-major."""
        ii, jj = np.nonzero(self.data)
        for i, j in zip(ii.tolist(), jj.tolist()):
            yield i, j, int(self.data[i, j])


def instantiate(pm: PatternMatrix, assignment: RandomAssignment) -> ModularMatrix:
    """Replace each variable by its assigned residue; zeros stay zero."""
    missing = [v for v in pm.variables if v not in assignment.values]
    if missing:
        raise ValueError(f"assignment misses {len(missing)} variables, e.g. {missing[0]}")
    p = assignment.p
    vals = np.array(
        [assignment.values[v] % p for v in pm.variables] or [0], dtype=np.uint64
    )
    data = np.zeros((pm.n_rows, pm.n_cols), dtype=np.uint64)
    if pm.nnz:
        ii = np.array(pm.entry_rows, dtype=np.intp)
        jj = np.array(pm.entry_cols, dtype=np.intp)
        vv = np.array(pm.entry_vars, dtype=np.intp)
        data[ii, jj] = vals[vv]
    return ModularMatrix(pm.n_rows, pm.n_cols, p, data)


def modular_to_coordinate_list(mm: ModularMatrix) -> str:
    """ASCII export: "nRows nCols nnz" header, then 1-based "i j v" lines."""
    items = list(mm.nonzero_items())
    lines = [f"{mm.n_rows} {mm.n_cols} {len(items)}"]
    lines += [f"{i + 1} {j + 1} {v}" for i, j, v in items]
    return "\n".join(lines) + "\n"


# -- Mersenne-61 vector kernels ----------------------------------------------
#
# All values stay < 2^61; products are formed from 31/30-bit limbs so every
# intermediate fits in uint64.  2^61 == 1 (mod p) drives the foldings.


def _fold61(x: np.ndarray) -> np.ndarray:
    x = (x & _M61) + (x >> np.uint64(61))
    return np.where(x >= _M61, x - _M61, x)


def _scalar_mulmod_m61(f: int, v: np.ndarray) -> np.ndarray:
    """(f * v) mod (2^61 - 1) for 0 <= f < p and v < p elementwise."""
    f1, f0 = f >> 31, f & _M31
    v1 = v >> np.uint64(31)
    v0 = v & np.uint64(_M31)
    hi2 = np.uint64(2 * f1) * v1                      # 2 * f1*v1 < 2^61
    mid = np.uint64(f1) * v0 + np.uint64(f0) * v1     # < 2^62
    midr = (mid >> np.uint64(30)) + ((mid & np.uint64(_M30)) << np.uint64(31))
    low = np.uint64(f0) * v0                          # < 2^62
    lowr = (low & np.uint64(_M61)) + (low >> np.uint64(61))
    return _fold61(hi2 + midr + lowr)                 # sum < 2^63


def _outer_mulmod_m61(f: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(f[:, None] * v[None, :]) mod (2^61 - 1), both operands < p."""
    f1 = (f >> np.uint64(31))[:, None]
    f0 = (f & np.uint64(_M31))[:, None]
    v1 = (v >> np.uint64(31))[None, :]
    v0 = (v & np.uint64(_M31))[None, :]
    hi2 = (f1 * v1) << np.uint64(1)
    mid = f1 * v0 + f0 * v1
    midr = (mid >> np.uint64(30)) + ((mid & np.uint64(_M30)) << np.uint64(31))
    low = f0 * v0
    lowr = (low & np.uint64(_M61)) + (low >> np.uint64(61))
    return _fold61(hi2 + midr + lowr)


def _submod_m61(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(x - y) mod (2^61 - 1) for x, y < p elementwise."""
    return _fold61(x + (np.uint64(_M61) - y))


def _matmul_mod_m61(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact (x @ y) mod (2^61 - 1) via 21-bit limbs and float64 matmul.

    Requires the inner dimension <= 512 so that the up-to-three limb
    products of one output level sum exactly within float64's 53-bit
    integer range (3 * 512 * (2^21 - 1)^2 < 2^53).  Level contributions
    stay below 2^61 + 2^37, so all five accumulate in uint64 with a single
    final fold.
    """
    k = x.shape[1]
    if k > 512:
        raise ValueError(f"inner dimension {k} too large for exact float64 matmul")
    xs = [
        (x & np.uint64(_M21)).astype(np.float64),
        ((x >> np.uint64(21)) & np.uint64(_M21)).astype(np.float64),
        (x >> np.uint64(42)).astype(np.float64),
    ]
    ys = [
        (y & np.uint64(_M21)).astype(np.float64),
        ((y >> np.uint64(21)) & np.uint64(_M21)).astype(np.float64),
        (y >> np.uint64(42)).astype(np.float64),
    ]
    shape = (x.shape[0], y.shape[1])
    acc = np.zeros(shape, dtype=np.uint64)
    cu = np.empty(shape, dtype=np.uint64)
    hi = np.empty(shape, dtype=np.uint64)
    for level in range(5):
        c = None
        for a in range(3):
            b = level - a
            if 0 <= b < 3:
                prod = xs[a] @ ys[b]
                c = prod if c is None else c + prod      # exact: sum < 2^53
        np.copyto(cu, c, casting="unsafe")
        e = (21 * level) % 61
        if e == 0:
            np.add(acc, cu, out=acc)
        else:
            keep = np.uint64(61 - e)
            np.right_shift(cu, keep, out=hi)
            np.add(acc, hi, out=acc)
            np.bitwise_and(cu, np.uint64((1 << (61 - e)) - 1), out=cu)
            np.left_shift(cu, np.uint64(e), out=cu)
            np.add(acc, cu, out=acc)
    return _fold61(acc)                                  # acc < 2^63.1


# -- rank / determinant kernels ------------------------------------------------


def _rank_python(rows: list[list[int]], p: int, reverse_cols: bool = False) -> int:
    """Reference dense elimination over F_p; works for any prime p."""
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    cols = range(n - 1, -1, -1) if reverse_cols else range(n)
    rank = 0
    for c in cols:
        piv = next((i for i in range(rank, m) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c] % p, -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(rank + 1, m):
            f = rows[i][c] % p
            if f:
                pr = rows[rank]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        rank += 1
        if rank == m:
            break
    return rank


def _det_python(rows: list[list[int]], p: int) -> int:
    """Determinant of a square matrix over F_p by elimination."""
    rows = [list(r) for r in rows]
    n = len(rows)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = (det * rows[c][c]) % p
        inv = pow(rows[c][c] % p, -1, p)
        for i in range(c + 1, n):
            f = (rows[i][c] * inv) % p
            if f:
                pr = rows[c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
    return det % p


def _rank_m61_rowwise(a: np.ndarray) -> int:
    """Elimination mod 2^61-1 with per-pivot vectorized updates."""
    a = a.copy()
    m, n = a.shape
    rank = 0
    for c in range(n):
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, _M61)
        a[rank, c:] = _scalar_mulmod_m61(inv, a[rank, c:])
        below = rank + 1 + np.nonzero(a[rank + 1:, c])[0]
        if below.size:
            f = a[below, c]
            a[below[:, None], np.arange(c, n)[None, :]] = _submod_m61(
                a[below, c:], _outer_mulmod_m61(f, a[rank, c:])
            )
        rank += 1
        if rank == m:
            break
    return rank


def _rank_m61_blocked(a: np.ndarray, panel: int = 128) -> int:
    """Blocked elimination mod 2^61-1: panel factorization plus exact
    float64-matmul trailing updates.  Multipliers are left in place in the
    pivot columns (never revisited) and read back for the block update."""
    a = a.copy()
    m, n = a.shape
    rank = 0
    c0 = 0
    while c0 < n and rank < m:
        c1 = min(c0 + panel, n)
        g0 = rank
        piv_cols: list[int] = []
        invs: list[int] = []
        for c in range(c0, c1):
            nz = np.nonzero(a[rank:, c])[0]
            if nz.size == 0:
                continue
            piv = rank + int(nz[0])
            if piv != rank:
                a[[rank, piv]] = a[[piv, rank]]
            inv = pow(int(a[rank, c]), -1, _M61)
            invs.append(inv)
            piv_cols.append(c)
            a[rank, c:c1] = _scalar_mulmod_m61(inv, a[rank, c:c1])
            if c + 1 < c1 and rank + 1 < m:
                col = a[rank + 1:, c]
                nz = np.nonzero(col)[0]
                if 4 * nz.size >= col.size:
                    # Dense column: contiguous update beats gather/scatter
                    # (zero factors subtract zero).
                    a[rank + 1:, c + 1:c1] = _submod_m61(
                        a[rank + 1:, c + 1:c1],
                        _outer_mulmod_m61(col, a[rank, c + 1:c1]),
                    )
                elif nz.size:
                    below = rank + 1 + nz
                    a[below[:, None], np.arange(c + 1, c1)[None, :]] = _submod_m61(
                        a[below, c + 1:c1],
                        _outer_mulmod_m61(a[below, c], a[rank, c + 1:c1]),
                    )
            rank += 1
            if rank == m:
                break
        g = rank - g0
        if g and c1 < n:
            # Invert L', the lower triangular matrix with the saved pivot
            # values on the diagonal and the in-place multipliers below it,
            # by forward substitution one row at a time.
            lower = a[g0:rank, piv_cols]
            linv = np.zeros((g, g), dtype=np.uint64)
            for i in range(g):
                e = np.zeros(g, dtype=np.uint64)
                e[i] = 1
                if i:
                    acc = _matmul_mod_m61(lower[i : i + 1, :i], linv[:i])[0]
                    e = _submod_m61(e, acc)
                linv[i] = _scalar_mulmod_m61(invs[i], e)
            u_rest = _matmul_mod_m61(linv, a[g0:rank, c1:])
            a[g0:rank, c1:] = u_rest
            if rank < m:
                f_below = a[rank:, piv_cols]
                a[rank:, c1:] = _submod_m61(
                    a[rank:, c1:], _matmul_mod_m61(f_below, u_rest)
                )
        c0 = c1
    return rank


def rank_mod_p(mm: ModularMatrix) -> int:
    """Rank over F_p by exact Gaussian elimination; deterministic."""
    if mm.n_rows == 0 or mm.n_cols == 0:
        return 0
    if mm.p == MERSENNE61:
        if max(mm.n_rows, mm.n_cols) > 150:
            return _rank_m61_blocked(mm.data)
        return _rank_m61_rowwise(mm.data)
    return _rank_python(mm.data.tolist(), mm.p)


def det_mod_p(mm: ModularMatrix) -> int:
    """Determinant over F_p of a square matrix; empty determinant is 1."""
    if mm.n_rows != mm.n_cols:
        raise ValueError(f"determinant needs a square matrix, got {mm.n_rows}x{mm.n_cols}")
    if mm.n_rows == 0:
        return 1
    if mm.n_rows > 400 and mm.p == MERSENNE61:
        # Large case: only zero/nonzero is ever consumed.
        return 1 if _rank_m61_blocked(mm.data) == mm.n_rows else 0
    return _det_python(mm.data.tolist(), mm.p)


# -- verification operations ---------------------------------------------------


def verify_generic_rank(
    pm: PatternMatrix,
    expected: int,
    trials: int = 3,
    p: int = DEFAULT_PRIME,
    base_seed: int = 0,
) -> Verdict:
    """Instantiate at seeds base_seed, base_seed+1, ... and test whether some
    trial reaches `expected` rank.  One success is conclusive; the search
    stops there.  Failures only report the maximum rank seen."""
    if trials < 1:
        raise ValueError("need at least one trial")
    ranks: list[int] = []
    for i in range(trials):
        seed = base_seed + i
        mm = instantiate(pm, random_assignment(pm, seed, p))
        rank = rank_mod_p(mm)
        ranks.append(rank)
        if rank >= expected:
            return Verdict(
                True,
                f"rank {rank} >= {expected} at seed {seed} (trial ranks {ranks})",
            )
    return Verdict(
        False,
        f"no trial reached rank {expected}; ranks {ranks} "
        f"(max {max(ranks)}) over seeds {base_seed}..{base_seed + trials - 1}",
    )


def _certificate_columns(pm: PatternMatrix, cert: Certificate) -> list[int]:
    cols: list[int] = []
    for st in cert.steps:
        for c in st.cols:
            cols.append(pm.col_pos[c])
    return sorted(cols)


def minor_determinant_check(
    pm: PatternMatrix,
    cert: Certificate,
    p: int = DEFAULT_PRIME,
    seed: int = 0,
    assignment: RandomAssignment | None = None,
) -> Verdict:
    """Evaluate the square minor on all rows and the certificate's crossed
    columns at a seeded random point; ok iff its determinant is nonzero.

    `assignment` overrides the seeded values (negative controls)."""
    cols = _certificate_columns(pm, cert)
    if len(cols) != pm.n_rows:
        return Verdict(
            False,
            f"certificate crosses {len(cols)} columns but the pattern has "
            f"{pm.n_rows} rows; minor is not square",
        )
    if len(set(cols)) != len(cols):
        return Verdict(False, "certificate columns are not pairwise distinct")
    if assignment is None:
        assignment = random_assignment(pm, seed, p)
    mm = instantiate(pm, assignment)
    minor = ModularMatrix(pm.n_rows, pm.n_rows, p, mm.data[:, cols])
    det = det_mod_p(minor)
    if det == 0:
        return Verdict(False, f"minor determinant vanished mod {p} at seed {seed}")
    return Verdict(True, f"minor determinant {det} != 0 mod {p}")


def count_monomial_terms(
    entries: list[list[str | None]],
    monomial: dict[str, int],
) -> int:
    """Number of permutation terms of the symbolic determinant equal to the
    given monomial (a multiset of variable names with powers)."""
    size = len(entries)
    if any(len(row) != size for row in entries):
        raise ValueError("matrix must be square")
    target = sorted(
        name for name, power in monomial.items() for _ in range(power)
    )
    if len(target) != size:
        return 0
    count = 0
    for perm in permutations(range(size)):
        names = []
        for i, j in enumerate(perm):
            e = entries[i][j]
            if e is None:
                break
            names.append(e)
        else:
            if sorted(names) == target:
                count += 1
    return count


def brute_force_uniqueness(pm: PatternMatrix, cert: Certificate) -> Verdict:
    """Expand the certificate's square minor over all permutations and check
    the certificate monomial arises from exactly one of them (coefficient
    +-1, no cancellation).  Factorial cost; bounded at 8 rows."""
    if pm.n_rows > 8:
        raise ValueError(f"{pm.n_rows} rows exceed the factorial expansion bound of 8")
    cols = _certificate_columns(pm, cert)
    if len(cols) != pm.n_rows:
        return Verdict(False, "certificate minor is not square")
    entries: list[list[str | None]] = []
    for p_row in pm.rows:
        row = []
        for j in cols:
            v = pm.entry(p_row, pm.cols[j])
            row.append(None if v is None else v.label)
        entries.append(row)
    monomial = {v.label: power for v, power in cert.monomial}
    count = count_monomial_terms(entries, monomial)
    if count == 1:
        return Verdict(True, "monomial appears in exactly one permutation term")
    return Verdict(False, f"monomial appears in {count} permutation terms, want 1")


# -- dimension oracle -----------------------------------------------------------


def subspace_dimension_oracle(
    dims: tuple[int, ...],
    r: int,
    p: int = DEFAULT_PRIME,
    seed: int = 0,
) -> int:
    """Rank of an explicit spanning set for the tangent-space image inside
    F_p^(n_1*...*n_k): unit vectors outside the [r]^k block and on its
    diagonal, unit vectors on the inadmissible [r]^k coordinates, and one
    generic slice vector per (direction, block layer, slot).

    Desk-scale only: the ambient dimension is materialized.
    """
    k = len(dims)
    if k < 3:
        raise ValueError(f"order k must be at least 3, got {k}")
    if not 1 <= r <= min(dims):
        raise ValueError(f"need 1 <= r <= min(dims), got r={r}, dims={dims}")
    ambient = 1
    for n in dims:
        ambient *= n
    if ambient > 5000:
        raise ValueError(f"ambient dimension {ambient} exceeds the desk-scale bound")

    def coord_index(c: tuple[int, ...]) -> int:
        idx = 0
        for v, n in zip(c, dims):
            idx = idx * n + (v - 1)
        return idx

    unit_coords = []
    for c in product(*(range(1, n + 1) for n in dims)):
        inside = all(v <= r for v in c)
        if not inside or not is_admissible(c):
            unit_coords.append(c)

    slice_vectors = []
    reduced_grid = list(product(range(1, r + 1), repeat=k - 1))
    stream = 0
    for t in range(1, k + 1):
        for s in range(1, dims[t - 1] - r + 1):
            values = {}
            for w in reduced_grid:
                values[w] = seeded_value(seed, stream, p)
                stream += 1
            for m in range(1, r + 1):
                vec = np.zeros(ambient, dtype=np.uint64)
                for w, val in values.items():
                    c = w[: t - 1] + (m,) + w[t - 1:]
                    vec[coord_index(c)] = val
                slice_vectors.append(vec)

    rows = np.zeros((len(unit_coords) + len(slice_vectors), ambient), dtype=np.uint64)
    for i, c in enumerate(unit_coords):
        rows[i, coord_index(c)] = 1
    for i, vec in enumerate(slice_vectors):
        rows[len(unit_coords) + i] = vec
    mm = ModularMatrix(rows.shape[0], ambient, p, rows)
    return rank_mod_p(mm)


# -- primality (CLI input validation) --------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit integers."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True
