"""Sparse symbolic pattern matrix with rows indexed by admissible tuples.

For parameters r and dims (n_1, ..., n_k) with r <= min(n_i), the matrix
has one row per admissible k-tuple over [r] and one column per triple
(t, m, s) with t in [k], m in [r], s in [n_t - r].  The entry at row
(j_1, ..., j_k) and column (t, m, s) is the variable a^{t,s} subscripted by
the row with coordinate t deleted when m = j_t, and zero otherwise.  Every
variable occurs at most once per row and once per column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property

from .combinatorics import count_rows, enumerate_rows


@dataclass(frozen=True, order=True)
class Variable:
    """Matrix variable a^{t,s}_{w}: direction t, slot s, reduced tuple w."""

    t: int
    s: int
    reduced: tuple[int, ...]

    @property
    def label(self) -> str:
        subscript = ",".join(str(c) for c in self.reduced)
        return f"a^{{{self.t},{self.s}}}_{{{subscript}}}"

    def __str__(self) -> str:
        return self.label


_VAR_RE = re.compile(r"^a\^\{(\d+),(\d+)\}_\{(\d+(?:,\d+)*)\}$")


def parse_variable(label: str) -> Variable:
    """Inverse of Variable.label."""
    m = _VAR_RE.match(label)
    if m is None:
        raise ValueError(f"malformed variable label: {label!r}")
    reduced = tuple(int(c) for c in m.group(3).split(","))
    return Variable(t=int(m.group(1)), s=int(m.group(2)), reduced=reduced)


class PatternMatrix:
    """Immutable sparse symbolic matrix plus row/column/variable indexes.

    Storage is row-major (parallel entry arrays sorted by row, column) with
    a per-variable occurrence index; columns can be scanned through the
    cached per-column index.
    """

    def __init__(self, r: int, dims: tuple[int, ...]):
        k = len(dims)
        if k < 3:
            raise ValueError(f"order k must be at least 3, got {k}")
        if any(n < 1 for n in dims):
            raise ValueError(f"dimensions must be positive, got {dims}")
        if r < 1:
            raise ValueError(f"r must be positive, got {r}")
        if r > min(dims):
            raise ValueError(f"r={r} exceeds min dimension {min(dims)} of {dims}")

        self.r = r
        self.dims = tuple(dims)
        self.k = k
        self.rows: tuple[tuple[int, ...], ...] = tuple(enumerate_rows(r, k))
        self.cols: tuple[tuple[int, int, int], ...] = tuple(
            (t, m, s)
            for t in range(1, k + 1)
            for m in range(1, r + 1)
            for s in range(1, dims[t - 1] - r + 1)
        )
        self.row_pos = {p: i for i, p in enumerate(self.rows)}
        self.col_pos = {c: j for j, c in enumerate(self.cols)}

        # One nonzero per row and (t, s) pair, at column (t, j_t, s).
        entry_rows: list[int] = []
        entry_cols: list[int] = []
        entry_vars: list[int] = []
        var_pos: dict[Variable, int] = {}
        variables: list[Variable] = []
        occ: list[list[tuple[int, int]]] = []
        for i, p in enumerate(self.rows):
            for t in range(1, k + 1):
                reduced = p[: t - 1] + p[t:]
                for s in range(1, dims[t - 1] - r + 1):
                    j = self.col_pos[(t, p[t - 1], s)]
                    v = Variable(t=t, s=s, reduced=reduced)
                    vi = var_pos.get(v)
                    if vi is None:
                        vi = len(variables)
                        var_pos[v] = vi
                        variables.append(v)
                        occ.append([])
                    entry_rows.append(i)
                    entry_cols.append(j)
                    entry_vars.append(vi)
                    occ[vi].append((i, j))

        # Reindex variables into lexicographic (t, s, reduced) order so
        # seeded assignments are reproducible across implementations.
        order = sorted(range(len(variables)), key=lambda vi: variables[vi])
        rank_of = [0] * len(order)
        for new, old in enumerate(order):
            rank_of[old] = new
        self.variables: tuple[Variable, ...] = tuple(variables[old] for old in order)
        self.var_pos = {v: vi for vi, v in enumerate(self.variables)}
        self.entry_rows = entry_rows
        self.entry_cols = entry_cols
        self.entry_vars = [rank_of[vi] for vi in entry_vars]
        self.var_occ: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(occ[old]) for old in order
        )

    # -- basic facts ------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entry_rows)

    @cached_property
    def col_entries(self) -> dict[int, list[tuple[int, int]]]:
        """Per-column reverse index: j -> [(i, var index), ...]."""
        out: dict[int, list[tuple[int, int]]] = {}
        for i, j, vi in zip(self.entry_rows, self.entry_cols, self.entry_vars):
            out.setdefault(j, []).append((i, vi))
        return out

    def entry(self, p: tuple[int, ...], c: tuple[int, int, int]) -> Variable | None:
        """Variable at row p, column c = (t, m, s); None where the matrix is zero."""
        t, m, s = c
        if c not in self.col_pos or p not in self.row_pos:
            raise KeyError(f"position ({p}, {c}) outside the matrix")
        if p[t - 1] != m:
            return None
        return Variable(t=t, s=s, reduced=p[: t - 1] + p[t:])

    def variable_index(self, v: Variable) -> int | None:
        return self.var_pos.get(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternMatrix):
            return NotImplemented
        return self.r == other.r and self.dims == other.dims

    def __hash__(self) -> int:
        return hash((self.r, self.dims))

    def __repr__(self) -> str:
        return (
            f"PatternMatrix(r={self.r}, dims={self.dims}, "
            f"{self.n_rows}x{self.n_cols}, nnz={self.nnz})"
        )


def build_pattern(r: int, dims: tuple[int, ...]) -> PatternMatrix:
    """Construct the pattern matrix for parameters (r, dims)."""
    pm = PatternMatrix(r, tuple(dims))
    assert pm.n_rows == count_rows(r, pm.k)
    return pm


def occurrences(
    pm: PatternMatrix, v: Variable
) -> set[tuple[tuple[int, ...], tuple[int, int, int]]]:
    """All nonzero positions of v as (row tuple, column triple) pairs.

    Positions of one variable have pairwise distinct rows and pairwise
    distinct columns.  Unknown variables give the empty set.
    """
    vi = pm.var_pos.get(v)
    if vi is None:
        return set()
    return {(pm.rows[i], pm.cols[j]) for i, j in pm.var_occ[vi]}


# -- serialization ---------------------------------------------------------


def pattern_to_json(pm: PatternMatrix) -> str:
    """Lossless JSON form with stable key order."""
    doc = {
        "r": pm.r,
        "dims": list(pm.dims),
        "rows": [list(p) for p in pm.rows],
        "cols": [list(c) for c in pm.cols],
        "entries": [
            {"row": i, "col": j, "var": pm.variables[vi].label}
            for i, j, vi in zip(pm.entry_rows, pm.entry_cols, pm.entry_vars)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=False)


def pattern_from_json(text: str) -> PatternMatrix:
    """Rebuild a pattern from its JSON form, cross-checking every entry."""
    doc = json.loads(text)
    pm = build_pattern(int(doc["r"]), tuple(int(n) for n in doc["dims"]))
    rows = [tuple(p) for p in doc["rows"]]
    cols = [tuple(c) for c in doc["cols"]]
    if rows != list(pm.rows) or cols != list(pm.cols):
        raise ValueError("row/column labels disagree with the stated r and dims")
    listed = {
        (int(e["row"]), int(e["col"])): parse_variable(e["var"])
        for e in doc["entries"]
    }
    actual = {
        (i, j): pm.variables[vi]
        for i, j, vi in zip(pm.entry_rows, pm.entry_cols, pm.entry_vars)
    }
    if listed != actual:
        raise ValueError("entry list disagrees with the stated r and dims")
    return pm


def pattern_to_coordinate_list(pm: PatternMatrix) -> str:
    """Newline-delimited ASCII form: "nRows nCols nnz" header, then one
    "rowIdx colIdx varName" line per nonzero (1-based indices)."""
    lines = [f"{pm.n_rows} {pm.n_cols} {pm.nnz}"]
    for i, j, vi in zip(pm.entry_rows, pm.entry_cols, pm.entry_vars):
        lines.append(f"{i + 1} {j + 1} {pm.variables[vi].label}")
    return "\n".join(lines) + "\n"


def parse_coordinate_list(text: str) -> tuple[int, int, list[tuple[int, int, Variable]]]:
    """Parse the coordinate-list form back into (nRows, nCols, entries)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n_rows, n_cols, nnz = (int(x) for x in lines[0].split())
    entries = []
    for ln in lines[1:]:
        si, sj, label = ln.split(" ", 2)
        entries.append((int(si) - 1, int(sj) - 1, parse_variable(label)))
    if len(entries) != nnz:
        raise ValueError(f"header declares {nnz} entries, found {len(entries)}")
    return n_rows, n_cols, entries
