"""Closed-form generic subrank, dimension formulas and regime tests.

All floor-root expressions are evaluated in pure integer arithmetic;
floating-point roots misround near perfect powers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import count_rows


def integer_root(x: int, e: int) -> int:
    """Largest y with y**e <= x, by Newton iteration on integers."""
    if x < 0:
        raise ValueError("x must be non-negative")
    if e < 1:
        raise ValueError("e must be positive")
    if x < 2 or e == 1:
        return x
    y = 1 << ((x.bit_length() + e - 1) // e)
    while True:
        t = ((e - 1) * y + x // y ** (e - 1)) // e
        if t >= y:
            break
        y = t
    while y**e > x:
        y -= 1
    while (y + 1) ** e <= x:
        y += 1
    return y


def _validate_shape(dims: tuple[int, ...]) -> None:
    if len(dims) < 3:
        raise ValueError(f"order k must be at least 3, got {len(dims)}")
    if any(n < 1 for n in dims):
        raise ValueError(f"dimensions must be positive, got {dims}")


@dataclass(frozen=True)
class SubrankResult:
    """Generic subrank and which of the two constraints pins it down."""

    q: int
    binding_constraint: str  # "dimension-bound" or "root-bound"
    root_argument: int       # sum(dims) - (k - 1)


def generic_subrank(dims: tuple[int, ...]) -> SubrankResult:
    """min(min(dims), floor((sum(dims) - (k-1))^(1/(k-1)))).

    When both constraints give the same value the dimension bound is
    reported as binding.
    """
    _validate_shape(dims)
    k = len(dims)
    arg = sum(dims) - (k - 1)
    root = integer_root(arg, k - 1)
    low = min(dims)
    if low <= root:
        return SubrankResult(q=low, binding_constraint="dimension-bound", root_argument=arg)
    return SubrankResult(q=root, binding_constraint="root-bound", root_argument=arg)


@dataclass(frozen=True)
class DimensionResult:
    """Dimension of the locus of tensors of subrank at least r."""

    dim: int
    regime: str  # "full", "formula", or "empty-or-invalid"


def dim_C_r(dims: tuple[int, ...], r: int) -> DimensionResult:
    """Full ambient dimension for r <= Q; the closed form
    prod(n_i) - r*(r^(k-1) - sum(n_i) + (k-1)) for Q < r <= min(dims);
    outside that range the locus is empty or the formula does not apply.
    """
    _validate_shape(dims)
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    k = len(dims)
    ambient = 1
    for n in dims:
        ambient *= n
    q = generic_subrank(dims).q
    if r <= q:
        return DimensionResult(dim=ambient, regime="full")
    if r <= min(dims):
        dim = ambient - r * (r ** (k - 1) - sum(dims) + (k - 1))
        return DimensionResult(dim=dim, regime="formula")
    return DimensionResult(dim=0, regime="empty-or-invalid")


@dataclass(frozen=True)
class RegimeReport:
    """Row/column bookkeeping for the pattern matrix at given (dims, r)."""

    r: int
    dims: tuple[int, ...]
    n_rows: int
    n_cols: int | None           # None when r > min(dims): no matrix
    certificate_regime: bool     # columns >= rows and the matrix exists
    r_within_dims: bool          # r <= min(dims)
    footnote_shortcut: bool      # some n_i - r > r^2: subrank >= r regardless


def pattern_col_count(dims: tuple[int, ...], r: int) -> int:
    """r * sum_t (n_t - r); requires r <= min(dims)."""
    if r > min(dims):
        raise ValueError(f"r={r} exceeds min dimension of {dims}")
    return r * sum(n - r for n in dims)


def classify(dims: tuple[int, ...], r: int) -> RegimeReport:
    _validate_shape(dims)
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    k = len(dims)
    n_rows = count_rows(r, k)
    within = r <= min(dims)
    n_cols = pattern_col_count(dims, r) if within else None
    return RegimeReport(
        r=r,
        dims=tuple(dims),
        n_rows=n_rows,
        n_cols=n_cols,
        certificate_regime=within and n_cols >= n_rows,
        r_within_dims=within,
        footnote_shortcut=any(n - r > r * r for n in dims),
    )
