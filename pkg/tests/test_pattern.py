import pytest

from subrank.combinatorics import count_rows
from subrank.pattern import (
    Variable,
    build_pattern,
    occurrences,
    parse_coordinate_list,
    parse_variable,
    pattern_from_json,
    pattern_to_coordinate_list,
    pattern_to_json,
)


class TestBuild:
    def test_square_example_shape(self):
        pm = build_pattern(4, (6, 6, 6))
        assert (pm.n_rows, pm.n_cols) == (24, 24)
        assert pm.nnz == 144

    def test_empty_pattern(self):
        pm = build_pattern(2, (3, 3, 3))
        assert (pm.n_rows, pm.n_cols) == (0, 6)
        assert pm.nnz == 0

    def test_rejects_r_above_min_dim(self):
        with pytest.raises(ValueError):
            build_pattern(4, (6, 3, 6))

    @pytest.mark.parametrize(
        "r,dims",
        [
            (3, (4, 4, 4)), (3, (7, 5, 3)), (4, (9, 4, 6)), (5, (9, 9, 9)),
            (6, (9, 8, 7)), (2, (3, 3, 3, 3)), (3, (4, 5, 3, 6)), (2, (9, 2, 5, 4)),
            (1, (1, 1, 1)), (4, (4, 4, 4)),
        ],
    )
    def test_row_and_column_counts(self, r, dims):
        pm = build_pattern(r, dims)
        k = len(dims)
        assert pm.n_rows == count_rows(r, k)
        assert pm.n_cols == r * sum(n - r for n in dims)
        assert pm.nnz == pm.n_rows * sum(n - r for n in dims)

    def test_rows_and_cols_lexicographic(self):
        pm = build_pattern(4, (6, 5, 7))
        assert list(pm.rows) == sorted(pm.rows)
        assert list(pm.cols) == sorted(pm.cols)

    def test_deterministic(self):
        a = build_pattern(4, (6, 6, 6))
        b = build_pattern(4, (6, 6, 6))
        assert a.entry_rows == b.entry_rows
        assert a.entry_cols == b.entry_cols
        assert a.entry_vars == b.entry_vars
        assert a.variables == b.variables


class TestEntries:
    def test_worked_example_positions(self):
        pm = build_pattern(4, (6, 6, 6))
        assert pm.entry((1, 2, 3), (1, 1, 1)) == Variable(1, 1, (2, 3))
        assert pm.entry((1, 2, 3), (2, 2, 1)) == Variable(2, 1, (1, 3))
        assert pm.entry((2, 1, 3), (3, 3, 1)) == Variable(3, 1, (2, 1))
        assert pm.entry((1, 2, 3), (1, 2, 1)) is None

    def test_variable_at_most_once_per_row_and_column(self):
        for r, dims in [(4, (6, 6, 6)), (3, (5, 4, 4)), (2, (4, 3, 3, 3))]:
            pm = build_pattern(r, dims)
            seen_rows = set()
            seen_cols = set()
            for i, j, vi in zip(pm.entry_rows, pm.entry_cols, pm.entry_vars):
                assert (i, vi) not in seen_rows
                assert (j, vi) not in seen_cols
                seen_rows.add((i, vi))
                seen_cols.add((j, vi))

    def test_column_index_agrees_with_entries(self):
        pm = build_pattern(3, (5, 4, 4))
        by_col = pm.col_entries
        assert sum(len(v) for v in by_col.values()) == pm.nnz
        for j, items in by_col.items():
            t, m, _ = pm.cols[j]
            for i, vi in items:
                assert pm.rows[i][t - 1] == m
                assert pm.variables[vi].t == t

    def test_one_nonzero_per_row_and_slot_pair(self):
        pm = build_pattern(3, (5, 4, 4))
        per_row = {}
        for i, j in zip(pm.entry_rows, pm.entry_cols):
            t, _, s = pm.cols[j]
            key = (i, t, s)
            assert key not in per_row
            per_row[key] = j
        assert len(per_row) == pm.n_rows * sum(n - 3 for n in (5, 4, 4))


class TestOccurrences:
    def test_each_variable_twice_at_r4(self):
        pm = build_pattern(4, (6, 6, 6))
        occ = occurrences(pm, Variable(1, 1, (2, 3)))
        assert occ == {((1, 2, 3), (1, 1, 1)), ((4, 2, 3), (1, 4, 1))}
        for v in pm.variables:
            assert len(occurrences(pm, v)) == 2

    def test_blocks_example_occurrences_at_r5(self):
        pm = build_pattern(5, (7, 6, 6))
        occ = occurrences(pm, Variable(1, 1, (2, 4)))
        assert {row for row, _ in occ} == {(1, 2, 4), (3, 2, 4), (5, 2, 4)}
        assert len({col for _, col in occ}) == 3

    @pytest.mark.parametrize("r", range(3, 8))
    def test_k3_occurrence_count_is_r_minus_2(self, r):
        pm = build_pattern(r, (r + 1, r + 1, r + 1))
        for v in pm.variables:
            occ = occurrences(pm, v)
            assert len(occ) == r - 2
            assert len({row for row, _ in occ}) == r - 2
            assert len({col for _, col in occ}) == r - 2

    def test_unknown_variable_empty(self):
        pm = build_pattern(4, (6, 6, 6))
        assert occurrences(pm, Variable(1, 9, (2, 3))) == set()


class TestVariableLabels:
    def test_label_round_trip(self):
        for v in [Variable(1, 1, (2, 3)), Variable(3, 12, (4, 1)), Variable(2, 1, (1, 3, 2))]:
            assert parse_variable(v.label) == v

    def test_label_format(self):
        assert Variable(1, 2, (3, 4)).label == "a^{1,2}_{3,4}"

    def test_malformed_labels_rejected(self):
        for bad in ["a^{1,2}_{}", "a^{1}_{2,3}", "b^{1,1}_{2,3}", "a^{1,1}_{2,}"]:
            with pytest.raises(ValueError):
                parse_variable(bad)


class TestSerialization:
    def test_coordinate_list_empty_pattern(self):
        pm = build_pattern(2, (3, 3, 3))
        text = pattern_to_coordinate_list(pm)
        assert text == "0 6 0\n"

    def test_coordinate_list_square_example(self):
        pm = build_pattern(4, (6, 6, 6))
        text = pattern_to_coordinate_list(pm)
        lines = text.strip().split("\n")
        assert lines[0] == "24 24 144"
        assert len(lines) == 145
        n_rows, n_cols, entries = parse_coordinate_list(text)
        assert (n_rows, n_cols, len(entries)) == (24, 24, 144)
        want = {
            (i, j, pm.variables[vi])
            for i, j, vi in zip(pm.entry_rows, pm.entry_cols, pm.entry_vars)
        }
        assert set(entries) == want

    def test_json_round_trip(self):
        for r, dims in [(4, (6, 6, 6)), (2, (3, 3, 3)), (3, (5, 4, 4)), (2, (3, 3, 3, 3))]:
            pm = build_pattern(r, dims)
            again = pattern_from_json(pattern_to_json(pm))
            assert again == pm
            assert again.rows == pm.rows
            assert again.cols == pm.cols
            assert again.entry_vars == pm.entry_vars

    def test_json_rejects_tampered_entries(self):
        import json

        pm = build_pattern(3, (4, 4, 4))
        doc = json.loads(pattern_to_json(pm))
        doc["entries"][0]["var"] = "a^{1,1}_{3,3}"
        with pytest.raises(ValueError):
            pattern_from_json(json.dumps(doc))
