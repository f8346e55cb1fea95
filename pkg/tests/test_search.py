"""Canonical enumeration, sweeps against closed-form families, the
difference-matrix seed test, and the triple identity search."""

import random
from itertools import combinations_with_replacement

import pytest

from rigidpow.rigidity import (
    Row,
    WeightMatrix,
    is_l_rigid,
    is_rigid,
    quasilinear,
)
from rigidpow.search import (
    BudgetExceeded,
    SearchSpec,
    WrongShape,
    canonical_form,
    quasilinearity_test,
    row_universe,
    sweep,
    triple_identity_search,
)


def wm(*rows):
    return WeightMatrix(tuple(Row(tuple(ws), s) for ws, s in rows))


# -- canonical forms ----------------------------------------------------------


def test_canonical_form_sorts_rows_and_columns():
    matrix = wm(([2, 1], 1), ([1, 1], 1))
    assert canonical_form(matrix) == wm(([1, 1], 1), ([2, 1], 1))


def test_canonical_form_l_mode_flips_signs():
    assert canonical_form(wm(([-3], 1)), "L") == wm(([3], -1))


def test_canonical_form_idempotent():
    rng = random.Random(9)
    for _ in range(30):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        matrix = wm(
            *(
                ([rng.choice([w for w in range(-4, 5) if w]) for _ in range(n)],
                 rng.choice((1, -1)))
                for _ in range(m)
            )
        )
        for mode in ("T", "L"):
            once = canonical_form(matrix, mode)
            assert canonical_form(once, mode) == once


def test_equal_canonical_forms_have_equal_series():
    rng = random.Random(10)
    for _ in range(20):
        n = rng.randint(1, 3)
        rows = [
            Row(tuple(rng.choice([w for w in range(-4, 5) if w]) for _ in range(n)),
                rng.choice((1, -1)))
            for _ in range(rng.randint(1, 3))
        ]
        matrix = WeightMatrix(tuple(rows))
        shuffled = list(rows)
        rng.shuffle(shuffled)
        permuted = WeightMatrix(
            tuple(Row(tuple(rng.sample(r.weights, n)), r.sign) for r in shuffled)
        )
        assert canonical_form(matrix) == canonical_form(permuted)


def test_row_universe_is_sorted_and_complete():
    universe = row_universe(2, 2, "L")
    assert universe == sorted(universe, key=lambda r: (r.weights, r.sign))
    assert len(universe) == 6  # 3 weight multisets x 2 signs
    universe_t = row_universe(1, 2, "T")
    assert len(universe_t) == 8  # 4 nonzero values x 2 signs


# -- sweeps against closed-form families ---------------------------------------


def l1_family(bound):
    """Antipodal single-weight pairs: rows (a), (-a) with equal signs."""
    return {
        canonical_form(wm(([a], e), ([-a], e)))
        for a in range(1, bound + 1)
        for e in (1, -1)
    }


def z_family(n, bound):
    """Identical rows with opposite signs, any nonzero weights."""
    values = [v for v in range(-bound, bound + 1) if v]
    return {
        canonical_form(wm((list(ws), 1), (list(ws), -1)))
        for ws in combinations_with_replacement(values, n)
    }


def s3_family(bound):
    """Rows (a, b, -(a+b)) and its negation with equal signs."""
    family = set()
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            if a + b > bound:
                continue
            for e in (1, -1):
                family.add(
                    canonical_form(wm(([a, b, -(a + b)], e), ([-a, -b, a + b], e)))
                )
    return family


def test_sweep_two_rows_single_column():
    report = sweep(SearchSpec(m=2, n=1, bound=3, mode="T"))
    got = {f.matrix for f in report.found}
    assert got == z_family(1, 3) | l1_family(3)
    assert all(f.label is not None and f.label.kind in ("Z", "L1") for f in report.found)
    assert report.stats.enumerated == 78  # C(13, 2) canonical pairs over 12 rows


def test_sweep_found_is_sorted_and_unique():
    report = sweep(SearchSpec(m=2, n=2, bound=2, mode="T"))
    keys = [f.matrix.key() for f in report.found]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert {f.matrix for f in report.found} == z_family(2, 2)


def test_sweep_paired_family_l_mode():
    report = sweep(SearchSpec(m=2, n=1, bound=4, mode="L"))
    expected = {
        canonical_form(wm(([a], 1), ([a], -1)), "L") for a in range(1, 5)
    }
    assert {f.matrix for f in report.found} == expected
    assert all(f.constant.is_zero() for f in report.found)


def test_small_nonzero_anomaly_scan_is_clean():
    # the only nonzero-constant finds with m <= n+1 in these spaces are the
    # difference matrices, which match the m = n+1, |constant| = 1 pattern
    assert sweep(SearchSpec(m=3, n=2, bound=4, mode="L")).small_nonzero_anomalies() == []
    assert sweep(SearchSpec(m=2, n=1, bound=4, mode="L")).small_nonzero_anomalies() == []


def test_sweep_three_rows_quasilinear():
    report = sweep(SearchSpec(m=3, n=2, bound=4, mode="L"))
    assert report.found
    for f in report.found:
        assert f.quasilinear_seed is not None
        assert f.constant.constant_value() in (1, -1)
        assert f.pairable
        assert f.kosniowski_ok
    # completeness: every difference matrix with max weight <= 4 shows up,
    # along with its global sign reversal
    expected = set()
    for t in range(2, 5):
        for s in range(1, t):
            q = quasilinear([0, s, t])
            expected.add(canonical_form(q, "L"))
            expected.add(canonical_form(q.with_signs_negated(), "L"))
    assert {f.matrix for f in report.found} == expected


def test_sweep_shard_invariance():
    spec = SearchSpec(m=2, n=2, bound=3, mode="T")
    baseline = sweep(spec)
    for shards in (2, 3, 7):
        report = sweep(spec, shards=shards)
        assert [f.matrix for f in report.found] == [f.matrix for f in baseline.found]
        assert report.stats.enumerated == baseline.stats.enumerated


def test_sweep_parallel_workers_match_sequential():
    spec = SearchSpec(m=2, n=1, bound=3, mode="T")
    sequential = sweep(spec, shards=2)
    parallel = sweep(spec, shards=2, workers=2)
    assert [f.matrix for f in parallel.found] == [f.matrix for f in sequential.found]


def test_sweep_sign_policy_restricts_candidates():
    # only opposite-sign candidates: exactly the cancelling family remains
    report = sweep(SearchSpec(m=2, n=1, bound=3, mode="T", sign_policy=(1, -1)))
    assert {f.matrix for f in report.found} == z_family(1, 3)
    full = sweep(SearchSpec(m=2, n=1, bound=3, mode="T"))
    assert report.stats.enumerated < full.stats.enumerated


def test_sweep_budget_exceeded_carries_partial_report():
    with pytest.raises(BudgetExceeded) as info:
        sweep(SearchSpec(m=2, n=1, bound=6, mode="T", enum_budget=50))
    partial = info.value.report
    assert partial.stats.enumerated == 50
    full_found = {f.matrix for f in sweep(SearchSpec(m=2, n=1, bound=6, mode="T")).found}
    assert {f.matrix for f in partial.found} <= full_found

    with pytest.raises(BudgetExceeded) as info:
        sweep(SearchSpec(m=2, n=1, bound=6, mode="T", check_budget=3))
    assert info.value.report.stats.exact_checks == 3


def test_sweep_validates_spec():
    with pytest.raises(ValueError):
        SearchSpec(m=0, n=1, bound=1)
    with pytest.raises(ValueError):
        SearchSpec(m=1, n=1, bound=1, mode="X")
    with pytest.raises(ValueError):
        SearchSpec(m=2, n=1, bound=1, sign_policy=(1,))
    with pytest.raises(ValueError):
        SearchSpec(m=1, n=1, bound=1, canonicalize=False)


# -- pre-filter soundness -----------------------------------------------------


def test_prefilter_rejects_are_never_rigid():
    # every candidate the sweep rejected must fail the symbolic check too
    from array import array

    from rigidpow.prefilter import sample_points, select_filter
    from rigidpow.search import _shard_rows

    spec = SearchSpec(m=2, n=2, bound=3, mode="T")
    universe = row_universe(spec.n, spec.bound, spec.mode)
    points = sample_points(spec.mode)
    kernel, _ = select_filter(spec.m, spec.n, spec.bound, points)
    points_arr = array("q", points)

    rng = random.Random(12)
    rejected = []
    for rows in _shard_rows(universe, spec.m, 0, 1):
        wbuf = array("q", [w for row in rows for w in row.weights])
        sbuf = array("q", [row.sign for row in rows])
        mask = bytearray(1)
        kernel(wbuf, sbuf, spec.m, spec.n, 1, points_arr, mask)
        if not mask[0]:
            rejected.append(rows)
    assert rejected
    sample = rng.sample(rejected, max(len(rejected) // 20, 50))
    for rows in sample:
        assert not is_rigid(WeightMatrix(rows)).rigid


# -- difference-matrix seed recovery -------------------------------------------


def test_seed_recovery_plain_rows():
    matrix = wm(([-1, -2], 1), ([1, -1], 1), ([2, 1], 1))
    assert quasilinearity_test(matrix) == (0, 1, 2)


def test_seed_recovery_rejects_repeats():
    assert quasilinearity_test(wm(([1, 1], 1), ([1, 1], 1), ([1, 1], 1))) is None


def test_seed_recovery_round_trip():
    assert quasilinearity_test(quasilinear([0, 2, 5])) == (0, 2, 5)
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(1, 4)
        seed = tuple(rng.sample(range(-8, 9), n + 1))
        found = quasilinearity_test(quasilinear(seed))
        assert found is not None
        # recovered seed regenerates the same matrix up to canonical form
        assert canonical_form(quasilinear(found)) == canonical_form(quasilinear(seed))


def test_seed_recovery_l_mode_handles_sign_symmetries():
    matrix = canonical_form(quasilinear([0, 1, 2]), "L")
    assert quasilinearity_test(matrix, mode="L") is not None
    negated = matrix.with_signs_negated()
    assert quasilinearity_test(negated, mode="L") is not None
    # T mode is strict: the normalized matrix no longer matches literally
    assert quasilinearity_test(matrix, mode="T") is None


def test_seed_recovery_needs_square_plus_one_shape():
    with pytest.raises(WrongShape):
        quasilinearity_test(wm(([1, 2], 1), ([1, 2], 1)))


def test_seed_recovery_rejects_non_difference_matrices():
    matrix = wm(([1, 2], 1), ([1, 2], 1), ([1, 2], 1))
    assert quasilinearity_test(matrix) is None
    assert quasilinearity_test(matrix, mode="L") is None


# -- triple identity search ---------------------------------------------------


def expected_triples(bound):
    """Solutions derived from difference matrices with max entry <= bound."""
    expected = set()
    for t in range(2, bound + 1):
        for s in range(1, t):
            row_a = tuple(sorted((s, t)))
            row_b = tuple(sorted((t, t - s)))
            row_c = tuple(sorted((s, t - s)))
            first, second = sorted((row_a, row_b))
            expected.add((first, second, row_c))
    return expected


def test_triple_search_matches_difference_matrix_family():
    solutions = triple_identity_search(2, 4)
    assert set(solutions) == expected_triples(4)
    for a, b, c in solutions:
        matrix = wm((a, 1), (b, 1), (c, -1))
        verdict = is_l_rigid(matrix)
        assert verdict.rigid and verdict.constant.constant_value() == 1
        assert quasilinearity_test(matrix, mode="L") is not None


def test_triple_search_odd_size_has_no_solutions():
    # parity: the x=y=1 constant of three rows with odd n must be 0, never 1
    assert triple_identity_search(1, 3) == []


def test_triple_search_canonical_ordering():
    for a, b, c in triple_identity_search(2, 5):
        assert tuple(sorted(a)) == a and tuple(sorted(b)) == b and tuple(sorted(c)) == c
        assert a <= b
