from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrmds.codes import (
    GeneratorSpec,
    Parity,
    RecoverySet,
    SetKind,
    Systematic,
    build_generator,
    build_mother_matrix,
    enumerate_recovery_sets,
    recovery_set_count,
    verify_recovery_set,
)
from srrmds.errors import InvalidArgument
from srrmds.field import all_k_minors_nonsingular, in_column_span

specs = st.integers(2, 4).flatmap(
    lambda k: st.tuples(st.integers(k, k + 3), st.just(k), st.integers(0, k)).map(lambda t: GeneratorSpec(*t))
)


def test_default_modulus():
    assert GeneratorSpec(4, 2, 2).q == 7
    assert GeneratorSpec(6, 3, 0).q == 11
    assert GeneratorSpec(8, 4, 4).q == 13


@pytest.mark.parametrize("args", [(2, 3, 0), (4, 2, 3), (4, 2, -1), (4, 1, 0), (4, 2, 2, 9), (4, 2, 2, 5)])
def test_invalid_spec(args):
    with pytest.raises(InvalidArgument):
        GeneratorSpec(*args)


def test_small_generator_reference():
    g = build_generator(GeneratorSpec(4, 2, 2))
    assert g.matrix.to_rows() == [[1, 0, 4, 3], [0, 1, 4, 5]]
    assert g.to_json() == {"n": 4, "k": 2, "i": 2, "q": 7, "columns": [[1, 0], [0, 1], [4, 4], [3, 5]]}
    assert g.column_kinds == (Systematic(1), Systematic(2), Parity(3), Parity(4))


@pytest.mark.parametrize("n, k", [(4, 2), (6, 3), (8, 4), (10, 4)])
def test_mother_matrix_is_systematic_mds(n, k):
    q = GeneratorSpec(n, k, 0).q
    m = build_mother_matrix(n, k, q)
    assert m.select_columns(range(k)).to_rows() == [[int(r == c) for c in range(k)] for r in range(k)]
    assert all_k_minors_nonsingular(m, k)


@settings(max_examples=30, deadline=None)
@given(specs)
def test_generator_shape(spec):
    g = build_generator(spec)
    assert (g.matrix.rows, g.matrix.cols) == (spec.k, spec.n)
    for c in range(spec.i):
        assert g.matrix.column(c) == tuple(int(r == c) for r in range(spec.k))
    assert all_k_minors_nonsingular(g.matrix, spec.k)


@settings(max_examples=30, deadline=None)
@given(specs)
def test_consecutive_generators_differ_in_one_column(spec):
    if spec.i == spec.k:
        return
    a, b = build_generator(spec), build_generator(spec.with_i(spec.i + 1))
    differ = [c for c in range(spec.n) if a.matrix.column(c) != b.matrix.column(c)]
    assert differ == [spec.i]


def brute_force_recovery_sets(g, j):
    """Every minimal column subset spanning e_j, found without the MDS shortcut."""
    target = [int(r == j - 1) for r in range(g.k)]
    found = []
    for size in range(1, g.k + 1):
        for cols in combinations(range(g.n), size):
            if any(set(f) <= set(cols) for f in found):
                continue
            if in_column_span(g.matrix, list(cols), target):
                found.append(cols)
    return sorted(found)


@pytest.mark.parametrize("spec", [GeneratorSpec(4, 2, 2), GeneratorSpec(5, 3, 1), GeneratorSpec(6, 3, 3), GeneratorSpec(6, 4, 2)])
def test_enumeration_matches_brute_force(spec):
    g = build_generator(spec)
    for j in range(1, spec.k + 1):
        sets = enumerate_recovery_sets(g, j)
        assert sorted(r.columns for r in sets) == brute_force_recovery_sets(g, j)
        assert len(sets) == recovery_set_count(spec.n, spec.k, spec.i, j)
        assert all(verify_recovery_set(g, r) for r in sets)


def test_systematic_set_first():
    g = build_generator(GeneratorSpec(4, 2, 1))
    first = enumerate_recovery_sets(g, 1)[0]
    assert first == RecoverySet(1, (0,), SetKind.SYSTEMATIC)
    assert enumerate_recovery_sets(g, 2)[0].kind is SetKind.NON_SYSTEMATIC


def test_non_minimal_set_rejected():
    g = build_generator(GeneratorSpec(4, 2, 2))
    assert not verify_recovery_set(g, RecoverySet(1, (0, 2), SetKind.NON_SYSTEMATIC))
    assert not verify_recovery_set(g, RecoverySet(1, (1,), SetKind.SYSTEMATIC))
    with pytest.raises(InvalidArgument):
        enumerate_recovery_sets(g, 3)
