from fractions import Fraction as F

import numpy as np
import pytest

from srrmds.codes import GeneratorSpec
from srrmds.errors import InvalidArgument
from srrmds.verify import (
    VerifyConfig,
    check_chain,
    check_greedy,
    check_oracle,
    check_uniqueness,
    grid,
    random_points,
    run_verify,
    spec_grid,
    sweep_specs,
)
from srrmds.srr import max_demand, solver_for


def test_sweep_size():
    specs = sweep_specs()
    assert len(specs) == 70
    assert len(set(specs)) == 70
    assert len(sweep_specs(2, 2, 4)) == 9


def test_grid_layout():
    pts, d = grid(2, F(1), F(1, 2))
    assert d == 2
    assert pts.tolist() == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]]
    with pytest.raises(InvalidArgument):
        grid(2, F(1), F(0))


def test_random_points_reproducible():
    spec = GeneratorSpec(5, 3, 2)
    a, b = random_points(spec, 50), random_points(spec, 50)
    assert a == b
    assert a != random_points(spec, 50, seed=1)
    for lam in a:
        assert all(0 <= x <= max_demand(spec, j + 1) for j, x in enumerate(lam))
        assert all(x.denominator <= 16 for x in lam)


def test_oracle_small():
    rep = check_oracle(GeneratorSpec(4, 2, 2), n_random=50)
    assert rep.disagreements == [] and rep.sandwich == []
    assert rep.grid_points == 17 ** 2
    assert rep.random_points == 50


def test_greedy_small():
    rep = check_greedy(GeneratorSpec(5, 3, 3))
    assert rep.failures == []
    assert rep.attempted == sum(rep.methods.values())


def test_chain_detects_a_planted_violation():
    n, k = 4, 2
    inside = {}
    for i in range(k + 1):
        s = GeneratorSpec(n, k, i)
        pts, d = spec_grid(s)
        inside[s] = solver_for(s).classify(pts, d)
    clean = check_chain(n, k, F(1, 4), inside)
    assert clean["violations"] == []
    assert set(clean["witnesses"]) == {"(4,2,0)", "(4,2,1)"}
    # drop a servable point from the larger region
    top = GeneratorSpec(n, k, 1)
    broken = dict(inside)
    broken[top] = inside[top].copy()
    broken[top][0] = False
    assert check_chain(n, k, F(1, 4), broken)["violations"] == [{"spec": "(4,2,0)", "lambda": ["0/1", "0/1"]}]


def test_chain_grid_alignment():
    lower, upper = GeneratorSpec(5, 3, 1), GeneratorSpec(5, 3, 2)
    small, d = spec_grid(lower)
    big, _ = spec_grid(upper)
    rows = {tuple(p): t for t, p in enumerate(big.tolist())}
    from srrmds.verify import _regrid

    axis_len = round(len(big) ** (1 / 3))
    assert _regrid(small, 1, axis_len).tolist() == [rows[tuple(p)] for p in small.tolist()]


def test_uniqueness_report():
    rep = check_uniqueness(GeneratorSpec(3, 3, 3))
    assert rep.unique and rep.probes > 0
    with pytest.raises(InvalidArgument):
        check_uniqueness(GeneratorSpec(5, 3, 3))


def test_config_validation():
    with pytest.raises(InvalidArgument):
        VerifyConfig(n_max=11)
    with pytest.raises(InvalidArgument):
        VerifyConfig(k_max=5)
    with pytest.raises(InvalidArgument):
        VerifyConfig(checks=("oracle", "typo"))


def test_small_summary():
    summary = run_verify(VerifyConfig(k_max=3, n_max=5, n_random=20))
    assert summary["violations"] == 0
    assert summary["specs"] == 4 * 3 + 3 * 4
    assert summary["chain"]["degenerate"] == ["(2,2,0)", "(3,3,0)"]
    assert summary["uniqueness"]["instances"] > 0
