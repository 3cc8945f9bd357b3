# Copyright 2026 The RRCE Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import json

import numpy as np
import pytest

import rrce

scipy_optimize = pytest.importorskip("scipy.optimize")


def joint_actions(n, m):
    return list(itertools.product(range(m), repeat=n))


def scipy_optimal_ce(game, delta):
    """Fairness-optimal CE via HiGHS on an LP assembled from pure costs."""
    n, m = game.num_players, game.num_actions
    joints = joint_actions(n, m)
    k = len(joints)
    cost = np.array([[game.pure_cost(i, a) for a in joints] for i in range(n)])
    rows, rhs = [], []
    for i in range(n):
        for rec in range(m):
            for dev in range(m):
                if rec == dev:
                    continue
                row = np.zeros(k + n)
                for col, a in enumerate(joints):
                    if a[i] != rec:
                        continue
                    b = list(a)
                    b[i] = dev
                    row[col] = cost[i, col] - game.pure_cost(i, b)
                rows.append(row)
                rhs.append(0.0)
    for i in range(n):
        row = np.zeros(k + n)
        row[:k] = cost[i]
        row[k + i] = -1.0
        rows.append(row)
        rhs.append(-delta)
        for j in range(n):
            row = np.zeros(k + n)
            row[:k] = cost[j]
            row[k + i] = -1.0
            rows.append(row)
            rhs.append(0.0)
    c = np.concatenate([np.zeros(k), np.ones(n)])
    eq = np.concatenate([np.ones(k), np.zeros(n)])[None, :]
    bounds = [(0, None)] * k + [(None, None)] * n
    res = scipy_optimize.linprog(c, A_ub=np.array(rows), b_ub=np.array(rhs), A_eq=eq,
                                 b_eq=[1.0], bounds=bounds, method="highs")
    assert res.status == 0
    return res.fun - n * delta


def test_chicken_game_values():
    game = rrce.build_queue_game(2, 1)
    assert game.joint_action_count == 4
    assert np.allclose(game.cost(0, 1), [[500, 0], [5, 5]])
    nash = rrce.enumerate_pure_nash(game)
    assert [p.is_pure for p in nash] == [True, True]
    ce = rrce.solve_ce(game)
    rr = rrce.solve_rrce(game, nash)
    assert ce["J"] == pytest.approx(5.0, abs=1e-9)
    assert rr["J"] == pytest.approx(5.0, abs=1e-9)
    assert sum(rr["gamma"]) == pytest.approx(1.0)
    assert rrce.verify_ce(game, ce["z"]) <= 1e-9
    p = 5.0 / 500.0
    assert rrce.kkt_residual(game, [np.array([p, 1 - p])] * 2) <= 1e-9


@pytest.mark.parametrize("n,m,seed", [(2, 2, 0), (2, 3, 1), (3, 2, 2), (3, 3, 3), (4, 2, 4)])
def test_ce_matches_scipy(n, m, seed):
    rng = np.random.default_rng(seed)
    pairs = [(i, j, rng.uniform(0, 10, (m, m))) for i in range(n) for j in range(n) if i != j]
    game = rrce.Game(n, m, pairs)
    for delta in (0.0, 2.0, 50.0):
        got = rrce.solve_ce(game, "fairness", delta)
        assert got["J"] == pytest.approx(scipy_optimal_ce(game, delta), abs=1e-7)
        assert got["violation"] <= 1e-8
        assert rrce.evaluate_objective(got["costs"], "fairness", delta) == pytest.approx(got["J"])


def test_rrce_is_a_ce_and_no_better_than_ce():
    rates = rrce.sample_rates(3, seed=11)
    game = rrce.build_queue_game(3, 2, rates)
    nash = rrce.enumerate_pure_nash(game) + rrce.find_nash(game, seed=3, restarts=5)
    rr = rrce.solve_rrce(game, nash)
    ce = rrce.solve_ce(game)
    assert rr["J"] >= ce["J"] - 1e-7
    assert rr["violation"] <= 1e-8
    assert rrce.mixture_ce_violation(game, nash, rr["gamma"]) <= 1e-8


def test_json_round_trip_and_metrics():
    game = rrce.build_queue_game(3, 1, [1.0, 1.5, 0.7])
    back = rrce.Game.from_json(game.to_json())
    assert back == game
    assert back.fingerprint() == game.fingerprint()
    assert json.loads(game.to_json())["n"] == 3
    assert rrce.problem_size_report(7, 8) == (63, 4195649)
    assert rrce.avg_cost([0.0, 5.0]) == 2.5
    assert rrce.gini([0.0, 0.0, 3.0]) == pytest.approx(2.0 / 3.0)
    assert rrce.gini([4.0, 4.0]) == 0.0


def test_errors():
    big = rrce.Game.zero(7, 8)
    with pytest.raises(rrce.CapExceeded):
        rrce.solve_ce(big)
    with pytest.raises(ValueError):
        rrce.solve_ce(rrce.build_queue_game(2, 1), "maximin")
    with pytest.raises(ValueError):
        rrce.Game.from_json("{}")
    assert issubclass(rrce.CapExceeded, rrce.Error)
