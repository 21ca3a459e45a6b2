# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
import json

import pandas as pd
import pytest

from cohomology import classify, sweep
from cohomology.sweep import SweepBounds
from common.config import SweepConfig


class TestSlopes:

    def test_bound_one(self):
        assert sweep.primitive_slopes(1) == [(0, 1), (1, -1), (1, 0), (1, 1)]

    def test_bound_two(self):
        slopes = sweep.primitive_slopes(2)
        assert len(slopes) == 8
        assert (2, 1) in slopes
        assert (2, 2) not in slopes
        assert (-1, 1) not in slopes


class TestEnumerate:

    def test_n7c_count(self):
        bounds = SweepBounds(max_q=3, max_slope=1, max_n=2)
        assert len(sweep.enumerate_diagrams("N7C", bounds)) == 24

    def test_n7b_count(self):
        bounds = SweepBounds(max_n=1, max_q=3)
        found = sweep.enumerate_diagrams("N7B", bounds)
        assert len(found) == 20
        assert all(d.n_minus == 4 for d in found)

    def test_n7e_normal_circle(self):
        bounds = SweepBounds(max_slope=1, max_order=1, max_mn=1)
        found = sweep.enumerate_diagrams("N7E", bounds)
        assert found
        assert all(d.m * d.nu - d.n * d.mu == 1 for d in found)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="no sweep for family N7D"):
            sweep.enumerate_diagrams("N7D", SweepBounds())

    def test_from_config(self):
        config = SweepConfig.model_validate({"max-slope": 2, "max-q": 4})
        bounds = SweepBounds.from_config(config)
        assert bounds.max_slope == 2
        assert bounds.max_q == 4
        assert bounds.max_order == 4


class TestRunSweep:

    def test_n7c_table(self):
        df = sweep.run_sweep("N7C", SweepBounds(max_q=3, max_slope=1,
                                                max_n=2))
        assert len(df) == 24
        assert list(df.columns[:3]) == ["p", "q", "n"]
        row = df[(df["p"] == 1) & (df["q"] == 3) & (df["n"] == 2)].iloc[0]
        assert row["H4"] == "Z/9"
        assert row["H5"] == "Z"
        assert row["type"] == "type-2"
        assert sweep.sweep_failures(df) == 0

    def test_sorted(self):
        df = sweep.run_sweep("N7C", SweepBounds(max_q=2, max_slope=1,
                                                max_n=1))
        keys = list(zip(df["p"], df["q"], df["n"]))
        assert keys == sorted(keys)

    def test_n7a_checked(self):
        df = sweep.run_sweep("N7A", SweepBounds(max_slope=1, max_order=2),
                             check=True)
        assert len(df) == 52
        assert sweep.sweep_failures(df) == 0
        assert df["error"].isna().all()

    def test_n7a_slope_two_checked(self):
        df = sweep.run_sweep("N7A", SweepBounds(max_slope=2, max_order=2),
                             check=True)
        assert sweep.sweep_failures(df) == 0
        # (2, -1) with b- = 2 puts H- on (0, 1) too
        assert df[(df["p_minus"] == 2) & (df["q_minus"] == -1) &
                  (df["b_minus"] == 2) & (df["p_plus"] == 0) &
                  (df["b_plus"] == 1)].empty

    @pytest.mark.parametrize("family, bounds", [
        ("N7A", SweepBounds(max_slope=2, max_order=2)),
        ("N7B", SweepBounds(max_n=2, max_q=9)),
        ("N7C", SweepBounds(max_q=5, max_slope=2, max_n=3)),
        ("N7E", SweepBounds(max_slope=1, max_order=2, max_mn=2)),
        ("N7H", SweepBounds(max_slope=2, max_order=2)),
    ])
    def test_no_classification_warnings(self, family, bounds):
        df = sweep.run_sweep(family, bounds)
        assert not df.empty
        assert df["warnings"].isna().all(), \
            df[df["warnings"].notna()].to_string()
        assert (df["type"] != classify.UNCLASSIFIED).all()

    def test_open_extension_column(self):
        df = sweep.run_sweep("N7B", SweepBounds(max_n=1, max_q=3))
        row = df[(df["p"] == 1) & (df["q"] == 3) & (df["n_plus"] == 1)]
        assert row.iloc[0]["H4"] == "0 -> Z/3 -> H4 -> Z/3 -> 0 (open)"

    def test_workers(self):
        bounds = SweepBounds(max_slope=1, max_order=2)
        single = sweep.run_sweep("N7H", bounds, workers=1)
        pooled = sweep.run_sweep("N7H", bounds, workers=2)
        pd.testing.assert_frame_equal(single, pooled)

    def test_failures(self):
        df = pd.DataFrame([
            {"p": 1, "error": None, "check": "ok"},
            {"p": 2, "error": "boom", "check": None},
            {"p": 3, "error": None, "check": "mismatch"},
        ])
        assert sweep.sweep_failures(df) == 2


class TestRender:

    def test_json(self):
        df = sweep.run_sweep("N7C", SweepBounds(max_q=1, max_slope=1,
                                                max_n=1))
        records = json.loads(sweep.render_sweep(df, "json"))
        assert len(records) == len(df)
        assert records[0]["H4"] == "0"

    def test_text(self):
        df = sweep.run_sweep("N7C", SweepBounds(max_q=1, max_slope=1,
                                                max_n=1))
        text = sweep.render_sweep(df)
        assert text.splitlines()[0].split()[:3] == ["p", "q", "n"]

    def test_empty(self):
        assert sweep.render_sweep(pd.DataFrame()) == "no valid diagrams"
        assert sweep.sweep_failures(pd.DataFrame()) == 0
