import json
import math

import numpy as np
import pytest

from fqc.errors import InvalidInputError
from fqc.geometry import PointSet
from fqc.interchange import (dumps, load_measure, load_pointset, measure_csv, pointset_csv, read_csv,
                             read_json, to_jsonable, write_json)
from fqc.measures import DiscreteMeasure, FrequencyGrid, TransformTrace
from fqc.plots import intensity_map, stem_plot, write_svg


def test_jsonable_values():
    value = {"a": np.float64(0.1), "b": np.arange(2), "c": 1 + 2j, "d": math.inf, "e": np.bool_(True)}
    assert to_jsonable(value) == {"a": 0.1, "b": [0, 1], "c": [1.0, 2.0], "d": "inf", "e": True}


def test_measure_json_is_lossless(tmp_path):
    mu = DiscreteMeasure.from_atoms([0.1, 1 / 3, math.sqrt(2)], [1 / 7, 2j / 3, -0.3], [[-1, 2]])
    path = write_json(str(tmp_path / "mu.json"), mu)
    back = load_measure(path)
    assert np.array_equal(back.points, mu.points)
    assert np.array_equal(back.weights, mu.weights)


def test_point_set_file_loads_as_unit_comb(tmp_path):
    ps = PointSet.from_points([0.0, 1.5, 3.0], [[-1, 4]])
    path = write_json(str(tmp_path / "ps.json"), ps)
    comb = load_measure(path)
    assert comb.weights.tolist() == [1, 1, 1]
    assert load_pointset(path).size == 3


def test_measure_file_loads_as_its_support(tmp_path):
    mu = DiscreteMeasure.from_atoms([0.0, 2.0], [1.0, -1.0], [[-1, 3]])
    path = write_json(str(tmp_path / "mu.json"), mu)
    assert load_pointset(path).points[:, 0].tolist() == [0.0, 2.0]


def test_csv_round_trip(tmp_path):
    ps = PointSet.from_points([[1 / 3, 0.1], [2 / 7, -5.0]], [[-1, 1], [-6, 1]])
    rows = read_csv(pointset_csv(str(tmp_path / "ps.csv"), ps))
    assert np.array_equal(np.asarray(rows), ps.points)
    mu = DiscreteMeasure.from_atoms([1 / 3], [1 / 7 + 1j / 9], [[0, 1]])
    assert read_csv(measure_csv(str(tmp_path / "mu.csv"), mu)) == [[1 / 3, 1 / 7, 1 / 9]]


def test_missing_or_invalid_files(tmp_path):
    with pytest.raises(InvalidInputError):
        read_json(str(tmp_path / "nothing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    with pytest.raises(InvalidInputError):
        read_json(str(bad))
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"kind": "unknown"}))
    with pytest.raises(InvalidInputError):
        load_pointset(str(other))


def test_dumps_is_sorted():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')


def test_svg_plots(tmp_path):
    svg = stem_plot([-1.0, 0.0, 1.0], [0.5, 1.0, 0.5], log_scale=True)
    assert svg.count("<line") >= 3
    path = write_svg(str(tmp_path / "peaks.svg"), svg)
    with open(path) as f:
        assert f.read().rstrip().endswith("</svg>")
    grid = FrequencyGrid([0.0, 0.0], 1.0, 5)
    trace = TransformTrace(grid, np.arange(25, dtype=complex))
    assert "<rect" in intensity_map(trace)
