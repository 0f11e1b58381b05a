#!/usr/bin/env python3
"""
File Format Tests
"""

import json

import pytest

from errors import ParseError
from formats import (
    InstanceFile,
    MatrixFile,
    ResultFile,
    dump_model,
    grid,
    load_model,
    parse_model,
)
from ratmat import Mat, elementary


def test_instance_file_parses_rationals():
    text = json.dumps({"format": 1, "n": 2, "S": [["1/2", "0"], ["0", "-3"]], "N": [["0", "4/6"], ["0", "0"]]})
    s, n_mat = parse_model(InstanceFile, text).matrices()
    assert s == Mat([["1/2", 0], [0, -3]])
    assert n_mat == elementary(2, 0, 1) * "2/3"


def test_instance_file_keeps_metadata():
    s = Mat([[1, 0], [0, 2]])
    instance = InstanceFile.from_matrices(s, elementary(2, 0, 1), {"seed": 7, "generator": "numpy-pcg64"})
    again = parse_model(InstanceFile, dump_model(instance))
    assert again == instance
    assert again.metadata["seed"] == 7


def test_grid_uses_reduced_strings():
    assert grid(Mat([["2/4", 3], [0, "-6/3"]])) == [["1/2", "3"], ["0", "-2"]]


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 2, "S": [["1", "0"], ["0", "1"]], "N": [["0", "1/0"], ["0", "0"]]},
        {"n": 2, "S": [["1", "0"], ["0", "1"]], "N": [["0", "0.5"], ["0", "0"]]},
        {"n": 2, "S": [["1", "0"]], "N": [["0", "0"], ["0", "0"]]},
        {"n": 2, "S": [[1, 0], [0, 1]], "N": [["0", "0"], ["0", "0"]]},
        {"format": 2, "n": 1, "S": [["1"]], "N": [["0"]]},
        {"n": 0, "S": [], "N": []},
    ],
)
def test_malformed_instances_are_parse_errors(payload):
    with pytest.raises(ParseError):
        parse_model(InstanceFile, json.dumps(payload))


def test_invalid_json_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_model(InstanceFile, "{not json")


def test_result_file_round_trip(tmp_path):
    result = ResultFile(
        n=2,
        S_prime=[["0", "2"], ["0", "1"]],
        N_prime=[["0", "0"], ["0", "0"]],
        loops=1,
        gamma_trace=[[1], [0]],
        checks={"outputs_commute": True},
    )
    path = tmp_path / "result.json"
    path.write_text(dump_model(result), encoding="utf-8")
    loaded = load_model(ResultFile, str(path))
    assert loaded == result
    assert loaded.matrices()[0] == Mat([[0, 2], [0, 1]])


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_model(ResultFile, str(tmp_path / "absent.json"))


def test_matrix_file():
    m = parse_model(MatrixFile, json.dumps({"n": 1, "A": [["-5/2"]]})).matrix()
    assert m == Mat([["-5/2"]])
