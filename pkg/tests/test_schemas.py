"""Input validation and ingestion."""

from __future__ import annotations

import json

import pytest

from defring.errors import InputValidationError
from defring.schemas import ingest, parse_input


def base_spec() -> dict:
    return {
        "field": {"p": 5, "f": 1},
        "local_field": {"p": 5, "e": 1, "f": 1, "mu_order": 1},
        "generators": [
            {"matrix": [[1, 1], [0, 1]], "omega": 1},
            {"matrix": [[2, 0], [0, 1]], "omega": 2},
        ],
    }


class TestParse:
    def test_well_formed(self):
        spec = parse_input(base_spec())
        rep = spec.build_rep()
        assert rep.d == 2
        assert rep.omegas == (1, 2)

    def test_omega_zero_names_field(self):
        raw = base_spec()
        raw["generators"][0]["omega"] = 0
        with pytest.raises(InputValidationError, match=r"generators\[0\].omega"):
            parse_input(raw)

    def test_singular_matrix_names_field(self):
        raw = base_spec()
        raw["generators"][1]["matrix"] = [[1, 2], [2, 4]]
        with pytest.raises(InputValidationError, match=r"generators\[1\].matrix"):
            parse_input(raw)

    def test_ragged_matrix_rejected(self):
        raw = base_spec()
        raw["generators"][0]["matrix"] = [[1, 1, 0], [0, 1]]
        with pytest.raises(InputValidationError):
            parse_input(raw)

    def test_p_mismatch(self):
        raw = base_spec()
        raw["local_field"]["p"] = 7
        with pytest.raises(InputValidationError, match="local_field.p"):
            parse_input(raw)

    def test_p2_omega_must_be_one(self):
        raw = {
            "field": {"p": 2},
            "local_field": {"p": 2, "mu_order": 2},
            "generators": [{"matrix": [[1, 1], [0, 1]], "omega": 3}],
        }
        with pytest.raises(InputValidationError, match="omega"):
            parse_input(raw)

    def test_missing_section_reported_with_path(self):
        with pytest.raises(InputValidationError, match="local_field"):
            parse_input({"field": {"p": 5},
                         "generators": [{"matrix": [[1]]}]})


class TestIngest:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "in.json"
        path.write_text(json.dumps(base_spec()))
        spec = ingest(str(path))
        assert spec.field.p == 5

    def test_missing_file(self):
        with pytest.raises(InputValidationError, match="not found"):
            ingest("/nonexistent/input.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(InputValidationError, match="JSON"):
            ingest(str(path))
