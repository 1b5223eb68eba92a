import json

import pytest
from hypothesis import given, settings, strategies as st

from swaplab.config import (
    ConfigError,
    RunConfig,
    parse_config,
    serialize_config,
    to_scenario_config,
)


class TestDefaults:
    def test_empty_object_fills_defaults(self):
        config = parse_config("{}")
        assert config.scenario == "prince-pauper"
        assert config.M == 8
        assert config.delta == 0.25
        assert config.g == 1.0
        assert config.T == 1.0
        assert config.hbar == 1.0
        assert config.tol == 1e-10
        assert config.seed == 0
        assert config.sample_times == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert config.phase_insensitive is False

    def test_sample_times_derived_from_duration(self):
        config = parse_config('{"T": 2.0, "delta": 0.5}')
        assert config.sample_times == (0.0, 0.5, 1.0, 1.5, 2.0)


class TestValidation:
    def test_invalid_json(self):
        with pytest.raises(ConfigError, match="JSON"):
            parse_config("{not json")

    def test_top_level_must_be_object(self):
        with pytest.raises(ConfigError, match="object"):
            parse_config("[1, 2]")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="mass"):
            parse_config('{"mass": 3}')

    def test_m_guard_message(self):
        with pytest.raises(ConfigError, match="M must be >= 1"):
            parse_config('{"M": 0}')

    def test_type_mismatch_names_field(self):
        with pytest.raises(ConfigError, match="g"):
            parse_config('{"g": "strong"}')

    def test_bool_is_not_an_integer(self):
        with pytest.raises(ConfigError, match="M"):
            parse_config('{"M": true}')

    def test_wraparound_guard_arithmetic(self):
        with pytest.raises(ConfigError, match="wraparound"):
            parse_config('{"g": 1, "T": 1, "M": 2, "delta": 0.25}')

    def test_unknown_scenario(self):
        with pytest.raises(ConfigError, match="scenario"):
            parse_config('{"scenario": "time-travel"}')

    def test_sample_times_window(self):
        with pytest.raises(ConfigError, match="sample_times"):
            parse_config('{"sample_times": [0.0, 5.0]}')

    def test_lambda_guard_for_scaling_scenarios(self):
        with pytest.raises(ConfigError, match="lambda1"):
            parse_config('{"scenario": "classical-level", "lambda1": 0}')

    def test_negative_ratio_rejected_for_scaling(self):
        with pytest.raises(ConfigError, match="ratio"):
            parse_config('{"scenario": "certify-lemma2", "lambda1": 1.0, "lambda2": -2.0}')

    def test_k_range(self):
        with pytest.raises(ConfigError, match="k"):
            parse_config('{"scenario": "multiworld", "k": 5}')

    def test_dimension_cap_for_multiworld(self):
        # k = 3 with a huge grid exceeds the dense cap
        with pytest.raises(ConfigError, match="cap"):
            parse_config('{"scenario": "multiworld", "k": 3, "M": 40, "delta": 0.25, "g": 1, "T": 1}')


class TestRoundTrip:
    def test_serialize_then_parse_is_identity(self):
        config = parse_config('{"M": 6, "delta": 0.5, "g": 0.8, "seed": 3}')
        assert parse_config(serialize_config(config)) == config

    def test_serialized_form_is_valid_json(self):
        doc = json.loads(serialize_config(RunConfig()))
        assert doc["scenario"] == "prince-pauper"
        assert doc["M"] == 8

    @settings(max_examples=25, deadline=None)
    @given(
        m=st.integers(4, 12),
        delta=st.sampled_from([0.25, 0.5, 1.0]),
        g=st.sampled_from([0.0, 0.5, 1.0]),
        seed=st.integers(0, 100),
        phase=st.booleans(),
    )
    def test_round_trip_property(self, m, delta, g, seed, phase):
        raw = {"M": m, "delta": delta, "g": g, "seed": seed, "phase_insensitive": phase}
        try:
            config = parse_config(json.dumps(raw))
        except ConfigError:
            return  # guard-rejected inputs are out of scope here
        assert parse_config(serialize_config(config)) == config


class TestScenarioMapping:
    def test_fields_map_through(self):
        config = parse_config('{"M": 6, "delta": 0.5, "g": 0.5, "T": 1.0, "k": 2, "tol": 1e-9}')
        scenario = to_scenario_config(config)
        assert scenario.pointer_half_width == 6
        assert scenario.pointer_spacing == 0.5
        assert scenario.coupling == 0.5
        assert scenario.qubit_count == 2
        assert scenario.tolerance == 1e-9

    def test_lambda_fields_map_through(self):
        config = parse_config('{"scenario": "classical-level", "lambda1": 1.0, "lambda2": 3.0}')
        scenario = to_scenario_config(config)
        assert scenario.eigenvalue_from == 1.0
        assert scenario.eigenvalue_to == 3.0
