"""Scenario files: strict two-way key checking and semantic validation.

Every structural defect must be a parse error naming the offending field by
dotted path; cross-field requirements are validation errors.  The round
trip test pins the documented defaults (phi, gradient mode, task knobs).
"""

import json
from fractions import Fraction

import pytest

from scalefield.errors import ScenarioParseError, ScenarioValidationError
from scalefield.fields import (
    CombinationField,
    ConstantField,
    GaussianField,
    LinearField,
    TabulatedField,
)
from scalefield.scenario import (
    parse_scenario,
    parse_scenario_text,
    validate_scenario,
)


def base():
    return {
        "manifold": {"dimension": 3,
                     "bounds": [[-2.0, 2.0] for _ in range(3)], "nodes": 9},
        "fields": {"theta": {"family": "constant", "constant": 0.0}},
        "tasks": [{"type": "pathlen",
                   "path": {"kind": "segment",
                            "start": [0.0, 0.0, 0.0],
                            "end": [1.0, 0.0, 0.0]}}],
    }


def parse(doc):
    return parse_scenario_text(json.dumps(doc))


def fail_with(doc, fragment):
    with pytest.raises(ScenarioParseError, match=fragment):
        parse(doc)


# -- structural parsing --------------------------------------------------------


def test_minimal_scenario_parses_with_defaults():
    sc = parse(base())
    assert sc.manifold.dimension == 3
    assert sc.manifold.nodes == 9 and sc.manifold.spacing is None
    assert sc.manifold.signature == "euclidean"
    assert sc.fields.phi == ConstantField(0.0)
    assert sc.fields.gradient_mode == "analytic"
    assert sc.fields.gradient_step is None
    assert sc.gauge is None and sc.seed is None and sc.output is None
    task = sc.tasks[0]
    assert task.params["steps"] == 1000
    assert task.params["x_ref"] is None


def test_bad_json_reports_the_source_line():
    with pytest.raises(ScenarioParseError, match="line 2"):
        parse_scenario_text('{\n "manifold": }')


def test_unknown_key_is_named_by_dotted_path():
    doc = base()
    doc["manifold"]["extra"] = 1
    fail_with(doc, r"scenario\.manifold\.extra: unknown key")


def test_unknown_top_level_key():
    doc = base()
    doc["comment"] = "hi"
    fail_with(doc, r"scenario\.comment: unknown key")


def test_unknown_field_family_lists_the_choices():
    doc = base()
    doc["fields"]["theta"] = {"family": "quadratic"}
    fail_with(doc, r"scenario\.fields\.theta\.family.*quadratic")


def test_unknown_task_type_is_an_error():
    doc = base()
    doc["tasks"][0]["type"] = "orbit"
    fail_with(doc, r"scenario\.tasks\[0\]\.type")


def test_tasks_must_be_nonempty():
    doc = base()
    doc["tasks"] = []
    fail_with(doc, "at least one task")


def test_wrong_node_types_are_refused():
    doc = base()
    doc["manifold"]["nodes"] = 8.5
    fail_with(doc, r"scenario\.manifold\.nodes.*integer")
    doc["manifold"]["nodes"] = True
    fail_with(doc, r"scenario\.manifold\.nodes.*integer")
    doc = base()
    doc["manifold"]["bounds"][1][0] = "low"
    fail_with(doc, r"scenario\.manifold\.bounds\[1\]\[0\].*number")


def test_dimension_must_be_3_or_4():
    doc = base()
    doc["manifold"]["dimension"] = 5
    fail_with(doc, r"scenario\.manifold\.dimension")


def test_bounds_count_must_match_dimension():
    doc = base()
    doc["manifold"]["bounds"] = [[-2.0, 2.0]] * 2
    fail_with(doc, r"scenario\.manifold\.bounds.*3")


def test_spacing_and_nodes_are_mutually_exclusive():
    doc = base()
    doc["manifold"]["spacing"] = 0.5
    fail_with(doc, "exactly one of")
    del doc["manifold"]["spacing"]
    del doc["manifold"]["nodes"]
    fail_with(doc, "exactly one of")


def test_nodes_floor():
    doc = base()
    doc["manifold"]["nodes"] = 1
    fail_with(doc, "at least 2 nodes")


def test_signature_is_fixed_by_the_dimension():
    doc = base()
    doc["manifold"]["signature"] = "minkowski"
    fail_with(doc, r"scenario\.manifold\.signature.*euclidean")
    doc["manifold"]["signature"] = "euclidean"
    assert parse(doc).manifold.signature == "euclidean"


def test_linear_coefficients_length_is_checked():
    doc = base()
    doc["fields"]["theta"] = {"family": "linear", "coefficients": [1.0, 2.0]}
    fail_with(doc, r"theta\.coefficients.*3 numbers")


def test_gaussian_axes_must_be_in_range():
    doc = base()
    doc["fields"]["theta"] = {"family": "gaussian", "amplitude": 1.0,
                              "center": [0.0, 0.0, 0.0], "width": 1.0,
                              "axes": [0, 3]}
    fail_with(doc, r"theta\.axes\[1\].*outside")


def test_combination_terms_parse_recursively():
    doc = base()
    doc["fields"]["theta"] = {
        "family": "combination",
        "terms": [
            {"weight": 2.0, "spec": {"family": "constant", "constant": 1.0}},
            {"weight": -1.0, "spec": {"family": "linear",
                                      "coefficients": [0.0, 1.0, 0.0]}},
        ],
    }
    theta = parse(doc).fields.theta
    assert isinstance(theta, CombinationField)
    assert theta.terms[0] == (2.0, ConstantField(1.0))
    assert isinstance(theta.terms[1][1], LinearField)


def test_exact_values_accept_integers_and_fraction_strings():
    doc = base()
    doc["seed"] = 1
    doc["tasks"] = [{"type": "axioms", "kind": "rational",
                     "t": "3/2", "s": 2}]
    task = parse(doc).tasks[0]
    assert task.params["t"] == Fraction(3, 2)
    assert task.params["s"] == Fraction(2)
    assert task.params["samples"] == 100


def test_floats_are_refused_where_exactness_matters():
    doc = base()
    doc["seed"] = 1
    doc["tasks"] = [{"type": "axioms", "kind": "rational",
                     "t": 1.5, "s": 2}]
    fail_with(doc, "floats would lose exactness")


def test_malformed_fraction_strings_are_refused():
    doc = base()
    doc["seed"] = 1
    doc["tasks"] = [{"type": "axioms", "kind": "rational",
                     "t": "3/2/5", "s": 2}]
    fail_with(doc, r"tasks\[0\]\.t.*not an exact number")


def test_polyline_needs_two_vertices():
    doc = base()
    doc["tasks"][0]["path"] = {"kind": "polyline",
                               "vertices": [[0.0, 0.0, 0.0]]}
    fail_with(doc, "two vertices")


def test_complex_payload_is_a_re_im_pair():
    doc = base()
    doc["tasks"] = [{"type": "compare",
                     "reference": {"location": [0.0, 0.0, 0.0],
                                   "kind": "complex", "payload": [1, 2, 3]},
                     "target": {"location": [1.0, 0.0, 0.0],
                                "kind": "complex", "payload": [1, 0]}}]
    fail_with(doc, r"reference\.payload.*\[re, im\]")


def test_missing_file_is_a_parse_error():
    with pytest.raises(ScenarioParseError, match="cannot read"):
        parse_scenario("/nonexistent/scenario.json")


# -- semantic validation -------------------------------------------------------


def ok(doc):
    return validate_scenario(parse(doc))


def invalid(doc, fragment):
    with pytest.raises(ScenarioValidationError, match=fragment):
        validate_scenario(parse(doc))


def test_randomized_tasks_require_a_seed():
    doc = base()
    doc["tasks"] = [{"type": "axioms", "kind": "rational", "t": "3/2",
                     "s": 2}]
    invalid(doc, "seed")
    doc["seed"] = 11
    assert ok(doc).scenario.seed == 11


def test_gauge_check_needs_a_gauge_block_with_a_transform():
    doc = base()
    doc["tasks"] = [{"type": "gauge-check"}]
    invalid(doc, "gauge-check needs a gauge block")
    doc["gauge"] = {"g_r": 1.0, "g_i": 1.0, "h_i": 0.5,
                    "photon": [{"family": "constant", "constant": 0.0}] * 3}
    invalid(doc, "gauge-check needs a gauge block")


def test_alpha_and_gamma_come_as_a_pair():
    doc = base()
    doc["gauge"] = {"g_r": 1.0, "g_i": 1.0, "h_i": 0.5,
                    "photon": [{"family": "constant", "constant": 0.0}] * 3,
                    "alpha": {"family": "constant", "constant": 0.2}}
    invalid(doc, "pair")


def test_photon_needs_one_spec_per_axis():
    doc = base()
    doc["gauge"] = {"g_r": 1.0, "g_i": 1.0, "h_i": 0.5,
                    "photon": [{"family": "constant", "constant": 0.0}] * 2}
    fail_with(doc, r"gauge\.photon.*3 component")


def test_wavepacket_on_a_4d_grid_needs_a_time_slice():
    doc = base()
    doc["manifold"] = {"dimension": 4, "bounds": [[-2.0, 2.0]] * 4,
                       "nodes": 9}
    doc["fields"]["theta"] = {"family": "constant", "constant": 0.0}
    doc["tasks"] = [{"type": "wavepacket", "center": [0.0, 0.0, 0.0],
                     "width": 0.5, "x0": [0.0, 0.0, 0.0, 0.0]}]
    invalid(doc, r"time_slice.*required")
    doc["tasks"][0]["time_slice"] = 0.0
    ok(doc)


def test_tabulated_values_must_match_the_grid_shape():
    doc = base()
    doc["manifold"]["nodes"] = 3
    grid = [[[0.0] * 3] * 3] * 2
    doc["fields"]["theta"] = {"family": "tabulated", "values": grid}
    invalid(doc, "shape")


def test_tabulated_values_of_the_right_shape_build():
    doc = base()
    doc["manifold"]["nodes"] = 3
    doc["fields"]["theta"] = {"family": "tabulated",
                              "values": [[[0.0] * 3] * 3] * 3}
    doc["fields"]["gradient_mode"] = "central"
    rt = ok(doc)
    assert isinstance(rt.field.theta, TabulatedField)


def test_manifold_construction_errors_become_validation_errors():
    doc = base()
    doc["manifold"]["bounds"][0] = [2.0, -2.0]
    invalid(doc, r"scenario\.manifold")


def test_stride_is_a_natural_only_knob():
    doc = base()
    doc["seed"] = 1
    doc["tasks"] = [{"type": "axioms", "kind": "rational", "t": "3/2",
                     "s": 2, "stride": 2}]
    invalid(doc, "stride")
    doc["tasks"][0]["kind"] = "natural"
    doc["tasks"][0]["t"] = 3
    doc["tasks"][0]["s"] = 2
    ok(doc)


def test_axiom_samples_floor():
    doc = base()
    doc["seed"] = 1
    doc["tasks"] = [{"type": "axioms", "kind": "rational", "t": "3/2",
                     "s": 2, "samples": 2}]
    invalid(doc, "at least 3")


def test_gaussian_theta_with_axes_survives_validation():
    doc = base()
    doc["fields"]["theta"] = {"family": "gaussian", "amplitude": 0.5,
                              "center": [0.0, 0.0, 0.0], "width": 0.8,
                              "axes": [1, 2]}
    rt = ok(doc)
    assert isinstance(rt.field.theta, GaussianField)
    assert rt.field.theta.axes == (1, 2)
