import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sensbound.inference import joint_prob
from sensbound.model import (CovariationError, NetworkError, NetworkParseError, ParameterRef,
                             covary, dump_network, enumerate_parameters, format_parameter,
                             load_network, make_query, parse_assignments, parse_parameter)


def doc(variables, cpts):
    return json.dumps({"variables": variables, "cpts": cpts})


def test_load_n1(n1):
    assert n1.names == ("A", "B")
    np.testing.assert_array_equal(n1.cpt("A").rows, [[0.4, 0.6]])
    np.testing.assert_array_equal(n1.cpt("B").rows, [[0.9, 0.1], [0.2, 0.8]])
    assert n1.cpt("B").parents == ("A",)


def test_round_trip(n1):
    again = load_network(dump_network(n1))
    assert again.to_dict() == n1.to_dict()


def test_row_sum_error_names_row():
    text = doc([{"name": "A", "states": ["a", "na"]}],
               [{"child": "A", "parents": [], "table": [[0.4, 0.5]]}])
    with pytest.raises(NetworkError, match=r"CPT A, row 0"):
        load_network(text)


def test_cycle_rejected():
    text = doc([{"name": "A", "states": ["a", "na"]}, {"name": "B", "states": ["b", "nb"]}],
               [{"child": "A", "parents": ["B"], "table": [[0.5, 0.5], [0.5, 0.5]]},
                {"child": "B", "parents": ["A"], "table": [[0.5, 0.5], [0.5, 0.5]]}])
    with pytest.raises(NetworkError, match="cycle"):
        load_network(text)


def test_parse_error_has_location():
    with pytest.raises(NetworkParseError) as info:
        load_network('{"variables": [\n  {"name": "A",, }]}')
    assert info.value.line == 2


@pytest.mark.parametrize("table", [[[0.5, 0.5]], [[0.5, 0.5], [0.5, 0.5], [0.5, 0.5]]])
def test_wrong_row_count(table):
    text = doc([{"name": "A", "states": ["a", "na"]}, {"name": "B", "states": ["b", "nb"]}],
               [{"child": "A", "parents": [], "table": [[0.5, 0.5]]},
                {"child": "B", "parents": ["A"], "table": table}])
    with pytest.raises(NetworkError, match="CPT B"):
        load_network(text)


def test_near_normalized_rows_renormalized():
    text = doc([{"name": "A", "states": ["a", "na"]}],
               [{"child": "A", "parents": [], "table": [[0.4000004, 0.6]]}])
    net = load_network(text)
    assert net.cpt("A").rows.sum() == pytest.approx(1.0, abs=1e-15)


def test_enumerate_counts(n1):
    params = enumerate_parameters(n1)
    assert len(params) == 6
    assert sum(p.child == "A" for p in params) == 2


def test_enumerate_single_root():
    net = load_network(doc([{"name": "R", "states": ["x", "y"]}],
                           [{"child": "R", "parents": [], "table": [[0.3, 0.7]]}]))
    assert len(enumerate_parameters(net)) == 2


def test_enumerate_ternary_child_two_parents():
    net = load_network(doc(
        [{"name": "P", "states": ["0", "1"]}, {"name": "Q", "states": ["0", "1"]},
         {"name": "C", "states": ["u", "v", "w"]}],
        [{"child": "P", "parents": [], "table": [[0.5, 0.5]]},
         {"child": "Q", "parents": [], "table": [[0.5, 0.5]]},
         {"child": "C", "parents": ["P", "Q"], "table": [[0.2, 0.3, 0.5]] * 4}]))
    assert sum(p.child == "C" for p in enumerate_parameters(net)) == 12


def test_last_parent_cycles_fastest():
    rows = [[0.1, 0.9], [0.2, 0.8], [0.3, 0.7], [0.4, 0.6]]
    net = load_network(doc(
        [{"name": "P", "states": ["0", "1"]}, {"name": "Q", "states": ["0", "1"]},
         {"name": "C", "states": ["u", "v"]}],
        [{"child": "P", "parents": [], "table": [[0.5, 0.5]]},
         {"child": "Q", "parents": [], "table": [[0.5, 0.5]]},
         {"child": "C", "parents": ["P", "Q"], "table": rows}]))
    assert net.value(ParameterRef("C", 0, (0, 1))) == 0.2
    assert net.value(ParameterRef("C", 0, (1, 0))) == 0.3


def single_row(row):
    names = [str(i) for i in range(len(row))]
    return load_network(doc([{"name": "V", "states": names}],
                            [{"child": "V", "parents": [], "table": [row]}]))


def test_covary_binary():
    net = covary(single_row([0.3, 0.7]), ParameterRef("V", 0), 0.5)
    np.testing.assert_allclose(net.cpt("V").rows[0], [0.5, 0.5])


def test_covary_identity(n1):
    p = ParameterRef("B", 0, (1,))
    assert covary(n1, p, 0.2) is n1


def test_covary_ternary():
    net = covary(single_row([0.2, 0.3, 0.5]), ParameterRef("V", 0), 0.4)
    # scaling factor (1 - 0.4)/(1 - 0.2) = 0.75
    np.testing.assert_allclose(net.cpt("V").rows[0], [0.4, 0.225, 0.375], atol=1e-15)


def test_covary_is_non_destructive(n1):
    covary(n1, ParameterRef("B", 0, (0,)), 0.3)
    np.testing.assert_array_equal(n1.cpt("B").rows, [[0.9, 0.1], [0.2, 0.8]])


def test_covary_other_rows_untouched(n1):
    net = covary(n1, ParameterRef("B", 0, (0,)), 0.3)
    np.testing.assert_array_equal(net.cpt("B").rows[1], [0.2, 0.8])
    np.testing.assert_array_equal(net.cpt("A").rows, n1.cpt("A").rows)


def test_covary_rejects_out_of_range(n1):
    with pytest.raises(CovariationError):
        covary(n1, ParameterRef("A", 0), 1.5)


def test_covary_x0_one_spreads_uniformly():
    net = covary(single_row([1.0, 0.0, 0.0]), ParameterRef("V", 0), 0.4)
    np.testing.assert_allclose(net.cpt("V").rows[0], [0.4, 0.3, 0.3])


rows = st.lists(st.floats(0.0, 1.0), min_size=2, max_size=4).filter(
    lambda r: sum(r) > 0.1).map(lambda r: [v / sum(r) for v in r])


@settings(max_examples=200, deadline=None)
@given(rows, st.floats(0.0, 1.0), st.integers(0, 3))
def test_covary_keeps_rows_normalized(row, x, which):
    which %= len(row)
    if row[which] >= 1.0:
        return
    net = covary(single_row(row), ParameterRef("V", which), x)
    new = net.cpt("V").rows[0]
    assert abs(new.sum() - 1.0) < 1e-9
    assert new[which] == pytest.approx(x, abs=1e-12)
    for i, v in enumerate(single_row(row).cpt("V").rows[0]):
        if v == 0.0 and i != which:
            assert new[i] == 0.0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 5), st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_joint_is_affine_in_x(which, xa, xb):
    rng = np.random.default_rng(which)
    from sensbound.randnet import random_network
    net = random_network(rng, n_vars=3)
    params = enumerate_parameters(net)
    p = params[which % len(params)]
    xs = [0.0, xa, xb] if xa != xb else [0.0, xa, 1.0]
    for states in itertools.product(*(range(net.card(n)) for n in net.names)):
        full = dict(zip(net.names, states))
        ys = [joint_prob(covary(net, p, x), full) for x in xs]
        # collinearity of the three points
        area = (xs[1] - xs[0]) * (ys[2] - ys[0]) - (xs[2] - xs[0]) * (ys[1] - ys[0])
        assert abs(area) < 1e-12


def test_address_grammar(n1):
    p = parse_parameter(n1, "B=b|A=na")
    assert p == ParameterRef("B", 0, (1,))
    assert format_parameter(n1, p) == "B=b|A=na"
    assert parse_parameter(n1, "A=na|") == ParameterRef("A", 1, ())
    with pytest.raises(NetworkError):
        parse_parameter(n1, "B=b|")
    assert parse_assignments(n1, "A=a, B=nb") == {"A": 0, "B": 1}


def test_query_rejects_observed_target(n1):
    with pytest.raises(NetworkError):
        make_query(n1, "A=a", "A=na")
