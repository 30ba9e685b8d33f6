import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permlat import glat, permgrp, seqcert, serialize
from permlat.errors import BadParams


@pytest.mark.parametrize("g", [permgrp.symmetric(4), permgrp.alpha_beta(6, 2), permgrp.sigma_pi(3),
                               permgrp.trivial(3)])
def test_group_round_trip(g):
    back = serialize.group_from_json(json.loads(serialize.dumps(serialize.group_to_json(g))))
    assert back.degree == g.degree and back.generators == g.generators


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-2 ** 70, 2 ** 70), min_size=3, max_size=3), min_size=1, max_size=3))
def test_matrix_round_trip_with_big_entries(rows):
    d = json.loads(serialize.dumps(serialize.matrix_to_json(rows)))
    assert serialize.matrix_from_json(d) == rows
    big = [x for r in d["entries"] for x in r if isinstance(x, str)]
    assert all(abs(int(x)) >= 2 ** 63 - 1 for x in big)


def test_matrix_shape_mismatch():
    with pytest.raises(BadParams):
        serialize.matrix_from_json({"rows": 2, "cols": 2, "entries": [[1, 2]]})


@pytest.mark.parametrize("name", ["A", "Sym2A", "Wedge2U"])
def test_lattice_round_trip(name):
    m = glat.fixture(name, 4)
    back = serialize.lattice_from_json(json.loads(serialize.dumps(serialize.lattice_to_json(m))))
    assert back.rank == m.rank
    assert all(np.array_equal(a, b) for a, b in zip(m.gens, back.gens))
    assert back.check_homomorphism()


def test_finmodule_round_trip():
    m = glat.mod_m(glat.fixture("A", 4), 2)
    back = serialize.lattice_from_json(serialize.lattice_to_json(m))
    assert back.modulus == 2


def test_sequence_json_is_deterministic():
    seq = seqcert.build_named("koszul", 4)
    a = serialize.dumps(serialize.sequence_to_json(seq))
    b = serialize.dumps(serialize.sequence_to_json(seqcert.build_named("koszul", 4)))
    assert a == b and json.loads(a)["verified"]


@pytest.mark.parametrize("text,order", [("S4", 24), ("A5", 60), ("C3", 3), ("V4", 4), ("trivial(3)", 1),
                                        ("stab(4)", 6), ("alpha_beta(6,2)", 4), ("sigma_pi(3)", 9),
                                        ("even_pairs(6)", 4), ("sylow2_alt(4)", 4), ("sylow2_sym(4)", 8),
                                        ("smallest_prime(9)", 9)])
def test_parse_group(text, order):
    assert serialize.parse_group(text).order() == order


def test_parse_group_json():
    g = serialize.parse_group(json.dumps(serialize.group_to_json(permgrp.symmetric(3))))
    assert g.order() == 6


@pytest.mark.parametrize("text", ["Q8", "alpha_beta(4,2)", "foo(1)", "sigma_pi()"])
def test_parse_group_errors(text):
    with pytest.raises(BadParams):
        serialize.parse_group(text)


def test_parse_lattice():
    assert serialize.parse_lattice("Sym2A(5)").rank == 10
    assert serialize.parse_lattice("A(4)", permgrp.klein_four()).group.order() == 4
    with pytest.raises(BadParams):
        serialize.parse_lattice("A(5)", permgrp.klein_four())
    with pytest.raises(BadParams):
        serialize.parse_lattice("B(3)")
