import json

import pytest

from permlat import cohom, flasque, glat, permgrp, serialize
from permlat.seqcert import verify_exact

S3 = permgrp.symmetric(3)
S4 = permgrp.symmetric(4)
CAT3 = permgrp.subgroups_up_to_conjugacy(S3)
CAT4 = permgrp.subgroups_up_to_conjugacy(S4)


def test_permutation_lattice_is_coflasque_and_flasque():
    u = glat.fixture("U", S4)
    assert flasque.is_coflasque(u, CAT4).value == "yes"
    assert flasque.is_flasque(u, CAT4).value == "yes"


def test_augmentation_kernel_is_not_coflasque():
    v = flasque.is_coflasque(glat.fixture("A", S3), CAT3)
    assert v.value == "no"
    assert not cohom.h_bar(1, v.witness, glat.fixture("A", S3)).invariants.is_trivial()
    assert not v


def test_paths_agree():
    for name in ("A", "Sym2A", "Wedge2A", "sign"):
        m = glat.fixture(name, S4)
        bar = flasque.is_coflasque(m, CAT4, stop_early=False)
        fast = flasque.is_coflasque(m, CAT4, path="dual-fast", stop_early=False)
        assert bar.value == fast.value
        assert [inv for _, inv in bar.details] == [inv for _, inv in fast.details]


def test_user_catalog_gives_unknown_not_yes():
    m = glat.fixture("Sym2A", S4)
    cat = permgrp.user_catalog(S4, [permgrp.klein_four()])
    v = flasque.is_coflasque(m, cat)
    assert v.value == "unknown" and not v.catalog_complete
    assert flasque.is_coflasque(glat.fixture("A", S4), cat).value == "no"


def test_verdict_serializes():
    v = flasque.is_coflasque(glat.fixture("A", S3), CAT3)
    d = json.loads(serialize.dumps(v.to_dict()))
    assert d["value"] == "no" and d["catalog"] == CAT3.digest()


@pytest.mark.parametrize("name", ["A", "Sym2A", "A2", "sign", "Wedge2U"])
def test_coflasque_resolution(name):
    m = glat.fixture(name, S4)
    seq = flasque.coflasque_resolution(m, CAT4)
    q, p, top = seq.terms
    assert seq.verified and top is m
    assert p.is_permutation()
    assert flasque.is_coflasque(q, CAT4).value == "yes"
    assert seq.extras["catalog"] == CAT4.digest()


@pytest.mark.parametrize("name", ["A", "Sym2A", "A2", "Wedge2A"])
def test_flasque_resolution(name):
    m = glat.fixture(name, S4)
    res = flasque.flasque_resolution(m, CAT4)
    assert res.p.is_permutation()
    assert flasque.is_flasque(res.f, CAT4).value == "yes"
    assert verify_exact(res.sequence()).verified


def test_rho_paths_agree_with_direct_sha2():
    for name in ("A", "A2", "sign"):
        m = glat.fixture(name, S4)
        for h in CAT4:
            tate = flasque.rho_h1(h, m, CAT4)
            assert tate == flasque.rho_h1(h, m, CAT4, path="bar")
            assert tate == cohom.sha(2, h, m).invariants


def test_rho_of_permutation_lattice_vanishes():
    u = glat.fixture("U", S4)
    assert all(flasque.rho_h1(h, u, CAT4).is_trivial() for h in CAT4)


def test_rho_is_additive():
    a, s = glat.fixture("A", S4), glat.fixture("sign", S4)
    both = glat.dsum(a, s)
    for h in CAT4:
        assert flasque.rho_h1(h, both, CAT4) == flasque.rho_h1(h, a, CAT4) + flasque.rho_h1(h, s, CAT4)


def test_flasque_examples():
    s2 = permgrp.symmetric(2)
    cat2 = permgrp.subgroups_up_to_conjugacy(s2)
    assert flasque.is_flasque(glat.sign_lattice(s2), cat2).value == "no"
    assert flasque.is_flasque(glat.trivial_lattice(S4), CAT4).value == "yes"
    for n in (3, 4):
        g = permgrp.symmetric(n)
        assert flasque.is_coflasque(glat.fixture("A", g), permgrp.subgroups_up_to_conjugacy(g)).value == "no"


def test_resolution_of_trivial_lattice():
    z = glat.trivial_lattice(S4)
    seq = flasque.coflasque_resolution(z, CAT4)
    assert (24, 1) in seq.extras["summands"]
    res = flasque.flasque_resolution(z, CAT4)
    assert all(flasque.rho_h1(h, z, CAT4).is_trivial() for h in CAT4)
    assert res.f.rank == 0 or flasque.is_coflasque(res.f, CAT4).value == "yes"


def test_resolution_of_permutation_lattice_splits():
    from permlat import seqcert
    w = glat.two_subsets_lattice(S4)
    q, p, _ = (seq := flasque.coflasque_resolution(w, CAT4)).terms
    assert seqcert.find_splitting(seq.maps[1], p, w) is not None
    res = flasque.flasque_resolution(w, CAT4)
    assert all(cohom.h_bar(1, h, res.f).invariants.is_trivial() for h in CAT4)


def test_rho_examples():
    from permlat import seqcert
    a = glat.fixture("A", S4)
    v4 = permgrp.klein_four()
    assert flasque.rho_h1(v4, glat.fixture("A2", S4), CAT4).torsion == (2,)
    assert flasque.rho_h1(v4, glat.fixture("A2", S4), CAT4) == \
        cohom.sha2_via_sequence(v4, seqcert.build_named("gn", 4)).invariants
    assert flasque.rho_h1(S4, glat.fixture("Wedge2U", S4), CAT4).is_trivial()
    # A is quasi-permutation (0 -> A -> U -> Z -> 0), so its rho class is trivial
    assert all(flasque.rho_h1(h, a, CAT4).is_trivial() for h in CAT4)
