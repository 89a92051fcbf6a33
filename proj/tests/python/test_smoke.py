import pytest

import cmdf

K49 = [1, -1, 0, -2, -1]


def test_invariants_and_conductor():
    inv = cmdf.invariants(K49)
    assert inv["c4"] == 105
    assert inv["j"] == -3375
    assert cmdf.conductor(K49)["conductor"] == 49
    assert cmdf.conductor([0, 0, 0, -1, 0])["conductor"] == 32
    local = cmdf.conductor([0, 0, 1, 0, -7])["local"]
    assert local[0]["p"] == 3 and local[0]["f"] == 3


def test_classify_minimal():
    rep = cmdf.classify(K49)
    assert rep["twist_minimal"] is True
    assert rep["disjoint_over_K"] is True
    assert rep["bad_primes"] == [7]
    assert rep["per_prime"][0]["group_order"] == 21


def test_classify_twist():
    tw = cmdf.quadratic_twist(K49, 5)
    rep = cmdf.classify(tw)
    assert rep["twist_minimal"] is False
    assert rep["disjoint_over_K"] is False
    assert rep["delta_r"] == 5
    assert rep["bad_primes"] == [5, 7]
    assert cmdf.twist_factor(K49, tw) == 5


def test_orders_and_ray_degrees():
    assert cmdf.class_number(-23) == 3
    assert cmdf.class_number_formula(-100) == 2
    assert cmdf.residue_unit_count(-7, 7) == 42
    assert cmdf.unit_image_order(-3, 2) == 3
    assert cmdf.ray_class_degree(-7, 7) == (21, 21)


def test_formal_height_and_traces():
    h = cmdf.formal_height([0, 0, 0, -1, 0], 3)
    assert h["h"] == 2 and h["witness"] == 9
    assert cmdf.trace_of_frobenius(K49, 2) == 1
    assert cmdf.count_points(K49, 2) == 2


def test_frobenius_image():
    img = cmdf.frobenius_image(K49, 7, prime_bound=2000)
    assert img["order"] == 21
    assert img["contains_minus_one"] is False
    assert img["status"] == "probable image"


def test_registry_and_basics():
    entries = cmdf.registry()
    assert sum(len(e["curves"]) for e in entries) == 30
    assert sum(len(e["curves"]) for e in entries if e["classifiable"]) == 26
    assert cmdf.kronecker(-7, 2) == 1
    assert cmdf.factorize(12) == [(2, 2), (3, 1)]
    big = -(2**18) * 3**3 * 5**3 * 23**3 * 29**3
    assert cmdf.factorize(big) == [(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)]
    assert cmdf.torsion_valuation_bound(8, 3, 2, 1) == (1, 1)


def test_errors():
    with pytest.raises(ValueError):
        cmdf.classify([0, 0, 1, 0, 0])  # j = 0
    with pytest.raises(ValueError):
        cmdf.conductor([0, 0, 0, 0, 0])  # singular
    with pytest.raises(ValueError):
        cmdf.quadratic_twist(K49, 12)  # not squarefree
