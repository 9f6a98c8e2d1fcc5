import random

import pytest
from hypothesis import given, strategies as st

from lcsnovikov import catalog
from lcsnovikov.cochain import build_model
from lcsnovikov.errors import (Degenerate, DegreeMismatch, NotAlmostComplex, NotCompatible, NotLeeCompatible,
                               NotPositive, OddDimension, ThetaNotClosed)
from lcsnovikov.exterior import Form, lambda_p_pairing, wedge
from lcsnovikov.lcsops import (commutation_checks, leibniz_checks, metric_layer, random_form, star_omega,
                               validate_lcs)
from lcsnovikov.ratlin import Matrix, rank

LABELS = ["abelian(1)", "abelian(2)", "heisenberg(1)", "heisenberg(2)", "inoue_solv(1,1)", "kodaira_thurston"]


def _all_structures(entries):
    for label in LABELS:
        for key, s in entries[label].structures.items():
            yield "%s/%s" % (label, key), s


def test_commutation_identities(entries):
    for name, s in _all_structures(entries):
        rep = commutation_checks(s)
        assert rep.ok, (name, [c.name for c in rep.failures()])


def test_leibniz_hundred_pairs(entries):
    for name, s in _all_structures(entries):
        rep = leibniz_checks(s, random.Random(11), trials=100)
        assert rep.ok, name


def test_contraction_sign_is_minus(inoue):
    # with G the inverse of the matrix of ω, [L*, L] = A forces L* = -i(G)
    assert inoue.structure.contraction_sign == -1


@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_star_defining_pairing(seed, p):
    # β ^ *α = Λ^p G(β, α) ω^n / n!
    s = catalog.inoue_solv(1, 1).structures["omega-"]
    rng = random.Random(seed)
    a, b = random_form(4, p, rng), random_form(4, p, rng)
    lhs = wedge(b, star_omega(s, a))
    rhs = s.volume.scale(lambda_p_pairing(s.G, p, b, a))
    assert lhs == rhs


def test_lefschetz_isomorphisms(entries):
    for name, s in _all_structures(entries):
        n = s.n
        for k in range(n + 1):
            M = s.L_matrix(n - k, k)
            assert M.nrows == M.ncols and rank(M) == M.nrows, (name, k)


def _model4():
    return build_model(["x", "y", "z", "w"], [("x", "y", {"z": 1})])


def test_validation_errors():
    m = _model4()
    with pytest.raises(Degenerate):
        validate_lcs(m, m.form("x^w"))
    with pytest.raises(DegreeMismatch):
        validate_lcs(m, m.form("x"))
    with pytest.raises(ThetaNotClosed):
        validate_lcs(m, m.form("x^w + y^z"), m.generator("z"))
    with pytest.raises(NotLeeCompatible):
        # dω = 0 here but -ω^θ is not
        validate_lcs(m, m.form("x^w + y^z"), m.generator("x"))
    odd = build_model(["x", "y", "z"], [])
    with pytest.raises(OddDimension):
        validate_lcs(odd, odd.form("x^y"))


def test_metric_layer_errors(entries):
    s = entries["abelian(1)"].structure
    with pytest.raises(NotAlmostComplex):
        metric_layer(s, Matrix([[1, 0], [0, 1]]))
    # J with the wrong orientation gives a negative definite g
    with pytest.raises(NotPositive):
        metric_layer(s, Matrix([[0, 1], [-1, 0]]))
    s2 = entries["abelian(2)"].structure
    # J X1 = X3 preserves ω but pairs the wrong planes, so g is not positive
    J = Matrix([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    with pytest.raises(NotPositive):
        metric_layer(s2, J)
    # a non-symplectic conjugate of the standard J
    sheared = Matrix([[0, -1, 0, -1], [1, 0, -1, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    with pytest.raises(NotCompatible):
        metric_layer(s2, sheared)


def test_darboux_metric_attached(entries):
    for label in LABELS:
        e = entries[label]
        for key in e.structures:
            assert e.metrics[key] is not None


def test_operator_cache_is_stable(inoue):
    s = inoue.structure
    assert s.L_matrix(1) is s.L_matrix(1)
    assert s.differential(1) is s.differential(1)
