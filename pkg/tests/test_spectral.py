import random

import pytest

from lcsnovikov import catalog
from lcsnovikov.cochain import cohomology
from lcsnovikov.errors import InapplicablePerturbation
from lcsnovikov.exterior import Form, power
from lcsnovikov.spectral import (NotStabilizedBy, conformal_e1_check, convergence_check, e1_crosscheck,
                                 e1_diagonal_check, e2_diagonal_shift, exponent_witness, filtered_cohomology,
                                 short_exact_check, les_top_degree, les_primitive, pages, perturbed_structure,
                                 random_conformal_checks, spectral_invariants, spectral_sequence,
                                 stabilization_index, stabilization_report)
from oracle import spectral_table

LABELS = ["abelian(1)", "abelian(2)", "heisenberg(1)", "heisenberg(2)", "inoue_solv(1,1)", "kodaira_thurston"]

# Nonzero entries of E_r^{p,q}, computed with tests/oracle.py and frozen.
FROZEN_PAGES = {
    ("inoue_solv(1,1)", "omega+", -1, 1): {(0, 1): 1, (0, 2): 3, (1, 2): 3, (2, 2): 1},
    ("inoue_solv(1,1)", "omega+", -1, 2): {(0, 1): 1, (0, 2): 2, (1, 2): 1},
    ("inoue_solv(1,1)", "omega+", 0, 1): {(0, 0): 1, (0, 1): 1, (0, 2): 2, (1, 2): 3, (2, 2): 1},
    ("inoue_solv(1,1)", "omega+", 0, 2): {(0, 0): 1, (0, 1): 1, (1, 2): 1, (2, 2): 1},
    ("inoue_solv(1,1)", "omega+", 1, 1): {(0, 1): 2, (0, 2): 4, (1, 1): 1, (1, 2): 4, (2, 2): 1},
    ("inoue_solv(1,1)", "omega+", 1, 2): {(0, 1): 1, (0, 2): 2, (1, 2): 1},
    ("inoue_solv(1,1)", "omega-", 1, 1): {(0, 1): 2, (0, 2): 4, (1, 1): 1, (1, 2): 4, (2, 2): 1},
    ("inoue_solv(1,1)", "omega-", 1, 2): {(0, 1): 1, (0, 2): 2, (1, 2): 1},
    ("heisenberg(1)", "omega", 1, 1): {(0, 1): 1, (0, 2): 3, (1, 1): 1, (1, 2): 4, (2, 2): 1},
    ("heisenberg(1)", "omega", 1, 2): {},
    ("heisenberg(1)", "omega", -1, 1): {(0, 2): 2, (1, 2): 3, (2, 2): 1},
    ("heisenberg(1)", "omega", -1, 2): {},
    ("heisenberg(2)", "omega", 1, 1): {(0, 1): 1, (0, 2): 5, (0, 3): 9, (1, 1): 1, (1, 2): 5, (1, 3): 13,
                                       (2, 3): 5, (3, 3): 1},
    ("heisenberg(2)", "omega", 2, 1): {(0, 3): 5, (1, 2): 1, (1, 3): 10, (2, 2): 1, (2, 3): 6, (3, 3): 1},
    ("kodaira_thurston", "omega", 0, 1): {(0, 0): 1, (0, 1): 3, (0, 2): 4, (1, 1): 1, (1, 2): 4, (2, 2): 1},
    ("kodaira_thurston", "omega", 0, 2): {(0, 0): 1, (0, 1): 3, (0, 2): 3, (1, 1): 1, (1, 2): 3, (2, 2): 1},
    ("abelian(2)", "omega", 0, 1): {(0, 0): 1, (0, 1): 4, (0, 2): 5, (1, 1): 1, (1, 2): 4, (2, 2): 1},
    ("abelian(2)", "omega", 0, 2): {(0, 0): 1, (0, 1): 4, (0, 2): 5, (1, 1): 1, (1, 2): 4, (2, 2): 1},
}


def _structures(entries):
    for label in LABELS:
        for key, s in entries[label].structures.items():
            yield label, key, s


@pytest.mark.parametrize("case", sorted(FROZEN_PAGES, key=str))
def test_frozen_pages(entries, case):
    label, key, k, r = case
    s = entries[label].structures[key]
    got = {pq: v for pq, v in spectral_sequence(s, k).page(r).dims.items() if v}
    assert got == FROZEN_PAGES[case]


@pytest.mark.parametrize("label", ["abelian(1)", "heisenberg(1)", "inoue_solv(1,1)", "kodaira_thurston"])
def test_pages_agree_with_oracle(entries, label):
    for key, s in entries[label].structures.items():
        for k in (-1, 0, 2):
            theta = [k * c for c in s.theta.to_vector(1)]
            for r in (0, 1, 2, 3):
                want = spectral_table(s.model.structure, s.dim, theta, dict(s.omega.terms), r)
                assert spectral_sequence(s, k).page(r).dims == want, (key, k, r)


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_e1_matches_primitive_model(entries, k):
    for label, key, s in _structures(entries):
        rep = e1_crosscheck(s, k)
        assert rep.ok, (label, key, rep.failures()[0].detail if rep.failures() else "")


@pytest.mark.parametrize("k", [-1, 0, 1])
def test_convergence(entries, k):
    for label, key, s in _structures(entries):
        assert convergence_check(s, k).ok, (label, key)


def test_page_consistency(entries):
    for label, key, s in _structures(entries):
        rep = spectral_invariants(s, ks=(-1, 0, 1))
        assert rep.ok, (label, key, [c.name for c in rep.failures()])


def test_limit_page_is_stable(entries):
    for label, key, s in _structures(entries):
        ss = spectral_sequence(s, 1)
        lim = ss.limit_page()
        assert ss.page(s.n + 3).dims == lim.dims
        assert ss.page(s.n + 2).differential_is_zero()


@pytest.mark.parametrize("l", [0, 1])
def test_long_exact_sequences(entries, l):
    for label, key, s in _structures(entries):
        for p in range(s.n):
            a = les_primitive(s, l, p)
            b = les_top_degree(s, l, p)
            assert a.ok, (label, key, l, p, a.exact)
            assert b.ok, (label, key, l, p, b.exact)
            assert b.extra.data["T"] >= 0


@pytest.mark.parametrize("l", [-1, 0, 1])
def test_short_exact_sequences_and_diagonal(entries, l):
    for label, key, s in _structures(entries):
        assert short_exact_check(s, l).ok, (label, key)
        assert e1_diagonal_check(s, l).ok, (label, key)


def test_filtered_cohomology_rows(inoue):
    s = inoue.structure
    D = filtered_cohomology(s, 1)
    H = cohomology(s.differential(1)).dims
    # the whole complex sits in filtration degree 0
    assert all(D[(0, m)] == H[m] for m in range(5))


def test_stabilization_heisenberg(entries):
    for label in ("heisenberg(1)", "heisenberg(2)"):
        s = entries[label].structure
        T, rho = exponent_witness(s)
        assert T == 1 and s.differential(1).apply(rho) == s.omega
        for k in (1, 2, -1):
            rep = stabilization_report(s, k)
            assert rep.ok and rep.data["index"] <= 2, (label, k)


def test_stabilization_symplectic(entries):
    for label in ("abelian(2)", "kodaira_thurston"):
        s = entries[label].structure
        assert stabilization_index(s, 0) <= 2
    for label in ("abelian(1)", "abelian(2)"):
        e = entries[label]
        rep = stabilization_report(e.structure, 0, metric=e.metric())
        assert rep.ok and rep.data["index"] == 1


def test_not_stabilized_raises(inoue):
    s = inoue.structure
    with pytest.raises(NotStabilizedBy):
        stabilization_index(s, 0, r_max=1)


def test_e2_shift(entries):
    for label, key, s in _structures(entries):
        for k in (-1, 0, 1, 2):
            rep = e2_diagonal_shift(s, k)
            if k != 0 or not s.theta:
                assert rep.ok, (label, key, k)


def test_e2_shift_counterexample_at_k0(inoue):
    # with a nonzero Lee form the shift can fail at k = 0
    rep = e2_diagonal_shift(inoue.structure, 0)
    assert not rep.ok
    e2 = spectral_sequence(inoue.structure, 0).page(2).dims
    assert (e2[(0, 0)], e2[(1, 1)]) == (1, 0)


def test_conformal_change(entries):
    for label, key, s in _structures(entries):
        rep = random_conformal_checks(s, random.Random(5), count=3)
        assert rep.ok, (label, key)


def test_zero_perturbation_is_identity(inoue):
    s = inoue.structure
    assert conformal_e1_check(s, Form.zero(4)).ok


def test_degenerate_perturbation_rejected(inoue):
    s = inoue.structure
    # ρ = -η cancels the γ^η part of ω, leaving nλ α^β
    rho = s.model.form("-h")
    assert not power(s.omega + s.differential(1).apply(rho), 2)
    with pytest.raises(InapplicablePerturbation):
        perturbed_structure(s, rho)


def test_pages_records_are_deterministic(heis1):
    s = heis1.structure
    a = [pg.records() for pg in pages(s, 1, 3)]
    b = [pg.records() for pg in pages(s, 1, 3)]
    assert a == b and a[0][0].keys() == {"page", "p", "q", "dim", "differential_rank"}
