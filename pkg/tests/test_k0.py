from fractions import Fraction

import pytest

import oracles
from cobstab import base as B
from cobstab.errors import BadModulus, GeneratorMismatch
from cobstab.k0 import (Model, PresentedGroup, check_assumptions, euler_radical, k0_presentation,
                        omega_lag_presentation, sample_classes, saturation, theta_map)

O = B.Atom(B.STRUCTURE_SHEAF)
K = B.Atom(B.SKYSCRAPER)
OP = B.Atom(B.Brick(1, 1))


def test_line_row_is_a_relation():
    m = Model(2, 3)
    g = k0_presentation(2, 3, model=m)
    # O(D-Q) -> O(D) -> k(Q) with D of degree 1 at P=(1,0) and Q=(1,1)
    row = g.row({m.atom(1, 1, (1, 0)): 1, m.atom(1, 0, (0, 1)): -1, m.atom(0, 1, (1, 1)): -1})
    assert g.lattice().contains(row)


def test_shift_row_is_a_relation():
    m = Model(2, 3)
    g = k0_presentation(2, 3, model=m)
    assert g.lattice().contains(g.row({O: 1, O.shifted(1): 1}))


def test_k0_invariants_for_two():
    assert k0_presentation(2, 4).invariants() == [0, 0, 2, 2]


@pytest.mark.parametrize("N,bound", [(2, 1), (2, 3), (3, 2)])
def test_k0_invariants_match_sympy(N, bound):
    g = k0_presentation(N, bound)
    assert g.invariants() == oracles.sympy_invariants(g.dense(), len(g.generators))


def test_rank_surgery_row():
    m = Model(3, 3)
    om = omega_lag_presentation(3, 3, model=m)
    P = (1, 2)
    # [E(2, 1) at P] = [line of degree 1 at P] + (2 - 1)[O]
    row = om.row({m.atom(2, 1, P): 1, m.atom(1, 1, P): -1, m.atom(1, 0, (0, 0)): -1})
    assert om.lattice().contains(row)


def test_shift_cobordism_and_local_system_rows():
    m = Model(2, 3)
    om = omega_lag_presentation(2, 3, model=m)
    assert om.lattice().contains(om.row({K: 1, K.shifted(1): 1}))
    J = B.Atom(B.Brick(1, 1), 2)
    assert om.lattice().contains(om.row({J: 1, OP: -2}))
    assert set(om.families) == {"surgery", "atiyah_surgery", "shift_cobordism", "local_system"}


def test_identical_presentations_are_iso():
    g = k0_presentation(2, 2)
    assert theta_map(g, g).iso


def test_extra_relation_breaks_iso():
    g = k0_presentation(2, 2)
    extra = PresentedGroup(g.generators, g.relations + [g.row({O: 1})], g.families + ["extra"])
    h = theta_map(g, extra)
    assert h.well_defined and not h.injective and not h.iso


def test_theta_iso_for_three():
    src, dst = omega_lag_presentation(3, 3), k0_presentation(3, 3)
    h = theta_map(src, dst)
    assert h.iso and h.dst_invariants == [0, 0, 3, 3]


def test_theta_needs_matching_generators():
    with pytest.raises(GeneratorMismatch):
        theta_map(k0_presentation(2, 2), k0_presentation(2, 3))


def test_assumptions_hold():
    rep = check_assumptions(2, 3)
    assert rep["ok"] and all(rep[k]["ok"] for k in ("S1", "S2", "S3"))


def test_dropping_local_systems_breaks_s3():
    rep = check_assumptions(2, 3, drop_omega=("local_system",))
    assert not rep["S3"]["ok"] and rep["S3"]["witness"]


def test_dropping_rank_surgery_breaks_s2_on_rank_row():
    rep = check_assumptions(2, 3, drop_omega=("atiyah_surgery",))
    assert not rep["S2"]["ok"]
    assert rep["S2"]["witness"][0] == "atiyah"


def test_bad_modulus():
    with pytest.raises(BadModulus):
        Model(1, 3)
    with pytest.raises(BadModulus):
        k0_presentation(Fraction(2), 3)


def test_saturation_is_stable():
    out = saturation(2, [3, 4, 5])
    assert all(inv == [0, 0, 2, 2] for _, inv in out)


def test_radical_example_with_point_twist():
    rep = euler_radical([O, K, OP])
    assert rep["equal"] and rep["quotient_rank"] == 2
    assert rep["kernel_basis"] in ([[1, 1, -1]], [[-1, -1, 1]])


def test_radical_trivial_on_generators():
    rep = euler_radical([O, K])
    assert rep["equal"] and rep["kernel_rank"] == 0 and rep["quotient_rank"] == 2


def test_point_variations_lie_in_radical():
    Ks = [B.Atom(B.Brick(0, 1, Fraction(x, 3), m)) for x in range(3) for m in range(3)]
    rep = euler_radical([O] + Ks)
    assert rep["equal"] and rep["kernel_rank"] == len(Ks) - 1


def test_sample_classes_contains_generators():
    s = sample_classes(3, 3, 20, seed=1)
    assert O in s and K in s
    assert euler_radical(s)["equal"]


def test_to_text_lists_everything():
    g = k0_presentation(2, 1)
    text = g.to_text()
    assert text.count("\ng ") == len(g.generators)
    assert text.count("\nr ") == len(g.relations)
