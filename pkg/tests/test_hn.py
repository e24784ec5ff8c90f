import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cobstab import base as B
from cobstab.cones import ZERO, Leaf, ZERO_TAG, chain, flatten, k0_class, nonzero
from cobstab.errors import BadWindow, Inconsistent, Mismatch, NotSemistable
from cobstab.hn import (HNFiltration, chain_from_cone, check_extension_closed,
                        check_local_finiteness, compare_hn, general_object_hn, hn_of_spec,
                        lattice_basis, normalize, refine_by_base_hn, refine_chain, verify_axioms)
from cobstab.lift import (LiftedGenerator, cone_decomposition, lifted_k0, lifted_k0_of_expr,
                          lifted_phase, central_charge_lifted)
from cobstab.phase import Angle
from cobstab.sampling import random_generator, random_spec

O = B.BaseObject(B.Atom(B.STRUCTURE_SHEAF))
K = B.BaseObject(B.Atom(B.SKYSCRAPER))
OP = B.BaseObject(B.Atom(B.Brick(1, 1)))  # O(p), phase 3/4


def gen(h, obj, s=0):
    return LiftedGenerator(h, s, obj)


def flat(*gens, tags=None):
    items = [Leaf(g, -1) for g in gens] + [ZERO]
    if tags is None:
        tags = [ZERO_TAG] * len(gens)
    return chain(*items, tags=list(tags) + [ZERO_TAG] * (len(items) - 1 - len(tags)))


# refinement

def test_refine_leaves_semistable_alone():
    e = flat(gen(2, O))
    assert refine_by_base_hn(e) == e


def test_refine_splits_by_base_phase():
    e = flat(gen(2, O + K))
    out = refine_by_base_hn(e)
    items, _ = flatten(out)
    bases = [it.obj.base for it in items[:-1]]
    assert [B.object_phase(b) for b in bases] == [Angle(0, (0, 1)), Angle(0, (-1, 0))]
    assert all(it.obj.height == 2 for it in items[:-1])
    assert lifted_k0_of_expr(out) == lifted_k0_of_expr(e)


def test_refine_chain_matches_cone_refinement():
    e = flat(gen(3, O + K), gen(2, OP))
    c = refine_chain(chain_from_cone(e, 4))
    assert c.k0() == lifted_k0_of_expr(e)
    assert len(c.factors) == 3


# normalisation

def test_single_factor():
    f, tr = normalize(flat(gen(2, O)), 4)
    assert f.generators() == [gen(2, O)] and tr.steps == []


def test_one_swap_sorts_heights():
    f, tr = normalize(flat(gen(2, O), gen(3, O)), 4)
    assert tr.steps == [("swap", 0)]
    p = f.phases()
    assert p[0] == p[1].shift(4)
    assert f.generators() == [gen(2, O), gen(3, O)]


def test_collapse_with_witness():
    # nonzero K -> O[1] at one height folds into O(p)
    e = flat(gen(2, K), gen(2, O), tags=[nonzero("w")])
    f, tr = normalize(e, 4, witnesses={"w": OP})
    assert [s[0] for s in tr.steps] == ["collapse"]
    assert f.generators() == [gen(2, OP)]
    psi = lifted_phase(gen(2, K), 4)
    for p in f.phases():
        assert psi.shift(-1) <= p <= psi


def test_collapse_same_brick_gives_jordan_block():
    f, _ = normalize(flat(gen(2, O), gen(2, O), tags=[nonzero()]), 4)
    assert f.generators() == [gen(2, B.BaseObject(B.Atom(B.STRUCTURE_SHEAF, 2)))]


def test_cone_of_identity_is_empty():
    # the chain (O[1][-1] -> O[-1] -> 0) is the cone of the identity of O
    e = flat(gen(2, O.shifted(1)), gen(2, O), tags=[nonzero()])
    f, _ = normalize(e, 4)
    assert f.factors == ()


def test_nonzero_tag_on_zero_space_is_inconsistent():
    other = B.BaseObject(B.Atom(B.Brick(0, 1, Fraction(1, 3))))
    e = flat(gen(2, other), gen(2, K), tags=[nonzero()])
    with pytest.raises(Inconsistent):
        normalize(e, 4)


def test_unrefined_input_is_rejected():
    with pytest.raises(NotSemistable):
        normalize(flat(gen(2, O + K)), 4)
    f, _ = normalize(flat(gen(2, O + K)), 4, refine=True)
    assert len(f.factors) == 2


# cones of filtered objects

def _filt(*gens):
    f, _ = normalize(flat(*gens), 4)
    return f


def test_cone_with_empty_target():
    e1 = _filt(gen(2, O), gen(3, K))
    out = general_object_hn(e1, HNFiltration((), 4), ZERO_TAG, 4)
    assert out == e1.shifted(1)


def test_cone_of_separated_objects_concatenates():
    e1 = _filt(gen(5, O))
    e2 = _filt(gen(2, K), gen(3, O))
    out = general_object_hn(e1, e2, ZERO_TAG, 4)
    assert out.factors == e2.factors + e1.shifted(1).factors


def test_cone_with_interleaved_phases_matches_search():
    e1 = _filt(gen(2, O, -1), gen(3, K, 2))
    e2 = _filt(gen(2, K), gen(3, O, 3))
    out = general_object_hn(e1, e2, ZERO_TAG, 4)
    gens = e2.generators() + e1.shifted(1).generators()
    st_ = oracles.SearchState(gens, frozenset(), 4)
    terms = {tuple(oracles.multiset_of(st_, t)) for t in oracles.terminal_filtrations(st_)}
    assert len(terms) == 1
    mine = [(oracles.mpmath.nstr(oracles.angle_value(p), 30), tuple(sorted(g)))
            for p, g in out.factors]
    assert mine == list(terms.pop())


# axioms

def test_axioms_pass_on_sample():
    rng = random.Random(5)
    sample = [random_generator(rng) for _ in range(60)] + [random_spec(rng) for _ in range(10)]
    sample += [B.Atom(B.Brick(2, 1)), O, K]
    rep = verify_axioms(sample, 4)
    assert rep["ok"], rep


def test_axioms_fail_for_kappa_two():
    src, tgt = gen(3, O.shifted(1)), gen(2, O)
    assert verify_axioms([src, tgt], 4)["ok"]
    rep = verify_axioms([src, tgt], 2)
    assert not rep["ok"] and rep["gap"]


def test_axioms_fail_for_odd_kappa():
    rep = verify_axioms([gen(2, O), gen(3, K, 1)], 3)
    assert not rep["ok"]


def test_empty_sample_passes():
    rep = verify_axioms([], 4)
    assert rep["ok"] and rep["counts"] == {"atoms": 0, "generators": 0, "specs": 0}


# comparison

def test_compare_examples():
    f = _filt(gen(2, O), gen(3, K))
    assert compare_hn(f, f)["match"]
    with pytest.raises(Mismatch):
        compare_hn(f, _filt(gen(2, O)))


@given(st.integers(0, 10 ** 6))
def test_scan_order_does_not_matter(seed):
    spec = random_spec(random.Random(seed))
    from cobstab.hn import chain_from_spec
    a, _ = normalize(chain_from_spec(spec, 4), 4, refine=True, scan="left")
    b, _ = normalize(chain_from_spec(spec, 4), 4, refine=True, scan="right")
    assert compare_hn(a, b)["match"]


# extension closure

def test_extension_closed_examples():
    rep = check_extension_closed(O, O, Angle(0, (0, 1)))
    assert rep["ok"]
    kinds = {r["tag"]: r for r in rep["extensions"]}
    assert kinds["zero"]["member"] and kinds["nonzero"]["member"]
    assert kinds["nonzero"]["object"] == str(B.BaseObject(B.Atom(B.STRUCTURE_SHEAF, 2)))
    with pytest.raises(NotSemistable):
        check_extension_closed(O, K, Angle(0, (0, 1)))


# local finiteness

def test_local_finiteness_examples():
    rep = check_local_finiteness(Angle(0, (0, 1)), Fraction(1, 4), [O, K, OP], 4)
    assert rep["ok"] and rep["denominator"] == 1
    assert rep["basis"] == [[0, 1]]
    rep = check_local_finiteness(Angle(0, (-1, 1)), Fraction(1, 3), [O, K, OP], 4)
    assert rep["basis"] == [[1, 0], [0, 1]] or oracles.gcd_lattice_index(rep["basis"]) == 1
    with pytest.raises(BadWindow):
        check_local_finiteness(Angle(0, (0, 1)), Fraction(1, 2), [O], 4)


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), max_size=6))
def test_lattice_basis_spans_same_lattice(vs):
    basis = lattice_basis(vs)
    assert oracles.gcd_lattice_index(basis) == oracles.gcd_lattice_index(vs)
    assert len(basis) == (0 if not any(any(v) for v in vs) else
                          (2 if oracles.gcd_lattice_index(vs) else 1))


# random specs against the exhaustive search

@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_normalize_matches_exhaustive_search(seed):
    spec = random_spec(random.Random(seed))
    f, _ = hn_of_spec(spec, 4)
    mine = [(oracles.mpmath.nstr(oracles.angle_value(p), 30), tuple(sorted(g)))
            for p, g in f.factors]
    assert mine == oracles.oracle_hn(spec, 4)


@given(st.integers(0, 10 ** 6))
def test_trace_conserves_class_and_charge(seed):
    spec = random_spec(random.Random(seed))
    f, trace = hn_of_spec(spec, 4)
    e = cone_decomposition(spec)
    k, z = lifted_k0_of_expr(e), central_charge_lifted(e)
    for state in trace.states():
        assert state.k0() == k and state.charge() == z
    assert f.k0() == k and f.charge() == z
    assert [tuple(p.gen for p in fac) for fac in trace.replay().factors] == [g for _, g in f.factors]
    ph = f.phases()
    assert all(a > b for a, b in zip(ph, ph[1:]))
