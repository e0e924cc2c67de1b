import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c2a_workbench.classify import (
    FLAGS,
    c2a_by_colon_ideals,
    classical_2_absorbing_witness,
    classify_all,
    evaluate_main2_conditions,
    evaluate_main_conditions,
    is_2_absorbing_submodule,
    is_c2a_m_closed,
    is_classical_2_absorbing,
    is_classical_prime,
    is_n_absorbing_submodule,
    is_prime_submodule,
    maximal_disjoint_submodules,
    minimal_classical_2_absorbing,
    prime_witness,
    replay,
)
from c2a_workbench.errors import ImproperInputError, InvalidInputError, PreconditionError
from c2a_workbench.module import Module, enumerate_submodules, submodule_generated
from c2a_workbench.ring import Ring

from . import oracles

instances = st.sampled_from([
    ((4,), ((0, 4),)), ((6,), ((0, 6),)), ((8,), ((0, 8),)), ((8,), ((0, 2), (0, 4))),
    ((9,), ((0, 9),)), ((12,), ((0, 12),)), ((12,), ((0, 2), (0, 6))), ((16,), ((0, 16),)),
    ((2,), ((0, 2),) * 3), ((4,), ((0, 4), (0, 4))), ((2, 2), ((0, 2), (1, 2))),
    ((2, 3), ((0, 2), (1, 3))), ((2, 4), ((0, 2), (1, 4), (1, 2))), ((3, 4), ((1, 4), (0, 3))),
    ((30,), ((0, 2), (0, 3), (0, 5))), ((27,), ((0, 27),)),
])


def cyc(n):
    return Module(Ring([n]), [(0, n)])


def sub(m, *gens):
    return submodule_generated(m, gens)


def test_prime_examples():
    assert is_prime_submodule(cyc(5).zero_submodule())
    z6 = cyc(6)
    assert not is_prime_submodule(z6.zero_submodule())
    assert is_prime_submodule(sub(cyc(4), 2))
    with pytest.raises(ImproperInputError):
        is_prime_submodule(z6.whole())


def test_classical_prime_examples():
    assert not is_classical_prime(cyc(6).zero_submodule())
    assert is_classical_prime(sub(cyc(8), 2))


def test_two_absorbing_examples():
    assert is_2_absorbing_submodule(cyc(6).zero_submodule())
    m = Module(Ring([30]), [(0, 2), (0, 3), (0, 5)])
    assert not is_2_absorbing_submodule(m.zero_submodule())
    assert is_n_absorbing_submodule(m.zero_submodule(), 3)


@pytest.mark.parametrize("p", [2, 3])
def test_c2a_examples(p):
    z8 = cyc(8)
    n = z8.zero_submodule()
    assert not is_classical_2_absorbing(n)
    assert replay("classical_2_absorbing", n, {"scalars": [[2], [2], [2]], "element": [1]})
    assert is_classical_2_absorbing(cyc(6).zero_submodule())
    m = cyc(p ** 3)
    assert is_classical_2_absorbing(sub(m, p * p))
    assert not is_classical_2_absorbing(m.zero_submodule())


def test_classify_all_examples():
    flags = {r.submodule.label(): r.flags["classical_2_absorbing"] for r in classify_all(cyc(8))}
    assert flags == {"0": False, "<4>": True, "<2>": True}
    assert all(r.flags["classical_2_absorbing"] for r in classify_all(cyc(6)))
    assert classify_all(Module(Ring([6]), [])) == []


def test_minimal():
    assert [s.label() for s in minimal_classical_2_absorbing(cyc(8))] == ["<4>"]
    assert [s.label() for s in minimal_classical_2_absorbing(cyc(6))] == ["0"]


@settings(max_examples=16, deadline=None)
@given(instances)
def test_predicates_match_tuple_oracles(inst):
    moduli, comps = inst
    m = Module(Ring(moduli), comps)
    for n in enumerate_submodules(m):
        if not n.is_proper:
            continue
        s = set(n.elements)
        assert is_classical_2_absorbing(n) == oracles.c2a(moduli, comps, s)
        assert is_classical_prime(n) == oracles.classical_prime(moduli, comps, s)
        assert is_prime_submodule(n) == oracles.prime(moduli, comps, s)
        assert is_2_absorbing_submodule(n) == oracles.two_absorbing(moduli, comps, s)
        # colon characterization via a separate, tuple-only route
        colons = [oracles.colon(moduli, comps, s, x) for x in m.elements if x not in s]
        assert is_classical_2_absorbing(n) == all(oracles.two_absorbing_ideal(moduli, c) for c in colons)


@settings(max_examples=16, deadline=None)
@given(instances)
def test_witnesses_replay_and_implications(inst):
    moduli, comps = inst
    m = Module(Ring(moduli), comps)
    for r in classify_all(m):
        f = r.flags
        assert not f["prime"] or f["classical_prime"]
        assert not f["classical_prime"] or f["classical_2_absorbing"]
        assert not f["two_absorbing"] or f["classical_2_absorbing"]
        assert not f["classical_2_absorbing"] or f["n_absorbing"][4]
        for name in FLAGS:
            if not f[name]:
                assert replay(name, r.submodule, r.witnesses[name])


def test_replay_rejects_bogus_witness():
    n = cyc(6).zero_submodule()
    assert not replay("classical_2_absorbing", n, {"scalars": [[1], [1], [1]], "element": [1]})
    assert prime_witness(n) is not None


def test_main_examples():
    z8 = cyc(8)
    assert evaluate_main_conditions(sub(z8, 4)).conditions == (True,) * 10
    assert evaluate_main_conditions(z8.zero_submodule()).conditions == (False,) * 10
    assert evaluate_main2_conditions(sub(z8, 4)).conditions == (True,) * 10
    with pytest.raises(ImproperInputError):
        evaluate_main_conditions(z8.whole())
    with pytest.raises(ImproperInputError):
        evaluate_main2_conditions(z8.whole())


@settings(max_examples=12, deadline=None)
@given(instances)
def test_main_conditions_agree(inst):
    moduli, comps = inst
    m = Module(Ring(moduli), comps)
    if m.cardinality > 16:
        return
    for n in enumerate_submodules(m):
        if n.is_proper:
            vec = evaluate_main_conditions(n)
            assert vec.all_equal
            assert vec.conditions[0] == c2a_by_colon_ideals(n)
            if is_prime_submodule(n):
                assert all(vec.conditions)


def test_m_closed_examples():
    z8 = cyc(8)
    s = [x for x in z8.elements if x not in ((0,), (4,))]
    assert is_c2a_m_closed(z8, s)
    assert not is_c2a_m_closed(z8, z8.elements[1:])
    assert [p.label() for p in maximal_disjoint_submodules(z8, s)] == ["<4>"]
    z6 = cyc(6)
    assert [p.label() for p in maximal_disjoint_submodules(z6, z6.elements[1:])] == ["0"]
    assert is_c2a_m_closed(z8, [])
    with pytest.raises(PreconditionError):
        maximal_disjoint_submodules(z8, [])
    with pytest.raises(PreconditionError):
        maximal_disjoint_submodules(z8, z8.elements[1:])
    with pytest.raises(InvalidInputError):
        is_c2a_m_closed(z8, [(0,)])


def test_witness_shape():
    w = classical_2_absorbing_witness(cyc(8).zero_submodule())
    assert set(w) == {"scalars", "element"} and len(w["scalars"]) == 3
