import json

import pytest

from c2a_workbench import harness as H
from c2a_workbench.classify import replay
from c2a_workbench.errors import UnknownIdentifierError

TINY = H.InstanceFamily(max_modulus=8, max_pair_modulus=3, max_module=8)


def ids(family):
    return [i.id for i in H.generate_instances(family)]


def test_generation_is_deterministic_and_duplicate_free():
    a, b = ids(TINY), ids(TINY)
    assert a == b and len(a) == len(set(a))
    assert a[:3] == ["Z2/Z2", "Z2/Z2+Z2", "Z2/Z2+Z2+Z2"]
    # invariant factors: Z2+Z3 never appears separately from Z6
    assert "Z6/Z6" in a and "Z6/Z2+Z3" not in a


def test_generation_bounds():
    for inst in H.generate_instances(TINY):
        assert inst.module.cardinality <= 8
        assert all(n <= 8 for n in inst.ring.moduli)
        if len(inst.ring.moduli) > 1:
            assert max(inst.ring.moduli) <= 3


def test_cursor_resumes_stream():
    full = ids(TINY)
    assert ids(H.InstanceFamily(**{**TINY.to_json(), "extra_rings": (), "rings": (), "cursor": 5})) == full[5:]


def test_zero_bound_is_empty():
    assert ids(H.InstanceFamily(max_module=0)) == []
    assert ids(H.InstanceFamily(max_modulus=1, max_coords=1)) == []


def test_empty_family_suite_passes():
    rep = H.run_suite("T-MAIN", H.InstanceFamily(max_module=0))
    assert rep.passed and rep.instances == 0


def test_unknown_suite():
    with pytest.raises(UnknownIdentifierError):
        H.run_suite("NOPE")
    with pytest.raises(UnknownIdentifierError):
        H.search_separating("c2a", "nope", TINY)


@pytest.mark.parametrize("suite", sorted(H.SUITES))
def test_suites_pass_on_small_family(suite):
    family = H.default_family(suite)
    small = H.InstanceFamily(**{**family.to_json(), "max_module": 8, "max_modulus": 8,
                                "extra_rings": family.extra_rings, "rings": ()})
    rep = H.run_suite(suite, small)
    assert rep.passed, rep.failures[:3]
    assert rep.instances > 0
    json.dumps(rep.to_json())


def test_prod_suite_example_instance():
    rep = H.run_suite("T-PROD", H.InstanceFamily(rings=((2, 3),), max_module=6))
    assert rep.passed
    dp_inst = next(i for i in H.generate_instances(H.InstanceFamily(rings=((2, 3),))) if i.id == "Z2xZ3/Z2@0+Z3@1")
    assert H.c2a(dp_inst.module.zero_submodule())


def test_report_json_is_reproducible():
    a = H.run_suite("T-SEP", TINY).to_json()
    b = H.run_suite("T-SEP", TINY).to_json()
    assert json.dumps(a) == json.dumps(b)
    assert "wall_time" not in a


def test_search_witnesses_replay():
    for left, right in (("c2a", "classical-prime"), ("2abs", "prime")):
        res = H.search_separating(left, right, TINY)
        assert res["found"]
        inst = next(i for i in H.generate_instances(TINY) if i.id == res["instance"])
        n = next(s for s in H.proper_subs(inst.module) if s.label() == res["submodule"]["label"])
        assert replay(res["right"], n, res["right_witness"])


def test_search_on_z6_finds_zero_submodule():
    for left, right in (("c2a", "classical-prime"), ("2abs", "prime")):
        res = H.search_separating(left, right, H.InstanceFamily(rings=((6,),)))
        assert res["instance"] == "Z6/Z6" and res["submodule"]["label"] == "0"


def test_search_exhaustion_certificate():
    res = H.search_separating("prime", "c2a", TINY)
    assert not res["found"]
    assert res["instances"] == ids(TINY)
    assert res["instances_checked"] == len(res["instances"])


def test_truncations():
    rows = H.example_truncations()
    assert len(rows) == 4
    assert all(not r["c2a"] and r["replays"] for r in rows)
