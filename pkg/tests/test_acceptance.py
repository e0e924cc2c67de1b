"""One test per acceptance criterion; each prints a PASS/FAIL line.

The two full ``verify --suite all`` runs happen once per session in fresh
subprocesses and are shared by criteria 1, 5, 6, 8 and 9.
"""

import json
import subprocess
import sys
import time

import pytest

from c2a_workbench import harness as H
from c2a_workbench.classify import c2a_by_colon_ideals, replay

from .conftest import ACCEPTANCE

T_MAIN_LIMIT = 180.0
VERIFY_ALL_LIMIT = 600.0


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE.append(line)
    assert ok, line


def cli(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "c2a_workbench", *argv], capture_output=True, text=True, cwd=cwd)


@pytest.fixture(scope="session")
def verify_runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("verify")
    runs = []
    for k in (1, 2):
        t0 = time.perf_counter()
        proc = cli("verify", "--suite", "all", "--output", str(d / f"r{k}.json"), "--timings", str(d / f"t{k}.json"))
        wall = time.perf_counter() - t0
        runs.append({
            "code": proc.returncode,
            "stderr": proc.stderr,
            "wall": wall,
            "bytes": (d / f"r{k}.json").read_bytes(),
            "times": json.loads((d / f"t{k}.json").read_text())["wall_time"],
        })
    return runs


def suites(run):
    return {s["suite"]: s for s in json.loads(run["bytes"])["suites"]}


def test_criterion_1_main_conditions(verify_runs):
    r = suites(verify_runs[0])["T-MAIN"]
    fam = r["family"]
    t = verify_runs[0]["times"]["T-MAIN"]
    ok = (
        r["passed"] and not r["failures"] and r["instances"] > 0
        and fam["max_modulus"] == 12 and fam["max_pair_modulus"] == 4 and fam["max_module"] == 24
        and t <= T_MAIN_LIMIT
    )
    report(1, ok, f"T-MAIN {r['instances']} instances, {r['checks']} checks, "
                  f"{len(r['failures'])} failures, {t:.1f}s (limit {T_MAIN_LIMIT:.0f}s)")


def test_criterion_2_dual_oracle():
    family = H.default_family("T-MAIN")
    total = agree = 0
    for inst in H.generate_instances(family):
        for n in H.proper_subs(inst.module):
            total += 1
            agree += c2a_by_colon_ideals(n) == H.c2a(n)
    report(2, total > 0 and agree == total, f"definitional vs colon-ideal agree on {agree}/{total} proper submodules")


def test_criterion_3_implication_lattice():
    rep = H.run_suite("T-SEP")
    kinds = {"prime but not classical prime", "classical prime but not c2a", "2-absorbing but not c2a",
             "classical prime iff (2-absorbing and (N:M) prime) fails"}
    bad = [f for f in rep.failures if f["kind"] in kinds]
    report(3, rep.passed and not bad and rep.instances > 0,
           f"{rep.instances} instances, {rep.checks} checks, {len(rep.failures)} failures")


def test_criterion_4_example_truncations():
    rows = H.example_truncations()
    ok = len(rows) == 4 and all(not r["c2a"] and r["replays"] for r in rows)
    report(4, ok, "; ".join(f"p={r['p']} t={r['t']} {r['module']} N={r['submodule']} c2a={r['c2a']} "
                            f"witness replays={r['replays']}" for r in rows))


def test_criterion_5_tier_a_suites(verify_runs):
    s = suites(verify_runs[0])
    names = ["T-HOM", "T-MEET", "T-MIN", "T-RAD", "T-LOC", "T-MCLOSED", "T-PROD"]
    fails = {k: len(s[k]["failures"]) for k in names}
    wall = verify_runs[0]["wall"]
    ok = (verify_runs[0]["code"] == 0 and all(v == 0 for v in fails.values())
          and s["T-MCLOSED"]["family"]["max_module"] == 12 and wall <= VERIFY_ALL_LIMIT)
    report(5, ok, f"failures {fails}; verify-all wall time {wall:.1f}s (limit {VERIFY_ALL_LIMIT:.0f}s)")


def test_criterion_6_radical(verify_runs):
    r = suites(verify_runs[0])["T-RAD"]
    report(6, r["passed"] and r["checks"] > 0, f"T-RAD {r['checks']} checks, {len(r['failures'])} failures")


def test_criterion_7_searches():
    family = H.InstanceFamily()
    out = []
    ok = True
    for left, right in (("c2a", "classical-prime"), ("2abs", "prime")):
        res = H.search_separating(left, right, family)
        inst = next(i for i in H.generate_instances(family) if i.id == res["instance"])
        n = next(s for s in H.proper_subs(inst.module) if s.label() == res["submodule"]["label"])
        z6 = H.get_module((6,), ((0, 6),)).zero_submodule()
        z6_sep = H.holds(z6, H.PREDICATE_ALIASES[left]) and not H.holds(z6, H.PREDICATE_ALIASES[right])
        ok &= res["found"] and replay(res["right"], n, res["right_witness"]) and z6_sep
        out.append(f"{left} vs {right}: first witness {res['instance']} N={res['submodule']['label']}, "
                   f"Z6/(0) separates={z6_sep}")
    a = cli("search", "--left", "c2a", "--right", "2abs", "--max-module", "36")
    b = cli("search", "--left", "c2a", "--right", "2abs", "--max-module", "36")
    ok &= a.returncode in (0, 3) and a.returncode == b.returncode and a.stdout == b.stdout
    outcome = "witness " + json.loads(a.stdout)["instance"] if a.returncode == 0 else "exhausted"
    out.append(f"c2a vs 2abs at |M|<=36: exit {a.returncode} ({outcome}), reproducible={a.stdout == b.stdout}")
    report(7, ok, "; ".join(out))


def test_criterion_8_tier_b(verify_runs):
    s1, s2 = suites(verify_runs[0]), suites(verify_runs[1])
    names = ["T-MAIN2", "T-FLAT", "T-MULT"]
    fails = {k: len(s1[k]["failures"]) for k in names}
    findings = {k: len(s1[k]["findings"]) for k in names}
    same = all(json.dumps(s1[k]) == json.dumps(s2[k]) for k in names)
    ok = all(v == 0 for v in fails.values()) and same and all(s1[k]["checks"] > 0 for k in names)
    report(8, ok, f"backward-direction failures {fails}; forward findings {findings}; reproducible={same}")


def test_criterion_9_determinism(verify_runs):
    a, b = verify_runs
    same = a["bytes"] == b["bytes"]
    report(9, same and a["code"] == b["code"] == 0,
           f"two verify-all reports byte-identical={same} ({len(a['bytes'])} bytes), exit codes {a['code']}/{b['code']}")
