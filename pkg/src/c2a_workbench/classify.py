"""Submodule classifications as direct quantifier loops over finite tables.

Every predicate comes in two forms: ``*_witness(n)`` returns the first
violating tuple (scalars, element) or None, and ``is_*(n)`` is the boolean.
Witnesses are found with numpy over the precomputed action tables; the
``replay`` function re-checks a witness with plain tuple arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ImproperInputError, InvalidInputError, PreconditionError
from .module import (
    FiniteModule,
    Submodule,
    _colon_ideal_idx,
    annihilator_of,
    enumerate_submodules,
    ideal_times,
)
from .ring import (
    Ideal,
    absorbing_ideal_witness,
    enumerate_ideals,
    ideal_combine,
    is_n_absorbing_ideal,
    is_prime_ideal,
    iter_bits,
    mask_of,
)

FLAGS = ("prime", "classical_prime", "two_absorbing", "classical_2_absorbing")


def _require_proper(n: Submodule):
    if not n.is_proper:
        raise ImproperInputError(f"submodule {n} of {n.module} is not proper")


def _in_n(n: Submodule) -> np.ndarray:
    """inN[r, x] is True iff r*x lies in N."""
    return n.member[n.module.act_table]


def _ann_member(n: Submodule, in_n: np.ndarray) -> np.ndarray:
    return in_n.all(axis=1)


def _witness(n: Submodule, scalars, x) -> dict:
    m = n.module
    return {
        "scalars": [list(m.ring.elements[int(s)]) for s in scalars],
        "element": list(m.elements[int(x)]),
    }


# ---------------------------------------------------------------- predicates


def prime_witness(n: Submodule):
    """am in N with m not in N and a not in (N:M)."""
    _require_proper(n)
    in_n = _in_n(n)
    ann = _ann_member(n, in_n)
    viol = in_n & ~n.member[None, :] & ~ann[:, None]
    hit = np.argwhere(viol)
    return _witness(n, hit[0][:1], hit[0][1]) if len(hit) else None


def classical_prime_witness(n: Submodule):
    """abm in N with am, bm not in N."""
    _require_proper(n)
    in_n = _in_n(n)
    mt = n.module.ring.mul_table
    viol = in_n[mt] & ~in_n[:, None, :] & ~in_n[None, :, :]
    hit = np.argwhere(viol)
    return _witness(n, hit[0][:2], hit[0][2]) if len(hit) else None


def two_absorbing_witness(n: Submodule):
    """abm in N with am, bm not in N and ab not in (N:M)."""
    _require_proper(n)
    in_n = _in_n(n)
    ann = _ann_member(n, in_n)
    mt = n.module.ring.mul_table
    viol = in_n[mt] & ~in_n[:, None, :] & ~in_n[None, :, :] & ~ann[mt][:, :, None]
    hit = np.argwhere(viol)
    return _witness(n, hit[0][:2], hit[0][2]) if len(hit) else None


def classical_2_absorbing_witness(n: Submodule):
    """abcm in N with abm, acm, bcm all outside N."""
    _require_proper(n)
    in_n = _in_n(n)
    mt = n.module.ring.mul_table
    ab = in_n[mt]  # (a, b, m)
    abc = in_n[mt[mt]]  # mt[mt][a, b, c] = (ab)c
    viol = abc & ~ab[:, :, None, :] & ~ab[:, None, :, :] & ~ab[None, :, :, :]
    hit = np.argwhere(viol)
    return _witness(n, hit[0][:3], hit[0][3]) if len(hit) else None


def n_absorbing_witness(n: Submodule, k: int):
    """a1...ak m in N with a1...ak outside (N:M) and no (k-1)-subproduct times m in N."""
    _require_proper(n)
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    ring = n.module.ring
    in_n = _in_n(n)
    ann = _ann_member(n, in_n)
    for combo in itertools.combinations_with_replacement(range(ring.cardinality), k):
        full = ring.prod_index(combo)
        if ann[full]:
            continue
        bad = in_n[full].copy()
        for j in range(k):
            bad &= ~in_n[ring.prod_index(combo[:j] + combo[j + 1:])]
        hit = np.flatnonzero(bad)
        if len(hit):
            return _witness(n, combo, hit[0])
    return None


def is_prime_submodule(n: Submodule) -> bool:
    return prime_witness(n) is None


def is_classical_prime(n: Submodule) -> bool:
    return classical_prime_witness(n) is None


def is_2_absorbing_submodule(n: Submodule) -> bool:
    return two_absorbing_witness(n) is None


def is_n_absorbing_submodule(n: Submodule, k: int) -> bool:
    return n_absorbing_witness(n, k) is None


def is_classical_2_absorbing(n: Submodule) -> bool:
    return classical_2_absorbing_witness(n) is None


def colon_profile(n: Submodule) -> dict:
    """Map each element outside N to the ideal (N :_R m)."""
    m = n.module
    return {
        m.elements[x]: _colon_ideal_idx(n, [x])
        for x in range(m.cardinality)
        if not n.mask >> x & 1
    }


def c2a_by_colon_ideals(n: Submodule) -> bool:
    """Characterization through element colons: every (N:m), m outside N, is 2-absorbing."""
    _require_proper(n)
    return all(absorbing_ideal_witness(i, 2) is None for i in colon_profile(n).values())


# ---------------------------------------------------------------- replay


def replay(flag: str, n: Submodule, witness: dict) -> bool:
    """True iff ``witness`` really violates the definition behind ``flag``.

    Uses tuple arithmetic only, independent of the table-based search.
    """
    m = n.module
    ring = m.ring
    scal = [tuple(s) for s in witness["scalars"]]
    x = tuple(witness["element"])
    whole = m.elements

    def times(rs, y):
        for r in rs:
            y = m.act(r, y)
        return y

    def in_ann(rs):
        p = ring.elements[ring.one]
        for r in rs:
            p = ring.mul(p, r)
        return all(m.act(p, y) in n for y in whole)

    if flag == "prime":
        (a,) = scal
        return times([a], x) in n and x not in n and not in_ann([a])
    if flag == "classical_prime":
        a, b = scal
        return times([a, b], x) in n and times([a], x) not in n and times([b], x) not in n
    if flag == "two_absorbing":
        a, b = scal
        return (
            times([a, b], x) in n
            and times([a], x) not in n
            and times([b], x) not in n
            and not in_ann([a, b])
        )
    if flag == "classical_2_absorbing":
        a, b, c = scal
        return times([a, b, c], x) in n and all(
            times(pair, x) not in n for pair in ([a, b], [a, c], [b, c])
        )
    if flag.startswith("n_absorbing_"):
        k = len(scal)
        if times(scal, x) not in n or in_ann(scal):
            return False
        return all(times(scal[:j] + scal[j + 1:], x) not in n for j in range(k))
    raise InvalidInputError(f"unknown flag {flag!r}")


# ---------------------------------------------------------------- records


@dataclass
class ClassificationRecord:
    submodule: Submodule
    flags: dict
    witnesses: dict
    colon_profile: dict
    parents: list = field(default_factory=list)
    index: int = 0

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "submodule": self.submodule.to_json(),
            "label": self.submodule.label(),
            "flags": {k: (v if not isinstance(v, dict) else {str(a): b for a, b in v.items()})
                      for k, v in self.flags.items()},
            "witnesses": self.witnesses,
            "colon_profile": [
                {"element": list(e), "ideal": [list(r) for r in i.elements]}
                for e, i in self.colon_profile.items()
            ],
            "parents": self.parents,
        }


def hasse_parents(subs: Sequence[Submodule]) -> list[list[int]]:
    """For each submodule, indices of the submodules covering it."""
    out = []
    for i, s in enumerate(subs):
        above = [j for j, t in enumerate(subs) if s < t]
        out.append([j for j in above if not any(subs[k] < subs[j] for k in above if k != j)])
    return out


def classify_submodule(n: Submodule, max_n: int = 4) -> ClassificationRecord:
    finders = {
        "prime": prime_witness,
        "classical_prime": classical_prime_witness,
        "two_absorbing": two_absorbing_witness,
        "classical_2_absorbing": classical_2_absorbing_witness,
    }
    flags, witnesses = {}, {}
    for name, fn in finders.items():
        w = fn(n)
        flags[name] = w is None
        if w is not None:
            witnesses[name] = w
    nabs = {}
    for k in range(3, max_n + 1):
        w = n_absorbing_witness(n, k)
        nabs[k] = w is None
        if w is not None:
            witnesses[f"n_absorbing_{k}"] = w
    flags["n_absorbing"] = {2: flags["two_absorbing"], **nabs}
    profile = colon_profile(n)
    dual = all(absorbing_ideal_witness(i, 2) is None for i in profile.values())
    assert dual == flags["classical_2_absorbing"], f"colon characterization disagrees on {n}"
    return ClassificationRecord(n, flags, witnesses, profile)


def classify_all(m: FiniteModule, max_n: int = 4) -> list[ClassificationRecord]:
    """One record per proper submodule, in lattice order, with Hasse parent links."""
    subs = enumerate_submodules(m)
    parents = hasse_parents(subs)
    records = []
    for i, s in enumerate(subs):
        if not s.is_proper:
            continue
        rec = classify_submodule(s, max_n)
        rec.index = i
        rec.parents = parents[i]
        records.append(rec)
    return records


def minimal_classical_2_absorbing(m: FiniteModule) -> list[Submodule]:
    c2a = [s for s in enumerate_submodules(m) if s.is_proper and is_classical_2_absorbing(s)]
    return [s for s in c2a if not any(t < s for t in c2a)]


# ---------------------------------------------------------------- condition vectors


@dataclass
class ConditionVector:
    conditions: tuple
    module: FiniteModule
    submodule: Submodule
    theorem: str = "main"

    @property
    def all_equal(self) -> bool:
        return len(set(self.conditions)) == 1

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "conditions": list(self.conditions)}


class _Tables:
    """Raw tables shared by the condition loops (data only, no logic)."""

    def __init__(self, n: Submodule):
        m = n.module
        self.n = n
        self.ring = m.ring
        self.R = m.ring.cardinality
        self.M = m.cardinality
        self.mul = m.ring.mul_table
        self.act = m.act_table
        self.member = n.member
        self.in_n = n.member[m.act_table]
        # element colon (N :_R x) as a bitmask over ring indices
        self.colon = [mask_of(np.flatnonzero(self.in_n[:, x]).tolist()) for x in range(self.M)]
        self.ideals = enumerate_ideals(m.ring)
        self.ideal_idx = [np.array(i.indices, dtype=np.int64) for i in self.ideals]
        pos = {i.mask: k for k, i in enumerate(self.ideals)}
        self.iprod = {}
        for a, b in itertools.product(range(len(self.ideals)), repeat=2):
            self.iprod[a, b] = pos[ideal_combine(self.ideals[a], self.ideals[b], "product").mask]
        self.outside = [x for x in range(self.M) if not self.member[x]]


def _colon_of(t: _Tables, xs) -> int:
    acc = (1 << t.R) - 1
    for x in xs:
        acc &= t.colon[int(x)]
    return acc


def _main1(t: _Tables) -> bool:
    return classical_2_absorbing_witness(t.n) is None


def _main2(t: _Tables) -> bool:
    # (N:_M abc) = (N:_M ab) u (N:_M ac) u (N:_M bc) as element sets
    colm = [mask_of(np.flatnonzero(t.in_n[r]).tolist()) for r in range(t.R)]
    mul = t.mul
    for a, b, c in itertools.combinations_with_replacement(range(t.R), 3):
        ab, ac, bc = mul[a, b], mul[a, c], mul[b, c]
        if colm[mul[ab, c]] != colm[ab] | colm[ac] | colm[bc]:
            return False
    return True


def _main3(t: _Tables) -> bool:
    act, mul = t.act, t.mul
    for a, b in itertools.combinations_with_replacement(range(t.R), 2):
        for x in range(t.M):
            abx = act[mul[a, b], x]
            if t.member[abx]:
                continue
            if t.colon[abx] != t.colon[act[a, x]] | t.colon[act[b, x]]:
                return False
    return True


def _main4(t: _Tables) -> bool:
    act, mul = t.act, t.mul
    for a, b in itertools.combinations_with_replacement(range(t.R), 2):
        for x in range(t.M):
            abx = act[mul[a, b], x]
            if t.member[abx]:
                continue
            if t.colon[abx] not in (t.colon[act[a, x]], t.colon[act[b, x]]):
                return False
    return True


def _main5(t: _Tables) -> bool:
    act, mul, member = t.act, t.mul, t.member
    for a, b in itertools.combinations_with_replacement(range(t.R), 2):
        ab = mul[a, b]
        for ii in t.ideal_idx:
            # one boolean per m, quantified over all of M at once
            lhs = member[act[mul[ab, ii]]].all(axis=0)
            ok = ~lhs | member[act[ab]] | member[act[mul[a, ii]]].all(axis=0) | member[act[mul[b, ii]]].all(axis=0)
            if not ok.all():
                return False
    return True


def _main6(t: _Tables) -> bool:
    act, mul, member = t.act, t.mul, t.member
    for a in range(t.R):
        for ii in t.ideal_idx:
            for x in range(t.M):
                aix = act[mul[a, ii], x]
                if member[aix].all():
                    continue
                lhs = _colon_of(t, aix)
                if lhs != t.colon[act[a, x]] and lhs != _colon_of(t, act[ii, x]):
                    return False
    return True


def _main7(t: _Tables) -> bool:
    act, mul, member = t.act, t.mul, t.member
    k = len(t.ideals)
    for a in range(t.R):
        for i, j in itertools.combinations_with_replacement(range(k), 2):
            ij = t.ideal_idx[t.iprod[i, j]]
            lhs = member[act[mul[a, ij]]].all(axis=0)
            ok = (
                ~lhs
                | member[act[mul[a, t.ideal_idx[i]]]].all(axis=0)
                | member[act[mul[a, t.ideal_idx[j]]]].all(axis=0)
                | member[act[ij]].all(axis=0)
            )
            if not ok.all():
                return False
    return True


def _main8(t: _Tables) -> bool:
    act, member = t.act, t.member
    k = len(t.ideals)
    for i, j in itertools.combinations_with_replacement(range(k), 2):
        ij = t.ideal_idx[t.iprod[i, j]]
        for x in range(t.M):
            ijx = act[ij, x]
            if member[ijx].all():
                continue
            lhs = _colon_of(t, ijx)
            if lhs != _colon_of(t, act[t.ideal_idx[i], x]) and lhs != _colon_of(t, act[t.ideal_idx[j], x]):
                return False
    return True


def _main9(t: _Tables) -> bool:
    act, member = t.act, t.member
    k = len(t.ideals)
    for i, j, l in itertools.combinations_with_replacement(range(k), 3):
        ij, il, jl = t.iprod[i, j], t.iprod[i, l], t.iprod[j, l]
        lhs = member[act[t.ideal_idx[t.iprod[ij, l]]]].all(axis=0)
        ok = ~lhs
        for p in (ij, il, jl):
            ok = ok | member[act[t.ideal_idx[p]]].all(axis=0)
        if not ok.all():
            return False
    return True


def _main10(t: _Tables) -> bool:
    for x in t.outside:
        if not is_n_absorbing_ideal(_colon_ideal_idx(t.n, [x]), 2):
            return False
    return True


MAIN_CONDITIONS = (_main1, _main2, _main3, _main4, _main5, _main6, _main7, _main8, _main9, _main10)


def evaluate_main_conditions(n: Submodule) -> ConditionVector:
    """The ten element/ideal-quantified characterizations, each brute-forced on its own."""
    _require_proper(n)
    t = _Tables(n)
    return ConditionVector(tuple(f(t) for f in MAIN_CONDITIONS), n.module, n, "main")


# -- submodule-quantified conditions (L ranges over all submodules)


class _SubTables(_Tables):
    def __init__(self, n: Submodule):
        super().__init__(n)
        self.subs = [np.array(s.indices, dtype=np.int64) for s in enumerate_submodules(n.module)]
        self.subs_outside = [s for s in self.subs if not self.member[s].all()]
        self.sub_matrix = np.zeros((len(self.subs), self.M), dtype=bool)
        for k, s in enumerate(self.subs):
            self.sub_matrix[k, s] = True

        # single[r, L]: r L inside N
        self.single = ~(self.sub_matrix[None, :, :] & ~self.in_n[:, None, :]).any(axis=2)

    def scaled_in_n(self, scalars) -> np.ndarray:
        """For each L: is (scalars) L contained in N."""
        return self.single[np.asarray(scalars).ravel()].all(axis=0)


def _main2_1(t: _SubTables) -> bool:
    return classical_2_absorbing_witness(t.n) is None


def _main2_2(t: _SubTables) -> bool:
    colm = [mask_of(np.flatnonzero(t.in_n[r]).tolist()) for r in range(t.R)]
    mul = t.mul
    for a, b, c in itertools.combinations_with_replacement(range(t.R), 3):
        ab, ac, bc = mul[a, b], mul[a, c], mul[b, c]
        if colm[mul[ab, c]] not in (colm[ab], colm[ac], colm[bc]):
            return False
    return True


def _main2_3(t: _SubTables) -> bool:
    mul, single = t.mul, t.single
    ab = mul[:, :, None]
    ac = mul[:, None, :]
    bc = mul[None, :, :]
    abc = mul[mul]  # abc[a, b, c] = (ab)c
    # every (a, b, c) at once; last axis runs over L
    bad = single[abc] & ~(single[ab] | single[ac] | single[bc])
    return not bad.any()


def _main2_4(t: _SubTables) -> bool:
    act, mul, member = t.act, t.mul, t.member
    for a, b in itertools.combinations_with_replacement(range(t.R), 2):
        for L in t.subs:
            abl = act[mul[a, b], L]
            if member[abl].all():
                continue
            lhs = _colon_of(t, abl)
            if lhs != _colon_of(t, act[a, L]) and lhs != _colon_of(t, act[b, L]):
                return False
    return True


def _main2_5(t: _SubTables) -> bool:
    mul = t.mul
    for a, b in itertools.combinations_with_replacement(range(t.R), 2):
        ab = mul[a, b]
        for ii in t.ideal_idx:
            lhs = t.scaled_in_n(mul[ab, ii])
            ok = ~lhs | t.scaled_in_n([ab]) | t.scaled_in_n(mul[a, ii]) | t.scaled_in_n(mul[b, ii])
            if not ok.all():
                return False
    return True


def _main2_6(t: _SubTables) -> bool:
    act, mul, member = t.act, t.mul, t.member
    for a in range(t.R):
        for ii in t.ideal_idx:
            for L in t.subs:
                ail = act[np.ix_(mul[a, ii], L)].ravel()
                if member[ail].all():
                    continue
                lhs = _colon_of(t, ail)
                if lhs != _colon_of(t, act[a, L]) and lhs != _colon_of(t, act[np.ix_(ii, L)].ravel()):
                    return False
    return True


def _main2_7(t: _SubTables) -> bool:
    mul = t.mul
    k = len(t.ideals)
    for a in range(t.R):
        for i, j in itertools.combinations_with_replacement(range(k), 2):
            ij = t.ideal_idx[t.iprod[i, j]]
            lhs = t.scaled_in_n(mul[a, ij])
            ok = (
                ~lhs
                | t.scaled_in_n(mul[a, t.ideal_idx[i]])
                | t.scaled_in_n(mul[a, t.ideal_idx[j]])
                | t.scaled_in_n(ij)
            )
            if not ok.all():
                return False
    return True


def _main2_8(t: _SubTables) -> bool:
    act, member = t.act, t.member
    k = len(t.ideals)
    for i, j in itertools.combinations_with_replacement(range(k), 2):
        ij = t.ideal_idx[t.iprod[i, j]]
        for L in t.subs:
            ijl = act[np.ix_(ij, L)].ravel()
            if member[ijl].all():
                continue
            lhs = _colon_of(t, ijl)
            if lhs != _colon_of(t, act[np.ix_(t.ideal_idx[i], L)].ravel()) and lhs != _colon_of(
                t, act[np.ix_(t.ideal_idx[j], L)].ravel()
            ):
                return False
    return True


def _main2_9(t: _SubTables) -> bool:
    k = len(t.ideals)
    for i, j, l in itertools.combinations_with_replacement(range(k), 3):
        ij, il, jl = t.iprod[i, j], t.iprod[i, l], t.iprod[j, l]
        ok = ~t.scaled_in_n(t.ideal_idx[t.iprod[ij, l]])
        for p in (ij, il, jl):
            ok = ok | t.scaled_in_n(t.ideal_idx[p])
        if not ok.all():
            return False
    return True


def _main2_10(t: _SubTables) -> bool:
    for L in t.subs_outside:
        if not is_n_absorbing_ideal(_colon_ideal_idx(t.n, L.tolist()), 2):
            return False
    return True


MAIN2_CONDITIONS = (
    _main2_1, _main2_2, _main2_3, _main2_4, _main2_5,
    _main2_6, _main2_7, _main2_8, _main2_9, _main2_10,
)


def evaluate_main2_conditions(n: Submodule) -> ConditionVector:
    """Submodule-quantified conditions, reported raw with no equivalence assumed."""
    _require_proper(n)
    t = _SubTables(n)
    return ConditionVector(tuple(f(t) for f in MAIN2_CONDITIONS), n.module, n, "main2")


# ---------------------------------------------------------------- m-closed sets


def _element_mask(m: FiniteModule, s) -> int:
    return mask_of(m.idx(x) for x in s)


def is_c2a_m_closed(m: FiniteModule, s, max_size: int = 64) -> bool:
    """Literal evaluation of the (K + IJL) intersection condition.

    For all ideals I, J, Q and submodules K, L: if K+IJL, K+IQL and K+JQL all
    meet S then K+IJQL meets S.  An empty S satisfies this vacuously.
    """
    from .errors import SizeLimitError

    if m.cardinality > max_size:
        raise SizeLimitError(f"m-closed check limited to modules of size <= {max_size}")
    smask = _element_mask(m, s)
    if smask & 1:
        raise InvalidInputError("S must not contain 0")
    return _m_closed_mask(m, smask)


def _m_closed_mask(m: FiniteModule, smask: int) -> bool:
    ring = m.ring
    ideals = enumerate_ideals(ring)
    subs = enumerate_submodules(m)
    pos = {i.mask: k for k, i in enumerate(ideals)}
    prod = {}
    for a, b in itertools.product(range(len(ideals)), repeat=2):
        prod[a, b] = pos[ideal_combine(ideals[a], ideals[b], "product").mask]
    in_s = np.array([bool(smask >> x & 1) for x in range(m.cardinality)])
    sub_matrix = np.array([s.member for s in subs])
    by_mask, by_pair = {}, {}

    def meets(x, li):
        """For every K at once: does K + XL meet S."""
        if (x, li) not in by_pair:
            key = ideal_times(ideals[x], subs[li]).mask
            if key not in by_mask:
                xs = np.fromiter(iter_bits(key), dtype=np.int64)
                reach = in_s[m.add_table[:, xs]].any(axis=1)  # k + (something in XL) lies in S
                by_mask[key] = (sub_matrix & reach).any(axis=1)
            by_pair[x, li] = by_mask[key]
        return by_pair[x, li]

    for i, j, q in itertools.combinations_with_replacement(range(len(ideals)), 3):
        ij, iq, jq = prod[i, j], prod[i, q], prod[j, q]
        ijq = prod[ij, q]
        for li in range(len(subs)):
            if (meets(ij, li) & meets(iq, li) & meets(jq, li) & ~meets(ijq, li)).any():
                return False
    return True


def maximal_disjoint_submodules(m: FiniteModule, s) -> list[Submodule]:
    """Inclusion-maximal submodules disjoint from a nonempty m-closed S."""
    smask = _element_mask(m, s)
    if not smask:
        raise PreconditionError("S must be nonempty (otherwise M itself is the only maximal element)")
    if not is_c2a_m_closed(m, s):
        raise PreconditionError("S is not classical 2-absorbing m-closed")
    disjoint = [t for t in enumerate_submodules(m) if not t.mask & smask]
    return [t for t in disjoint if not any(t < u for u in disjoint)]
