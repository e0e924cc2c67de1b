"""Exhaustive instance generation, theorem suites and separation searches.

Tier A suites assert: any failure is a bug (or a false theorem) and makes
``verify`` exit 1.  Tier B suites concern statements whose hypothesis (every
module equal to a finite union of submodules equals one of them) fails for
every finite ring here; they assert only the directions that do not need it
and record everything else as findings.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import asdict, dataclass, field, replace
from functools import reduce

import numpy as np

from . import classify as C
from .errors import UnknownIdentifierError
from .module import (
    Module,
    Submodule,
    hom_tables,
    annihilator_of,
    enumerate_submodules,
    is_multiplication_module,
    localize,
    multiplicative_closure,
    quotient_module,
    split_by_coordinate,
    submodule_from_mask,
    tensor_free,
    zero_divisors_on_quotient,
)
from .ring import (
    Ring,
    absorbing_ideal_witness,
    enumerate_ideals,
    ideal_combine,
    is_prime_ideal,
    iter_bits,
    minimal_primes_over,
    radical,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- instances


@dataclass(frozen=True)
class InstanceFamily:
    """Bounds of an exhaustive instance universe.

    Single-coordinate rings Z_n use ``max_modulus``; rings with two or more
    coordinates use ``max_pair_modulus`` per coordinate.  ``extra_rings`` adds
    specific moduli lists (e.g. the three-factor Z2 x Z3 x Z5); a nonempty
    ``rings`` replaces the ring universe outright.  ``cursor`` skips that many
    instances from the front of the stream.
    """

    max_modulus: int = 16
    max_pair_modulus: int = 4
    max_coords: int = 2
    max_module: int = 36
    max_components: int = 5
    extra_rings: tuple = ()
    multi_coordinate_only: bool = False
    rings: tuple = ()
    cursor: int = 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["extra_rings"] = [list(r) for r in self.extra_rings]
        d["rings"] = [list(r) for r in self.rings]
        return d


@dataclass(frozen=True)
class Instance:
    ring: Ring
    module: Module

    @property
    def id(self) -> str:
        return f"{self.ring}/{self.module}"

    def to_json(self) -> dict:
        return {"id": self.id, "module": self.module.to_json()}


_RINGS: dict = {}
_MODULES: dict = {}


def get_ring(moduli) -> Ring:
    moduli = tuple(moduli)
    if moduli not in _RINGS:
        _RINGS[moduli] = Ring(moduli)
    return _RINGS[moduli]


def get_module(moduli, components) -> Module:
    """Module objects are shared so per-module caches survive across suites."""
    key = (tuple(moduli), tuple(components))
    if key not in _MODULES:
        _MODULES[key] = Module(get_ring(moduli), components)
    return _MODULES[key]


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def family_rings(family: InstanceFamily) -> list[tuple]:
    if family.rings:
        return [tuple(r) for r in family.rings]
    rings = []
    if not family.multi_coordinate_only:
        rings += [(n,) for n in range(2, family.max_modulus + 1)]
    for k in range(2, family.max_coords + 1):
        rings += list(itertools.combinations_with_replacement(range(2, family.max_pair_modulus + 1), k))
    for r in family.extra_rings:
        if tuple(r) not in rings:
            rings.append(tuple(r))
    return rings


def _divisor_chains(n: int, max_len: int, max_size: int) -> list[tuple]:
    """Invariant-factor lists d1 | d2 | ... | dk | n (k may be 0)."""
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for chain in frontier:
            if len(chain) == max_len:
                continue
            size = reduce(lambda x, y: x * y, chain, 1)
            for d in _divisors(n):
                if chain and d % chain[-1]:
                    continue
                if size * d <= max_size:
                    nxt.append(chain + (d,))
        out += nxt
        frontier = nxt
    return out


def generate_instances(family: InstanceFamily):
    """Deterministic stream of (ring, module) instances within bounds.

    Modules are listed once per isomorphism class: per ring coordinate the
    cyclic orders form an invariant-factor chain.  Order: rings as in
    ``family_rings``, then modules by (cardinality, components).
    """
    count = 0
    for moduli in family_rings(family):
        per_coord = [_divisor_chains(n, family.max_components, family.max_module) for n in moduli]
        mods = []
        for chains in itertools.product(*per_coord):
            combo = tuple((c, d) for c, chain in enumerate(chains) for d in chain)
            size = reduce(lambda x, y: x * y, (d for _, d in combo), 1)
            if combo and len(combo) <= family.max_components and size <= family.max_module:
                mods.append((size, combo))
        mods.sort()
        for _, combo in mods:
            if count >= family.cursor:
                yield Instance(get_ring(moduli), get_module(moduli, combo))
            count += 1


# ---------------------------------------------------------------- cached facts

_FINDERS = {
    "prime": C.prime_witness,
    "classical_prime": C.classical_prime_witness,
    "two_absorbing": C.two_absorbing_witness,
    "classical_2_absorbing": C.classical_2_absorbing_witness,
}

PREDICATE_ALIASES = {
    "prime": "prime",
    "classical-prime": "classical_prime",
    "classical_prime": "classical_prime",
    "2abs": "two_absorbing",
    "2-absorbing": "two_absorbing",
    "two_absorbing": "two_absorbing",
    "c2a": "classical_2_absorbing",
    "classical-2-absorbing": "classical_2_absorbing",
    "classical_2_absorbing": "classical_2_absorbing",
}


def witness(sub: Submodule, name: str):
    cache = sub.module.__dict__.setdefault("_witness_cache", {})
    key = (name, sub.mask)
    if key not in cache:
        cache[key] = _FINDERS[name](sub)
    return cache[key]


def holds(sub: Submodule, name: str) -> bool:
    return witness(sub, name) is None


def c2a(sub: Submodule) -> bool:
    return sub.is_proper and holds(sub, "classical_2_absorbing")


def proper_subs(m) -> list[Submodule]:
    return [s for s in enumerate_submodules(m) if s.is_proper]


# ---------------------------------------------------------------- reports


@dataclass
class SuiteReport:
    suite: str
    tier: str
    family: dict
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **details) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(details)
        return ok

    def to_json(self, timings: bool = False) -> dict:
        """Deterministic by default; wall time only on request."""
        d = {
            "suite": self.suite,
            "tier": self.tier,
            "passed": self.passed,
            "family": self.family,
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
            "findings": self.findings,
        }
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def _sub_json(s: Submodule) -> dict:
    return {"label": s.label(), "generators": [list(g) for g in s.generators]}


# ---------------------------------------------------------------- suites


def suite_main(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        for n in proper_subs(inst.module):
            vec = C.evaluate_main_conditions(n)
            dual = C.c2a_by_colon_ideals(n)
            details = {"instance": inst.id, "submodule": _sub_json(n), "conditions": list(vec.conditions)}
            rep.check(vec.all_equal, kind="conditions disagree", **details)
            rep.check(dual == vec.conditions[0], kind="colon characterization disagrees", **details)
            w = witness(n, "classical_2_absorbing")
            if w is not None:
                rep.check(C.replay("classical_2_absorbing", n, w), kind="witness does not replay", **details)


def suite_main_cor(family: InstanceFamily, rep: SuiteReport):
    seen = set()
    by_ring = {}
    for inst in generate_instances(family):
        by_ring.setdefault(inst.ring.moduli, []).append(inst)
    for moduli, insts in by_ring.items():
        ring = get_ring(moduli)
        rmod = get_module(moduli, tuple((c, n) for c, n in enumerate(moduli)))
        ideal_2abs = {}
        for i in enumerate_ideals(ring):
            if not i.is_proper:
                continue
            is2 = absorbing_ideal_witness(i, 2) is None
            ideal_2abs[i.mask] = is2
            sub = submodule_from_mask(rmod, i.mask)
            rep.check(c2a(sub) == is2, kind="ideal as submodule of R", ring=str(ring), ideal=repr(i))
        every = all(ideal_2abs.values())
        if every:
            for inst in insts:
                rep.instances += 1
                for n in proper_subs(inst.module):
                    rep.check(c2a(n), kind="all ideals 2-absorbing but submodule not c2a",
                              instance=inst.id, submodule=_sub_json(n))
        else:
            bad = [mask for mask, ok in ideal_2abs.items() if not ok]
            rep.instances += len(insts)
            rep.check(
                any(not c2a(submodule_from_mask(rmod, mask)) for mask in bad),
                kind="non-2-absorbing ideal but every submodule of R is c2a", ring=str(ring),
            )
        seen.add(moduli)


def _check_projection(rep: SuiteReport, inst: Instance, L: Submodule):
    m = inst.module
    q, p = quotient_module(m, L)
    qsubs = enumerate_submodules(q)
    above = [k for k in enumerate_submodules(m) if L <= k]
    images = {k.mask: p.image_mask(k) for k in above}
    ctx = {"instance": inst.id, "divisor": _sub_json(L)}
    rep.check(
        sorted(images.values()) == sorted(s.mask for s in qsubs) and len(set(images.values())) == len(above),
        kind="quotient correspondence is not a bijection", **ctx,
    )
    for k1, k2 in itertools.product(above, repeat=2):
        if (k1.mask & ~k2.mask == 0) != (images[k1.mask] & ~images[k2.mask] == 0):
            rep.check(False, kind="quotient correspondence not order preserving", **ctx)
            break
    qflags = {s.mask: c2a(s) for s in qsubs}
    for k in above:
        if not k.is_proper:
            continue
        rep.check(c2a(k) == qflags[images[k.mask]], kind="N c2a iff N/L c2a fails",
                  submodule=_sub_json(k), **ctx)
    _check_epimorphism(rep, p, ctx)


def _check_epimorphism(rep: SuiteReport, f, ctx: dict):
    src, tgt = f.source, f.target
    ker = f.kernel
    sflags = {s.mask: c2a(s) for s in enumerate_submodules(src)}
    for t in enumerate_submodules(tgt):
        if t.is_proper and c2a(t):
            rep.check(sflags[f.preimage_mask(t)], kind="preimage of c2a not c2a", target_sub=_sub_json(t), **ctx)
    tmask = {s.mask: s for s in enumerate_submodules(tgt)}
    for s in enumerate_submodules(src):
        if sflags[s.mask] and ker <= s:
            rep.check(c2a(tmask[f.image_mask(s)]), kind="image of c2a containing kernel not c2a",
                      source_sub=_sub_json(s), **ctx)


def suite_hom(family: InstanceFamily, rep: SuiteReport, hom_max: int = 16):
    insts = list(generate_instances(family))
    for inst in insts:
        rep.instances += 1
        for L in enumerate_submodules(inst.module):
            _check_projection(rep, inst, L)
    small = [i for i in insts if i.module.cardinality <= hom_max]
    for a in small:
        for b in small:
            if a.ring == b.ring and a.module.cardinality % b.module.cardinality == 0:
                _check_epimorphism_batch(rep, a, b)


def _flag_lut(m) -> np.ndarray:
    """c2a flag per submodule bitmask (-1 for masks that are not submodules)."""
    lut = np.full(1 << m.cardinality, -1, dtype=np.int8)
    for s in enumerate_submodules(m):
        lut[s.mask] = c2a(s)
    return lut


def _check_epimorphism_batch(rep: SuiteReport, a: Instance, b: Instance):
    """Every epimorphism a -> b at once: preimages and images as bitmask arrays."""
    src, tgt = a.module, b.module
    tables = hom_tables(src, tgt)
    if not len(tables):
        return
    hit = np.zeros((len(tables), tgt.cardinality), dtype=bool)
    np.put_along_axis(hit, tables, True, axis=1)
    tables = tables[hit.all(axis=1)]
    slut, tlut = _flag_lut(src), _flag_lut(tgt)
    tsubs = [t for t in enumerate_submodules(tgt) if t.is_proper and c2a(t)]
    ssubs = [s for s in enumerate_submodules(src) if c2a(s)]
    w_src = np.int64(1) << np.arange(src.cardinality, dtype=np.int64)
    bits = np.int64(1) << tables
    kernels = ((tables == 0) * w_src).sum(axis=1)
    ctx = {"source": a.id, "target": b.id}
    for t in tsubs:
        pre = (t.member[tables] * w_src).sum(axis=1)
        bad = np.flatnonzero(slut[pre] != 1)
        rep.checks += 1
        if len(bad):
            rep.failures.append({"kind": "preimage of c2a not c2a", "target_sub": _sub_json(t),
                                 "map": tables[bad[0]].tolist(), **ctx})
    for s in ssubs:
        img = np.bitwise_or.reduce(bits[:, s.indices], axis=1)
        relevant = (kernels & ~s.mask) == 0
        bad = np.flatnonzero(relevant & (tlut[img] != 1))
        rep.checks += 1
        if len(bad):
            rep.failures.append({"kind": "image of c2a containing kernel not c2a", "source_sub": _sub_json(s),
                                 "map": tables[bad[0]].tolist(), **ctx})


def suite_meet(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        subs = proper_subs(m)
        cps = [s for s in subs if holds(s, "classical_prime")]
        by_mask = {s.mask: s for s in enumerate_submodules(m)}
        for a, b in itertools.combinations_with_replacement(cps, 2):
            meet = by_mask[a.mask & b.mask]
            rep.check(c2a(meet), kind="intersection of classical primes not c2a",
                      instance=inst.id, pair=[_sub_json(a), _sub_json(b)])
        # finite chains have a least member, so comparable pairs cover every chain
        cs = [s for s in subs if c2a(s)]
        for a, b in itertools.combinations(cs, 2):
            if a <= b or b <= a:
                rep.check(c2a(by_mask[a.mask & b.mask]), kind="chain intersection not c2a",
                          instance=inst.id, chain=[_sub_json(a), _sub_json(b)])
        for a, b in itertools.combinations(subs, 2):
            if not (a <= b or b <= a) and c2a(a) and c2a(b) and not c2a(by_mask[a.mask & b.mask]):
                rep.findings.append({"kind": "incomparable c2a pair with non-c2a meet", "instance": inst.id,
                                     "pair": [_sub_json(a), _sub_json(b)]})
                break


def suite_sep(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        for n in proper_subs(inst.module):
            p, cp, ta, ca = (holds(n, k) for k in ("prime", "classical_prime", "two_absorbing", "classical_2_absorbing"))
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            rep.check(not p or cp, kind="prime but not classical prime", **ctx)
            rep.check(not cp or ca, kind="classical prime but not c2a", **ctx)
            rep.check(not ta or ca, kind="2-absorbing but not c2a", **ctx)
            rep.check(cp == (ta and is_prime_ideal(annihilator_of(n))),
                      kind="classical prime iff (2-absorbing and (N:M) prime) fails", **ctx)
            for name in _FINDERS:
                w = witness(n, name)
                if w is not None:
                    rep.check(C.replay(name, n, w), kind=f"{name} witness does not replay", **ctx)
    for row in example_truncations():
        rep.check(not row["c2a"] and row["replays"], kind="truncated example is c2a or witness fails", **row)
    for left, right in (("c2a", "classical-prime"), ("2abs", "prime"), ("c2a", "2abs")):
        rep.findings.append({"search": [left, right], "result": search_separating(left, right, family)})


def suite_min(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        mins = C.minimal_classical_2_absorbing(inst.module)
        ctx = {"instance": inst.id}
        if not mins:
            rep.findings.append({"kind": "no classical 2-absorbing submodule", **ctx})
        rep.check(all(not (a < b) for a in mins for b in mins), kind="minimal set not an antichain", **ctx)
        for n in proper_subs(inst.module):
            if c2a(n):
                rep.check(any(k <= n for k in mins), kind="c2a submodule contains no minimal one",
                          submodule=_sub_json(n), **ctx)


def suite_rad(family: InstanceFamily, rep: SuiteReport):
    done_rings = set()
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        ring = m.ring
        if ring.moduli not in done_rings:
            done_rings.add(ring.moduli)
            for i in enumerate_ideals(ring):
                if not i.is_proper:
                    continue
                r = radical(i)
                mins = minimal_primes_over(i)
                meet = reduce(lambda x, y: x & y, (p.mask for p in mins))
                rep.check(i <= r and radical(r) == r and meet == r.mask,
                          kind="radical is not the meet of minimal primes", ring=str(ring), ideal=repr(i))
        for n in proper_subs(m):
            if not c2a(n):
                continue
            for x in range(m.cardinality):
                if n.mask >> x & 1:
                    continue
                _check_radical_colon(rep, inst, n, x)


def _check_radical_colon(rep: SuiteReport, inst: Instance, n: Submodule, x: int):
    m = inst.module
    ring = m.ring
    I = C._colon_ideal_idx(n, [x])
    rad = radical(I)
    mins = minimal_primes_over(I)
    ctx = {"instance": inst.id, "submodule": _sub_json(n), "element": list(m.elements[x])}
    shape_ok = is_prime_ideal(rad) or (
        len(mins) == 2 and ideal_combine(mins[0], mins[1], "intersection") == rad
    )
    rep.check(shape_ok, kind="radical of colon neither prime nor meet of two minimal primes", **ctx)
    if I == rad:
        return
    family_ = []
    for r in iter_bits(rad.mask & ~I.mask):
        rx = int(m.act_table[r, x])
        J = C._colon_ideal_idx(n, [rx])
        family_.append(J)
        rep.check(is_prime_ideal(J) and all(p <= J for p in mins),
                  kind="(N:xm) not a prime containing the minimal primes", scalar=list(ring.elements[r]), **ctx)
    for a, b in itertools.combinations(family_, 2):
        rep.check(a <= b or b <= a, kind="(N:xm) family not totally ordered", **ctx)


def _mult_tables(m):
    """Annihilator-ideal index of each submodule and the ideal product table."""
    ring = m.ring
    ideals = enumerate_ideals(ring)
    pos = {i.mask: k for k, i in enumerate(ideals)}
    ann = [pos[annihilator_of(s).mask] for s in enumerate_submodules(m)]
    prod = {}
    for a, b in itertools.product(range(len(ideals)), repeat=2):
        prod[a, b] = pos[ideal_combine(ideals[a], ideals[b], "product").mask]
    return ideals, ann, prod


def suite_mult(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        m = inst.module
        if not is_multiplication_module(m):
            continue
        rep.instances += 1
        ideals, ann, prod = _mult_tables(m)
        idx = [np.array(i.indices) for i in ideals]
        kinds = sorted(set(ann))
        for n in proper_subs(m):
            ca = c2a(n)
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            nm = ann[enumerate_submodules(m).index(n)]

            def in_n(ideal_k, x):
                return bool(n.member[m.act_table[idx[ideal_k], x]].all())

            # N1 N2 N3 m in N  =>  N1 N2 m or N1 N3 m or N2 N3 m in N
            cond2 = all(
                not in_n(prod[prod[a, b], c], x)
                or in_n(prod[a, b], x) or in_n(prod[a, c], x) or in_n(prod[b, c], x)
                for a, b, c in itertools.combinations_with_replacement(kinds, 3)
                for x in range(m.cardinality)
            )
            rep.check(ca == cond2, kind="submodule-product characterization fails", **ctx)

            def sub_le(ideal_k):
                return ideals[ideal_k] <= ideals[nm]

            f2 = all(
                not sub_le(prod[prod[prod[a, b], c], d])
                or sub_le(prod[prod[a, b], d]) or sub_le(prod[prod[a, c], d]) or sub_le(prod[prod[b, c], d])
                for a, b, c in itertools.combinations_with_replacement(kinds, 3) for d in kinds
            )
            f3 = all(
                not sub_le(prod[prod[a, b], c]) or sub_le(prod[a, b]) or sub_le(prod[a, c]) or sub_le(prod[b, c])
                for a, b, c in itertools.combinations_with_replacement(kinds, 3)
            )
            f4 = holds(n, "two_absorbing")
            f5 = absorbing_ideal_witness(ideals[nm], 2) is None
            vec = [ca, f2, f3, f4, f5]
            rep.check(not f2 or f3, kind="five-way (2)=>(3) fails", conditions=vec, **ctx)
            rep.check(not f3 or f4, kind="five-way (3)=>(4) fails", conditions=vec, **ctx)
            rep.check(not f4 or ca, kind="five-way (4)=>(1) fails", conditions=vec, **ctx)
            rep.check(f4 == f5, kind="five-way (4)<=>(5) fails", conditions=vec, **ctx)
            if ca and not all(vec):
                rep.findings.append({"kind": "five-way forward direction fails", "conditions": vec, **ctx})


def suite_main2(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        ring = m.ring
        for n in proper_subs(m):
            vec = C.evaluate_main2_conditions(n).conditions
            ca = vec[0]
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            for k in range(1, 10):
                rep.check(not vec[k] or ca, kind=f"main2 ({k + 1})=>(1) fails", conditions=list(vec), **ctx)
                if ca and not vec[k]:
                    rep.findings.append({"kind": f"main2 (1)=>({k + 1}) fails", "conditions": list(vec), **ctx})
            four = C.is_n_absorbing_submodule(n, 4)
            colon2 = absorbing_ideal_witness(annihilator_of(n), 2) is None
            rep.check(not ca or four, kind="c2a but not 4-absorbing", **ctx)
            if ca and not colon2:
                rep.findings.append({"kind": "c2a but (N:M) not 2-absorbing", **ctx})
            if four and colon2 and not ca:
                rep.findings.append({"kind": "4-absorbing with 2-absorbing (N:M) but not c2a", **ctx})
            if ca:
                _check_colon_union(rep, n, ctx)


def _check_colon_union(rep: SuiteReport, n: Submodule, ctx: dict):
    m = n.module
    mul = m.ring.mul_table
    colon = [C._colon_ideal_idx(n, [x]).mask for x in range(m.cardinality)]
    ok_union = ok_one = True
    for a, b, c in itertools.combinations_with_replacement(range(m.ring.cardinality), 3):
        ab, ac, bc = mul[a, b], mul[a, c], mul[b, c]
        abc = mul[ab, c]
        for x in range(m.cardinality):
            lhs = colon[m.act_table[abc, x]]
            parts = (colon[m.act_table[ab, x]], colon[m.act_table[ac, x]], colon[m.act_table[bc, x]])
            if lhs != parts[0] | parts[1] | parts[2]:
                ok_union = False
            if lhs not in parts:
                ok_one = False
    rep.check(ok_union, kind="(N:abcm) is not the union of the pair colons", **ctx)
    if not ok_one:
        rep.findings.append({"kind": "(N:abcm) equals none of the pair colons", **ctx})


def suite_mclosed(family: InstanceFamily, rep: SuiteReport, micro: int = 4):
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        for n in proper_subs(m):
            s = [e for e in m.elements if e not in n]
            closed = C.is_c2a_m_closed(m, s)
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            rep.check(closed == c2a(n), kind="N c2a iff M\\N m-closed fails", **ctx)
            if closed:
                for p in C.maximal_disjoint_submodules(m, s):
                    rep.check(c2a(p), kind="maximal disjoint submodule not c2a", maximal=_sub_json(p), **ctx)
        if m.cardinality <= micro:
            nonzero = m.elements[1:]
            for k in range(1, len(nonzero) + 1):
                for s in itertools.combinations(nonzero, k):
                    if not C.is_c2a_m_closed(m, s):
                        continue
                    for p in C.maximal_disjoint_submodules(m, s):
                        rep.check(c2a(p), kind="maximal disjoint submodule not c2a",
                                  instance=inst.id, S=[list(e) for e in s], maximal=_sub_json(p))


def suite_flat(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        for n in proper_subs(m):
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            m1, n1 = tensor_free(m, n, 1)
            rep.check(m1 is m and n1 is n, kind="rank-1 tensor is not the identity", **ctx)
            m2, n2 = tensor_free(m, n, 2)
            base, doubled = c2a(n), c2a(n2)
            rep.check(not doubled or base, kind="N^2 c2a but N not c2a", **ctx)
            if base and not doubled:
                rep.findings.append({"kind": "N c2a but N^2 not c2a", **ctx})


def suite_loc(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        rep.instances += 1
        m = inst.module
        ring = m.ring
        sets = sorted({multiplicative_closure(ring, [s]) for s in ring.elements}, key=lambda s: sorted(s))
        by_torsion = {}
        for sset in sets:
            loc = localize(m, sset)
            sidx = {ring.idx(s) for s in sset}
            # sets with the same torsion give the same quotient; classify it once
            if loc.torsion.mask not in by_torsion:
                by_torsion[loc.torsion.mask] = {s.mask: c2a(s) for s in enumerate_submodules(loc.module)}
            qflags = by_torsion[loc.torsion.mask]
            for n in proper_subs(m):
                ctx = {"instance": inst.id, "submodule": _sub_json(n), "S": sorted(list(e) for e in sset)}
                img = loc.map.image_mask(n)
                ann = annihilator_of(n)
                if c2a(n) and not any(ann.mask >> i & 1 for i in sidx):
                    rep.check(qflags[img], kind="localization of c2a not c2a", **ctx)
                zd = zero_divisors_on_quotient(n)
                if qflags[img] and not (zd & sset):
                    rep.check(c2a(n), kind="c2a localization but N not c2a", **ctx)


def suite_prod(family: InstanceFamily, rep: SuiteReport):
    for inst in generate_instances(family):
        m = inst.module
        if len(m.ring.moduli) < 2:
            continue
        rep.instances += 1
        dp = split_by_coordinate(m)
        k = len(dp.factors)
        for n in proper_subs(m):
            parts, split = dp.decompose(n)
            ctx = {"instance": inst.id, "submodule": _sub_json(n)}
            rep.check(split, kind="submodule does not split over the product ring", **ctx)
            rep.check(dp.assemble(parts).mask == n.mask, kind="reassembly differs", **ctx)
            proper = [i for i in range(k) if parts[i].is_proper]
            if len(proper) == 1:
                (i,) = proper
                rule_c2a = c2a(parts[i])
                rule_cp = holds(parts[i], "classical_prime")
            elif len(proper) == 2:
                rule_c2a = all(holds(parts[i], "classical_prime") for i in proper)
                rule_cp = False
            else:
                rule_c2a = rule_cp = False
            rep.check(c2a(n) == rule_c2a, kind="product c2a case analysis fails", **ctx)
            rep.check(holds(n, "classical_prime") == rule_cp, kind="product classical-prime rule fails", **ctx)


# ---------------------------------------------------------------- registry

BASE = InstanceFamily()
SMALL = InstanceFamily(max_module=12)
SUITES = {
    "T-MAIN": ("A", suite_main, InstanceFamily(max_modulus=12, max_module=24)),
    "T-MAIN-COR": ("A", suite_main_cor, BASE),
    "T-HOM": ("A", suite_hom, BASE),
    "T-MEET": ("A", suite_meet, BASE),
    "T-SEP": ("A", suite_sep, BASE),
    "T-MIN": ("A", suite_min, BASE),
    "T-RAD": ("A", suite_rad, BASE),
    "T-MULT": ("A", suite_mult, BASE),
    "T-MAIN2": ("B", suite_main2, SMALL),
    "T-MCLOSED": ("A", suite_mclosed, SMALL),
    "T-FLAT": ("B", suite_flat, SMALL),
    "T-LOC": ("A", suite_loc, BASE),
    "T-PROD": ("A", suite_prod, replace(BASE, multi_coordinate_only=True, max_coords=2, extra_rings=((2, 3, 5),))),
}


def default_family(suite_id: str) -> InstanceFamily:
    if suite_id not in SUITES:
        raise UnknownIdentifierError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    return SUITES[suite_id][2]


def run_suite(suite_id: str, family: InstanceFamily | None = None) -> SuiteReport:
    if suite_id not in SUITES:
        raise UnknownIdentifierError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    tier, fn, default = SUITES[suite_id]
    family = family or default
    rep = SuiteReport(suite_id, tier, family.to_json())
    t0 = time.perf_counter()
    fn(family, rep)
    rep.wall_time = time.perf_counter() - t0
    log.info("%s: %d instances, %d checks, %d failures, %d findings (%.1fs)",
             suite_id, rep.instances, rep.checks, len(rep.failures), len(rep.findings), rep.wall_time)
    return rep


# ---------------------------------------------------------------- separation search


def search_separating(left: str, right: str, family: InstanceFamily) -> dict:
    """First submodule (deterministic order) satisfying ``left`` but not ``right``."""
    try:
        lname, rname = PREDICATE_ALIASES[left], PREDICATE_ALIASES[right]
    except KeyError as exc:
        raise UnknownIdentifierError(
            f"unknown predicate {exc.args[0]!r}; known: {', '.join(sorted(PREDICATE_ALIASES))}"
        ) from None
    visited = []
    for inst in generate_instances(family):
        visited.append(inst.id)
        for n in proper_subs(inst.module):
            if holds(n, lname) and not holds(n, rname):
                return {
                    "found": True,
                    "left": lname,
                    "right": rname,
                    "instance": inst.id,
                    "module": inst.module.to_json(),
                    "submodule": _sub_json(n),
                    "right_witness": witness(n, rname),
                }
    return {
        "found": False,
        "left": lname,
        "right": rname,
        "bounds": family.to_json(),
        "instances_checked": len(visited),
        "instances": visited,
    }


def example_truncations(primes=(2, 3), shifts=(0, 1)) -> list[dict]:
    """p^3 Z_{p^(t+3)} inside Z_{p^(t+3)}: never c2a, and a = b = c = p is a witness."""
    out = []
    for p in primes:
        for t in shifts:
            q = p ** (t + 3)
            m = get_module((q,), ((0, q),))
            n = submodule_from_mask(m, sum(1 << x for x in range(0, q, p ** 3)))
            w = {"scalars": [[p], [p], [p]], "element": [1]}
            out.append({
                "p": p,
                "t": t,
                "module": str(m),
                "submodule": n.label(),
                "c2a": c2a(n),
                "witness": w,
                "replays": C.replay("classical_2_absorbing", n, w),
            })
    return out
