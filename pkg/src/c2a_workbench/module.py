"""Finite modules over product rings, their submodules and constructions.

A :class:`Module` is a direct sum of cyclic pieces Z_d, each attached to one
coordinate of the ring.  Quotients (and localizations, which are quotients by
S-torsion here) are :class:`QuotientModule` instances whose elements are least
coset representatives.  Both expose the same tables, so every predicate in
:mod:`c2a_workbench.classify` works on either.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ImproperInputError,
    InvalidInputError,
    InvalidModuleError,
    InvalidMultiplicativeSetError,
    RelationViolationError,
    SizeLimitError,
    SpecParseError,
    UnsupportedStructureError,
)
from .ring import (
    Ideal,
    Ring,
    enumerate_ideals,
    ideal_combine,
    ideal_from_mask,
    is_ideal_mask,
    iter_bits,
    mask_of,
)

DEFAULT_SIZE_BOUND = 256


class FiniteModule:
    """Shared machinery: element list, index map, addition and action tables.

    Subclasses fill in ``ring``, ``elements`` and implement ``_build_tables``.
    """

    ring: Ring
    elements: list[tuple]

    def _setup(self):
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.cardinality = len(self.elements)
        self.zero = 0
        self.full_mask = (1 << self.cardinality) - 1
        self._submodules = None

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._build_tables()[0]

    @cached_property
    def act_table(self) -> np.ndarray:
        """``act_table[r, x]`` is the index of r*x."""
        return self._build_tables()[1]

    def _build_tables(self):
        raise NotImplementedError

    def element(self, x) -> tuple:
        if isinstance(x, (int, np.integer)):
            x = (x,)
        x = tuple(int(v) for v in x)
        if x not in self.index:
            raise InvalidInputError(f"{x} is not an element of {self}")
        return x

    def idx(self, x) -> int:
        return self.index[self.element(x)]

    def add(self, x, y) -> tuple:
        return self.elements[self.add_table[self.idx(x), self.idx(y)]]

    def act(self, r, x) -> tuple:
        return self.elements[self.act_table[self.ring.idx(r), self.idx(x)]]

    def whole(self) -> "Submodule":
        return Submodule(self, self.full_mask, self.standard_generators())

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, 1, ())

    def standard_generators(self) -> list[tuple]:
        raise NotImplementedError

    def check_axioms(self) -> bool:
        """Exhaustive distributivity/associativity check of the action."""
        at, act = self.add_table, self.act_table
        rat, rmt = self.ring.add_table, self.ring.mul_table
        R = self.ring.cardinality
        for r in range(R):
            if not np.array_equal(act[r][at], at[act[r][:, None], act[r][None, :]]):
                return False
            for s in range(R):
                if not np.array_equal(act[rat[r, s]], at[act[r], act[s]]):
                    return False
                if not np.array_equal(act[rmt[r, s]], act[r][act[s]]):
                    return False
        return bool(np.array_equal(act[self.ring.one], np.arange(self.cardinality)))


class Module(FiniteModule):
    """Direct sum of cyclic modules Z_order, each attached to a ring coordinate."""

    def __init__(self, ring: Ring, components: Sequence):
        comps = []
        for c in components:
            if isinstance(c, dict):
                coord, order = c["coord"], c["order"]
            else:
                coord, order = c
            coord, order = int(coord), int(order)
            if not 0 <= coord < len(ring.moduli):
                raise InvalidModuleError(f"ring {ring} has no coordinate {coord}")
            if order < 1 or ring.moduli[coord] % order:
                raise InvalidModuleError(
                    f"order {order} does not divide modulus {ring.moduli[coord]} of coordinate {coord}"
                )
            comps.append((coord, order))
        self.ring = ring
        self.components = tuple(comps)
        self.orders = tuple(o for _, o in comps)
        self.elements = list(itertools.product(*(range(o) for o in self.orders)))
        self._setup()

    def _build_tables(self):
        k = len(self.components)
        coords = np.array(self.elements, dtype=np.int64).reshape(self.cardinality, k)
        orders = np.array(self.orders, dtype=np.int64)
        w = np.ones(k, dtype=np.int64)
        for i in range(k - 2, -1, -1):
            w[i] = w[i + 1] * self.orders[i + 1]
        add = ((coords[:, None, :] + coords[None, :, :]) % orders) @ w
        rc = self.ring.coords[:, [c for c, _ in self.components]].reshape(self.ring.cardinality, k)
        act = ((rc[:, None, :] * coords[None, :, :]) % orders) @ w
        return add.reshape(self.cardinality, self.cardinality), act.reshape(
            self.ring.cardinality, self.cardinality
        )

    def standard_generators(self) -> list[tuple]:
        k = len(self.components)
        return [tuple(1 if i == j else 0 for i in range(k)) for j in range(k) if self.orders[j] > 1]

    def __eq__(self, other):
        return (
            isinstance(other, Module)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.ring, self.components))

    def __repr__(self):
        return f"Module({self.ring!r}, {list(self.components)})"

    def __str__(self):
        if not self.components:
            return "0"
        if len(self.ring.moduli) == 1:
            return "+".join(f"Z{o}" for o in self.orders)
        return "+".join(f"Z{o}@{c}" for c, o in self.components)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "components": [{"coord": c, "order": o} for c, o in self.components],
        }


def make_module(ring: Ring, components: Sequence) -> Module:
    return Module(ring, components)


def parse_module_spec(ring: Ring, spec: str) -> Module:
    """Inline ``"2,3"`` (orders on coordinate 0) or the JSON module schema."""
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"bad module JSON: {exc}") from exc
        if "ring" in data and tuple(data["ring"]["moduli"]) != ring.moduli:
            raise SpecParseError("module JSON ring does not match --ring")
        try:
            return Module(ring, data["components"])
        except (KeyError, TypeError) as exc:
            raise SpecParseError(f"bad module JSON: {exc}") from exc
        except InvalidModuleError as exc:
            raise SpecParseError(str(exc)) from exc
    try:
        orders = [int(p) for p in spec.split(",") if p.strip()]
    except ValueError as exc:
        raise SpecParseError(f"bad module spec {spec!r}") from exc
    try:
        return Module(ring, [(0, o) for o in orders])
    except InvalidModuleError as exc:
        raise SpecParseError(str(exc)) from exc


class QuotientModule(FiniteModule):
    """M/L with least coset representatives as elements."""

    def __init__(self, parent: FiniteModule, divisor: "Submodule"):
        self.ring = parent.ring
        self.parent = parent
        self.divisor = divisor
        at = parent.add_table
        lidx = np.array(divisor.indices, dtype=np.int64)
        rep = at[:, lidx].min(axis=1)
        reps = np.unique(rep)
        self.rep_index = np.searchsorted(reps, rep)  # parent index -> quotient index
        self._reps = reps
        self.elements = [parent.elements[i] for i in reps]
        self._setup()

    def _build_tables(self):
        pa, pact = self.parent.add_table, self.parent.act_table
        reps, ri = self._reps, self.rep_index
        return ri[pa[np.ix_(reps, reps)]], ri[pact[:, reps]]

    def standard_generators(self) -> list[tuple]:
        gens = []
        for g in self.parent.standard_generators():
            q = self.elements[self.rep_index[self.parent.index[g]]]
            if q != self.elements[0]:
                gens.append(q)
        return gens

    def __repr__(self):
        return f"QuotientModule({self.parent!r} / {self.divisor!r})"

    def __str__(self):
        return f"({self.parent})/{self.divisor}"

    def to_json(self) -> dict:
        return {
            "parent": self.parent.to_json(),
            "divisor": self.divisor.to_json(),
            "representatives": [list(e) for e in self.elements],
        }


class Submodule:
    """A submodule stored as a bitmask over the owning module's element indices."""

    __slots__ = ("module", "mask", "generators", "_member")

    def __init__(self, module: FiniteModule, mask: int, generators: Sequence = ()):
        self.module = module
        self.mask = mask
        self.generators = tuple(tuple(g) for g in generators)
        self._member = None

    @property
    def indices(self) -> list[int]:
        return list(iter_bits(self.mask))

    @property
    def elements(self) -> list[tuple]:
        return [self.module.elements[i] for i in iter_bits(self.mask)]

    @property
    def member(self) -> np.ndarray:
        """Boolean membership vector over the module's element indices."""
        if self._member is None:
            v = np.zeros(self.module.cardinality, dtype=bool)
            v[self.indices] = True
            self._member = v
        return self._member

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        return bool(self.mask >> self.module.idx(x) & 1)

    def __le__(self, other: "Submodule") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.module is other.module
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((id(self.module), self.mask))

    @property
    def is_proper(self) -> bool:
        return self.mask != self.module.full_mask

    def sort_key(self):
        return (len(self), self.indices)

    def label(self) -> str:
        if self.mask == 1:
            return "0"
        if self.mask == self.module.full_mask:
            return "M"
        mod = self.module
        one_coord = isinstance(mod, Module) and len(mod.components) == 1
        gens = ",".join(str(g[0]) if one_coord else str(tuple(g)) for g in self.generators)
        return f"<{gens}>"

    def __repr__(self):
        return self.label()

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "elements": [list(e) for e in self.elements],
        }


# ---------------------------------------------------------------- submodules


def cyclic_mask(m: FiniteModule, x: int) -> int:
    return mask_of(int(v) for v in np.unique(m.act_table[:, x]))


def sum_mask(m: FiniteModule, a: int, b: int) -> int:
    ai = np.fromiter(iter_bits(a), dtype=np.int64)
    bi = np.fromiter(iter_bits(b), dtype=np.int64)
    return mask_of(int(v) for v in np.unique(m.add_table[np.ix_(ai, bi)]))


def _close_submodule(m: FiniteModule, seed: Iterable[int]) -> int:
    acc = 1
    for x in seed:
        if not acc >> x & 1:
            acc = sum_mask(m, acc, cyclic_mask(m, x))
    return acc


def submodule_from_mask(m: FiniteModule, mask: int) -> Submodule:
    """Wrap a mask known to be a submodule, attaching a greedy generator witness."""
    gens = []
    acc = 1
    for i in iter_bits(mask):
        if not acc >> i & 1:
            gens.append(m.elements[i])
            acc = sum_mask(m, acc, cyclic_mask(m, i))
    if acc != mask:
        raise InvalidInputError("mask is not a submodule")
    return Submodule(m, mask, gens)


def submodule_generated(m: FiniteModule, gens: Iterable) -> Submodule:
    gens = [m.element(g) for g in gens]
    mask = _close_submodule(m, (m.index[g] for g in gens))
    return submodule_from_mask(m, mask)


def is_submodule_mask(m: FiniteModule, mask: int) -> bool:
    if not mask & 1:
        return False
    idx = np.fromiter(iter_bits(mask), dtype=np.int64)
    member = np.zeros(m.cardinality, dtype=bool)
    member[idx] = True
    return bool(member[m.add_table[np.ix_(idx, idx)]].all() and member[m.act_table[:, idx]].all())


def enumerate_submodules(
    m: FiniteModule, bound: int = DEFAULT_SIZE_BOUND, check: bool = False
) -> list[Submodule]:
    """All submodules of ``m``, sorted by (cardinality, element indices).

    Every submodule is a sum of cyclic submodules, so the lattice is the
    closure of the cyclic submodules under sums.  ``check`` runs the
    completeness cross-check (sum/intersection closure, all cyclics present).
    """
    if m.cardinality > bound:
        raise SizeLimitError(f"module of cardinality {m.cardinality} exceeds bound {bound}")
    if m._submodules is None:
        cyclic = sorted({cyclic_mask(m, x) for x in range(m.cardinality)})
        found = set(cyclic) | {1}
        frontier = list(found)
        while frontier:
            new = []
            for s in frontier:
                for c in cyclic:
                    if c & ~s == 0:
                        continue
                    t = sum_mask(m, s, c)
                    if t not in found:
                        found.add(t)
                        new.append(t)
            frontier = new
        subs = [submodule_from_mask(m, mask) for mask in found]
        subs.sort(key=Submodule.sort_key)
        m._submodules = subs
    subs = m._submodules
    if check:
        _check_lattice_complete(m, subs)
    return subs


def _check_lattice_complete(m: FiniteModule, subs: list[Submodule]) -> None:
    masks = {s.mask for s in subs}
    assert len(masks) == len(subs), "duplicate submodules"
    for s in subs:
        assert is_submodule_mask(m, s.mask), f"{s} is not a submodule"
    for x in range(m.cardinality):
        assert cyclic_mask(m, x) in masks, "missing cyclic submodule"
    for a, b in itertools.combinations(subs, 2):
        assert a.mask & b.mask in masks, "not closed under intersection"
        assert sum_mask(m, a.mask, b.mask) in masks, "not closed under sums"


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    return submodule_from_mask(a.module, sum_mask(a.module, a.mask, b.mask))


def submodule_intersection(a: Submodule, b: Submodule) -> Submodule:
    return submodule_from_mask(a.module, a.mask & b.mask)


def ideal_times(i: Ideal, n: Submodule) -> Submodule:
    """The submodule I*N generated by all products r*x."""
    m = n.module
    prods = m.act_table[np.ix_(i.indices, n.indices)]
    return submodule_from_mask(m, _close_submodule(m, (int(v) for v in np.unique(prods))))


# ---------------------------------------------------------------- colons


def colon_ideal(n: Submodule, x: Iterable) -> Ideal:
    """(N :_R X) = {r : rX subset of N}."""
    m = n.module
    xs = [m.idx(v) for v in x]
    if not xs:
        raise InvalidInputError("colon ideal needs a nonempty element set")
    return _colon_ideal_idx(n, xs)


def _colon_ideal_idx(n: Submodule, xs) -> Ideal:
    m = n.module
    ok = n.member[m.act_table[:, xs]].all(axis=1)
    mask = mask_of(np.flatnonzero(ok).tolist())
    assert is_ideal_mask(m.ring, mask), "colon set is not an ideal"
    return ideal_from_mask(m.ring, mask)


def annihilator_of(n: Submodule) -> Ideal:
    """(N :_R M)."""
    return _colon_ideal_idx(n, list(range(n.module.cardinality)))


def colon_submodule(n: Submodule, scalars: Sequence) -> Submodule:
    """(N :_M a1...ak) = {x : (a1...ak) x in N}."""
    if not scalars:
        raise InvalidInputError("colon submodule needs at least one scalar")
    m = n.module
    p = m.ring.prod_index(m.ring.idx(s) for s in scalars)
    ok = n.member[m.act_table[p]]
    return submodule_from_mask(m, mask_of(np.flatnonzero(ok).tolist()))


def zero_divisors_on_quotient(n: Submodule) -> frozenset:
    """Z_R(M/N) = {r : r x in N for some x outside N}."""
    if not n.is_proper:
        raise ImproperInputError("Z_R(M/N) needs a proper submodule N")
    m = n.module
    outside = ~n.member
    hit = n.member[m.act_table][:, outside].any(axis=1)
    return frozenset(m.ring.elements[r] for r in np.flatnonzero(hit))


# ---------------------------------------------------------------- homs


class ModuleHom:
    """An R-linear map given by its full value table on source indices."""

    def __init__(self, source: FiniteModule, target: FiniteModule, table: np.ndarray):
        self.source = source
        self.target = target
        self.table = np.asarray(table, dtype=np.int64)

    def __call__(self, x) -> tuple:
        return self.target.elements[self.table[self.source.idx(x)]]

    def is_linear(self) -> bool:
        s, t, f = self.source, self.target, self.table
        if not np.array_equal(f[s.add_table], t.add_table[f[:, None], f[None, :]]):
            return False
        return bool(np.array_equal(f[s.act_table], t.act_table[:, f]))

    @cached_property
    def kernel(self) -> Submodule:
        return submodule_from_mask(self.source, mask_of(np.flatnonzero(self.table == 0).tolist()))

    @cached_property
    def image(self) -> Submodule:
        return submodule_from_mask(self.target, mask_of(np.unique(self.table).tolist()))

    @property
    def is_epimorphism(self) -> bool:
        return self.image.mask == self.target.full_mask

    def preimage(self, sub: Submodule) -> Submodule:
        return submodule_from_mask(self.source, self.preimage_mask(sub))

    def preimage_mask(self, sub: Submodule) -> int:
        return mask_of(np.flatnonzero(sub.member[self.table]).tolist())

    def image_of(self, sub: Submodule) -> Submodule:
        return submodule_from_mask(self.target, self.image_mask(sub))

    def image_mask(self, sub: Submodule) -> int:
        return mask_of(np.unique(self.table[sub.indices]).tolist())


def _multiples(t: FiniteModule, y: int, count: int) -> list[int]:
    out = [0]
    for _ in range(count - 1):
        out.append(int(t.add_table[out[-1], y]))
    return out


def hom(source: Module, target: FiniteModule, images: Sequence) -> ModuleHom:
    """The linear map sending the j-th unit vector of ``source`` to ``images[j]``."""
    if not isinstance(source, Module):
        raise InvalidInputError("hom() needs a direct-sum Module as source")
    if len(images) != len(source.components):
        raise InvalidInputError("one image per source component is required")
    ys = [target.idx(y) for y in images]
    mults = []
    for (_, order), y in zip(source.components, ys):
        ms = _multiples(target, y, order + 1)
        if ms[order] != 0:
            raise RelationViolationError(f"image {target.elements[y]} is not killed by {order}")
        mults.append(ms[:order])
    table = np.zeros(source.cardinality, dtype=np.int64)
    at = target.add_table
    for i, coords in enumerate(source.elements):
        acc = 0
        for c, ms in zip(coords, mults):
            acc = at[acc, ms[c]]
        table[i] = acc
    f = ModuleHom(source, target, table)
    if not np.array_equal(table[source.act_table], target.act_table[:, table]):
        raise RelationViolationError("assignment is not compatible with the ring action")
    return f


def hom_candidates(source: Module, target: FiniteModule) -> list[list[int]]:
    """Per generator, the target indices it may be sent to by a linear map."""
    out = []
    tact = target.act_table
    for coord, order in source.components:
        ok = []
        for y in range(target.cardinality):
            ms = _multiples(target, y, order + 1)
            if ms[order] != 0:
                continue
            scal = source.ring.coords[:, coord] % order
            if all(tact[r, y] == ms[scal[r]] for r in range(source.ring.cardinality)):
                ok.append(y)
        out.append(ok)
    return out


def hom_tables(source: Module, target: FiniteModule) -> np.ndarray:
    """Tables of every R-linear map source -> target, one row per map, rows in
    lexicographic order of generator images."""
    cands = hom_candidates(source, target)
    if any(not c for c in cands):
        return np.zeros((0, source.cardinality), dtype=np.int64)
    at = target.add_table
    choice = np.array(list(itertools.product(*cands)), dtype=np.int64).reshape(-1, len(cands))
    coords = np.array(source.elements, dtype=np.int64).reshape(source.cardinality, len(cands))
    table = np.zeros((len(choice), source.cardinality), dtype=np.int64)
    for j, (_, order) in enumerate(source.components):
        # multiples[c, row] = c * (image of generator j)
        multiples = np.zeros((order, len(choice)), dtype=np.int64)
        for c in range(1, order):
            multiples[c] = at[multiples[c - 1], choice[:, j]]
        table = at[table, multiples[coords[:, j]].T]
    return table


def all_homs(source: Module, target: FiniteModule):
    """Every R-linear map source -> target, in lexicographic order of images."""
    for row in hom_tables(source, target):
        yield ModuleHom(source, target, row)


def identity_hom(m: FiniteModule) -> ModuleHom:
    return ModuleHom(m, m, np.arange(m.cardinality))


def zero_hom(source: FiniteModule, target: FiniteModule) -> ModuleHom:
    return ModuleHom(source, target, np.zeros(source.cardinality, dtype=np.int64))


def quotient_module(m: FiniteModule, l: Submodule) -> tuple[QuotientModule, ModuleHom]:
    if l.module is not m:
        raise InvalidInputError("divisor must be a submodule of the given module")
    q = QuotientModule(m, l)
    return q, ModuleHom(m, q, q.rep_index)


# ---------------------------------------------------------------- products


@dataclass
class DirectProduct:
    """A module over a product ring together with its factor decomposition.

    ``blocks[i]`` lists the positions of ``module.components`` belonging to
    factor ``i``; ``factors[i]`` is that factor as a module over its own ring.
    """

    ring: Ring
    module: Module
    factors: list[Module]
    blocks: list[list[int]]

    def project(self, sub: Submodule, i: int) -> Submodule:
        f = self.factors[i]
        pos = self.blocks[i]
        idx = {f.index[tuple(e[p] for p in pos)] for e in sub.elements}
        return submodule_from_mask(f, mask_of(idx))

    def decompose(self, sub: Submodule) -> tuple[list[Submodule], bool]:
        parts = [self.project(sub, i) for i in range(len(self.factors))]
        size = reduce(lambda x, y: x * y, (len(p) for p in parts), 1)
        return parts, size == len(sub)

    def assemble(self, parts: Sequence[Submodule]) -> Submodule:
        k = len(self.module.components)
        idx = []
        for combo in itertools.product(*(p.elements for p in parts)):
            e = [0] * k
            for pos, fe in zip(self.blocks, combo):
                for p, v in zip(pos, fe):
                    e[p] = v
            idx.append(self.module.index[tuple(e)])
        return submodule_from_mask(self.module, mask_of(idx))


def direct_product(parts: Sequence[tuple[Ring, Module]]) -> DirectProduct:
    if len(parts) < 2:
        raise InvalidInputError("a direct product needs at least two factors")
    moduli, comps, blocks = [], [], []
    for ring, mod in parts:
        if mod.ring != ring:
            raise InvalidInputError("module is not over the paired ring")
        off = len(moduli)
        blocks.append(list(range(len(comps), len(comps) + len(mod.components))))
        comps.extend((c + off, o) for c, o in mod.components)
        moduli.extend(ring.moduli)
    ring = Ring(moduli)
    return DirectProduct(ring, Module(ring, comps), [m for _, m in parts], blocks)


def split_by_coordinate(m: Module) -> DirectProduct:
    """View a module over Z_{n1} x ... x Z_{nk} as the product of its coordinate parts."""
    factors, blocks = [], []
    for i, n in enumerate(m.ring.moduli):
        pos = [j for j, (c, _) in enumerate(m.components) if c == i]
        factors.append(Module(Ring([n]), [(0, m.components[j][1]) for j in pos]))
        blocks.append(pos)
    return DirectProduct(m.ring, m, factors, blocks)


# ---------------------------------------------------------------- localization


@dataclass
class Localization:
    """S^{-1}M realized as M/T with T the S-torsion submodule.

    ``ring`` presents S^{-1}R = R/T_R as a product of residue rings, or is
    None when S^{-1}R is the zero ring.  ``module`` keeps R as its scalar ring;
    R acts through the surjection R -> S^{-1}R, so submodules and every
    absorbing property are the same for either scalar ring.
    """

    ring: Ring | None
    module: QuotientModule
    map: ModuleHom
    torsion: Submodule
    ring_torsion: Ideal
    multiplicative_set: frozenset = field(default_factory=frozenset)

    def image(self, n: Submodule) -> Submodule:
        return self.map.image_of(n)


def multiplicative_closure(ring: Ring, seeds: Iterable) -> frozenset:
    mt = ring.mul_table
    members = {ring.one, *(ring.idx(s) for s in seeds)}
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                p = int(mt[x, y])
                if p not in members:
                    members.add(p)
                    new.append(p)
        frontier = new
    return frozenset(ring.elements[i] for i in members)


def localize(m: FiniteModule, s: Iterable) -> Localization:
    ring = m.ring
    sidx = sorted({ring.idx(x) for x in s})
    if ring.one not in sidx:
        raise InvalidMultiplicativeSetError("multiplicative set must contain 1")
    sset = set(sidx)
    mt = ring.mul_table
    if any(int(mt[a, b]) not in sset for a in sidx for b in sidx):
        raise InvalidMultiplicativeSetError("set is not closed under multiplication")
    killed = (m.act_table[sidx] == 0).any(axis=0)
    torsion = submodule_from_mask(m, mask_of(np.flatnonzero(killed).tolist()))
    rkilled = (mt[sidx] == 0).any(axis=0)
    rtors_mask = mask_of(np.flatnonzero(rkilled).tolist())
    assert is_ideal_mask(ring, rtors_mask)
    rtors = ideal_from_mask(ring, rtors_mask)
    q, proj = quotient_module(m, torsion)
    for x in sidx:
        assert len(set(q.act_table[x].tolist())) == q.cardinality, "s is not invertible on S^-1 M"
    moduli = []
    for i, n in enumerate(ring.moduli):
        g = n
        for e in rtors.elements:
            g = np.gcd(g, e[i])
        if g > 1:
            moduli.append(int(g))
    assert reduce(lambda x, y: x * y, moduli, 1) * len(rtors) == ring.cardinality
    loc_ring = Ring(moduli) if moduli else None
    return Localization(loc_ring, q, proj, torsion, rtors, frozenset(ring.elements[i] for i in sidx))


# ---------------------------------------------------------------- tensoring with R^k


def tensor_free(m: Module, n: Submodule, k: int) -> tuple[Module, Submodule]:
    """R^k (x) M and R^k (x) N, realized as M^k and N^k."""
    if k < 1:
        raise InvalidInputError("rank must be >= 1")
    if k == 1:
        return m, n
    mk = Module(m.ring, list(m.components) * k)
    idx = [mk.index[sum(combo, ())] for combo in itertools.product(n.elements, repeat=k)]
    return mk, submodule_from_mask(mk, mask_of(idx))


# ---------------------------------------------------------------- multiplication modules


def is_multiplication_module(m: FiniteModule) -> bool:
    whole = m.whole()
    for n in enumerate_submodules(m):
        if ideal_times(annihilator_of(n), whole).mask != n.mask:
            return False
    return True


def submodule_product(*subs: Submodule) -> Submodule:
    """N1 N2 ... = (N1:M)(N2:M)...M, folded left; needs a multiplication module."""
    if not subs:
        raise InvalidInputError("need at least one submodule")
    m = subs[0].module
    if not is_multiplication_module(m):
        raise UnsupportedStructureError(f"{m} is not a multiplication module")
    acc = subs[0]
    whole = m.whole()
    for b in subs[1:]:
        ideal = ideal_combine(annihilator_of(acc), annihilator_of(b), "product")
        acc = ideal_times(ideal, whole)
    return acc
