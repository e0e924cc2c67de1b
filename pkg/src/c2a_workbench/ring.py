"""Finite commutative rings Z_{n1} x ... x Z_{nk} and their ideals.

Elements are plain tuples of residues.  Internally every element also has an
integer index (its position in lexicographic order) and ideals are stored as
bitmasks over those indices, which keeps every quantifier loop cheap.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ImproperInputError, InvalidRingError, RingMismatchError, SpecParseError

Element = tuple


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Ring:
    """The product ring Z_{moduli[0]} x ... x Z_{moduli[-1]}."""

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(n) for n in moduli)
        if not moduli:
            raise InvalidRingError("a ring needs at least one modulus")
        if any(n < 2 for n in moduli):
            raise InvalidRingError(f"moduli must be >= 2 (1 != 0 is required), got {list(moduli)}")
        self.moduli = moduli
        self.cardinality = reduce(lambda x, y: x * y, moduli, 1)
        self.elements: list[Element] = list(itertools.product(*(range(n) for n in moduli)))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.zero = 0
        self.one = self.index[tuple(1 for _ in moduli)]
        self.full_mask = (1 << self.cardinality) - 1

    # radix weights so that index(coords) = coords . weights
    @cached_property
    def _weights(self) -> np.ndarray:
        w = np.ones(len(self.moduli), dtype=np.int64)
        for i in range(len(self.moduli) - 2, -1, -1):
            w[i] = w[i + 1] * self.moduli[i + 1]
        return w

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(self.cardinality, len(self.moduli))

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coords
        s = (c[:, None, :] + c[None, :, :]) % np.array(self.moduli)
        return s @ self._weights

    @cached_property
    def mul_table(self) -> np.ndarray:
        c = self.coords
        s = (c[:, None, :] * c[None, :, :]) % np.array(self.moduli)
        return s @ self._weights

    def element(self, x) -> Element:
        """Coerce an int or tuple to a reduced element tuple."""
        if isinstance(x, (int, np.integer)):
            x = (int(x),) * len(self.moduli)
        x = tuple(x)
        if len(x) != len(self.moduli):
            raise ValueError(f"element {x} has wrong arity for ring {self}")
        return tuple(int(v) % n for v, n in zip(x, self.moduli))

    def idx(self, x) -> int:
        return self.index[self.element(x)]

    def add(self, x, y) -> Element:
        return self.elements[self.add_table[self.idx(x), self.idx(y)]]

    def mul(self, x, y) -> Element:
        return self.elements[self.mul_table[self.idx(x), self.idx(y)]]

    def prod_index(self, indices: Iterable[int]) -> int:
        mt = self.mul_table
        acc = self.one
        for i in indices:
            acc = mt[acc, i]
        return int(acc)

    def __eq__(self, other):
        return isinstance(other, Ring) and other.moduli == self.moduli

    def __hash__(self):
        return hash(("Ring", self.moduli))

    def __repr__(self):
        return f"Ring({list(self.moduli)})"

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.moduli)

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli)}


def make_ring(moduli: Sequence[int]) -> Ring:
    return Ring(moduli)


def parse_ring_spec(spec: str) -> Ring:
    """Parse ``Z6`` / ``Z2xZ3`` (any number of factors) into a Ring."""
    parts = spec.strip().split("x")
    moduli = []
    for part in parts:
        m = re.fullmatch(r"Z(\d+)", part.strip())
        if not m:
            raise SpecParseError(f"bad ring spec {spec!r}; expected e.g. Z6 or Z2xZ3")
        moduli.append(int(m.group(1)))
    try:
        return Ring(moduli)
    except InvalidRingError as exc:
        raise SpecParseError(str(exc)) from exc


class Ideal:
    """An ideal of a finite ring, stored as a bitmask over element indices."""

    __slots__ = ("ring", "mask", "generators")

    def __init__(self, ring: Ring, mask: int, generators: Sequence[Element] = ()):
        self.ring = ring
        self.mask = mask
        self.generators = tuple(generators)

    @property
    def indices(self) -> list[int]:
        return list(iter_bits(self.mask))

    @property
    def elements(self) -> list[Element]:
        return [self.ring.elements[i] for i in iter_bits(self.mask)]

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        return bool(self.mask >> self.ring.idx(x) & 1)

    def __le__(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.mask == other.mask

    def __hash__(self):
        return hash((self.ring, self.mask))

    @property
    def is_proper(self) -> bool:
        return not self.mask >> self.ring.one & 1

    def sort_key(self):
        return (len(self), self.indices)

    def __repr__(self):
        gens = ",".join(_fmt(self.ring, g) for g in self.generators) or "0"
        return f"({gens})"

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "elements": [list(e) for e in self.elements],
        }


def _fmt(ring: Ring, x: Element) -> str:
    return str(x[0]) if len(ring.moduli) == 1 else str(tuple(x))


def _close_ideal(ring: Ring, seed: Iterable[int]) -> int:
    """Fixpoint of adding and scaling starting from ``seed`` indices."""
    at, mt = ring.add_table, ring.mul_table
    members = {ring.zero, *seed}
    frontier = list(members)
    while frontier:
        new = set()
        for x in frontier:
            for y in list(members):
                s = int(at[x, y])
                if s not in members:
                    new.add(s)
            for r in range(ring.cardinality):
                p = int(mt[r, x])
                if p not in members:
                    new.add(p)
        members |= new
        frontier = list(new)
    return mask_of(members)


def ideal_generated(ring: Ring, gens: Iterable) -> Ideal:
    gens = [ring.element(g) for g in gens]
    mask = _close_ideal(ring, (ring.index[g] for g in gens))
    return Ideal(ring, mask, sorted(set(gens)))


def ideal_from_mask(ring: Ring, mask: int) -> Ideal:
    """Wrap a mask known to be an ideal, attaching a small generator witness."""
    for i in iter_bits(mask):
        if _principal_mask(ring, i) == mask:
            return Ideal(ring, mask, [ring.elements[i]] if i else [])
    gens = []
    acc = 1
    for i in iter_bits(mask):
        if not acc >> i & 1:
            gens.append(ring.elements[i])
            acc = _sum_mask(ring, acc, _principal_mask(ring, i))
    return Ideal(ring, mask, gens)


def _principal_mask(ring: Ring, i: int) -> int:
    return mask_of(int(v) for v in ring.mul_table[:, i])


_IDEAL_CACHE: dict = {}


def enumerate_ideals(ring: Ring) -> list[Ideal]:
    """All ideals of ``ring``, sorted by (cardinality, element indices)."""
    cached = _IDEAL_CACHE.get(ring.moduli)
    if cached is not None:
        return cached
    principal = {_principal_mask(ring, i) for i in range(ring.cardinality)}
    found = set(principal)
    frontier = list(principal)
    while frontier:
        new = []
        for a in frontier:
            for p in principal:
                s = _sum_mask(ring, a, p)
                if s not in found:
                    found.add(s)
                    new.append(s)
        frontier = new
    ideals = sorted((ideal_from_mask(ring, m) for m in found), key=Ideal.sort_key)
    _IDEAL_CACHE[ring.moduli] = ideals
    return ideals


def _sum_mask(ring: Ring, a: int, b: int) -> int:
    at = ring.add_table
    bi = list(iter_bits(b))
    return mask_of(int(at[x, y]) for x in iter_bits(a) for y in bi)


def ideal_combine(a: Ideal, b: Ideal, kind: str) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatchError(f"ideals live in different rings: {a.ring} vs {b.ring}")
    ring = a.ring
    if kind == "intersection":
        return ideal_from_mask(ring, a.mask & b.mask)
    if kind == "sum":
        return ideal_from_mask(ring, _sum_mask(ring, a.mask, b.mask))
    if kind == "product":
        mt = ring.mul_table
        bi = list(iter_bits(b.mask))
        seed = {int(mt[x, y]) for x in iter_bits(a.mask) for y in bi}
        return ideal_from_mask(ring, _close_ideal(ring, seed))
    raise ValueError(f"unknown combine kind {kind!r}")


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.full_mask, [ring.elements[ring.one]])


def zero_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, 1, [])


def is_prime_ideal(i: Ideal) -> bool:
    """Proper and ab in i implies a in i or b in i.  The unit ideal gives False."""
    if not i.is_proper:
        return False
    mt = i.ring.mul_table
    n = i.ring.cardinality
    for a in range(n):
        if i.mask >> a & 1:
            continue
        for b in range(a, n):
            if i.mask >> b & 1:
                continue
            if i.mask >> int(mt[a, b]) & 1:
                return False
    return True


def absorbing_ideal_witness(i: Ideal, n: int = 2):
    """First (n+1)-tuple of ring elements violating n-absorption, or None."""
    if not i.is_proper:
        raise ImproperInputError("absorbing ideals must be proper")
    if n < 1:
        raise ValueError("n must be >= 1")
    ring = i.ring
    mask = i.mask
    for combo in itertools.combinations_with_replacement(range(ring.cardinality), n + 1):
        if not mask >> ring.prod_index(combo) & 1:
            continue
        if not any(
            mask >> ring.prod_index(combo[:k] + combo[k + 1:]) & 1 for k in range(n + 1)
        ):
            return tuple(ring.elements[c] for c in combo)
    return None


def is_n_absorbing_ideal(i: Ideal, n: int, strongly: bool = False) -> bool:
    if not strongly:
        return absorbing_ideal_witness(i, n) is None
    if not i.is_proper:
        raise ImproperInputError("absorbing ideals must be proper")
    ideals = enumerate_ideals(i.ring)
    products: dict = {}

    def prod(combo):
        if combo not in products:
            acc = unit_ideal(i.ring)
            for k in combo:
                acc = ideal_combine(acc, ideals[k], "product")
            products[combo] = acc.mask
        return products[combo]

    for combo in itertools.combinations_with_replacement(range(len(ideals)), n + 1):
        if prod(combo) & ~i.mask:
            continue
        if not any(prod(combo[:k] + combo[k + 1:]) & ~i.mask == 0 for k in range(n + 1)):
            return False
    return True


def radical(i: Ideal) -> Ideal:
    if not i.is_proper:
        raise ImproperInputError("radical is computed for proper ideals only")
    ring = i.ring
    mt = ring.mul_table
    members = []
    for r in range(ring.cardinality):
        p = r
        for _ in range(ring.cardinality):
            if i.mask >> p & 1:
                members.append(r)
                break
            p = int(mt[p, r])
    mask = mask_of(members)
    result = ideal_from_mask(ring, mask)
    assert _close_ideal(ring, members) == mask, "radical is not an ideal"
    return result


def minimal_primes_over(i: Ideal) -> list[Ideal]:
    if not i.is_proper:
        raise ImproperInputError("minimal primes are computed for proper ideals only")
    over = [p for p in enumerate_ideals(i.ring) if i <= p and is_prime_ideal(p)]
    return [p for p in over if not any(q < p for q in over)]


def is_ring_isomorphism(source: Ring, target: Ring, mapping: dict) -> bool:
    """Check that ``mapping`` (element -> element) is a unital ring isomorphism."""
    if source.cardinality != target.cardinality or len(set(mapping.values())) != len(mapping):
        return False
    if mapping[source.elements[source.one]] != target.elements[target.one]:
        return False
    for x in source.elements:
        for y in source.elements:
            if mapping[source.add(x, y)] != target.add(mapping[x], mapping[y]):
                return False
            if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                return False
    return True


def is_ideal_mask(ring: Ring, mask: int) -> bool:
    """Exhaustive closure check: contains 0, closed under + and under R-scaling."""
    if not mask & 1:
        return False
    idx = np.fromiter(iter_bits(mask), dtype=np.int64)
    member = np.zeros(ring.cardinality, dtype=bool)
    member[idx] = True
    return bool(member[ring.add_table[np.ix_(idx, idx)]].all() and member[ring.mul_table[:, idx]].all())
