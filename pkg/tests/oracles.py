"""Slow, table-free reference implementations used to cross-check the library.

Everything here works on raw residue tuples with Python integer arithmetic.
"""

import itertools


def ring_elements(moduli):
    return list(itertools.product(*(range(n) for n in moduli)))


def rmul(moduli, a, b):
    return tuple(x * y % n for x, y, n in zip(a, b, moduli))


def module_elements(components):
    return list(itertools.product(*(range(o) for _, o in components)))


def act(components, r, x):
    return tuple(r[c] * xi % o for (c, o), xi in zip(components, x))


def madd(components, x, y):
    return tuple((a + b) % o for (_, o), a, b in zip(components, x, y))


def all_submodules(moduli, components):
    """Every subset closed under + and the action (tiny modules only)."""
    els = module_elements(components)
    zero = els[0]
    rest = els[1:]
    ring = ring_elements(moduli)
    out = []
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            s = {zero, *combo}
            if all(madd(components, x, y) in s for x in s for y in s) and all(
                act(components, r, x) in s for r in ring for x in s
            ):
                out.append(frozenset(s))
    return out


def all_ideals(moduli):
    ring = ring_elements(moduli)
    return all_submodules(moduli, [(c, n) for c, n in enumerate(moduli)]) if ring else []


def c2a(moduli, components, n):
    """abc m in N  =>  ab m in N or ac m in N or bc m in N, for proper N."""
    els = module_elements(components)
    if set(els) <= set(n):
        raise ValueError("improper")
    ring = ring_elements(moduli)
    for a, b, c in itertools.combinations_with_replacement(ring, 3):
        ab, ac, bc = rmul(moduli, a, b), rmul(moduli, a, c), rmul(moduli, b, c)
        abc = rmul(moduli, ab, c)
        for m in els:
            if act(components, abc, m) in n and not (
                act(components, ab, m) in n or act(components, ac, m) in n or act(components, bc, m) in n
            ):
                return False
    return True


def colon(moduli, components, n, m):
    return frozenset(r for r in ring_elements(moduli) if act(components, r, m) in n)


def two_absorbing_ideal(moduli, ideal):
    ring = ring_elements(moduli)
    if len(ideal) == len(ring):
        return False
    for a, b, c in itertools.combinations_with_replacement(ring, 3):
        ab, ac, bc = rmul(moduli, a, b), rmul(moduli, a, c), rmul(moduli, b, c)
        if rmul(moduli, ab, c) in ideal and not (ab in ideal or ac in ideal or bc in ideal):
            return False
    return True


def classical_prime(moduli, components, n):
    ring = ring_elements(moduli)
    for a, b in itertools.product(ring, repeat=2):
        for m in module_elements(components):
            if act(components, rmul(moduli, a, b), m) in n and not (
                act(components, a, m) in n or act(components, b, m) in n
            ):
                return False
    return True


def annihilator(moduli, components, n):
    els = module_elements(components)
    return frozenset(r for r in ring_elements(moduli) if all(act(components, r, m) in n for m in els))


def prime(moduli, components, n):
    ann = annihilator(moduli, components, n)
    for r in ring_elements(moduli):
        for m in module_elements(components):
            if act(components, r, m) in n and m not in n and r not in ann:
                return False
    return True


def two_absorbing(moduli, components, n):
    ann = annihilator(moduli, components, n)
    ring = ring_elements(moduli)
    for a, b in itertools.combinations_with_replacement(ring, 2):
        for m in module_elements(components):
            if act(components, rmul(moduli, a, b), m) in n and not (
                act(components, a, m) in n or act(components, b, m) in n or rmul(moduli, a, b) in ann
            ):
                return False
    return True
