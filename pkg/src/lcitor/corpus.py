"""Seeded random instances: homogeneous sequences, regular sequences, and
intersections of linear subspaces. Everything here is reproducible from
the seed alone (``random.Random``, no global state)."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

from .groebner import Ideal, height
from .ring import QQ, PolyRing, Polynomial

DEFAULT_SEED = 20240517
VAR_NAMES = "xyzwuv"


def ring_for(nvars: int, field=QQ) -> PolyRing:
    return PolyRing(field, list(VAR_NAMES[:nvars]))


def monomials(nvars: int, deg: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_form(rng: random.Random, ring: PolyRing, deg: int, density: float = 0.7,
                coeff_range: int = 3) -> Polynomial:
    """A nonzero homogeneous polynomial of degree ``deg`` with small integer coefficients."""
    mons = monomials(ring.nvars, deg)
    while True:
        terms = {}
        for m in mons:
            if rng.random() < density:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    terms[m] = c
        f = ring.from_terms(terms)
        if f:
            return f


def random_sequence(rng: random.Random, ring: PolyRing, length: int, max_deg: int = 2,
                    density: float = 0.6) -> List[Polynomial]:
    return [random_form(rng, ring, rng.randint(1, max_deg), density) for _ in range(length)]


def random_regular_sequence(rng: random.Random, ring: PolyRing, length: int,
                            degrees: Sequence[int], tries: int = 200) -> List[Polynomial]:
    """Rejection-sample a homogeneous sequence until its height equals its length."""
    for _ in range(tries):
        fs = [random_form(rng, ring, d) for d in degrees[:length]]
        I = Ideal(ring, fs)
        if len(I.gens) == length and not I.is_unit() and height(I) == length:
            return fs
    raise RuntimeError("no regular sequence found; loosen the parameters")


def koszul_iso_corpus(seed: int = DEFAULT_SEED, count: int = 20) -> List[List[Polynomial]]:
    """Random homogeneous sequences of length 1..6 (regular or not)."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, 3)
        ring = ring_for(n)
        length = 1 + i % 6
        out.append(random_sequence(rng, ring, length, max_deg=2))
    return out


def regularity_corpus(seed: int = DEFAULT_SEED + 1, count: int = 50) -> List[List[Polynomial]]:
    """At most 3 forms of degree at most 2 in at most 3 variables. Sparse
    sampling and occasional shared factors make non-regular cases common."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 3)
        ring = ring_for(n)
        length = rng.randint(1, 3)
        fs = random_sequence(rng, ring, length, max_deg=2, density=rng.choice([0.3, 0.5, 0.8]))
        if rng.random() < 0.25 and length >= 2:
            v = ring.gens()[rng.randrange(n)]
            fs = [v * random_form(rng, ring, 1, 0.5) if f.total_degree() == 2 else f for f in fs]
        if Ideal(ring, fs).is_unit():
            continue
        out.append(fs)
    return out


def self_intersection_corpus(seed: int = DEFAULT_SEED + 2, count: int = 12) -> List[List[Polynomial]]:
    """Homogeneous regular sequences of length 1..3 in 2..4 variables, built
    from linear forms and generic quadrics."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, 4)
        ring = ring_for(n)
        length = rng.randint(1, min(3, n))
        degrees = [rng.choice([1, 1, 2]) for _ in range(length)]
        out.append(random_regular_sequence(rng, ring, length, degrees))
    return out


def linear_pair_corpus(seed: int = DEFAULT_SEED + 3, count: int = 8):
    """Pairs of linear subspaces ``(gens1, gens2)`` sharing some directions,
    so that the intersection has positive excess in about half the cases."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 4)
        ring = ring_for(n)
        while True:
            shared = rng.randint(0, 1)
            a = rng.randint(shared + (0 if shared else 1), min(2, n - 1))
            b = rng.randint(shared + (0 if shared else 1), min(2, n - 1))
            if a >= max(shared, 1) and b >= max(shared, 1):
                break
        common = [random_form(rng, ring, 1) for _ in range(shared)]
        g1 = common + [random_form(rng, ring, 1) for _ in range(a - shared)]
        g2 = common + [random_form(rng, ring, 1) for _ in range(b - shared)]
        if height(Ideal(ring, g1)) != len(g1) or height(Ideal(ring, g2)) != len(g2):
            continue
        if Ideal(ring, g1 + g2).is_unit():
            continue
        out.append((g1, g2))
    return out
