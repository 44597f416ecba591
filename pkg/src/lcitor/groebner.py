"""Gröbner bases of submodules of free modules over a polynomial ring.

Ideals are the rank-one case. Internally a module element is a sparse dict
``{(position, exponents): coefficient}``; :class:`ModuleElement` wraps that
dict for the public API.

Buchberger's algorithm uses the normal (sugar) selection strategy with the
Gebauer-Möller installation of the chain criterion; the coprime (product)
criterion is only applied in rank one, where it is valid. The output is
always the reduced basis, so the pair strategy is unobservable.

Syzygies come from Schreyer's theorem: the S-pairs of a Gröbner basis,
reduced to zero with recorded quotients, generate the syzygies of the basis,
and the recorded trace carries them back to the input generators.
"""

from __future__ import annotations

import heapq
import itertools
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ring import Monomial, MonomialOrder, PolyRing, Polynomial, RingMismatchError

Term = Tuple[int, Monomial]
Vec = Dict[Term, object]


class NotInSubmoduleError(ValueError):
    """A vector that was expected to lie in a submodule does not."""


# ----------------------------------------------------------------------------
# Module elements
# ----------------------------------------------------------------------------


class ModuleElement:
    """An element of the free module ``R^rank``."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: PolyRing, rank: int, terms: Vec):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_coords(cls, ring: PolyRing, coords: Sequence) -> "ModuleElement":
        terms: Vec = {}
        for pos, f in enumerate(coords):
            f = ring(f)
            for m, c in f.terms.items():
                terms[(pos, m)] = c
        return cls(ring, len(coords), terms)

    @classmethod
    def basis_vector(cls, ring: PolyRing, rank: int, i: int) -> "ModuleElement":
        return cls(ring, rank, {(i, (0,) * ring.nvars): ring.field.one})

    @property
    def coords(self) -> Tuple[Polynomial, ...]:
        buckets: List[dict] = [{} for _ in range(self.rank)]
        for (pos, m), c in self.terms.items():
            buckets[pos][m] = c
        return tuple(Polynomial(self.ring, b) for b in buckets)

    def __getitem__(self, i: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for (p, m), c in self.terms.items() if p == i})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def _check(self, other: "ModuleElement"):
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("module elements live in different free modules")

    def __add__(self, other: "ModuleElement"):
        self._check(other)
        out = dict(self.terms)
        _axpy(out, other.terms, self.ring.field.one, None, self.ring.field)
        return ModuleElement(self.ring, self.rank, out)

    def __sub__(self, other: "ModuleElement"):
        self._check(other)
        out = dict(self.terms)
        _axpy(out, other.terms, self.ring.field.neg(self.ring.field.one), None, self.ring.field)
        return ModuleElement(self.ring, self.rank, out)

    def __neg__(self):
        F = self.ring.field
        return ModuleElement(self.ring, self.rank, {t: F.neg(c) for t, c in self.terms.items()})

    def __rmul__(self, f):
        f = self.ring(f)
        return ModuleElement(self.ring, self.rank, poly_times_vec(f.terms, self.terms, self.ring.field))

    def degree(self, shifts: Optional[Sequence[int]] = None) -> Optional[int]:
        return vec_degree(self.terms, shifts)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def as_raw(v, ring: PolyRing) -> Vec:
    if isinstance(v, ModuleElement):
        return v.terms
    if isinstance(v, Polynomial):
        return {(0, m): c for m, c in v.terms.items()}
    if isinstance(v, dict):
        return v
    return ModuleElement.from_coords(ring, v).terms


def vec_degree(vec: Vec, shifts: Optional[Sequence[int]] = None) -> Optional[int]:
    """Degree of a homogeneous vector (``None`` if inhomogeneous or zero)."""
    degs = {sum(m) + (shifts[p] if shifts else 0) for p, m in vec}
    if len(degs) == 1:
        return degs.pop()
    return None


# ----------------------------------------------------------------------------
# Raw vector kernels
# ----------------------------------------------------------------------------


def _axpy(p: Vec, g: Vec, f, q: Optional[Monomial], F) -> None:
    """In place: ``p += f * x^q * g``."""
    mul, add = F.mul, F.add
    if q is None or not any(q):
        for t, c in g.items():
            v = p.get(t)
            w = mul(f, c)
            if v is None:
                p[t] = w
            else:
                v = add(v, w)
                if v:
                    p[t] = v
                else:
                    del p[t]
        return
    for (pos, m), c in g.items():
        t = (pos, tuple([a + b for a, b in zip(m, q)]))
        v = p.get(t)
        w = mul(f, c)
        if v is None:
            p[t] = w
        else:
            v = add(v, w)
            if v:
                p[t] = v
            else:
                del p[t]


def poly_times_vec(f: dict, v: Vec, F) -> Vec:
    out: Vec = {}
    for m, c in f.items():
        _axpy(out, v, c, m, F)
    return out


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _quo(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x - y for x, y in zip(a, b)])


def _scale(v: Vec, c, F) -> Vec:
    return {t: F.mul(a, c) for t, a in v.items()}


class ModuleOrder:
    """Monomial order on ``R^rank``: position-over-term ('pot') or
    term-over-position ('top'). Lower positions rank higher in both."""

    def __init__(self, order: MonomialOrder, kind: str = "pot"):
        if kind not in ("pot", "top"):
            raise ValueError(f"unknown module order {kind!r}")
        self.order = order
        self.kind = kind
        self._cache: dict = {}

    def key(self, t: Term):
        k = self._cache.get(t)
        if k is None:
            mk = self.order.key(t[1])
            k = (-t[0], mk) if self.kind == "pot" else (mk, -t[0])
            self._cache[t] = k
        return k

    def __eq__(self, other):
        return isinstance(other, ModuleOrder) and (self.order, self.kind) == (other.order, other.kind)

    def __hash__(self):
        return hash((self.order, self.kind))

    def __repr__(self):
        return f"{self.kind}/{self.order.name}"


# ----------------------------------------------------------------------------
# Gröbner basis object
# ----------------------------------------------------------------------------


class GroebnerBasis:
    """Reduced Gröbner basis of a submodule of ``R^rank``.

    When built with ``trace=True``, ``traces[k]`` expresses basis element
    ``k`` as a combination of the input generators (a vector in
    ``R^ngens``), which is what :meth:`lift` uses.
    """

    def __init__(self, ring: PolyRing, rank: int, mord: ModuleOrder, raw: List[Vec],
                 traces: Optional[List[Vec]] = None, ngens: int = 0):
        self.ring = ring
        self.rank = rank
        self.module_order = mord
        self.raw = raw
        self.traces = traces
        self.ngens = ngens
        key = mord.key
        self.leads: List[Term] = [max(v, key=key) for v in raw]
        self._by_pos: Dict[int, List[Tuple[Monomial, int]]] = {}
        for i, (pos, m) in enumerate(self.leads):
            self._by_pos.setdefault(pos, []).append((m, i))

    @property
    def order(self) -> MonomialOrder:
        return self.module_order.order

    @cached_property
    def elements(self) -> Tuple[ModuleElement, ...]:
        return tuple(ModuleElement(self.ring, self.rank, v) for v in self.raw)

    @property
    def polynomials(self) -> Tuple[Polynomial, ...]:
        """Rank-one view of the basis."""
        if self.rank != 1:
            raise ValueError("polynomials() is only defined for ideals")
        return tuple(Polynomial(self.ring, {m: c for (_, m), c in v.items()}) for v in self.raw)

    def __len__(self):
        return len(self.raw)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        """True if the basis spans the whole free module."""
        zero = (0,) * self.ring.nvars
        hit = {pos for pos, m in self.leads if m == zero}
        return len(hit) == self.rank

    def leading_monomials(self, pos: int = 0) -> List[Monomial]:
        return [m for m, _ in self._by_pos.get(pos, [])]

    def reduce_raw(self, vec: Vec, trace: Optional[Vec] = None) -> Vec:
        """Full normal form of ``vec``. If ``trace`` is given it is updated
        in place by subtracting ``f x^q traces[k]`` alongside each
        reduction step."""
        return _normal_form(vec, self.raw, self._by_pos, self.module_order.key,
                            self.ring.field, self.traces, trace)

    def normal_form(self, v) -> ModuleElement:
        raw = as_raw(v, self.ring)
        return ModuleElement(self.ring, self.rank, self.reduce_raw(raw))

    def contains(self, v) -> bool:
        return not self.reduce_raw(as_raw(v, self.ring))

    def lift(self, v) -> Vec:
        """Coefficients ``a`` with ``v = Σ a_i gens_i`` (raw, in ``R^ngens``)."""
        if self.traces is None:
            raise ValueError("basis was built without a trace")
        F = self.ring.field
        trace: Vec = {}
        rem = self.reduce_raw(dict(as_raw(v, self.ring)), trace)
        if rem:
            raise NotInSubmoduleError("vector is not in the submodule")
        return {t: F.neg(c) for t, c in trace.items()}

    def s_vectors(self):
        """All S-vectors of same-position pairs (for criterion checks)."""
        F = self.ring.field
        for i, j in itertools.combinations(range(len(self.raw)), 2):
            (pi, mi), (pj, mj) = self.leads[i], self.leads[j]
            if pi != pj:
                continue
            L = _lcm(mi, mj)
            s: Vec = {}
            ci, cj = self.raw[i][self.leads[i]], self.raw[j][self.leads[j]]
            _axpy(s, self.raw[i], F.inv(ci), _quo(L, mi), F)
            _axpy(s, self.raw[j], F.neg(F.inv(cj)), _quo(L, mj), F)
            yield (i, j), s

    def __repr__(self):
        return f"GroebnerBasis(rank={self.rank}, order={self.module_order!r}, size={len(self.raw)})"


def _find_divisor(by_pos, t: Term):
    for m, idx in by_pos.get(t[0], ()):
        if _divides(m, t[1]):
            return m, idx
    return None


def _normal_form(vec: Vec, basis: List[Vec], by_pos, key, F, traces=None, trace=None) -> Vec:
    if not basis:
        return dict(vec)
    p = dict(vec)
    r: Vec = {}
    neg, div = F.neg, F.div
    leads_c = {}
    while p:
        t = max(p, key=key)
        c = p[t]
        hit = _find_divisor(by_pos, t)
        if hit is None:
            r[t] = c
            del p[t]
            continue
        m, idx = hit
        g = basis[idx]
        lc = leads_c.get(idx)
        if lc is None:
            lc = leads_c[idx] = g[(t[0], m)]
        f = neg(div(c, lc))
        q = _quo(t[1], m)
        _axpy(p, g, f, q, F)
        if trace is not None:
            _axpy(trace, traces[idx], f, q, F)
    return r


# ----------------------------------------------------------------------------
# Buchberger
# ----------------------------------------------------------------------------


def _sugar(vec: Vec, shifts) -> int:
    if shifts:
        return max(sum(m) + shifts[p] for p, m in vec)
    return max(sum(m) for _, m in vec)


def buchberger(gens: Iterable, rank: int, ring: PolyRing, order: Optional[MonomialOrder] = None,
               module_order: str = "pot", shifts: Optional[Sequence[int]] = None,
               trace: bool = False, selection: str = "sugar", criteria: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule of ``R^rank`` spanned by ``gens``.

    ``selection`` picks the next S-pair: ``"sugar"`` (default), ``"normal"``
    (smallest lcm) or ``"fifo"``. ``criteria=False`` disables the
    Gebauer-Möller pruning. Neither affects the (reduced) result.
    """
    if selection not in ("sugar", "normal", "fifo"):
        raise ValueError(f"unknown pair selection {selection!r}")
    order = order if order is not None else ring.order
    mord = ModuleOrder(order, module_order)
    key = mord.key
    F = ring.field
    raw_gens = [as_raw(g, ring) for g in gens]
    for g in raw_gens:
        for pos, m in g:
            if not 0 <= pos < rank or len(m) != ring.nvars:
                raise RingMismatchError("generator does not live in the ambient free module")
    ngens = len(raw_gens)
    zero_mono = (0,) * ring.nvars
    one = F.one
    use_product = rank == 1 and criteria
    counter = itertools.count()

    elems: List[Vec] = []
    traces: List[Vec] = []
    leads: List[Term] = []
    sugars: List[int] = []
    active: List[int] = []
    by_pos: Dict[int, List[Tuple[Monomial, int]]] = {}
    pairs: dict = {}  # (i, j) -> lcm monomial
    heap: list = []

    def rebuild_index():
        by_pos.clear()
        for i in active:
            by_pos.setdefault(leads[i][0], []).append((leads[i][1], i))

    def install(vec: Vec, tr: Optional[Vec], sugar: int):
        lt = max(vec, key=key)
        inv = F.inv(vec[lt])
        vec = _scale(vec, inv, F)
        if tr is not None:
            tr = _scale(tr, inv, F)
        h = len(elems)
        elems.append(vec)
        traces.append(tr)
        leads.append(lt)
        sugars.append(sugar)
        pos, lm = lt

        # Gebauer-Möller update
        cand = []
        for g in active:
            if leads[g][0] != pos:
                continue
            L = _lcm(leads[g][1], lm)
            coprime = use_product and L == tuple(a + b for a, b in zip(leads[g][1], lm))
            cand.append((g, L, coprime))
        kept = []
        for idx, (g, L, coprime) in enumerate(cand):
            if not criteria:
                kept.append((g, L, coprime))
                continue
            if coprime:
                kept.append((g, L, coprime))
                continue
            dominated = False
            for g2, L2, _ in cand[idx + 1:]:
                if _divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for g2, L2, _ in kept:
                    if _divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, L, coprime))
        new_pairs = [(g, L) for g, L, coprime in kept if not coprime]
        for (a, b), L in (list(pairs.items()) if criteria else ()):
            if leads[a][0] != pos:
                continue
            if _divides(lm, L) and _lcm(leads[a][1], lm) != L and _lcm(leads[b][1], lm) != L:
                del pairs[(a, b)]
        for g, L in new_pairs:
            sug = max(sugars[g] + sum(L) - sum(leads[g][1]), sugar + sum(L) - sum(lm))
            pairs[(g, h)] = L
            if selection == "sugar":
                prio = (sug, key((pos, L)))
            elif selection == "normal":
                prio = (sum(L), key((pos, L)))
            else:
                prio = (next(counter),)
            heapq.heappush(heap, (prio, g, h))
        active[:] = [g for g in active if not (leads[g][0] == pos and _divides(lm, leads[g][1]))]
        active.append(h)
        rebuild_index()

    order_in = sorted(range(ngens), key=lambda i: (_sugar(raw_gens[i], shifts) if raw_gens[i] else 0,
                                                  key(max(raw_gens[i], key=key)) if raw_gens[i] else ()))
    for i in order_in:
        g = raw_gens[i]
        if not g:
            continue
        tr = {(i, zero_mono): one} if trace else None
        r = _normal_form(g, elems, by_pos, key, F, traces, tr)
        if r:
            install(r, tr, _sugar(g, shifts))

    while heap:
        _, i, j = heapq.heappop(heap)
        L = pairs.pop((i, j), None)
        if L is None:
            continue
        (pos, mi), mj = leads[i], leads[j][1]
        s: Vec = {}
        _axpy(s, elems[i], one, _quo(L, mi), F)
        _axpy(s, elems[j], F.neg(one), _quo(L, mj), F)
        tr = None
        if trace:
            tr = {}
            _axpy(tr, traces[i], one, _quo(L, mi), F)
            _axpy(tr, traces[j], F.neg(one), _quo(L, mj), F)
        r = _normal_form(s, elems, by_pos, key, F, traces, tr)
        if r:
            install(r, tr, max(sugars[i] + sum(L) - sum(mi), sugars[j] + sum(L) - sum(mj)))

    # inter-reduction: active leads are already minimal and distinct
    final = sorted(active, key=lambda g: key(leads[g]), reverse=True)
    out_raw, out_tr = [], []
    for g in final:
        others = [h for h in final if h != g]
        ob: Dict[int, List[Tuple[Monomial, int]]] = {}
        for h in others:
            ob.setdefault(leads[h][0], []).append((leads[h][1], h))
        tr = dict(traces[g]) if trace else None
        r = _normal_form(elems[g], elems, ob, key, F, traces, tr)
        inv = F.inv(r[leads[g]])
        out_raw.append(_scale(r, inv, F))
        if trace:
            out_tr.append(_scale(tr, inv, F))
    return GroebnerBasis(ring, rank, mord, out_raw, out_tr if trace else None, ngens)


def s_pairs_reduce_to_zero(basis: GroebnerBasis) -> bool:
    """Buchberger's criterion, checked over every same-position pair."""
    return all(not basis.reduce_raw(s) for _, s in basis.s_vectors())


def normal_form(v, basis: GroebnerBasis) -> ModuleElement:
    return basis.normal_form(v)


# ----------------------------------------------------------------------------
# Syzygies and lifting
# ----------------------------------------------------------------------------


def syzygies(gens: Sequence, rank: Optional[int] = None, ring: Optional[PolyRing] = None,
             shifts: Optional[Sequence[int]] = None, minimize: bool = True) -> List[ModuleElement]:
    """Generators of the kernel of ``R^len(gens) -> R^rank, e_i -> gens[i]``."""
    ring, rank, raw = _normalize_gens(gens, rank, ring)
    return [ModuleElement(ring, len(raw), v)
            for v in syzygies_raw(raw, rank, ring, shifts, minimize)]


def _normalize_gens(gens, rank, ring):
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if rank is None:
        if gens and isinstance(gens[0], ModuleElement):
            rank = gens[0].rank
        elif gens and isinstance(gens[0], Polynomial):
            rank = 1
        else:
            raise ValueError("rank required")
    for g in gens:
        if isinstance(g, ModuleElement) and (g.rank != rank or g.ring != ring):
            raise RingMismatchError("generators live in different free modules")
    return ring, rank, [as_raw(g, ring) for g in gens]


def syzygies_raw(raw: List[Vec], rank: int, ring: PolyRing, shifts=None,
                 minimize: bool = True) -> List[Vec]:
    F = ring.field
    n = len(raw)
    zero_mono = (0,) * ring.nvars
    one = F.one
    out: List[Vec] = [{(i, zero_mono): one} for i in range(n) if not raw[i]]
    if len(out) == n:
        return out
    syz_shifts = None
    if shifts is not None:
        syz_shifts = [vec_degree(v, shifts) or 0 for v in raw]
    G = buchberger(raw, rank, ring, shifts=shifts, trace=True)
    key = G.module_order.key

    # Schreyer syzygies among basis elements, minimized by leading monomial
    for k in range(len(G.raw)):
        pk, mk = G.leads[k]
        cands = []
        for l in range(k + 1, len(G.raw)):
            pl, ml = G.leads[l]
            if pl != pk:
                continue
            cands.append((l, _quo(_lcm(mk, ml), mk)))
        chosen = []
        for l, q in sorted(cands, key=lambda c: (sum(c[1]), c[0])):
            if any(_divides(q2, q) for _, q2 in chosen):
                continue
            chosen.append((l, q))
        for l, q in chosen:
            L = tuple(a + b for a, b in zip(mk, q))
            ql = _quo(L, G.leads[l][1])
            s: Vec = {}
            _axpy(s, G.raw[k], one, q, F)
            _axpy(s, G.raw[l], F.neg(one), ql, F)
            tr: Vec = {}
            _axpy(tr, G.traces[k], one, q, F)
            _axpy(tr, G.traces[l], F.neg(one), ql, F)
            rem = G.reduce_raw(s, tr)
            assert not rem, "S-vector of a Gröbner basis failed to reduce to zero"
            if tr:
                out.append(tr)
    # input generators expressed through the basis
    for i in range(n):
        if not raw[i]:
            continue
        tr = {(i, zero_mono): one}
        rem = G.reduce_raw(raw[i], tr)
        assert not rem
        if tr:
            out.append(tr)
    out = [v for v in out if v]
    if not minimize or not out:
        return out
    return buchberger(out, n, ring, shifts=syz_shifts).raw


def lift(vectors: Sequence, gens: Sequence, rank: Optional[int] = None,
         ring: Optional[PolyRing] = None) -> List[Vec]:
    """Express each vector as a combination of ``gens``; raises
    :class:`NotInSubmoduleError` if one is outside their span."""
    ring, rank, raw = _normalize_gens(gens, rank, ring)
    G = buchberger(raw, rank, ring, trace=True)
    return [G.lift(v) for v in vectors]


# ----------------------------------------------------------------------------
# Ideals
# ----------------------------------------------------------------------------


class Ideal:
    """An ideal of a polynomial ring given by generators (zeros dropped).

    The Gröbner basis for each monomial order is computed on demand and cached.
    """

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        self.gens: Tuple[Polynomial, ...] = tuple(g for g in (ring(x) for x in gens) if g)
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}

    def groebner(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        order = order if order is not None else self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb[order] = buchberger(self.gens, 1, self.ring, order)
        return gb

    @property
    def gb(self) -> GroebnerBasis:
        return self.groebner()

    def contains(self, f) -> bool:
        return membership(self.ring(f), self)

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def same_as(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def krull_dimension(self, order: Optional[MonomialOrder] = None) -> int:
        return krull_dimension(self, order)

    def height(self) -> int:
        return height(self)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatchError(f"{f.ring!r} vs {I.ring!r}")
    return I.gb.contains(f)


def monomial_ideal_dimension(monos: Sequence[Monomial], nvars: int) -> int:
    """Krull dimension of ``R / (monos)``: the size of a largest set of
    variables containing the support of no generator. ``-1`` if 1 is a
    generator."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monos]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            S = set(subset)
            if not any(s <= S for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal, order: Optional[MonomialOrder] = None) -> int:
    """Krull dimension of ``R/I``; ``-1`` for the unit ideal."""
    gb = I.groebner(order)
    return monomial_ideal_dimension(gb.leading_monomials(0), I.ring.nvars)


def height(I: Ideal) -> int:
    """Height of a proper ideal, ``nvars - dim R/I``."""
    d = krull_dimension(I)
    if d < 0:
        raise ValueError("the unit ideal has no height")
    return I.ring.nvars - d
