"""Bounded chain complexes of graded free modules.

Homological degree ``q`` here is cohomological degree ``-q`` in the
geometric convention, so ``homology(C, q)`` is ``H^{-q}``.

Conventions, fixed so matrices are reproducible:

* Koszul component ``q`` has basis ``e_S`` for ``q``-subsets ``S`` in
  lexicographic order, and ``d(e_S) = Σ_{i∈S} (-1)^{pos(i,S)+1} f_i e_{S∖i}``
  with ``pos`` 1-based, so ``d(e_i) = f_i``.
* ``(C⊗D)_n`` is the direct sum of blocks ``C_p⊗D_{n-p}`` with ``p``
  ascending; inside a block ``e_i⊗e_j`` sits at ``i*rank(D_{n-p}) + j``.
  ``d(x⊗y) = dx⊗y + (-1)^p x⊗dy``.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import Ideal, Vec, _axpy, syzygies_raw
from .modules import (
    FPModule,
    FreeModuleMap,
    HilbertFunction,
    hilbert_function,
    subquotient,
)
from .ring import PolyRing, Polynomial, RingMismatchError


class ChainComplex:
    """``C_hi -> ... -> C_lo`` with ``d[q]: C_q -> C_{q-1}``.

    ``ranks[q]`` and ``degrees[q]`` describe each free module; ``d∘d = 0`` is
    verified exactly at construction.
    """

    def __init__(self, ring: PolyRing, lo: int, hi: int, ranks: Dict[int, int],
                 degrees: Dict[int, Optional[Tuple[int, ...]]], differentials: Dict[int, FreeModuleMap],
                 check: bool = True):
        if hi < lo:
            raise ValueError("empty degree range")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.ranks = {q: ranks.get(q, 0) for q in range(lo, hi + 1)}
        self.degrees = {q: degrees.get(q) for q in range(lo, hi + 1)}
        self.differentials: Dict[int, FreeModuleMap] = {}
        for q in range(lo + 1, hi + 1):
            d = differentials.get(q)
            if d is None:
                d = FreeModuleMap.zero(ring, self.ranks[q], self.ranks[q - 1],
                                       self.degrees[q], self.degrees[q - 1])
            if d.src_rank != self.ranks[q] or d.tgt_rank != self.ranks[q - 1]:
                raise ValueError(f"differential in degree {q} has the wrong shape")
            self.differentials[q] = d
        if check and not self.is_complex():
            raise ValueError("d∘d ≠ 0")

    @classmethod
    def unit(cls, ring: PolyRing) -> "ChainComplex":
        """``R`` in degree 0."""
        return cls(ring, 0, 0, {0: 1}, {0: (0,)}, {})

    def rank(self, q: int) -> int:
        return self.ranks.get(q, 0)

    def module_degrees(self, q: int) -> Optional[Tuple[int, ...]]:
        if q < self.lo or q > self.hi:
            return ()
        return self.degrees[q]

    def d(self, q: int) -> FreeModuleMap:
        if q in self.differentials:
            return self.differentials[q]
        return FreeModuleMap.zero(self.ring, self.rank(q), self.rank(q - 1),
                                  self.module_degrees(q), self.module_degrees(q - 1))

    def is_complex(self) -> bool:
        """Exact check of ``d_q ∘ d_{q+1} = 0`` in every degree."""
        for q in range(self.lo + 1, self.hi):
            comp = self.differentials[q].compose(self.differentials[q + 1])
            if not comp.is_zero():
                return False
        return True

    def is_graded(self) -> bool:
        if any(self.degrees[q] is None for q in self.degrees):
            return False
        return all(d.graded or d.is_zero() for d in self.differentials.values())

    def homology(self, q: int) -> FPModule:
        return homology(self, q)

    def free_hf(self, q: int, bound: int) -> HilbertFunction:
        return hilbert_function(FPModule.free(self.ring, self.rank(q), self.module_degrees(q)), bound)

    def __repr__(self):
        ranks = ", ".join(f"{q}:{self.ranks[q]}" for q in range(self.lo, self.hi + 1))
        return f"ChainComplex({ranks})"


# ----------------------------------------------------------------------------
# Koszul complexes
# ----------------------------------------------------------------------------


def _poly_degree(f: Polynomial, default_zero: int = 1) -> Optional[int]:
    if not f:
        return default_zero
    return f.total_degree() if f.is_homogeneous() else None


def koszul_complex(fs: Sequence, ring: Optional[PolyRing] = None,
                   degrees: Optional[Sequence[int]] = None) -> ChainComplex:
    """Koszul complex of ``fs``.

    Generator ``e_i`` has degree ``deg f_i``; a zero entry gets degree 1
    unless ``degrees`` says otherwise. An inhomogeneous entry makes the
    complex ungraded.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("Koszul complex of an empty sequence")
    ring = ring or fs[0].ring
    fs = [ring(f) for f in fs]
    n = len(fs)
    if degrees is None:
        gdeg = [_poly_degree(f) for f in fs]
    else:
        gdeg = list(degrees)
        for f, dg in zip(fs, gdeg):
            if f and f.is_homogeneous() and f.total_degree() != dg:
                raise ValueError(f"declared degree {dg} does not match {f}")
    graded = all(g is not None for g in gdeg)
    F = ring.field
    ranks, degs, diffs = {}, {}, {}
    bases = {q: list(itertools.combinations(range(n), q)) for q in range(n + 1)}
    for q in range(n + 1):
        ranks[q] = len(bases[q])
        degs[q] = tuple(sum(gdeg[i] for i in S) for S in bases[q]) if graded else None
    for q in range(1, n + 1):
        index = {S: k for k, S in enumerate(bases[q - 1])}
        cols: List[Vec] = []
        for S in bases[q]:
            col: Vec = {}
            for pos, i in enumerate(S):
                sub = S[:pos] + S[pos + 1:]
                coeff = F.one if pos % 2 == 0 else F.neg(F.one)
                k = index[sub]
                for m, c in fs[i].terms.items():
                    col[(k, m)] = F.mul(coeff, c)
            cols.append(col)
        diffs[q] = FreeModuleMap(ring, ranks[q], ranks[q - 1], cols, degs[q], degs[q - 1])
    return ChainComplex(ring, 0, n, ranks, degs, diffs)


# ----------------------------------------------------------------------------
# Tensor products
# ----------------------------------------------------------------------------


def _tensor_layout(C: ChainComplex, D: ChainComplex, n: int):
    """Blocks of ``(C⊗D)_n`` as ``(p, q, offset)`` with ``p`` ascending."""
    blocks = []
    off = 0
    for p in range(C.lo, C.hi + 1):
        q = n - p
        if q < D.lo or q > D.hi:
            continue
        blocks.append((p, q, off))
        off += C.rank(p) * D.rank(q)
    return blocks, off


def tensor_complexes(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign rule."""
    if C.ring != D.ring:
        raise RingMismatchError("complexes over different rings")
    ring = C.ring
    F = ring.field
    lo, hi = C.lo + D.lo, C.hi + D.hi
    layouts = {n: _tensor_layout(C, D, n) for n in range(lo - 1, hi + 1)}
    ranks, degs = {}, {}
    for n in range(lo, hi + 1):
        blocks, total = layouts[n]
        ranks[n] = total
        dl: Optional[list] = []
        for p, q, _ in blocks:
            dc, dd = C.module_degrees(p), D.module_degrees(q)
            if dc is None or dd is None or dl is None:
                dl = None
                continue
            dl.extend(a + b for a in dc for b in dd)
        degs[n] = tuple(dl) if dl is not None else None
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks, total = layouts[n]
        tblocks, ttotal = layouts[n - 1]
        toff = {(p, q): off for p, q, off in tblocks}
        cols: List[Vec] = [None] * total
        for p, q, off in blocks:
            rc, rd = C.rank(p), D.rank(q)
            dC = C.d(p) if (p - 1, q) in toff else None
            dD = D.d(q) if (p, q - 1) in toff else None
            sign = F.one if p % 2 == 0 else F.neg(F.one)
            for i in range(rc):
                for j in range(rd):
                    col: Vec = {}
                    if dC is not None:
                        o = toff[(p - 1, q)]
                        for (k, m), c in dC.columns[i].items():
                            col[(o + k * rd + j, m)] = c
                    if dD is not None:
                        o = toff[(p, q - 1)]
                        rdq = D.rank(q - 1)
                        for (k, m), c in dD.columns[j].items():
                            t = (o + i * rdq + k, m)
                            v = F.mul(sign, c)
                            if t in col:
                                v = F.add(col[t], v)
                                if v:
                                    col[t] = v
                                else:
                                    del col[t]
                            else:
                                col[t] = v
                    cols[off + i * rd + j] = col
        diffs[n] = FreeModuleMap(ring, total, ranks[n - 1], cols, degs[n], degs[n - 1])
    return ChainComplex(ring, lo, hi, ranks, degs, diffs)


def tensor_many(complexes: Sequence[ChainComplex]) -> ChainComplex:
    """Left-associated tensor product ``((C1⊗C2)⊗C3)⊗...``."""
    it = iter(complexes)
    out = next(it)
    for C in it:
        out = tensor_complexes(out, C)
    return out


def koszul_tensor_iso(fs: Sequence, gs: Sequence, ring: Optional[PolyRing] = None,
                      ) -> Dict[int, FreeModuleMap]:
    """Degreewise isomorphisms ``(K(fs)⊗K(gs))_n -> K(fs ∥ gs)_n``.

    ``e_S ⊗ e_T`` goes to ``e_S ∧ e_{T+|fs|}``. With the sign conventions
    above every index of ``S`` precedes every shifted index of ``T``, so the
    wedge is already sorted and the matrices are permutation matrices.
    An empty ``gs`` (or ``fs``) stands for the unit complex ``R``.
    """
    fs, gs = list(fs), list(gs)
    ring = ring or (fs + gs)[0].ring
    a, b = len(fs), len(gs)
    KF = koszul_complex(fs, ring) if a else ChainComplex.unit(ring)
    KG = koszul_complex(gs, ring) if b else ChainComplex.unit(ring)
    T = tensor_complexes(KF, KG)
    K = koszul_complex(fs + gs, ring)
    one = ring.field.one
    z = (0,) * ring.nvars
    maps = {}
    for n in range(0, a + b + 1):
        target = {S: k for k, S in enumerate(itertools.combinations(range(a + b), n))}
        blocks, total = _tensor_layout(KF, KG, n)
        cols: List[Vec] = [None] * total
        for p, q, off in blocks:
            Ss = list(itertools.combinations(range(a), p))
            Ts = list(itertools.combinations(range(b), q))
            for i, S in enumerate(Ss):
                for j, Tt in enumerate(Ts):
                    U = S + tuple(t + a for t in Tt)
                    cols[off + i * len(Ts) + j] = {(target[U], z): one}
        maps[n] = FreeModuleMap(ring, total, len(target), cols, T.module_degrees(n), K.module_degrees(n))
    return maps


def is_chain_map(phi: Dict[int, FreeModuleMap], C: ChainComplex, D: ChainComplex) -> bool:
    """``d_D ∘ φ_n = φ_{n-1} ∘ d_C`` for every ``n``."""
    for n in range(C.lo + 1, C.hi + 1):
        if n not in phi or n - 1 not in phi:
            return False
        left = D.d(n).compose(phi[n])
        right = phi[n - 1].compose(C.d(n))
        if left.columns != right.columns:
            return False
    return True


def is_signed_permutation(f: FreeModuleMap) -> bool:
    if f.src_rank != f.tgt_rank:
        return False
    z = (0,) * f.ring.nvars
    F = f.ring.field
    seen = set()
    for col in f.columns:
        if len(col) != 1:
            return False
        (pos, m), c = next(iter(col.items()))
        if m != z or c not in (F.one, F.neg(F.one)) or pos in seen:
            return False
        seen.add(pos)
    return True


# ----------------------------------------------------------------------------
# Homology
# ----------------------------------------------------------------------------


def _standard_basis(ring: PolyRing, n: int) -> List[Vec]:
    z = (0,) * ring.nvars
    return [{(i, z): ring.field.one} for i in range(n)]


def homology(C: ChainComplex, q: int, annihilator: Optional[Ideal] = None) -> FPModule:
    """``H_q = ker d_q / im d_{q+1}`` with degrees inherited from ``C``."""
    ring = C.ring
    if q < C.lo or q > C.hi or C.rank(q) == 0:
        return FPModule.zero(ring)
    dq = C.d(q)
    if dq.is_zero():
        K = _standard_basis(ring, C.rank(q))
    else:
        K = syzygies_raw(list(dq.columns), dq.tgt_rank, ring, shifts=dq.tgt_degrees)
    im = list(C.d(q + 1).columns) if q + 1 <= C.hi else []
    return subquotient(K, im, C.rank(q), ring, C.module_degrees(q), annihilator=annihilator)


def euler_characteristic_hf(C: ChainComplex, bound: int) -> HilbertFunction:
    """``Σ (-1)^q HF(C_q)``."""
    total = HilbertFunction.zeros(bound)
    for q in range(C.lo, C.hi + 1):
        h = C.free_hf(q, bound)
        total = total + h if q % 2 == 0 else total - h
    return total


# ----------------------------------------------------------------------------
# Complexes tensored with a module
# ----------------------------------------------------------------------------


def ideal_as_module(I: Ideal) -> FPModule:
    """The ideal ``I`` as a module: generators ``I.gens`` (in their degrees),
    relations their syzygies."""
    ring = I.ring
    raw = [{(0, m): c for m, c in g.terms.items()} for g in I.gens]
    degs = [g.total_degree() if g.is_homogeneous() else None for g in I.gens]
    rels = syzygies_raw(raw, 1, ring, shifts=(0,))
    if any(d is None for d in degs):
        return FPModule(FreeModuleMap(ring, len(rels), len(raw), rels), check=False)
    return FPModule.from_relations(ring, len(raw), rels, degs)


class ModuleComplex:
    """``C ⊗ M`` for a free complex ``C`` and a presented module ``M``.

    Term ``q`` is ``coker(I ⊗ P_M)`` on the basis ``e_i ⊗ g_j`` (index
    ``i*m + j``); the differential on generators is ``d_q ⊗ id``.
    """

    def __init__(self, C: ChainComplex, M: FPModule):
        if C.ring != M.ring:
            raise RingMismatchError("complex and module over different rings")
        self.base = C
        self.module = M
        self.ring = C.ring
        self.lo, self.hi = C.lo, C.hi

    def rank(self, q: int) -> int:
        return self.base.rank(q) * self.module.ngens

    def gen_degrees(self, q: int) -> Optional[Tuple[int, ...]]:
        dc, dm = self.base.module_degrees(q), self.module.degrees
        if dc is None or dm is None:
            return None
        return tuple(a + b for a in dc for b in dm)

    def relations(self, q: int) -> List[Vec]:
        m = self.module.ngens
        out = []
        for i in range(self.base.rank(q)):
            for p in self.module.relations:
                out.append({(i * m + j, mono): c for (j, mono), c in p.items()})
        return out

    def phi(self, q: int) -> FreeModuleMap:
        m = self.module.ngens
        d = self.base.d(q)
        cols = []
        for i in range(d.src_rank):
            for j in range(m):
                cols.append({(k * m + j, mono): c for (k, mono), c in d.columns[i].items()})
        return FreeModuleMap(self.ring, self.rank(q), self.rank(q - 1), cols,
                             self.gen_degrees(q), self.gen_degrees(q - 1))

    def term(self, q: int) -> FPModule:
        rels = self.relations(q)
        degs = self.gen_degrees(q)
        if degs is None:
            return FPModule(FreeModuleMap(self.ring, len(rels), self.rank(q), rels), check=False)
        return FPModule.from_relations(self.ring, self.rank(q), rels, degs)

    def homology(self, q: int) -> FPModule:
        """``{v : φ_q v ∈ im P_{q-1}} / (im φ_{q+1} + im P_q)``."""
        ring = self.ring
        n = self.rank(q)
        if n == 0:
            return FPModule.zero(ring)
        phi = self.phi(q)
        tgt_rels = self.relations(q - 1)
        if phi.is_zero() or self.rank(q - 1) == 0:
            K = _standard_basis(ring, n)
        else:
            syz = syzygies_raw(list(phi.columns) + tgt_rels, self.rank(q - 1), ring,
                               shifts=self.gen_degrees(q - 1))
            K = [{t: c for t, c in s.items() if t[0] < n} for s in syz]
            K = [k for k in K if k]
        im = list(self.phi(q + 1).columns) if q + 1 <= self.hi else []
        im += self.relations(q)
        return subquotient(K, im, n, ring, self.gen_degrees(q), annihilator=self.module.annihilator)


def tensor_with_module(C: ChainComplex, M) -> ModuleComplex:
    """``C ⊗ M``; ``M`` may be an :class:`FPModule` or an :class:`Ideal`
    (taken as the module ``I``; use ``FPModule.quotient`` for ``R/I``)."""
    if isinstance(M, Ideal):
        M = ideal_as_module(M)
    return ModuleComplex(C, M)


def homology_hf_from_cokernels(MC, q: int, bound: int) -> HilbertFunction:
    """``HF(H_q)`` from Hilbert functions of cokernels only (no syzygies):

    ``HF(H_q) = HF(F_q/(im φ_{q+1} + P_q)) - HF(F_{q-1}/P_{q-1})
    + HF(F_{q-1}/(im φ_q + P_{q-1}))``.

    Accepts a :class:`ChainComplex` (``P = 0``) or a :class:`ModuleComplex`.
    """
    if isinstance(MC, ChainComplex):
        MC = ModuleComplex(MC, FPModule.free(MC.ring, 1))
    ring = MC.ring

    def coker_hf(rank, degs, cols):
        if rank == 0:
            return HilbertFunction.zeros(bound)
        return hilbert_function(FPModule.from_relations(ring, rank, cols, degs), bound)

    if MC.rank(q) == 0:
        return HilbertFunction.zeros(bound)
    a = coker_hf(MC.rank(q), MC.gen_degrees(q),
                 (list(MC.phi(q + 1).columns) if q + 1 <= MC.hi else []) + MC.relations(q))
    if q - 1 < MC.lo:
        return a
    b = coker_hf(MC.rank(q - 1), MC.gen_degrees(q - 1), MC.relations(q - 1))
    c = coker_hf(MC.rank(q - 1), MC.gen_degrees(q - 1),
                 list(MC.phi(q).columns) + MC.relations(q - 1))
    return a - b + c


def binomial_hf(base: HilbertFunction, r: int, q: int, shift: int = 0) -> HilbertFunction:
    """``C(r, q)`` copies of ``base`` moved up by ``shift``."""
    return base.shifted(shift) * comb(r, q)
