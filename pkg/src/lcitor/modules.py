"""Finitely presented modules over a polynomial ring.

A module is the cokernel of a :class:`FreeModuleMap` ``R^s -> R^m``. Every
free module basis element carries an integer degree (its generator degree);
a map is graded when each column is homogeneous of its source degree. These
degrees are what make Hilbert functions of Tor modules, conormal modules and
exterior powers comparable without any normalization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .groebner import (
    GroebnerBasis,
    Ideal,
    ModuleElement,
    NotInSubmoduleError,
    Vec,
    as_raw,
    buchberger,
    syzygies_raw,
    vec_degree,
)
from .ring import PolyRing, Polynomial, RingMismatchError


class NonHomogeneousError(ValueError):
    """A graded computation was requested on ungraded input."""


class BrokenComplexError(ValueError):
    """Image generators are not contained in the kernel (``d∘d ≠ 0`` upstream)."""


# ----------------------------------------------------------------------------
# Maps of free modules
# ----------------------------------------------------------------------------


def _degrees(d: Optional[Sequence[Optional[int]]]) -> Optional[Tuple[int, ...]]:
    if d is None or any(x is None for x in d):
        return None
    return tuple(d)


class FreeModuleMap:
    """A matrix of polynomials ``R^src_rank -> R^tgt_rank``, stored by columns.

    ``src_degrees``/``tgt_degrees`` are generator degrees; when both are
    present the map is checked to be graded (column ``j`` homogeneous of
    degree ``src_degrees[j]``). A map with inhomogeneous entries simply has
    ``graded == False``.
    """

    def __init__(self, ring: PolyRing, src_rank: int, tgt_rank: int, columns: Sequence[Vec],
                 src_degrees=None, tgt_degrees=None):
        if len(columns) != src_rank:
            raise ValueError(f"{len(columns)} columns for source rank {src_rank}")
        for col in columns:
            for pos, m in col:
                if not 0 <= pos < tgt_rank:
                    raise ValueError("column entry outside the target rank")
        self.ring = ring
        self.src_rank = src_rank
        self.tgt_rank = tgt_rank
        self.columns: Tuple[Vec, ...] = tuple(columns)
        self.src_degrees = _degrees(src_degrees)
        self.tgt_degrees = _degrees(tgt_degrees)
        if self.src_degrees is not None and len(self.src_degrees) != src_rank:
            raise ValueError("source degree vector has the wrong length")
        if self.tgt_degrees is not None and len(self.tgt_degrees) != tgt_rank:
            raise ValueError("target degree vector has the wrong length")
        self.graded = self._check_graded()

    def _check_graded(self) -> bool:
        if self.src_degrees is None or self.tgt_degrees is None:
            return False
        ok = True
        for j, col in enumerate(self.columns):
            if not col:
                continue
            d = vec_degree(col, self.tgt_degrees)
            entries_homogeneous = all(
                len({sum(m) for (p, m) in col if p == i}) <= 1 for i in {p for p, _ in col})
            if d is None:
                if entries_homogeneous:
                    raise ValueError(f"column {j} has homogeneous entries of inconsistent degrees")
                ok = False
            elif d != self.src_degrees[j]:
                if entries_homogeneous:
                    raise ValueError(
                        f"column {j} has degree {d} but its source generator has degree "
                        f"{self.src_degrees[j]}")
                ok = False
        return ok

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], src_degrees=None,
                  tgt_degrees=None, src_rank: Optional[int] = None) -> "FreeModuleMap":
        """Build from a row-major matrix of polynomials (or strings)."""
        tgt = len(rows)
        src = len(rows[0]) if rows else (src_rank or 0)
        cols: List[Vec] = [{} for _ in range(src)]
        for i, row in enumerate(rows):
            if len(row) != src:
                raise ValueError("ragged matrix")
            for j, f in enumerate(row):
                for m, c in ring(f).terms.items():
                    cols[j][(i, m)] = c
        return cls(ring, src, tgt, cols, src_degrees, tgt_degrees)

    @classmethod
    def from_columns(cls, ring: PolyRing, tgt_rank: int, columns: Sequence, src_degrees=None,
                     tgt_degrees=None) -> "FreeModuleMap":
        raw = [as_raw(c, ring) for c in columns]
        if src_degrees is None and tgt_degrees is not None:
            src_degrees = [vec_degree(c, tgt_degrees) if c else 0 for c in raw]
        return cls(ring, len(raw), tgt_rank, raw, src_degrees, tgt_degrees)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, degrees=None) -> "FreeModuleMap":
        one = ring.field.one
        z = (0,) * ring.nvars
        deg = tuple(degrees) if degrees is not None else (0,) * n
        return cls(ring, n, n, [{(i, z): one} for i in range(n)], deg, deg)

    @classmethod
    def zero(cls, ring: PolyRing, src_rank: int, tgt_rank: int, src_degrees=None,
             tgt_degrees=None) -> "FreeModuleMap":
        src = tuple(src_degrees) if src_degrees is not None else (0,) * src_rank
        tgt = tuple(tgt_degrees) if tgt_degrees is not None else (0,) * tgt_rank
        return cls(ring, src_rank, tgt_rank, [{} for _ in range(src_rank)], src, tgt)

    # -- access ------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.tgt_rank, self.src_rank)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for (p, m), c in self.columns[j].items() if p == i})

    def matrix(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.src_rank)] for i in range(self.tgt_rank)]

    def column(self, j: int) -> ModuleElement:
        return ModuleElement(self.ring, self.tgt_rank, self.columns[j])

    def is_zero(self) -> bool:
        return not any(self.columns)

    def apply(self, v) -> Vec:
        """Image of a vector of ``R^src_rank`` (raw dict in, raw dict out)."""
        from .groebner import _axpy

        raw = as_raw(v, self.ring)
        F = self.ring.field
        out: Vec = {}
        for (pos, m), c in raw.items():
            _axpy(out, self.columns[pos], c, m, F)
        return out

    def compose(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """``self ∘ other``."""
        if other.tgt_rank != self.src_rank:
            raise ValueError("composition of incompatible maps")
        return FreeModuleMap(self.ring, other.src_rank, self.tgt_rank,
                             [self.apply(c) for c in other.columns],
                             other.src_degrees, self.tgt_degrees)

    def __eq__(self, other):
        return (isinstance(other, FreeModuleMap) and self.shape == other.shape
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.shape, tuple(frozenset(c.items()) for c in self.columns)))

    def __repr__(self):
        rows = self.matrix()
        body = "; ".join(", ".join(str(e) for e in row) for row in rows)
        return f"FreeModuleMap({self.tgt_rank}x{self.src_rank}: [{body}])"


# ----------------------------------------------------------------------------
# Hilbert functions
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertFunction:
    """Graded dimensions ``values[d] = dim_k M_d`` for ``0 <= d <= bound``."""

    bound: int
    values: Tuple[int, ...]

    def __getitem__(self, d):
        return self.values[d]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __add__(self, other: "HilbertFunction") -> "HilbertFunction":
        b = min(self.bound, other.bound)
        return HilbertFunction(b, tuple(a + c for a, c in zip(self.values[:b + 1], other.values)))

    def __sub__(self, other: "HilbertFunction") -> "HilbertFunction":
        b = min(self.bound, other.bound)
        return HilbertFunction(b, tuple(a - c for a, c in zip(self.values[:b + 1], other.values)))

    def __mul__(self, k: int) -> "HilbertFunction":
        return HilbertFunction(self.bound, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def shifted(self, s: int) -> "HilbertFunction":
        """Hilbert function of ``M(-s)`` (generators moved up by ``s``)."""
        vals = tuple(self.values[d - s] if 0 <= d - s <= self.bound else 0
                     for d in range(self.bound + 1))
        return HilbertFunction(self.bound, vals)

    def is_zero(self) -> bool:
        return not any(self.values)

    def total(self) -> int:
        return sum(self.values)

    @classmethod
    def zeros(cls, bound: int) -> "HilbertFunction":
        return cls(bound, (0,) * (bound + 1))

    def to_list(self) -> List[int]:
        return list(self.values)


@lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, d: int) -> Tuple[Tuple[int, ...], ...]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def count_standard_monomials(leads: Sequence[Tuple[int, ...]], nvars: int, d: int) -> int:
    """Number of degree-``d`` monomials outside the monomial ideal ``leads``."""
    if d < 0:
        return 0
    if any(not any(m) for m in leads):
        return 0
    count = 0
    for mono in _monomials_of_degree(nvars, d):
        for m in leads:
            if all(a <= b for a, b in zip(m, mono)):
                break
        else:
            count += 1
    return count


# ----------------------------------------------------------------------------
# Finitely presented modules
# ----------------------------------------------------------------------------


class FPModule:
    """``coker(presentation)``, optionally declared as an ``R/J``-module.

    ``generators``, when set, records how the generators embed into some
    ambient free module (kernels and subquotients keep it for later lifting).
    A zero module is canonicalized to the rank-0 presentation.
    """

    def __init__(self, presentation: FreeModuleMap, annihilator: Optional[Ideal] = None,
                 generators: Optional[Sequence[Vec]] = None, check: bool = True):
        self.ring = presentation.ring
        self.annihilator = annihilator
        self._gb: Optional[GroebnerBasis] = None
        self.generators = tuple(generators) if generators is not None else None
        self.presentation = presentation
        if presentation.tgt_rank and self.relations_gb.is_unit():
            presentation = FreeModuleMap(self.ring, 0, 0, [], (), ())
            self.generators = () if generators is not None else None
            self._gb = None
        self.presentation = presentation
        if check and annihilator is not None and presentation.tgt_rank:
            self._check_annihilator()

    def _check_annihilator(self):
        G = self.relations_gb
        for g in self.annihilator.gens:
            for i in range(self.ngens):
                v = {(i, m): c for m, c in g.terms.items()}
                if G.reduce_raw(v):
                    raise ValueError(f"declared annihilator element {g} does not kill generator {i}")

    # -- constructors ------------------------------------------------------
    @classmethod
    def free(cls, ring: PolyRing, rank: int, degrees=None) -> "FPModule":
        degs = tuple(degrees) if degrees is not None else (0,) * rank
        return cls(FreeModuleMap(ring, 0, rank, [], (), degs))

    @classmethod
    def zero(cls, ring: PolyRing) -> "FPModule":
        return cls.free(ring, 0)

    @classmethod
    def quotient(cls, I: Ideal, degree: int = 0) -> "FPModule":
        """``R/I`` with its generator in ``degree``."""
        ring = I.ring
        cols = [{(0, m): c for m, c in g.terms.items()} for g in I.gens]
        pres = FreeModuleMap.from_columns(ring, 1, cols, tgt_degrees=(degree,))
        return cls(pres, annihilator=I)

    @classmethod
    def from_relations(cls, ring: PolyRing, ngens: int, relations: Sequence, degrees=None,
                       annihilator: Optional[Ideal] = None) -> "FPModule":
        cols = [as_raw(r, ring) for r in relations]
        degs = tuple(degrees) if degrees is not None else None
        pres = FreeModuleMap.from_columns(ring, ngens, cols, tgt_degrees=degs)
        return cls(pres, annihilator=annihilator)

    # -- structure -----------------------------------------------------------
    @property
    def ngens(self) -> int:
        return self.presentation.tgt_rank

    @property
    def degrees(self) -> Optional[Tuple[int, ...]]:
        return self.presentation.tgt_degrees

    @property
    def relations(self) -> Tuple[Vec, ...]:
        return self.presentation.columns

    @property
    def relations_gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.presentation.columns, self.ngens, self.ring,
                                  shifts=self.degrees)
        return self._gb

    def is_zero(self) -> bool:
        return self.ngens == 0

    def is_graded(self) -> bool:
        P = self.presentation
        return P.tgt_degrees is not None and (P.src_rank == 0 or P.graded)

    def is_free(self) -> bool:
        """True when every relation reduces to zero, i.e. no relations at all."""
        return not self.relations_gb.raw

    def hilbert_function(self, bound: int = 12) -> HilbertFunction:
        return hilbert_function(self, bound)

    def __repr__(self):
        ann = f", annihilator={self.annihilator!r}" if self.annihilator is not None else ""
        return (f"FPModule(ngens={self.ngens}, nrels={self.presentation.src_rank}, "
                f"degrees={self.degrees}{ann})")


def hilbert_function(M: FPModule, bound: int = 12) -> HilbertFunction:
    """Graded dimensions of ``M`` up to ``bound``, by counting standard
    monomials of the leading module of its relations."""
    if bound < 0:
        raise ValueError("degree bound must be non-negative")
    if M.is_zero():
        return HilbertFunction.zeros(bound)
    if not M.is_graded():
        raise NonHomogeneousError("Hilbert function needs a homogeneous presentation")
    G = M.relations_gb
    n = M.ring.nvars
    vals = [0] * (bound + 1)
    for pos, shift in enumerate(M.degrees):
        leads = G.leading_monomials(pos)
        for d in range(bound + 1):
            vals[d] += count_standard_monomials(leads, n, d - shift)
    return HilbertFunction(bound, tuple(vals))


def is_zero_module(M: FPModule) -> bool:
    return M.is_zero()


# ----------------------------------------------------------------------------
# Kernels and subquotients
# ----------------------------------------------------------------------------


def _vec_degrees(vecs: Sequence[Vec], shifts) -> Optional[Tuple[int, ...]]:
    if shifts is None:
        return None
    degs = [vec_degree(v, shifts) for v in vecs]
    return _degrees(degs)


def _prune(K: List[Vec], I: List[Vec], rank: int, ring: PolyRing, shifts) -> List[Vec]:
    """Drop generators of ``K`` that are redundant modulo ``span(I)``,
    scanning in increasing degree."""
    if not K:
        return K
    if I:
        GI = buchberger(I, rank, ring, shifts=shifts)
        K = [GI.reduce_raw(k) for k in K]
        K = [k for k in K if k]
    if len(K) <= 1:
        return K
    K = sorted(K, key=lambda v: (vec_degree(v, shifts) if shifts else 0) or 0)
    kept: List[Vec] = []
    G = None
    for k in K:
        if G is not None and not G.reduce_raw(k):
            continue
        kept.append(k)
        G = buchberger(I + kept, rank, ring, shifts=shifts)
    return kept


def subquotient(ker_gens: Sequence, im_gens: Sequence, ambient_rank: int, ring: PolyRing,
                ambient_degrees=None, annihilator: Optional[Ideal] = None,
                prune: bool = True, check: bool = True) -> FPModule:
    """``span(ker_gens) / span(im_gens)`` inside ``R^ambient_rank``.

    The relations on the kept generators ``k_1..k_s`` are the vectors ``a``
    with ``Σ a_j k_j ∈ span(im_gens)``: the projections of the syzygies of
    ``[k | im]``. Without pruning these span the same module as the lifts
    of ``im_gens`` through ``ker_gens`` plus the syzygies of ``ker_gens``.
    """
    K = [v for v in (as_raw(k, ring) for k in ker_gens) if v]
    I = [v for v in (as_raw(i, ring) for i in im_gens) if v]
    if check and I:
        if not K:
            raise BrokenComplexError("nonzero image inside a zero kernel")
        GK = buchberger(K, ambient_rank, ring, shifts=ambient_degrees)
        if any(GK.reduce_raw(v) for v in I):
            raise BrokenComplexError("image generator is not in the kernel")
    if prune:
        K = _prune(K, I, ambient_rank, ring, ambient_degrees)
    if not K:
        return FPModule(FreeModuleMap(ring, 0, 0, [], (), ()), annihilator=annihilator,
                        generators=(), check=False)
    s = len(K)
    kdeg = _vec_degrees(K, ambient_degrees)
    relations = []
    for z in syzygies_raw(K + I, ambient_rank, ring, shifts=ambient_degrees):
        proj = {t: c for t, c in z.items() if t[0] < s}
        if proj:
            relations.append(proj)
    if kdeg is None:
        pres = FreeModuleMap(ring, len(relations), s, relations)
    else:
        pres = FreeModuleMap.from_columns(ring, s, relations, tgt_degrees=kdeg)
    return FPModule(pres, annihilator=annihilator, generators=K, check=False)


def kernel(f: FreeModuleMap) -> FPModule:
    """Kernel of a map of free modules, presented by second syzygies."""
    K = syzygies_raw(list(f.columns), f.tgt_rank, f.ring, shifts=f.tgt_degrees)
    return subquotient(K, [], f.src_rank, f.ring, f.src_degrees, prune=False)


def map_kernel(phi: FreeModuleMap, source: FPModule, target: FPModule) -> FPModule:
    """Kernel of ``coker(P_src) -> coker(P_tgt)`` induced by ``phi`` on
    generators. Elements ``v`` with ``phi(v)`` in the target relations,
    modulo the source relations."""
    ring = phi.ring
    if phi.src_rank != source.ngens or phi.tgt_rank != target.ngens:
        raise ValueError("map does not match the modules' generator counts")
    n = source.ngens
    if n == 0:
        return FPModule.zero(ring)
    cols = list(phi.columns) + list(target.relations)
    shifts = target.degrees
    syz = syzygies_raw(cols, target.ngens, ring, shifts=shifts) if target.ngens else \
        [{(i, (0,) * ring.nvars): ring.field.one} for i in range(n)]
    K = []
    for s in syz:
        proj = {t: c for t, c in s.items() if t[0] < n}
        if proj:
            K.append(proj)
    return subquotient(K, source.relations, n, ring, source.degrees)


def map_cokernel(phi: FreeModuleMap, target: FPModule) -> FPModule:
    """``coker(P_tgt) / image(phi)``."""
    cols = list(target.relations) + list(phi.columns)
    pres = FreeModuleMap.from_columns(phi.ring, target.ngens, cols, tgt_degrees=target.degrees)
    if target.degrees is None:
        pres = FreeModuleMap(phi.ring, len(cols), target.ngens, cols)
    return FPModule(pres, check=False)


# ----------------------------------------------------------------------------
# Tensor, restriction, direct sum
# ----------------------------------------------------------------------------


def _shift_vec(v: Vec, offset: int) -> Vec:
    return {(p + offset, m): c for (p, m), c in v.items()}


def _sum_annihilators(a: Optional[Ideal], b: Optional[Ideal]) -> Optional[Ideal]:
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def tensor_modules(M: FPModule, N: FPModule) -> FPModule:
    """``M ⊗ N`` via ``P_M⊗F_N ⊕ F_M⊗P_N -> F_M⊗F_N``; basis ``e_i⊗f_j`` at
    index ``i*n + j``."""
    if M.ring != N.ring:
        raise RingMismatchError("modules over different rings")
    ring = M.ring
    m, n = M.ngens, N.ngens
    cols: List[Vec] = []
    for p in M.relations:
        for j in range(n):
            cols.append({(i * n + j, mono): c for (i, mono), c in p.items()})
    for i in range(m):
        for q in N.relations:
            cols.append({(i * n + j, mono): c for (j, mono), c in q.items()})
    degs = None
    if M.degrees is not None and N.degrees is not None:
        degs = tuple(a + b for a in M.degrees for b in N.degrees)
    ann = _sum_annihilators(M.annihilator, N.annihilator)
    return FPModule.from_relations(ring, m * n, cols, degs, annihilator=ann)


def restrict_to(M: FPModule, J: Ideal) -> FPModule:
    """``M ⊗ R/J``, recorded as an ``R/J``-module."""
    cols = list(M.relations)
    for i in range(M.ngens):
        for g in J.gens:
            cols.append({(i, m): c for m, c in g.terms.items()})
    ann = J if M.annihilator is None else M.annihilator + J
    return FPModule.from_relations(M.ring, M.ngens, cols, M.degrees, annihilator=ann)


def direct_sum(*mods: FPModule) -> FPModule:
    if not mods:
        raise ValueError("direct sum of nothing")
    ring = mods[0].ring
    cols: List[Vec] = []
    degs: Optional[list] = []
    offset = 0
    for M in mods:
        cols.extend(_shift_vec(r, offset) for r in M.relations)
        if degs is not None and M.degrees is not None:
            degs.extend(M.degrees)
        else:
            degs = None
        offset += M.ngens
    ann = mods[0].annihilator
    for M in mods[1:]:
        if ann is None or M.annihilator is None or not ann.same_as(M.annihilator):
            ann = None
            break
    return FPModule.from_relations(ring, offset, cols, degs, annihilator=ann)


# ----------------------------------------------------------------------------
# Conormal modules and exterior powers
# ----------------------------------------------------------------------------


def conormal(I: Ideal, J: Ideal) -> FPModule:
    """``I / (I·J)`` as an ``R/J``-module on the generators of ``I``.

    Relations: ``h·e_i`` for every generator ``h`` of ``J`` (the lift of
    ``f_i·h`` is ``h·e_i``) plus the syzygies of the generators of ``I``.
    """
    if I.ring != J.ring:
        raise RingMismatchError("ideals over different rings")
    if not J.contains_ideal(I):
        raise ValueError("conormal(I, J) needs I ⊆ J")
    ring = I.ring
    gens = [g for g in I.gens]
    degs = [g.total_degree() if g.is_homogeneous() else None for g in gens]
    degs_t = _degrees(degs)
    raw = [{(0, m): c for m, c in g.terms.items()} for g in gens]
    cols: List[Vec] = []
    for i in range(len(gens)):
        for h in J.gens:
            cols.append({(i, m): c for m, c in h.terms.items()})
    cols.extend(syzygies_raw(raw, 1, ring, shifts=(0,)))
    return FPModule.from_relations(ring, len(gens), cols, degs_t, annihilator=J)


def wedge_basis(n: int, q: int) -> List[Tuple[int, ...]]:
    """q-subsets of ``range(n)`` in lexicographic order."""
    return list(itertools.combinations(range(n), q))


def exterior_power(M: FPModule, q: int) -> FPModule:
    """``∧^q M`` from the presentation ``∧^{q-1}F0 ⊗ F1 -> ∧^q F0``."""
    if q < 0:
        raise ValueError("exterior power of negative degree")
    ring = M.ring
    if q == 0:
        if M.annihilator is not None:
            return FPModule.quotient(M.annihilator)
        return FPModule.free(ring, 1)
    if q == 1:
        return M
    m = M.ngens
    if q > m:
        return FPModule.zero(ring)
    basis = wedge_basis(m, q)
    index = {S: k for k, S in enumerate(basis)}
    degs = None
    if M.degrees is not None:
        degs = tuple(sum(M.degrees[i] for i in S) for S in basis)
    cols: List[Vec] = []
    for S in wedge_basis(m, q - 1):
        Sset = set(S)
        for p in M.relations:
            col: Vec = {}
            for (i, mono), c in p.items():
                if i in Sset:
                    continue
                sign = sum(1 for s in S if s > i) % 2
                T = tuple(sorted(S + (i,)))
                t = (index[T], mono)
                v = ring.field.neg(c) if sign else c
                old = col.get(t)
                if old is None:
                    col[t] = v
                else:
                    v = ring.field.add(old, v)
                    if v:
                        col[t] = v
                    else:
                        del col[t]
            if col:
                cols.append(col)
    return FPModule.from_relations(ring, len(basis), cols, degs, annihilator=M.annihilator)


def hf_equal(M: FPModule, N: FPModule, bound: int = 12) -> bool:
    return hilbert_function(M, bound) == hilbert_function(N, bound)
