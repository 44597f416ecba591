"""Gröbner-free oracles: graded pieces as explicit vector spaces.

Everything here is plain linear algebra over Fraction on monomial bases of
fixed degree, so it shares no code path with the engine's Buchberger
machinery. Slow, but fine for the tiny degrees used in tests.
"""

from fractions import Fraction
from itertools import combinations_with_replacement


def monomials(nvars, d):
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def rank(rows):
    """Rank of a list of sparse rows (dict col -> Fraction)."""
    rows = [dict(r) for r in rows if r]
    pivots = {}
    r = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                f = row[col] / prow[col]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                pivots[col] = row
                r += 1
                break
    return r


def _coeff(c):
    return Fraction(c) if not isinstance(c, Fraction) else c


def _to_vec(poly_by_pos, index):
    """{(pos, mono): coeff} -> sparse row over the given (pos, mono) index."""
    return {index[k]: _coeff(c) for k, c in poly_by_pos.items()}


def _shift_mono(m, e):
    return tuple(a + b for a, b in zip(m, e))


def graded_span_rank(columns, nvars, tgt_degrees, d):
    """Rank of the degree-d part of the submodule of ⊕ R(-tgt_degrees[i])
    generated by homogeneous ``columns`` (dicts {(pos, mono): coeff})."""
    index = {}
    for pos, td in enumerate(tgt_degrees):
        for m in monomials(nvars, d - td):
            index[(pos, m)] = len(index)
    rows = []
    for col in columns:
        if not col:
            continue
        pos0, m0 = next(iter(col))
        cdeg = sum(m0) + tgt_degrees[pos0]
        for e in monomials(nvars, d - cdeg):
            rows.append({index[(p, _shift_mono(m, e))]: _coeff(c) for (p, m), c in col.items()})
    return rank(rows), len(index)


def coker_hf(columns, nvars, tgt_degrees, bound):
    """Hilbert function of coker of a homogeneous presentation."""
    out = []
    for d in range(bound + 1):
        r, n = graded_span_rank(columns, nvars, tgt_degrees, d)
        out.append(n - r)
    return out


def quotient_hf(polys, nvars, bound):
    """HF of R / (polys) for homogeneous polys (Polynomial objects)."""
    cols = [{(0, m): c for m, c in f.terms.items()} for f in polys if f]
    return coker_hf(cols, nvars, [0], bound)


def _map_matrix_degree_d(fmap, nvars, d):
    """Matrix of the degree-d part of a graded FreeModuleMap as rows indexed
    by target basis, returned as (list of column vectors, src dim, tgt index)."""
    src_deg = fmap.src_degrees
    tgt_deg = fmap.tgt_degrees
    tindex = {}
    for pos, td in enumerate(tgt_deg):
        for m in monomials(nvars, d - td):
            tindex[(pos, m)] = len(tindex)
    images = []
    for j, sd in enumerate(src_deg):
        col = fmap.columns[j]
        for e in monomials(nvars, d - sd):
            images.append({tindex[(p, _shift_mono(m, e))]: _coeff(c) for (p, m), c in col.items()})
    return images, len(tindex)


def complex_homology_hf(C, q, bound):
    """dim H_q(C)_d = dim C_q,d - rank d_q,d - rank d_{q+1},d."""
    nv = C.ring.nvars
    out = []
    degs = C.module_degrees(q)
    for d in range(bound + 1):
        dim_q = sum(len(monomials(nv, d - s)) for s in degs) if degs else 0
        rk_out = 0
        if q - 1 >= C.lo and C.rank(q) and C.rank(q - 1):
            imgs, _ = _map_matrix_degree_d(C.d(q), nv, d)
            rk_out = rank(imgs)
        rk_in = 0
        if q + 1 <= C.hi and C.rank(q + 1) and C.rank(q):
            imgs, _ = _map_matrix_degree_d(C.d(q + 1), nv, d)
            rk_in = rank(imgs)
        out.append(dim_q - rk_out - rk_in)
    return out


def koszul_ranks_binomial(n, q):
    from math import comb
    return comb(n, q)
