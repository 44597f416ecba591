"""Hypothesis strategies for polynomials and homogeneous sequences."""

from fractions import Fraction

from hypothesis import strategies as st

from lcitor.ring import QQ, PolyRing

RINGS = {n: PolyRing(QQ, list("xyzw"[:n])) for n in range(1, 5)}

small_fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def polynomials(draw, ring, max_deg=4, max_terms=5, coeffs=small_fractions):
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n)))
        if sum(exps) > max_deg:
            continue
        terms[exps] = draw(coeffs)
    return ring.from_terms(terms)


@st.composite
def forms(draw, ring, deg, coeffs=st.integers(-3, 3)):
    from lcitor.corpus import monomials
    mons = monomials(ring.nvars, deg)
    terms = {m: draw(coeffs) for m in mons if draw(st.booleans())}
    f = ring.from_terms(terms)
    if not f:
        f = ring.monomial(mons[draw(st.integers(0, len(mons) - 1))])
    return f


@st.composite
def homogeneous_sequences(draw, nvars=(1, 3), length=(1, 3), max_deg=2):
    n = draw(st.integers(*nvars))
    ring = RINGS[n]
    k = draw(st.integers(*length))
    return [draw(forms(ring, draw(st.integers(1, max_deg)))) for _ in range(k)]
