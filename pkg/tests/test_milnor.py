import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normlift.errors import (DimensionMismatch, DuplicateCoefficientClass, Infeasible, ParseError,
                             PreconditionViolated, TrivialExtension)
from normlift.milnor import (IteratedLaurentField, KummerExtension, LaurentPolynomial,
                             MonomialElem, NormDecomposition, NormFactor, UnitClassModD, WedgeClass,
                             base_space, eisenstein_level, expand_and_verify, kummer_norm_class,
                             norm_witness, ramification_certify, unit_class, wedge)
from oracles import eisenstein_exponents, independent, intersection_is_zero, sort_sign, wedge_by_expansion


def U(d, *v):
    return UnitClassModD(d, tuple(v))


# classes and wedges ---------------------------------------------------------------


def test_unit_class_examples():
    assert unit_class(MonomialElem((1, 2)), 3).vec == (1, 2)
    assert unit_class(MonomialElem((0, 0), True, "7"), 3).is_zero()
    assert unit_class(MonomialElem((-4, 0)), 3).vec == (2, 0)
    with pytest.raises(ValueError):
        UnitClassModD(4, (1, 0))


def test_wedge_examples():
    assert wedge([U(3, 1, 0), U(3, 0, 1)]).coords == {(0, 1): 1}
    assert wedge([U(3, 1, 2), U(3, 1, 2)]).is_zero()
    assert wedge([U(3, 0, 1), U(3, 1, 0)]).coords == {(0, 1): 2}


def _check_pair(v, w, d):
    a, b = U(d, *v), U(d, *w)
    vw = wedge([a, b])
    assert vw.coords == wedge_by_expansion([v, w], d)
    assert vw == wedge([b, a]).scale(-1)
    assert wedge([a, a]).is_zero()


@pytest.mark.parametrize("d,m", [(d, m) for d in (2, 3, 5) for m in (1, 2, 3, 4)])
def test_exterior_laws(d, m):
    vecs = list(itertools.product(range(d), repeat=m))
    basis = [tuple(int(i == k) for i in range(m)) for k in range(m)]
    if d ** m <= 125:
        pairs = itertools.product(vecs, repeat=2)
    else:
        # (Z/5)^4: every vector against every basis vector spans all pairs by linearity
        pairs = itertools.chain(itertools.product(vecs, basis), itertools.product(basis, vecs))
    for v, w in pairs:
        _check_pair(v, w, d)
    for j in range(1, m + 1):
        for idx in itertools.product(range(m), repeat=j):
            got = wedge([U(d, *basis[i]) for i in idx])
            assert got.coords == wedge_by_expansion([basis[i] for i in idx], d)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 4), st.data())
def test_multilinear_and_alternating(d, m, data):
    vec = st.tuples(*[st.integers(0, d - 1)] * m)
    j = data.draw(st.integers(2, m))
    vs = [U(d, *data.draw(vec)) for _ in range(j)]
    extra = U(d, *data.draw(vec))
    a, b = data.draw(st.integers(0, d - 1)), data.draw(st.integers(0, d - 1))
    slot = data.draw(st.integers(0, j - 1))
    mixed = list(vs)
    mixed[slot] = vs[slot].scale(a) + extra.scale(b)
    other = list(vs)
    other[slot] = extra
    assert wedge(mixed) == wedge(vs).scale(a) + wedge(other).scale(b)
    i, k = data.draw(st.integers(0, j - 1)), data.draw(st.integers(0, j - 1))
    if i != k:
        swapped = list(vs)
        swapped[i], swapped[k] = swapped[k], swapped[i]
        assert wedge(swapped) == wedge(vs).scale(-1)
        repeated = list(vs)
        repeated[i] = repeated[k]
        assert wedge(repeated).is_zero()
    assert wedge(vs).coords == wedge_by_expansion([v.vec for v in vs], d)


# Kummer norms ------------------------------------------------------------------------


def test_norm_examples():
    L = KummerExtension.of(2, 1, (1,))
    assert kummer_norm_class(L, L.pi_class()) == wedge([U(2, 1)])
    K3 = KummerExtension.of(3, 2, (1, 0))
    x = U(3, 0, 1)
    assert kummer_norm_class(K3, K3.restrict(x)).is_zero()
    # projection formula: N({x_K, pi}) = {x_K, u}
    assert kummer_norm_class(K3, K3.restrict(x) ^ wedge([K3.pi_class()])) == wedge([x, U(3, 1, 0)])
    with pytest.raises(TrivialExtension):
        KummerExtension.of(3, 2, (0, 0))
    with pytest.raises(DimensionMismatch):
        kummer_norm_class(K3, wedge([U(3, 1, 0)]))


def _basis_symbols(d, n, j):
    return [WedgeClass.basis(d, n, idx) for idx in itertools.combinations(range(n), j)]


@pytest.mark.parametrize("d,m", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_projection_formula_on_basis_pairs(d, m):
    for u in itertools.product(range(d), repeat=m):
        if not any(u):
            continue
        L = KummerExtension.of(d, m, u)
        for ja in range(0, m + 1):
            for a in _basis_symbols(d, m, ja) if ja else [WedgeClass(d, m, 0, {(): 1})]:
                for jb in range(1, m + 2 - ja):
                    for y in _basis_symbols(d, m + 1, jb):
                        lhs = kummer_norm_class(L, L.restrict(a) ^ y)
                        rhs = a ^ kummer_norm_class(L, y)
                        assert lhs == rhs


def _relabel(x, perm):
    coords = {}
    for idx, a in x.coords.items():
        image = [perm[i] for i in idx]
        key = tuple(sorted(image))
        coords[key] = (coords.get(key, 0) + sort_sign(image) * a) % x.d
    return WedgeClass(x.d, x.m, x.j, coords)


@pytest.mark.parametrize("d,m", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_tower_norms_commute(d, m):
    """For independent u1, u2 the composite norm through K(pi1) and through
    K(pi2) agree on every basis class of K(pi1, pi2)."""
    base = base_space(d, m)
    vecs = [v for v in itertools.product(range(d), repeat=m) if any(v)]
    for u1, u2 in itertools.product(vecs, repeat=2):
        if not independent([u1, u2], d):
            continue
        U1, U2 = U(d, *u1), U(d, *u2)
        L1, L2 = KummerExtension(base, U1), KummerExtension(base, U2)
        L12, L21 = KummerExtension(L1.space, U2.extend([0])), KummerExtension(L2.space, U1.extend([0]))
        for j in range(1, m + 3):
            for x in _basis_symbols(d, m + 2, j):
                via1 = kummer_norm_class(L1, kummer_norm_class(L12, x))
                # read x over K(pi2)(pi1): swap the two adjoined generators
                y = _relabel(x, list(range(m)) + [m + 1, m])
                via2 = kummer_norm_class(L2, kummer_norm_class(L21, y))
                assert base.equal(via1, via2)


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.data())
def test_norm_respects_relations(d, m, data):
    """Symbols equal in L have equal norms in K."""
    vec = st.tuples(*[st.integers(0, d - 1)] * m)
    u = data.draw(vec)
    if not any(u):
        return
    L = KummerExtension.of(d, m, u)
    vec1 = st.tuples(*[st.integers(0, d - 1)] * (m + 1))
    j = data.draw(st.integers(1, m + 1))
    x = wedge([U(d, *data.draw(vec1)) for _ in range(j)])
    # add a multiple of a symbol that vanishes in L: u restricted wedge anything
    z = [U(d, *data.draw(vec1)) for _ in range(j - 1)]
    killer = wedge([U(d, *(u + (0,)))] + z)
    assert L.space.is_zero(killer)
    y = x + killer.scale(data.draw(st.integers(1, d - 1)))
    assert L.space.equal(x, y)
    assert base_space(d, m).equal(kummer_norm_class(L, x), kummer_norm_class(L, y))


# ramification certificates -------------------------------------------------------------


def test_ramification_examples():
    K1 = IteratedLaurentField(1)
    c = ramification_certify(LaurentPolynomial.parse("X^2 - t", K1), 2)
    assert c.certified and c.f0_class.vec == (1,) and c.case == "outer valuation nonzero"
    K2 = IteratedLaurentField(2)
    c = ramification_certify(LaurentPolynomial.parse("X^3 - t1*t2^2", K2), 3)
    assert c.certified and c.f0_class.vec == (1, 2)
    with pytest.raises(PreconditionViolated):
        ramification_certify(LaurentPolynomial.parse("X^2 + t*X + t", K1), 2)
    with pytest.raises(PreconditionViolated):
        ramification_certify(LaurentPolynomial.parse("X^2 - t^2", K1), 2)
    with pytest.raises(PreconditionViolated):
        ramification_certify(LaurentPolynomial.parse("X^4 - t", K1), 4)
    with pytest.raises(ParseError):
        LaurentPolynomial.parse("X^2 + X^2", K1)


def test_inner_level_certificate():
    K2 = IteratedLaurentField(2)
    f = LaurentPolynomial.parse("X^3 - t1*t2^3", K2)
    assert eisenstein_level(f.coeffs, 3, 2) == 1
    c = ramification_certify(f, 3)
    assert c.certified and c.case == "outer valuation nonzero" and c.f0_class.vec == (1, 0)
    g = LaurentPolynomial.parse("X^3 - t1", K2)
    assert ramification_certify(g, 3).case == "outer valuation zero"


def _build(d, m, coeffs):
    K = IteratedLaurentField(m)
    cs = [None] * (d + 1)
    cs[d] = MonomialElem((0,) * m)
    for i, e in coeffs.items():
        cs[i] = MonomialElem(e)
    return LaurentPolynomial(K, tuple(cs))


@given(st.integers(0, 10 ** 6))
def test_eisenstein_type_always_certified(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3, 5])
    m = rng.randint(1, 3)
    coeffs, level = eisenstein_exponents(rng, d, m)
    cert = ramification_certify(_build(d, m, coeffs), d)
    assert cert.certified
    # independent check: f(0) is a d-th power iff every exponent is divisible by d
    assert any(a % d for a in coeffs[0])
    assert cert.f0_class.vec == tuple(a % d for a in coeffs[0])


# norm witnesses ----------------------------------------------------------------------


def test_witness_examples():
    dec = norm_witness(2, 2, [U(2, 1, 0)], [U(2, 0, 0), U(2, 1, 0), U(2, 0, 1)])
    assert dec.case_tag == "independent" and len(dec.factors) == 1
    f = dec.factors[0]
    assert f.pair == (0, 1) and f.exponent == 1
    assert expand_and_verify(dec)
    tampered = NormDecomposition(dec.target, (NormFactor(f.pair, f.radicand, f.element, 0),), dec.case_tag,
                                 dec.delta, dec.slot)
    assert not expand_and_verify(tampered)
    dep = norm_witness(3, 2, [U(3, 1, 0), U(3, 2, 0)], [U(3, 0, 0), U(3, 1, 1)])
    assert dep.case_tag == "dependent" and dep.factors == () and dep.target.is_zero()
    assert expand_and_verify(dep)
    with pytest.raises(DuplicateCoefficientClass):
        norm_witness(3, 2, [U(3, 1, 0)], [U(3, 1, 1), U(3, 1, 1)])
    with pytest.raises(Infeasible):
        norm_witness(3, 2, [U(3, 1, 0)], [U(3, 0, 0), U(3, 0, 1)])


@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
def test_witness_fuzz(d, m1, data):
    vec = st.tuples(*[st.integers(0, d - 1)] * m1)
    j = data.draw(st.integers(1, m1))
    us = [data.draw(vec) for _ in range(j)]
    cs = data.draw(st.lists(vec, min_size=2, max_size=m1 + 2, unique=True))
    try:
        dec = norm_witness(d, m1, [U(d, *u) for u in us], [U(d, *c) for c in cs])
    except Infeasible:
        assert independent(us, d) and intersection_is_zero(us, cs, d)
        return
    assert expand_and_verify(dec)
    if independent(us, d):
        assert not intersection_is_zero(us, cs, d)
    else:
        assert dec.case_tag == "dependent"
