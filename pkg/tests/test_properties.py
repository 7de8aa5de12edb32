"""Randomized property suites; every test runs 1000 generated cases."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nilverify.ce_complex import AlgebraSpec, cohomology, cup, differential, pairing_matrix
from nilverify.exterior import Form, GeneratorSet, parse_form
from nilverify.fixed_locus import HeisenbergAction, HeisPoint, Lattice, group_mul
from nilverify.scalar import CyclotomicField, sign_of_real

N = 1000
F = CyclotomicField(12)
G = GeneratorSet.holomorphic(["mu", "nu", "theta"], F)
SPEC = AlgebraSpec.from_holomorphic(G, {"theta": parse_form("mu^nu", G)})
Z6 = F.root_of_unity(6)
LAT = Lattice(Z6)
RHO = HeisenbergAction([Z6**4, Z6, Z6**5], 6, LAT)

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))
scalars = st.lists(fractions, min_size=4, max_size=4).map(F.from_coefficients)
nonzero = scalars.filter(bool)


def forms(degree: int | None = None, max_terms: int = 4):
    masks = st.sampled_from(G.monomials(degree)) if degree is not None else st.integers(0, 63)
    return st.dictionaries(masks, nonzero, max_size=max_terms).map(lambda d: Form(G, d))


def homogeneous():
    return st.integers(0, 6).flatmap(lambda k: st.tuples(st.just(k), forms(k)))


# -- field axioms ---------------------------------------------------------------------


@settings(max_examples=N)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero() == a and a * F.one() == a
    assert a - a == 0


@settings(max_examples=N)
@given(nonzero, scalars)
def test_inverse_and_division(a, b):
    assert a * a.inv() == 1
    assert (b / a) * a == b


@settings(max_examples=N)
@given(scalars, scalars)
def test_conjugation_is_field_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


@settings(max_examples=N)
@given(nonzero)
def test_norm_is_positive(a):
    n = a * a.conj()
    assert n.is_real()
    assert sign_of_real(n) == 1


# -- exterior algebra ---------------------------------------------------------------------


@settings(max_examples=N)
@given(homogeneous(), homogeneous())
def test_wedge_graded_commutative(pa, pb):
    (p, a), (q, b) = pa, pb
    expected = b.wedge(a) if (p * q) % 2 == 0 else -b.wedge(a)
    assert a.wedge(b) == expected


@settings(max_examples=N)
@given(forms(), forms(), forms())
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=N)
@given(forms(), forms(), scalars)
def test_conj_form_is_multiplicative(a, b, s):
    assert (a.wedge(b)).conj_form() == a.conj_form().wedge(b.conj_form())
    assert (a * s).conj_form() == a.conj_form() * s.conj()
    assert a.conj_form().conj_form() == a


# -- the differential ---------------------------------------------------------------------


@settings(max_examples=N)
@given(homogeneous(), forms())
def test_leibniz_rule(pa, b):
    p, a = pa
    lhs = differential(SPEC, a.wedge(b))
    rhs = differential(SPEC, a).wedge(b) + a.wedge(differential(SPEC, b)) * (-1) ** p
    assert lhs == rhs


@settings(max_examples=N)
@given(forms(max_terms=6))
def test_d_squared_is_zero(a):
    assert not differential(SPEC, differential(SPEC, a))


# -- cohomology ---------------------------------------------------------------------


def _class_and_shift(j: int):
    dim = cohomology(SPEC, j).dimension
    return st.tuples(st.lists(fractions, min_size=dim, max_size=dim), forms(j - 1, max_terms=3))


degree_pairs = st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 3), (2, 4)])


@settings(max_examples=N)
@given(degree_pairs.flatmap(lambda jk: st.tuples(st.just(jk), _class_and_shift(jk[0]), _class_and_shift(jk[1]))))
def test_cup_is_independent_of_representatives(data):
    (j, k), (x, p), (y, q) = data
    x = [F(c) for c in x]
    y = [F(c) for c in y]
    hx, hy = cohomology(SPEC, j), cohomology(SPEC, k)
    fx = hx.class_form(x) + differential(SPEC, p)
    fy = hy.class_form(y) + differential(SPEC, q)
    assert cohomology(SPEC, j + k).coordinates(fx.wedge(fy)) == cup(SPEC, x, j, y, k)


PAIRINGS = {k: pairing_matrix(SPEC, k) for k in range(7)}


@settings(max_examples=N)
@given(st.integers(0, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(fractions, min_size=cohomology(SPEC, k).dimension,
                                              max_size=cohomology(SPEC, k).dimension))))
def test_poincare_pairing_nondegenerate(data):
    k, x = data
    assume(any(x))
    row = PAIRINGS[k]
    image = [sum((F(c) * row[i][j] for i, c in enumerate(x)), F.zero()) for j in range(len(row[0]))]
    assert any(image)


# -- the Heisenberg group ---------------------------------------------------------------------

coords = st.builds(LAT.element, fractions, fractions)
points = st.builds(HeisPoint, coords, coords, coords)
lattice_points = st.builds(
    HeisPoint,
    *(st.builds(LAT.element, st.integers(-3, 3), st.integers(-3, 3)) for _ in range(3)),
)


@settings(max_examples=N)
@given(points, points, points)
def test_group_mul_associative(g, h, k):
    assert group_mul(group_mul(g, h), k) == group_mul(g, group_mul(h, k))


@settings(max_examples=N)
@given(points, points, st.integers(0, 5))
def test_rho_is_group_automorphism(g, h, k):
    assert RHO.rho_power(k, RHO.mul(g, h)) == RHO.mul(RHO.rho_power(k, g), RHO.rho_power(k, h))


@settings(max_examples=N)
@given(lattice_points, points, st.integers(0, 5))
def test_rho_descends_to_quotient(gamma, g, k):
    moved = RHO.mul(gamma, g)
    assert RHO.normalize(moved) == RHO.normalize(g)
    assert RHO.normalize(RHO.rho_power(k, moved)) == RHO.normalize(RHO.rho_power(k, g))
    n = RHO.normalize(g)
    assert RHO.normalize(n) == n
