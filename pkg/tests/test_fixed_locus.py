from __future__ import annotations

from fractions import Fraction

import pytest

from nilverify.errors import DomainError, PreconditionError
from nilverify.fixed_locus import (
    HeisenbergAction,
    HeisPoint,
    Lattice,
    group_mul,
    inverse,
    orbit_decomposition,
    singular_locus_report,
    torus_fixed_points,
)
from nilverify.scalar import CyclotomicField

F = CyclotomicField(12)
Z = F.root_of_unity(6)  # zeta = zeta_6, the lattice generator
LAT = Lattice(Z)
RHO = HeisenbergAction([Z**4, Z, Z**5], 6, LAT)
ONE_PLUS = 1 + Z
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def pt(*c) -> HeisPoint:
    return RHO.point(*c)


def test_group_law_examples():
    e = pt(0, 0, 0)
    g = pt(Z, 2, Z / 3)
    assert group_mul(e, g) == g
    assert group_mul(pt(1, 0, 0), pt(0, 1, 0)) == pt(1, 1, 0)
    assert group_mul(pt(0, 1, 0), pt(1, 0, 0)) == pt(1, 1, 1)
    assert group_mul(g, inverse(g)) == e
    assert inverse(g) == pt(-Z, -2, -Z / 3 + 2 * Z)


def test_rho_power_examples():
    g = pt(Z / 7, Fraction(2, 5), 1 + Z)
    assert RHO.rho_power(6, g) == g
    assert RHO.rho_power(0, g) == g
    assert RHO.rho_power(3, g) == pt(g.u1, -g.u2, -g.u3)


def test_normalize_examples():
    assert RHO.normalize(pt(1, 0, 0)) == pt(0, 0, 0)
    p = pt(ONE_PLUS * THIRD, 0, 0)
    assert RHO.normalize(p) == p
    with pytest.raises(DomainError):
        RHO.normalize(pt(F.zeta(), 0, 0))


def test_normalize_is_left_coset_invariant():
    g = pt(Z * Fraction(2, 7), Fraction(3, 5) + Z, Fraction(1, 9))
    for gamma in (pt(1, 0, 0), pt(0, Z, 0), pt(Z, 1, 3), pt(0, 0, Z)):
        assert RHO.normalize(group_mul(gamma, g)) == RHO.normalize(g)


def _as_set(points):
    return {tuple(LAT.sort_key(c) for c in RHO.normalize(p)) for p in points}


def test_torus_fixed_points_examples():
    assert _torus(Z**4) == {LAT.sort_key(F.zero()), LAT.sort_key(ONE_PLUS * THIRD), LAT.sort_key(ONE_PLUS * 2 * THIRD)}
    two_torsion = [F.zero(), F(HALF), Z * HALF, ONE_PLUS * HALF]
    assert _torus(Z**3) == {LAT.sort_key(u) for u in two_torsion}
    assert _torus(Z) == {LAT.sort_key(F.zero())}
    assert torus_fixed_points(F.one(), LAT) is None


def _torus(m):
    return {LAT.sort_key(u) for u in torus_fixed_points(m, LAT)}


def test_fixed_strata_rho2_formula():
    strata = RHO.fixed_strata(2)
    assert len(strata) == 27
    assert all(s.kind == "point" for s in strata)
    expected = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                expected.append(pt(a * THIRD * ONE_PLUS, b * THIRD * ONE_PLUS,
                                   c * THIRD * ONE_PLUS + Fraction(2, 9) * a * b * ONE_PLUS**2))
    assert _as_set(s.point for s in strata) == _as_set(expected)
    # same cosets, but 11 printed representatives differ from the canonical ones by a Gamma-translation
    assert sum(RHO.normalize(p) != p for p in expected) == 11
    names = sorted(s.isotropy_name for s in strata)
    assert names.count("K") == 24 and names.count("full") == 3


def test_fixed_strata_rho3_families():
    strata = RHO.fixed_strata(3)
    assert len(strata) == 16
    assert all(s.kind == "surface" and s.free == (0,) and s.isotropy_name == "H" for s in strata)
    two_torsion = [F.zero(), F(HALF), Z * HALF, ONE_PLUS * HALF]
    keys = {RHO.stratum_key(s) for s in strata}
    expected = {RHO.stratum_key(RHO.canonical_family(p, p, q)) for p in two_torsion for q in two_torsion}
    assert keys == expected


def test_fixed_strata_rho1_points():
    strata = RHO.fixed_strata(1)
    assert _as_set(s.point for s in strata) == _as_set(pt(a * THIRD * ONE_PLUS, 0, 0) for a in range(3))
    assert all(s.isotropy_name == "full" for s in strata)
    assert len(RHO.fixed_strata(5)) == 3


def test_fixed_strata_power_range():
    with pytest.raises(PreconditionError):
        RHO.fixed_strata(0)


def test_isotropy_examples():
    assert len(RHO.isotropy(pt(0, 0, 0))) == 6
    assert RHO.isotropy(pt(THIRD * ONE_PLUS, THIRD * ONE_PLUS, Fraction(2, 9) * ONE_PLUS**2)) == frozenset({0, 2, 4})
    assert RHO.isotropy(pt(THIRD * ONE_PLUS, THIRD * ONE_PLUS, 0)) == frozenset({0})
    generic = RHO.canonical_family(F(HALF), F(HALF), F.zero()).at(Z * Fraction(2, 11) + Fraction(1, 7))
    assert RHO.isotropy(generic) == frozenset({0, 3})


def test_every_stratum_reverifies():
    for k in range(1, 6):
        assert all(RHO.verify_stratum(s) for s in RHO.fixed_strata(k))


def test_orbit_examples():
    k_points = [s for s in RHO.fixed_strata(2) if s.isotropy_name == "K"]
    orbits = orbit_decomposition(k_points, RHO)
    assert [o.size for o in orbits] == [2] * 12
    fams = RHO.fixed_strata(3)
    orbits = orbit_decomposition(fams, RHO)
    sizes = sorted(o.size for o in orbits)
    assert sizes == [1] + [3] * 5
    s0 = next(o for o in orbits if o.size == 1).representative
    assert s0.point == pt(0, 0, 0) and not s0.slope


def test_families_glue_into_seven_components():
    # (1,0,0).(u1, 1/2, u1/2 + 1/2) = (u1 + 1, 1/2, (u1 + 1)/2): S_(1/2,1/2) and S_(1/2,0) meet
    g = pt(Z / 5, HALF, Z / 10 + HALF)
    h = group_mul(pt(1, 0, 0), g)
    assert h == pt(Z / 5 + 1, HALF, (Z / 5 + 1) * HALF)
    comps = orbit_decomposition(RHO.fixed_strata(3), RHO, by="component")
    assert sum(o.size for o in comps) == 7
    assert sorted(o.size for o in comps) == [1, 3, 3]


def test_singular_locus_counts():
    rep = singular_locus_report(RHO)
    c = rep.counts
    assert c["isolated_points_in_M"] == 24
    assert c["isolated_orbifold_points"] == 12
    assert c["surface_families_in_M"] == 16
    assert c["surface_family_orbits_excluding_S0"] == 5
    assert c["S0_components"] == 1
    assert c["S0_points_with_full_isotropy"] == 3
    assert rep.s0_rho_order == 3


def test_curve_ramification():
    rep = singular_locus_report(RHO)
    sigma = {c.name: c for c in rep.curves}
    assert sigma["Sigma_1"].degree == 3 and sigma["Sigma_1"].orders == [3, 3, 3]
    assert {LAT.sort_key(u) for u, _ in sigma["Sigma_1"].points} == {
        LAT.sort_key(a * THIRD * ONE_PLUS) for a in range(3)}
    for name in ("Sigma_2", "Sigma_3"):
        assert sigma[name].degree == 6 and sigma[name].orders == [6, 3, 3, 2, 2, 2]
    assert all(c.image_genus == 0 for c in rep.curves)


def test_trivial_action_has_empty_locus():
    triv = HeisenbergAction([F.one()] * 3, 1, LAT)
    rep = singular_locus_report(triv)
    assert not rep.isolated_points and not rep.surfaces


def test_automorphism_condition():
    with pytest.raises(DomainError):
        HeisenbergAction([Z, Z, Z], 6, LAT)
