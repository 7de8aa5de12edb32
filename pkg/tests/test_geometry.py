from __future__ import annotations

import pytest

from nilverify.ce_complex import AlgebraSpec
from nilverify.equivariance import ActionSpec
from nilverify.errors import PreconditionError
from nilverify.exterior import Form, GeneratorSet, parse_form
from nilverify.geometry import (
    InvariantRing,
    check_integrability,
    check_symplectic,
    lefschetz_report,
    lefschetz_via_triple_products,
    pairing_determinant,
    reference_volume,
    universal_kernel_certificate,
    universal_kernel_search,
)
from nilverify.linalg import rank

G = GeneratorSet.holomorphic(["mu", "nu", "theta"])
F = G.field
Z6 = F.root_of_unity(6)
SPEC = AlgebraSpec.from_holomorphic(G, {"theta": parse_form("mu^nu", G)})
RHO = ActionSpec.from_holomorphic(G, 6, {"mu": Z6**4, "nu": Z6, "theta": Z6**5})
OMEGA = parse_form("-i*mu^~mu + nu^theta + ~nu^~theta", G)


def f(text: str) -> Form:
    return parse_form(text, G)


def test_reference_volume():
    v = reference_volume(G)
    assert v == f("(i*mu^~mu)^(i*nu^~nu)^(i*theta^~theta)")
    assert reference_volume(G, "flipped") == -v


def test_omega_structure():
    cert = check_symplectic(SPEC, RHO, OMEGA)
    assert cert.real and cert.closed and cert.invariant and cert.nondegenerate


def test_omega_cube_is_minus_six_volumes():
    # (-i mu~mu)(nu theta)(~nu ~theta) = -(i mu~mu)(i nu~nu)(i theta~theta)
    cert = check_symplectic(SPEC, RHO, OMEGA)
    assert cert.top_coefficient == -6
    assert cert.sign == -1
    flipped = check_symplectic(SPEC, RHO, OMEGA, "flipped")
    assert flipped.sign == 1 and flipped.valid


def test_negated_omega_flips_sign():
    a = check_symplectic(SPEC, RHO, OMEGA)
    b = check_symplectic(SPEC, RHO, -OMEGA)
    assert b.real and b.closed
    assert b.sign == -a.sign


def test_degenerate_form():
    cert = check_symplectic(SPEC, RHO, f("nu^theta + ~nu^~theta"))
    assert cert.top_coefficient == 0
    assert not cert.nondegenerate and not cert.valid


def test_non_real_and_non_closed_witnesses():
    cert = check_symplectic(SPEC, None, f("i*nu^theta + ~nu^~theta + mu^~mu"))
    assert not cert.real and "real" in cert.witnesses
    cert = check_symplectic(SPEC, None, f("~mu^theta + mu^~theta + i*nu^~nu"))
    assert cert.real and not cert.closed and "closed" in cert.witnesses


def test_integrability():
    assert check_integrability(SPEC)
    assert check_integrability(AlgebraSpec(G, {}))
    bad = AlgebraSpec.from_holomorphic(G, {"theta": f("~mu^~nu")})
    cert = check_integrability(bad)
    assert not cert
    assert "~mu^~nu" in cert.witness


def test_lefschetz_report_for_omega():
    rep = lefschetz_report(SPEC, RHO, OMEGA)
    assert rep.rank == 3
    assert rep.kernel_dimension == 1
    assert rep.kernel_forms() == [f("nu^~nu")]
    assert not rep.lefschetz_holds


def test_lefschetz_zero_class():
    rep = lefschetz_report(SPEC, RHO, Form.zero(G))
    assert rep.rank == 0 and rep.kernel_dimension == 4


def test_lefschetz_nunubar_kills_nutheta():
    rep = lefschetz_report(SPEC, RHO, f("nu^~nu"))
    col = rep.domain.index(f("nu^theta"))
    assert all(not row[col] for row in rep.matrix)


def test_triple_products_agree_with_matrix():
    ring = InvariantRing(SPEC, RHO)
    coords = ring.coordinates(OMEGA)
    bilinear = lefschetz_via_triple_products(ring, coords)
    assert rank(bilinear, F) == lefschetz_report(SPEC, RHO, OMEGA).rank


def test_universal_kernel_for_nunubar():
    cert = universal_kernel_certificate(SPEC, RHO, f("nu^~nu"))
    assert cert.granted
    assert len(cert.products) == 10
    assert all(not v for v in cert.products.values())
    assert cert.pairing_determinant


def test_universal_kernel_refused_for_nutheta():
    cert = universal_kernel_certificate(SPEC, RHO, f("nu^theta"))
    assert not cert.granted
    i, j = cert.witness
    assert {cert.basis[i], cert.basis[j]} == {f("mu^~mu"), f("~nu^~theta")}


def test_universal_kernel_zero_beta():
    with pytest.raises(PreconditionError):
        universal_kernel_certificate(SPEC, RHO, Form.zero(G))


def test_universal_kernel_search_finds_only_nunubar():
    kern = universal_kernel_search(SPEC, RHO)
    assert len(kern) == 1
    h2 = InvariantRing(SPEC, RHO).basis(2)
    assert h2.class_form(kern[0]) == f("nu^~nu")


def test_pairing_nondegenerate():
    assert pairing_determinant(SPEC, RHO, 2)
    assert pairing_determinant(SPEC, RHO, 4)


def test_torus_has_no_universal_kernel():
    torus = AlgebraSpec(G, {})
    assert universal_kernel_search(torus, RHO) == []
    assert not universal_kernel_certificate(torus, RHO, f("nu^~nu"))
    rep = lefschetz_report(torus, RHO, OMEGA)
    assert rep.lefschetz_holds
