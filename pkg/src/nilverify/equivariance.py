"""Diagonal finite-order actions on the CE complex and invariant cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .ce_complex import (
    AlgebraSpec,
    Certificate,
    CohomologyBasis,
    closed_forms,
    cohomology,
    differential,
)
from .errors import DomainError, PreconditionError
from .exterior import Form, GeneratorSet
from .linalg import Echelon, identity, nullspace
from .scalar import CycloScalar, multiplicative_order


@dataclass(frozen=True)
class ActionSpec:
    """A cyclic group of order ``order`` acting by rho^* g = eigenvalue(g) g."""

    gens: GeneratorSet
    order: int
    eigenvalues: tuple[CycloScalar, ...]

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("action order must be positive")
        if len(self.eigenvalues) != len(self.gens):
            raise DomainError("one eigenvalue per generator is required")
        for name, ev in zip(self.gens.names, self.eigenvalues):
            if multiplicative_order(ev) is None:
                raise DomainError(f"eigenvalue {ev} of {name} is not a root of unity in {self.gens.field}")
        for j, p in enumerate(self.gens.partner):
            if self.eigenvalues[p] != self.eigenvalues[j].conj():
                raise DomainError(
                    f"eigenvalue of {self.gens.names[p]} must be the conjugate of that of {self.gens.names[j]}"
                )

    @classmethod
    def from_holomorphic(cls, gens: GeneratorSet, order: int, eigenvalues: Mapping[str, CycloScalar]) -> "ActionSpec":
        evs = [None] * len(gens)
        for name, ev in eigenvalues.items():
            j = gens.index(name)
            evs[j] = gens.field(ev)
            p = gens.partner[j]
            if evs[p] is None:
                evs[p] = evs[j].conj()
        one = gens.field.one()
        return cls(gens, order, tuple(one if e is None else e for e in evs))

    @classmethod
    def trivial(cls, gens: GeneratorSet) -> "ActionSpec":
        return cls(gens, 1, (gens.field.one(),) * len(gens))

    def eigenvalue(self, name: str) -> CycloScalar:
        return self.eigenvalues[self.gens.index(name)]

    def monomial_eigenvalue(self, mask: int, power: int = 1) -> CycloScalar:
        out = self.gens.field.one()
        for j, ev in enumerate(self.eigenvalues):
            if mask >> j & 1:
                out = out * ev
        return out**power


def act(action: ActionSpec, power: int, a: Form) -> Form:
    """(rho^power)^* a."""
    power %= action.order
    if power == 0:
        return a
    return Form(a.gens, {m: c * action.monomial_eigenvalue(m, power) for m, c in a.terms.items()})


def verify_equivariance(spec: AlgebraSpec, action: ActionSpec) -> Certificate:
    cert = Certificate("equivariance", True)
    if action.gens != spec.gens:
        raise DomainError("action and algebra use different generator sets")
    for name, ev in zip(spec.gens.names, action.eigenvalues):
        if ev ** action.order != 1:
            cert.passed = False
            cert.witness = f"{name}: eigenvalue {ev} has order not dividing {action.order}"
            cert.checks.append(f"rho^{action.order} {name} = {name} fails")
            return cert
    cert.checks.append(f"rho^{action.order} = id on every generator")
    for name in spec.gens.names:
        g = spec.gens.generator(name)
        lhs = act(action, 1, differential(spec, g))
        rhs = differential(spec, act(action, 1, g))
        if lhs != rhs:
            cert.passed = False
            cert.witness = f"{name}: rho^* d {name} = {lhs} but d rho^* {name} = {rhs}"
            cert.checks.append(f"rho^* d {name} = d rho^* {name} fails")
            return cert
        cert.checks.append(f"rho^* d {name} = d rho^* {name}")
    return cert


def average(action: ActionSpec, a: Form) -> Form:
    """The projector (1/n) sum_k (rho^k)^* onto invariant forms."""
    out = Form.zero(a.gens)
    for k in range(action.order):
        out = out + act(action, k, a)
    return out * (action.gens.field(1) / action.order)


def induced_matrix(spec: AlgebraSpec, action: ActionSpec, k: int, power: int = 1) -> list[list[CycloScalar]]:
    """Matrix of (rho^power)^* on H^k; column j is the image of representative j."""
    basis = cohomology(spec, k)
    cols = [basis.coordinates(act(action, power, f)) for f in basis.representatives]
    return [[col[r] for col in cols] for r in range(basis.dimension)]


def _check_pre(spec: AlgebraSpec, action: ActionSpec) -> None:
    cert = verify_equivariance(spec, action)
    if not cert:
        raise PreconditionError(f"action is not equivariant: {cert.witness}")


def invariant_subspace_by_eigenspace(spec: AlgebraSpec, action: ActionSpec, k: int) -> list[list[CycloScalar]]:
    """Coordinates (in the H^k basis) spanning ker(rho^* - 1) on H^k."""
    a = induced_matrix(spec, action, k)
    n = len(a)
    ident = identity(spec.field, n)
    shifted = [[a[i][j] - ident[i][j] for j in range(n)] for i in range(n)]
    return nullspace(shifted, spec.field, n)


def invariant_subspace_by_averaging(spec: AlgebraSpec, action: ActionSpec, k: int) -> list[list[CycloScalar]]:
    """Coordinates spanning the classes of averaged closed cochains."""
    basis = cohomology(spec, k)
    ech = Echelon(spec.field, basis.dimension)
    for z in closed_forms(spec, k):
        pz = average(action, z)
        if differential(spec, pz):
            raise AssertionError(f"averaging left the closed forms at {z}")
        ech.add(basis.coordinates(pz), len(ech))
    return [list(r) for r in ech.rows]


def same_span(field, u: list[list[CycloScalar]], v: list[list[CycloScalar]], dim: int) -> bool:
    eu, ev = Echelon(field, dim), Echelon(field, dim)
    for i, x in enumerate(u):
        eu.add(x, i)
    for i, x in enumerate(v):
        ev.add(x, i)
    return eu.rank == ev.rank and all(eu.contains(x) for x in v)


def invariant_cohomology(spec: AlgebraSpec, action: ActionSpec, k: int) -> CohomologyBasis:
    """H^k(M)^G with invariant representative forms.

    Computed as the eigenvalue-1 eigenspace of the induced map on H^k and
    cross-checked against the span of averaged closed cochains.
    """
    cache = spec._invariant
    key = (action, k)
    if key in cache:
        return cache[key]
    _check_pre(spec, action)
    basis = cohomology(spec, k)
    eig = invariant_subspace_by_eigenspace(spec, action, k)
    avg = invariant_subspace_by_averaging(spec, action, k)
    if not same_span(spec.field, eig, avg, basis.dimension):
        raise AssertionError(f"eigenspace and averaging disagree on invariant H^{k}")
    reps = [_tidy(average(action, basis.class_form(v))) for v in eig]
    out = CohomologyBasis(spec, k, reps, basis.closed_dimension)
    cache[key] = out
    return out


def _tidy(f: Form) -> Form:
    # scale so the leading coefficient is 1; keeps printed reps readable
    for _, c in f:
        return f * c.inv()
    return f


def invariant_betti_numbers(spec: AlgebraSpec, action: ActionSpec) -> list[int]:
    return [invariant_cohomology(spec, action, k).dimension for k in range(spec.dimension + 1)]
