"""Symplectic, complex-structure and Lefschetz certificates on invariant cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from typing import Sequence

from .ce_complex import AlgebraSpec, Certificate, CohomologyBasis, differential, pairing_matrix
from .equivariance import ActionSpec, act, invariant_cohomology
from .errors import DomainError, PreconditionError
from .exterior import Form, GeneratorSet, wedge_all
from .linalg import determinant, nullspace, rank
from .scalar import CycloScalar, sign_of_real

ORIENTATIONS = ("standard", "flipped")


def reference_volume(gens: GeneratorSet, orientation: str = "standard") -> Form:
    """V = prod over (1,0) generators g of (i g ^ ~g); ``flipped`` negates it."""
    if orientation not in ORIENTATIONS:
        raise DomainError(f"orientation must be one of {ORIENTATIONS}")
    i = gens.field.i
    factors = []
    for j, name in enumerate(gens.names):
        if gens.bidegree[j] == (1, 0):
            factors.append(gens.generator(name).wedge(gens.generator(gens.names[gens.partner[j]])) * i)
    vol = wedge_all(factors)
    return -vol if orientation == "flipped" else vol


@dataclass
class SymplecticCertificate:
    form: Form
    real: bool
    closed: bool
    invariant: bool
    top_coefficient: CycloScalar
    sign: int
    orientation: str
    witnesses: dict[str, str] = dc_field(default_factory=dict)

    @property
    def nondegenerate(self) -> bool:
        return bool(self.top_coefficient)

    @property
    def valid(self) -> bool:
        return self.real and self.closed and self.sign > 0

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        return {
            "form": str(self.form),
            "real": self.real,
            "closed": self.closed,
            "invariant": self.invariant,
            "top_coefficient": str(self.top_coefficient),
            "sign": {1: "positive", 0: "zero", -1: "negative"}[self.sign],
            "nondegenerate": self.nondegenerate,
            "orientation": self.orientation,
            "valid": self.valid,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def check_symplectic(spec: AlgebraSpec, action: ActionSpec | None, omega: Form,
                     orientation: str = "standard") -> SymplecticCertificate:
    """Realness, closedness, omega^n = c V with the exact sign of c, and invariance."""
    if omega and omega.degrees() != {2}:
        raise PreconditionError(f"omega must be a pure 2-form, got {omega}")
    gens = spec.gens
    witnesses: dict[str, str] = {}
    defect = omega - omega.conj_form()
    if defect:
        witnesses["real"] = f"omega - conj(omega) = {defect}"
    d_omega = differential(spec, omega)
    if d_omega:
        witnesses["closed"] = f"d omega = {d_omega}"
    n = len(gens) // 2
    power = wedge_all([omega] * n) if n else Form.scalar(gens, 1)
    vol = reference_volume(gens, orientation)
    top = (1 << len(gens)) - 1
    c = power.coefficient(top) / vol.coefficient(top)
    if c.is_real():
        sign = sign_of_real(c)
    else:
        sign = 0
        witnesses["sign"] = f"omega^{n} / V = {c} is not real"
    if not c:
        witnesses["nondegenerate"] = f"omega^{n} = 0"
    invariant = True
    if action is not None:
        moved = act(action, 1, omega) - omega
        if moved:
            invariant = False
            witnesses["invariant"] = f"rho^* omega - omega = {moved}"
    return SymplecticCertificate(omega, not defect, not d_omega, invariant, c, sign, orientation, witnesses)


def check_integrability(spec: AlgebraSpec) -> Certificate:
    """No (0,2) component in d of any (1,0) generator."""
    cert = Certificate("integrability", True)
    gens = spec.gens
    for j, name in enumerate(gens.names):
        if gens.bidegree[j] != (1, 0):
            continue
        bad = spec.differentials[j].bidegree_split().get((0, 2))
        if bad:
            cert.passed = False
            cert.witness = f"d {name} has (0,2) component {bad}"
            cert.checks.append(f"(d {name})^(0,2) = {bad} != 0")
            return cert
        cert.checks.append(f"(d {name})^(0,2) = 0")
    return cert


class InvariantRing:
    """Invariant cohomology of one (spec, action, orientation) triple."""

    def __init__(self, spec: AlgebraSpec, action: ActionSpec, orientation: str = "standard"):
        self.spec = spec
        self.action = action
        self.orientation = orientation
        self.n = spec.dimension
        top = self.basis(self.n)
        if top.dimension != 1:
            raise DomainError(f"invariant top cohomology has dimension {top.dimension}, expected 1")
        vol_coords = top.coordinates(reference_volume(spec.gens, orientation))
        self._vol = vol_coords[0]
        if not self._vol:
            raise DomainError("the reference volume is exact")

    def basis(self, k: int) -> CohomologyBasis:
        return invariant_cohomology(self.spec, self.action, k)

    def top_value(self, f: Form) -> CycloScalar:
        """Coefficient of [f] against [V] in top degree."""
        return self.basis(self.n).coordinates(f)[0] / self._vol

    def coordinates(self, f: Form, k: int | None = None) -> list[CycloScalar]:
        if k is None:
            k = f.degree
        return self.basis(k).coordinates(f)

    def triple_tensor(self) -> list[list[list[CycloScalar]]]:
        """T[a][b][c] = <alpha_a ^ alpha_b ^ alpha_c, [V]> on the H^2 basis."""
        reps = self.basis(2).representatives
        m = len(reps)
        zero = self.spec.field.zero()
        t = [[[zero] * m for _ in range(m)] for _ in range(m)]
        for a, b, c in combinations_with_replacement(range(m), 3):
            v = self.top_value(reps[a].wedge(reps[b]).wedge(reps[c]))
            for x, y, z in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
                t[x][y][z] = v
        return t

    def pairing(self, k: int = 2) -> list[list[CycloScalar]]:
        top = self._vol
        return [[x / top for x in row] for row in pairing_matrix(self.spec, k, self.basis)]


@dataclass
class LefschetzReport:
    omega: list[CycloScalar]
    domain: tuple[Form, ...]
    codomain: tuple[Form, ...]
    matrix: list[list[CycloScalar]]
    rank: int
    kernel: list[list[CycloScalar]]
    triple_products: list[list[list[CycloScalar]]]

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)

    @property
    def lefschetz_holds(self) -> bool:
        return len(self.domain) == len(self.codomain) and self.rank == len(self.domain)

    def kernel_forms(self) -> list[Form]:
        out = []
        for v in self.kernel:
            f = Form.zero(self.domain[0].gens) if self.domain else None
            for c, rep in zip(v, self.domain):
                if c:
                    f = f + rep * c
            out.append(f)
        return out

    def to_dict(self) -> dict:
        s = lambda rows: [[str(x) for x in r] for r in rows]
        return {
            "omega_class": [str(x) for x in self.omega],
            "h2_basis": [str(f) for f in self.domain],
            "h4_basis": [str(f) for f in self.codomain],
            "matrix": s(self.matrix),
            "rank": self.rank,
            "kernel_dimension": self.kernel_dimension,
            "kernel": s(self.kernel),
            "kernel_forms": [str(f) for f in self.kernel_forms()],
            "lefschetz_holds": self.lefschetz_holds,
            "triple_products": [s(plane) for plane in self.triple_products],
        }


def _as_coords(ring: InvariantRing, omega) -> list[CycloScalar]:
    if isinstance(omega, Form):
        if omega and omega.degrees() != {2}:
            raise PreconditionError(f"expected a 2-form, got {omega}")
        return ring.coordinates(omega, 2)
    coords = [ring.spec.field(x) for x in omega]
    if len(coords) != ring.basis(2).dimension:
        raise PreconditionError(f"expected {ring.basis(2).dimension} coordinates on invariant H^2")
    return coords


def lefschetz_report(spec: AlgebraSpec, action: ActionSpec, omega, orientation: str = "standard") -> LefschetzReport:
    """Matrix of cup with [omega] from invariant H^2 to invariant H^4, rank and kernel."""
    ring = InvariantRing(spec, action, orientation)
    coords = _as_coords(ring, omega)
    h2, h4 = ring.basis(2), ring.basis(4)
    om = h2.class_form(coords)
    cols = [h4.coordinates(om.wedge(a)) for a in h2.representatives]
    matrix = [[col[r] for col in cols] for r in range(h4.dimension)]
    r = rank(matrix, spec.field) if matrix and h2.dimension else 0
    kernel = nullspace(matrix, spec.field, h2.dimension)
    return LefschetzReport(coords, h2.representatives, h4.representatives, matrix, r, kernel, ring.triple_tensor())


@dataclass
class KernelCertificate:
    beta: list[CycloScalar]
    granted: bool
    products: dict[tuple[int, int], CycloScalar]
    pairing_determinant: CycloScalar
    witness: tuple[int, int] | None
    basis: tuple[Form, ...]

    def __bool__(self) -> bool:
        return self.granted

    def to_dict(self) -> dict:
        name = lambda i: str(self.basis[i])
        return {
            "beta_class": [str(x) for x in self.beta],
            "beta_form": str(sum((f * c for c, f in zip(self.beta, self.basis) if c), Form.zero(self.basis[0].gens))),
            "granted": self.granted,
            "triple_products": [
                {"alpha_1": name(i), "alpha_2": name(j), "value": str(v)} for (i, j), v in sorted(self.products.items())
            ],
            "pairing_determinant": str(self.pairing_determinant),
            "witness": None if self.witness is None else [name(self.witness[0]), name(self.witness[1])],
        }


def universal_kernel_certificate(spec: AlgebraSpec, action: ActionSpec, beta,
                                 orientation: str = "standard") -> KernelCertificate:
    """Check T(beta, a_i, a_j) = 0 for all pairs of invariant H^2 basis classes.

    Together with a nonzero pairing determinant this puts [beta] in the kernel
    of cup with every invariant class [Omega].
    """
    ring = InvariantRing(spec, action, orientation)
    coords = _as_coords(ring, beta)
    if not any(coords):
        raise PreconditionError("beta must be a nonzero class")
    h2 = ring.basis(2)
    b = h2.class_form(coords)
    products: dict[tuple[int, int], CycloScalar] = {}
    witness = None
    reps = h2.representatives
    for i, j in combinations_with_replacement(range(len(reps)), 2):
        v = ring.top_value(b.wedge(reps[i]).wedge(reps[j]))
        products[(i, j)] = v
        if v and witness is None:
            witness = (i, j)
    det = determinant(ring.pairing(2), spec.field)
    return KernelCertificate(coords, witness is None and bool(det), products, det, witness, reps)


def universal_kernel_search(spec: AlgebraSpec, action: ActionSpec, orientation: str = "standard") -> list[list[CycloScalar]]:
    """All beta in invariant H^2 with T(beta, ., .) = 0, as a basis of coordinates."""
    ring = InvariantRing(spec, action, orientation)
    t = ring.triple_tensor()
    m = len(t)
    rows = [[t[b][i][j] for b in range(m)] for i, j in combinations_with_replacement(range(m), 2)]
    return nullspace(rows, spec.field, m)


def pairing_determinant(spec: AlgebraSpec, action: ActionSpec, k: int = 2, orientation: str = "standard") -> CycloScalar:
    return determinant(InvariantRing(spec, action, orientation).pairing(k), spec.field)


def lefschetz_via_triple_products(ring: InvariantRing, coords: Sequence[CycloScalar]) -> list[list[CycloScalar]]:
    """The bilinear form (a, b) -> T(omega, a, b) on invariant H^2."""
    t = ring.triple_tensor()
    m = len(t)
    zero = ring.spec.field.zero()
    return [[sum((coords[o] * t[o][a][b] for o in range(m) if coords[o]), zero) for b in range(m)] for a in range(m)]
