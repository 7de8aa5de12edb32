"""Chevalley-Eilenberg complex of a Lie algebra given by structure differentials.

The complex is the exterior algebra on the dual basis with d extended from
the generators as a degree +1 graded derivation. For a nilmanifold its
cohomology is the de Rham cohomology (Nomizu); here it is simply computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, Sequence

from .errors import DomainError, PreconditionError
from .exterior import Form, GeneratorSet, degree_of
from .linalg import Echelon, Vector
from .scalar import CycloScalar


@dataclass
class Certificate:
    """Outcome of a verification: what was checked and, on failure, a witness."""

    name: str
    passed: bool
    checks: list[str] = dc_field(default_factory=list)
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": list(self.checks), "witness": self.witness}


class AlgebraSpec:
    """Generators plus the differential of each generator (a 2-form).

    Construction checks shape only; use ``verify_flatness`` for d o d = 0.
    """

    def __init__(self, gens: GeneratorSet, differentials: Mapping[str, Form]):
        self.gens = gens
        diffs = []
        for name in gens.names:
            f = differentials.get(name, Form.zero(gens))
            if f.gens != gens:
                raise DomainError(f"differential of {name} uses a different generator set")
            if f and f.degrees() != {2}:
                raise DomainError(f"d {name} must be a 2-form, got degrees {sorted(f.degrees())}")
            diffs.append(f)
        self.differentials: tuple[Form, ...] = tuple(diffs)
        for j, name in enumerate(gens.names):
            p = gens.partner[j]
            if diffs[p] != diffs[j].conj_form():
                raise DomainError(
                    f"d {gens.names[p]} = {diffs[p]} is not the conjugate of d {name} = {diffs[j]}"
                )
        self._dmono: dict[int, Form] = {}
        self._cohomology: dict[int, CohomologyBasis] = {}
        self._exact: dict[int, Echelon] = {}
        self._invariant: dict = {}

    @classmethod
    def from_holomorphic(cls, gens: GeneratorSet, differentials: Mapping[str, Form]) -> "AlgebraSpec":
        """Fill in conjugate differentials from the given ones."""
        full = dict(differentials)
        for name, f in differentials.items():
            partner = gens.names[gens.partner[gens.index(name)]]
            full.setdefault(partner, f.conj_form())
        return cls(gens, full)

    @property
    def field(self):
        return self.gens.field

    @property
    def dimension(self) -> int:
        return len(self.gens)

    def d(self, name: str) -> Form:
        return self.differentials[self.gens.index(name)]

    def d_monomial(self, mask: int) -> Form:
        cached = self._dmono.get(mask)
        if cached is not None:
            return cached
        gens = self.gens
        idx = [j for j in range(len(gens)) if mask >> j & 1]
        out = Form.zero(gens)
        one = gens.field.one()
        for pos, j in enumerate(idx):
            dj = self.differentials[j]
            if not dj:
                continue
            left = Form(gens, {sum(1 << i for i in idx[:pos]): one})
            right = Form(gens, {sum(1 << i for i in idx[pos + 1:]): one})
            term = left.wedge(dj).wedge(right)
            out = out - term if pos % 2 else out + term
        self._dmono[mask] = out
        return out

    def __repr__(self) -> str:
        eqs = ", ".join(f"d {n} = {f}" for n, f in zip(self.gens.names, self.differentials) if f)
        return f"AlgebraSpec({eqs or 'abelian'})"


def differential(spec: AlgebraSpec, a: Form) -> Form:
    """The graded derivation d(x^y) = dx^y + (-1)^|x| x^dy."""
    out: dict[int, CycloScalar] = {}
    for mask, c in a.terms.items():
        for m, v in spec.d_monomial(mask).terms.items():
            out[m] = out[m] + c * v if m in out else c * v
    return Form(spec.gens, out)


def verify_flatness(spec: AlgebraSpec) -> Certificate:
    cert = Certificate("flatness", True)
    for name, dg in zip(spec.gens.names, spec.differentials):
        dd = differential(spec, dg)
        cert.checks.append(f"d(d {name}) = 0")
        if dd:
            cert.passed = False
            cert.witness = f"d(d {name}) = {dd}"
            cert.checks[-1] = f"d(d {name}) = {dd} != 0"
            break
    return cert


def differential_matrix(spec: AlgebraSpec, k: int) -> list[list[CycloScalar]]:
    """Matrix of d from degree k to degree k+1 in the lexicographic monomial bases."""
    src = spec.gens.monomials(k)
    dst = spec.gens.monomials(k + 1)
    cols = [spec.d_monomial(m).vector(dst) for m in src]
    return [[col[r] for col in cols] for r in range(len(dst))]


def _exact_echelon(spec: AlgebraSpec, k: int) -> Echelon:
    ech = spec._exact.get(k)
    if ech is None:
        masks = spec.gens.monomials(k)
        ech = Echelon(spec.field, len(masks))
        if k > 0:
            for m in spec.gens.monomials(k - 1):
                ech.add(spec.d_monomial(m).vector(masks), ("b", m))
        spec._exact[k] = ech
    return ech


def closed_forms(spec: AlgebraSpec, k: int) -> list[Form]:
    """Basis of closed k-forms, one per free column of the differential matrix."""
    from .linalg import nullspace

    masks = spec.gens.monomials(k)
    if k >= spec.dimension:
        mat: list = []
    else:
        mat = differential_matrix(spec, k)
    return [Form.from_vector(spec.gens, masks, v) for v in nullspace(mat, spec.field, len(masks))]


class CohomologyBasis:
    """Representatives of H^k plus the reduction data to read off coordinates."""

    def __init__(self, spec: AlgebraSpec, degree: int, representatives: Sequence[Form], closed_dimension: int):
        self.spec = spec
        self.degree = degree
        self.masks = spec.gens.monomials(degree)
        self.exact = _exact_echelon(spec, degree)
        self.closed_dimension = closed_dimension
        combined = self.exact.copy()
        reps: list[Form] = []
        for f in representatives:
            if differential(spec, f):
                raise PreconditionError(f"representative {f} is not closed")
            if not combined.add(f.vector(self.masks), ("h", len(reps))):
                raise PreconditionError(f"representative {f} is dependent modulo exact forms")
            reps.append(f)
        self.representatives: tuple[Form, ...] = tuple(reps)
        self._combined = combined

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @property
    def exact_dimension(self) -> int:
        return self.exact.rank

    def __len__(self) -> int:
        return self.dimension

    def decompose(self, a: Form) -> tuple[list[CycloScalar], Form]:
        """Return (coords, primitive) with a = sum(coords * reps) + d(primitive)."""
        if a and a.degrees() != {self.degree}:
            raise PreconditionError(f"expected a {self.degree}-form, got {a}")
        combo, rem = self._combined.reduce(a.vector(self.masks))
        if any(rem):
            da = differential(self.spec, a)
            if da:
                raise PreconditionError(f"form is not closed: d({a}) = {da}")
            raise DomainError(f"the class of {a} is not in the span of this basis")
        zero = self.spec.field.zero()
        coords = [combo.get(("h", j), zero) for j in range(self.dimension)]
        prim = Form(self.spec.gens, {lab[1]: c for lab, c in combo.items() if lab[0] == "b"})
        return coords, prim

    def coordinates(self, a: Form) -> list[CycloScalar]:
        return self.decompose(a)[0]

    def class_form(self, coords: Sequence) -> Form:
        if len(coords) != self.dimension:
            raise PreconditionError(f"expected {self.dimension} coordinates, got {len(coords)}")
        out = Form.zero(self.spec.gens)
        for c, f in zip(coords, self.representatives):
            if c:
                out = out + f * c
        return out

    def is_exact(self, a: Form) -> bool:
        return not any(self.exact.reduce(a.vector(self.masks))[1])

    def __repr__(self) -> str:
        reps = ", ".join(f"[{f}]" for f in self.representatives)
        return f"H^{self.degree} = <{reps}>"


def cohomology(spec: AlgebraSpec, k: int) -> CohomologyBasis:
    """H^k with representatives picked greedily from the closed-form basis."""
    if not 0 <= k <= spec.dimension:
        raise PreconditionError(f"degree {k} outside 0..{spec.dimension}")
    cached = spec._cohomology.get(k)
    if cached is not None:
        return cached
    closed = closed_forms(spec, k)
    exact = _exact_echelon(spec, k)
    probe = exact.copy()
    masks = spec.gens.monomials(k)
    reps = [f for f in closed if probe.add(f.vector(masks), id(f))]
    basis = CohomologyBasis(spec, k, reps, len(closed))
    assert basis.dimension == len(closed) - exact.rank
    spec._cohomology[k] = basis
    return basis


def betti_numbers(spec: AlgebraSpec) -> list[int]:
    return [cohomology(spec, k).dimension for k in range(spec.dimension + 1)]


@dataclass
class ExactnessResult:
    exact: bool
    primitive: Form | None
    coordinates: list[CycloScalar] | None

    def __bool__(self) -> bool:
        return self.exact


def exactness_witness(spec: AlgebraSpec, a: Form) -> ExactnessResult:
    """Find b with d b = a, or report the class coordinates of a."""
    da = differential(spec, a)
    if da:
        raise PreconditionError(f"form is not closed: d({a}) = {da}")
    if not a:
        return ExactnessResult(True, Form.zero(spec.gens), None)
    degs = a.degrees()
    if len(degs) != 1:
        raise PreconditionError("exactness_witness expects a homogeneous form")
    basis = cohomology(spec, degs.pop())
    coords, prim = basis.decompose(a)
    if any(coords):
        return ExactnessResult(False, None, coords)
    return ExactnessResult(True, prim, None)


BasisProvider = Callable[[int], CohomologyBasis]


def cup(spec: AlgebraSpec, x: Sequence, j: int, y: Sequence, k: int, bases: BasisProvider | None = None) -> list[CycloScalar]:
    """Coordinates of [x] u [y] in degree j + k."""
    bases = bases or (lambda deg: cohomology(spec, deg))
    fx = bases(j).class_form(x)
    fy = bases(k).class_form(y)
    if j + k > spec.dimension:
        return []
    return bases(j + k).coordinates(fx.wedge(fy))


def pairing_matrix(spec: AlgebraSpec, k: int, bases: BasisProvider | None = None) -> list[list[CycloScalar]]:
    """Cup pairing H^k x H^(n-k) -> H^n against the single top-degree class."""
    bases = bases or (lambda deg: cohomology(spec, deg))
    n = spec.dimension
    top = bases(n)
    if top.dimension != 1:
        raise DomainError(f"top cohomology has dimension {top.dimension}, expected 1")
    left, right = bases(k), bases(n - k)
    return [
        [top.coordinates(a.wedge(b))[0] for b in right.representatives]
        for a in left.representatives
    ]


def mask_form(gens: GeneratorSet, mask: int) -> Form:
    return Form(gens, {mask: gens.field.one()})


def top_degree_mask(gens: GeneratorSet) -> int:
    return (1 << len(gens)) - 1


__all__ = [
    "AlgebraSpec",
    "Certificate",
    "CohomologyBasis",
    "ExactnessResult",
    "betti_numbers",
    "closed_forms",
    "cohomology",
    "cup",
    "degree_of",
    "differential",
    "differential_matrix",
    "exactness_witness",
    "pairing_matrix",
    "verify_flatness",
]
