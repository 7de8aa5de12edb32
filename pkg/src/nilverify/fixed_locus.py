"""Fixed points of a diagonal cyclic action on the Heisenberg nilmanifold Gamma\\G.

Points of G are triples (u1, u2, u3) with the group law

    (u1, u2, u3) . (v1, v2, v3) = (u1 + v1, u2 + v2, u3 + v3 + t u2 v1)

where t = 1 for the Heisenberg group and t = 0 for the abelian case. Gamma is
the set of triples with coordinates in the lattice Lambda = Z + Z tau, acting
on the left. rho^k scales the coordinates by (m1^k, m2^k, m3^k).

A point g of M is fixed by rho^k iff rho^k(g) = gamma . g for some gamma in
Gamma, i.e.

    (m1^k - 1) u1 = l1,   (m2^k - 1) u2 = l2,   (m3^k - 1) u3 = l3 + t l2 u1

with l1, l2, l3 in Lambda. Each line is solved exactly over the lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, PreconditionError
from .scalar import CycloScalar, CyclotomicField


class Lattice:
    """Lambda = Z + Z tau inside Q(zeta_N), with tau a non-real quadratic integer."""

    def __init__(self, tau: CycloScalar):
        self.field = tau.field
        self.tau = tau
        if tau.is_real():
            raise DomainError("lattice generator tau must be non-real")
        # tau must satisfy tau^2 = a + b tau with integer a, b
        a, b = self._solve(tau * tau)
        if a.denominator != 1 or b.denominator != 1:
            raise DomainError(f"{tau} is not a quadratic integer over Z")
        self._support = next(j for j in range(1, self.field.degree) if tau.num[j])

    def _solve(self, v: CycloScalar) -> tuple[Fraction, Fraction]:
        tc = self.tau.coefficients
        vc = v.coefficients
        j = next(j for j in range(1, len(tc)) if tc[j])
        y = vc[j] / tc[j]
        x = vc[0] - y * tc[0]
        if self.element(x, y) != v:
            raise DomainError(f"{v} does not lie in Q(tau) for tau = {self.tau}")
        return x, y

    def coordinates(self, v: CycloScalar) -> tuple[Fraction, Fraction]:
        """(x, y) with v = x + y tau; DomainError outside Q(tau)."""
        return self._solve(v)

    def element(self, x, y) -> CycloScalar:
        return self.field(Fraction(x)) + self.tau * Fraction(y)

    def contains(self, v: CycloScalar) -> bool:
        x, y = self.coordinates(v)
        return x.denominator == 1 and y.denominator == 1

    def reduce(self, v: CycloScalar) -> tuple[CycloScalar, CycloScalar]:
        """(representative in the fundamental square [0,1)^2, lattice shift)."""
        x, y = self.coordinates(v)
        shift = self.element(-math.floor(x), -math.floor(y))
        return v + shift, shift

    def multiplication_matrix(self, m: CycloScalar) -> list[list[int]]:
        """Integer matrix of v -> m v in the basis (1, tau); columns are images."""
        c1 = self.coordinates(m)
        c2 = self.coordinates(m * self.tau)
        for c in (*c1, *c2):
            if c.denominator != 1:
                raise DomainError(f"multiplication by {m} does not preserve the lattice")
        return [[int(c1[0]), int(c2[0])], [int(c1[1]), int(c2[1])]]

    def sort_key(self, v: CycloScalar) -> tuple[Fraction, Fraction]:
        x, y = self.coordinates(v)
        return (y, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and other.tau == self.tau

    def __hash__(self) -> int:
        return hash(self.tau)


@dataclass(frozen=True)
class HeisPoint:
    u1: CycloScalar
    u2: CycloScalar
    u3: CycloScalar

    def __iter__(self):
        return iter((self.u1, self.u2, self.u3))

    def __str__(self) -> str:
        return f"({self.u1}, {self.u2}, {self.u3})"

    def to_list(self) -> list[str]:
        return [str(self.u1), str(self.u2), str(self.u3)]


def group_mul(g: HeisPoint, h: HeisPoint, twist: int = 1) -> HeisPoint:
    return HeisPoint(g.u1 + h.u1, g.u2 + h.u2, g.u3 + h.u3 + g.u2 * h.u1 * twist)


def inverse(g: HeisPoint, twist: int = 1) -> HeisPoint:
    return HeisPoint(-g.u1, -g.u2, -g.u3 + g.u2 * g.u1 * twist)


def subgroup_name(ks: frozenset[int], order: int) -> str:
    n = len(ks)
    if n == 1:
        return "trivial"
    if n == order:
        return "full"
    if order == 6:
        return {2: "H", 3: "K"}[n]
    return f"Z{n}"


@dataclass(frozen=True)
class Stratum:
    """A fixed component of rho^k, or a parametrized family of them.

    ``kind`` is ``point`` or one of ``surface``/``curve`` with ``free`` listing
    the free coordinates. For a family with u1 free the third coordinate is
    ``slope * u1 + point.u3``.
    """

    kind: str
    power: int
    point: HeisPoint
    free: tuple[int, ...] = ()
    slope: CycloScalar | None = None
    isotropy: frozenset[int] = frozenset()
    isotropy_name: str = ""

    def at(self, *params: CycloScalar) -> HeisPoint:
        """The member of the stratum at the given free-coordinate values."""
        u = list(self.point)
        for j, t in zip(self.free, params):
            u[j] = t
        if 0 in self.free and self.slope is not None:
            u[2] = self.slope * u[0] + self.point.u3
        return HeisPoint(*u)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "power": self.power,
            "point": self.point.to_list(),
            "free": list(self.free),
            "isotropy": sorted(self.isotropy),
            "isotropy_name": self.isotropy_name,
        }
        if self.kind != "point":
            out["slope"] = None if self.slope is None else str(self.slope)
            out["description"] = self.describe()
        return out

    def describe(self) -> str:
        names = ["u1", "u2", "u3"]
        u = [str(c) for c in self.point]
        for j in self.free:
            u[j] = names[j]
        if 0 in self.free and self.slope is not None and 2 not in self.free:
            lin = "u1" if self.slope == 1 else f"({self.slope})*u1"
            u[2] = lin if not self.point.u3 else f"{lin} + {self.point.u3}"
            if not self.slope:
                u[2] = str(self.point.u3)
        return "{(" + ", ".join(u) + ")}"


class HeisenbergAction:
    """rho(u1, u2, u3) = (m1 u1, m2 u2, m3 u3) on Gamma\\G."""

    def __init__(self, multipliers: Sequence[CycloScalar], order: int, lattice: Lattice, twist: int = 1):
        if len(multipliers) != 3:
            raise DomainError("three multipliers are required")
        self.m = tuple(multipliers)
        self.order = order
        self.lattice = lattice
        self.twist = twist
        self.field = lattice.field
        for m in self.m:
            if m**order != 1:
                raise DomainError(f"multiplier {m} does not have order dividing {order}")
            lattice.multiplication_matrix(m)
        if twist and self.m[2] != self.m[0] * self.m[1]:
            raise DomainError("rho is a group automorphism only if m3 = m1 m2")

    @classmethod
    def from_specs(cls, spec, action, lattice: Lattice) -> "HeisenbergAction":
        """Build from an algebra with holomorphic generators (x, y, z), dz = c x^y or 0."""
        gens = spec.gens
        hol = [j for j in range(len(gens)) if gens.bidegree[j] == (1, 0)]
        if len(hol) != 3:
            raise DomainError("fixed-locus analysis needs exactly three holomorphic generators")
        a, b, c = hol
        for j in (a, b):
            if spec.differentials[j]:
                raise DomainError(f"d {gens.names[j]} must vanish for the Heisenberg model")
        dz = spec.differentials[c]
        xy = 1 << a | 1 << b
        if not dz:
            twist = 0
        elif dz.terms == {xy: gens.field.one()}:
            twist = 1
        else:
            raise DomainError(f"d {gens.names[c]} = {dz}; expected {gens.names[a]}^{gens.names[b]} or 0")
        return cls([action.eigenvalues[j] for j in hol], action.order, lattice, twist)

    # -- group-level operations -----------------------------------------------

    def point(self, *coords) -> HeisPoint:
        return HeisPoint(*(self.field(c) for c in coords))

    def mul(self, g: HeisPoint, h: HeisPoint) -> HeisPoint:
        return group_mul(g, h, self.twist)

    def multipliers(self, k: int) -> tuple[CycloScalar, ...]:
        return tuple(m ** (k % self.order) for m in self.m)

    def rho_power(self, k: int, g: HeisPoint) -> HeisPoint:
        a, b, c = self.multipliers(k)
        return HeisPoint(a * g.u1, b * g.u2, c * g.u3)

    def normalize(self, g: HeisPoint) -> HeisPoint:
        """Canonical representative of Gamma g: u1, then u2, then u3 into [0,1)^2."""
        lat = self.lattice
        u1, l1 = lat.reduce(g.u1)
        u2, l2 = lat.reduce(g.u2)
        # (l1, l2, l3) . g has third coordinate u3 + l3 + t l2 u1(original)
        u3, _ = lat.reduce(g.u3 + l2 * g.u1 * self.twist)
        return HeisPoint(u1, u2, u3)

    def same_point(self, g: HeisPoint, h: HeisPoint) -> bool:
        return self.normalize(g) == self.normalize(h)

    def isotropy(self, g: HeisPoint) -> frozenset[int]:
        base = self.normalize(g)
        return frozenset(k for k in range(self.order) if self.normalize(self.rho_power(k, g)) == base)

    # -- torus level ------------------------------------------------------------

    def torus_fixed_points(self, m: CycloScalar) -> list[CycloScalar] | None:
        """Representatives of {u in C/Lambda : (m - 1) u in Lambda}; None means all of C/Lambda."""
        return torus_fixed_points(m, self.lattice)

    # -- strata -----------------------------------------------------------------

    def fixed_strata(self, k: int) -> list[Stratum]:
        if not 1 <= k < self.order:
            raise PreconditionError(f"power must lie in 1..{self.order - 1}")
        m1, m2, m3 = self.multipliers(k)
        one = self.field.one()
        zero = self.field.zero()
        lat = self.lattice
        t = self.twist
        out: list[Stratum] = []
        sol1 = self.torus_fixed_points(m1)
        sol2 = self.torus_fixed_points(m2)
        sol3 = self.torus_fixed_points(m3)
        if sol1 is None and sol2 is None and sol3 is None:
            return []  # rho^k = id: nothing singular
        if sol1 is not None and sol2 is not None and sol3 is not None:
            for u1 in sol1:
                for u2 in sol2:
                    l2 = (m2 - one) * u2
                    base = l2 * u1 * t / (m3 - one)
                    for q in sol3:
                        out.append(self._stratum("point", k, self.normalize(HeisPoint(u1, u2, base + q))))
        elif sol1 is None and sol2 is not None and sol3 is not None:
            # u1 free: u3 = l2 u1 / (m3 - 1) + q
            for u2 in sol2:
                slope = (m2 - one) * u2 * t / (m3 - one)
                for q in sol3:
                    out.append(self._family(k, u2, slope, q))
        elif sol1 is not None and sol2 is None:
            # u2 free forces l2 = 0
            for u1 in sol1:
                if sol3 is None:
                    out.append(self._stratum("threefold", k, HeisPoint(u1, zero, zero), (1, 2)))
                else:
                    for q in sol3:
                        out.append(self._stratum("surface", k, HeisPoint(u1, zero, q), (1,)))
        elif sol1 is not None and sol3 is None:
            # u3 free, need l2 u1 in Lambda
            for u1 in sol1:
                for u2 in sol2:
                    if not t or lat.contains((m2 - one) * u2 * u1):
                        out.append(self._stratum("surface", k, HeisPoint(u1, u2, zero), (2,)))
        else:
            raise DomainError(f"unsupported multiplier pattern {m1}, {m2}, {m3}")
        uniq: dict = {}
        for s in out:
            uniq.setdefault(self.stratum_key(s), s)
        strata = sorted(uniq.values(), key=self._order_key)
        for s in strata:
            if not self.verify_stratum(s):
                raise AssertionError(f"stratum {s.describe()} failed re-verification for rho^{k}")
        return strata

    def _stratum(self, kind: str, k: int, point: HeisPoint, free: tuple[int, ...] = ()) -> Stratum:
        iso = self.isotropy(point) if not free else self._generic_isotropy(point, free, None)
        return Stratum(kind, k, point, free, None, iso, subgroup_name(iso, self.order))

    def _family(self, k: int, p: CycloScalar, slope: CycloScalar, q: CycloScalar) -> Stratum:
        fam = self.canonical_family(p, slope, q)
        iso = self._generic_isotropy(fam.point, (0,), fam.slope)
        return Stratum("surface", k, fam.point, (0,), fam.slope, iso, subgroup_name(iso, self.order))

    def canonical_family(self, p: CycloScalar, slope: CycloScalar, q: CycloScalar) -> Stratum:
        """Normal form of {(u1, p, slope u1 + q)} under left translation by Gamma."""
        lat = self.lattice
        p2, l2 = lat.reduce(p)
        slope2 = slope + l2 * self.twist
        q2, _ = lat.reduce(q)
        zero = self.field.zero()
        return Stratum("surface", 0, HeisPoint(zero, p2, q2), (0,), slope2)

    def _samples(self) -> list[CycloScalar]:
        lat = self.lattice
        return [lat.element(Fraction(1, 7), Fraction(3, 11)), lat.element(Fraction(2, 13), Fraction(5, 17)),
                lat.element(Fraction(9, 10), Fraction(1, 19))]

    def _generic_isotropy(self, point: HeisPoint, free: tuple[int, ...], slope) -> frozenset[int]:
        st = Stratum("surface", 0, point, free, slope)
        out = None
        for s in self._samples():
            iso = self.isotropy(st.at(*([s] * len(free))))
            out = iso if out is None else out & iso
        return out

    def verify_stratum(self, s: Stratum) -> bool:
        """Membership re-check: every sampled member is fixed by rho^power."""
        if s.kind == "point":
            return self.same_point(self.rho_power(s.power, s.point), s.point)
        if s.free == (0,) and s.slope is not None and not self._family_identity(s):
            return False
        for t in self._samples():
            g = s.at(*([t] * len(s.free)))
            if not self.same_point(self.rho_power(s.power, g), g):
                return False
        return True

    def _family_identity(self, s: Stratum) -> bool:
        # rho^k (u1, p, s u1 + q) = gamma (u1, p, s u1 + q) for all u1:
        # requires m1 = 1, (m2 - 1) p in Lambda, (m3 - 1) s = t (m2 - 1) p, (m3 - 1) q in Lambda
        m1, m2, m3 = self.multipliers(s.power)
        one = self.field.one()
        l2 = (m2 - one) * s.point.u2
        return (
            m1 == one
            and self.lattice.contains(l2)
            and (m3 - one) * s.slope == l2 * self.twist
            and self.lattice.contains((m3 - one) * s.point.u3)
        )

    def stratum_key(self, s: Stratum) -> tuple:
        if s.kind == "point":
            p = self.normalize(s.point)
            return ("point", tuple(self.lattice.sort_key(c) for c in p))
        if s.free == (0,) and s.slope is not None:
            f = self.canonical_family(s.point.u2, s.slope, s.point.u3)
            return ("family", self.lattice.sort_key(f.point.u2), self.lattice.sort_key(f.point.u3),
                    tuple(f.slope.coefficients))
        return (s.kind, s.free, tuple(self.lattice.sort_key(c) for c in self.normalize(s.point)))

    def _order_key(self, s: Stratum):
        return self.stratum_key(s)

    def component_key(self, s: Stratum) -> tuple:
        """Key identifying the connected surface a family belongs to.

        Translating u1 by l in Lambda moves (u1, p, s u1 + q) onto the family
        with q replaced by q - s l, so families glue along q mod (Lambda + s Lambda).
        """
        if not (s.free == (0,) and s.slope is not None):
            return self.stratum_key(s)
        f = self.canonical_family(s.point.u2, s.slope, s.point.u3)
        shifts = _coset_shifts(f.slope, self.lattice)
        qs = {self.lattice.reduce(f.point.u3 - f.slope * l)[0] for l in shifts}
        q = min(qs, key=self.lattice.sort_key)
        return ("component", self.lattice.sort_key(f.point.u2), self.lattice.sort_key(q), tuple(f.slope.coefficients))

    def rho_stratum(self, s: Stratum) -> Stratum:
        """Image of a stratum under rho (power 1)."""
        m1, m2, m3 = self.m
        if s.kind == "point":
            pt = self.normalize(self.rho_power(1, s.point))
            return Stratum("point", s.power, pt, (), None, s.isotropy, s.isotropy_name)
        if s.free == (0,) and s.slope is not None:
            fam = self.canonical_family(m2 * s.point.u2, m3 * s.slope / m1, m3 * s.point.u3)
            return Stratum("surface", s.power, fam.point, (0,), fam.slope, s.isotropy, s.isotropy_name)
        pt = self.normalize(self.rho_power(1, s.point))
        return Stratum(s.kind, s.power, pt, s.free, None, s.isotropy, s.isotropy_name)

    def contains(self, s: Stratum, g: HeisPoint) -> bool:
        """Whether g (as a point of M) lies on the stratum."""
        if s.kind == "point":
            return self.same_point(s.point, g)
        lat = self.lattice
        a, b, c = self.normalize(g)
        if s.free == (0,) and s.slope is not None:
            l2 = b - s.point.u2
            if not lat.contains(l2):
                return False
            sl = s.slope + l2 * self.twist
            base = c - s.point.u3 - sl * a
            return any(lat.contains(base + sl * l) for l in _coset_shifts(sl, lat))
        n = self.normalize(s.point)
        return all(lat.contains(x - y) for j, (x, y) in enumerate(zip((a, b, c), n)) if j not in s.free)


def _coset_shifts(s: CycloScalar, lat: Lattice) -> list[CycloScalar]:
    # l in Lambda modulo the sublattice on which s l is integral
    x, y = lat.coordinates(s)
    tx, ty = lat.coordinates(lat.tau * s)
    n = math.lcm(x.denominator, y.denominator, tx.denominator, ty.denominator)
    return [lat.element(i, j) for i in range(n) for j in range(n)]


def _hermite_2x2(a: list[list[int]]) -> tuple[int, int]:
    """Diagonal (d1, d2) of a lower-triangular basis of the column lattice of a."""
    (p, q), (r, s) = a
    # column ops on (p, r), (q, s) to clear the top-right entry
    g, x, y = _xgcd(p, q)
    if g == 0:
        raise DomainError("singular lattice map")
    col2 = (0, (q // g) * r - (p // g) * s)
    return abs(g), abs(col2[1])


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt = a // b
        a, b = b, a - qt * b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def torus_fixed_points(m: CycloScalar, lattice: Lattice) -> list[CycloScalar] | None:
    """Solutions of (m - 1) u in Lambda modulo Lambda, sorted; None when m = 1.

    Uses the Hermite form of the integer matrix A of multiplication by m - 1:
    the solutions are A^-1 v for v over coset representatives of Z^2 / A Z^2,
    so their number is |det A| = |m - 1|^2.
    """
    one = lattice.field.one()
    if m == one:
        return None
    a = lattice.multiplication_matrix(m - one)
    (p, q), (r, s) = a
    det = p * s - q * r
    d1, d2 = _hermite_2x2(a)
    assert d1 * d2 == abs(det)
    # the lower-triangular basis is [[d1, 0], [e, d2]]; reps are (i, j), 0 <= i < d1, 0 <= j < d2
    out = []
    for i in range(d1):
        for j in range(d2):
            # solve A (x, y) = (i, j) by Cramer's rule
            x = Fraction(i * s - q * j, det)
            y = Fraction(p * j - r * i, det)
            out.append(lattice.reduce(lattice.element(x, y))[0])
    uniq = sorted(set(out), key=lattice.sort_key)
    assert len(uniq) == abs(det)
    return uniq


@dataclass
class Orbit:
    representative: Stratum
    members: list[Stratum]

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {"size": self.size, "representative": self.representative.to_dict(),
                "members": [m.to_dict() for m in self.members]}


def orbit_decomposition(strata: Iterable[Stratum], action: HeisenbergAction, by: str = "family") -> list[Orbit]:
    """Partition strata into rho-orbits; ``by='component'`` first merges glued families."""
    key = action.stratum_key if by == "family" else action.component_key
    pool: dict = {}
    for s in strata:
        pool.setdefault(key(s), s)
    seen: set = set()
    orbits = []
    for k0 in sorted(pool):
        if k0 in seen:
            continue
        members = []
        cur = pool[k0]
        ck = k0
        while True:
            seen.add(ck)
            members.append(pool[ck])
            cur = action.rho_stratum(cur)
            ck = key(cur)
            if ck == k0:
                break
            if ck not in pool or ck in seen:
                raise AssertionError("rho does not permute the given strata")
        orbits.append(Orbit(members[0], members))
    return orbits


@dataclass
class CurveRamification:
    name: str
    coordinate: int
    degree: int
    points: list[tuple[CycloScalar, int]] = dc_field(default_factory=list)

    @property
    def orders(self) -> list[int]:
        return sorted((e for _, e in self.points), reverse=True)

    @property
    def image_genus(self) -> Fraction:
        # Riemann-Hurwitz for a torus: 0 = deg (2 g' - 2) + sum (e - 1)
        r = sum(e - 1 for _, e in self.points)
        return 1 - Fraction(r, 2 * self.degree)

    def to_dict(self) -> dict:
        return {"curve": self.name, "degree": self.degree, "orders": self.orders,
                "points": [{"coordinate": str(u), "order": e} for u, e in self.points],
                "image_genus": str(self.image_genus)}


def curve_ramification(action: HeisenbergAction, coordinate: int) -> CurveRamification:
    """Quotient map of the axis curve {u_j free, others 0} by the cyclic action."""
    m = action.m[coordinate]
    one = action.field.one()
    kernel = [k for k in range(action.order) if m**k == one]
    degree = action.order // len(kernel)
    cands: set = set()
    for k in range(action.order):
        pts = action.torus_fixed_points(m**k)
        if pts is not None:
            cands.update(pts)
    zero = action.field.zero()
    points = []
    for u in sorted(cands, key=action.lattice.sort_key):
        coords = [zero, zero, zero]
        coords[coordinate] = u
        iso = action.isotropy(HeisPoint(*coords))
        e = len(iso) // len(kernel)
        if e > 1:
            points.append((u, e))
    points.sort(key=lambda t: (-t[1], action.lattice.sort_key(t[0])))
    return CurveRamification(f"Sigma_{coordinate + 1}", coordinate, degree, points)


@dataclass
class SingularLocus:
    isolated_points: list[Stratum]
    embedded_points: list[Stratum]
    surfaces: list[Stratum]
    point_orbits: list[Orbit]
    family_orbits: list[Orbit]
    component_orbits: list[Orbit]
    s0: Stratum | None
    s0_special_points: list[Stratum]
    s0_rho_order: int
    curves: list[CurveRamification]
    order: int

    @property
    def counts(self) -> dict:
        fam = [o for o in self.family_orbits if not self._is_s0(o)]
        comp = [o for o in self.component_orbits if not self._is_s0(o)]
        return {
            "isolated_points_in_M": len(self.isolated_points),
            "isolated_orbifold_points": len(self.point_orbits),
            "surface_families_in_M": len(self.surfaces),
            "surface_family_orbits_excluding_S0": len(fam),
            "surface_components_in_M": sum(o.size for o in self.component_orbits),
            "surface_component_orbits_excluding_S0": len(comp),
            "S0_components": 1 if self.s0 is not None else 0,
            "S0_points_with_full_isotropy": len(self.s0_special_points),
        }

    def _is_s0(self, orbit: Orbit) -> bool:
        return self.s0 is not None and any(
            m.point == self.s0.point and m.slope == self.s0.slope for m in orbit.members
        )

    def to_dict(self) -> dict:
        return {
            "counts": self.counts,
            "isolated_points": [s.to_dict() for s in self.isolated_points],
            "points_on_surfaces": [s.to_dict() for s in self.embedded_points],
            "surface_families": [s.to_dict() for s in self.surfaces],
            "isolated_point_orbits": [o.representative.to_dict() | {"size": o.size} for o in self.point_orbits],
            "surface_family_orbits": [o.representative.to_dict() | {"size": o.size} for o in self.family_orbits],
            "surface_component_orbits": [
                {"size": o.size, "families": [m.describe() for m in o.members]} for o in self.component_orbits
            ],
            "S0": None if self.s0 is None else {
                "description": self.s0.describe(),
                "rho_order_on_S0": self.s0_rho_order,
                "points_with_full_isotropy": [p.point.to_list() for p in self.s0_special_points],
            },
            "curve_ramification": [c.to_dict() for c in self.curves],
        }


def singular_locus_report(action: HeisenbergAction) -> SingularLocus:
    points: dict = {}
    surfaces: dict = {}
    for k in range(1, action.order):
        for s in action.fixed_strata(k):
            key = action.stratum_key(s)
            bucket = points if s.kind == "point" else surfaces
            bucket.setdefault(key, s)
    surf = [surfaces[k] for k in sorted(surfaces)]
    embedded, isolated = [], []
    for key in sorted(points):
        p = points[key]
        (embedded if any(action.contains(s, p.point) for s in surf) else isolated).append(p)
    origin = HeisPoint(action.field.zero(), action.field.zero(), action.field.zero())
    s0 = next((s for s in surf if s.free == (0,) and action.contains(s, origin)), None)
    s0_points, s0_order = [], 0
    if s0 is not None:
        s0_points = [p for p in embedded if action.contains(s0, p.point) and len(p.isotropy) == action.order]
        m1 = action.m[0]
        s0_order = next(k for k in range(1, action.order + 1) if m1**k == action.field.one())
    curves = [curve_ramification(action, j) for j in range(3)] if action.order > 1 else []
    return SingularLocus(
        isolated_points=isolated,
        embedded_points=embedded,
        surfaces=surf,
        point_orbits=orbit_decomposition(isolated, action),
        family_orbits=orbit_decomposition(surf, action),
        component_orbits=orbit_decomposition(surf, action, by="component"),
        s0=s0,
        s0_special_points=s0_points,
        s0_rho_order=s0_order,
        curves=curves,
        order=action.order,
    )


def eisenstein_lattice(field: CyclotomicField | None = None) -> Lattice:
    field = field or CyclotomicField(12)
    return Lattice(field.root_of_unity(6))
