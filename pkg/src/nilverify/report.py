"""Reports: one deterministic result structure per command, rendered as JSON or text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any

from .ce_complex import betti_numbers, cohomology, pairing_matrix, verify_flatness
from .config import ManifoldConfig
from .equivariance import (
    invariant_betti_numbers,
    invariant_cohomology,
    invariant_subspace_by_averaging,
    invariant_subspace_by_eigenspace,
    same_span,
    verify_equivariance,
)
from .errors import DomainError, PreconditionError
from .exterior import Form
from .geometry import (
    InvariantRing,
    check_integrability,
    check_symplectic,
    lefschetz_report,
    universal_kernel_certificate,
    universal_kernel_search,
)
from .linalg import determinant

SCOPE_NOTES = (
    "machine-checked: every result in this report concerns the nilmanifold M and its quotient "
    "M^ = M/<rho> (invariant cohomology, fixed-point strata), recomputed in exact arithmetic",
    "not machine-checked: claims about the resolution M~ (simple connectivity, the exceptional "
    "classes supported near the resolved singularities, equivalence of the complex and symplectic "
    "resolutions) are asserted by the underlying construction and only recorded here",
)


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    passed: bool
    failures: list[str] = dc_field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "scope_notes": list(SCOPE_NOTES),
            "status": "pass" if self.passed else "fail",
            "failures": list(self.failures),
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"nilverify {self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for k in sorted(self.inputs):
            lines.append(f"  {k}: {_scalar_text(self.inputs[k])}")
        lines.append("")
        _render(self.results, lines, 0)
        if self.failures:
            lines.append("")
            lines.append("failures:")
            lines.extend(f"  - {f}" for f in self.failures)
        lines.append("")
        lines.append("scope:")
        lines.extend(f"  - {n}" for n in SCOPE_NOTES)
        return "\n".join(lines) + "\n"


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    return str(v)


def _table(rows: list[dict], indent: int) -> list[str]:
    cols = list(rows[0])
    cells = [[_scalar_text(r.get(c)) for c in cols] for r in rows]
    width = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    pad = " " * indent
    out = [pad + "  ".join(c.ljust(w) for c, w in zip(cols, width)).rstrip()]
    out.append(pad + "  ".join("-" * w for w in width))
    out += [pad + "  ".join(x.ljust(w) for x, w in zip(row, width)).rstrip() for row in cells]
    return out


def _flat_dict(v) -> bool:
    return isinstance(v, dict) and all(not isinstance(x, dict) and not (isinstance(x, list) and x and
                                       isinstance(x[0], (dict, list))) for x in v.values())


def _render(obj, lines: list[str], indent: int) -> None:
    pad = " " * indent
    for key in sorted(obj):
        v = obj[key]
        if isinstance(v, dict) and not v:
            lines.append(f"{pad}{key}: -")
        elif isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            _render(v, lines, indent + 2)
        elif isinstance(v, list) and v and all(_flat_dict(x) for x in v) and \
                len({tuple(x) for x in v}) == 1:
            lines.append(f"{pad}{key}:")
            lines.extend(_table(v, indent + 2))
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            lines.append(f"{pad}{key}:")
            for i, x in enumerate(v):
                if isinstance(x, dict):
                    lines.append(f"{pad}  [{i}]")
                    _render(x, lines, indent + 4)
                else:
                    lines.append(f"{pad}  {_scalar_text(x)}")
        else:
            lines.append(f"{pad}{key}: {_scalar_text(v)}")


def _inputs(cfg: ManifoldConfig, orientation: str | None = None, **extra) -> dict:
    out = {"config": cfg.name, "config_sha256": cfg.digest, "root_order": cfg.root_order}
    if orientation is not None:
        out["orientation"] = orientation
    out.update({k: v for k, v in extra.items() if v is not None})
    return out


def _forms(fs) -> list[str]:
    return [str(f) for f in fs]


# -- individual command results ---------------------------------------------------


def structure_results(cfg: ManifoldConfig) -> dict:
    return {
        "flatness": verify_flatness(cfg.spec).to_dict(),
        "equivariance": verify_equivariance(cfg.spec, cfg.action).to_dict(),
        "integrability": check_integrability(cfg.spec).to_dict(),
        "algebra": {n: str(f) for n, f in zip(cfg.gens.names, cfg.spec.differentials) if f},
        "action": {"order": cfg.action.order,
                   "eigenvalues": {n: str(e) for n, e in zip(cfg.gens.names, cfg.action.eigenvalues)}},
    }


def cohomology_results(cfg: ManifoldConfig) -> dict:
    spec = cfg.spec
    n = spec.dimension
    table = []
    for k in range(n + 1):
        h = cohomology(spec, k)
        table.append({"degree": k, "closed": h.closed_dimension, "exact": h.exact_dimension, "betti": h.dimension})
    return {
        "betti": betti_numbers(spec),
        "table": table,
        "representatives": {str(k): _forms(cohomology(spec, k).representatives) for k in range(n + 1)},
        "poincare_duality": all(table[k]["betti"] == table[n - k]["betti"] for k in range(n + 1)),
        "middle_pairing_determinant": str(determinant(pairing_matrix(spec, n // 2), spec.field))
        if n % 2 == 0 else None,
    }


def invariant_results(cfg: ManifoldConfig) -> dict:
    spec, action = cfg.spec, cfg.action
    n = spec.dimension
    agree = {}
    for k in range(n + 1):
        dim = cohomology(spec, k).dimension
        agree[str(k)] = same_span(spec.field, invariant_subspace_by_eigenspace(spec, action, k),
                                  invariant_subspace_by_averaging(spec, action, k), dim)
    ring = InvariantRing(spec, action)
    return {
        "betti": invariant_betti_numbers(spec, action),
        "representatives": {str(k): _forms(invariant_cohomology(spec, action, k).representatives)
                            for k in range(n + 1)},
        "eigenspace_matches_averaging": agree,
        "pairing_determinant": {str(k): str(determinant(ring.pairing(k), spec.field))
                                for k in range(n + 1) if invariant_cohomology(spec, action, k).dimension},
    }


# -- commands ------------------------------------------------------------------------


def check_report(cfg: ManifoldConfig) -> Report:
    res = structure_results(cfg)
    fails = [f"{k}: {res[k]['witness']}" for k in ("flatness", "equivariance", "integrability")
             if not res[k]["passed"]]
    return Report("check", _inputs(cfg), res, not fails, fails)


def cohomology_report(cfg: ManifoldConfig) -> Report:
    res = cohomology_results(cfg)
    return Report("cohomology", _inputs(cfg), res, res["poincare_duality"],
                  [] if res["poincare_duality"] else ["Betti numbers are not palindromic"])


def invariants_report(cfg: ManifoldConfig) -> Report:
    res = invariant_results(cfg)
    bad = [k for k, ok in res["eigenspace_matches_averaging"].items() if not ok]
    return Report("invariants", _inputs(cfg), res, not bad,
                  [f"degree {k}: eigenspace and averaging disagree" for k in bad])


def symplectic_report(cfg: ManifoldConfig, form: str = "omega", orientation: str = "standard") -> Report:
    omega = cfg.form(form)
    cert = check_symplectic(cfg.spec, cfg.action, omega, orientation)
    res = cert.to_dict()
    fails = []
    if not cert.valid:
        fails.append("symplectic: " + _symplectic_reason(cert))
    return Report("symplectic-check", _inputs(cfg, orientation, form=form), res, cert.valid, fails)


def _symplectic_reason(cert) -> str:
    if not cert.real:
        return cert.witnesses["real"]
    if not cert.closed:
        return cert.witnesses["closed"]
    if cert.sign == 0:
        return cert.witnesses.get("nondegenerate") or cert.witnesses.get("sign", "degenerate")
    return f"omega^n = ({cert.top_coefficient}) V has negative sign for the {cert.orientation} orientation"


def complex_report(cfg: ManifoldConfig) -> Report:
    cert = check_integrability(cfg.spec)
    return Report("complex-check", _inputs(cfg), cert.to_dict(), cert.passed,
                  [] if cert.passed else [f"integrability: {cert.witness}"])


def lefschetz_command(cfg: ManifoldConfig, omega: str | None = "omega", universal: str | None = None,
                      orientation: str = "standard") -> Report:
    spec, action = cfg.spec, cfg.action
    if universal is not None:
        cert = universal_kernel_certificate(spec, action, cfg.form(universal), orientation)
        res = {"universal_kernel_certificate": cert.to_dict(),
               "universal_kernel_search": _search(cfg, orientation)}
        fails = [] if cert.granted else [f"universal kernel: {_kernel_reason(cert)}"]
        return Report("lefschetz", _inputs(cfg, orientation, universal_kernel=universal), res, cert.granted, fails)
    rep = lefschetz_report(spec, action, cfg.form(omega or "omega"), orientation)
    return Report("lefschetz", _inputs(cfg, orientation, omega=omega), {"lefschetz": rep.to_dict()}, True)


def _search(cfg: ManifoldConfig, orientation: str) -> dict:
    basis = invariant_cohomology(cfg.spec, cfg.action, 2)
    kern = universal_kernel_search(cfg.spec, cfg.action, orientation)
    return {"dimension": len(kern), "classes": [str(basis.class_form(v)) for v in kern]}


def _kernel_reason(cert) -> str:
    if cert.witness is not None:
        i, j = cert.witness
        v = cert.products[(i, j)]
        return f"T(beta, {cert.basis[i]}, {cert.basis[j]}) = {v} != 0"
    return "cup pairing on invariant H^2 is degenerate"


def fixed_locus_report(cfg: ManifoldConfig, power: int | None = None) -> Report:
    ha = cfg.heisenberg_action()
    powers = [power] if power is not None else list(range(1, ha.order))
    res = {}
    ok = True
    for k in powers:
        strata = ha.fixed_strata(k)
        verified = all(ha.verify_stratum(s) for s in strata)
        ok &= verified
        kinds: dict[str, int] = {}
        iso: dict[str, int] = {}
        for s in strata:
            kinds[s.kind] = kinds.get(s.kind, 0) + 1
            iso[s.isotropy_name] = iso.get(s.isotropy_name, 0) + 1
        res[f"rho^{k}"] = {
            "count": len(strata),
            "by_kind": kinds,
            "by_isotropy": iso,
            "reverified": verified,
            "strata": [_stratum_row(s) for s in strata],
        }
    return Report("fixed-locus", _inputs(cfg, power=power), res, ok, [] if ok else ["stratum re-verification failed"])


def _stratum_row(s) -> dict:
    return {"kind": s.kind, "locus": s.describe() if s.kind != "point" else "(" + ", ".join(s.point.to_list()) + ")",
            "isotropy": s.isotropy_name}


def singular_locus_results(cfg: ManifoldConfig) -> dict:
    from .fixed_locus import singular_locus_report

    ha = cfg.heisenberg_action()
    sl = singular_locus_report(ha)
    out = sl.to_dict()
    out["reverified"] = all(ha.verify_stratum(s) for s in sl.isolated_points + sl.embedded_points + sl.surfaces)
    return out


def singular_locus_command(cfg: ManifoldConfig) -> Report:
    res = singular_locus_results(cfg)
    return Report("singular-locus", _inputs(cfg), res, res["reverified"],
                  [] if res["reverified"] else ["stratum re-verification failed"])


def verify_all(cfg: ManifoldConfig, orientation: str = "standard", omega: str = "omega", beta: str = "beta") -> Report:
    """Run every certificate; each failure is listed, none stops the run."""
    checks: dict[str, dict] = {}
    failures: list[str] = []

    def record(name: str, fn):
        try:
            passed, detail, reason = fn()
        except (DomainError, PreconditionError) as exc:
            passed, detail, reason = False, {"error": str(exc)}, str(exc)
        checks[name] = {"passed": passed, "detail": detail}
        if not passed:
            failures.append(f"{name}: {reason}")

    def flat():
        c = verify_flatness(cfg.spec)
        return c.passed, c.to_dict(), c.witness

    def equi():
        c = verify_equivariance(cfg.spec, cfg.action)
        return c.passed, c.to_dict(), c.witness

    def betti_m():
        r = cohomology_results(cfg)
        return r["poincare_duality"], {"betti": r["betti"], "table": r["table"]}, "not palindromic"

    def betti_inv():
        r = invariant_results(cfg)
        ok = all(r["eigenspace_matches_averaging"].values())
        return ok, r, "eigenspace and averaging disagree"

    def sympl():
        c = check_symplectic(cfg.spec, cfg.action, cfg.form(omega), orientation)
        return c.valid, c.to_dict(), _symplectic_reason(c)

    def integ():
        c = check_integrability(cfg.spec)
        return c.passed, c.to_dict(), c.witness

    def lef():
        r = lefschetz_report(cfg.spec, cfg.action, cfg.form(omega), orientation)
        return True, r.to_dict(), ""

    def kern():
        c = universal_kernel_certificate(cfg.spec, cfg.action, cfg.form(beta), orientation)
        d = {"certificate": c.to_dict(), "search": _search(cfg, orientation)}
        return c.granted, d, _kernel_reason(c)

    def sing():
        r = singular_locus_results(cfg)
        return r["reverified"], {"counts": r["counts"], "reverified": r["reverified"]}, "re-verification failed"

    record("flatness", flat)
    record("equivariance", equi)
    record("betti_M", betti_m)
    record("betti_invariant", betti_inv)
    record("symplectic", sympl)
    record("integrability", integ)
    record("lefschetz", lef)
    record("universal_kernel", kern)
    if cfg.lattice is None:
        checks["singular_locus"] = {"passed": False, "detail": {"error": "no lattice declared"}}
        failures.append("singular_locus: no lattice declared")
    else:
        record("singular_locus", sing)
    summary = [{"check": k, "passed": v["passed"]} for k, v in checks.items()]
    res = {"summary": summary, "checks": checks}
    return Report("verify-all", _inputs(cfg, orientation, omega=omega, beta=beta), res, not failures, failures)


def diff_against_golden(report: Report, golden_text: str) -> list[str]:
    """Paths at which the report's JSON differs from a stored golden report."""
    return _diff(json.loads(golden_text), json.loads(report.to_json()), "$")


def _diff(a, b, path: str) -> list[str]:
    if type(a) is not type(b):
        return [f"{path}: {a!r} != {b!r}"]
    if isinstance(a, dict):
        out = []
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                out.append(f"{path}.{k}: present on one side only")
            else:
                out += _diff(a[k], b[k], f"{path}.{k}")
        return out
    if isinstance(a, list):
        if len(a) != len(b):
            return [f"{path}: length {len(a)} != {len(b)}"]
        return [d for i, (x, y) in enumerate(zip(a, b)) for d in _diff(x, y, f"{path}[{i}]")]
    return [] if a == b else [f"{path}: {a!r} != {b!r}"]
