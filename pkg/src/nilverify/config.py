"""Parser for the declarative manifold description.

Example::

    [field]
    root_order = 12

    [generators]
    holomorphic = mu, nu, theta

    [algebra]
    pair mu ~mu
    d theta = mu^nu

    [action]
    order = 6
    rho mu = z6^4

    [forms]
    omega = z^9*mu^~mu + nu^theta + ~nu^~theta

    [lattice]
    tau = z6
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .ce_complex import AlgebraSpec, verify_flatness
from .equivariance import ActionSpec, verify_equivariance
from .errors import ConfigError, DomainError
from .exterior import Form, GeneratorSet, parse_form
from .fixed_locus import HeisenbergAction, Lattice
from .scalar import CyclotomicField, DEFAULT_ORDER, multiplicative_order

SECTIONS = ("field", "generators", "algebra", "action", "forms", "lattice")


@dataclass
class ManifoldConfig:
    root_order: int
    gens: GeneratorSet
    spec: AlgebraSpec
    action: ActionSpec
    forms: dict[str, Form]
    lattice: Lattice | None
    name: str = "<string>"
    digest: str = ""
    notes: list[str] = dc_field(default_factory=list)

    @property
    def field(self) -> CyclotomicField:
        return self.gens.field

    def form(self, text: str) -> Form:
        """A named form from the config, or a parsed expression."""
        if text in self.forms:
            return self.forms[text]
        return parse_form(text, self.gens)

    def heisenberg_action(self) -> HeisenbergAction:
        if self.lattice is None:
            raise ConfigError("no [lattice] section; the fixed locus needs one", kind="lattice")
        try:
            return HeisenbergAction.from_specs(self.spec, self.action, self.lattice)
        except DomainError as exc:
            raise ConfigError(str(exc), kind="lattice") from exc


@dataclass
class _Line:
    number: int
    text: str
    indent: int


def _split_sections(text: str) -> dict[str, list[_Line]]:
    sections: dict[str, list[_Line]] = {}
    current = None
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        m = re.fullmatch(r"\[([A-Za-z_]+)\]", stripped)
        if m:
            current = m.group(1)
            if current not in SECTIONS:
                raise ConfigError(f"unknown section [{current}]", n, indent + 1)
            if current in sections:
                raise ConfigError(f"duplicate section [{current}]", n, indent + 1)
            sections[current] = []
            continue
        if current is None:
            raise ConfigError("content before the first section header", n, indent + 1)
        sections[current].append(_Line(n, stripped, indent))
    return sections


def _key_value(line: _Line) -> tuple[str, str, int]:
    if "=" not in line.text:
        raise ConfigError("expected 'key = value'", line.number, line.indent + 1)
    key, value = line.text.split("=", 1)
    col = line.indent + len(key) + 2 + (len(value) - len(value.lstrip()))
    return key.strip(), value.strip(), col


def _parse_expr(text: str, gens: GeneratorSet, line: _Line, col: int) -> Form:
    try:
        return parse_form(text, gens)
    except ConfigError as exc:
        raise ConfigError(exc.message, line.number, col + (exc.column or 1) - 1, exc.kind) from None
    except DomainError as exc:
        raise ConfigError(str(exc), line.number, col) from None


def parse_config(text: str, name: str = "<string>") -> ManifoldConfig:
    """Parse and validate; raises ConfigError with line/column and a kind tag."""
    sections = _split_sections(text)

    order = DEFAULT_ORDER
    for line in sections.get("field", []):
        key, value, col = _key_value(line)
        if key not in ("root_order", "N"):
            raise ConfigError(f"unknown field setting {key!r}", line.number, line.indent + 1)
        if not value.isdigit() or int(value) < 1:
            raise ConfigError("root_order must be a positive integer", line.number, col)
        order = int(value)
    field = CyclotomicField(order)

    holomorphic = ["mu", "nu", "theta"]
    for line in sections.get("generators", []):
        key, value, col = _key_value(line)
        if key != "holomorphic":
            raise ConfigError(f"unknown generators setting {key!r}", line.number, line.indent + 1)
        holomorphic = [v.strip() for v in value.split(",") if v.strip()]
    try:
        gens = GeneratorSet.holomorphic(holomorphic, field)
    except DomainError as exc:
        line = sections.get("generators", [_Line(1, "", 0)])[0]
        raise ConfigError(str(exc), line.number, 1) from None

    diffs: dict[str, Form] = {}
    diff_lines: dict[str, _Line] = {}
    for line in sections.get("algebra", []):
        m = re.fullmatch(r"pair\s+(\S+)\s+(\S+)", line.text)
        if m:
            a, b = m.groups()
            for nm, off in ((a, line.text.index(a)), (b, line.text.rindex(b))):
                if nm not in gens.names:
                    raise ConfigError(f"unknown generator {nm!r}", line.number, line.indent + off + 1,
                                      "unknown-generator")
            if gens.partner[gens.index(a)] != gens.index(b):
                raise ConfigError(f"{a} and {b} are not a conjugate pair", line.number, line.indent + 1)
            continue
        m = re.fullmatch(r"d\s+(\S+)\s*=\s*(.*)", line.text)
        if not m:
            raise ConfigError("expected 'd <generator> = <form>' or 'pair <a> <b>'", line.number, line.indent + 1)
        target, expr = m.groups()
        if target not in gens.names:
            raise ConfigError(f"unknown generator {target!r}", line.number, line.indent + 3, "unknown-generator")
        if target in diffs:
            raise ConfigError(f"d {target} given twice", line.number, line.indent + 1)
        diffs[target] = _parse_expr(expr, gens, line, line.indent + m.start(2) + 1)
        diff_lines[target] = line
    for nm, f in diffs.items():
        if f and f.degrees() != {2}:
            ln = diff_lines[nm]
            raise ConfigError(f"d {nm} must be a 2-form", ln.number, ln.indent + 1)
    try:
        spec = AlgebraSpec.from_holomorphic(gens, diffs)
    except DomainError as exc:
        first = next(iter(diff_lines.values()), _Line(1, "", 0))
        raise ConfigError(str(exc), first.number, 1, "conjugation") from None
    flat = verify_flatness(spec)
    if not flat:
        bad = flat.witness.split(")")[0].replace("d(d ", "")
        ln = diff_lines.get(bad) or next(iter(diff_lines.values()))
        raise ConfigError(f"flatness fails: {flat.witness}", ln.number, ln.indent + 1, "flatness")

    action_order = 1
    eigen: dict[str, object] = {}
    eigen_lines: dict[str, _Line] = {}
    order_line = None
    for line in sections.get("action", []):
        key, value, col = _key_value(line)
        if key == "order":
            if not value.isdigit() or int(value) < 1:
                raise ConfigError("order must be a positive integer", line.number, col)
            action_order = int(value)
            order_line = line
            continue
        m = re.fullmatch(r"rho\s+(\S+)", key)
        if not m:
            raise ConfigError(f"expected 'order = n' or 'rho <generator> = <root of unity>'", line.number,
                              line.indent + 1)
        target = m.group(1)
        if target not in gens.names:
            raise ConfigError(f"unknown generator {target!r}", line.number, line.indent + 5, "unknown-generator")
        ev = _parse_expr(value, gens, line, col)
        try:
            ev = ev.scalar_part()
        except DomainError:
            raise ConfigError("eigenvalue must be a scalar", line.number, col, "eigenvalue") from None
        if multiplicative_order(ev) is None:
            raise ConfigError(f"eigenvalue {ev} of {target} is not a root of unity", line.number, col, "eigenvalue")
        eigen[target] = ev
        eigen_lines[target] = line
    try:
        action = ActionSpec.from_holomorphic(gens, action_order, eigen)
    except DomainError as exc:
        ln = next(iter(eigen_lines.values()), order_line or _Line(1, "", 0))
        raise ConfigError(str(exc), ln.number, 1, "eigenvalue") from None
    eq = verify_equivariance(spec, action)
    if not eq:
        bad = eq.witness.split(":")[0]
        ln = eigen_lines.get(bad) or diff_lines.get(bad) or order_line or _Line(1, "", 0)
        raise ConfigError(f"equivariance fails at {bad}: {eq.witness}", ln.number, ln.indent + 1, "equivariance")

    forms: dict[str, Form] = {}
    for line in sections.get("forms", []):
        key, value, col = _key_value(line)
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", key):
            raise ConfigError(f"invalid form name {key!r}", line.number, line.indent + 1)
        forms[key] = _parse_expr(value, gens, line, col)

    lattice = None
    lat_lines = sections.get("lattice")
    if lat_lines is None and order % 6 == 0:
        lattice = Lattice(field.root_of_unity(6))
    for line in lat_lines or []:
        key, value, col = _key_value(line)
        if key != "tau":
            raise ConfigError(f"unknown lattice setting {key!r}", line.number, line.indent + 1)
        tau = _parse_expr(value, gens, line, col)
        try:
            lattice = Lattice(tau.scalar_part())
        except DomainError as exc:
            raise ConfigError(str(exc), line.number, col, "lattice") from None

    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return ManifoldConfig(order, gens, spec, action, forms, lattice, name, digest)


def shipped_config_path(name: str) -> Path:
    return Path(str(resources.files("nilverify") / "data" / name))


def load_config(path: str | Path) -> ManifoldConfig:
    """Load from a path, falling back to the configs shipped with the package."""
    p = Path(path)
    if not p.exists():
        alt = shipped_config_path(p.name)
        if not alt.exists():
            raise ConfigError(f"config file {path} not found", kind="io")
        p = alt
    return parse_config(p.read_text(encoding="utf-8"), name=p.name)
