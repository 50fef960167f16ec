"""Plain-text scenario files: sections of key = value lines plus a command list."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .circle import INF
from .errors import ParseError, ValidationError
from .moebius import MoebiusMap
from .surd import Surd, is_square_free, split_square

SECTIONS = ("scenario", "generators", "factors", "partition", "model", "gaps", "commands")
COMMANDS = {
    "classify": 1, "classify-pair": 2, "classify-commutator": 2, "census": 0, "certify": 0,
    "verify": 0, "classify-unlinked": 0, "same-orbit": 1, "freeness": 0,
}
ARRANGEMENTS = ("linked", "unlinked-geometric", "unlinked-parallel")

_RATIONAL = r"-?\d+(?:/\d+)?"
_SURD = re.compile(rf"^\s*(?:({_RATIONAL})\s*(?=[+-]))?([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?sqrt\((\d+)\)\s*$")
_PLAIN = re.compile(rf"^\s*({_RATIONAL})\s*$")


@dataclass
class Command:
    name: str
    args: tuple = ()
    params: dict = field(default_factory=dict)
    line: int = 0

    def int_param(self, key: str, default: int) -> int:
        return int(self.params.get(key, default))


@dataclass
class Scenario:
    name: str
    generators: dict = field(default_factory=dict)
    factors: dict = field(default_factory=dict)
    partition: dict = field(default_factory=dict)
    model: dict = field(default_factory=dict)
    gaps: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "model" if self.model else "moebius"


def parse_surd(text: str, line: int = 0, col: int = 0):
    """Parse "a", "sqrt(d)", "a + b*sqrt(d)" with rational a, b, or "inf"."""
    if text.strip() == "inf":
        return INF
    plain = _PLAIN.match(text)
    if plain:
        return Surd(Fraction(plain.group(1)))
    m = _SURD.match(text)
    if not m:
        raise ParseError(f"bad number {text.strip()!r}", line, col)
    a, sign, b, d = m.groups()
    n = int(d)
    if n < 2 or not is_square_free(n):
        k, rest = split_square(n) if n else (0, 0)
        hint = "" if n < 2 else f"; write {k}*sqrt({rest})" if rest > 1 else f"; write {k}"
        raise ValidationError(f"line {line}: sqrt({n}) is not a square-free radicand{hint}")
    coeff = Fraction(b) if b is not None else Fraction(1)
    if sign == "-":
        coeff = -coeff
    return Surd(Fraction(a) if a else 0, coeff, n)


def _matrix(text: str, line: int, col: int) -> MoebiusMap:
    nums = re.findall(r"-?\d+", text)
    if not re.fullmatch(r"\s*\[\s*\[[-\d\s,]+\]\s*,\s*\[[-\d\s,]+\]\s*\]\s*", text) or len(nums) != 4:
        raise ParseError("matrix must look like [[a,b],[c,d]] with integers", line, col)
    a, b, c, d = map(int, nums)
    if a * d - b * c == 0:
        raise ValidationError(f"line {line}: matrix [[{a},{b}],[{c},{d}]] has determinant 0")
    if a * d - b * c < 0:
        raise ValidationError(f"line {line}: matrix [[{a},{b}],[{c},{d}]] reverses orientation")
    return MoebiusMap(a, b, c, d)


def _arcs(text: str, line: int, col: int) -> list:
    out = []
    for m in re.finditer(r"\(([^()]*)\)", text):
        parts = m.group(1).split(",")
        if len(parts) != 2:
            raise ParseError("an arc is written (lo, hi)", line, col + m.start())
        out.append(tuple(parse_surd(p, line, col + m.start()) for p in parts))
    if not out or re.sub(r"\([^()]*\)|[\s,]", "", text):
        raise ParseError("expected a list of arcs (lo, hi), (lo, hi)", line, col)
    return out


def _values(text: str, line: int, col: int) -> list:
    return [parse_surd(p, line, col) for p in text.split(",")]


def _command(text: str, line: int) -> Command:
    words = text.split()
    name = words[0]
    if name not in COMMANDS:
        raise ParseError(f"unknown command {name!r}", line, 1)
    args, params = [], {}
    for w in words[1:]:
        if "=" in w:
            k, v = w.split("=", 1)
            params[k] = v
        else:
            args.append(w)
    if len(args) != COMMANDS[name]:
        raise ParseError(f"{name} takes {COMMANDS[name]} generator argument(s)", line, 1)
    return Command(name, tuple(args), params, line)


def parse_scenario(text: str) -> Scenario:
    sc = Scenario(name="")
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip()) + 1
        stripped = body.strip()
        if stripped.startswith("["):
            m = re.fullmatch(r"\[([a-z]+)\]", stripped)
            if not m or m.group(1) not in SECTIONS:
                raise ParseError(f"unknown section {stripped}", lineno, indent)
            section = m.group(1)
            continue
        if section is None:
            raise ParseError("content before the first section", lineno, indent)
        if section == "commands":
            sc.commands.append(_command(stripped, lineno))
            continue
        if "=" not in stripped:
            raise ParseError("expected key = value", lineno, indent)
        key, value = (s.strip() for s in stripped.split("=", 1))
        rest = body[body.index("=") + 1:]
        vcol = body.index("=") + 2 + len(rest) - len(rest.lstrip())
        if section == "scenario":
            if key != "name":
                raise ParseError(f"unknown key {key!r}", lineno, indent)
            sc.name = value
        elif section == "generators":
            sc.generators[key] = _matrix(value, lineno, vcol)
        elif section == "factors":
            sc.factors[key] = tuple(g.strip() for g in value.split(","))
        elif section == "partition":
            sc.partition[key] = _arcs(value, lineno, vcol)
        elif section == "model":
            sc.model[key] = value if key == "arrangement" else _values(value, lineno, vcol)
        elif section == "gaps":
            sc.gaps[key] = _values(value, lineno, vcol) if "." not in key else _arcs(value, lineno, vcol)
    validate(sc)
    return sc


def validate(sc: Scenario) -> None:
    if not sc.name:
        raise ValidationError("scenario has no name")
    for fid, gens in sc.factors.items():
        for g in gens:
            if g not in sc.generators:
                raise ValidationError(f"factor {fid} uses undefined generator {g}")
    if sc.model and sc.model.get("arrangement") not in ARRANGEMENTS:
        raise ValidationError(f"model arrangement must be one of {', '.join(ARRANGEMENTS)}")
    for cmd in sc.commands:
        for g in cmd.args:
            if g not in sc.generators:
                raise ValidationError(f"line {cmd.line}: {cmd.name} uses undefined generator {g}")
        for key in ("radius", "samples"):
            if key in cmd.params:
                try:
                    ok = int(cmd.params[key]) >= 1
                except ValueError:
                    ok = False
                if not ok:
                    raise ValidationError(f"line {cmd.line}: {key} must be an integer >= 1")
