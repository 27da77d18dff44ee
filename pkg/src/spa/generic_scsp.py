"""A small text format for generic soft constraint problems.

Used to exercise the constraint engine on known small instances (fuzzy or
boolean), independently of protocol analysis.  Format::

    semiring fuzzy              # or: boolean
    domain a b
    variables x y
    interest x y                # defaults to all variables
    constraint x
      (a) -> 0.9
      (b) -> 0.1
    constraint x y
      default -> 0.0            # optional; defaults to the semiring one
      (a, a) -> 0.8

Values are floats for the fuzzy instance and true/false for the boolean
one.  ``solve`` prints the solution table over the variables of interest,
one ``tuple -> value`` line per assignment, in domain order.
"""

from __future__ import annotations

import itertools
from typing import Any

from .constraints import SCSP, Constraint, solution
from .semiring import BOOLEAN, FUZZY, SemiringSpec


class GenericScspError(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")


_SEMIRINGS = {"fuzzy": FUZZY, "boolean": BOOLEAN}


def _parse_value(spec: SemiringSpec, text: str, line_no: int) -> Any:
    text = text.strip()
    if spec is BOOLEAN:
        if text in ("true", "false"):
            return text == "true"
        raise GenericScspError(line_no, f"boolean value must be true/false, got {text!r}")
    try:
        return float(text)
    except ValueError:
        raise GenericScspError(line_no, f"not a number: {text!r}") from None


def _parse_tuple(domain: tuple, text: str, line_no: int) -> tuple:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise GenericScspError(line_no, f"tuple must be parenthesised, got {text!r}")
    parts = [p.strip() for p in text[1:-1].split(",")]
    for p in parts:
        if p not in domain:
            raise GenericScspError(line_no, f"value {p!r} outside the domain")
    return tuple(parts)


def parse_generic_scsp(text: str) -> SCSP:
    semiring = FUZZY
    domain: tuple = ()
    variables: tuple[str, ...] = ()
    interest: tuple[str, ...] | None = None
    constraints: list[Constraint] = []
    current: dict | None = None

    def finish() -> None:
        nonlocal current
        if current is not None:
            constraints.append(
                Constraint(
                    con=current["con"],
                    table=current["table"],
                    default=current["default"],
                )
            )
            current = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        if word == "semiring":
            name = rest.strip()
            if name not in _SEMIRINGS:
                raise GenericScspError(line_no, f"unknown semiring {name!r}")
            semiring = _SEMIRINGS[name]
        elif word == "domain":
            domain = tuple(rest.split())
        elif word == "variables":
            variables = tuple(rest.split())
        elif word == "interest":
            interest = tuple(rest.split())
        elif word == "constraint":
            finish()
            con = tuple(rest.split())
            if not con:
                raise GenericScspError(line_no, "constraint wants a variable list")
            for v in con:
                if v not in variables:
                    raise GenericScspError(line_no, f"undeclared variable {v!r}")
            current = {"con": con, "table": {}, "default": semiring.one}
        elif current is not None and "->" in line:
            lhs, _, rhs = line.rpartition("->")
            value = _parse_value(semiring, rhs, line_no)
            if lhs.strip() == "default":
                current["default"] = value
            else:
                t = _parse_tuple(domain, lhs, line_no)
                if len(t) != len(current["con"]):
                    raise GenericScspError(line_no, "tuple arity mismatch")
                current["table"][t] = value
        else:
            raise GenericScspError(line_no, f"cannot parse {line!r}")
    finish()
    if not variables:
        raise GenericScspError(0, "missing variables declaration")
    if not domain:
        raise GenericScspError(0, "missing domain declaration")
    return SCSP(
        constraints=tuple(constraints),
        con=interest if interest is not None else variables,
        variables=variables,
        domain=domain,
        semiring=semiring,
    )


def _show_value(semiring: SemiringSpec, v: Any) -> str:
    if semiring is BOOLEAN:
        return "true" if v else "false"
    return f"{v:g}"


def solve_text(text: str) -> str:
    """Parse, solve, and render the solution table deterministically."""
    p = parse_generic_scsp(text)
    sol = solution(p)
    lines = [f"solution over ({', '.join(sol.con)})"]
    for t in itertools.product(p.domain, repeat=len(sol.con)):
        lines.append(f"({', '.join(t)}) -> {_show_value(p.semiring, sol.value(t))}")
    return "\n".join(lines) + "\n"
