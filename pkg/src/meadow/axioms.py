"""Equations of meadows as term templates over the variables x, y, z."""

from __future__ import annotations

from dataclasses import dataclass

from .term import Template, parse_template, to_text, variables


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: Template
    rhs: Template

    @property
    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))

    def __str__(self) -> str:
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


def _eq(name: str, text: str) -> Equation:
    lhs, rhs = text.split("=")
    return Equation(name, parse_template(lhs), parse_template(rhs))


# commutative rings with identity, then reflection and the restricted inverse law
MD_AXIOMS: tuple[Equation, ...] = (
    _eq("add_assoc", "(x + y) + z = x + (y + z)"),
    _eq("add_comm", "x + y = y + x"),
    _eq("add_zero", "x + 0 = x"),
    _eq("add_neg", "x + -x = 0"),
    _eq("mul_assoc", "(x*y)*z = x*(y*z)"),
    _eq("mul_comm", "x*y = y*x"),
    _eq("mul_one", "x*1 = x"),
    _eq("distrib", "x*(y + z) = x*y + x*z"),
    _eq("reflection", "(x^-1)^-1 = x"),
    _eq("restricted_inverse", "x*(x*x^-1) = x"),
)

DERIVED_IDENTITIES: tuple[Equation, ...] = (
    _eq("zero_inverse", "0^-1 = 0"),
    _eq("neg_inverse", "(-x)^-1 = -(x^-1)"),
    _eq("mul_inverse", "(x*y)^-1 = x^-1*y^-1"),
    _eq("mul_zero", "x*0 = 0"),
    _eq("mul_neg", "x*-y = -(x*y)"),
    _eq("neg_neg", "-(-x) = x"),
)
