"""Random equational rewriting with meadow axioms, for building term pairs
that are provably equal by construction."""

from __future__ import annotations

import random
from typing import Mapping

from .axioms import DERIVED_IDENTITIES, MD_AXIOMS, Equation
from .normal import z_term
from .term import (Add, Inv, Lit, Mul, Neg, Template, Term, Var, children, random_term,
                   substitute, variables)


def match(tpl: Template, t: Term, env: dict[str, Term] | None = None) -> dict[str, Term] | None:
    """First-order matching; repeated variables must bind equal subterms."""
    env = {} if env is None else env
    if isinstance(tpl, Var):
        bound = env.get(tpl.name)
        if bound is None:
            env[tpl.name] = t
            return env
        return env if bound == t else None
    if type(tpl) is not type(t):
        return None
    if isinstance(tpl, Lit):
        return env if tpl == t else None
    for a, b in zip(children(tpl), children(t)):
        if match(a, b, env) is None:
            return None
    return env


def positions(t: Term) -> list[tuple[int, ...]]:
    out = []
    stack: list[tuple[Term, tuple[int, ...]]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        out.append(path)
        for i, c in enumerate(children(node)):
            stack.append((c, path + (i,)))
    return out


def subterm(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(t, Neg):
        return Neg(replace(t.t, rest, new))
    if isinstance(t, Inv):
        return Inv(replace(t.t, rest, new))
    if isinstance(t, (Add, Mul)):
        l, r = (replace(t.l, rest, new), t.r) if head == 0 else (t.l, replace(t.r, rest, new))
        return type(t)(l, r)
    raise ValueError("path leads below a leaf")


EQUATIONS: tuple[Equation, ...] = MD_AXIOMS + DERIVED_IDENTITIES


def rewrite_step(t: Term, rng: random.Random, max_lit: int = 9) -> Term:
    """Apply one oriented equation instance at a random position.

    Tries to match a random side of a random equation at the chosen
    subterm; if nothing matches, expands the subterm with an equation whose
    one side is a bare variable (``x -> x + 0`` and the like), instantiating
    any remaining variables with fresh random terms.
    """
    path = rng.choice(positions(t))
    u = subterm(t, path)
    order = list(EQUATIONS)
    rng.shuffle(order)
    for eq in order:
        sides = [(eq.lhs, eq.rhs), (eq.rhs, eq.lhs)]
        rng.shuffle(sides)
        for src, dst in sides:
            if isinstance(src, Var):
                continue
            env = match(src, u)
            if env is None:
                continue
            env = _fill(dst, env, rng, max_lit)
            return replace(t, path, substitute(dst, env))
    expansions = [eq for eq in EQUATIONS if isinstance(eq.rhs, Var) or isinstance(eq.lhs, Var)]
    eq = rng.choice(expansions)
    src, dst = (eq.rhs, eq.lhs) if isinstance(eq.rhs, Var) else (eq.lhs, eq.rhs)
    env = _fill(dst, {src.name: u}, rng, max_lit)
    return replace(t, path, substitute(dst, env))


def _fill(tpl: Template, env: Mapping[str, Term], rng: random.Random, max_lit: int) -> dict[str, Term]:
    out = dict(env)
    for name in variables(tpl):
        if name not in out:
            out[name] = random_term(rng.getrandbits(63), 3, max_lit)
    return out


def equal_pair(seed: int, max_depth: int = 5, max_lit: int = 9, steps: int = 4) -> tuple[Term, Term]:
    """A random term and a rewrite of it; provably equal by construction."""
    rng = random.Random(seed)
    s = random_term(rng.getrandbits(63), max_depth, max_lit)
    t = s
    for _ in range(steps):
        t = rewrite_step(t, rng, max_lit)
    return s, t


def perturbed_pair(seed: int, max_depth: int = 5, max_lit: int = 9) -> tuple[Term, Term]:
    """``t`` and ``t + Z_i*c``: same rational value, possibly different in GF(prime(i))."""
    rng = random.Random(seed)
    t = random_term(rng.getrandbits(63), max_depth, max_lit)
    i = rng.randrange(6)
    return t, Add(t, Mul(z_term(i), Lit(rng.randrange(8))))


def random_pair(seed: int, max_depth: int = 5, max_lit: int = 9) -> tuple[Term, Term]:
    rng = random.Random(seed)
    return (random_term(rng.getrandbits(63), max_depth, max_lit),
            random_term(rng.getrandbits(63), max_depth, max_lit))


def mixed_pair(seed: int, max_depth: int = 5, max_lit: int = 9) -> tuple[str, Term, Term]:
    """Cycle through rewritten, perturbed and independent pairs."""
    kind = ("rewritten", "perturbed", "independent")[seed % 3]
    if kind == "rewritten":
        return (kind, *equal_pair(seed, max_depth, max_lit))
    if kind == "perturbed":
        return (kind, *perturbed_pair(seed, max_depth, max_lit))
    return (kind, *random_pair(seed, max_depth, max_lit))
