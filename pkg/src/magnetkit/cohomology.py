"""Cohomology of degree projections acting on a graded module.

A graded module carries one projection mu_k per degree k.  The projections
compose by mu_k mu_l = delta_{kl} mu_l, and evaluation at degree 0 plays the
role of the augmentation on the right.  Cochains in arities 0..3 with respect
to these two actions have an explicit differential, and every 1-cocycle xi is
a coboundary with primitive -xi(0): expanding the cocycle identity at (m, 0)
gives xi(m) = -mu_m(xi(0)) + delta_{m0} xi(0) on the nose.  This is the
uniqueness mechanism for limit structures: the first cohomology vanishes with
a formula, not just abstractly.

Coefficients are exact rationals throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotACocycleError, StructuralError
from .groups import FgAbelianGroup, GroupElement


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module with finitely many basis lines, each in a single degree."""

    grading_group: FgAbelianGroup
    lines: tuple[tuple[str, GroupElement], ...]

    def __post_init__(self):
        names = [n for n, _ in self.lines]
        if len(set(names)) != len(names):
            raise StructuralError("duplicate line names")
        for _, d in self.lines:
            if d.ambient != self.grading_group:
                raise StructuralError("line degree outside the grading group")

    @classmethod
    def of(cls, group: FgAbelianGroup, lines) -> "GradedFreeModule":
        return cls(group, tuple((n, group.element(c)) for n, c in lines))

    @property
    def rank(self) -> int:
        return len(self.lines)

    def degrees(self) -> tuple[GroupElement, ...]:
        return tuple(sorted({d for _, d in self.lines}))

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, (Fraction(0),) * self.rank)

    def basis(self, name: str) -> "ModuleElement":
        coeffs = [Fraction(1) if n == name else Fraction(0) for n, _ in self.lines]
        if not any(coeffs):
            raise StructuralError("no line named %r" % (name,))
        return ModuleElement(self, tuple(coeffs))

    def element(self, coeffs: dict) -> "ModuleElement":
        by_name = dict(coeffs)
        out = []
        for n, _ in self.lines:
            out.append(Fraction(by_name.pop(n, 0)))
        if by_name:
            raise StructuralError("unknown line names %r" % (sorted(by_name),))
        return ModuleElement(self, tuple(out))


@dataclass(frozen=True)
class ModuleElement:
    module: GradedFreeModule = field(compare=False)
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.module.rank:
            raise StructuralError("coefficient count does not match the rank")

    def _binop(self, other, op):
        if other.module != self.module:
            raise StructuralError("elements of different modules")
        return ModuleElement(
            self.module, tuple(op(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return ModuleElement(self.module, tuple(-a for a in self.coeffs))

    def scale(self, s) -> "ModuleElement":
        s = Fraction(s)
        return ModuleElement(self.module, tuple(s * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support_degrees(self) -> tuple[GroupElement, ...]:
        degs = {
            d for (_, d), c in zip(self.module.lines, self.coeffs) if c != 0
        }
        return tuple(sorted(degs))


def mu(k: GroupElement, v: ModuleElement) -> ModuleElement:
    """Projection of v onto its degree-k component."""
    coeffs = tuple(
        c if d == k else Fraction(0)
        for (_, d), c in zip(v.module.lines, v.coeffs)
    )
    return ModuleElement(v.module, coeffs)


def _as_key(args) -> tuple:
    return tuple(args)


@dataclass(frozen=True)
class Cochain:
    """Finitely supported cochain of arity 0..3 with module-element values.

    Arity 0 stores a single value under the empty key; higher arities map
    degree tuples to elements.  Zero values are dropped so equality of
    cochains is equality of the stored tables.
    """

    module: GradedFreeModule
    arity: int
    entries: tuple[tuple[tuple, ModuleElement], ...]

    def __post_init__(self):
        if not 0 <= self.arity <= 3:
            raise StructuralError("arity must be between 0 and 3")
        seen = set()
        kept = []
        for key, value in self.entries:
            key = _as_key(key)
            if len(key) != self.arity:
                raise StructuralError("key arity mismatch")
            for g in key:
                if g.ambient != self.module.grading_group:
                    raise StructuralError("key degree outside the grading group")
            if key in seen:
                raise StructuralError("duplicate key %r" % (key,))
            seen.add(key)
            if value.module != self.module:
                raise StructuralError("value in the wrong module")
            if not value.is_zero():
                kept.append((key, value))
        object.__setattr__(self, "entries", tuple(sorted(kept, key=lambda e: e[0])))

    @classmethod
    def of(cls, module: GradedFreeModule, arity: int, table) -> "Cochain":
        entries = []
        for key, value in table:
            key = tuple(key) if arity else ()
            entries.append((key, value))
        return cls(module, arity, tuple(entries))

    @classmethod
    def constant(cls, value: ModuleElement) -> "Cochain":
        return cls(value.module, 0, (((), value),))

    def __call__(self, *args) -> ModuleElement:
        key = _as_key(args)
        if len(key) != self.arity:
            raise StructuralError("wrong number of arguments")
        for k, v in self.entries:
            if k == key:
                return v
        return self.module.zero()

    def is_zero(self) -> bool:
        return not self.entries

    def support(self) -> tuple[tuple, ...]:
        return tuple(k for k, _ in self.entries)


def _relevant_degrees(c: Cochain) -> list[GroupElement]:
    degs = {c.module.grading_group.zero()}
    for key, value in c.entries:
        degs.update(key)
        degs.update(value.support_degrees())
    return sorted(degs)


def differential(c: Cochain) -> Cochain:
    """The coboundary, one arity up.  Defined for arities 0, 1 and 2.

    Outside the finite probe grid every term vanishes: each summand needs
    its arguments to hit the support of c or the degree of a surviving
    component, and those all lie in the relevant-degree set.
    """
    if c.arity >= 3:
        raise StructuralError("differential implemented up to arity 2")
    K = _relevant_degrees(c)
    zero = c.module.grading_group.zero()
    out = []
    if c.arity == 0:
        v = c()
        for m in K:
            val = mu(m, v)
            if m == zero:
                val = val - v
            out.append(((m,), val))
    elif c.arity == 1:
        for k in K:
            for l in K:
                val = mu(k, c(l))
                if k == l:
                    val = val - c(l)
                if l == zero:
                    val = val + c(k)
                out.append(((k, l), val))
    else:
        for k in K:
            for l in K:
                for m in K:
                    val = mu(k, c(l, m))
                    if k == l:
                        val = val - c(l, m)
                    if l == m:
                        val = val + c(k, l)
                    if m == zero:
                        val = val - c(k, l)
                    out.append(((k, l, m), val))
    return Cochain(c.module, c.arity + 1, tuple(out))


def is_cocycle(c: Cochain) -> bool:
    return differential(c).is_zero()


def primitive(xi: Cochain) -> Cochain:
    """The 0-cochain v with dv = xi, for any 1-cocycle xi; v is -xi(0).

    Raises NotACocycleError with a witnessing argument pair when xi is not
    a cocycle.
    """
    if xi.arity != 1:
        raise StructuralError("primitive takes a 1-cochain")
    obstruction = differential(xi)
    if not obstruction.is_zero():
        key, _ = obstruction.entries[0]
        raise NotACocycleError(
            "no primitive: the coboundary is nonzero at %r" % (key,), witness=key
        )
    zero = xi.module.grading_group.zero()
    v = Cochain.constant(-xi(zero))
    if differential(v) != xi:
        raise StructuralError("primitive formula failed to reproduce the cocycle")
    return v


def h1_zero_suite(
    module: GradedFreeModule, trials: int = 100, seed: int = 0
) -> int:
    """Randomized check that every 1-coboundary has the formulaic primitive.

    Draws random 0-cochains, takes their coboundaries, recovers primitives,
    and confirms the round trip; the primitive is the original element with
    its degree-0 component removed.  Returns the number of successful trials
    (always `trials` unless something is badly wrong, in which case an
    exception escapes).
    """
    rng = random.Random(seed)
    zero = module.grading_group.zero()
    for _ in range(trials):
        coeffs = tuple(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in module.lines
        )
        v = ModuleElement(module, coeffs)
        xi = differential(Cochain.constant(v))
        if not is_cocycle(xi):
            raise StructuralError("a coboundary failed the cocycle test")
        p = primitive(xi)
        if differential(p) != xi:
            raise StructuralError("primitive round trip failed")
        if p() != v - mu(zero, v):
            raise StructuralError("primitive is not the reduced original")
    return trials
