"""Graded affine presentations and the attractor calculus.

Two presentation variants cover everything implemented here: free polynomial
rings with weighted variables, and monoid algebras with a killed monomial
ideal.  General homogeneous relation ideals are deliberately out of scope
(they would need Groebner machinery and no implemented operation requires
them).  Presentations are coefficient-agnostic: only the grading matters, the
coefficient tag is carried for display.

The attractor of a presentation under a magnet N kills the graded pieces of
degree outside N.  For a free polynomial ring that is exactly the variables
with degree outside N (degrees inside N are closed under addition).  For a
monoid algebra Z[N0] it is the monomial ideal generated by N0 minus N, whose
membership test is: some divisor of the degree escapes N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import PreconditionError, SharpenRequiredError, StructuralError
from .groups import FgAbelianGroup, GroupElement, GroupHom
from .monoids import (
    Submonoid,
    _sharp_functional,
    bounded_members,
    divisors,
    intersection,
    is_face,
    is_group,
    is_sharp,
    units,
)


@dataclass(frozen=True)
class FreePoly:
    """Polynomial ring on weighted variables, graded by the ambient group."""

    grading_group: FgAbelianGroup
    vars: tuple[tuple[str, GroupElement], ...]
    coeff: str = field(default="Q", compare=False)

    def __post_init__(self):
        names = [n for n, _ in self.vars]
        if len(set(names)) != len(names):
            raise StructuralError("variable names must be unique")
        for _, d in self.vars:
            if d.ambient != self.grading_group:
                raise StructuralError("variable degree outside the grading group")

    @classmethod
    def of(cls, group: FgAbelianGroup, var_degrees: Sequence[tuple[str, Sequence[int]]],
           coeff: str = "Q") -> "FreePoly":
        return cls(group, tuple((n, group.element(d)) for n, d in var_degrees), coeff)

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.vars)

    def degrees(self) -> tuple[GroupElement, ...]:
        return tuple(d for _, d in self.vars)

    def var_degree(self, name: str) -> GroupElement:
        for n, d in self.vars:
            if n == name:
                return d
        raise StructuralError("no variable named %r" % name)

    def describe(self) -> str:
        inner = ", ".join("%s:%r" % (n, d) for n, d in self.vars)
        return "%s[%s]" % (self.coeff, inner)


@dataclass(frozen=True)
class MonoidIdeal:
    """Monomial ideal of a monoid algebra, generators plus avoided magnets.

    A degree m lies in the ideal when m - g stays in the ambient monoid for
    some explicit generator g, or when some divisor of m escapes one of the
    avoided magnets (the ideal generated by the complement of that magnet).
    """

    ambient: Submonoid
    generators: tuple[GroupElement, ...] = ()
    avoided: tuple = ()

    def __post_init__(self):
        for g in self.generators:
            if not self.ambient.contains(g):
                raise StructuralError("ideal generator outside the ambient monoid")
        for a in self.avoided:
            if a.ambient != self.ambient.ambient:
                raise StructuralError("avoided magnet in a different ambient group")
        object.__setattr__(self, "generators", tuple(sorted(set(self.generators))))

    def contains(self, m: GroupElement) -> bool:
        if not self.ambient.contains(m):
            return False
        return _ideal_member(self, m)

    def union(self, other: "MonoidIdeal") -> "MonoidIdeal":
        if other.ambient != self.ambient:
            raise StructuralError("ideal union across different monoids")
        return MonoidIdeal(
            self.ambient,
            self.generators + other.generators,
            self.avoided + other.avoided,
        )

    def is_known_empty(self) -> bool:
        if self.generators:
            return False
        return all(
            all(a.contains(g) for g in self.ambient.generators) for a in self.avoided
        )


@lru_cache(maxsize=None)
def _ideal_member(I: MonoidIdeal, m: GroupElement) -> bool:
    N0 = I.ambient
    for g in I.generators:
        if N0.contains(m - g):
            return True
    if I.avoided:
        if is_group(N0):
            # in a group everything divides everything: all or nothing
            return any(
                not a.contains(g) for a in I.avoided for g in N0.generators
            )
        for a in I.avoided:
            if any(not a.contains(d) for d in divisors(N0, m)):
                return True
    return False


@dataclass(frozen=True)
class MonoidAlgebra:
    """Z[N0] / (X^n : n in killed), graded by the ambient of N0."""

    monoid: Submonoid
    killed: Optional[MonoidIdeal] = None
    coeff: str = field(default="Q", compare=False)

    def __post_init__(self):
        if self.killed is None:
            object.__setattr__(self, "killed", MonoidIdeal(self.monoid))
        elif self.killed.ambient != self.monoid:
            raise StructuralError("killed ideal lives over a different monoid")

    @property
    def grading_group(self) -> FgAbelianGroup:
        return self.monoid.ambient

    def survives(self, m: GroupElement) -> bool:
        """Whether the graded piece at m is nonzero in the quotient."""
        return self.monoid.contains(m) and not self.killed.contains(m)

    def describe(self) -> str:
        base = "%s[%s]" % (self.coeff, self.monoid.describe())
        if self.killed.is_known_empty():
            return base
        return base + " / (killed ideal)"


@dataclass(frozen=True)
class WeightModule:
    """Finite weight decomposition: (weight, multiplicity, label) entries."""

    grading_group: FgAbelianGroup
    weights: tuple[tuple[GroupElement, int, Optional[str]], ...]

    def __post_init__(self):
        for w, mult, _ in self.weights:
            if w.ambient != self.grading_group:
                raise StructuralError("weight outside the grading group")
            if mult < 1:
                raise StructuralError("multiplicities must be >= 1")
        object.__setattr__(
            self,
            "weights",
            tuple(sorted(self.weights, key=lambda e: (e[0], e[2] or "", e[1]))),
        )

    @classmethod
    def of(cls, group: FgAbelianGroup, entries) -> "WeightModule":
        """entries: (coords, mult) or (coords, mult, label) tuples."""
        rows = []
        for e in entries:
            coords, mult = e[0], e[1]
            label = e[2] if len(e) > 2 else None
            rows.append((group.element(coords), int(mult), label))
        return cls(group, tuple(rows))

    @property
    def dimension(self) -> int:
        return sum(m for _, m, _ in self.weights)

    def filter(self, pred) -> "WeightModule":
        return WeightModule(
            self.grading_group, tuple(e for e in self.weights if pred(e[0]))
        )

    def direct_sum(self, other: "WeightModule") -> "WeightModule":
        if other.grading_group != self.grading_group:
            raise StructuralError("direct sum across different grading groups")
        return WeightModule(self.grading_group, self.weights + other.weights)

    def describe(self) -> str:
        return " + ".join(
            "%r%s x%d" % (w, ":" + l if l else "", m) for w, m, l in self.weights
        )


Presentation = Union[FreePoly, MonoidAlgebra]


@dataclass(frozen=True)
class AttractorResult:
    source: Presentation
    magnet: object
    killed: object
    quotient: Presentation


def attractor(P: Presentation, N) -> AttractorResult:
    """The closed subscheme cut out by the graded pieces of degree outside N."""
    if N.ambient != P.grading_group:
        raise StructuralError("magnet and presentation have different grading groups")
    if isinstance(P, FreePoly):
        survivors = tuple(v for v in P.vars if N.contains(v[1]))
        killed = tuple(n for n, d in P.vars if not N.contains(d))
        return AttractorResult(P, N, killed, FreePoly(P.grading_group, survivors, P.coeff))
    if isinstance(P, MonoidAlgebra):
        if not is_sharp(P.monoid):
            raise SharpenRequiredError(
                "monoid-algebra attractors need a sharp underlying monoid; "
                "pass through sharp_quotient and reindex first"
            )
        ideal = MonoidIdeal(P.monoid, avoided=(N,))
        quotient = MonoidAlgebra(P.monoid, P.killed.union(ideal), P.coeff)
        return AttractorResult(P, N, ideal, quotient)
    raise StructuralError("unsupported presentation %r" % (P,))


def weight_attractor(W: WeightModule, N) -> WeightModule:
    """Keep exactly the weight entries whose weight lies in N."""
    if N.ambient != W.grading_group:
        raise StructuralError("magnet and module have different grading groups")
    return W.filter(N.contains)


@dataclass(frozen=True)
class SupportReport:
    """Degree support of a monoid-algebra quotient, with certificates.

    members is the full support when finite is True, otherwise the slice that
    the probe bound reached.  finite None means the probe was inconclusive.
    non_reduced True is always certified by an explicit nilpotent monomial;
    False is certified only alongside a finiteness or group argument.
    """

    members: tuple[GroupElement, ...]
    finite: Optional[bool]
    certified_degree: Optional[int]
    non_reduced: Optional[bool]


def support_report(A: MonoidAlgebra, probe_bound: int = 24) -> SupportReport:
    """Enumerate the surviving degrees of A with a finiteness certificate.

    Sharp case: pick a positive functional h on the monoid and scan degrees
    upward.  If every member in a window (B - maxh, B] is killed then every
    member above B - maxh is killed too (peel generators off a representation:
    some partial sum lands in the window, and ideals absorb), so the support
    is finite and fully listed.  A finite support with a nonzero member forces
    nilpotency: the multiples of that member eventually leave the support.
    """
    N0 = A.monoid
    zero = N0.ambient.zero()
    if not N0.generators:
        alive = A.survives(zero)
        return SupportReport((zero,) if alive else (), True, 0, False)
    if is_group(N0):
        if not A.survives(zero):
            return SupportReport((), True, 0, False)
        finite = all(all(c == 0 for c in g.free) for g in N0.generators)
        members = tuple(sorted(bounded_members(N0, probe_bound)))
        # group algebras are reduced; a finite group is fully enumerated
        # once the word-length BFS stabilizes below the probe bound
        return SupportReport(members, finite if finite else False, None, False)

    h = _sharp_functional(N0)
    maxh = max(h(g) for g in N0.generators)
    all_members = bounded_members(N0, probe_bound, h)
    survivors = sorted(m for m in all_members if A.survives(m))
    by_degree: dict[int, bool] = {}
    for m in survivors:
        by_degree[h(m)] = True
    for B in range(maxh, probe_bound + 1):
        if not any(by_degree.get(d) for d in range(B - maxh + 1, B + 1)):
            members = tuple(m for m in survivors if h(m) <= B)
            non_reduced = any(not m.is_zero() for m in members)
            return SupportReport(members, True, B, non_reduced)
    witnessed = any(
        not m.is_zero() and k * h(m) <= probe_bound and not A.survives(m.scale(k))
        for m in survivors
        for k in range(2, probe_bound // max(h(m), 1) + 1)
    )
    return SupportReport(tuple(survivors), None, None, True if witnessed else None)


@dataclass(frozen=True)
class ClosedInclusion:
    """Witness that the attractor of the smaller magnet sits inside the bigger."""

    smaller: object
    bigger: object
    extra_killed: tuple

    @property
    def holds(self) -> bool:
        return True


def inclusion_is_closed(P: Presentation, N: Submonoid, L) -> ClosedInclusion:
    """Check N subset L on generators, then killed(L) subset killed(N)."""
    for g in N.generators:
        if not L.contains(g):
            raise PreconditionError("inclusion check needs N contained in L")
    rN = attractor(P, N)
    rL = attractor(P, L)
    if isinstance(P, FreePoly):
        killed_N, killed_L = set(rN.killed), set(rL.killed)
        if not killed_L <= killed_N:
            raise StructuralError("killed-set containment failed on %r" % (killed_L - killed_N,))
        return ClosedInclusion(N, L, tuple(sorted(killed_N - killed_L)))
    probes = (P.monoid.ambient.zero(),) + P.monoid.generators
    extra = []
    for p in probes:
        kn = not rN.quotient.survives(p)
        kl = not rL.quotient.survives(p)
        if kl and not kn:
            raise StructuralError("killed-support containment failed at %r" % (p,))
        if kn and not kl:
            extra.append(p)
    return ClosedInclusion(N, L, tuple(extra))


@dataclass(frozen=True)
class FaceRetraction:
    """Section and retraction between X^F and X^N for a face F of N.

    The section kills the variables of degree in N but not F; the retraction
    is the variable inclusion of the F-degree variables.  Composing them is
    the identity on the X^F presentation, asserted at construction.
    """

    attractor_presentation: FreePoly
    face_presentation: FreePoly
    section_kills: tuple[str, ...]


def face_retraction(P: Presentation, N: Submonoid, F: Submonoid) -> FaceRetraction:
    if not isinstance(P, FreePoly):
        raise PreconditionError("face retractions are implemented for free presentations")
    if not is_face(F, N):
        raise PreconditionError("F must be a face of N")
    PN = attractor(P, N).quotient
    step = attractor(PN, F)
    PF = attractor(P, F).quotient
    if step.quotient != PF:
        raise StructuralError("retraction composite is not the identity")
    return FaceRetraction(PN, PF, step.killed)


def prescribed_limit(target, N: Submonoid, F: Submonoid, Z,
                     zero_coords: Sequence[str] = ()):
    """X^N with the limit in X^F constrained to land in Z.

    Z is "unit" (keep nothing of F: kill every F-degree variable of nonzero
    degree plus the designated zero-degree coordinates, or drop all F-weights)
    or, explicitly, the extra data of the closed subscheme: a list of X^F
    variable names to kill, respectively a weight submodule of the F-part.
    """
    if not is_face(F, N):
        raise PreconditionError("F must be a face of N")
    if isinstance(target, WeightModule):
        kept = [e for e in target.weights if N.contains(e[0]) and not F.contains(e[0])]
        if Z == "unit":
            z_entries = ()
        else:
            if not isinstance(Z, WeightModule) or Z.grading_group != target.grading_group:
                raise PreconditionError("Z must be a weight module over the same grading group")
            f_part = [e for e in target.weights if N.contains(e[0]) and F.contains(e[0])]
            pool = list(f_part)
            for e in Z.weights:
                if not F.contains(e[0]) or e not in pool:
                    raise PreconditionError("Z is not inside the F-part of the module")
                pool.remove(e)
            z_entries = Z.weights
        return WeightModule(target.grading_group, tuple(kept) + tuple(z_entries))
    if isinstance(target, FreePoly):
        PN = attractor(target, N).quotient
        f_vars = [(n, d) for n, d in PN.vars if F.contains(d)]
        f_names = {n for n, _ in f_vars}
        if Z == "unit":
            to_kill = {n for n, d in f_vars if not d.is_zero()}
            for n in zero_coords:
                if n not in f_names or not PN.var_degree(n).is_zero():
                    raise PreconditionError("designated coordinate %r is not a zero-degree X^F variable" % n)
                to_kill.add(n)
        else:
            to_kill = set()
            for n in Z:
                if n not in f_names:
                    raise PreconditionError("Z variable %r is not an X^F variable" % n)
                to_kill.add(n)
        remaining = tuple(v for v in PN.vars if v[0] not in to_kill)
        return FreePoly(target.grading_group, remaining, target.coeff)
    raise StructuralError("unsupported prescribed-limit target %r" % (target,))


def intersect_attractors(P: Presentation, magnets: Sequence) -> AttractorResult:
    """Attractor of the intersection; killed data is the union of killed data."""
    if not magnets:
        raise PreconditionError("need at least one magnet")
    inter = intersection(*magnets)
    res = attractor(P, inter)
    parts = [attractor(P, N) for N in magnets]
    if isinstance(P, FreePoly):
        want = set()
        for r in parts:
            want |= set(r.killed)
        if set(res.killed) != want:
            raise StructuralError("killed set is not the union of the parts")
    else:
        for p in (P.monoid.ambient.zero(),) + P.monoid.generators:
            got = not res.quotient.survives(p)
            want_p = any(not r.quotient.survives(p) for r in parts)
            if got != want_p:
                raise StructuralError("killed support mismatch at %r" % (p,))
    return res


def iterated_attractor(P: Presentation, N, L) -> AttractorResult:
    """(X^N)^L computed both ways: iterate, and intersect; asserted equal."""
    step = attractor(attractor(P, N).quotient, L)
    direct = attractor(P, intersection(N, L))
    if isinstance(P, FreePoly):
        if step.quotient != direct.quotient:
            raise StructuralError("iterated attractor disagrees with the intersection")
    else:
        for p in (P.monoid.ambient.zero(),) + P.monoid.generators:
            if step.quotient.survives(p) != direct.quotient.survives(p):
                raise StructuralError("iterated support mismatch at %r" % (p,))
    return direct


def product_attractor(W1: WeightModule, W2: WeightModule, N) -> WeightModule:
    """Attractor of a direct sum, asserted equal to the sum of attractors."""
    combined = weight_attractor(W1.direct_sum(W2), N)
    split = weight_attractor(W1, N).direct_sum(weight_attractor(W2, N))
    if combined != split:
        raise StructuralError("attractor does not commute with the direct sum")
    return combined


def semidirect_dims(W: WeightModule, N: Submonoid) -> tuple[int, int, int]:
    """(dim W^N, dim W^{N*}, dim W^N with prescribed unit limit)."""
    star = units(N)
    total = weight_attractor(W, N).dimension
    limit_part = weight_attractor(W, star).dimension
    prescribed_part = prescribed_limit(W, N, star, "unit").dimension
    if total != limit_part + prescribed_part:
        raise StructuralError("semidirect dimension bookkeeping failed")
    return (total, limit_part, prescribed_part)


def reindex(P, f: GroupHom):
    """Push a presentation forward along a grading-group homomorphism."""
    if isinstance(P, FreePoly):
        if P.grading_group != f.domain:
            raise StructuralError("presentation not graded by the domain")
        return FreePoly(f.codomain, tuple((n, f.apply(d)) for n, d in P.vars), P.coeff)
    if isinstance(P, WeightModule):
        if P.grading_group != f.domain:
            raise StructuralError("module not graded by the domain")
        return WeightModule(
            f.codomain, tuple((f.apply(w), m, l) for w, m, l in P.weights)
        )
    if isinstance(P, MonoidAlgebra):
        if P.grading_group != f.domain:
            raise StructuralError("algebra not graded by the domain")
        if not P.killed.is_known_empty():
            raise PreconditionError("reindexing is only defined before killing an ideal")
        image = Submonoid(
            f.codomain, tuple(f.apply(g) for g in P.monoid.generators)
        )
        return MonoidAlgebra(image, None, P.coeff)
    raise StructuralError("unsupported presentation %r" % (P,))
