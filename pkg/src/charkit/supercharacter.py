"""Supercharacter theories: coarsenings of the character/class structure.

A theory pairs a partition X of the irreducibles with a partition K of the
group such that the aggregate characters sigma_x = sum over x of chi(1)*chi
are constant on every part of K, the identity is a singleton part, and
|X| = |K|. The module verifies and enumerates theories, tests compatibility
along subgroups, superinduces superclass functions with exact rational
scalars, extends integer order data to coarse Heilbronn-style characters,
and builds product theories from a normal subgroup and its quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from . import perms
from .chartab import CharacterTable, character_table
from .classfun import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inflate,
    inner_product,
    restrict,
)
from .errors import (
    InputError,
    InternalVerificationFailed,
    NonIntegralRestriction,
    NotCompatible,
    NotGInvariant,
    NotNormal,
    NotPartition,
    SchemaError,
    SearchSpaceTooLarge,
)
from .groups import PermutationGroup

ENUMERATION_CLASS_CAP = 8


def _as_fraction(x) -> Fraction:
    if hasattr(x, "to_fraction"):
        if not x.is_rational:
            raise InternalVerificationFailed("expected a rational value")
        return x.to_fraction()
    return Fraction(x)


@dataclass(frozen=True)
class SupercharacterTheory:
    """Partition pair (X on irreducibles, K on elements) with the constancy
    axiom; construct through make_theory so the axioms are verified."""

    table: CharacterTable
    irr_parts: tuple[tuple[int, ...], ...]
    class_parts: tuple[tuple[int, ...], ...]

    @property
    def group(self) -> PermutationGroup:
        return self.table.group

    @cached_property
    def supercharacters(self) -> tuple[ClassFunction, ...]:
        out = []
        for part in self.irr_parts:
            f = ClassFunction(self.group, [0] * len(self.group.classes))
            for i in part:
                chi = self.table.irreducibles[i]
                f = f + chi.scale(chi.degree)
            out.append(f)
        return tuple(out)

    @cached_property
    def element_parts(self) -> tuple[tuple, ...]:
        """Each K part as a sorted tuple of group elements."""
        G = self.group
        out = []
        for part in self.class_parts:
            elems = []
            for ci in part:
                elems.extend(G.classes[ci].elements)
            out.append(tuple(sorted(elems)))
        return tuple(out)

    @cached_property
    def _part_of_class(self) -> tuple[int, ...]:
        lookup = [0] * len(self.group.classes)
        for j, part in enumerate(self.class_parts):
            for ci in part:
                lookup[ci] = j
        return tuple(lookup)

    def superclass_of(self, g) -> int:
        """Index of the K part containing the element g."""
        return self._part_of_class[self.group.class_of(g)]

    def superclass_size(self, j: int) -> int:
        return sum(self.group.classes[ci].size for ci in self.class_parts[j])

    @property
    def size(self) -> int:
        return len(self.irr_parts)

    def to_json(self) -> dict:
        elems = self.group.elements
        return {
            "group": self.group.name or "",
            "X": [list(part) for part in self.irr_parts],
            "K": [
                [elems.index(g) for g in part] for part in self.element_parts
            ],
        }


@dataclass(frozen=True)
class TheoryReport:
    identity_singleton: bool
    sizes_match: bool
    constant_on_parts: bool
    union_of_classes: bool
    orthogonal: bool
    holds: bool


def _canonical_parts(parts):
    return tuple(sorted((tuple(sorted(p)) for p in parts), key=lambda p: p[0]))


def _check_partition(parts, universe, what: str):
    seen = set()
    for part in parts:
        if not part:
            raise NotPartition(f"empty part in the {what} partition")
        for x in part:
            if x in seen:
                raise NotPartition(f"{what} partition repeats {x!r}")
            if x not in universe:
                raise NotPartition(f"{what} partition contains foreign {x!r}")
            seen.add(x)
    if len(seen) != len(universe):
        raise NotPartition(f"{what} partition does not cover everything")


def make_theory(
    table: CharacterTable, irr_parts, element_parts
) -> SupercharacterTheory:
    """Build a theory from raw partitions (irreducible indices / elements),
    verifying every axiom."""
    G = table.group
    k = len(table.irreducibles)
    _check_partition(irr_parts, set(range(k)), "irreducible")
    _check_partition(element_parts, set(G.elements), "element")
    class_parts = []
    for part in element_parts:
        classes = sorted({G.class_of(g) for g in part})
        if sum(G.classes[ci].size for ci in classes) != len(set(part)):
            raise NotPartition(
                "a superclass is not a union of conjugacy classes"
            )
        class_parts.append(tuple(classes))
    theory = SupercharacterTheory(
        table,
        _canonical_parts(irr_parts),
        _canonical_parts(class_parts),
    )
    rep = verify_sct(theory)
    if not rep.holds:
        raise NotPartition(f"supercharacter axioms fail: {rep}")
    return theory


def theory_from_class_parts(
    table: CharacterTable, irr_parts, class_parts
) -> SupercharacterTheory:
    """Internal constructor from class-index parts; axioms still verified."""
    theory = SupercharacterTheory(
        table, _canonical_parts(irr_parts), _canonical_parts(class_parts)
    )
    rep = verify_sct(theory)
    if not rep.holds:
        raise NotPartition(f"supercharacter axioms fail: {rep}")
    return theory


def verify_sct(theory: SupercharacterTheory) -> TheoryReport:
    """Check the axioms: identity singleton in K, |X| = |K|, constancy of
    every supercharacter on every superclass, superclasses unions of classes
    (by construction), pairwise orthogonality of the supercharacters."""
    G = theory.group
    ident = any(part == (0,) for part in theory.class_parts)
    sizes = len(theory.irr_parts) == len(theory.class_parts)
    constant = True
    for sigma in theory.supercharacters:
        for part in theory.class_parts:
            v0 = sigma.values[part[0]]
            if any(sigma.values[ci] != v0 for ci in part[1:]):
                constant = False
    union = all(
        0 <= ci < len(G.classes)
        for part in theory.class_parts
        for ci in part
    )
    covered = sorted(ci for part in theory.class_parts for ci in part)
    union = union and covered == list(range(len(G.classes)))
    ortho = True
    sups = theory.supercharacters
    for a in range(len(sups)):
        for b in range(a + 1, len(sups)):
            if not inner_product(sups[a], sups[b]).is_zero:
                ortho = False
    holds = ident and sizes and constant and union and ortho
    return TheoryReport(ident, sizes, constant, union, ortho, holds)


def classical_theory(table: CharacterTable) -> SupercharacterTheory:
    """Singleton parts on both sides."""
    k = len(table.irreducibles)
    r = len(table.group.classes)
    return theory_from_class_parts(
        table, [(i,) for i in range(k)], [(c,) for c in range(r)]
    )


def max_theory(table: CharacterTable) -> SupercharacterTheory:
    """Trivial character alone versus everything else; identity versus the
    rest; the big supercharacter is Reg - 1."""
    k = len(table.irreducibles)
    r = len(table.group.classes)
    t = table.trivial_index
    irr_parts = [(t,)]
    rest = tuple(i for i in range(k) if i != t)
    if rest:
        irr_parts.append(rest)
    class_parts = [(0,)]
    big = tuple(range(1, r))
    if big:
        class_parts.append(big)
    return theory_from_class_parts(table, irr_parts, class_parts)


def _set_partitions(items: list, exact: int | None = None):
    """All partitions of items (deterministic order); optionally only those
    with exactly `exact` blocks."""
    if not items:
        if exact in (None, 0):
            yield []
        return
    first, rest = items[0], items[1:]
    for tail in _set_partitions(rest):
        if exact is None or len(tail) + 1 == exact:
            yield [[first]] + tail
        for i in range(len(tail)):
            cand = tail[:i] + [[first] + tail[i]] + tail[i + 1 :]
            if exact is None or len(cand) == exact:
                yield cand


def enumerate_scts(
    table: CharacterTable, max_classes: int = ENUMERATION_CLASS_CAP
) -> tuple[SupercharacterTheory, ...]:
    """All supercharacter theories, by enumerating class partitions with the
    identity alone and matching irreducible partitions by constancy."""
    G = table.group
    r = len(G.classes)
    if r > max_classes:
        raise SearchSpaceTooLarge(
            f"{r} classes exceed the enumeration cap {max_classes}"
        )
    k = len(table.irreducibles)
    found = {}
    for tail in _set_partitions(list(range(1, r))):
        class_parts = _canonical_parts([[0]] + tail)
        m = len(class_parts)
        if m > k:
            continue
        for xparts in _set_partitions(list(range(k)), exact=m):
            theory = SupercharacterTheory(
                table, _canonical_parts(xparts), class_parts
            )
            rep = verify_sct(theory)
            if rep.holds:
                key = (theory.irr_parts, theory.class_parts)
                found.setdefault(key, theory)
    out = tuple(found[key] for key in sorted(found))
    wanted = {
        (t.irr_parts, t.class_parts)
        for t in (classical_theory(table), max_theory(table))
    }
    if not wanted <= set(found):
        raise InternalVerificationFailed(
            "classical or max theory missing from enumeration"
        )
    return out


def theory_to_json(theory: SupercharacterTheory) -> dict:
    return theory.to_json()


def theory_from_json(obj, table: CharacterTable) -> SupercharacterTheory:
    if not isinstance(obj, dict) or "X" not in obj or "K" not in obj:
        raise SchemaError("theory payload must have 'X' and 'K'")
    elems = table.group.elements
    try:
        element_parts = [
            [elems[int(i)] for i in part] for part in obj["K"]
        ]
        irr_parts = [[int(i) for i in part] for part in obj["X"]]
    except (ValueError, TypeError, IndexError):
        raise SchemaError("bad theory payload") from None
    return make_theory(table, irr_parts, element_parts)


# -- superclass functions and superinduction ---------------------------------------


@dataclass(frozen=True)
class SuperclassFunction:
    """A function constant on each superclass; one value per K part."""

    theory: SupercharacterTheory
    values: tuple

    def value_at(self, g):
        return self.values[self.theory.superclass_of(g)]

    def to_class_function(self) -> ClassFunction:
        G = self.theory.group
        lookup = self.theory._part_of_class
        return ClassFunction(
            G, [self.values[lookup[ci]] for ci in range(len(G.classes))]
        )


def as_superclass_function(
    f: ClassFunction, theory: SupercharacterTheory
) -> SuperclassFunction:
    """Reinterpret a class function constant on superclasses."""
    vals = []
    for part in theory.class_parts:
        v0 = f.values[part[0]]
        if any(f.values[ci] != v0 for ci in part[1:]):
            raise InputError("function is not constant on a superclass")
        vals.append(v0)
    return SuperclassFunction(theory, tuple(vals))


def compatible(
    theory_h: SupercharacterTheory, theory_g: SupercharacterTheory
) -> bool:
    """Every H-superclass lies inside a single G-superclass."""
    G = theory_g.group
    H = theory_h.group
    G.require_subgroup(H)
    for part in theory_h.element_parts:
        targets = {theory_g.superclass_of(x) for x in part}
        if len(targets) > 1:
            return False
    return True


def superinduce(
    phi: SuperclassFunction, theory_g: SupercharacterTheory
) -> SuperclassFunction:
    """Average phi over each G-superclass, scaled by [G:H]; exact rationals.

    Value on the superclass of g is (|G|/|H|) * (1/|SCl(g)|) * the sum of
    phi over SCl(g) intersected with H. Reciprocity against every
    supercharacter of G is re-verified before returning.
    """
    theory_h = phi.theory
    G = theory_g.group
    H = theory_h.group
    if not compatible(theory_h, theory_g):
        raise NotCompatible("subgroup theory is not compatible with the big one")
    index = Fraction(G.order, H.order)
    hset = set(H.elements)
    vals = []
    for j, part in enumerate(theory_g.element_parts):
        total = 0
        for x in part:
            if x in hset:
                total = total + phi.value_at(x)
        vals.append(total * index / theory_g.superclass_size(j))
    out = SuperclassFunction(theory_g, tuple(vals))
    if not _reciprocity_ok(phi, out):
        raise InternalVerificationFailed(
            "superinduction fails reciprocity against a supercharacter"
        )
    return out


def _reciprocity_ok(phi: SuperclassFunction, out: SuperclassFunction) -> bool:
    theory_g = out.theory
    H = phi.theory.group
    out_cf = out.to_class_function()
    phi_cf = phi.to_class_function()
    for sigma in theory_g.supercharacters:
        lhs = inner_product(out_cf, sigma)
        rhs = inner_product(phi_cf, restrict(sigma, H))
        if lhs != rhs:
            return False
    return True


# -- coarse order data -------------------------------------------------------------


@dataclass(frozen=True)
class SuperHeilbronnReport:
    theory: SupercharacterTheory
    n_values: tuple[Fraction, ...]
    m_scale: int
    theta: ClassFunction
    theta_unnormalized: ClassFunction
    integral_coefficients: bool


def supercharacter_order(
    base, theory: SupercharacterTheory, part_index: int
) -> int:
    """n(G, sigma) = sum over the part of chi(1) * base[chi]."""
    degs = theory.table.degrees
    return sum(degs[i] * base[i] for i in theory.irr_parts[part_index])


def _restriction_decomposition(
    sigma: ClassFunction, theory_h: SupercharacterTheory
):
    """Coefficients of sigma|_H over the supercharacters of H; None entries
    never occur: orthogonality makes them unique."""
    H = theory_h.group
    res = restrict(sigma, H)
    coeffs = []
    rebuilt = ClassFunction(H, [0] * len(H.classes))
    for tau in theory_h.supercharacters:
        c = inner_product(res, tau) / inner_product(tau, tau)
        if not c.is_rational:
            raise NonIntegralRestriction(
                "restriction has an irrational supercharacter coefficient"
            )
        cf = c.to_fraction()
        if cf.denominator != 1:
            raise NonIntegralRestriction(
                "restriction coefficient is not an integer"
            )
        coeffs.append(cf)
        rebuilt = rebuilt + tau.scale(cf)
    if rebuilt != res:
        raise NonIntegralRestriction(
            "restriction does not lie in the span of the subgroup theory"
        )
    return coeffs


def super_heilbronn(
    base,
    theory_g: SupercharacterTheory,
    H: PermutationGroup,
    theory_h: SupercharacterTheory,
) -> SuperHeilbronnReport:
    """Coarse order data on the subgroup: n(H,tau) is a combination of the
    n(G,sigma) weighted by superinduction pairings, scaled so that the
    common multiple m of the sigma degrees clears denominators.

    theta is the displayed normalization sum of n(H,tau) tau / tau(1);
    theta_unnormalized drops the division for comparison.
    """
    G = theory_g.group
    table = theory_g.table
    if isinstance(base, dict):
        vec = [0] * len(table.irreducibles)
        for key, val in base.items():
            vec[int(key)] = int(val)
        base = vec
    base = tuple(int(b) for b in base)
    if not compatible(theory_h, theory_g):
        raise NotCompatible("subgroup theory is not compatible with the big one")
    sup_g = theory_g.supercharacters
    sup_h = theory_h.supercharacters
    m = lcm(*(int(_as_fraction(s.degree)) for s in sup_g)) if sup_g else 1
    n_g = [
        supercharacter_order(base, theory_g, j) for j in range(len(sup_g))
    ]
    sigma_norms = []
    for j, sigma in enumerate(sup_g):
        norm = _as_fraction(inner_product(sigma, sigma))
        deg = _as_fraction(sigma.degree)
        if norm != deg:
            raise InternalVerificationFailed(
                "supercharacter norm differs from its degree"
            )
        sigma_norms.append(norm)
    decomps = [_restriction_decomposition(sigma, theory_h) for sigma in sup_g]
    n_h = []
    integral = True
    for t, tau in enumerate(sup_h):
        tau_norm = _as_fraction(inner_product(tau, tau))
        acc = Fraction(0)
        for j in range(len(sup_g)):
            pairing = decomps[j][t] * tau_norm  # (SInd tau, sigma) by reciprocity
            scaled = m * pairing / sigma_norms[j]
            if scaled.denominator != 1:
                integral = False
            acc += scaled * n_g[j]
        n_h.append(acc / m)
    theta = ClassFunction(H, [0] * len(H.classes))
    theta_plain = ClassFunction(H, [0] * len(H.classes))
    for t, tau in enumerate(sup_h):
        if n_h[t]:
            theta = theta + tau.scale(n_h[t] / _as_fraction(tau.degree))
            theta_plain = theta_plain + tau.scale(n_h[t])
    return SuperHeilbronnReport(
        theory_h, tuple(n_h), m, theta, theta_plain, integral
    )


@dataclass(frozen=True)
class TheoremLoReport:
    lhs: Fraction
    rhs: int
    holds: bool
    degrees_consistent: bool
    precondition_ok: bool


def theorem_lo_check(
    base, theory: SupercharacterTheory, weak_admissible: bool = True
) -> TheoremLoReport:
    """sum over sigma of n(G,sigma)^2 / sigma(1) <= n(G,Reg)^2, with the
    ingredient sigma(1) = sum of chi(1)^2 over the part re-verified."""
    table = theory.table
    if isinstance(base, dict):
        vec = [0] * len(table.irreducibles)
        for key, val in base.items():
            vec[int(key)] = int(val)
        base = vec
    base = tuple(int(b) for b in base)
    degs = table.degrees
    lhs = Fraction(0)
    consistent = True
    for j, part in enumerate(theory.irr_parts):
        sigma_deg = _as_fraction(theory.supercharacters[j].degree)
        if sigma_deg != sum(degs[i] ** 2 for i in part):
            consistent = False
        n = supercharacter_order(base, theory, j)
        lhs += Fraction(n * n) / sigma_deg
    nreg = sum(d * b for d, b in zip(degs, base))
    rhs = nreg * nreg
    return TheoremLoReport(
        lhs, rhs, lhs <= rhs and consistent, consistent, weak_admissible
    )


@dataclass(frozen=True)
class SuperStarkReport:
    restriction_holds: bool
    lhs_literal: Fraction
    lhs_unsquared: Fraction
    rhs: int
    literal_holds: bool
    unsquared_holds: bool
    zero_forces_zero: bool


def check_super_stark(
    base,
    theory_g: SupercharacterTheory,
    H: PermutationGroup,
    theory_h: SupercharacterTheory,
) -> SuperStarkReport:
    """Restriction identity Theta_G|_H = Theta_H plus the weak bound
    (|H|/|G|) * sum of n(H,tau)^2 / tau(1)^2 <= n(G,Reg)^2.

    Both the literal tau(1)^2 normalization and the tau(1) variant are
    reported; the literal one is the weaker inequality.
    """
    G = theory_g.group
    rep_g = super_heilbronn(base, theory_g, G, theory_g)
    rep_h = super_heilbronn(base, theory_g, H, theory_h)
    restriction = restrict(rep_g.theta, H) == rep_h.theta
    table = theory_g.table
    if isinstance(base, dict):
        vec = [0] * len(table.irreducibles)
        for key, val in base.items():
            vec[int(key)] = int(val)
        base = vec
    base = tuple(int(b) for b in base)
    nreg = sum(d * b for d, b in zip(table.degrees, base))
    rhs = nreg * nreg
    ratio = Fraction(H.order, G.order)
    lhs_lit = Fraction(0)
    lhs_uns = Fraction(0)
    for t, tau in enumerate(theory_h.supercharacters):
        deg = _as_fraction(tau.degree)
        n = rep_h.n_values[t]
        lhs_lit += n * n / (deg * deg)
        lhs_uns += n * n / deg
    lhs_lit *= ratio
    lhs_uns *= ratio
    zero_ok = True
    if nreg == 0:
        zero_ok = all(n == 0 for n in rep_h.n_values)
    return SuperStarkReport(
        restriction, lhs_lit, lhs_uns, rhs,
        lhs_lit <= rhs, lhs_uns <= rhs, zero_ok,
    )


# -- product theories --------------------------------------------------------------


def _is_g_invariant(theory_n: SupercharacterTheory, G: PermutationGroup) -> bool:
    """Each superclass of the normal subgroup is closed under G-conjugation."""
    for part in theory_n.element_parts:
        pset = set(part)
        for g in G.generators:
            for x in part:
                if perms.conjugate(g, x) not in pset:
                    return False
    return True


def hendrickson_product(
    G: PermutationGroup,
    theory_n: SupercharacterTheory,
    theory_q: SupercharacterTheory,
) -> SupercharacterTheory:
    """Glue a G-invariant theory on a normal subgroup N with a theory on G/N.

    Supercharacters: inductions of the nontrivial-part supercharacters of N
    plus inflations of all quotient supercharacters. Superclasses: the parts
    inside N plus preimages of the nonidentity quotient parts. The result is
    verified as a theory on G.
    """
    N = theory_n.group
    if not G.is_normal(N):
        raise NotNormal("the first theory must live on a normal subgroup")
    q = G.quotient(N)
    if theory_q.group != q.quotient:
        raise InputError("second theory must live on the quotient group")
    if not _is_g_invariant(theory_n, G):
        raise NotGInvariant(
            "conjugation moves some superclass of the normal subgroup"
        )
    table = character_table(G)
    tab_n = theory_n.table
    # trivial part of the N-side X partition
    triv_n = tab_n.trivial_index
    functions = []
    for j, part in enumerate(theory_n.irr_parts):
        if triv_n in part:
            continue
        functions.append(induce(theory_n.supercharacters[j], G))
    for sigma in theory_q.supercharacters:
        functions.append(inflate(sigma, q))
    # superclasses
    element_parts = [list(part) for part in theory_n.element_parts]
    ident_part = theory_q.superclass_of(q.quotient.identity)
    i0 = q.coset_index[G.identity]
    for j, part in enumerate(theory_q.element_parts):
        if j == ident_part:
            continue
        pre = []
        for xbar in part:
            pre.extend(q.cosets[xbar[i0]])
        element_parts.append(pre)
    # derive the X partition from the constituent sets
    irr_parts = []
    seen = set()
    for f in functions:
        vc = decompose(f, table)
        support = tuple(sorted(vc.coeffs))
        for i in support:
            if vc.coeffs[i] != table.degrees[i]:
                raise InternalVerificationFailed(
                    "product function is not an aggregate supercharacter"
                )
            if i in seen:
                raise InternalVerificationFailed(
                    "product functions overlap on a constituent"
                )
            seen.add(i)
        irr_parts.append(support)
    if len(seen) != len(table.irreducibles):
        raise InternalVerificationFailed(
            "product functions miss some irreducible"
        )
    return make_theory(table, irr_parts, element_parts)
