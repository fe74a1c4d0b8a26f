"""Monomial decompositions, levels, M-groups, and the monomial cone.

The central construction writes the permutation character Ind_H^G(1) of a
solvable group as 1_G plus a non-negative integer combination of characters
induced from linear characters of subgroups, by recursion: pass to a quotient
when a minimal normal subgroup of G lies inside H, otherwise split along a
minimal abelian normal subgroup A (inertia-group construction when HA = G,
two-step transitivity otherwise). A level-i variant splits off the term
Ind_{HG^i}^G(1) along the derived series. Every certificate re-verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import perms
from .chartab import (
    CharacterTable,
    character_table,
    group_from_json,
    group_to_json,
    linear_characters,
)
from .classfun import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inflate,
    inner_product,
    is_linear,
    level,
    restrict,
    twist,
)
from .cyclo import _format_fraction, _parse_fraction
from .errors import (
    EmptyFamily,
    GroupMismatch,
    InputError,
    InternalVerificationFailed,
    NotLinear,
    NotSolvable,
    SchemaError,
    VerificationFailed,
)
from .exactlp import solve_nonnegative
from .groups import PermutationGroup, Quotient


@dataclass(frozen=True)
class MonomialTerm:
    subgroup: PermutationGroup
    character: ClassFunction
    coefficient: Fraction

    def __post_init__(self):
        if self.character.group != self.subgroup:
            raise GroupMismatch("term character lives on the wrong subgroup")
        if not is_linear(self.character):
            raise NotLinear("monomial terms require degree-1 characters")

    @property
    def is_trivial_character(self) -> bool:
        return all(v == 1 for v in self.character.values)

    def induced(self, G: PermutationGroup) -> ClassFunction:
        return induce(self.character, G)

    def to_json(self) -> dict:
        return {
            "subgroup_gens": [perms.to_images(g) for g in self.subgroup.generators],
            "linear_char": self.character.to_json(),
            "coeff": _format_fraction(self.coefficient),
        }


@dataclass(frozen=True)
class MonomialDecomposition:
    group: PermutationGroup
    target: ClassFunction
    residual_trivial_coeff: Fraction
    terms: tuple[MonomialTerm, ...]

    def evaluate(self) -> ClassFunction:
        acc = ClassFunction.trivial(self.group).scale(self.residual_trivial_coeff)
        for t in self.terms:
            acc = acc + t.induced(self.group).scale(t.coefficient)
        return acc

    def verify(self, internal: bool = True) -> None:
        err = InternalVerificationFailed if internal else VerificationFailed
        if self.target.group != self.group:
            raise err("certificate target lives on the wrong group")
        for t in self.terms:
            if not self.group.contains_subgroup(t.subgroup):
                raise err("certificate term subgroup is not a subgroup")
        if self.evaluate() != self.target:
            raise err("certificate sum does not reproduce the target")

    def to_json(self) -> dict:
        return {
            "group": group_to_json(self.group),
            "target": self.target.to_json(),
            "residual_trivial": _format_fraction(self.residual_trivial_coeff),
            "terms": [t.to_json() for t in self.terms],
        }


def decomposition_from_json(obj) -> MonomialDecomposition:
    if not isinstance(obj, dict):
        raise SchemaError("certificate payload must be an object")
    for field in ("group", "target", "residual_trivial", "terms"):
        if field not in obj:
            raise SchemaError(f"certificate payload missing {field!r}")
    G = group_from_json(obj["group"])
    target = ClassFunction.from_json(G, obj["target"])
    terms = []
    for entry in obj["terms"]:
        gens = tuple(perms.from_images(im, G.degree) for im in entry["subgroup_gens"])
        H = G.subgroup(gens)
        chi = ClassFunction.from_json(H, entry["linear_char"])
        terms.append(MonomialTerm(H, chi, _parse_fraction(entry["coeff"])))
    dec = MonomialDecomposition(
        G, target, _parse_fraction(obj["residual_trivial"]), tuple(terms)
    )
    dec.verify(internal=False)
    return dec


# -- the recursive construction -------------------------------------------------


def _image_in_quotient(q: Quotient, H: PermutationGroup) -> PermutationGroup:
    elems = sorted({q.project(h) for h in H.elements})
    return q.quotient.subgroup_from_elements(elems)


def _pull_back(
    chi_bar: ClassFunction, q: Quotient, K: PermutationGroup
) -> ClassFunction:
    Kbar = chi_bar.group
    values = [chi_bar.values[Kbar.class_of(q.project(c.rep))] for c in K.classes]
    return ClassFunction(K, values)


def _inflate_decomposition(
    sub: MonomialDecomposition, q: Quotient, G: PermutationGroup,
    target: ClassFunction,
) -> MonomialDecomposition:
    terms = []
    for t in sub.terms:
        K = q.preimage(t.subgroup)
        terms.append(MonomialTerm(K, _pull_back(t.character, q, K), t.coefficient))
    return MonomialDecomposition(
        G, target, sub.residual_trivial_coeff, tuple(terms)
    )


def _join(G: PermutationGroup, A: PermutationGroup, B: PermutationGroup):
    return G.subgroup(tuple(A.generators) + tuple(B.generators))


def _inertia_group(
    G: PermutationGroup, A: PermutationGroup, eps: ClassFunction
) -> PermutationGroup:
    agens = A.generators
    members = [
        g
        for g in G.elements
        if all(
            eps.value_at(perms.conjugate(g, a)) == eps.value_at(a) for a in agens
        )
    ]
    return G.subgroup_from_elements(members)


def _complement_case(
    G: PermutationGroup, H: PermutationGroup, A: PermutationGroup
) -> MonomialDecomposition:
    """HA = G with A minimal abelian normal and H a complement.

    The coset space G/H is a regular A-set, so Ind_H^G(1) is multiplicity
    free and the A-constituents of its summands partition the dual of A.
    Each non-linear constituent is induced from a linear character of the
    inertia group of one of its A-constituents.
    """
    target = induce(ClassFunction.trivial(H), G)
    table = character_table(G)
    vc = decompose(target, table)
    residual = Fraction(0)
    terms = []
    for idx in sorted(vc.coeffs):
        if vc.coeffs[idx] != 1:
            raise InternalVerificationFailed(
                "complement-case permutation character is not multiplicity free"
            )
        chi = table.irreducibles[idx]
        if idx == table.trivial_index:
            residual = Fraction(1)
            continue
        if chi.degree == 1:
            terms.append(MonomialTerm(G, chi, Fraction(1)))
            continue
        resA = restrict(chi, A)
        eps = None
        for cand in character_table(A).irreducibles:
            m = inner_product(resA, cand)
            if m == 1 and any(v != 1 for v in cand.values):
                eps = cand
                break
            if m != 0 and m != 1:
                raise InternalVerificationFailed(
                    "constituent restriction to A is not multiplicity free"
                )
        if eps is None:
            raise InternalVerificationFailed(
                "non-linear constituent has no nontrivial A-constituent"
            )
        T = _inertia_group(G, A, eps)
        found = None
        for phi in linear_characters(T):
            if restrict(phi, A) == eps and induce(phi, G) == chi:
                found = MonomialTerm(T, phi, Fraction(1))
                break
        if found is None:
            raise InternalVerificationFailed(
                "no linear character of the inertia group induces the constituent"
            )
        terms.append(found)
    if residual != 1:
        raise InternalVerificationFailed(
            "trivial constituent missing from permutation character"
        )
    return MonomialDecomposition(G, target, residual, tuple(terms))


def _uvdw(G: PermutationGroup, H: PermutationGroup) -> MonomialDecomposition:
    if H.order == G.order:
        return MonomialDecomposition(
            G, ClassFunction.trivial(G), Fraction(1), ()
        )
    h_elems = set(H.elements)
    for N in G.minimal_normal_subgroups:
        if set(N.elements) <= h_elems:
            q = G.quotient(N)
            sub = _uvdw(q.quotient, _image_in_quotient(q, H))
            target = induce(ClassFunction.trivial(H), G)
            return _inflate_decomposition(sub, q, G, target)
    A = G.minimal_normal_subgroups[0]
    if not A.is_abelian:
        raise InternalVerificationFailed(
            "minimal normal subgroup of a solvable group must be abelian"
        )
    M = _join(G, H, A)
    if M.order == G.order:
        return _complement_case(G, H, A)
    d1 = _uvdw(M, H)
    if d1.residual_trivial_coeff != 1:
        raise InternalVerificationFailed("inner recursion lost the trivial term")
    d2 = _uvdw(G, M)
    target = induce(ClassFunction.trivial(H), G)
    return MonomialDecomposition(
        G, target, d2.residual_trivial_coeff, d2.terms + d1.terms
    )


def decompose_uvdw(
    G: PermutationGroup, H: PermutationGroup
) -> MonomialDecomposition:
    """Ind_H^G(1_H) = 1_G + sum of induced nontrivial linear characters."""
    G.require_subgroup(H)
    if not G.is_solvable:
        raise NotSolvable("the monomial decomposition requires a solvable group")
    dec = _uvdw(G, H)
    dec.verify(internal=True)
    if dec.residual_trivial_coeff != 1:
        raise InternalVerificationFailed("trivial coefficient must equal 1")
    for t in dec.terms:
        if t.coefficient.denominator != 1 or t.coefficient <= 0:
            raise InternalVerificationFailed("coefficients must be positive integers")
        if t.is_trivial_character:
            raise InternalVerificationFailed("terms must carry nontrivial characters")
    return dec


def _uvdw_level(
    G: PermutationGroup, H: PermutationGroup, i: int
) -> MonomialDecomposition:
    target = induce(ClassFunction.trivial(H), G)
    dl = G.derived_length
    if i >= dl:
        base = MonomialTerm(H, ClassFunction.trivial(H), Fraction(1))
        return MonomialDecomposition(G, target, Fraction(0), (base,))
    k = dl - 1
    Gk = G.derived_term(k)
    H1 = _join(G, H, Gk)
    if H1.order == H.order:
        q = G.quotient(Gk)
        sub = _uvdw_level(q.quotient, _image_in_quotient(q, H), i)
        return _inflate_decomposition(sub, q, G, target)
    if H1.order == G.order:
        plain = _uvdw(G, H)
        base = MonomialTerm(
            G, ClassFunction.trivial(G), plain.residual_trivial_coeff
        )
        return MonomialDecomposition(
            G, target, Fraction(0), (base,) + plain.terms
        )
    d1 = _uvdw(H1, H)
    if d1.residual_trivial_coeff != 1:
        raise InternalVerificationFailed("inner recursion lost the trivial term")
    d2 = _uvdw_level(G, H1, i)
    return MonomialDecomposition(G, target, Fraction(0), d2.terms + d1.terms)


def decompose_uvdw_level(
    G: PermutationGroup, H: PermutationGroup, i: int
) -> MonomialDecomposition:
    """Ind_H^G(1) = Ind_{HG^i}^G(1) + induced nontrivial linear characters.

    The first term of the result is the base term (subgroup HG^i, trivial
    character, coefficient 1); the remaining terms carry nontrivial linear
    characters with positive integer coefficients.
    """
    G.require_subgroup(H)
    if not G.is_solvable:
        raise NotSolvable("the level decomposition requires a solvable group")
    if i < 1:
        raise InputError("the level index must be at least 1")
    dec = _uvdw_level(G, H, i)
    dec.verify(internal=True)
    if dec.residual_trivial_coeff != 0 or not dec.terms:
        raise InternalVerificationFailed("level certificate must start at a base term")
    base = dec.terms[0]
    M = _join(G, H, G.derived_term(i))
    if base.subgroup != M or not base.is_trivial_character:
        raise InternalVerificationFailed("base term must be 1 on HG^i")
    if base.coefficient != 1:
        raise InternalVerificationFailed("base coefficient must equal 1")
    for t in dec.terms[1:]:
        if t.coefficient.denominator != 1 or t.coefficient <= 0:
            raise InternalVerificationFailed("coefficients must be positive integers")
        if t.is_trivial_character:
            raise InternalVerificationFailed("terms must carry nontrivial characters")
    return dec


def twist_certificate(
    dec: MonomialDecomposition, chi0: ClassFunction
) -> MonomialDecomposition:
    """Tensor a certificate with a linear character of the ambient group.

    Twisting commutes with induction, so each term (K, phi) becomes
    (K, phi * chi0|_K), the target becomes target * chi0, and any residual
    multiple of 1_G becomes the same multiple of chi0.
    """
    G = dec.group
    if chi0.group != G:
        raise GroupMismatch("twisting character must live on the ambient group")
    if not is_linear(chi0):
        raise NotLinear("twisting requires a degree-1 character")
    target = twist(dec.target, chi0)
    terms = []
    residual = Fraction(0)
    if all(v == 1 for v in chi0.values):
        residual = dec.residual_trivial_coeff
    elif dec.residual_trivial_coeff != 0:
        terms.append(MonomialTerm(G, chi0, dec.residual_trivial_coeff))
    for t in dec.terms:
        tw = twist(t.character, restrict(chi0, t.subgroup))
        terms.append(MonomialTerm(t.subgroup, tw, t.coefficient))
    out = MonomialDecomposition(G, target, residual, tuple(terms))
    out.verify(internal=True)
    return out


# -- pairings along the derived series ------------------------------------------


@dataclass(frozen=True)
class PairingLevels:
    group: PermutationGroup
    subgroup: PermutationGroup
    level: int
    trivial_on_intersection: bool
    extension_subgroup: PermutationGroup | None
    extension: ClassFunction | None
    pairings: tuple[int, ...]
    induced_pairings: tuple[int, ...]
    levels: tuple[int, ...]
    dichotomy_holds: bool
    identity_holds: bool | None


def _extend_trivially(
    psi: ClassFunction, H: PermutationGroup, M: PermutationGroup,
    Gi_set: frozenset,
) -> ClassFunction:
    """The character of M = H*G^i with values psi(h) on h*G^i."""
    h_list = H.elements
    values = []
    for c in M.classes:
        val = None
        for h in h_list:
            if perms.compose(perms.inverse(h), c.rep) in Gi_set:
                val = psi.value_at(h)
                break
        if val is None:
            raise InternalVerificationFailed("class representative not in H*G^i")
        values.append(val)
    return ClassFunction(M, values)


def _as_int(x) -> int:
    if hasattr(x, "to_fraction"):
        if not x.is_rational:
            raise InternalVerificationFailed("expected a rational multiplicity")
        x = x.to_fraction()
    f = Fraction(x)
    if f.denominator != 1:
        raise InternalVerificationFailed("expected an integer multiplicity")
    return int(f)


def pairing_levels(
    G: PermutationGroup, H: PermutationGroup, psi: ClassFunction, i: int
) -> PairingLevels:
    """Inner products of Ind_H^G(psi) against Irr(G), organised by level.

    When psi is trivial on H meet G^i it extends to psi' on H*G^i with G^i
    in the kernel; the pairings (chi, Ind psi') match (chi, Ind_H psi) for
    l(chi) <= i and vanish above, and Ind psi' = sum over l(chi) <= i of
    (chi, Ind_H psi) chi. When psi is nontrivial on the intersection, all
    pairings at level <= i vanish. Both facts are re-verified exactly.
    """
    G.require_subgroup(H)
    if not G.is_solvable:
        raise NotSolvable("levels require a solvable group")
    if psi.group != H:
        raise GroupMismatch("psi must live on the subgroup")
    if not is_linear(psi):
        raise NotLinear("psi must be a degree-1 character")
    if i < 0:
        raise InputError("the level index must be non-negative")
    table = character_table(G)
    levels = tuple(level(chi) for chi in table.irreducibles)
    ind_psi = induce(psi, G)
    induced_pairings = tuple(
        _as_int(inner_product(ind_psi, chi)) for chi in table.irreducibles
    )
    Gi = G.derived_term(i)
    gi_set = frozenset(Gi.elements)
    inter = [h for h in H.elements if h in gi_set]
    trivial_on = all(psi.value_at(h) == 1 for h in inter)
    if not trivial_on:
        ok = all(
            induced_pairings[j] == 0
            for j in range(len(levels))
            if levels[j] <= i
        )
        if not ok:
            raise InternalVerificationFailed(
                "pairings at low level must vanish when psi is nontrivial "
                "on the intersection"
            )
        return PairingLevels(
            G, H, i, False, None, None, induced_pairings, induced_pairings,
            levels, True, None,
        )
    M = _join(G, H, Gi)
    psi_ext = _extend_trivially(psi, H, M, gi_set)
    if not is_linear(psi_ext):
        raise InternalVerificationFailed("extension is not a linear character")
    ind_ext = induce(psi_ext, G)
    pairings = tuple(
        _as_int(inner_product(ind_ext, chi)) for chi in table.irreducibles
    )
    ok = all(
        p == (q if l <= i else 0)
        for p, q, l in zip(pairings, induced_pairings, levels)
    )
    if not ok:
        raise InternalVerificationFailed("level dichotomy failed")
    acc = ClassFunction(G, [0] * len(G.classes))
    for j, chi in enumerate(table.irreducibles):
        if levels[j] <= i and induced_pairings[j]:
            acc = acc + chi.scale(induced_pairings[j])
    identity = acc == ind_ext
    if not identity:
        raise InternalVerificationFailed("level identity failed")
    return PairingLevels(
        G, H, i, True, M, psi_ext, pairings, induced_pairings, levels, True, True,
    )


@dataclass(frozen=True)
class LevelIdentityReport:
    group: PermutationGroup
    level: int
    corrected_holds: bool
    literal_holds: bool


def level_identity(G: PermutationGroup, i: int) -> LevelIdentityReport:
    """Compare Ind_{G^i}^G(1) against sums over characters of level <= i.

    The identity with multiplicities, Ind_{G^i}^G(1) = sum of chi(1)*chi over
    l(chi) <= i, always holds (the multiplicity of chi is the multiplicity of
    the trivial character in chi restricted to G^i, which is chi(1) exactly
    when l(chi) <= i and 0 otherwise). The multiplicity-free variant without
    the chi(1) factors holds only when every character of level <= i is
    linear (always at i <= 1).
    """
    if not G.is_solvable:
        raise NotSolvable("levels require a solvable group")
    if i < 0:
        raise InputError("the level index must be non-negative")
    Gi = G.derived_term(i)
    ind = induce(ClassFunction.trivial(Gi), G)
    table = character_table(G)
    corrected = ClassFunction(G, [0] * len(G.classes))
    literal = ClassFunction(G, [0] * len(G.classes))
    for chi in table.irreducibles:
        if level(chi) <= i:
            corrected = corrected + chi.scale(int(chi.degree.to_fraction()))
            literal = literal + chi
    return LevelIdentityReport(G, i, ind == corrected, ind == literal)


# -- M-groups --------------------------------------------------------------------


@dataclass(frozen=True)
class MGroupReport:
    group: PermutationGroup
    is_m_group: bool
    witnesses: tuple
    failures: tuple[int, ...]


def is_m_group(G: PermutationGroup, max_order: int | None = None) -> MGroupReport:
    """Search, for each irreducible, a subgroup and linear character inducing it."""
    table = character_table(G)
    subs = G.subgroups(max_order)
    lin_cache: dict = {}
    witnesses = []
    failures = []
    for idx, chi in enumerate(table.irreducibles):
        d = int(chi.degree.to_fraction())
        found = None
        for H in subs:
            if H.order * d != G.order:
                continue
            if H not in lin_cache:
                lin_cache[H] = linear_characters(H)
            for phi in lin_cache[H]:
                if induce(phi, G) == chi:
                    found = (idx, H, phi)
                    break
            if found:
                break
        if found:
            witnesses.append(found)
        else:
            failures.append(idx)
    return MGroupReport(G, not failures, tuple(witnesses), tuple(failures))


# -- the monomial cone ------------------------------------------------------------


@dataclass(frozen=True)
class FamilyMember:
    function: ClassFunction
    subgroup: PermutationGroup
    character: ClassFunction


def monomial_family(
    G: PermutationGroup,
    max_order: int | None = None,
    cyclic_only: bool = False,
) -> tuple[FamilyMember, ...]:
    """All distinct Ind_H^G(phi) with phi linear, H over the subgroup list."""
    subs = G.cyclic_subgroups if cyclic_only else G.subgroups(max_order)
    members: list[FamilyMember] = []
    for H in subs:
        for phi in linear_characters(H):
            f = induce(phi, G)
            if all(m.function != f for m in members):
                members.append(FamilyMember(f, H, phi))
    return tuple(members)


@dataclass(frozen=True)
class ConeResult:
    member: bool
    combination: tuple | None
    refutation_index: int | None
    refutation_product: Fraction | None
    family: tuple[FamilyMember, ...]


def cone_membership(
    psi: VirtualCharacter | ClassFunction,
    table: CharacterTable | None = None,
    family: tuple[FamilyMember, ...] | None = None,
    max_order: int | None = None,
) -> ConeResult:
    """Decide membership of psi in the cone spanned by the monomial family.

    Returns either an exact non-negative rational combination reproducing psi
    or a family member with (psi, f) < 0. The two outcomes are mutually
    exclusive for this family, so reaching neither is an internal error.
    """
    if isinstance(psi, ClassFunction):
        if table is None:
            table = character_table(psi.group)
        psi = decompose(psi, table)
    table = psi.table
    G = table.group
    if family is None:
        family = monomial_family(G, max_order)
    if not family:
        raise EmptyFamily("the monomial family must be nonempty")
    k = len(table.irreducibles)
    cols = []
    for mem in family:
        vc = decompose(mem.function, table)
        col = [Fraction(vc.coeffs.get(t, 0)) for t in range(k)]
        if any(c < 0 or c.denominator != 1 for c in col):
            raise InternalVerificationFailed(
                "family member is not a character"
            )
        cols.append(col)
    tgt = [Fraction(psi.coeffs.get(t, 0)) for t in range(k)]
    x = solve_nonnegative(cols, tgt)
    if x is not None:
        combo = tuple((j, x[j]) for j in range(len(x)) if x[j] != 0)
        acc = ClassFunction(G, [0] * len(G.classes))
        for j, c in combo:
            acc = acc + family[j].function.scale(c)
        if acc != psi.to_class_function():
            raise InternalVerificationFailed("membership certificate failed recheck")
        return ConeResult(True, combo, None, None, family)
    for j, col in enumerate(cols):
        prod = sum((a * b for a, b in zip(tgt, col)), Fraction(0))
        if prod < 0:
            return ConeResult(False, None, j, prod, family)
    raise InternalVerificationFailed(
        "infeasible cone membership without a separating family member"
    )


def brauer_witness_search(
    G: PermutationGroup, bound: int = 3
) -> tuple | None:
    """Integer coefficients n with |n| <= bound writing 1_G as a combination
    of characters induced from linear characters of cyclic subgroups."""
    table = character_table(G)
    family = monomial_family(G, cyclic_only=True)
    k = len(table.irreducibles)
    cols = []
    for mem in family:
        vc = decompose(mem.function, table)
        cols.append([_as_int(vc.coeffs.get(t, 0)) for t in range(k)])
    target = [0] * k
    target[table.trivial_index] = 1
    n = len(cols)
    # max absolute contribution of columns j.. to each coordinate
    maxrest = [[0] * k for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        for t in range(k):
            maxrest[j][t] = maxrest[j + 1][t] + bound * abs(cols[j][t])
    coeffs = [0] * n
    order = [0]
    for v in range(1, bound + 1):
        order.extend((v, -v))

    def dfs(j: int, remaining: list[int]):
        if all(r == 0 for r in remaining):
            return tuple((idx, c) for idx, c in enumerate(coeffs[:j]) if c)
        if j == n:
            return None
        if any(abs(r) > maxrest[j][t] for t, r in enumerate(remaining)):
            return None
        for c in order:
            coeffs[j] = c
            nxt = [r - c * cols[j][t] for t, r in enumerate(remaining)]
            hit = dfs(j + 1, nxt)
            if hit is not None:
                return hit
        coeffs[j] = 0
        return None

    hit = dfs(0, target)
    if hit is None:
        return None
    # re-verify
    acc = ClassFunction(G, [0] * len(G.classes))
    for idx, c in hit:
        acc = acc + family[idx].function.scale(c)
    if acc != ClassFunction.trivial(G):
        raise InternalVerificationFailed("witness failed recheck")
    return tuple((family[idx], c) for idx, c in hit)
