"""Integer order assignments on irreducibles and their induced inequalities.

An assignment fixes an integer n(G,chi) for every irreducible and extends to
all subgroup characters by n(H,phi) = sum_chi (Ind_H^G phi, chi) n(G,chi), so
additivity and induction invariance hold by construction. Admissibility flags
record non-negativity on cyclic subgroups (weak) or on all subgroups against
linear characters (the stronger arithmetic condition). The module evaluates
the square-sum gap bound, the truncated and level variants, the restriction
compatibility of the associated virtual characters, the split into faithful,
negative and non-faithful parts, and exhaustive bounded searches.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .chartab import CharacterTable, character_table, linear_characters
from .classfun import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inner_product,
    is_faithful,
    is_linear,
    level,
    restrict,
)
from .errors import (
    InputError,
    InternalVerificationFailed,
    NotLinear,
    NotSolvable,
    SchemaError,
    SearchSpaceTooLarge,
    VerificationFailed,
)
from .groups import PermutationGroup

SEARCH_GUARD = 10**7
WITNESS_CAP = 16


def _as_int(x) -> int:
    if hasattr(x, "to_fraction"):
        if not x.is_rational:
            raise InternalVerificationFailed("expected a rational value")
        x = x.to_fraction()
    f = Fraction(x)
    if f.denominator != 1:
        raise InternalVerificationFailed("expected an integer value")
    return int(f)


@dataclass(frozen=True)
class PairVectors:
    """Precomputed constituent vectors c[(H,phi)][chi] = (Ind phi, chi)."""

    weak: tuple[tuple[int, ...], ...]
    arithmetic: tuple[tuple[int, ...], ...]
    perm_vectors: tuple[tuple[int, ...], ...]
    subgroup_orders: tuple[int, ...]


_PAIR_CACHE: dict = {}


def _pair_vectors(table: CharacterTable, max_order: int | None = None) -> PairVectors:
    G = table.group
    key = (G.degree, G.elements, max_order)
    hit = _PAIR_CACHE.get(key)
    if hit is not None:
        return hit
    weak = []
    for H in G.cyclic_subgroups:
        for phi in character_table(H).irreducibles:
            ind = induce(phi, G)
            weak.append(
                tuple(_as_int(inner_product(ind, chi)) for chi in table.irreducibles)
            )
    arith = []
    perm = []
    orders = []
    for H in G.subgroups(max_order):
        for phi in linear_characters(H):
            ind = induce(phi, G)
            arith.append(
                tuple(_as_int(inner_product(ind, chi)) for chi in table.irreducibles)
            )
        ind1 = induce(ClassFunction.trivial(H), G)
        perm.append(
            tuple(_as_int(inner_product(ind1, chi)) for chi in table.irreducibles)
        )
        orders.append(H.order)
    out = PairVectors(tuple(weak), tuple(arith), tuple(perm), tuple(orders))
    _PAIR_CACHE[key] = out
    return out


@dataclass(frozen=True)
class OrderAssignment:
    table: CharacterTable
    base: tuple[int, ...]
    label: str
    mode: str
    weak_admissible: bool
    arithmetic_admissible: bool

    @property
    def group(self) -> PermutationGroup:
        return self.table.group

    def n_index(self, idx: int) -> int:
        return self.base[idx]

    def n(self, H: PermutationGroup, phi: ClassFunction) -> Fraction:
        """n(H, phi) by the induction extension; rational for class functions."""
        self.group.require_subgroup(H)
        ind = induce(phi, self.group)
        vc = decompose(ind, self.table)
        return sum(
            (c * self.base[i] for i, c in vc.coeffs.items()), Fraction(0)
        )

    @property
    def n_regular(self) -> int:
        return sum(
            d * b for d, b in zip(self.table.degrees, self.base)
        )

    def to_json(self) -> dict:
        return {
            "group": self.group.name or "",
            "label": self.label,
            "mode": self.mode,
            "base": {str(i): b for i, b in enumerate(self.base)},
        }


def make_assignment(
    table: CharacterTable,
    base,
    mode: str = "weak",
    label: str = "s0",
    max_order: int | None = None,
) -> OrderAssignment:
    """Build an assignment and compute both admissibility flags exhaustively."""
    if mode not in ("weak", "arithmetic"):
        raise InputError(f"unknown mode {mode!r}")
    k = len(table.irreducibles)
    if isinstance(base, dict):
        vec = [0] * k
        for key, val in base.items():
            i = int(key)
            if not 0 <= i < k:
                raise SchemaError(f"irreducible index {i} out of range")
            vec[i] = int(val)
        base = vec
    base = tuple(int(b) for b in base)
    if len(base) != k:
        raise InputError("base must cover every irreducible")
    pv = _pair_vectors(table, max_order)
    weak = all(
        sum(c * b for c, b in zip(vec, base)) >= 0 for vec in pv.weak
    )
    arith = all(
        sum(c * b for c, b in zip(vec, base)) >= 0 for vec in pv.arithmetic
    )
    return OrderAssignment(table, base, label, mode, weak, arith)


def assignment_from_json(obj, table: CharacterTable) -> OrderAssignment:
    if not isinstance(obj, dict) or "base" not in obj:
        raise SchemaError("assignment payload must have 'base'")
    mode = obj.get("mode", "weak")
    label = obj.get("label", "s0")
    return make_assignment(table, obj["base"], mode, label)


@dataclass(frozen=True)
class HeilbronnCharacter:
    subgroup: PermutationGroup
    virtual: VirtualCharacter

    @property
    def theta(self) -> ClassFunction:
        return self.virtual.to_class_function()


def heilbronn_character(
    assignment: OrderAssignment, H: PermutationGroup
) -> HeilbronnCharacter:
    """Theta_H = sum over Irr(H) of n(H,phi) * phi."""
    G = assignment.group
    G.require_subgroup(H)
    tab_h = character_table(H)
    coeffs = {}
    for i, phi in enumerate(tab_h.irreducibles):
        val = assignment.n(H, phi)
        if val:
            coeffs[i] = val
    return HeilbronnCharacter(H, VirtualCharacter(tab_h, coeffs))


@dataclass(frozen=True)
class StarkRestrictionReport:
    checked: int
    failures: tuple
    holds: bool


def check_stark_restriction(
    assignment: OrderAssignment, max_order: int | None = None
) -> StarkRestrictionReport:
    """restrict(Theta_G, H) = Theta_H for every required subgroup.

    Arithmetic mode checks every subgroup, weak mode the cyclic ones. This is
    a theorem for every assignment, so any failure is an implementation bug.
    """
    G = assignment.group
    theta_g = heilbronn_character(assignment, G).theta
    subs = (
        G.subgroups(max_order)
        if assignment.mode == "arithmetic"
        else G.cyclic_subgroups
    )
    failures = []
    for H in subs:
        if restrict(theta_g, H) != heilbronn_character(assignment, H).theta:
            failures.append(H)
    return StarkRestrictionReport(len(subs), tuple(failures), not failures)


@dataclass(frozen=True)
class InequalityReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    precondition_ok: bool


def foote_murty_gap(assignment: OrderAssignment) -> InequalityReport:
    """sum n(G,chi)^2 <= n(G,Reg)^2; guaranteed under weak admissibility."""
    lhs = Fraction(sum(b * b for b in assignment.base))
    rhs = Fraction(assignment.n_regular**2)
    return InequalityReport(lhs, rhs, lhs <= rhs, assignment.weak_admissible)


@dataclass(frozen=True)
class StarkLemmaReport:
    applicable: bool
    n_regular: int
    all_nonnegative: bool | None
    concentrated_on_linear: bool | None
    holds: bool


def stark_lemma_check(assignment: OrderAssignment) -> StarkLemmaReport:
    """If n(G,Reg) <= 1 under weak admissibility, every n(G,chi) >= 0, and
    n(G,Reg) = 1 forces a single nonzero coefficient 1 on a linear character."""
    nreg = assignment.n_regular
    if not assignment.weak_admissible or nreg > 1:
        return StarkLemmaReport(False, nreg, None, None, True)
    nonneg = all(b >= 0 for b in assignment.base)
    concentrated = True
    if nreg == 1:
        support = [i for i, b in enumerate(assignment.base) if b]
        concentrated = (
            len(support) == 1
            and assignment.base[support[0]] == 1
            and assignment.table.degrees[support[0]] == 1
        )
    return StarkLemmaReport(
        True, nreg, nonneg, concentrated, nonneg and concentrated
    )


def truncated_inequality(
    assignment: OrderAssignment, chi0: ClassFunction
) -> InequalityReport:
    """sum over chi != chi0 of n^2 <= (n(G,Reg) - n(G,chi0))^2.

    Guaranteed for arithmetic-admissible assignments on solvable groups with
    chi0 linear; evaluated regardless, with precondition_ok reporting status.
    """
    G = assignment.group
    table = assignment.table
    if not G.is_solvable:
        raise NotSolvable("the truncated bound requires a solvable group")
    if not is_linear(chi0) or chi0.group != G:
        raise NotLinear("chi0 must be a degree-1 character of the group")
    idx0 = table.index_of(chi0)
    if idx0 is None:
        raise NotLinear("chi0 must be an irreducible of the table")
    lhs = Fraction(
        sum(b * b for i, b in enumerate(assignment.base) if i != idx0)
    )
    rhs = Fraction((assignment.n_regular - assignment.base[idx0]) ** 2)
    return InequalityReport(lhs, rhs, lhs <= rhs, assignment.arithmetic_admissible)


def _level_data(table: CharacterTable) -> tuple[int, ...]:
    return tuple(level(chi) for chi in table.irreducibles)


def _n_derived_term(assignment: OrderAssignment, i: int, levels) -> int:
    """n(G, Ind_{G^i}^G 1) = sum over l(chi) <= i of chi(1) n(G,chi)."""
    return sum(
        d * b
        for d, b, l in zip(assignment.table.degrees, assignment.base, levels)
        if l <= i
    )


def level_inequality(assignment: OrderAssignment, i: int) -> InequalityReport:
    """sum over l(chi) = i of n^2 <= (n(Ind_{G^i}1) - n(Ind_{G^{i-1}}1))^2."""
    G = assignment.group
    if not G.is_solvable:
        raise NotSolvable("levels require a solvable group")
    if i < 1:
        raise InputError("the level index must be at least 1")
    levels = _level_data(assignment.table)
    lhs = Fraction(
        sum(b * b for b, l in zip(assignment.base, levels) if l == i)
    )
    ai = _n_derived_term(assignment, i, levels)
    aim1 = _n_derived_term(assignment, i - 1, levels)
    rhs = Fraction((ai - aim1) ** 2)
    return InequalityReport(lhs, rhs, lhs <= rhs, assignment.arithmetic_admissible)


def uvdw_gap(assignment: OrderAssignment, H: PermutationGroup) -> int:
    """n(G, Ind_H^G 1) - n(G, 1_G); non-negative under arithmetic
    admissibility on solvable groups."""
    G = assignment.group
    G.require_subgroup(H)
    n_ind = assignment.n(H, ClassFunction.trivial(H))
    n_triv = assignment.base[assignment.table.trivial_index]
    return _as_int(n_ind - n_triv)


@dataclass(frozen=True)
class GapNotOneReport:
    level: int
    gap: int
    holds: bool
    precondition_ok: bool


def gap_not_one_check(assignment: OrderAssignment, i: int) -> GapNotOneReport:
    """n(G,Reg) - n(G, Ind_{G^i}^G 1) is never 1 for admissible solvable data."""
    G = assignment.group
    if not G.is_solvable:
        raise NotSolvable("levels require a solvable group")
    if i < 1:
        raise InputError("the level index must be at least 1")
    levels = _level_data(assignment.table)
    gap = assignment.n_regular - _n_derived_term(assignment, i, levels)
    return GapNotOneReport(i, gap, gap != 1, assignment.arithmetic_admissible)


@dataclass(frozen=True)
class ThetaSplitReport:
    theta1: VirtualCharacter
    theta2: VirtualCharacter
    theta3: VirtualCharacter
    reconstruction_ok: bool
    every_negative_faithful: bool
    every_negative_not_induced: bool
    split_orthogonal: bool
    overlap: tuple[int, ...]


def _is_induced_from_proper(chi: ClassFunction, G: PermutationGroup,
                            max_order: int | None = None) -> bool:
    d = _as_int(chi.degree)
    for H in G.subgroups(max_order):
        if H.order == G.order:
            continue
        index = G.order // H.order
        if d % index:
            continue
        for phi in character_table(H).irreducibles:
            if _as_int(phi.degree) * index != d:
                continue
            if induce(phi, G) == chi:
                return True
    return False


def theta_split(
    assignment: OrderAssignment, max_order: int | None = None
) -> ThetaSplitReport:
    """Split Theta into faithful, negative and non-faithful parts.

    theta3 collects n*chi over non-faithful chi, theta2 the negated negative
    terms, theta1 the remainder, so Theta = theta1 - theta2 + theta3. A term
    that is both negative and non-faithful lands in both parts; the overlap
    is reported.
    """
    table = assignment.table
    t1, t2, t3 = {}, {}, {}
    overlap = []
    faithful = [is_faithful(chi) for chi in table.irreducibles]
    for i, b in enumerate(assignment.base):
        if not b:
            continue
        if not faithful[i]:
            t3[i] = Fraction(b)
        if b < 0:
            t2[i] = Fraction(-b)
        if b < 0 and not faithful[i]:
            overlap.append(i)
        resid = b - (t3.get(i, 0)) + (t2.get(i, 0))
        if resid:
            t1[i] = Fraction(resid)
    theta1 = VirtualCharacter(table, t1)
    theta2 = VirtualCharacter(table, t2)
    theta3 = VirtualCharacter(table, t3)
    recon = all(
        t1.get(i, Fraction(0)) - t2.get(i, Fraction(0)) + t3.get(i, Fraction(0))
        == assignment.base[i]
        for i in range(len(assignment.base))
    )
    negatives = [i for i, b in enumerate(assignment.base) if b < 0]
    neg_faithful = all(faithful[i] for i in negatives)
    neg_not_induced = all(
        not _is_induced_from_proper(table.irreducibles[i], assignment.group,
                                    max_order)
        for i in negatives
    )
    ortho = sum(
        t2.get(i, Fraction(0)) * t3.get(i, Fraction(0))
        for i in range(len(assignment.base))
    ) == 0
    return ThetaSplitReport(
        theta1, theta2, theta3, recon, neg_faithful, neg_not_induced,
        ortho, tuple(overlap),
    )


# -- exhaustive bounded search ----------------------------------------------------


@dataclass(frozen=True)
class SearchReport:
    bound: int
    mode: str
    candidates: int
    admissible: int
    violations: int
    violation_witnesses: tuple
    equality_witnesses: tuple
    checks: tuple[str, ...]


def _decode(index: int, k: int, width: int, bound: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        digits.append(index % width - bound)
        index //= width
    return tuple(reversed(digits))


def _search_chunk(args):
    (start, end, k, width, bound, weak_vecs, arith_vecs, perm_vecs,
     degrees, levels, trivial_index, linear_indices, dl, mode) = args
    admissible = 0
    violations = []
    equalities = []
    for idx in range(start, end):
        base = _decode(idx, k, width, bound)
        if mode == "weak":
            if any(
                sum(c * b for c, b in zip(vec, base)) < 0 for vec in weak_vecs
            ):
                continue
            admissible += 1
            nreg = sum(d * b for d, b in zip(degrees, base))
            lhs = sum(b * b for b in base)
            if lhs > nreg * nreg:
                violations.append((idx, "square-sum-gap", base))
            elif lhs == nreg * nreg and len(equalities) < WITNESS_CAP:
                equalities.append((idx, "square-sum-gap", base))
            if nreg <= 1:
                if any(b < 0 for b in base):
                    violations.append((idx, "small-gap-nonnegativity", base))
                if nreg == 1:
                    support = [i for i, b in enumerate(base) if b]
                    ok = (
                        len(support) == 1
                        and base[support[0]] == 1
                        and degrees[support[0]] == 1
                    )
                    if not ok:
                        violations.append((idx, "small-gap-concentration", base))
        else:
            if any(
                sum(c * b for c, b in zip(vec, base)) < 0 for vec in arith_vecs
            ):
                continue
            admissible += 1
            nreg = sum(d * b for d, b in zip(degrees, base))
            for i0 in linear_indices:
                lhs = sum(b * b for t, b in enumerate(base) if t != i0)
                rhs = (nreg - base[i0]) ** 2
                if lhs > rhs:
                    violations.append((idx, "truncated", base))
                    break
                if lhs == rhs and len(equalities) < WITNESS_CAP:
                    equalities.append((idx, "truncated", base))
            for vec in perm_vecs:
                nind = sum(c * b for c, b in zip(vec, base))
                if nind - base[trivial_index] < 0:
                    violations.append((idx, "induced-minus-trivial", base))
                    break
            for i in range(1, dl + 1):
                ai = sum(
                    d * b for d, b, l in zip(degrees, base, levels) if l <= i
                )
                aim1 = sum(
                    d * b for d, b, l in zip(degrees, base, levels) if l <= i - 1
                )
                lhs = sum(b * b for b, l in zip(base, levels) if l == i)
                if lhs > (ai - aim1) ** 2:
                    violations.append((idx, "level-square-sum", base))
                    break
                if nreg - ai == 1:
                    violations.append((idx, "gap-equals-one", base))
                    break
    return admissible, violations, equalities


def search_admissible(
    table: CharacterTable,
    bound: int,
    mode: str = "weak",
    jobs: int = 1,
    max_order: int | None = None,
) -> SearchReport:
    """Enumerate all |n| <= bound assignments, filter by the mode's
    admissibility flag, and evaluate every implemented inequality."""
    if mode not in ("weak", "arithmetic"):
        raise InputError(f"unknown mode {mode!r}")
    G = table.group
    k = len(table.irreducibles)
    width = 2 * bound + 1
    total = width**k
    if total > SEARCH_GUARD:
        raise SearchSpaceTooLarge(
            f"{total} candidates exceed the {SEARCH_GUARD} guard"
        )
    if mode == "arithmetic" and not G.is_solvable:
        raise NotSolvable("arithmetic-mode search requires a solvable group")
    pv = _pair_vectors(table, max_order)
    levels = _level_data(table) if G.is_solvable else tuple([0] * k)
    dl = G.derived_length or 0
    args_common = (
        k, width, bound, pv.weak, pv.arithmetic, pv.perm_vectors,
        table.degrees, levels, table.trivial_index, table.linear_indices,
        dl, mode,
    )
    checks = (
        ("square-sum-gap", "small-gap-nonnegativity", "small-gap-concentration")
        if mode == "weak"
        else ("truncated", "induced-minus-trivial", "level-square-sum",
              "gap-equals-one")
    )
    if jobs <= 1:
        admissible, violations, equalities = _search_chunk(
            (0, total) + args_common
        )
    else:
        chunk = math.ceil(total / jobs)
        ranges = [
            (s, min(s + chunk, total)) + args_common
            for s in range(0, total, chunk)
        ]
        admissible = 0
        violations = []
        equalities = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for adm, vio, eq in pool.map(_search_chunk, ranges):
                admissible += adm
                violations.extend(vio)
                for e in eq:
                    if len(equalities) < WITNESS_CAP:
                        equalities.append(e)
    return SearchReport(
        bound, mode, total, admissible, len(violations),
        tuple(violations), tuple(equalities), checks,
    )


# -- structural predicates --------------------------------------------------------


def has_abelian_normal_sylow(
    G: PermutationGroup, q: int, max_order: int | None = None
) -> bool:
    """True when the Sylow q-subgroup is normal and abelian."""
    if q < 2 or any(q % d == 0 for d in range(2, q)):
        raise InputError(f"{q} is not prime")
    power = 1
    order = G.order
    while order % q == 0:
        order //= q
        power *= q
    if power == 1:
        return False
    for H in G.subgroups(max_order):
        if H.order == power:
            return G.is_normal(H) and H.is_abelian
    raise InternalVerificationFailed("Sylow subgroup missing from enumeration")


def is_supersolvable(G: PermutationGroup) -> bool:
    """Chief factors all of prime order, found greedily through quotients."""
    Q = G
    while Q.order > 1:
        step = None
        for N in Q.minimal_normal_subgroups:
            if any(N.order % d == 0 for d in range(2, N.order)):
                continue
            step = N
            break
        if step is None:
            return False
        Q = Q.quotient(step).quotient
    return True
