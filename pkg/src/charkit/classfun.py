"""Class functions: induction, restriction, inflation, twisting, levels.

A ClassFunction stores one exact cyclotomic value per conjugacy class of its
group, in the group's canonical class order. All operations are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import perms
from .cyclo import Cyclotomic, _format_fraction, _parse_fraction
from .errors import (
    GroupMismatch,
    IndexNotPrime,
    InputError,
    NotSolvable,
    NotSubgroup,
    SchemaError,
)
from .groups import PermutationGroup, Quotient


def _coerce_value(v) -> Cyclotomic:
    if isinstance(v, Cyclotomic):
        return v
    return Cyclotomic.from_rational(v)


class ClassFunction:
    """An exact class function on a permutation group."""

    __slots__ = ("group", "values")

    def __init__(self, group: PermutationGroup, values):
        values = tuple(_coerce_value(v) for v in values)
        if len(values) != len(group.classes):
            raise GroupMismatch(
                f"expected {len(group.classes)} class values, got {len(values)}"
            )
        self.group = group
        self.values = values

    @staticmethod
    def trivial(group: PermutationGroup) -> "ClassFunction":
        return ClassFunction(group, [1] * len(group.classes))

    @staticmethod
    def regular(group: PermutationGroup) -> "ClassFunction":
        """|G| at the identity, 0 elsewhere."""
        return ClassFunction(group, [group.order] + [0] * (len(group.classes) - 1))

    def value_at(self, g) -> Cyclotomic:
        return self.values[self.group.class_of(g)]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group == other.group and all(
            a == b for a, b in zip(self.values, other.values)
        )

    __hash__ = None

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return ClassFunction(
            self.group, [a + b for a, b in zip(self.values, other.values)]
        )

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return ClassFunction(
            self.group, [a - b for a, b in zip(self.values, other.values)]
        )

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, [-a for a in self.values])

    def scale(self, c) -> "ClassFunction":
        c = _coerce_value(c)
        return ClassFunction(self.group, [c * a for a in self.values])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values)

    def _same_group(self, other: "ClassFunction") -> None:
        if self.group != other.group:
            raise GroupMismatch("class functions live on different groups")

    def __repr__(self) -> str:
        vals = ", ".join(str(v.to_fraction()) if v.is_rational else repr(v)
                         for v in self.values)
        return f"ClassFunction[{vals}]"

    def to_json(self, order: int | None = None) -> dict:
        return {
            "group": self.group.name,
            "values": [v.to_json(order) for v in self.values],
        }

    @staticmethod
    def from_json(group: PermutationGroup, obj) -> "ClassFunction":
        if not isinstance(obj, dict) or "values" not in obj:
            raise SchemaError("class function payload must have 'values'")
        vals = [Cyclotomic.from_json(v) for v in obj["values"]]
        return ClassFunction(group, vals)


def inner_product(f1: ClassFunction, f2: ClassFunction) -> Cyclotomic:
    """(f1, f2) = (1/|G|) * sum_g f1(g) * conj(f2(g)), summed classwise."""
    f1._same_group(f2)
    G = f1.group
    total = Cyclotomic.zero()
    for c, a, b in zip(G.classes, f1.values, f2.values):
        total = total + (a * b.conjugate()) * c.size
    return total * Fraction(1, G.order)


def induce(f: ClassFunction, G: PermutationGroup) -> ClassFunction:
    """Induction to G of a class function on a subgroup H.

    Computed by the definition sum Ind f(x) = (1/|H|) sum_{g in G} f^(g^-1 x g)
    with the |G| terms grouped by the conjugacy class of g^-1 x g: each element
    of the class of x occurs exactly |G|/|class| times.
    """
    H = f.group
    G.require_subgroup(H)
    hset = H._index
    values = []
    for c in G.classes:
        acc = Cyclotomic.zero()
        for y in c.elements:
            if y in hset:
                acc = acc + f.value_at(y)
        scale = Fraction(G.order, c.size * H.order)
        values.append(acc * scale)
    return ClassFunction(G, values)


def induce_transversal(f: ClassFunction, G: PermutationGroup) -> ClassFunction:
    """Induction via a left-coset transversal (cross-check implementation)."""
    H = f.group
    G.require_subgroup(H)
    hset = H._index
    reps = []
    seen = set()
    for g in G.elements:
        if g in seen:
            continue
        coset = {perms.compose(g, h) for h in H.elements}
        seen |= coset
        reps.append(g)
    values = []
    for c in G.classes:
        x = c.rep
        acc = Cyclotomic.zero()
        for t in reps:
            y = perms.compose(perms.inverse(t), perms.compose(x, t))
            if y in hset:
                acc = acc + f.value_at(y)
        values.append(acc)
    return ClassFunction(G, values)


def restrict(f: ClassFunction, H: PermutationGroup) -> ClassFunction:
    f.group.require_subgroup(H)
    return ClassFunction(H, [f.value_at(c.rep) for c in H.classes])


def inflate(f: ClassFunction, q: Quotient) -> ClassFunction:
    """Pull back a class function on G/N along the projection G -> G/N."""
    if f.group != q.quotient:
        raise GroupMismatch("class function does not live on the quotient group")
    return ClassFunction(
        q.group, [f.value_at(q.project(c.rep)) for c in q.group.classes]
    )


def twist(f1: ClassFunction, f2: ClassFunction) -> ClassFunction:
    """Pointwise product (tensor product of the underlying representations)."""
    f1._same_group(f2)
    return ClassFunction(f1.group, [a * b for a, b in zip(f1.values, f2.values)])


def is_linear(f: ClassFunction) -> bool:
    return f.degree == 1


def level(chi: ClassFunction, series=None) -> int:
    """Least i with chi constant equal to chi(1) on the derived term G^i."""
    G = chi.group
    if series is None:
        if not G.is_solvable:
            raise NotSolvable("levels are defined along a terminating derived series")
        series = G.derived_series
    deg = chi.degree
    for i, term in enumerate(series):
        if all(chi.value_at(g) == deg for g in term.elements):
            return i
    raise NotSolvable("character is nontrivial on every term of the series")


def kernel(chi: ClassFunction) -> PermutationGroup:
    """Elements where chi takes the value chi(1); a normal subgroup for characters."""
    deg = chi.degree
    elems = [g for g in chi.group.elements if chi.value_at(g) == deg]
    return chi.group.subgroup_from_elements(elems)


def is_faithful(chi: ClassFunction) -> bool:
    return kernel(chi).is_trivial


@dataclass
class VirtualCharacter:
    """Integer/rational combination of the irreducible characters of a table."""

    table: "object"
    coeffs: dict[int, Fraction]

    def __post_init__(self):
        self.coeffs = {
            i: Fraction(c) for i, c in self.coeffs.items() if Fraction(c) != 0
        }

    def to_class_function(self) -> ClassFunction:
        G = self.table.group
        out = ClassFunction(G, [0] * len(G.classes))
        for i, c in self.coeffs.items():
            out = out + self.table.irreducibles[i].scale(c)
        return out

    def is_character(self) -> bool:
        return all(c.denominator == 1 and c > 0 for c in self.coeffs.values())

    def to_json(self) -> dict:
        return {
            "coeffs": {
                str(i): _format_fraction(c) for i, c in sorted(self.coeffs.items())
            }
        }

    @staticmethod
    def from_json(table, obj) -> "VirtualCharacter":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise SchemaError("virtual character payload must have 'coeffs'")
        coeffs = {}
        for k, v in obj["coeffs"].items():
            try:
                i = int(k)
            except ValueError:
                raise SchemaError(f"bad irreducible index {k!r}") from None
            if not 0 <= i < len(table.irreducibles):
                raise SchemaError(f"irreducible index {i} out of range")
            coeffs[i] = _parse_fraction(v)
        return VirtualCharacter(table, coeffs)


def decompose(f: ClassFunction, table) -> VirtualCharacter:
    """Coefficients of f over the table's irreducibles; exact reconstruction.

    f must lie in the rational span of the irreducibles (any difference of
    characters does); otherwise InputError.
    """
    if f.group != table.group:
        raise GroupMismatch("class function and table are for different groups")
    coeffs = {}
    for i, chi in enumerate(table.irreducibles):
        c = inner_product(f, chi)
        if not c.is_rational:
            raise InputError("class function is not a rational combination "
                             "of the irreducibles")
        if not c.is_zero:
            coeffs[i] = c.to_fraction()
    return VirtualCharacter(table, coeffs)


@dataclass
class CliffordReport:
    """Restriction of an irreducible to a prime-index normal subgroup."""

    irreducible: bool
    constituents: tuple[int, ...]
    multiplicities: tuple[int, ...]
    all_induce_back: bool
    holds: bool


def clifford_check(chi: ClassFunction, N: PermutationGroup) -> CliffordReport:
    """Check the prime-index dichotomy: chi|_N irreducible, or a sum of
    [G:N] distinct constituents with multiplicity one, each inducing chi."""
    from .chartab import character_table

    G = chi.group
    if not G.is_normal(N):
        raise IndexNotPrime("subgroup is not normal")
    p = G.order // N.order
    if not _is_prime(p):
        raise IndexNotPrime(f"index {p} is not prime")
    res = restrict(chi, N)
    tabN = character_table(N)
    dec = decompose(res, tabN)
    norm = inner_product(res, res).to_fraction()
    if norm == 1:
        return CliffordReport(True, tuple(dec.coeffs), (1,), True, True)
    consts = tuple(sorted(dec.coeffs))
    mults = tuple(int(dec.coeffs[i]) for i in consts)
    distinct = len(consts) == p and all(m == 1 for m in mults)
    induce_back = all(
        induce(tabN.irreducibles[i], G) == chi for i in consts
    )
    return CliffordReport(False, consts, mults, induce_back,
                          distinct and induce_back)


@dataclass
class MackeyReport:
    holds: bool
    double_coset_reps: tuple
    hk_equals_g: bool
    hk_case_holds: bool | None


def mackey_check(
    G: PermutationGroup,
    H: PermutationGroup,
    K: PermutationGroup,
    psi: ClassFunction,
) -> MackeyReport:
    """Restriction-of-induction against the double-coset sum.

    restrict(Ind_H^G psi, K) must equal
    sum over x in K\\G/H of Ind_{K ∩ xHx^-1}^K (psi^x), psi^x(g) = psi(x^-1 g x).
    When HK = G the single-coset form Ind_{H∩K}^K(psi|_{H∩K}) is also checked.
    """
    if psi.group != H:
        raise GroupMismatch("psi must live on H")
    G.require_subgroup(H)
    G.require_subgroup(K)
    lhs = restrict(induce(psi, G), K)
    rhs = ClassFunction(K, [0] * len(K.classes))
    reps = []
    for x, _elems in G.double_cosets(K, H):
        reps.append(x)
        xinv = perms.inverse(x)
        conj_h = {perms.compose(x, perms.compose(h, xinv)) for h in H.elements}
        M_elems = [k for k in K.elements if k in conj_h]
        M = K.subgroup_from_elements(M_elems)
        vals = [psi.value_at(perms.compose(xinv, perms.compose(c.rep, x)))
                for c in M.classes]
        rhs = rhs + induce(ClassFunction(M, vals), K)
    holds = lhs == rhs
    hk = {perms.compose(h, k) for h in H.elements for k in K.elements}
    hk_equals_g = len(hk) == G.order
    hk_case = None
    if hk_equals_g:
        HK = K.subgroup_from_elements(
            [g for g in K.elements if g in H._index]
        )
        hk_case = lhs == induce(restrict(psi, HK), K)
    return MackeyReport(holds, tuple(reps), hk_equals_g, hk_case)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
