"""Formal L-symbol bookkeeping and holomorphy certificates.

A symbol is a formal product of per-irreducible factors with integer
exponents; multiplication adds exponents, so symbols form a free abelian
group on the irreducibles. A certificate pairs a symbol with an exact
monomial decomposition of the matching virtual character: when every
induction coefficient is non-negative and the trivial character is absent,
the corresponding quotient of formal products is declared entire; a
non-negative trivial coefficient relaxes that to entire-away-from-one.
No analytic object is ever evaluated; everything is character arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chartab import CharacterTable, character_table
from .classfun import (
    ClassFunction,
    decompose,
    induce,
    inner_product,
    is_linear,
    restrict,
    twist,
)
from .errors import (
    InputError,
    InternalVerificationFailed,
    NotLinear,
    NotSolvable,
    SchemaError,
    VerificationFailed,
)
from .groups import PermutationGroup
from .monomial import (
    MonomialDecomposition,
    MonomialTerm,
    decompose_uvdw,
    decompose_uvdw_level,
    decomposition_from_json,
    pairing_levels,
    twist_certificate,
)

STATUS_ENTIRE = "entire"
STATUS_EXCEPT_ONE = "holomorphic-except-s1"


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
class FormalLSymbol:
    """Exponent vector over the irreducibles of a fixed table."""

    table: CharacterTable
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.table.irreducibles):
            raise InputError("symbol must cover every irreducible")

    @property
    def group(self) -> PermutationGroup:
        return self.table.group

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def __mul__(self, other: "FormalLSymbol") -> "FormalLSymbol":
        if self.table is not other.table and self.table != other.table:
            raise InputError("symbols live over different tables")
        return FormalLSymbol(
            self.table,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def inverse(self) -> "FormalLSymbol":
        return FormalLSymbol(self.table, tuple(-e for e in self.exponents))

    def class_function(self) -> ClassFunction:
        G = self.group
        acc = ClassFunction(G, [0] * len(G.classes))
        for i, e in enumerate(self.exponents):
            if e:
                acc = acc + self.table.irreducibles[i].scale(e)
        return acc

    def to_json(self) -> dict:
        return {str(i): self.exponents[i] for i in self.support}


def identity_symbol(table: CharacterTable) -> FormalLSymbol:
    return FormalLSymbol(table, (0,) * len(table.irreducibles))


def symbol_from_class_function(
    table: CharacterTable, f: ClassFunction
) -> FormalLSymbol:
    """Exponents of a virtual character; requires integer coefficients."""
    vc = decompose(f, table)
    exps = [0] * len(table.irreducibles)
    for i, c in vc.coeffs.items():
        exps[i] = _as_int(c)
    return FormalLSymbol(table, tuple(exps))


def symbol_from_json(obj, table: CharacterTable) -> FormalLSymbol:
    if not isinstance(obj, dict):
        raise SchemaError("symbol payload must be an object")
    exps = [0] * len(table.irreducibles)
    for key, val in obj.items():
        try:
            i = int(key)
            exps[i] = int(val)
        except (ValueError, IndexError):
            raise SchemaError(f"bad symbol entry {key!r}") from None
    return FormalLSymbol(table, tuple(exps))


def artin_takagi(table: CharacterTable) -> FormalLSymbol:
    """The full-extension zeta symbol: exponent chi(1) on every chi."""
    return FormalLSymbol(table, table.degrees)


def dedekind_symbol(table: CharacterTable, H: PermutationGroup) -> FormalLSymbol:
    """Zeta symbol of the fixed field of H: decomposition of Ind_H^G 1."""
    G = table.group
    G.require_subgroup(H)
    return symbol_from_class_function(table, induce(ClassFunction.trivial(H), G))


@dataclass(frozen=True)
class HolomorphyCertificate:
    symbol: FormalLSymbol
    decomposition: MonomialDecomposition
    status: str

    def verify(self, internal: bool = True) -> None:
        err = InternalVerificationFailed if internal else VerificationFailed
        if self.status not in (STATUS_ENTIRE, STATUS_EXCEPT_ONE):
            raise err(f"unknown certificate status {self.status!r}")
        self.decomposition.verify(internal)
        if self.symbol.class_function() != self.decomposition.target:
            raise err("symbol does not match the decomposition target")
        for t in self.decomposition.terms:
            c = Fraction(t.coefficient)
            if c <= 0 or c.denominator != 1:
                raise err("certificate coefficients must be positive integers")
        resid = Fraction(self.decomposition.residual_trivial_coeff)
        if resid < 0 or resid.denominator != 1:
            raise err("trivial-character coefficient must be a non-negative integer")
        if self.status == STATUS_ENTIRE:
            if resid != 0:
                raise err("entire status requires a zero trivial coefficient")
            triv = ClassFunction.trivial(self.decomposition.group)
            if not inner_product(self.decomposition.target, triv).is_zero:
                raise err("entire status requires no trivial constituent")

    def to_json(self) -> dict:
        out = self.decomposition.to_json()
        out["status"] = self.status
        out["symbol"] = self.symbol.to_json()
        return out


def certificate_from_json(obj) -> HolomorphyCertificate:
    if not isinstance(obj, dict) or "status" not in obj or "symbol" not in obj:
        raise SchemaError("certificate payload must have 'status' and 'symbol'")
    dec = decomposition_from_json(obj)
    table = character_table(dec.group)
    cert = HolomorphyCertificate(
        symbol_from_json(obj["symbol"], table), dec, str(obj["status"])
    )
    cert.verify(internal=False)
    return cert


def certify_quotient_uvdw(
    G: PermutationGroup, H: PermutationGroup
) -> HolomorphyCertificate:
    """Certificate that the fixed-field zeta quotient attached to H <= G is
    entire: Ind_H^G 1 - 1_G equals a non-negative sum of induced linears."""
    table = character_table(G)
    dec = decompose_uvdw(G, H)
    target = dec.target - ClassFunction.trivial(G)
    out = MonomialDecomposition(G, target, Fraction(0), dec.terms)
    cert = HolomorphyCertificate(
        symbol_from_class_function(table, target), out, STATUS_ENTIRE
    )
    cert.verify()
    return cert


def certify_takagi(G: PermutationGroup) -> HolomorphyCertificate:
    """Certificate for the full-extension zeta symbol: Reg decomposes with
    trivial coefficient one, so the status allows the single exceptional
    point."""
    table = character_table(G)
    dec = decompose_uvdw(G, G.trivial_subgroup)
    cert = HolomorphyCertificate(artin_takagi(table), dec, STATUS_EXCEPT_ONE)
    cert.verify()
    return cert


def _linear_extensions(
    table: CharacterTable, H: PermutationGroup, psi: ClassFunction
) -> tuple[int, ...]:
    """Indices of degree-1 characters of G restricting to psi on H."""
    return tuple(
        i
        for i in table.linear_indices
        if restrict(table.irreducibles[i], H) == psi
    )


def certify_rr2(
    G: PermutationGroup, H: PermutationGroup, psi: ClassFunction
) -> HolomorphyCertificate:
    """Certificate that Ind_H^G psi minus the sum of the degree-1 characters
    of G restricting to psi is a non-negative monomial combination.

    When at least one such character chi0 exists, the depth-1 relative
    decomposition of Ind_H^G 1 is twisted by chi0; its leading term then
    induces exactly the sum over all of them, and that count must equal the
    index of H*G' in G. When none exists the induction itself is certified.
    """
    table = character_table(G)
    G.require_subgroup(H)
    if not G.is_solvable:
        raise NotSolvable("the certificate construction requires solvability")
    if psi.group != H:
        raise InputError("psi must live on the subgroup")
    if not is_linear(psi):
        raise NotLinear("psi must be a degree-1 character")
    s_psi = _linear_extensions(table, H, psi)
    ind_psi = induce(psi, G)
    if not s_psi:
        target = ind_psi
        terms = (MonomialTerm(H, psi, Fraction(1)),)
        dec = MonomialDecomposition(G, target, Fraction(0), terms)
        cert = HolomorphyCertificate(
            symbol_from_class_function(table, target), dec, STATUS_ENTIRE
        )
        cert.verify()
        return cert
    chi0 = table.irreducibles[s_psi[0]]
    leveled = decompose_uvdw_level(G, H, 1)
    twisted = twist_certificate(leveled, chi0)
    base = twisted.terms[0]
    subtrahend = base.induced(G).scale(base.coefficient)
    expected = ClassFunction(G, [0] * len(G.classes))
    for i in s_psi:
        expected = expected + table.irreducibles[i]
    if subtrahend != expected:
        raise InternalVerificationFailed(
            "twisted leading term does not induce the extension sum"
        )
    M = base.subgroup
    if len(s_psi) * M.order != G.order:
        raise InternalVerificationFailed(
            "extension count differs from the index of H*G'"
        )
    target = ind_psi - expected
    dec = MonomialDecomposition(G, target, Fraction(0), twisted.terms[1:])
    cert = HolomorphyCertificate(
        symbol_from_class_function(table, target), dec, STATUS_ENTIRE
    )
    cert.verify()
    return cert


def certify_level(
    G: PermutationGroup, H: PermutationGroup, psi: ClassFunction, i: int
) -> HolomorphyCertificate:
    """Certificate that Ind_H^G psi minus its level <= i part is a
    non-negative monomial combination without the trivial character.

    If psi is trivial on the intersection with the i-th derived term, the
    low part equals the induction of the natural extension psi' to H*G^i
    and the difference is the twisted relative decomposition; otherwise the
    low part vanishes and the induction itself is certified.
    """
    table = character_table(G)
    rep = pairing_levels(G, H, psi, i)
    ind_psi = induce(psi, G)
    if not rep.trivial_on_intersection:
        target = ind_psi
        terms = (MonomialTerm(H, psi, Fraction(1)),)
    else:
        M = rep.extension_subgroup
        psi_ext = rep.extension
        low = induce(psi_ext, G)
        inner = decompose_uvdw(M, H)
        terms = tuple(
            MonomialTerm(
                t.subgroup,
                twist(t.character, restrict(psi_ext, t.subgroup)),
                t.coefficient,
            )
            for t in inner.terms
        )
        target = ind_psi - low
    dec = MonomialDecomposition(G, target, Fraction(0), terms)
    cert = HolomorphyCertificate(
        symbol_from_class_function(table, target), dec, STATUS_ENTIRE
    )
    cert.verify()
    return cert
