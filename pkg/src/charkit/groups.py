"""Finite permutation groups.

Element enumeration, conjugacy classes, derived series, subgroup enumeration,
centers, quotients and double cosets. Elements are permutations represented as
tuples of 0-based images (see charkit.perms); every derived list (elements,
classes, subgroups, cosets) is deterministically ordered so that downstream
output is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from . import _kernels, perms
from .errors import (
    InvalidPermutation,
    NotNormal,
    NotSubgroup,
    OrderCapExceeded,
)
from .perms import Perm

# Hard cap on group order: closure aborts beyond this many elements.
MAX_GROUP_ORDER = 10000

# Default cap on |G| for exhaustive subgroup enumeration (overridable per call).
DEFAULT_SUBGROUP_CAP = 48


@dataclass(frozen=True)
class ConjugacyClass:
    rep: Perm
    elements: tuple[Perm, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


class PermutationGroup:
    """A finite permutation group given by generators.

    Instances are immutable; equality and hashing compare the full element set
    (with the degree), so conjugate-but-distinct subgroups are distinct and
    recomputed copies of the same subgroup are equal.
    """

    def __init__(self, degree: int, generators, name: str | None = None):
        if degree < 1:
            raise InvalidPermutation(f"degree must be positive, got {degree}")
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise InvalidPermutation(
                    f"{g!r} is not a permutation of 0..{degree - 1}"
                )
            gens.append(g)
        if not gens:
            gens = [perms.identity(degree)]
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.name = name

    @classmethod
    def from_generators(cls, degree: int, images, name: str | None = None):
        """Build from 1-based image lists (the JSON wire format)."""
        return cls(
            degree, [perms.from_images(list(im), degree) for im in images], name
        )

    @classmethod
    def from_elements(cls, degree: int, elements, name: str | None = None):
        """Build a group from an explicit element set (closure is re-derived)."""
        elems = sorted(set(elements))
        gens = _reduce_generators(degree, elems)
        group = cls(degree, gens, name)
        if list(group.elements) != elems:
            raise InvalidPermutation("element set is not closed under the product")
        return group

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        label = self.name or "PermutationGroup"
        return f"<{label} degree={self.degree} order={self.order}>"

    # -- elements and products ------------------------------------------------

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        try:
            return tuple(_kernels.closure(list(self.generators), MAX_GROUP_ORDER))
        except ValueError:
            raise OrderCapExceeded(
                f"group order exceeds the hard cap {MAX_GROUP_ORDER}"
            ) from None

    @cached_property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self) -> Perm:
        return perms.identity(self.degree)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def mul(self, a: Perm, b: Perm) -> Perm:
        return perms.compose(a, b)

    def inv(self, a: Perm) -> Perm:
        return perms.inverse(a)

    def conj(self, g: Perm, x: Perm) -> Perm:
        return perms.conjugate(g, x)

    def element_order(self, g: Perm) -> int:
        return perms.perm_order(g)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for c in self.classes:
            e = lcm(e, perms.perm_order(c.rep))
        return e

    # -- conjugacy classes ----------------------------------------------------

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        """Conjugacy classes: identity class first, then by (size, least member)."""
        raw = _kernels.conjugacy_partition(list(self.elements), list(self.generators))
        built = []
        for idxs in raw:
            elems = tuple(self.elements[i] for i in idxs)
            built.append(ConjugacyClass(rep=elems[0], elements=elems))
        ident = self.identity
        head = [c for c in built if c.rep == ident]
        tail = sorted(
            (c for c in built if c.rep != ident), key=lambda c: (c.size, c.rep)
        )
        return tuple(head + tail)

    @cached_property
    def class_index(self) -> dict[Perm, int]:
        out = {}
        for i, c in enumerate(self.classes):
            for g in c.elements:
                out[g] = i
        return out

    def class_of(self, g: Perm) -> int:
        return self.class_index[g]

    @cached_property
    def inverse_classes(self) -> tuple[int, ...]:
        """For each class index i, the index of the class of inverses."""
        return tuple(
            self.class_index[perms.inverse(c.rep)] for c in self.classes
        )

    def power_class(self, i: int, t: int) -> int:
        """Class index of (rep of class i) ** t."""
        rep = self.classes[i].rep
        q = self.identity
        for _ in range(t % perms.perm_order(rep)):
            q = perms.compose(q, rep)
        return self.class_index[q]

    @cached_property
    def is_abelian(self) -> bool:
        return all(c.size == 1 for c in self.classes)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(perms.perm_order(c.rep) == self.order for c in self.classes)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    # -- subgroups ------------------------------------------------------------

    def subgroup(self, generators, name: str | None = None) -> "PermutationGroup":
        """Subgroup generated by the given elements of this group."""
        gens = [tuple(g) for g in generators]
        for g in gens:
            if g not in self._index:
                raise NotSubgroup(f"{g!r} is not an element of the group")
        return PermutationGroup(self.degree, gens, name)

    def subgroup_from_elements(self, elements, name: str | None = None):
        H = PermutationGroup.from_elements(self.degree, elements, name)
        self.require_subgroup(H)
        return H

    def contains_subgroup(self, H: "PermutationGroup") -> bool:
        if H.degree != self.degree:
            return False
        mine = self._index
        return all(g in mine for g in H.generators)

    def require_subgroup(self, H: "PermutationGroup") -> None:
        if not self.contains_subgroup(H):
            raise NotSubgroup("not a subgroup of the ambient group")

    @cached_property
    def trivial_subgroup(self) -> "PermutationGroup":
        return self.subgroup([], name="1")

    def is_normal(self, H: "PermutationGroup") -> bool:
        self.require_subgroup(H)
        helems = H._index
        return all(
            perms.conjugate(g, h) in helems
            for g in self.generators
            for h in H.generators
        )

    @cached_property
    def center(self) -> "PermutationGroup":
        zs = [
            g
            for g in self.elements
            if all(perms.compose(g, h) == perms.compose(h, g) for h in self.generators)
        ]
        return self.subgroup_from_elements(zs, name="Z")

    def normal_closure(self, seed) -> "PermutationGroup":
        """Smallest normal subgroup of self containing the seed elements."""
        gens = sorted(set(tuple(g) for g in seed) - {self.identity})
        if not gens:
            return self.trivial_subgroup
        while True:
            elems = _kernels.closure(gens, self.order)
            extra = set()
            eset = set(elems)
            for g in self.generators:
                for x in elems:
                    y = perms.conjugate(g, x)
                    if y not in eset:
                        extra.add(y)
            if not extra:
                return self.subgroup(gens)
            gens = sorted(set(gens) | extra)

    @cached_property
    def minimal_normal_subgroups(self) -> tuple["PermutationGroup", ...]:
        """Minimal nontrivial normal subgroups, sorted by (order, elements)."""
        closures = {}
        for c in self.classes[1:]:
            N = self.normal_closure([c.rep])
            closures[N.elements] = N
        sets = {key: set(key) for key in closures}
        minimal = [
            N
            for key, N in closures.items()
            if not any(other != key and sets[other] < sets[key] for other in closures)
        ]
        return tuple(sorted(minimal, key=lambda N: (N.order, N.elements)))

    @cached_property
    def derived_subgroup(self) -> "PermutationGroup":
        comms = set()
        for a in self.generators:
            for b in self.generators:
                ab = perms.compose(a, b)
                ba = perms.compose(b, a)
                comms.add(perms.compose(perms.inverse(ba), ab))
        return self.normal_closure(comms)

    @cached_property
    def derived_series(self) -> tuple["PermutationGroup", ...]:
        """G = G^0 >= G^1 >= ...; stops at the first repeat or at the trivial group.

        For solvable groups the last entry is trivial; otherwise the series
        ends with the repeated perfect term.
        """
        series = [self]
        while True:
            nxt = series[-1].derived_subgroup
            series.append(nxt)
            if nxt.is_trivial or nxt == series[-2]:
                return tuple(series)

    @cached_property
    def is_solvable(self) -> bool:
        return self.derived_series[-1].is_trivial

    @cached_property
    def derived_length(self) -> int | None:
        """Least d with G^d trivial, or None when not solvable."""
        if not self.is_solvable:
            return None
        return len(self.derived_series) - 1

    def derived_term(self, i: int) -> "PermutationGroup":
        """G^i with the convention G^0 = G; beyond the series tail stays put."""
        series = self.derived_series
        return series[min(i, len(series) - 1)]

    @cached_property
    def cyclic_subgroups(self) -> tuple["PermutationGroup", ...]:
        seen = {}
        for g in self.elements:
            powers = [g]
            while powers[-1] != self.identity:
                powers.append(perms.compose(powers[-1], g))
            key = tuple(sorted(powers))
            if key not in seen:
                seen[key] = self.subgroup([g])
        return tuple(sorted(seen.values(), key=lambda H: (H.order, H.elements)))

    def subgroups(self, max_order: int | None = None) -> tuple["PermutationGroup", ...]:
        """All subgroups, by closing cyclic seeds under one-generator extensions.

        Exhaustive enumeration is only permitted for |G| <= cap; pass
        max_order to lift the default cap of 48.
        """
        cap = DEFAULT_SUBGROUP_CAP if max_order is None else max_order
        if self.order > cap:
            raise OrderCapExceeded(
                f"subgroup enumeration needs |G| <= {cap}, got {self.order}"
            )
        found: dict[tuple[Perm, ...], PermutationGroup] = {}
        triv = self.trivial_subgroup
        found[triv.elements] = triv
        layer = []
        for H in self.cyclic_subgroups:
            if H.elements not in found:
                found[H.elements] = H
                layer.append(H)
        while layer:
            nxt = []
            for H in layer:
                helems = set(H.elements)
                for g in self.elements:
                    if g in helems:
                        continue
                    K = self.subgroup(list(H.generators) + [g])
                    if K.elements not in found:
                        found[K.elements] = K
                        nxt.append(K)
            layer = nxt
        return tuple(sorted(found.values(), key=lambda H: (H.order, H.elements)))

    # -- quotients and cosets -------------------------------------------------

    def quotient(self, N: "PermutationGroup") -> "Quotient":
        if not self.is_normal(N):
            raise NotNormal("quotient requires a normal subgroup")
        nset = N.elements
        cosets = {}
        for g in self.elements:
            coset = tuple(sorted(perms.compose(g, n) for n in nset))
            cosets.setdefault(coset[0], coset)
        ordered = tuple(cosets[k] for k in sorted(cosets))
        coset_index = {}
        for i, coset in enumerate(ordered):
            for g in coset:
                coset_index[g] = i
        reps = tuple(c[0] for c in ordered)
        images = []
        for g in self.generators:
            images.append(
                tuple(coset_index[perms.compose(g, r)] for r in reps)
            )
        qname = f"{self.name}/{N.name}" if self.name and N.name else None
        Q = PermutationGroup(len(ordered), images, qname)
        return Quotient(self, N, Q, ordered, coset_index)

    def double_cosets(
        self, K: "PermutationGroup", H: "PermutationGroup"
    ) -> tuple[tuple[Perm, frozenset[Perm]], ...]:
        """K\\G/H double cosets as (least representative, element set), ordered."""
        self.require_subgroup(K)
        self.require_subgroup(H)
        remaining = set(self.elements)
        out = []
        for g in self.elements:
            if g not in remaining:
                continue
            dc = frozenset(
                perms.compose(k, perms.compose(g, h))
                for k in K.elements
                for h in H.elements
            )
            out.append((min(dc), dc))
            remaining -= dc
        return tuple(out)


@dataclass(frozen=True)
class Quotient:
    """Quotient group G/N with projection and a canonical section."""

    group: PermutationGroup
    normal: PermutationGroup
    quotient: PermutationGroup
    cosets: tuple[tuple[Perm, ...], ...]
    coset_index: dict[Perm, int]

    def project(self, g: Perm) -> Perm:
        """Image of g in the quotient (a permutation of the cosets)."""
        return tuple(
            self.coset_index[perms.compose(g, c[0])] for c in self.cosets
        )

    def section(self, q: Perm) -> Perm:
        """Least element of the coset that q represents."""
        return self.cosets[q[0]][0]

    def preimage(self, K: PermutationGroup) -> PermutationGroup:
        """Full preimage of a subgroup K of the quotient."""
        self.quotient.require_subgroup(K)
        kset = K._index
        elems = [g for g in self.group.elements if self.project(g) in kset]
        return self.group.subgroup_from_elements(elems)


def _reduce_generators(degree: int, elements: list[Perm]) -> list[Perm]:
    """Small generating set for a closed element list (greedy)."""
    ident = perms.identity(degree)
    gens: list[Perm] = []
    have = {ident}
    for g in elements:
        if g not in have:
            gens.append(g)
            have = set(_kernels.closure(gens, len(elements) + 1))
    return gens or [ident]


def direct_product(
    A: PermutationGroup, B: PermutationGroup, name: str | None = None
) -> PermutationGroup:
    """A x B acting on the disjoint union of the two point sets."""
    d = A.degree + B.degree
    gens = []
    for g in A.generators:
        gens.append(tuple(g) + tuple(range(A.degree, d)))
    for g in B.generators:
        gens.append(tuple(range(A.degree)) + tuple(x + A.degree for x in g))
    return PermutationGroup(d, gens, name)
