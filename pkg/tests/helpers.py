"""Definitional oracles shared by the test suite.

Everything here recomputes quantities from first principles (element-by-element
sums, breadth-first closures) instead of going through the library's optimized
paths, so agreement with the library is meaningful evidence of correctness.
"""

from fractions import Fraction

from charkit import perms
from charkit.classfun import ClassFunction
from charkit.cyclo import Cyclotomic


def naive_closure(degree, gens):
    """Breadth-first closure of a generator set under composition."""
    ident = perms.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = perms.compose(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def naive_conjugacy_classes(G):
    """Partition of G.elements into conjugacy classes by orbit sweeps."""
    remaining = set(G.elements)
    classes = set()
    while remaining:
        x = min(remaining)
        orbit = frozenset(perms.conjugate(g, x) for g in G.elements)
        assert orbit <= remaining
        classes.add(orbit)
        remaining -= orbit
    return classes


def value_at(f, g):
    """f(g) looked up through the class of g."""
    return f.values[f.group.class_of(g)]


def naive_inner(f1, f2):
    """(1/|G|) * sum over all group elements of f1(g) * conj(f2(g))."""
    G = f1.group
    total = Cyclotomic.zero()
    for g in G.elements:
        total = total + value_at(f1, g) * value_at(f2, g).conjugate()
    return total * Cyclotomic.from_rational(Fraction(1, G.order))


def naive_induce(f, G):
    """Induced character by the definition: the average over x in G of the
    zero-extension of f evaluated at x^-1 g x."""
    H = f.group
    h_set = set(H.elements)
    vals = []
    for c in G.classes:
        g = c.rep
        total = Cyclotomic.zero()
        for x in G.elements:
            y = perms.conjugate(perms.inverse(x), g)
            if y in h_set:
                total = total + value_at(f, y)
        vals.append(total * Cyclotomic.from_rational(Fraction(1, H.order)))
    return ClassFunction(G, vals)


def naive_restrict(f, H):
    """Restriction by direct value lookup at each H-class representative."""
    return ClassFunction(H, [value_at(f, c.rep) for c in H.classes])


def as_fraction_rows(table):
    """Table values as sort keys, for order-insensitive comparisons."""
    return sorted(
        tuple(v.sort_key(table.exponent) for v in chi.values)
        for chi in table.irreducibles
    )


def set_partitions(items):
    """All partitions of a list, as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def oracle_supercharacter_theories(table):
    """All supercharacter theories by raw definition: partitions K of the
    group elements with the identity alone and X of the irreducibles with
    |X| = |K| such that every sum of chi(1)*chi over an X part is constant
    on every K part. Returns canonical (X, K) signatures as frozensets.
    """
    G = table.group
    others = [g for g in G.elements if g != G.identity]
    k = len(table.irreducibles)
    sigmas = {}
    found = set()
    for rest in set_partitions(others):
        kparts = [[G.identity]] + rest
        for xparts in set_partitions(list(range(k))):
            if len(xparts) != len(kparts):
                continue
            ok = True
            for xp in xparts:
                key = tuple(sorted(xp))
                sigma = sigmas.get(key)
                if sigma is None:
                    sigma = ClassFunction(G, [0] * len(G.classes))
                    for i in key:
                        chi = table.irreducibles[i]
                        sigma = sigma + chi.scale(chi.degree.to_int())
                    sigmas[key] = sigma
                for kp in kparts:
                    v0 = value_at(sigma, kp[0])
                    if any(value_at(sigma, g) != v0 for g in kp[1:]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.add(
                    (
                        frozenset(frozenset(xp) for xp in xparts),
                        frozenset(frozenset(kp) for kp in kparts),
                    )
                )
    return found
