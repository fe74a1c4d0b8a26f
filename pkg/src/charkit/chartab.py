"""Character tables with exact cyclotomic entries.

Non-abelian tables are computed by the modular eigenvector method: split the
class algebra over F_p for a prime p = 1 (mod exponent) with p^2 > 4|G|, read
off central characters, recover degrees and value multiplicities mod p, and
lift exactly to Q(zeta_e). Abelian tables are built by iterated cyclic
extension of the dual group. Every table (computed or loaded) passes an exact
verification: row and column orthogonality, degree divisibility and the
degree-square sum.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import perms
from .classfun import ClassFunction, inflate, inner_product
from .cyclo import Cyclotomic
from .errors import (
    InternalVerificationFailed,
    SchemaError,
    VerificationFailed,
)
from .groups import PermutationGroup

_TABLE_CACHE: dict = {}


@dataclass(frozen=True)
class CharacterTable:
    group: PermutationGroup
    exponent: int
    irreducibles: tuple[ClassFunction, ...]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(chi.degree.to_fraction()) for chi in self.irreducibles)

    @cached_property
    def trivial_index(self) -> int:
        for i, chi in enumerate(self.irreducibles):
            if all(v == 1 for v in chi.values):
                return i
        raise InternalVerificationFailed("table has no trivial character")

    @cached_property
    def linear_indices(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == 1)

    def index_of(self, f: ClassFunction) -> int | None:
        for i, chi in enumerate(self.irreducibles):
            if chi == f:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "group": group_to_json(self.group),
            "exponent": self.exponent,
            "classes": [
                {"rep": perms.to_images(c.rep), "size": c.size}
                for c in self.group.classes
            ],
            "irreducibles": [
                [v.to_json(self.exponent) for v in chi.values]
                for chi in self.irreducibles
            ],
        }

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, sort_keys=True, separators=(",", ":"))


def group_to_json(G: PermutationGroup) -> dict:
    out = {
        "degree": G.degree,
        "generators": [perms.to_images(g) for g in G.generators],
    }
    if G.name:
        out["name"] = G.name
    return out


def group_from_json(obj) -> PermutationGroup:
    if not isinstance(obj, dict):
        raise SchemaError("group payload must be an object")
    try:
        degree = obj["degree"]
        gens = obj["generators"]
    except KeyError as exc:
        raise SchemaError(f"group payload missing {exc}") from None
    if not isinstance(degree, int) or not isinstance(gens, list):
        raise SchemaError("bad group payload")
    return PermutationGroup.from_generators(degree, gens, obj.get("name"))


def group_fingerprint(G: PermutationGroup) -> str:
    payload = json.dumps(
        {"degree": G.degree, "elements": [perms.to_images(g) for g in G.elements]},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


# -- helpers over F_p ----------------------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _dixon_prime(order: int, e: int) -> int:
    """Least prime p = 1 (mod e) with p^2 > 4|G| (then p does not divide |G|)."""
    p = e + 1
    while True:
        if p * p > 4 * order and _is_prime(p):
            return p
        p += e


def _mod_inv(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def _nullspace(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : M x = 0} over F_p; M is a list of rows."""
    rows = [row[:] for row in M]
    n = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _mod_inv(rows[r][c], p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def _primitive_root_of_unity(p: int, e: int) -> int:
    if e == 1:
        return 1
    qs = _prime_divisors(e)
    for a in range(2, p):
        z = pow(a, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in qs):
            return z
    raise InternalVerificationFailed(f"no element of order {e} mod {p}")


# -- table construction --------------------------------------------------------


def _abelian_rows(G: PermutationGroup) -> list[ClassFunction]:
    """Dual of an abelian group by extending one cyclic generator at a time.

    Characters are carried as exponent maps g -> a with chi(g) = zeta_e^a.
    Extending by g with g^t the least positive power inside the current
    subgroup turns each character into exactly t extensions.
    """
    e = G.exponent
    chars: list[dict] = [{G.identity: 0}]
    have = {G.identity}
    for g in G.generators:
        if g in have:
            continue
        powers = [G.identity]
        gp = g
        while gp not in have:
            powers.append(gp)
            gp = perms.compose(gp, g)
        t = len(powers)
        new_chars = []
        for chi in chars:
            a = chi[gp] % e
            if a % t:
                raise InternalVerificationFailed("dual extension not divisible")
            b0 = a // t
            for jj in range(t):
                b = (b0 + (e // t) * jj) % e
                nc = {}
                for h, ah in chi.items():
                    for idx, gj in enumerate(powers):
                        nc[perms.compose(h, gj)] = (ah + b * idx) % e
                new_chars.append(nc)
        chars = new_chars
        have = set(chars[0])
    if len(chars) != G.order:
        raise InternalVerificationFailed("abelian dual has wrong size")
    return [
        ClassFunction(G, [Cyclotomic.root_of_unity(e, chi[c.rep])
                          for c in G.classes])
        for chi in chars
    ]


def _dixon_rows(G: PermutationGroup) -> list[ClassFunction]:
    classes = G.classes
    k = len(classes)
    order = G.order
    e = G.exponent
    p = _dixon_prime(order, e)
    cls_index = G.class_index
    reps = [c.rep for c in classes]
    sizes = [c.size for c in classes]

    # structure constants: c_i c_j = sum_l A[i][j][l] c_l
    A = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for l in range(k):
            gl = reps[l]
            for u in classes[i].elements:
                j = cls_index[perms.compose(perms.inverse(u), gl)]
                A[i][j][l] += 1

    # common eigenspaces of the class-sum matrices over F_p
    subspaces = [[[1 if a == b else 0 for b in range(k)] for a in range(k)]]
    for i in range(1, k):
        if all(len(B) == 1 for B in subspaces):
            break
        Mi = A[i]
        nxt = []
        for B in subspaces:
            r = len(B)
            if r == 1:
                nxt.append(B)
                continue
            BT = [[B[b][a] % p for b in range(r)] for a in range(k)]
            D = [
                [sum(Mi[a][c] * B[b][c] for c in range(k)) % p for b in range(r)]
                for a in range(k)
            ]
            found = 0
            for lam in range(p):
                C = [
                    [(D[a][b] - lam * BT[a][b]) % p for b in range(r)]
                    for a in range(k)
                ]
                ker = _nullspace(C, p)
                if ker:
                    nxt.append(
                        [
                            [sum(x[b] * B[b][c] for b in range(r)) % p
                             for c in range(k)]
                            for x in ker
                        ]
                    )
                found += len(ker)
                if found == r:
                    break
            if found != r:
                raise InternalVerificationFailed("eigenspace split lost dimension")
        subspaces = nxt
    if not all(len(B) == 1 for B in subspaces):
        raise InternalVerificationFailed("class algebra failed to split to lines")

    z = _primitive_root_of_unity(p, e)
    zinv = _mod_inv(z, p)
    inv_sizes = [_mod_inv(s, p) for s in sizes]
    invcl = G.inverse_classes
    rows = []
    for B in subspaces:
        u = B[0]
        u0inv = _mod_inv(u[0], p)
        u = [(x * u0inv) % p for x in u]
        t = sum(u[l] * u[invcl[l]] * inv_sizes[l] for l in range(k)) % p
        d2 = order * _mod_inv(t, p) % p
        d = next((dd for dd in range(1, (p + 1) // 2) if dd * dd % p == d2), None)
        if d is None:
            raise InternalVerificationFailed("degree has no small square root mod p")
        x = [u[l] * d % p * inv_sizes[l] % p for l in range(k)]
        values = []
        for l in range(k):
            m = perms.perm_order(reps[l])
            pcls = [G.power_class(l, tt) for tt in range(m)]
            minv = _mod_inv(m, p)
            step = e // m
            coeffs = {}
            total = 0
            for j in range(m):
                zz = pow(zinv, step * j, p)
                s = 0
                zt = 1
                for tt in range(m):
                    s = (s + x[pcls[tt]] * zt) % p
                    zt = zt * zz % p
                mu = s * minv % p
                if mu > d:
                    raise InternalVerificationFailed("value multiplicity out of range")
                total += mu
                if mu:
                    coeffs[(step * j) % e] = Fraction(mu)
            if total != d:
                raise InternalVerificationFailed("multiplicities do not sum to degree")
            values.append(Cyclotomic(e, coeffs))
        rows.append(ClassFunction(G, values))
    return rows


def _sort_rows(rows: list[ClassFunction], e: int) -> tuple[ClassFunction, ...]:
    return tuple(
        sorted(
            rows,
            key=lambda chi: (
                int(chi.degree.to_fraction()),
                tuple(v.sort_key(e) for v in chi.values),
            ),
        )
    )


def verify_table(table: CharacterTable, internal: bool = False) -> None:
    """Exact invariants; raises on any failure."""
    err = InternalVerificationFailed if internal else VerificationFailed
    G = table.group
    rows = table.irreducibles
    k = len(G.classes)
    if len(rows) != k:
        raise err(f"expected {k} irreducibles, got {len(rows)}")
    if G.exponent != table.exponent:
        raise err("table exponent does not match the group exponent")
    degs = []
    for chi in rows:
        d = chi.degree
        if not d.is_rational:
            raise err("irrational degree")
        dq = d.to_fraction()
        if dq.denominator != 1 or dq <= 0:
            raise err(f"bad degree {dq}")
        if G.order % int(dq):
            raise err(f"degree {dq} does not divide |G| = {G.order}")
        degs.append(int(dq))
    if sum(d * d for d in degs) != G.order:
        raise err("degree squares do not sum to |G|")
    for i in range(k):
        for j in range(i, k):
            ip = inner_product(rows[i], rows[j])
            want = 1 if i == j else 0
            if ip != want:
                raise err(f"row orthogonality fails at ({i},{j})")
    for a in range(k):
        for b in range(a, k):
            s = Cyclotomic.zero()
            for chi in rows:
                s = s + chi.values[a] * chi.values[b].conjugate()
            want = Fraction(G.order, G.classes[a].size) if a == b else Fraction(0)
            if s != want:
                raise err(f"column orthogonality fails at ({a},{b})")


def character_table(
    G: PermutationGroup, cache_dir: str | None = None
) -> CharacterTable:
    """The (verified) character table of G, deterministically ordered.

    Rows are sorted by (degree, lexicographic coefficient order of the value
    vector); columns follow the group's canonical class order.
    """
    key = (G.degree, G.elements)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    if cache_dir is not None:
        path = os.path.join(cache_dir, f"table-{group_fingerprint(G)}.json")
        if os.path.exists(path):
            with open(path) as fh:
                table = load_table(json.load(fh), G)
            _TABLE_CACHE[key] = table
            return table
    rows = _abelian_rows(G) if G.is_abelian else _dixon_rows(G)
    table = CharacterTable(G, G.exponent, _sort_rows(rows, G.exponent))
    verify_table(table, internal=True)
    _TABLE_CACHE[key] = table
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        table.save(path)
    return table


def load_table(obj, group: PermutationGroup | None = None) -> CharacterTable:
    """Rebuild a table from JSON and re-verify it exactly.

    Stored class columns may use any class representatives; they are matched
    to the canonical class order of the reconstructed group.
    """
    if not isinstance(obj, dict):
        raise SchemaError("table payload must be an object")
    for field in ("group", "exponent", "classes", "irreducibles"):
        if field not in obj:
            raise SchemaError(f"table payload missing {field!r}")
    G = group_from_json(obj["group"])
    if group is not None:
        if group != G:
            raise VerificationFailed("table group does not match the given group")
        G = group
    k = len(G.classes)
    stored = obj["classes"]
    if len(stored) != k:
        raise VerificationFailed("stored class count is wrong")
    perm = []
    seen = set()
    for entry in stored:
        try:
            rep = perms.from_images(entry["rep"], G.degree)
        except (KeyError, TypeError):
            raise SchemaError("bad class entry") from None
        if rep not in G._index:
            raise VerificationFailed("class representative not in the group")
        idx = G.class_of(rep)
        if idx in seen:
            raise VerificationFailed("duplicate class representative")
        seen.add(idx)
        if entry.get("size") != G.classes[idx].size:
            raise VerificationFailed("stored class size is wrong")
        perm.append(idx)
    rows = []
    for vals in obj["irreducibles"]:
        if len(vals) != k:
            raise VerificationFailed("row length does not match class count")
        by_class = [None] * k
        for pos, v in enumerate(vals):
            by_class[perm[pos]] = Cyclotomic.from_json(v)
        rows.append(ClassFunction(G, by_class))
    table = CharacterTable(G, obj["exponent"], tuple(rows))
    verify_table(table, internal=False)
    return table


def regular_character(table: CharacterTable) -> ClassFunction:
    """|G| at the identity and 0 elsewhere; verified equal to sum chi(1)*chi."""
    G = table.group
    reg = ClassFunction.regular(G)
    acc = ClassFunction(G, [0] * len(G.classes))
    for d, chi in zip(table.degrees, table.irreducibles):
        acc = acc + chi.scale(d)
    if acc != reg:
        raise InternalVerificationFailed("regular character decomposition failed")
    return reg


def linear_characters(H: PermutationGroup) -> tuple[ClassFunction, ...]:
    """Degree-1 characters of H: the dual of H/[H,H], inflated and sorted."""
    q = H.quotient(H.derived_subgroup)
    tab = character_table(q.quotient)
    lifted = [inflate(chi, q) for chi in tab.irreducibles]
    e = H.exponent
    lifted.sort(key=lambda f: tuple(v.sort_key(e) for v in f.values))
    return tuple(lifted)
