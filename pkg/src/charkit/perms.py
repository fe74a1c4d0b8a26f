"""Permutation primitives.

A permutation of degree d is stored as a tuple of length d whose entry at
position i is the 0-based image of point i. External interfaces (JSON, cycle
notation) use 1-based points; conversion happens at the boundary.
"""

from __future__ import annotations

import re

from .errors import InvalidPermutation

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q acting as (p*q)(x) = p(q(x)): q is applied first."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def conjugate(g: Perm, x: Perm) -> Perm:
    """g * x * g^-1."""
    ginv = inverse(g)
    return tuple(g[x[ginv[i]]] for i in range(len(g)))


def perm_order(p: Perm) -> int:
    n = 1
    q = p
    ident = identity(len(p))
    while q != ident:
        q = compose(q, p)
        n += 1
    return n


def from_images(images: list[int], degree: int) -> Perm:
    """Validate a 1-based image list and return the 0-based permutation."""
    if len(images) != degree or sorted(images) != list(range(1, degree + 1)):
        raise InvalidPermutation(
            f"image list {images!r} is not a bijection of 1..{degree}"
        )
    return tuple(i - 1 for i in images)


def to_images(p: Perm) -> list[int]:
    return [i + 1 for i in p]


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation like "(1 2)(3 4)" into a permutation.

    Points are 1-based. "()" and "e" denote the identity. Cycles are composed
    as a product with the leftmost factor applied last; for the usual disjoint
    cycles the order is immaterial.
    """
    text = text.strip()
    if text in ("", "()", "e"):
        return identity(degree)
    if text.replace(" ", "").replace(",", "") != "".join(
        m.group(0).replace(" ", "").replace(",", "") for m in _CYCLE_RE.finditer(text)
    ):
        raise InvalidPermutation(f"malformed cycle notation: {text!r}")
    result = identity(degree)
    for m in reversed(list(_CYCLE_RE.finditer(text))):
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise InvalidPermutation(f"malformed cycle notation: {text!r}") from None
        if any(not 1 <= pt <= degree for pt in pts) or len(set(pts)) != len(pts):
            raise InvalidPermutation(
                f"cycle {m.group(0)} out of range for degree {degree}"
            )
        cyc = list(identity(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a - 1] = b - 1
        result = compose(tuple(cyc), result)
    return result


def format_cycles(p: Perm) -> str:
    """Disjoint-cycle notation with 1-based points; identity prints as "()"."""
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i + 1)
            i = p[i]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "()"
