"""Built-in collection of small test groups and a reproducible report runner.

The collection covers cyclic groups C2 through C12, the Klein four-group,
dihedral groups of orders 8 and 12, the quaternion group on eight points,
symmetric and alternating groups up to degree five, a direct product mixing
the two, and the order-24 matrix group acting on the nonzero vectors of a
two-dimensional space over the field with three elements. Reports are
canonical JSON so that repeated runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import json

from .chartab import character_table, group_to_json
from .errors import InputError
from .groups import PermutationGroup


def _cyclic(n: int) -> PermutationGroup:
    images = tuple(list(range(2, n + 1)) + [1])
    return PermutationGroup.from_generators(n, [images], name=f"C{n}")


def _klein() -> PermutationGroup:
    return PermutationGroup.from_generators(
        4, [(2, 1, 4, 3), (3, 4, 1, 2)], name="V4"
    )


def _symmetric3() -> PermutationGroup:
    return PermutationGroup.from_generators(3, [(2, 1, 3), (2, 3, 1)], name="S3")


def _symmetric4() -> PermutationGroup:
    return PermutationGroup.from_generators(
        4, [(2, 1, 3, 4), (2, 3, 4, 1)], name="S4"
    )


def _alternating4() -> PermutationGroup:
    return PermutationGroup.from_generators(
        4, [(2, 3, 1, 4), (2, 1, 4, 3)], name="A4"
    )


def _alternating5() -> PermutationGroup:
    return PermutationGroup.from_generators(
        5, [(2, 3, 1, 4, 5), (2, 3, 4, 5, 1)], name="A5"
    )


def _dihedral4() -> PermutationGroup:
    return PermutationGroup.from_generators(
        4, [(2, 3, 4, 1), (3, 2, 1, 4)], name="D4"
    )


def _dihedral6() -> PermutationGroup:
    return PermutationGroup.from_generators(
        6, [(2, 3, 4, 5, 6, 1), (6, 5, 4, 3, 2, 1)], name="D6"
    )


def _quaternion() -> PermutationGroup:
    return PermutationGroup.from_generators(
        8, [(2, 3, 4, 1, 6, 7, 8, 5), (5, 8, 7, 6, 3, 2, 1, 4)], name="Q8"
    )


def _s3_times_c2() -> PermutationGroup:
    return PermutationGroup.from_generators(
        5,
        [(2, 1, 3, 4, 5), (2, 3, 1, 4, 5), (1, 2, 3, 5, 4)],
        name="S3xC2",
    )


def _sl23() -> PermutationGroup:
    """Determinant-one two-by-two matrices over the three-element field,
    acting on the eight nonzero column vectors."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    idx = {v: i + 1 for i, v in enumerate(vecs)}

    def act(m):
        return tuple(
            idx[
                (
                    (m[0][0] * v[0] + m[0][1] * v[1]) % 3,
                    (m[1][0] * v[0] + m[1][1] * v[1]) % 3,
                )
            ]
            for v in vecs
        )

    g1 = act([[1, 1], [0, 1]])
    g2 = act([[0, -1], [1, 0]])
    return PermutationGroup.from_generators(8, [g1, g2], name="SL23")


_BUILDERS = {
    "C2": lambda: _cyclic(2),
    "C3": lambda: _cyclic(3),
    "C4": lambda: _cyclic(4),
    "C5": lambda: _cyclic(5),
    "C6": lambda: _cyclic(6),
    "C7": lambda: _cyclic(7),
    "C8": lambda: _cyclic(8),
    "C9": lambda: _cyclic(9),
    "C10": lambda: _cyclic(10),
    "C11": lambda: _cyclic(11),
    "C12": lambda: _cyclic(12),
    "V4": _klein,
    "S3": _symmetric3,
    "S4": _symmetric4,
    "A4": _alternating4,
    "A5": _alternating5,
    "D4": _dihedral4,
    "D6": _dihedral6,
    "Q8": _quaternion,
    "S3xC2": _s3_times_c2,
    "SL23": _sl23,
}

# deterministic presentation order: by order, then by name
CORPUS_NAMES = (
    "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "D4", "Q8",
    "C9", "C10", "C11", "A4", "C12", "D6", "S3xC2", "S4", "SL23", "A5",
)


def corpus_group(name: str) -> PermutationGroup:
    if name not in _BUILDERS:
        raise InputError(f"unknown corpus group {name!r}")
    return _BUILDERS[name]()


def corpus_groups() -> tuple[PermutationGroup, ...]:
    return tuple(corpus_group(name) for name in CORPUS_NAMES)


def solvable_corpus(max_order: int | None = None) -> tuple[PermutationGroup, ...]:
    out = []
    for G in corpus_groups():
        if not G.is_solvable:
            continue
        if max_order is not None and G.order > max_order:
            continue
        out.append(G)
    return tuple(out)


def corpus_report(cache_dir: str | None = None) -> dict:
    """Canonical per-group summary with exact table fingerprints."""
    entries = []
    for name in CORPUS_NAMES:
        G = corpus_group(name)
        table = character_table(G, cache_dir=cache_dir)
        blob = json.dumps(
            table.to_json(), sort_keys=True, separators=(",", ":")
        ).encode()
        entries.append(
            {
                "name": name,
                "group": group_to_json(G),
                "order": G.order,
                "num_classes": len(G.classes),
                "class_sizes": [c.size for c in G.classes],
                "exponent": table.exponent,
                "degrees": list(table.degrees),
                "solvable": G.is_solvable,
                "derived_length": G.derived_length,
                "table_sha256": hashlib.sha256(blob).hexdigest(),
            }
        )
    return {"groups": entries}
