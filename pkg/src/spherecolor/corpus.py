"""A fixed, seed-deterministic corpus of small even sphere triangulations."""

from __future__ import annotations

import random

from .complex import (
    OrientedTriangulation2,
    barycentric_subdivision,
    double_wheel,
    glue_along_face,
    is_isomorphic,
    octahedron,
    tetrahedron,
)
from .hardness import expand4


def _expansions(G: OrientedTriangulation2) -> list[OrientedTriangulation2]:
    out: list[OrientedTriangulation2] = []
    for v in range(G.vertex_count):
        d = G.degree(v)
        for s in range(d):
            for p in range(2, d - 1, 2):
                H = expand4(G, v, s, p)
                if not any(is_isomorphic(H, K) for K in out):
                    out.append(H)
    return out


def base_classes() -> list[tuple[str, OrientedTriangulation2]]:
    """Pairwise non-isomorphic even triangulations with 6 to 11 vertices."""
    oct_ = octahedron()
    dw8 = double_wheel(8)
    oo = glue_along_face(oct_, 0, octahedron(), 0)
    out = [
        ("octahedron", oct_),
        ("double_wheel_8", dw8),
        ("double_wheel_10", double_wheel(10)),
        ("oct+oct", oo),
        ("dw8+oct@0", glue_along_face(dw8, 0, octahedron(), 0)),
    ]
    for i, H in enumerate(_expansions(dw8)):
        if not is_isomorphic(H, out[2][1]):
            out.append((f"dw8-expanded-{i}", H))
    for i, H in enumerate(_expansions(oo)):
        out.append((f"oct+oct-expanded-{i}", H))
    return out


def even_corpus(size: int = 24, seed: int = 0) -> list[tuple[str, OrientedTriangulation2]]:
    """Base classes, then seeded relabelings and mirror images until ``size`` graphs."""
    base = base_classes()
    rng = random.Random(seed)
    out = list(base)
    i = 0
    while len(out) < size:
        name, G = base[i % len(base)]
        perm = list(range(G.vertex_count))
        rng.shuffle(perm)
        H = G.relabel(perm)
        if (i // len(base)) % 2 == 0:
            H = H.mirror()
            name = f"{name}/mirror-relabel-{i}"
        else:
            name = f"{name}/relabel-{i}"
        out.append((name, H))
        i += 1
    return out


def barycentric_examples() -> list[tuple[str, OrientedTriangulation2]]:
    """Barycentric subdivisions; always even, but larger than the main corpus."""
    return [("bary(tetrahedron)", barycentric_subdivision(tetrahedron()))]
