"""Regenerate the cached fixtures under src/spherecolor/data.

    python scripts/derive_fixtures.py dw8
    python scripts/derive_fixtures.py frozen [--cap N] [--seed S]
"""

import argparse
import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "spherecolor" / "data"


def derive_dw8():
    from spherecolor import oracle
    from spherecolor.coloring import Coloring, is_balanced
    from spherecolor.complex import double_wheel

    G = double_wheel(8)
    for row in oracle.enumerate_colorings(G, 4):
        alpha = Coloring(4, tuple(int(c) for c in row))
        if not is_balanced(G, alpha):
            break
    else:
        raise SystemExit("no unbalanced coloring found")
    doc = {
        "graph": "double_wheel(8)",
        "derivation": "first unbalanced state in lexicographic enumeration of all 4-colorings",
        "colors": list(alpha.colors),
    }
    (DATA / "dw8_witness.json").write_text(json.dumps(doc, indent=1) + "\n")
    print("dw8 witness", alpha.colors)


def derive_frozen(cap, seed):
    from spherecolor.hardness import search_frozen_gadget, dumps_gadget

    gadget = search_frozen_gadget(max_vertices=cap, seed=seed)
    (DATA / "frozen_gadget.json").write_text(dumps_gadget(gadget))
    print("frozen gadget with", gadget.triangulation.vertex_count, "vertices")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("which", choices=["dw8", "frozen", "all"])
    ap.add_argument("--cap", type=int, default=18)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    if args.which in ("dw8", "all"):
        derive_dw8()
    if args.which in ("frozen", "all"):
        derive_frozen(args.cap, args.seed)


if __name__ == "__main__":
    main()
