"""Regenerate the JSON fixtures under fixtures/ from the stock examples."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tropcoh.examples import a2d_subdivision, blowup_p2, local_p2
from tropcoh.io import InputDocument, TwistingSet, serialize_input
from tropcoh.spheres import difference_sphere
from tropcoh.tropical import bounded_regions, tropical_curve

OUT = Path(__file__).resolve().parents[1] / "fixtures"


def doc_from(sub, twisting_sets=None, kink_sets=None) -> InputDocument:
    return InputDocument(
        points=tuple((int(x), int(y)) for x, y in sub.points),
        triangles=tuple(tuple(int(i) for i in t) for t in sub.triangles),
        nu=tuple(int(v) for v in sub.nu),
        twisting_sets=twisting_sets or {},
        kink_sets=kink_sets or {},
    )


def main() -> None:
    OUT.mkdir(exist_ok=True)

    p2 = local_p2()
    p2_doc = doc_from(
        p2,
        twisting_sets={
            "cap_k1": TwistingSet((3, 3, 3), (0, 0)),
            "cap_k_minus2": TwistingSet((-3, -3, -3), (0, 0)),
            "bad_parity": TwistingSet((2, 3, 3), (0, 0)),
        },
        kink_sets={"canonical": (-3, -3, -3)},
    )
    (OUT / "p2.json").write_bytes(serialize_input(p2_doc))

    blowup = blowup_p2()
    blowup_doc = doc_from(
        blowup,
        twisting_sets={"paper_example": TwistingSet((-14, 5, -14, -9), (1, 1))},
    )
    (OUT / "blowup_p2.json").write_bytes(serialize_input(blowup_doc))

    a2d = a2d_subdivision(3)
    regions = bounded_regions(tropical_curve(a2d))
    sets = {}
    for region in regions:
        tw = difference_sphere(region)
        name = f"difference_c{region.dual_vertex[0]}"
        sets[name] = TwistingSet(tuple(tw.ell), region.dual_vertex)
    (OUT / "a2d_d3.json").write_bytes(serialize_input(doc_from(a2d, twisting_sets=sets)))

    for name in ("p2.json", "blowup_p2.json", "a2d_d3.json"):
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
