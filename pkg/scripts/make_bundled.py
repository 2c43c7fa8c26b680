"""Regenerate the JSON instances shipped in compatorder/data."""

from __future__ import annotations

import json
from pathlib import Path

from compatorder import serialize
from compatorder.functions import ValueGrid, enumerate_family
from compatorder.morphisms import from_homeomorphism
from compatorder.topology import FiniteSpace, SpaceMap

OUT = serialize.BUNDLED_DIR


def write(name: str, obj) -> None:
    path = OUT / f"{name}.json"
    path.write_text(serialize.dumps(obj))
    print(f"wrote {path.relative_to(Path.cwd()) if path.is_relative_to(Path.cwd()) else path}")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    d3 = FiniteSpace.discrete(3)
    sier = FiniteSpace.sierpinski()
    write("discrete4", serialize.space_to_json(FiniteSpace.discrete(4)))
    write("sierpinski", serialize.space_to_json(sier))
    write("discrete3", serialize.space_to_json(d3))
    write("two_sierpinski", serialize.space_to_json(sier.disjoint_union(sier)))

    fam = enumerate_family(d3, ValueGrid.parse("0,1,2"))
    write("discrete3_grid012", serialize.family_to_json(fam))
    phi = SpaceMap(d3, d3, (1, 2, 0))
    write("phi", serialize.space_map_to_json(phi))
    T = from_homeomorphism(phi, fam, fam)
    write(
        "phi_map",
        serialize.map_to_json(T, "discrete3_grid012.json", "discrete3_grid012.json",
                              "discrete3.json", "discrete3.json"),
    )

    # a function on the Sierpinski space whose zero fiber {1} is not open
    write("sierpinski_bad_family", [{"values": ["0", "0"]}, {"values": ["1", "0"]}])
    write("sierpinski_grid01", serialize.family_to_json(enumerate_family(sier, ValueGrid.parse("0,1"))))

    instances = {
        "discont_d3": (d3, "0,1,2", [0], ["1"], ["2"]),
        "discont_sierpinski_point": (sier.disjoint_union(FiniteSpace.discrete(1)), "0,1,2", [0, 1], ["1", "1"], ["2", "2"]),
        "discont_d2_sign": (FiniteSpace.discrete(2), "-1,0,1", [0], ["-1"], ["1"]),
    }
    for name, (space, grid, comp, f1, f2) in instances.items():
        write(name, {
            "space": serialize.space_to_json(space),
            "grid": grid,
            "component": comp,
            "f1": f1,
            "f2": f2,
        })


if __name__ == "__main__":
    main()
