#!/usr/bin/env python3
"""Regenerate the reference corpus under src/knotcert/data/."""

import json
from pathlib import Path

from knotcert.certify import certificate_to_dict
from knotcert.synth import (
    elliptic_example,
    hyperbolic_example,
    parabolic_example,
    twist_unknotted_example,
    unknotted_example,
)

DATA = Path(__file__).resolve().parent.parent / "src" / "knotcert" / "data"


def write_json(name: str, payload: dict) -> None:
    path = DATA / name
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path} ({path.stat().st_size} bytes)")


def write_text(name: str, text: str) -> None:
    path = DATA / name
    path.write_text(text)
    print(f"wrote {path}")


def main() -> None:
    DATA.mkdir(exist_ok=True)
    write_json("hyperbolic_g2_n3.json", certificate_to_dict(hyperbolic_example(2, 3)))
    write_json("hyperbolic_g3_n5.json", certificate_to_dict(hyperbolic_example(3, 5)))
    write_json("elliptic_g1_n2.json", certificate_to_dict(elliptic_example()))
    write_json("parabolic_g1_n2.json", certificate_to_dict(parabolic_example()))
    write_json("unknotted_g1_n2.json", certificate_to_dict(unknotted_example()))
    write_json("unknotted_twist_n4.json", certificate_to_dict(twist_unknotted_example()))

    write_text(
        "trefoil.mat",
        "# Seifert matrix of the trefoil\n1\n-1 1\n0 -1\n",
    )
    write_text(
        "figure8.mat",
        "# Seifert matrix of the figure-eight knot\n1\n1 1\n0 -1\n",
    )
    write_text(
        "whitehead_k3.mat",
        "# twisted Whitehead-double style surface, 3 twists\n1\n0 1\n0 3\n",
    )
    write_text(
        "trefoil.lp",
        "# Alexander polynomial of the trefoil: t^-1 - 1 + t\n-1\n1 -1 1\n",
    )
    write_text(
        "borromean.longitudes",
        "# Borromean-style longitude system\n3\ng2 g3 g2^-1 g3^-1\ng3 g1 g3^-1 g1^-1\ng1 g2 g1^-1 g2^-1\n",
    )
    write_text(
        "hopf.longitudes",
        "2\ng2\ng1\n",
    )
    altsum = [
        {"subset": [], "value": 0},
        {"subset": [1], "value": 1},
        {"subset": [2], "value": 1},
        {"subset": [1, 2], "value": 2},
    ]
    write_text("altsum_example.json", json.dumps(altsum, indent=1) + "\n")


if __name__ == "__main__":
    main()
