"""Derive descriptors for the r = 3 flag manifolds with b_2 = 1 from two facts:

* the volume factor of the Kahler-Einstein metric (1, 2, 3) is
  (2^{d_2} 3^{d_3})^{1/n}, which fixes the dimensions;
* that metric is Einstein, which is linear in [112] and [123].

The output is a directory of descriptor files usable with
``einstab reproduce --table FS3 --descriptor-dir``.
"""

from __future__ import annotations

import argparse
from fractions import Fraction as F
from pathlib import Path

from einstab.curvature import einstein_residual, ricci_eigenvalues
from einstab.space import SpaceDescriptor, StructureConstants, save_descriptor

# slug -> (d_1, d_2, d_3)
DIMS = {
    "E8_E6xSU2xU1": (108, 54, 4),
    "E8_SU8xU1": (112, 56, 16),
    "E7_SU5xSU3xU1": (60, 30, 10),
    "E7_SU6xSU2xU1": (60, 30, 4),
    "E6_SU3xSU3xSU2xU1": (36, 18, 4),
    "F4_SU3xSU2xU1_r3": (24, 12, 4),
    "G2_U2": (4, 2, 4),
}
KAHLER = (F(1), F(2), F(3))


def _ricci(dims, c112, c123):
    consts = {k: v for k, v in (((1, 1, 2), c112), ((1, 2, 3), c123)) if v}
    space = SpaceDescriptor("tmp", dims, (F(1),) * 3, StructureConstants(3, consts))
    return ricci_eigenvalues(space, KAHLER)


def derive(slug: str) -> SpaceDescriptor:
    dims = DIMS[slug]
    base = _ricci(dims, F(0), F(0))
    u = [a - b for a, b in zip(_ricci(dims, F(1), F(0)), base)]
    v = [a - b for a, b in zip(_ricci(dims, F(0), F(1)), base)]
    # rho_1 = rho_2 and rho_2 = rho_3, linear in ([112], [123])
    a11, a12, r1 = u[0] - u[1], v[0] - v[1], base[1] - base[0]
    a21, a22, r2 = u[1] - u[2], v[1] - v[2], base[2] - base[1]
    det = a11 * a22 - a12 * a21
    c112 = (r1 * a22 - a12 * r2) / det
    c123 = (a11 * r2 - a21 * r1) / det
    space = SpaceDescriptor(slug, dims, (F(1),) * 3,
                            StructureConstants(3, {(1, 1, 2): c112, (1, 2, 3): c123}),
                            notes="derived from the Kahler-Einstein metric (1,2,3)")
    assert einstein_residual(space, KAHLER) == 0
    return space


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=Path)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for slug in DIMS:
        space = derive(slug)
        save_descriptor(space, args.out / f"{slug}.json")
        print(slug, space.dims, dict(space.constants.entries))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
