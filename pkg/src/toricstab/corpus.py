"""Built-in example corpus: named fans/polytopes with known stability verdicts.

Every record is re-verified by the test suite; the CLI exposes them through
``toricstab examples list`` and ``toricstab examples run NAME``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kleinschmidt
from .fan import (
    Divisor,
    Fan,
    make_divisor,
    make_fan,
    normal_fan_from_vertices,
    projective_space_fan,
    stellar_subdivide,
)
from .stability import RegionSlice, StabilityStatus, StabilityVerdict, check_tangent


@dataclass(frozen=True)
class ExampleRecord:
    name: str
    note: str
    expected: StabilityStatus
    fan: Fan | None = None
    divisor: Divisor | None = None
    vertices: tuple | None = None  # V-representation input, routed via normal fan


def _pn_records() -> list[ExampleRecord]:
    out = []
    for n in (2, 3, 4):
        fan = projective_space_fan(n)
        for d in (1, 2, 3):
            coeffs = [0] * n + [d]
            out.append(
                ExampleRecord(
                    name=f"p{n}-o{d}",
                    note=f"projective {n}-space with the degree-{d} polarization",
                    expected=StabilityStatus.STABLE,
                    fan=fan,
                    divisor=make_divisor(coeffs),
                )
            )
    return out


def _anticanonical(fan: Fan) -> Divisor:
    return make_divisor([1] * len(fan.rays))


def _hirzebruch_records() -> list[ExampleRecord]:
    out = []
    f1 = kleinschmidt.rank2(1, 1, (1,))
    out.append(
        ExampleRecord(
            name="f1-stable",
            note="first Hirzebruch surface, fiber class 3 / base class 1 (2*mu < lambda)",
            expected=StabilityStatus.STABLE,
            fan=kleinschmidt.build_fan(f1),
            divisor=kleinschmidt.polarization_divisor(f1, 3, 1),
        )
    )
    out.append(
        ExampleRecord(
            name="f1-boundary",
            note="first Hirzebruch surface on the boundary ray 2*mu = lambda",
            expected=StabilityStatus.SEMISTABLE_NOT_STABLE,
            fan=kleinschmidt.build_fan(f1),
            divisor=kleinschmidt.polarization_divisor(f1, 2, 1),
        )
    )
    for a in (2, 3):
        v = kleinschmidt.rank2(1, 1, (a,))
        out.append(
            ExampleRecord(
                name=f"f{a}-any",
                note=f"Hirzebruch surface with twist {a}: unstable for every ample class",
                expected=StabilityStatus.UNSTABLE,
                fan=kleinschmidt.build_fan(v),
                divisor=kleinschmidt.polarization_divisor(v, 1, 1),
            )
        )
    p1p1 = kleinschmidt.rank2(1, 1, (0,))
    out.append(
        ExampleRecord(
            name="p1xp1-anticanonical",
            note="quadric surface, anticanonical polarization (the semistable ray)",
            expected=StabilityStatus.SEMISTABLE_NOT_STABLE,
            fan=kleinschmidt.build_fan(p1p1),
            divisor=kleinschmidt.polarization_divisor(p1p1, 1, 1),
        )
    )
    return out


def _blowup_records() -> list[ExampleRecord]:
    bl1 = stellar_subdivide(projective_space_fan(2), (0, 1))
    bl2_rays = [(1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    bl2_cones = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    bl2 = make_fan(2, bl2_rays, bl2_cones)
    return [
        ExampleRecord(
            name="bl1p2-anticanonical",
            note="blow-up of the plane at a point, anticanonical polarization",
            expected=StabilityStatus.SEMISTABLE_NOT_STABLE,
            fan=bl1,
            divisor=_anticanonical(bl1),
        ),
        ExampleRecord(
            name="bl1p2-stable",
            note="blow-up of the plane at a point, a stabilizing polarization",
            expected=StabilityStatus.STABLE,
            fan=bl1,
            divisor=make_divisor([2, 2, 2, 3]),
        ),
        ExampleRecord(
            name="bl2p2-anticanonical",
            note="blow-up of the plane at two points, anticanonical polarization",
            expected=StabilityStatus.STABLE,
            fan=bl2,
            divisor=_anticanonical(bl2),
        ),
    ]


def _surface_misc_records() -> list[ExampleRecord]:
    hexagon = make_fan(
        2,
        [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
    )
    wedge = make_fan(
        2,
        [(1, 0), (0, 1), (-1, 3), (-1, 2), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
    )
    return [
        ExampleRecord(
            name="dp6-anticanonical",
            note="del Pezzo surface of degree 6 (hexagon), anticanonical polarization",
            expected=StabilityStatus.STABLE,
            fan=hexagon,
            divisor=_anticanonical(hexagon),
        ),
        ExampleRecord(
            name="wedge-320",
            note="blow-up of the twist-2 Hirzebruch surface staying off the plane tower",
            expected=StabilityStatus.UNSTABLE,
            fan=wedge,
            divisor=make_divisor([1, 1, 1, 1, 1]),
        ),
    ]


def _threefold_records() -> list[ExampleRecord]:
    p2 = projective_space_fan(2)
    p3 = projective_space_fan(3)
    cube = make_fan(
        3,
        [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (-1, 0, 0),
            (0, -1, 0),
            (0, 0, -1),
        ],
        [
            (i, j, k)
            for i in (0, 3)
            for j in (1, 4)
            for k in (2, 5)
        ],
    )
    return [
        ExampleRecord(
            name="p2-anticanonical",
            note="projective plane, anticanonical polarization",
            expected=StabilityStatus.STABLE,
            fan=p2,
            divisor=_anticanonical(p2),
        ),
        ExampleRecord(
            name="p3-anticanonical",
            note="projective 3-space, anticanonical polarization",
            expected=StabilityStatus.STABLE,
            fan=p3,
            divisor=_anticanonical(p3),
        ),
        ExampleRecord(
            name="p1xp1xp1-anticanonical",
            note="product of three lines, anticanonical polarization",
            expected=StabilityStatus.SEMISTABLE_NOT_STABLE,
            fan=cube,
            divisor=_anticanonical(cube),
        ),
    ]


FANO3FOLD_10_VERTICES = (
    (0, -1, -1),
    (-1, -1, -1),
    (-1, 0, -1),
    (0, 0, -1),
    (-1, -1, 0),
    (1, -1, 0),
    (-1, 2, 1),
    (-1, 0, 1),
    (2, 0, 1),
    (2, 2, 1),
)


def blowup_p3_point_line_fan() -> Fan:
    """Blow up 3-space at a fixed point and then at the strict transform of an
    invariant line through it (two stellar subdivisions)."""
    fan = projective_space_fan(3)
    fan = stellar_subdivide(fan, (0, 1, 3))  # the fixed point: cone <e1, e2, e0>
    fan = stellar_subdivide(fan, (0, 1))  # the line through it: cone <e1, e2>
    return fan


def blowup_p3_point_line_divisor(nu1, nu2) -> Divisor:
    """Ample class parametrized by (nu1, nu2); ample iff nu1 > nu2 > 0."""
    nu1 = Fraction(nu1)
    nu2 = Fraction(nu2)
    return make_divisor([0, 0, 0, 1 + nu1, 1, -nu2])


def blowup_p3_point_line_slice() -> RegionSlice:
    return RegionSlice(
        base=make_divisor([0, 0, 0, 1, 1, 0]),
        dir1=make_divisor([0, 0, 0, 1, 0, 0]),
        dir2=make_divisor([0, 0, 0, 0, 0, -1]),
    )


def _nonconvex_region_records() -> list[ExampleRecord]:
    fan = blowup_p3_point_line_fan()
    return [
        ExampleRecord(
            name="p3-point-line-unstable",
            note="iterated blow-up of 3-space (point, then a line through it) at (1, 1/2)",
            expected=StabilityStatus.UNSTABLE,
            fan=fan,
            divisor=blowup_p3_point_line_divisor(1, Fraction(1, 2)),
        ),
        ExampleRecord(
            name="p3-point-line-stable",
            note="iterated blow-up of 3-space (point, then a line through it) at (1/5, 1/10)",
            expected=StabilityStatus.STABLE,
            fan=fan,
            divisor=blowup_p3_point_line_divisor(Fraction(1, 5), Fraction(1, 10)),
        ),
    ]


def _fano3fold_records() -> list[ExampleRecord]:
    return [
        ExampleRecord(
            name="fano3fold-10",
            note=(
                "Fano threefold: blow-up along a line of the projectivization of "
                "O + O(1,1) over the quadric surface; anticanonical polytope with "
                "10 vertices and 7 facets"
            ),
            expected=StabilityStatus.STABLE,
            vertices=FANO3FOLD_10_VERTICES,
        )
    ]


def all_records() -> tuple[ExampleRecord, ...]:
    records = (
        _pn_records()
        + _threefold_records()
        + _hirzebruch_records()
        + _blowup_records()
        + _surface_misc_records()
        + _nonconvex_region_records()
        + _fano3fold_records()
    )
    return tuple(records)


def record_by_name(name: str) -> ExampleRecord:
    for record in all_records():
        if record.name == name:
            return record
    raise KeyError(f"no example named {name!r}")


def resolve(record: ExampleRecord) -> tuple[Fan, Divisor]:
    if record.vertices is not None:
        return normal_fan_from_vertices(record.vertices)
    assert record.fan is not None and record.divisor is not None
    return record.fan, record.divisor


def run_example(name: str) -> tuple[ExampleRecord, StabilityVerdict]:
    record = record_by_name(name)
    fan, divisor = resolve(record)
    return record, check_tangent(fan, divisor)
