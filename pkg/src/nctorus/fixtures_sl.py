"""Golden SL(2,C) and SL(3,C) Manin triples with their printed structure constants.

The matrices are transcribed entry by entry rather than regenerated from
formulas, so a sign or convention slip in the generator code cannot hide
behind a matching slip in the fixture.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .bialgebra import BasisLabel, ManinTripleWitness, StructureConstants
from .matrix import SquareMatrix, pairing
from .scalar import cyclo_field

__all__ = [
    "SLFixture",
    "sl2_fixture",
    "sl3_gellmann_fixture",
    "sl3_clockshift_fixture",
    "sl3_tilde0_candidates",
    "all_fixtures",
]


@dataclass
class SLFixture:
    name: str
    witness: ManinTripleWitness
    expected: StructureConstants | None
    constants: dict = dc_field(default_factory=dict)


def _labels(names) -> list[BasisLabel]:
    return [BasisLabel("X", (str(k),)) for k in names]


def _traceless_witness(n, field, names, a_rows, b_rows) -> ManinTripleWitness:
    a = [SquareMatrix.from_rows(r, field) for r in a_rows]
    b = [SquareMatrix.from_rows(r, field) for r in b_rows]
    return ManinTripleWitness(n, field, _labels(names), a, b, ambient_real_dim=2 * (n * n - 1))


def sl2_fixture() -> SLFixture:
    """su(2) + sb(2) with X_a = -(i/2) sigma_a."""
    F = cyclo_field(4)
    i, h = F.i, F.rational(1, 2)
    a_rows = [
        [[0, -i * h], [-i * h, 0]],
        [[0, -h], [h, 0]],
        [[-i * h, 0], [0, i * h]],
    ]
    b_rows = [
        [[0, -2], [0, 0]],
        [[0, 2 * i], [0, 0]],
        [[-1, 0], [0, 1]],
    ]
    w = _traceless_witness(2, F, (1, 2, 3), a_rows, b_rows)
    # Gamma^1_23 = Gamma^2_31 = Gamma^3_12 = 1 ; Delta^23_2 = 2 = Delta^13_1
    expected = StructureConstants.from_entries(
        w.labels, F,
        gamma=[(1, 2, 0, 1), (2, 0, 1, 1), (0, 1, 2, 1)],
        delta=[(1, 2, 1, 2), (0, 2, 0, 2)],
    )
    return SLFixture("sl2", w, expected)


def sl3_gellmann_fixture() -> SLFixture:
    """su(3) in anti-hermitian Gell-Mann form, dual to sb(3,C)."""
    F = cyclo_field(12)
    i, s3 = F.i, F.sqrt(3)
    r3 = 1 / s3
    a_rows = [
        [[0, -i, 0], [-i, 0, 0], [0, 0, 0]],
        [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
        [[-i, 0, 0], [0, i, 0], [0, 0, 0]],
        [[0, 0, -i], [0, 0, 0], [-i, 0, 0]],
        [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 0, -i], [0, -i, 0]],
        [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
        [[-i * r3, 0, 0], [0, -i * r3, 0], [0, 0, 2 * i * r3]],
    ]
    h = F.rational(1, 2)
    q = 1 / (2 * s3)
    b_rows = [
        [[0, -1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, i, 0], [0, 0, 0], [0, 0, 0]],
        [[-h, 0, 0], [0, h, 0], [0, 0, 0]],
        [[0, 0, -1], [0, 0, 0], [0, 0, 0]],
        [[0, 0, i], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, -1], [0, 0, 0]],
        [[0, 0, 0], [0, 0, i], [0, 0, 0]],
        [[-q, 0, 0], [0, -q, 0], [0, 0, 2 * q]],
    ]
    w = _traceless_witness(3, F, range(1, 9), a_rows, b_rows)

    # totally antisymmetric Gamma_abc, 1-based as printed
    gamma_abc = [((1, 2, 3), 2)] + [
        (t, 1) for t in ((1, 4, 7), (1, 6, 5), (2, 4, 6), (2, 5, 7), (3, 4, 5), (3, 7, 6))
    ] + [((4, 5, 8), s3), ((6, 7, 8), s3)]
    gamma = []
    for (a, b, c), v in gamma_abc:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            gamma.append((x - 1, y - 1, z - 1, v))
    # Delta^{ab}_c entries as (a, b, c, value), 1-based
    delta_abc = [
        (1, 3, 1, 1), (2, 3, 2, 1), (6, 1, 4, 1), (7, 1, 5, 1), (6, 2, 5, 1), (2, 7, 4, 1),
        (4, 3, 4, h), (5, 3, 5, h), (3, 6, 6, h), (3, 7, 7, h),
        (8, 4, 4, s3 * h), (8, 5, 5, s3 * h), (8, 6, 6, s3 * h), (8, 7, 7, s3 * h),
    ]
    delta = [(a - 1, b - 1, c - 1, v) for a, b, c, v in delta_abc]
    expected = StructureConstants.from_entries(w.labels, F, gamma=gamma, delta=delta)
    return SLFixture("sl3-gellmann", w, expected)


def sl3_clockshift_fixture() -> SLFixture:
    """su(3) + sb(3,C) built from clock, shift and truncated shift matrices."""
    F = cyclo_field(12)
    i, w, lam = F.i, F.zeta(1, 3), F.sqrt(3)
    w2 = w * w
    third = F.rational(1, 3)
    it = i * third
    # the dual of X~_0 is i/(2 lam^2) (Q^2 - Q) = (1/(2 lam)) diag(0, 1, -1)
    c0 = 1 / (2 * lam)
    a_rows = {
        "0": [[2 * i, 0, 0], [0, -i, 0], [0, 0, -i]],
        "~0": [[0, 0, 0], [0, i * lam, 0], [0, 0, -i * lam]],
        "1": [[0, i, i], [i, 0, i], [i, i, 0]],
        "~1": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]],
        "2": [[0, i * w, i], [i * w2, 0, i * w2], [i, i * w, 0]],
        "~2": [[0, w, -1], [-w2, 0, w2], [1, -w, 0]],
        "3": [[0, i * w2, i], [i * w, 0, i * w], [i, i * w2, 0]],
        "~3": [[0, w2, -1], [-w, 0, w], [1, -w2, 0]],
    }
    s = F.rational(1, 6)
    b_rows = {
        "0": [[2 * s, 0, 0], [0, -s, 0], [0, 0, -s]],
        "~0": [[0, 0, 0], [0, c0, 0], [0, 0, -c0]],
        "1": [[0, third, third], [0, 0, third], [0, 0, 0]],
        "~1": [[0, -it, it], [0, 0, -it], [0, 0, 0]],
        "2": [[0, w * third, third], [0, 0, w2 * third], [0, 0, 0]],
        "~2": [[0, -w * it, it], [0, 0, -w2 * it], [0, 0, 0]],
        "3": [[0, w2 * third, third], [0, 0, w * third], [0, 0, 0]],
        "~3": [[0, -w2 * it, it], [0, 0, -w * it], [0, 0, 0]],
    }
    names = list(a_rows)
    wit = _traceless_witness(3, F, names, [a_rows[k] for k in names], [b_rows[k] for k in names])
    return SLFixture("sl3-clockshift", wit, None, {"lambda": "sqrt(3)", "dual_X~0_prefactor": "i/(2 lambda^2)"})


def sl3_tilde0_candidates() -> dict:
    """The two readings of the X~^0 prefactor and their pairing with X~_0."""
    F = cyclo_field(12)
    i, lam = F.i, F.sqrt(3)
    w = F.zeta(1, 3)
    Q = SquareMatrix.from_rows([[1, 0, 0], [0, w, 0], [0, 0, w * w]], F)
    xt0 = Q - Q @ Q
    diff = Q @ Q - Q
    return {
        "i/(2 lambda^2)": pairing(xt0, diff.scale(i / (2 * lam * lam))),
        "i/(2 lambda)": pairing(xt0, diff.scale(i / (2 * lam))),
    }


def all_fixtures() -> list[SLFixture]:
    return [sl2_fixture(), sl3_gellmann_fixture(), sl3_clockshift_fixture()]

