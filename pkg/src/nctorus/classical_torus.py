"""Poisson algebra of finitely supported Fourier series on the torus.

Series are maps m -> phi_m over Z^2 with e_m = exp(i m.x), x in [0, 2 pi]^2.
Basis series have coefficients in Q(i), so the default field is the exact
Q(zeta_4); the approximate backend is used for random sample tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import mpmath

from .bialgebra import BasisLabel, StructureConstants, VerificationReport
from .scalar import APPROX, cyclo_field

__all__ = [
    "FourierSeries",
    "ClassicalBasisLabel",
    "QI",
    "wedge",
    "poisson",
    "inner",
    "classical_basis",
    "window_labels",
    "decompose",
    "decompose_by_pairing",
    "gram_check",
    "bracket_table_check",
    "mixed_constants",
    "recombine",
    "MixedResult",
    "schwartz_seminorm",
    "classical_limit_gap",
    "classical_limit_check",
]

QI = cyclo_field(4)


def wedge(k, m) -> int:
    return k[0] * m[1] - k[1] * m[0]


def _neg(m):
    return (-m[0], -m[1])


def _add(m, n):
    return (m[0] + n[0], m[1] + n[1])


def _sub(m, n):
    return (m[0] - n[0], m[1] - n[1])


class FourierSeries:
    """Finite sum of phi_m e_m with coefficients in ``field``."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=None, field=QI):
        self.field = field
        out = {}
        for m, v in (coeffs or {}).items():
            v = field.coerce(v)
            if not field.is_zero(v):
                out[(int(m[0]), int(m[1]))] = v
        self.coeffs = out

    @classmethod
    def mode(cls, m, coeff=1, field=QI) -> "FourierSeries":
        return cls({tuple(m): coeff}, field)

    @classmethod
    def constant(cls, c, field=QI) -> "FourierSeries":
        return cls({(0, 0): c}, field)

    def __getitem__(self, m):
        return self.coeffs.get(tuple(m), self.field.zero)

    @property
    def support(self) -> list:
        return sorted(self.coeffs)

    def _check(self, other: "FourierSeries"):
        if other.field is not self.field:
            raise ValueError("series over different fields")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            out[m] = out[m] + v if m in out else v
        return FourierSeries(out, self.field)

    def __neg__(self):
        return FourierSeries({m: -v for m, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FourierSeries":
        c = self.field.coerce(c)
        return FourierSeries({m: c * v for m, v in self.coeffs.items()}, self.field)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        """Pointwise product, i.e. convolution of coefficients."""
        if not isinstance(other, FourierSeries):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for k, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                km = _add(k, m)
                out[km] = out[km] + a * b if km in out else a * b
        return FourierSeries(out, self.field)

    def conj(self) -> "FourierSeries":
        """Pointwise complex conjugate: coefficient conj(phi_{-m}) at m."""
        return FourierSeries({_neg(m): self.field.conj(v) for m, v in self.coeffs.items()}, self.field)

    def derivative(self, axis: int) -> "FourierSeries":
        i = self.field.i
        return FourierSeries({m: i * m[axis] * v for m, v in self.coeffs.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return self.distance(other) <= self.field.tol

    def distance(self, other: "FourierSeries") -> float:
        diff = self - other
        return max((self.field.residual(v) for v in diff.coeffs.values()), default=0.0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real_valued(self) -> bool:
        return self.distance(self.conj()) <= self.field.tol

    def in_b(self) -> bool:
        """Support in m1 >= 0 and psi*_{0,m2} = -psi_{0,-m2}."""
        F = self.field
        if any(m[0] < 0 for m in self.coeffs):
            return False
        for m, v in self.coeffs.items():
            if m[0] == 0 and F.residual(F.conj(v) + self[_neg(m)]) > F.tol:
                return False
        return True

    def evaluate(self, x1: float, x2: float) -> complex:
        F = self.field
        return sum(
            (F.to_complex(v) * complex(math.cos(m[0] * x1 + m[1] * x2), math.sin(m[0] * x1 + m[1] * x2))
             for m, v in self.coeffs.items()),
            0j,
        )

    def to_approx(self) -> "FourierSeries":
        return FourierSeries({m: self.field.to_complex(v) for m, v in self.coeffs.items()}, APPROX)

    def __repr__(self) -> str:
        terms = " + ".join(f"({self.field.to_complex(self.coeffs[m]):.6g}) e{m}" for m in self.support)
        return f"FourierSeries({terms or '0'})"


def poisson(phi: FourierSeries, psi: FourierSeries) -> FourierSeries:
    """{e_k, e_m} = -(k ^ m) e_{k+m}, extended bilinearly."""
    phi._check(psi)
    out: dict = {}
    for k, a in phi.coeffs.items():
        for m, b in psi.coeffs.items():
            w = wedge(k, m)
            if w:
                km = _add(k, m)
                t = a * b * (-w)
                out[km] = out[km] + t if km in out else t
    return FourierSeries(out, phi.field)


def inner(phi: FourierSeries, psi: FourierSeries):
    """Im of the mean of phi psi, i.e. (1/2i) sum (phi_m psi_-m - conj(phi_-m) conj(psi_m))."""
    phi._check(psi)
    F = phi.field
    s = F.zero
    for m, a in phi.coeffs.items():
        b = psi.coeffs.get(_neg(m))
        if b is not None:
            s = s + a * b
    return F.imag(s)


# ---------------------------------------------------------------------------
# bases

_FAMILIES = ("U", "Ut", "T", "Tt")
_DUAL = {"U": "T", "Ut": "Tt", "T": "U", "Tt": "Ut"}


@dataclass(frozen=True, order=True)
class ClassicalBasisLabel:
    family: str
    m: tuple

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        m1, m2 = self.m
        positive = m1 > 0 or (m1 == 0 and m2 > 0)
        zero_ok = self.m == (0, 0) and self.family in ("U", "T")
        if not (positive or zero_ok):
            raise ValueError(f"{self.family}{self.m} is not admissible")

    @property
    def side(self) -> str:
        return "A" if self.family in ("U", "Ut") else "B"

    @property
    def dual(self) -> "ClassicalBasisLabel":
        return ClassicalBasisLabel(_DUAL[self.family], self.m)

    @property
    def tilde(self) -> bool:
        return self.family.endswith("t")

    def __str__(self) -> str:
        return f"{self.family}({self.m[0]},{self.m[1]})"


def classical_basis(family, m=None, field=QI) -> FourierSeries:
    """U_m = cos(m.x), U~_m = sin(m.x), T^m, T~^m as coefficient maps."""
    lab = family if isinstance(family, ClassicalBasisLabel) else ClassicalBasisLabel(family, tuple(m))
    F = field
    i, half = F.i, F.rational(1, 2)
    m, mm = lab.m, _neg(lab.m)
    if lab.m == (0, 0):
        return FourierSeries.constant(F.one if lab.family == "U" else i, F)
    if lab.family == "U":
        return FourierSeries({m: half, mm: half}, F)
    if lab.family == "Ut":
        return FourierSeries({m: -i * half, mm: i * half}, F)
    if lab.m[0] > 0:
        c = 2 * i if lab.family == "T" else F.rational(2)
        return FourierSeries({m: c}, F)
    if lab.family == "T":
        return FourierSeries({m: i, mm: i}, F)
    return FourierSeries({m: F.one, mm: -F.one}, F)


def window_labels(W: int, side: str | None = None) -> list[ClassicalBasisLabel]:
    """All admissible labels with max(|m1|, |m2|) <= W, in (family, m) order."""
    out = []
    for fam in _FAMILIES:
        for m in product(range(0, W + 1), range(-W, W + 1)):
            try:
                lab = ClassicalBasisLabel(fam, m)
            except ValueError:
                continue
            if side is None or lab.side == side:
                out.append(lab)
    return sorted(out)


def decompose(phi: FourierSeries) -> dict:
    """Coordinates of phi in the real basis U, U~, T, T~ by coefficient matching.

    Every complex series splits uniquely as a + b with a real valued and b in
    the B subalgebra; the returned coordinates are real field elements.
    """
    F = phi.field
    re, im, conj = F.real, F.imag, F.conj
    half = F.rational(1, 2)
    out: dict = {}

    def put(fam, m, v):
        if not F.is_zero(v):
            out[ClassicalBasisLabel(fam, m)] = v

    seen = set()
    for k in phi.coeffs:
        m = k if (k[0] > 0 or (k[0] == 0 and k[1] >= 0)) else _neg(k)
        if m in seen:
            continue
        seen.add(m)
        p, q = phi[m], phi[_neg(m)]
        if m == (0, 0):
            put("U", m, re(p))
            put("T", m, im(p))
        elif m[0] > 0:
            # a_m = conj(q) is forced by a_{-m} = q; the rest of phi_m lies in B
            b = p - conj(q)
            put("U", m, 2 * re(q))
            put("Ut", m, 2 * im(q))
            put("T", m, im(b) * half)
            put("Tt", m, re(b) * half)
        else:
            a = (p + conj(q)) * half
            b = (p - conj(q)) * half
            put("U", m, 2 * re(a))
            put("Ut", m, -2 * im(a))
            put("T", m, im(b))
            put("Tt", m, re(b))
    return out


def decompose_by_pairing(phi: FourierSeries, labels) -> dict:
    """Coordinates via the dual basis: coefficient of X is <dual(X), phi>."""
    F = phi.field
    out = {}
    for lab in labels:
        v = inner(classical_basis(lab.dual, field=F), phi)
        if not F.is_zero(v):
            out[lab] = v
    return out


def recombine(coords: dict, field=QI) -> FourierSeries:
    out = FourierSeries({}, field)
    for lab, v in coords.items():
        out = out + classical_basis(lab, field=field).scale(v)
    return out


def gram_check(W: int = 4, field=QI) -> VerificationReport:
    """<A_i, B_j> is the identity under X -> dual(X); A and B are isotropic."""
    labels = window_labels(W)
    series = {lab: classical_basis(lab, field=field) for lab in labels}
    worst, failures = 0.0, []
    for x, y in product(labels, repeat=2):
        expect = 1 if x.side != y.side and y == x.dual else 0
        r = field.residual(inner(series[x], series[y]) - field.coerce(expect))
        if r > field.tol:
            failures.append((str(x), str(y)))
        worst = max(worst, r)
    return VerificationReport.from_residuals(
        "classical_gram", worst, field.tol, failures, {"window": W, "labels": len(labels)}
    )


# ---------------------------------------------------------------------------
# printed bracket tables


def _terms(*pairs):
    """Linear combination from (coefficient, family, m) triples, skipping zeros."""
    return [(c, fam, m) for c, fam, m in pairs if c]


def _a_rule(x: ClassicalBasisLabel, y: ClassicalBasisLabel):
    """Printed right side of {x, y} for x, y on the A side, or None if not printed."""
    m, n = x.m, y.m
    if m[0] == 0 and n[0] == 0:
        return "both_first_zero", []
    fx, fy = x.family, y.family
    h = Fraction(1, 2)
    w = wedge(m, n)
    if m[0] != n[0]:
        sub = _sub(m, n) if m[0] > n[0] else _sub(n, m)
        flip = 1 if m[0] > n[0] else -1
        if (fx, fy) == ("U", "U"):
            return "UU", _terms((-h * w, "U", _add(m, n)), (h * w, "U", sub))
        if (fx, fy) == ("U", "Ut"):
            return "UUt", _terms((-h * w, "Ut", _add(m, n)), (-h * w * flip, "Ut", sub))
        if (fx, fy) == ("Ut", "Ut"):
            return "UtUt", _terms((h * w, "U", _add(m, n)), (h * w, "U", sub))
        return None
    if m[1] == n[1]:
        return None
    c = Fraction(m[0] * (n[1] - m[1]), 2)
    sub = (0, abs(m[1] - n[1]))
    flip = 1 if m[1] > n[1] else -1
    if (fx, fy) == ("U", "U"):
        return "U0U", _terms((-c, "U", _add(m, n)), (c, "U", sub))
    if (fx, fy) == ("U", "Ut"):
        return "U0Ut", _terms((-c, "Ut", _add(m, n)), (-c * flip, "Ut", sub))
    if (fx, fy) == ("Ut", "Ut"):
        return "Ut0Ut", _terms((c, "U", _add(m, n)), (c, "U", sub))
    return None


def _b_rule(x: ClassicalBasisLabel, y: ClassicalBasisLabel):
    m, n = x.m, y.m
    if m[0] == 0 and n[0] == 0:
        return "both_first_zero", []
    fx, fy = x.family, y.family
    w = wedge(m, n)
    if m[0] > 0 and n[0] > 0:
        table = {("T", "T"): (2, "Tt", "TT"), ("T", "Tt"): (-2, "T", "TTt"), ("Tt", "Tt"): (-2, "Tt", "TtTt")}
        if (fx, fy) not in table:
            return None
        c, fam, name = table[(fx, fy)]
        return name, _terms((c * w, fam, _add(m, n)))
    if m[0] == 0 and m[1] > 0 and n[0] > 0:
        c = m[1] * n[0]
        up, down = (n[0], n[1] + m[1]), (n[0], n[1] - m[1])
        if (fx, fy) == ("T", "T"):
            return "T0T", _terms((-c, "Tt", up), (c, "Tt", down))
        if (fx, fy) == ("T", "Tt"):
            return "T0Tt", _terms((c, "T", up), (-c, "T", down))
        if (fx, fy) == ("Tt", "T"):
            return "Tt0T", _terms((c, "T", up), (c, "T", down))
        if (fx, fy) == ("Tt", "Tt"):
            return "Tt0Tt", _terms((c, "Tt", up), (c, "Tt", down))
    return None


def _printed_rhs(x, y):
    """(rule name, terms) for {x, y}; uses antisymmetry when only {y, x} is printed."""
    rule = _a_rule if x.side == "A" else _b_rule
    got = rule(x, y)
    if got is not None:
        return got
    got = rule(y, x)
    if got is not None:
        name, terms = got
        return name + " (swapped)", [(-c, fam, m) for c, fam, m in terms]
    return None


def _series_of(terms, field) -> FourierSeries:
    out = FourierSeries({}, field)
    for c, fam, m in terms:
        out = out + classical_basis(fam, m, field).scale(field.coerce(Fraction(c)))
    return out


def bracket_table_check(W: int = 4, field=QI) -> VerificationReport:
    """Evaluate the printed A and B bracket tables on every pair in the window.

    Pairs with a constant (U_0 or T^0) or with x = y are not covered by any
    printed display; they are checked against zero under their own heading.
    """
    worst, failures = 0.0, []
    counts: dict = {}
    for side in ("A", "B"):
        labels = window_labels(W, side)
        series = {lab: classical_basis(lab, field=field) for lab in labels}
        for x, y in product(labels, repeat=2):
            got = poisson(series[x], series[y])
            rhs = _printed_rhs(x, y)
            if rhs is None:
                if x.m == (0, 0) or y.m == (0, 0):
                    name, expect = "constant", FourierSeries({}, field)
                elif x.m == y.m:
                    name, expect = "same_mode", FourierSeries({}, field)
                else:
                    name, expect = "unprinted", None
                if expect is None:
                    failures.append((str(x), str(y), "no printed rule"))
                    worst = math.inf
                    counts[name] = counts.get(name, 0) + 1
                    continue
            else:
                name, terms = rhs
                expect = _series_of(terms, field)
            counts[name] = counts.get(name, 0) + 1
            r = got.distance(expect)
            if r > field.tol:
                failures.append((str(x), str(y), name))
            worst = max(worst, r)
    return VerificationReport.from_residuals(
        "classical_bracket_tables", worst, field.tol, failures, {"window": W, "cases": dict(sorted(counts.items()))}
    )


# ---------------------------------------------------------------------------
# mixed constants


def _admissible_tu(m, n):
    """Printed admissible labels for {T^m, U_n}: sets of T-labels and U~-labels."""
    if m == (0, 0) or n == (0, 0) or (m[0] == 0 and n[0] == 0):
        return set(), set()
    if m[0] > 0 and n[0] > 0 and m[0] != n[0]:
        if m[0] < n[0]:
            return {_add(n, m), _sub(n, m)}, {_sub(n, m)}
        return {_add(m, n), _sub(m, n)}, set()
    if m[0] == n[0]:
        if m[1] == n[1]:
            return set(), set()
        k = (0, abs(n[1] - m[1]))
        return {_add(m, n), k}, {k}
    if m[0] == 0:
        up, down = (n[0], n[1] + m[1]), (n[0], n[1] - m[1])
        return {up, down}, {up, down}
    up, down = (m[0], m[1] + n[1]), (m[0], m[1] - n[1])
    return {up, down}, set()


@dataclass
class MixedResult:
    constants: StructureConstants
    report: VerificationReport
    expansions: dict = dc_field(default_factory=dict)


def mixed_constants(W: int = 3, field=QI) -> MixedResult:
    """Solve {X^a, X_b} = Gamma_bd^a X^d - Delta_b^ad X_d for the window.

    Gamma_bd^a is read off the B part and Delta_b^ad off the A part of the
    expansion; both are then compared with the A and B bracket tables.
    """
    if W < 2:
        raise ValueError("window must be at least 2")
    a_labels = window_labels(W, "A")
    pos: dict = {}
    names: list = []

    def idx(lab: ClassicalBasisLabel) -> int:
        key = lab if lab.side == "A" else lab.dual
        if key not in pos:
            pos[key] = len(names)
            names.append(key)
        return pos[key]

    for lab in a_labels:
        idx(lab)
    basis = {}

    def ser(lab):
        s = basis.get(lab)
        if s is None:
            s = basis[lab] = classical_basis(lab, field=field)
        return s

    gamma_entries: dict = {}
    delta_entries: dict = {}
    expansions: dict = {}
    worst, failures = 0.0, []
    admissible_violations = []
    for bl in a_labels:
        for xa in a_labels:
            ta = xa.dual
            coords = decompose(poisson(ser(ta), ser(bl)))
            expansions[(str(ta), str(bl))] = {str(k): field.to_complex(v) for k, v in sorted(coords.items())}
            a, b = idx(xa), idx(bl)
            t_part = {k: v for k, v in coords.items() if k.side == "B"}
            u_part = {k: v for k, v in coords.items() if k.side == "A"}
            for k, v in t_part.items():
                gamma_entries[(b, idx(k.dual), a)] = v
            for k, v in u_part.items():
                delta_entries[(a, idx(k), b)] = -v
            if (ta.family, bl.family) == ("T", "U"):
                t_ok, u_ok = _admissible_tu(ta.m, bl.m)
                extra = [str(k) for k in t_part if k.family != "T" or k.m not in t_ok]
                extra += [str(k) for k in u_part if k.family != "Ut" or k.m not in u_ok]
                if extra:
                    admissible_violations.append((str(ta), str(bl), extra))
            # consistency with the A and B tables
            for k, v in t_part.items():
                direct = decompose_by_pairing(poisson(ser(bl), ser(k.dual)), [xa]).get(xa, field.zero)
                r = field.residual(direct - v)
                if r > field.tol:
                    failures.append((str(ta), str(bl), "gamma", str(k)))
                worst = max(worst, r)
            for k, v in u_part.items():
                direct = decompose_by_pairing(poisson(ser(ta), ser(k.dual)), [bl.dual]).get(bl.dual, field.zero)
                r = field.residual(direct + v)
                if r > field.tol:
                    failures.append((str(ta), str(bl), "delta", str(k)))
                worst = max(worst, r)
            # every window label absent from the expansion must have zero constants
            for xd in a_labels:
                if xd.dual not in t_part:
                    g = decompose_by_pairing(poisson(ser(bl), ser(xd)), [xa]).get(xa, field.zero)
                    r = field.residual(g)
                    if r > field.tol:
                        failures.append((str(ta), str(bl), "missing gamma", str(xd.dual)))
                    worst = max(worst, r)
                if xd not in u_part:
                    d = decompose_by_pairing(poisson(ser(ta), ser(xd.dual)), [bl.dual]).get(bl.dual, field.zero)
                    r = field.residual(d)
                    if r > field.tol:
                        failures.append((str(ta), str(bl), "missing delta", str(xd)))
                    worst = max(worst, r)
    labels = [BasisLabel(lab.family, lab.m) for lab in names]
    sc = StructureConstants(labels, field)
    for (b, d, a), v in gamma_entries.items():
        sc.gamma.setdefault((b, d), {})[a] = v
    for (a, d, b), v in delta_entries.items():
        sc.delta.setdefault((a, d), {})[b] = v
    details = {
        "window": W,
        "pairs": len(a_labels) ** 2,
        "labels": len(labels),
        "underdetermined": [],
        "admissible_violations": admissible_violations[:20],
        "admissible_violation_count": len(admissible_violations),
    }
    report = VerificationReport.from_residuals("classical_mixed_constants", worst, field.tol, failures, details)
    return MixedResult(sc, report, expansions)


# ---------------------------------------------------------------------------
# norms and the classical limit


def schwartz_seminorm(phi: FourierSeries, k: int) -> float:
    """sup |phi_m| (1 + |m1| + |m2|)^k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    F = phi.field
    return max((abs(F.to_complex(v)) * (1 + abs(m[0]) + abs(m[1])) ** k for m, v in phi.coeffs.items()), default=0.0)


def classical_limit_gap(k: int, N: int, dps: int = 50) -> tuple[float, float]:
    """(|(N/2 pi) 2 sin(pi k/N) - k|, pi^2 k^3 / (6 N^2)) in high precision."""
    with mpmath.workdps(dps):
        lhs = abs(N / (2 * mpmath.pi) * 2 * mpmath.sin(mpmath.pi * k / N) - k)
        rhs = mpmath.pi ** 2 * k ** 3 / (6 * mpmath.mpf(N) ** 2)
        return lhs, rhs


def classical_limit_check(ks=range(1, 11), Ns=(10**2, 10**3, 10**4)) -> VerificationReport:
    worst, failures, rows = -math.inf, [], []
    for N in Ns:
        for k in ks:
            lhs, rhs = classical_limit_gap(k, N)
            excess = float(lhs - rhs)
            rows.append({"N": N, "k": k, "gap": float(lhs), "bound": float(rhs)})
            if excess > 0:
                failures.append((N, k))
            worst = max(worst, excess)
    return VerificationReport.from_residuals(
        "classical_limit", max(worst, 0.0), 0.0, failures, {"max_excess_over_bound": worst, "rows": rows}
    )
