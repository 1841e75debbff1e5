"""Taft Hopf algebras T_N and their Galois objects A_s.

T_N is spanned by R^a G^b and A_s by r^a g^b (0 <= a, b < N), always kept in
the normal order letter-then-g.  Relations: R^N = 0 (resp. r^N = s), G^N = 1
and RG = omega GR, so G^b R^c = omega^(-bc) R^c G^b.

Scalars live in Q(zeta_L) with L = lcm(N, 4), so Gaussian rational s is exact;
any complex s works with ``APPROX``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .bialgebra import VerificationReport
from .scalar import APPROX, ApproxField, cyclo_field

__all__ = [
    "Algebra",
    "TaftElement",
    "GaloisElement",
    "TensorElement",
    "taft_algebra",
    "galois_algebra",
    "default_field",
    "parse_s",
    "rewrite_word",
    "hopf_structure",
    "verify_hopf",
    "coaction",
    "verify_comodule",
    "coinvariants",
    "canonical_map",
    "translation",
    "translation_map_check",
    "rank",
    "taft_report",
]


def default_field(N: int):
    return cyclo_field(N * 4 // math.gcd(N, 4))


def parse_s(text, field):
    """'0', '-1', 'i', '1/2-3i', '0.3+0.1j', ... as a scalar of ``field``.

    Exact fields take Gaussian rationals only."""
    if not isinstance(text, str):
        return field.coerce(text)
    t = text.strip().replace(" ", "").replace("j", "i")
    if field.exact:
        re_part, im_part = _split_gaussian(t)
        return field.rational(re_part) + field.rational(im_part) * field.i
    return complex(t.replace("i", "j")) if "i" in t else complex(float(t))


def _split_gaussian(t: str) -> tuple[Fraction, Fraction]:
    if not t:
        raise ValueError("empty value for s")
    if not t.endswith("i"):
        return Fraction(t), Fraction(0)
    body = t[:-1]
    # split at the last sign that is not a leading sign or an exponent sign
    cut = max((k for k, ch in enumerate(body) if ch in "+-" and k > 0 and body[k - 1] not in "eE"), default=0)
    re_text, im_text = (body[:cut], body[cut:]) if cut else ("0", body)
    if im_text in ("", "+"):
        im_text = "1"
    elif im_text == "-":
        im_text = "-1"
    return Fraction(re_text), Fraction(im_text)


@dataclass(frozen=True)
class Algebra:
    """r^N = s, g^N = 1, rg = omega gr over ``field``; s = 0 gives T_N."""

    N: int
    s: object
    field: object
    name: str = "A"
    letters: tuple = ("r", "g")

    @property
    def omega(self):
        return self.field.zeta(1, self.N)

    def basis(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.N) for b in range(self.N)]

    def index(self, mono: tuple[int, int]) -> int:
        return mono[0] * self.N + mono[1]

    def mono_mul(self, x: tuple[int, int], y: tuple[int, int]):
        """(coefficient, monomial) of x*y, or (zero, None)."""
        F, N = self.field, self.N
        (a, b), (c, d) = x, y
        coeff = self.field.zeta(-b * c, N)
        e = a + c
        if e >= N:
            if F.is_zero(self.s):
                return F.zero, None
            coeff = coeff * self.s
            e -= N
        return coeff, (e, (b + d) % N)

    def element(self, coeffs) -> "Element":
        cls = TaftElement if self.name == "T" else GaloisElement
        return cls(self, _clean(self.field, coeffs))

    def one(self) -> "Element":
        return self.element({(0, 0): self.field.one})

    def mono(self, a: int, b: int) -> "Element":
        return self.element({(a, b % self.N): self.field.one})

    def gens(self) -> tuple["Element", "Element"]:
        return self.mono(1, 0), self.mono(0, 1)

    def __str__(self) -> str:
        return f"{self.name}(N={self.N}, s={self.s})" if self.name != "T" else f"T_{self.N}"


def taft_algebra(N: int, field=None) -> Algebra:
    if N < 2:
        raise ValueError("N must be at least 2")
    field = field or default_field(N)
    return Algebra(N, field.zero, field, "T", ("R", "G"))


def galois_algebra(N: int, s=1, field=None) -> Algebra:
    if N < 2:
        raise ValueError("N must be at least 2")
    field = field or default_field(N)
    return Algebra(N, parse_s(s, field) if isinstance(s, str) else field.coerce(s), field, "A")


def s_label(F, s) -> str:
    z = F.to_complex(s)
    re, im = (0.0 if abs(z.real) < 1e-15 else z.real), (0.0 if abs(z.imag) < 1e-15 else z.imag)
    if im == 0:
        return f"{re:g}"
    unit = {1.0: "i", -1.0: "-i"}
    if re == 0:
        return unit.get(im, f"{im:g}i")
    return f"{re:g}" + {1.0: "+i", -1.0: "-i"}.get(im, f"{im:+g}i")


def _clean(F, coeffs: dict) -> dict:
    return {k: v for k, v in coeffs.items() if not F.is_zero(v)}


def _acc(F, out: dict, key, value) -> None:
    out[key] = out.get(key, F.zero) + value


@dataclass(frozen=True)
class Element:
    alg: Algebra
    coeffs: dict = dc_field(default_factory=dict)

    def __add__(self, other):
        F = self.alg.field
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _acc(F, out, k, v)
        return self.alg.element(out)

    def __neg__(self):
        return self.alg.element({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self.alg.element({k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        F = self.alg.field
        out: dict = {}
        for x, cx in self.coeffs.items():
            for y, cy in other.coeffs.items():
                c, m = self.alg.mono_mul(x, y)
                if m is not None:
                    _acc(F, out, m, c * cx * cy)
        return self.alg.element(out)

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def residual(self, other) -> float:
        F = self.alg.field
        keys = set(self.coeffs) | set(other.coeffs)
        return max((F.residual(self.coeffs.get(k, F.zero) - other.coeffs.get(k, F.zero)) for k in keys), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg == other.alg and self.residual(other) <= (0 if self.alg.field.exact else self.alg.field.tol)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        x, y = self.alg.letters
        if not self.coeffs:
            return "0"
        terms = []
        for (a, b), c in sorted(self.coeffs.items()):
            word = "".join(f"{l}^{e}" if e > 1 else l for l, e in ((x, a), (y, b)) if e) or "1"
            terms.append(f"({s_label(self.alg.field, c)})*{word}")
        return " + ".join(terms)


class TaftElement(Element):
    pass


class GaloisElement(Element):
    pass


@dataclass(frozen=True)
class TensorElement:
    """Element of factors[0] (x) factors[1] (x) ... keyed by tuples of monomials."""

    factors: tuple
    coeffs: dict = dc_field(default_factory=dict)

    @classmethod
    def pure(cls, *elements: Element) -> "TensorElement":
        F = elements[0].alg.field
        out: dict = {}
        for combo in itertools.product(*(e.coeffs.items() for e in elements)):
            c = F.one
            for _, v in combo:
                c = c * v
            _acc(F, out, tuple(m for m, _ in combo), c)
        return cls(tuple(e.alg for e in elements), _clean(F, out))

    @property
    def field(self):
        return self.factors[0].field

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _acc(self.field, out, k, v)
        return TensorElement(self.factors, _clean(self.field, out))

    def __neg__(self):
        return TensorElement(self.factors, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorElement(self.factors, _clean(self.field, {k: c * v for k, v in self.coeffs.items()}))

    def __mul__(self, other):
        self._check(other)
        F = self.field
        out: dict = {}
        for x, cx in self.coeffs.items():
            for y, cy in other.coeffs.items():
                c, key = cx * cy, []
                for alg, u, v in zip(self.factors, x, y):
                    k, m = alg.mono_mul(u, v)
                    if m is None:
                        break
                    c = c * k
                    key.append(m)
                else:
                    _acc(F, out, tuple(key), c)
        return TensorElement(self.factors, _clean(F, out))

    def _check(self, other) -> None:
        if self.factors != other.factors:
            raise ValueError("tensor factors differ")

    def residual(self, other) -> float:
        self._check(other)
        F = self.field
        keys = set(self.coeffs) | set(other.coeffs)
        return max((F.residual(self.coeffs.get(k, F.zero) - other.coeffs.get(k, F.zero)) for k in keys), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.factors == other.factors and self.residual(other) <= (0 if self.field.exact else self.field.tol)

    __hash__ = None


def _linear(f, x: Element, target: tuple) -> TensorElement:
    """Extend f (defined on monomials, returning TensorElements) linearly."""
    out = TensorElement(target)
    for m, c in x.coeffs.items():
        out = out + f(m).scale(c)
    return out


def rewrite_word(alg: Algebra, word: str) -> Element:
    """Normal form of a word in the two letters by adjacent swaps.

    Slow and independent of ``Algebra.mono_mul``; used as an oracle.
    ``word`` uses 'x' for the first generator and 'y' for the second."""
    F, N = alg.field, alg.N
    coeff, letters = F.one, list(word)
    # bubble every 'x' to the left past 'y': yx = omega^-1 xy
    done = False
    while not done:
        done = True
        for k in range(len(letters) - 1):
            if letters[k] == "y" and letters[k + 1] == "x":
                letters[k], letters[k + 1] = "x", "y"
                coeff = coeff * F.zeta(-1, N)
                done = False
    a, b = letters.count("x"), letters.count("y")
    while a >= N:
        coeff, a = coeff * alg.s, a - N
    return alg.element({(a, b % N): coeff})


# -- Hopf structure ---------------------------------------------------------


@dataclass
class HopfStructure:
    T: Algebra

    def __post_init__(self):
        T = self.T
        R, G = T.gens()
        self._dR = TensorElement.pure(T.one(), R) + TensorElement.pure(R, G)
        self._dG = TensorElement.pure(G, G)
        # S(R) = -R G^-1, S(G) = G^-1 = G^(N-1)
        self._sR = -(R * T.mono(0, -1))
        self._sG = T.mono(0, -1)
        self._cache: dict = {}

    def coproduct_mono(self, m) -> TensorElement:
        if m not in self._cache:
            a, b = m
            out = TensorElement.pure(self.T.one(), self.T.one())
            for _ in range(a):
                out = out * self._dR
            for _ in range(b):
                out = out * self._dG
            self._cache[m] = out
        return self._cache[m]

    def coproduct(self, x: Element) -> TensorElement:
        return _linear(self.coproduct_mono, x, (self.T, self.T))

    def counit(self, x: Element):
        F = self.T.field
        total = F.zero
        for m, c in x.coeffs.items():
            total = total + c * self.counit_mono(m)
        return total

    def counit_mono(self, m):
        # eps(R) = 0, eps(G) = 1
        return self.T.field.one if m[0] == 0 else self.T.field.zero

    def antipode_mono(self, m) -> Element:
        a, b = m
        return self._sG**b * self._sR**a

    def antipode(self, x: Element) -> Element:
        out = self.T.element({})
        for m, c in x.coeffs.items():
            out = out + self.antipode_mono(m).scale(c)
        return out


def hopf_structure(N: int, field=None) -> HopfStructure:
    """Coproduct, counit and antipode of T_N on the full monomial basis."""
    return HopfStructure(taft_algebra(N, field))


def _apply_left(f, t: TensorElement, new_left: tuple) -> TensorElement:
    """(f (x) id ...) applied to t, with f: monomial -> TensorElement over new_left."""
    F = t.field
    out: dict = {}
    for key, c in t.coeffs.items():
        for k2, c2 in f(key[0]).coeffs.items():
            _acc(F, out, k2 + key[1:], c * c2)
    return TensorElement(new_left + t.factors[1:], _clean(F, out))


def _apply_right(f, t: TensorElement, new_right: tuple) -> TensorElement:
    F = t.field
    out: dict = {}
    for key, c in t.coeffs.items():
        for k2, c2 in f(key[-1]).coeffs.items():
            _acc(F, out, key[:-1] + k2, c * c2)
    return TensorElement(t.factors[:-1] + new_right, _clean(F, out))


def _multiply_out(alg: Algebra, t: TensorElement, left_map=None, right_map=None) -> Element:
    """m((f (x) g) t) for a two-fold tensor over alg."""
    out = alg.element({})
    for (u, v), c in t.coeffs.items():
        x = left_map(u) if left_map else alg.mono(*u)
        y = right_map(v) if right_map else alg.mono(*v)
        out = out + (x * y).scale(c)
    return out


def _tol(field) -> float:
    return 0.0 if field.exact else field.tol


def verify_hopf(N: int, field=None) -> VerificationReport:
    """Exhaustive Hopf algebra axioms on the monomial basis of T_N."""
    h = hopf_structure(N, field)
    T, F = h.T, h.T.field
    basis = T.basis()
    worst, failures = 0.0, []
    counts = dict.fromkeys(("coassociativity", "counit", "antipode", "compatibility", "counit_multiplicative"), 0)

    def record(kind, res, where):
        nonlocal worst
        counts[kind] += 1
        worst = max(worst, res)
        if res > _tol(F):
            failures.append((kind, where, res))

    TT = (T, T)
    for m in basis:
        d = h.coproduct_mono(m)
        lhs = _apply_left(h.coproduct_mono, d, TT)
        rhs = _apply_right(h.coproduct_mono, d, TT)
        record("coassociativity", lhs.residual(rhs), m)

        x = T.mono(*m)
        left = T.element({})
        right = T.element({})
        for (u, v), c in d.coeffs.items():
            left = left + T.mono(*v).scale(c * h.counit_mono(u))
            right = right + T.mono(*u).scale(c * h.counit_mono(v))
        record("counit", max(left.residual(x), right.residual(x)), m)

        unit = T.one().scale(h.counit_mono(m))
        s_left = _multiply_out(T, d, left_map=h.antipode_mono)
        s_right = _multiply_out(T, d, right_map=h.antipode_mono)
        record("antipode", max(s_left.residual(unit), s_right.residual(unit)), m)

    for m1, m2 in itertools.product(basis, repeat=2):
        xy = T.mono(*m1) * T.mono(*m2)
        lhs = h.coproduct(xy)
        rhs = h.coproduct_mono(m1) * h.coproduct_mono(m2)
        record("compatibility", lhs.residual(rhs), (m1, m2))
        e = h.counit(xy) - h.counit_mono(m1) * h.counit_mono(m2)
        record("counit_multiplicative", F.residual(e), (m1, m2))

    return VerificationReport.from_residuals(
        f"taft_hopf_N{N}", worst, _tol(F), failures, details={"checked": counts, "dimension": len(basis)}
    )


# -- Galois objects ---------------------------------------------------------


@dataclass
class Coaction:
    A: Algebra
    T: Algebra

    def __post_init__(self):
        A, T = self.A, self.T
        r, g = A.gens()
        R, G = T.gens()
        self._dr = TensorElement.pure(A.one(), R) + TensorElement.pure(r, G)
        self._dg = TensorElement.pure(g, G)
        self._cache: dict = {}

    def mono(self, m) -> TensorElement:
        if m not in self._cache:
            a, b = m
            out = TensorElement.pure(self.A.one(), self.T.one())
            for _ in range(a):
                out = out * self._dr
            for _ in range(b):
                out = out * self._dg
            self._cache[m] = out
        return self._cache[m]

    def __call__(self, x: Element) -> TensorElement:
        return _linear(self.mono, x, (self.A, self.T))


def coaction(N: int, s, x: Element | None = None, field=None):
    """delta(r) = 1(x)R + r(x)G, delta(g) = g(x)G, multiplicative.

    Returns delta(x), or the coaction object when ``x`` is None."""
    if x is not None:
        delta = Coaction(x.alg, taft_algebra(N, x.alg.field))
        return delta(x)
    A = galois_algebra(N, s, field)
    return Coaction(A, taft_algebra(N, A.field))


def verify_comodule(N: int, s, field=None) -> VerificationReport:
    """(delta (x) id) delta = (id (x) Delta) delta, (id (x) eps) delta = id and
    multiplicativity of delta, exhaustively."""
    delta = coaction(N, s, field=field)
    A, T = delta.A, delta.T
    h = HopfStructure(T)
    F = A.field
    worst, failures = 0.0, []
    for m in A.basis():
        d = delta.mono(m)
        lhs = _apply_left(delta.mono, d, (A, T))
        rhs = _apply_right(h.coproduct_mono, d, (T, T))
        res = lhs.residual(rhs)
        back = A.element({})
        for (u, v), c in d.coeffs.items():
            back = back + A.mono(*u).scale(c * h.counit_mono(v))
        res = max(res, back.residual(A.mono(*m)))
        worst = max(worst, res)
        if res > _tol(F):
            failures.append(("coassociativity/counit", m, res))
    for m1, m2 in itertools.product(A.basis(), repeat=2):
        res = delta(A.mono(*m1) * A.mono(*m2)).residual(delta.mono(m1) * delta.mono(m2))
        worst = max(worst, res)
        if res > _tol(F):
            failures.append(("multiplicative", (m1, m2), res))
    return VerificationReport.from_residuals(f"taft_comodule_N{N}_s={s_label(F, A.s)}", worst, _tol(F), failures)


# -- linear algebra ---------------------------------------------------------


def _row_reduce(rows: list[dict], F, ncols: int):
    """Gauss-Jordan on sparse rows {col: value}; returns (reduced rows, pivot cols).

    Exact fields take the first nonzero pivot; the approximate field uses
    partial pivoting with the field tolerance."""
    rows = [dict(r) for r in rows]
    pivots: list[int] = []
    done = 0
    for col in range(ncols):
        cand = [k for k in range(done, len(rows)) if col in rows[k] and not F.is_zero(rows[k][col])]
        if not cand:
            continue
        k = max(cand, key=lambda j: abs(F.to_complex(rows[j][col]))) if not F.exact else cand[0]
        rows[done], rows[k] = rows[k], rows[done]
        piv = rows[done]
        inv = F.one / piv[col]
        piv = {c: v * inv for c, v in piv.items()}
        rows[done] = piv
        for j in range(len(rows)):
            if j != done and col in rows[j]:
                f = rows[j][col]
                row = rows[j]
                for c, v in piv.items():
                    row[c] = row.get(c, F.zero) - f * v
                rows[j] = {c: v for c, v in row.items() if not F.is_zero(v)}
        pivots.append(col)
        done += 1
    return rows[:done], pivots


def rank(columns: list[dict], F, nrows: int) -> int:
    """Rank of the matrix whose columns are sparse dicts {row: value}."""
    _, piv = _row_reduce(columns, F, nrows)
    return len(piv)


def _matrix_columns(f, domain: list, codomain_index: dict) -> list[dict]:
    cols = []
    for x in domain:
        t = f(x)
        cols.append({codomain_index[k]: v for k, v in t.coeffs.items()})
    return cols


def coinvariants(N: int, s, field=None, trivial: bool = False) -> dict:
    """Kernel of x -> delta(x) - x(x)1 on A_s; ``trivial`` swaps in x -> x(x)1."""
    delta = coaction(N, s, field=field)
    A, T = delta.A, delta.T
    F = A.field
    target = {k: i for i, k in enumerate(itertools.product(A.basis(), T.basis()))}
    one = T.one()

    def f(m):
        x = A.mono(*m)
        d = TensorElement.pure(x, one) if trivial else delta.mono(m)
        return d - TensorElement.pure(x, one)

    basis = A.basis()
    cols = _matrix_columns(f, basis, target)
    # kernel from the reduced row echelon form of the transpose system M c = 0
    rows = [dict() for _ in target]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    reduced, piv = _row_reduce([r for r in rows if r], F, len(basis))
    free = [j for j in range(len(basis)) if j not in piv]
    kernel = []
    for fj in free:
        vec = {basis[fj]: F.one}
        for row, p in zip(reduced, piv):
            if fj in row:
                vec[basis[p]] = -row[fj]
        kernel.append(A.element(vec))
    return {"dimension": len(free), "basis": kernel, "rank": len(piv), "N": N, "s": A.s}


def _chi_mono(delta: Coaction, x, y) -> TensorElement:
    A, T = delta.A, delta.T
    return TensorElement.pure(A.mono(*x), T.one()) * delta.mono(y)


def canonical_map(N: int, s, field=None) -> dict:
    """Rank of chi(x (x) y) = (x (x) 1) delta(y) on monomial bases."""
    if N not in (2, 3):
        raise ValueError("canonical_map is implemented for N in {2, 3}")
    delta = coaction(N, s, field=field)
    A, T = delta.A, delta.T
    target = {k: i for i, k in enumerate(itertools.product(A.basis(), T.basis()))}
    domain = list(itertools.product(A.basis(), A.basis()))
    cols = _matrix_columns(lambda xy: _chi_mono(delta, *xy), domain, target)
    rk = rank(cols, A.field, len(target))
    return {"N": N, "s": A.s, "rank": rk, "size": N**4, "bijective": rk == N**4}


def chi(delta: Coaction, t: TensorElement) -> TensorElement:
    out = TensorElement((delta.A, delta.T))
    for (x, y), c in t.coeffs.items():
        out = out + _chi_mono(delta, x, y).scale(c)
    return out


def translation(A: Algebra, m) -> TensorElement:
    """tau(R^a G^b) built from tau(G) = g^-1(x)g, tau(R) = 1(x)r - rg^-1(x)g.

    Products follow the translation map rule
    tau(hk) = k<1> h<1> (x) h<2> k<2>, i.e. A^op (x) A."""
    r, g = A.gens()
    g_inv = A.mono(0, -1)
    tG = TensorElement.pure(g_inv, g)
    tR = TensorElement.pure(A.one(), r) - TensorElement.pure(r * g_inv, g)

    def op_mul(u: TensorElement, v: TensorElement) -> TensorElement:
        F = A.field
        out: dict = {}
        for (u1, u2), cu in u.coeffs.items():
            for (v1, v2), cv in v.coeffs.items():
                c1, m1 = A.mono_mul(v1, u1)
                c2, m2 = A.mono_mul(u2, v2)
                if m1 is not None and m2 is not None:
                    _acc(F, out, (m1, m2), cu * cv * c1 * c2)
        return TensorElement((A, A), _clean(F, out))

    out = TensorElement.pure(A.one(), A.one())
    a, b = m
    for _ in range(a):
        out = op_mul(out, tR)
    for _ in range(b):
        out = op_mul(out, tG)
    return out


def translation_map_check(N: int, s, field=None) -> VerificationReport:
    """chi(tau(h)) = 1 (x) h on generators, and tau(h) = chi^-1(1 (x) h) for all
    monomials h by solving the linear system."""
    delta = coaction(N, s, field=field)
    A, T = delta.A, delta.T
    F = A.field
    R, G = T.gens()
    worst, failures = 0.0, []

    def record(what, res):
        nonlocal worst
        worst = max(worst, res)
        if res > _tol(F):
            failures.append((what, res))

    for name, hm, h in (("G", (0, 1), G), ("R", (1, 0), R)):
        record(f"chi(tau({name}))", chi(delta, translation(A, hm)).residual(TensorElement.pure(A.one(), h)))

    target = {k: i for i, k in enumerate(itertools.product(A.basis(), T.basis()))}
    domain = list(itertools.product(A.basis(), A.basis()))
    cols = _matrix_columns(lambda xy: _chi_mono(delta, *xy), domain, target)
    n = len(domain)
    solved = 0
    if len(target) == n:
        # augment with one column per monomial h, reduce [chi | 1(x)h]
        rhs_keys = [((0, 0), m) for m in T.basis()]
        rows = [dict() for _ in range(n)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows[i][j] = v
        for k, key in enumerate(rhs_keys):
            rows[target[key]][n + k] = F.one
        reduced, piv = _row_reduce(rows, F, n)
        if len(piv) != n:
            record("chi not invertible", float("inf"))
        else:
            for k, hm in enumerate(T.basis()):
                sol = {domain[p]: row[n + k] for row, p in zip(reduced, piv) if n + k in row}
                X = TensorElement((A, A), _clean(F, sol))
                record(f"tau{hm}", X.residual(translation(A, hm)))
                solved += 1
    return VerificationReport.from_residuals(
        f"taft_translation_N{N}_s={s_label(F, A.s)}", worst, _tol(F), failures, details={"monomials_solved": solved}
    )


def taft_report(N: int, s="1", field=None, with_rank: bool = True) -> dict:
    if field is None:
        field = default_field(N)
        try:
            s_val = parse_s(s, field)
        except ValueError:
            field = APPROX
            s_val = parse_s(s, field)
    else:
        s_val = parse_s(s, field)
    out = {
        "N": N,
        "s": str(s),
        "backend": "approx" if isinstance(field, ApproxField) else "exact",
        "hopf": verify_hopf(N, field),
        "comodule": verify_comodule(N, s_val, field),
    }
    co = coinvariants(N, s_val, field)
    out["coinvariant_dimension"] = co["dimension"]
    out["coinvariant_basis"] = [repr(b) for b in co["basis"]]
    if with_rank and N in (2, 3):
        cm = canonical_map(N, s_val, field)
        out["canonical_rank"] = cm["rank"]
        out["bijective"] = cm["bijective"]
        out["translation"] = translation_map_check(N, s_val, field)
    return out
