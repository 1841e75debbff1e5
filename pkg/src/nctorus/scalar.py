"""Scalar backends: exact cyclotomic arithmetic and approximate complex floats.

Both backends expose the same small field interface (``zero``, ``one``,
``zeta``, ``rational``, ``sqrt``, ``conj``, ``imag``, ``is_zero`` ...), so the
matrix and series code never needs to know which one it is running on.

Exact elements live in Q(zeta_L) and are stored as rational polynomials in
zeta_L reduced modulo the L-th cyclotomic polynomial.  The polynomial
arithmetic itself is delegated to python-flint's ``fmpq_poly``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from flint import fmpq, fmpq_poly, fmpz

__all__ = [
    "CycloField",
    "CycloScalar",
    "ApproxField",
    "APPROX",
    "cyclo_field",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "imag_part",
    "embed",
    "torus_field_order",
    "ModularImage",
]

_TINY = 1e-300


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> fmpq_poly:
    """Phi_L, obtained by dividing x^L - 1 by Phi_d for every proper divisor d."""
    if L < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = fmpq_poly([-1] + [0] * (L - 1) + [1])
    for d in _divisors(L)[:-1]:
        q, r = divmod(poly, cyclotomic_polynomial(d))
        assert r.is_zero()
        poly = q
    return poly


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (k, d) with n = k^2 d and d squarefree."""
    k, d, p = 1, 1, 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return k, d * m


def _sqrt_conductor(n: int) -> int:
    """Smallest L with sqrt(n) in Q(zeta_L)."""
    _, d = _squarefree_split(n)
    if d == 1:
        return 1
    return d if d % 4 == 1 else 4 * d


def torus_field_order(N: int) -> int:
    """Ambient cyclotomic order for the N x N rational torus.

    Needs zeta_{2N} (half powers of omega), i, and sqrt(N) (basis
    normalisation), hence lcm(4, 2N, conductor of sqrt N).
    """
    return math.lcm(4, 2 * N, _sqrt_conductor(N))


class CycloField:
    """The cyclotomic field Q(zeta_L). Use :func:`cyclo_field` to get cached instances."""

    exact = True
    tol = 0.0

    def __init__(self, L: int):
        if L < 1:
            raise ValueError("cyclotomic order must be positive")
        self.L = L
        self.modulus = cyclotomic_polynomial(L)
        self.degree = self.modulus.degree()
        self.zero = CycloScalar(self, fmpq_poly([]))
        self.one = CycloScalar(self, fmpq_poly([1]))
        self._zeta_cache: dict[int, CycloScalar] = {}

    def __repr__(self) -> str:
        return f"CycloField({self.L})"

    def __reduce__(self):
        return (cyclo_field, (self.L,))

    def element(self, coeffs) -> "CycloScalar":
        """Element with the given power-basis coefficients (reduced on entry)."""
        poly = fmpq_poly([fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs])
        return CycloScalar(self, poly % self.modulus)

    def rational(self, p, q=1) -> "CycloScalar":
        x = Fraction(p) / Fraction(q)
        return CycloScalar(self, fmpq_poly([fmpq(x.numerator, x.denominator)]))

    def coerce(self, x) -> "CycloScalar":
        if isinstance(x, CycloScalar):
            if x.field is self:
                return x
            if self.L % x.field.L:
                raise ValueError(f"cannot mix {x.field} and {self}")
            # Q(zeta_l) sits inside Q(zeta_L) via zeta_l -> zeta_L^(L/l)
            step = self.L // x.field.L
            out = self.zero
            for k, c in enumerate(x.coeffs):
                if c:
                    out = out + self.zeta(k * step) * c
            return out
        if isinstance(x, (int, Fraction)):
            return self.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def zeta(self, k: int, order: int | None = None) -> "CycloScalar":
        """exp(2 pi i k / order); ``order`` must divide L (defaults to L)."""
        if order is None:
            order = self.L
        if self.L % order:
            raise ValueError(f"zeta_{order} is not in Q(zeta_{self.L})")
        e = (k * (self.L // order)) % self.L
        z = self._zeta_cache.get(e)
        if z is None:
            z = CycloScalar(self, fmpq_poly([0] * e + [1]) % self.modulus)
            self._zeta_cache[e] = z
        return z

    @property
    def i(self) -> "CycloScalar":
        if self.L % 4:
            raise ValueError(f"i is not in Q(zeta_{self.L})")
        return self.zeta(1, 4)

    def sqrt(self, n: int) -> "CycloScalar":
        """Positive square root of the positive integer n, built from Gauss sums."""
        if n <= 0:
            raise ValueError("sqrt needs a positive integer")
        k, d = _squarefree_split(n)
        root = self.rational(k)
        p, m = 2, d
        while m > 1:
            if m % p == 0:
                root = root * self._sqrt_prime(p)
                m //= p
            p += 1
        if root * root != self.rational(n):
            raise ArithmeticError(f"sqrt({n}) computation failed in {self}")
        return root

    def _sqrt_prime(self, p: int) -> "CycloScalar":
        if p == 2:
            return self.zeta(1, 8) + self.zeta(-1, 8)
        gauss = self.zero
        for j in range(p):
            gauss = gauss + self.zeta(j * j, p)
        # gauss^2 = (-1)^((p-1)/2) p
        return gauss if p % 4 == 1 else -self.i * gauss

    def conj(self, z: "CycloScalar") -> "CycloScalar":
        return z.conjugate()

    def imag(self, z: "CycloScalar") -> "CycloScalar":
        return imag_part(z)

    def real(self, z: "CycloScalar") -> "CycloScalar":
        if self.L % 4:
            raise ValueError("real part needs i in the field")
        return (z + z.conjugate()) * self.rational(1, 2)

    def is_zero(self, z) -> bool:
        return z.poly.is_zero()

    def to_complex(self, z) -> complex:
        return embed(z)

    def residual(self, z) -> float:
        """Size of z as a float; strictly positive whenever z != 0."""
        if z.poly.is_zero():
            return 0.0
        return max(abs(embed(z)), _TINY)

    def modular_image(self, values, bound: int, real: bool = False) -> "ModularImage":
        """Reduce ``values`` into products of prime fields, see :class:`ModularImage`."""
        return ModularImage(self, values, bound, real)

    @cached_property
    def reduction_height(self) -> int:
        """max |coefficient| of x^k mod Phi_L over k < 2 deg - 1."""
        worst = 1
        for k in range(2 * self.degree - 1):
            r = fmpq_poly([0] * k + [1]) % self.modulus
            worst = max([worst] + [abs(int(c.p)) for c in r.coeffs()])
        return worst


@lru_cache(maxsize=None)
def cyclo_field(L: int) -> CycloField:
    return CycloField(L)


class CycloScalar:
    """Exact element of Q(zeta_L) in canonical (reduced) power-basis form."""

    __slots__ = ("field", "poly")

    def __init__(self, field: CycloField, poly: fmpq_poly):
        self.field = field
        self.poly = poly

    @property
    def L(self) -> int:
        return self.field.L

    @property
    def coeffs(self) -> list[Fraction]:
        c = [Fraction(int(q.p), int(q.q)) for q in self.poly.coeffs()]
        return c + [Fraction(0)] * (self.field.degree - len(c))

    def _other(self, other):
        if isinstance(other, CycloScalar):
            if other.field is not self.field:
                raise ValueError(f"cannot mix {self.field} and {other.field}")
            return other.poly
        if isinstance(other, int):
            return fmpq_poly([other])
        if isinstance(other, Fraction):
            return fmpq_poly([fmpq(other.numerator, other.denominator)])
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.field, self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.field, self.poly - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.field, o - self.poly)

    def __neg__(self):
        return CycloScalar(self.field, -self.poly)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.degree() <= 0:
            return CycloScalar(self.field, self.poly * o)
        return CycloScalar(self.field, (self.poly * o) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        g, s, _ = self.poly.xgcd(self.field.modulus)
        # Phi_L is irreducible, so g is a nonzero constant
        return CycloScalar(self.field, (s / g.coeffs()[0]) % self.field.modulus)

    def __truediv__(self, other):
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.field, o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.poly == o

    def __hash__(self):
        # equal to hash(Fraction) for rationals, so z == 1 implies equal hashes
        if self.poly.degree() <= 0:
            c = self.poly[0]
            return hash(Fraction(int(c.p), int(c.q)))
        return hash((self.field.L, self.poly.str()))

    def __bool__(self):
        return not self.poly.is_zero()

    def conjugate(self) -> "CycloScalar":
        """Complex conjugation, zeta_L -> zeta_L^(L-1)."""
        L = self.field.L
        out = [fmpq(0)] * L
        for k, c in enumerate(self.poly.coeffs()):
            out[(-k) % L] += c
        return CycloScalar(self.field, fmpq_poly(out) % self.field.modulus)

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def __complex__(self):
        return embed(self)

    def __repr__(self) -> str:
        return f"CycloScalar(L={self.field.L}, {self.poly.str()!s})"


def root_of_unity(L: int, k: int) -> CycloScalar:
    """zeta_L^k in canonical form."""
    if L < 1:
        raise ValueError("root of unity order must be positive")
    return cyclo_field(L).zeta(k)


def imag_part(z: CycloScalar) -> CycloScalar:
    """(z - conj z) / 2i, again an element of the same field."""
    field = z.field
    if field.L % 4:
        raise ValueError(f"imag_part needs 4 | L, got L={field.L}")
    return (z - z.conjugate()) * (-field.i) * Fraction(1, 2)


@lru_cache(maxsize=None)
def _powers(L: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * k / L) for k in range(L))


def embed(z: CycloScalar) -> complex:
    """Evaluate z at zeta_L = exp(2 pi i / L)."""
    pw = _powers(z.field.L)
    re = im = 0.0
    for k, c in enumerate(z.poly.coeffs()):
        if c != 0:
            cf = float(c)
            re += cf * pw[k].real
            im += cf * pw[k].imag
    return complex(re, im)


# primes below this keep dim * p^2 inside the 53-bit float mantissa for dim <= 2^12
_PRIME_CEILING = 1 << 20


@lru_cache(maxsize=None)
def _primes_one_mod(L: int, count: int) -> tuple[int, ...]:
    """The ``count`` largest primes p < 2^20 with p = 1 mod L."""
    out = []
    p = (_PRIME_CEILING - 1) // L * L + 1
    while len(out) < count:
        if p >= _PRIME_CEILING:
            p -= L
            continue
        if p < 3:
            raise ArithmeticError(f"not enough primes = 1 mod {L}")
        if fmpz(p).is_prime():
            out.append(p)
        p -= L
    return tuple(out)


def _primitive_root(p: int) -> int:
    factors, m, q = [], p - 1, 2
    while q * q <= m:
        if m % q == 0:
            factors.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")


class ModularImage:
    """Exact zero testing in Q(zeta_L) by reduction modulo several primes.

    For p = 1 mod L the cyclotomic polynomial splits into distinct linear
    factors mod p, so F_p[x]/Phi_L is isomorphic to a product of copies of
    F_p (evaluate at each primitive L-th root of unity mod p).  An element
    whose power-basis coefficients, after clearing denominators, are integers
    of absolute value at most ``bound`` is zero iff all its images vanish,
    once the product of the primes exceeds 2 * bound.

    With ``real`` set only one root from each conjugate pair is used; this is
    enough for elements fixed by complex conjugation.
    """

    def __init__(self, field: CycloField, values, bound: int, real: bool = False):
        self.field = field
        L = field.L
        units = [u for u in range(1, L) if math.gcd(u, L) == 1] if L > 1 else [0]
        if real:
            units = [u for u in units if 2 * u <= L] or units
        self.bound = int(bound)
        count = 1
        while _ceiling_product(count) <= 2 * self.bound:
            count += 1
        self.primes = _primes_one_mod(max(L, 1), count)
        roots, mods = [], []
        for p in self.primes:
            eta = pow(_primitive_root(p), (p - 1) // max(L, 1), p)
            for u in units:
                roots.append(pow(eta, u, p))
                mods.append(p)
        self.moduli = np.array(mods, dtype=np.int64)
        self._roots = roots
        self.images = np.array([self._image(v) for v in values], dtype=np.int64).reshape(len(values), len(mods))

    @property
    def width(self) -> int:
        return len(self.moduli)

    def _image(self, z) -> list[int]:
        coeffs = [(int(c.p), int(c.q)) for c in z.poly.coeffs()]
        out = []
        for root, p in zip(self._roots, self.moduli.tolist()):
            acc, power = 0, 1
            for num, den in coeffs:
                if num:
                    acc += num * pow(den, -1, p) * power
                power = power * root % p
            out.append(acc % p)
        return out


def _ceiling_product(count: int) -> int:
    # lower bound for a product of ``count`` primes in [2^19, 2^20)
    return (1 << 19) ** count


def height(z: "CycloScalar") -> tuple[int, int]:
    """(common denominator, l1 norm of the cleared numerator coefficients)."""
    coeffs = z.poly.coeffs()
    den = 1
    for c in coeffs:
        den = math.lcm(den, int(c.q))
    return den, sum(abs(int(c.p)) * (den // int(c.q)) for c in coeffs)


class ApproxField:
    """Complex floating point with an explicit comparison tolerance.

    Elements are plain Python ``complex`` values; ``imag`` returns a float.
    """

    exact = False

    def __init__(self, tol: float = 1e-10):
        self.tol = tol
        self.zero = 0j
        self.one = 1 + 0j
        self.i = 1j

    def __repr__(self) -> str:
        return f"ApproxField(tol={self.tol:g})"

    def rational(self, p, q=1) -> complex:
        return complex(float(Fraction(p) / Fraction(q)))

    def coerce(self, x) -> complex:
        return complex(x)

    def zeta(self, k: int, order: int) -> complex:
        k %= order
        # exact values on the axes keep e.g. i*i == -1 bit for bit
        if (4 * k) % order == 0:
            return (1, 1j, -1, -1j)[4 * k // order] + 0j
        return cmath.exp(2j * math.pi * k / order)

    def sqrt(self, n: int) -> complex:
        return complex(math.sqrt(n))

    def conj(self, z) -> complex:
        return complex(z).conjugate()

    def imag(self, z) -> float:
        return complex(z).imag

    def real(self, z) -> float:
        return complex(z).real

    def is_zero(self, z) -> bool:
        return abs(z) <= self.tol

    def to_complex(self, z) -> complex:
        return complex(z)

    def residual(self, z) -> float:
        return abs(z)


APPROX = ApproxField()
