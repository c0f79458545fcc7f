"""Exact arithmetic in Q(zeta_M) extended by a formal normalization eta.

A value is ``p(zeta) * eta**k`` where ``p`` is a rational polynomial reduced
modulo the M-th cyclotomic polynomial.  Only ``eta**-2`` is known exactly (it
lives in the field); even powers of eta are rewritten into the field whenever
two values have to be brought to a common eta power.
"""

from __future__ import annotations

import cmath
import math
from math import isqrt
from fractions import Fraction

import flint

from .errors import DivisionByZero, MixedEtaParity

__all__ = ["FieldContext", "ExactValue", "make_field", "quantum_integer"]


class FieldContext:
    """Arithmetic context for Q(zeta_M).

    ``eta_squared_inverse`` stays ``None`` until the category engine fixes the
    normalization; values with nonzero eta power can only be combined after that.
    """

    def __init__(self, M: int):
        if M < 1:
            raise ValueError(f"root order must be positive, got {M}")
        self.M = M
        self.phi = flint.fmpq_poly(flint.fmpz_poly.cyclotomic(M))
        self.degree = self.phi.degree()
        self._monomials = [self._reduce(flint.fmpq_poly([0] * k + [1])) for k in range(M)]
        self.eta_squared_inverse: ExactValue | None = None
        self._eta_squared: ExactValue | None = None
        self._eta_approx: complex | None = None
        self.eta_rational: Fraction | None = None

    def __repr__(self):
        return f"FieldContext(M={self.M})"

    def _reduce(self, poly):
        if poly.degree() >= self.degree:
            return poly % self.phi
        return poly

    # -- constructors -------------------------------------------------------

    def value(self, poly, eta_power: int = 0) -> ExactValue:
        return ExactValue(self, self._reduce(flint.fmpq_poly(poly)), eta_power)

    def zero(self) -> ExactValue:
        return ExactValue(self, flint.fmpq_poly([]), 0)

    def one(self) -> ExactValue:
        return ExactValue(self, flint.fmpq_poly([1]), 0)

    def rational(self, r) -> ExactValue:
        r = Fraction(r)
        return ExactValue(self, flint.fmpq_poly([flint.fmpq(r.numerator, r.denominator)]), 0)

    def zeta(self, k: int) -> ExactValue:
        """The root of unity zeta_M**k."""
        return ExactValue(self, self._monomials[k % self.M], 0)

    def eta(self) -> ExactValue:
        return ExactValue(self, flint.fmpq_poly([1]), 1)

    def from_coeffs(self, coeffs, eta_power: int = 0) -> ExactValue:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients for the power basis")
        return ExactValue(
            self, flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs]), eta_power
        )

    def coerce(self, x) -> ExactValue:
        if isinstance(x, ExactValue):
            if x.ctx is not self:
                raise ValueError("values belong to different field contexts")
            return x
        if isinstance(x, (int, Fraction)):
            return self.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactValue")

    # -- eta ----------------------------------------------------------------

    def set_eta_squared_inverse(self, value: ExactValue) -> None:
        if value.eta_power != 0:
            raise ValueError("eta**-2 must be a plain field element")
        if value.is_zero():
            raise DivisionByZero("eta**-2 cannot be zero")
        self.eta_squared_inverse = value
        self._eta_squared = value.inverse()
        # branch: principal square root of eta**2 (positive real part, or
        # positive imaginary part when eta is purely imaginary)
        self._eta_approx = cmath.sqrt(1 / value.approx())
        self.eta_rational = None
        if value.is_rational():
            q = value.to_fraction()
            num, den = isqrt(q.numerator) if q > 0 else -1, isqrt(q.denominator)
            if num >= 0 and num * num == q.numerator and den * den == q.denominator:
                # eta**-2 is a rational square, so eta itself is the positive rational root
                self.eta_rational = Fraction(den, num)

    @property
    def eta_squared(self) -> ExactValue:
        if self._eta_squared is None:
            raise MixedEtaParity("eta normalization has not been fixed in this context")
        return self._eta_squared

    @property
    def eta_approx(self) -> complex:
        if self._eta_approx is None:
            raise MixedEtaParity("eta normalization has not been fixed in this context")
        return self._eta_approx


def make_field(M: int) -> FieldContext:
    """Fresh arithmetic context for Q(zeta_M); eta is fixed per category."""
    return FieldContext(M)


class ExactValue:
    __slots__ = ("ctx", "poly", "eta_power")

    def __init__(self, ctx: FieldContext, poly, eta_power: int = 0):
        self.ctx = ctx
        self.poly = poly
        self.eta_power = eta_power if poly else 0

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.poly

    def coeffs(self) -> list[Fraction]:
        out = [Fraction(0)] * self.ctx.degree
        for k, c in enumerate(self.poly.coeffs()):
            out[k] = Fraction(int(c.p), int(c.q))
        return out

    def is_rational(self) -> bool:
        return self.eta_power == 0 and self.poly.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        c = self.coeffs()[0] if self.ctx.degree else Fraction(0)
        return c

    def normalized(self) -> ExactValue:
        """Equivalent value with eta power 0 or 1 (always 0 when eta is rational)."""
        k = self.eta_power
        if k == 0 or self.is_zero():
            return self
        eta_q = self.ctx.eta_rational
        if eta_q is not None:
            factor = eta_q**k
            return ExactValue(self.ctx, self.poly * flint.fmpq(factor.numerator, factor.denominator), 0)
        if k == 1:
            return self
        r = k % 2
        shift = (k - r) // 2
        factor = self.ctx.eta_squared if shift > 0 else self.ctx.eta_squared_inverse
        poly = self.poly
        for _ in range(abs(shift)):
            poly = self.ctx._reduce(poly * factor.poly)
        return ExactValue(self.ctx, poly, r)

    def approx(self) -> complex:
        z = cmath.exp(2j * math.pi / self.ctx.M)
        acc = 0j
        for k, c in enumerate(self.poly.coeffs()):
            if c:
                acc += float(Fraction(int(c.p), int(c.q))) * z**k
        if self.eta_power:
            acc *= self.ctx.eta_approx**self.eta_power
        return acc

    def to_json(self) -> dict:
        coeffs = [str(c) for c in self.coeffs()]
        try:
            z = self.approx()
            approx = {"re": z.real, "im": z.imag}
        except MixedEtaParity:
            approx = None
        try:
            plain = self.normalized()
        except MixedEtaParity:
            plain = self
        rational = str(plain.to_fraction()) if plain.is_rational() else None
        return {"eta_power": self.eta_power, "coeffs": coeffs, "rational": rational, "approx_advisory": approx}

    @classmethod
    def from_json(cls, ctx: FieldContext, data: dict) -> ExactValue:
        coeffs = [Fraction(c) for c in data["coeffs"]]
        return ctx.from_coeffs(coeffs, data["eta_power"])

    def __repr__(self):
        body = str(self.poly).replace("x", "z")
        if self.eta_power:
            return f"({body})*eta^{self.eta_power}"
        return f"({body})"

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: ExactValue):
        if self.eta_power == other.eta_power:
            return self.poly, other.poly, self.eta_power
        if (self.eta_power - other.eta_power) % 2:
            if self.ctx.eta_rational is not None:
                a, b = self.normalized(), other.normalized()
                return a.poly, b.poly, 0
            raise MixedEtaParity(
                f"cannot add values with eta powers {self.eta_power} and {other.eta_power}"
            )
        low = min(self.eta_power, other.eta_power)
        a, b = self, other
        if a.eta_power != low:
            a = ExactValue(a.ctx, a._shift_down(a.eta_power - low), low)
        if b.eta_power != low:
            b = ExactValue(b.ctx, b._shift_down(b.eta_power - low), low)
        return a.poly, b.poly, low

    def _shift_down(self, diff: int):
        # eta**diff with diff even, folded into the field part
        poly = self.poly
        for _ in range(diff // 2):
            poly = self.ctx._reduce(poly * self.ctx.eta_squared.poly)
        return poly

    def __add__(self, other):
        other = self.ctx.coerce(other) if not isinstance(other, ExactValue) else other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, k = self._aligned(other)
        return ExactValue(self.ctx, a + b, k)

    __radd__ = __add__

    def __neg__(self):
        return ExactValue(self.ctx, -self.poly, self.eta_power)

    def __sub__(self, other):
        other = self.ctx.coerce(other) if not isinstance(other, ExactValue) else other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if isinstance(other, Fraction):
                other = flint.fmpq(other.numerator, other.denominator)
            return ExactValue(self.ctx, self.poly * other, self.eta_power)
        if not isinstance(other, ExactValue):
            return NotImplemented
        return ExactValue(
            self.ctx, self.ctx._reduce(self.poly * other.poly), self.eta_power + other.eta_power
        )

    __rmul__ = __mul__

    def inverse(self) -> ExactValue:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        g, s, _ = self.poly.xgcd(self.ctx.phi)
        # phi is irreducible, so the gcd is a nonzero constant
        inv = s / g[0]
        return ExactValue(self.ctx, self.ctx._reduce(inv), -self.eta_power)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> ExactValue:
        """Apply zeta -> zeta**-1 to the field part; the eta power is kept."""
        M = self.ctx.M
        coeffs = [0] * M
        for k, c in enumerate(self.poly.coeffs()):
            coeffs[(-k) % M] = c
        return ExactValue(self.ctx, self.ctx._reduce(flint.fmpq_poly(coeffs)), self.eta_power)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.rational(other)
        if not isinstance(other, ExactValue):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if (self.eta_power - other.eta_power) % 2 and self.ctx.eta_rational is None:
            return False
        a, b, _ = self._aligned(other)
        return a == b

    def __hash__(self):
        v = self.normalized()
        return hash((v.eta_power, tuple(v.poly.coeffs())))


def quantum_integer(ctx: FieldContext, n: int, s_exponent: int) -> ExactValue:
    """[n] = s**(n-1) + s**(n-3) + ... + s**(1-n) with s = zeta_M**s_exponent."""
    if n < 0:
        return -quantum_integer(ctx, -n, s_exponent)
    M = ctx.M
    coeffs = [0] * M
    for t in range(n):
        coeffs[(s_exponent * (n - 1 - 2 * t)) % M] += 1
    return ctx.value(coeffs)
