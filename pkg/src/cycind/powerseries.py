"""Truncated power series in one variable ``u`` with exact coefficients.

Coefficients may be any commutative ring elements that mix with ``int``
(``Fraction``, :class:`Dual`, :class:`MPoly`).  Everything beyond degree
``N`` is dropped exactly, so arithmetic is closed under truncation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb


class Dual:
    """``a + b*eps`` with ``eps^2 = 0``: a value and its x-derivative at x = 1."""

    __slots__ = ('a', 'b')

    def __init__(self, a=0, b=0):
        self.a = a
        self.b = b

    def _coerce(self, other):
        return other if isinstance(other, Dual) else Dual(other, 0)

    def __add__(self, other):
        other = self._coerce(other)
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        return Dual(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only scalar division is needed
        return Dual(Fraction(self.a) / other, Fraction(self.b) / other)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f'Dual({self.a}, {self.b})'


class MPoly:
    """Sparse polynomial in commuting marker variables ``x_1, x_2, ...``.

    Keys are exponent tuples; only ``+`` and ``*`` are needed here.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly({(): other}) if other else MPoly()

    @staticmethod
    def _addexp(e, f):
        n = max(len(e), len(f))
        e = e + (0,) * (n - len(e))
        f = f + (0,) * (n - len(f))
        out = tuple(x + y for x, y in zip(e, f))
        while out and out[-1] == 0:
            out = out[:-1]
        return out

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return MPoly(t)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = self._addexp(k1, k2)
                t[k] = t.get(k, 0) + v1 * v2
        return MPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return MPoly({k: Fraction(v) / other for k, v in self.terms.items()})

    def __eq__(self, other):
        return self.terms == self._coerce(other).terms

    def __repr__(self):
        return f'MPoly({self.terms})'


class TruncSeries:
    """``c_0 + c_1 u + ... + c_N u^N``, everything of higher degree dropped."""

    __slots__ = ('coeffs', 'N')

    def __init__(self, coeffs, N: int):
        if N < 0:
            raise ValueError('truncation degree must be >= 0')
        c = list(coeffs)[:N + 1]
        c += [0] * (N + 1 - len(c))
        self.coeffs = c
        self.N = N

    @classmethod
    def one(cls, N):
        return cls([1], N)

    @classmethod
    def monomial(cls, coeff, degree, N):
        c = [0] * (N + 1)
        if degree <= N:
            c[degree] = coeff
        return cls(c, N)

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n <= self.N else 0

    def __len__(self):
        return self.N + 1

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([other], self.N)
        if other.N != self.N:
            raise ValueError('truncation degrees differ')
        return other

    def __add__(self, other):
        other = self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.N)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.N)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.coeffs], self.N)
        other = self._check(other)
        N = self.N
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(N + 1) if a[i] != 0]
        nz_b = [j for j in range(N + 1) if b[j] != 0]
        out = [0] * (N + 1)
        for i in nz_a:
            ai = a[i]
            for j in nz_b:
                if i + j > N:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return TruncSeries(out, N)

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Lowest degree with a nonzero coefficient (N + 1 for the zero series)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.N + 1

    def inverse(self) -> 'TruncSeries':
        """Multiplicative inverse; the constant term must be a unit."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError('constant term is zero')
        inv0 = Fraction(1) / c0
        out = [Fraction(0)] * (self.N + 1)
        out[0] = inv0
        for n in range(1, self.N + 1):
            s = sum((self.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
            out[n] = -s * inv0
        return TruncSeries(out, self.N)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return TruncSeries([a / other for a in self.coeffs], self.N)

    def derivative(self) -> 'TruncSeries':
        return TruncSeries([k * self.coeffs[k] for k in range(1, self.N + 1)], self.N)

    def scale(self, c) -> 'TruncSeries':
        """Substitute ``u -> c*u``."""
        out, p = [], 1
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return TruncSeries(out, self.N)

    def __pow__(self, k: int) -> 'TruncSeries':
        """Integer power ``k >= 0`` of a series with constant term 1.

        Expands ``(1 + g)^k`` binomially; only ``N // val(g)`` terms survive,
        so huge ``k`` (polynomial counts) cost nothing extra.
        """
        if k < 0:
            raise ValueError('negative power')
        if self.coeffs[0] != 1:
            raise ValueError('power needs constant term 1')
        g = self - 1
        v = g.valuation()
        result = TruncSeries.one(self.N)
        if v > self.N or k == 0:
            return result
        term = TruncSeries.one(self.N)
        for j in range(1, min(k, self.N // v) + 1):
            term = term * g
            result = result + term * comb(k, j)
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.N == other.N and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        shown = ', '.join(str(c) for c in self.coeffs[:6])
        more = ', ...' if self.N >= 6 else ''
        return f'TruncSeries([{shown}{more}], N={self.N})'

    def to_json(self) -> str:
        """JSON array of ``"num/den"`` strings."""
        return json.dumps([f'{Fraction(c).numerator}/{Fraction(c).denominator}'
                           for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> 'TruncSeries':
        vals = [Fraction(s) for s in json.loads(text)]
        return cls(vals, len(vals) - 1)
