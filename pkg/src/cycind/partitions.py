"""Partitions, signed partitions and the centralizer quantities built on them.

``c_gl(lam, Q)`` is the GL centralizer factor attached to a polynomial of
degree m whose partition is ``lam``, with ``Q = q^m``.  It is also evaluated
at negative ``Q``: ``|GL(n, -Q)| = (-1)^n |U(n, Q)|`` turns it into the
unitary-type factor.
"""

from __future__ import annotations

import functools
import itertools
import re
from fractions import Fraction

from cycind.powerseries import TruncSeries

__all__ = [
    'Partition', 'SignedPartition', 'SpSignedPartition', 'OSignedPartition',
    'enumerate_partitions', 'enumerate_sp_signed', 'enumerate_o_signed',
    'gl_order', 'u_order', 'sp_order', 'o_order',
    'c_gl', 'c_gl_rewrites', 'c_u', 'c_sp', 'c_o',
    'sum_inverse_c_series', 'stong_product_series',
]


class Partition(tuple):
    """Weakly decreasing tuple of positive ints."""

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f'parts must be positive: {parts}')
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def mult(self, i: int) -> int:
        """m_i: number of parts equal to i."""
        return self.count(i)

    @functools.cached_property
    def multiplicities(self) -> dict[int, int]:
        out = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def dual(self) -> 'Partition':
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= i) for i in range(1, self[0] + 1))

    def n_stat(self) -> int:
        """n(lam) = sum (i-1) lam_i."""
        return sum(i * p for i, p in enumerate(self))

    def d(self, i: int) -> int:
        """d_i = m_1 + 2 m_2 + ... + (i-1) m_{i-1} + i (m_i + m_{i+1} + ...)."""
        return sum(min(p, i) for p in self)

    def __repr__(self):
        return f'Partition({list(self)})'

    def __str__(self):
        return '[' + ','.join(map(str, self)) + ']'

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        text = text.strip().strip('[]').strip()
        return cls(int(t) for t in text.split(',') if t.strip()) if text else cls()


class SignedPartition:
    """A partition plus a sign (+1/-1) on every part size of one parity.

    Sizes of the other parity must occur with even multiplicity.  Subclasses
    fix which parity carries signs.
    """

    signed_parity: int  # part sizes i with i % 2 == signed_parity carry signs

    __slots__ = ('partition', 'signs')

    def __init__(self, parts, signs=None):
        lam = parts if isinstance(parts, Partition) else Partition(parts)
        signs = dict(signs or {})
        for i, m in lam.multiplicities.items():
            if i % 2 == self.signed_parity:
                if signs.get(i) not in (1, -1):
                    raise ValueError(f'part size {i} needs a sign')
            elif m % 2:
                raise ValueError(f'part size {i} has odd multiplicity {m}')
        extra = set(signs) - {i for i in lam.multiplicities if i % 2 == self.signed_parity}
        if extra:
            raise ValueError(f'signs given for absent or unsigned sizes {sorted(extra)}')
        object.__setattr__(self, 'partition', lam)
        object.__setattr__(self, 'signs', tuple(sorted(signs.items())))

    def __setattr__(self, key, value):
        raise AttributeError('signed partitions are immutable')

    @property
    def size(self) -> int:
        return self.partition.size

    def sign(self, i: int) -> int:
        return dict(self.signs)[i]

    def __eq__(self, other):
        return (type(other) is type(self) and other.partition == self.partition
                and other.signs == self.signs)

    def __hash__(self):
        return hash((type(self).__name__, self.partition, self.signs))

    def __lt__(self, other):
        return (self.partition, self.signs) < (other.partition, other.signs)

    def __str__(self):
        s = dict(self.signs)
        toks = []
        for p in self.partition:
            if p in s:
                toks.append(('+' if s[p] > 0 else '-') + str(p))
            else:
                toks.append(str(p))
        return '[' + ','.join(toks) + ']'

    def __repr__(self):
        return f'{type(self).__name__}({self})'

    @classmethod
    def parse(cls, text: str):
        """Read ``[+2,1,1]`` style text; a sign may appear on any occurrence."""
        parts, signs = [], {}
        body = text.strip().strip('[]').strip()
        for tok in filter(None, (t.strip() for t in body.split(','))):
            m = re.fullmatch(r'([+-]?)(\d+)', tok)
            if not m:
                raise ValueError(f'bad signed part {tok!r}')
            p = int(m.group(2))
            parts.append(p)
            if m.group(1):
                s = 1 if m.group(1) == '+' else -1
                if signs.setdefault(p, s) != s:
                    raise ValueError(f'conflicting signs for size {p}')
        return cls(parts, signs)

    @classmethod
    def enumerate(cls, n: int) -> list:
        out = []
        for lam in enumerate_partitions(n):
            mults = lam.multiplicities
            if any(m % 2 for i, m in mults.items() if i % 2 != cls.signed_parity):
                continue
            signed = [i for i in mults if i % 2 == cls.signed_parity]
            for choice in itertools.product((1, -1), repeat=len(signed)):
                out.append(cls(lam, dict(zip(signed, choice))))
        return out


class SpSignedPartition(SignedPartition):
    """Even sizes carry signs; odd sizes have even multiplicity."""
    signed_parity = 0


class OSignedPartition(SignedPartition):
    """Odd sizes carry signs; even sizes have even multiplicity."""
    signed_parity = 1


@functools.cache
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@functools.cache
def _partition_objs(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, reverse lexicographic: (n), (n-1,1), ..., (1^n)."""
    if n < 0:
        raise ValueError('n must be >= 0')
    return list(_partition_objs(n))


@functools.cache
def enumerate_sp_signed(n: int) -> tuple[SpSignedPartition, ...]:
    return tuple(SpSignedPartition.enumerate(n))


@functools.cache
def enumerate_o_signed(n: int) -> tuple[OSignedPartition, ...]:
    return tuple(OSignedPartition.enumerate(n))


# -- group orders (as signed integers in Q) ------------------------------

@functools.cache
def gl_order(n: int, Q: int) -> int:
    """prod_{i<n} (Q^n - Q^i); well defined for negative Q."""
    out = 1
    for i in range(n):
        out *= Q ** n - Q ** i
    return out


@functools.cache
def u_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q ** i - (-1) ** i
    return out


@functools.cache
def sp_order(dim: int, q: int) -> int:
    """|Sp(dim, q)|, dim even."""
    if dim % 2:
        raise ValueError('symplectic dimension must be even')
    n = dim // 2
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


@functools.cache
def o_order(dim: int, q: int, sign: int) -> int:
    """|O^sign(dim, q)|; O(0) is trivial."""
    if dim == 0:
        return 1
    l, odd = divmod(dim, 2)
    if odd:
        out = 2 * q ** (l * l)
        for i in range(1, l + 1):
            out *= q ** (2 * i) - 1
        return out
    out = 2 * q ** (l * l - l) * (q ** l - sign)
    for i in range(1, l):
        out *= q ** (2 * i) - 1
    return out


# -- centralizer factors ------------------------------------------------

def _check_Q(Q):
    if Q in (0, 1, -1):
        raise ValueError(f'Q = {Q} is not allowed')


def c_gl(lam, Q: int) -> int:
    """prod_i prod_{k=1}^{m_i} (Q^{d_i} - Q^{d_i - k})."""
    _check_Q(Q)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    out = 1
    for i, m in lam.multiplicities.items():
        d = lam.d(i)
        for k in range(1, m + 1):
            out *= Q ** d - Q ** (d - k)
    return out


def _twice_wall_exponent(lam: Partition) -> int:
    """2 * [sum_{h<i} h m_h m_i + 1/2 sum_i (i-1) m_i^2]."""
    mults = sorted(lam.multiplicities.items())
    cross = sum(h * mh * mi for (h, mh), (i, mi) in itertools.combinations(mults, 2))
    return 2 * cross + sum((i - 1) * m * m for i, m in mults)


def _q_pochhammer_inv(Q, r: int) -> Fraction:
    """(1/Q)_r = (1 - 1/Q)(1 - 1/Q^2)...(1 - 1/Q^r)."""
    out = Fraction(1)
    for j in range(1, r + 1):
        out *= 1 - Fraction(1, Q ** j)
    return out


def c_gl_rewrites(lam, Q: int) -> tuple[Fraction, Fraction, Fraction]:
    """c_gl three ways: defining product, Wall-type form, dual-partition form."""
    _check_Q(Q)
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    direct = Fraction(c_gl(lam, Q))
    wall = Fraction(Q) ** _twice_wall_exponent(lam)
    for m in lam.multiplicities.values():
        wall *= gl_order(m, Q)
    dual = Fraction(Q) ** sum(x * x for x in lam.dual())
    for m in lam.multiplicities.values():
        dual *= _q_pochhammer_inv(Q, m)
    return direct, wall, dual


def c_u(lam, Q: int) -> int:
    """Q^{2E} prod_i |U(m_i, Q)|: the factor for a polynomial fixed by the involution."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    out = Q ** _twice_wall_exponent(lam)
    for m in lam.multiplicities.values():
        out *= u_order(m, Q)
    return out


def _signed_factor(sp: SignedPartition, q: int, symplectic: bool) -> int:
    if q % 2 == 0:
        raise ValueError('characteristic 2 is not supported')
    lam = sp.partition
    signs = dict(sp.signs)
    twice_exp = _twice_wall_exponent(lam)
    out = 1
    for i, m in lam.multiplicities.items():
        if symplectic:
            if i % 2:
                out *= sp_order(m, q)
            else:
                twice_exp += m
                out *= o_order(m, q, signs[i])
        else:
            if i % 2:
                out *= o_order(m, q, signs[i])
            else:
                twice_exp -= m
                out *= sp_order(m, q)
    if twice_exp % 2:
        raise AssertionError(f'half-integral power of q for {sp}')
    e = twice_exp // 2
    return out * q ** e if e >= 0 else Fraction(out, q ** -e)


def c_sp(sp: SpSignedPartition, q: int) -> int:
    """Centralizer factor at z-1 or z+1 in a symplectic group."""
    if not isinstance(sp, SpSignedPartition):
        raise TypeError('expected a symplectic signed partition')
    return _signed_factor(sp, q, True)


def c_o(sp: OSignedPartition, q: int) -> int:
    """Centralizer factor at z-1 or z+1 in an orthogonal group."""
    if not isinstance(sp, OSignedPartition):
        raise TypeError('expected an orthogonal signed partition')
    return _signed_factor(sp, q, False)


# -- sum of 1/c_gl over all partitions -------------------------------------

def sum_inverse_c_series(Q: int, N: int) -> TruncSeries:
    """sum_lam v^{|lam|} / c_gl(lam, Q), summed over all partitions of size <= N."""
    return TruncSeries([sum(Fraction(1, c_gl(lam, Q)) for lam in enumerate_partitions(n))
                        for n in range(N + 1)], N)


def stong_product_series(Q: int, N: int) -> TruncSeries:
    """prod_{r>=1} 1/(1 - v/Q^r), truncated at v^N.

    Every factor touches every degree, so the product is expanded with
    Euler's identity: the coefficient of v^k is Q^{k(k-1)/2} / prod_{j=1}^k (Q^j - 1).
    """
    out, c = [], Fraction(1)
    for k in range(N + 1):
        if k:
            c = c * Q ** (k - 1) / (Q ** k - 1)
        out.append(c)
    return TruncSeries(out, N)
