"""Finite fields F_q and monic polynomials over them.

Field elements are plain ints in ``range(q)``.  For a prime field the int is
the residue; for ``q = p^k`` with ``k > 1`` the int packs the coefficient
vector of the element over F_p in base ``p`` (digit ``i`` is the coefficient
of ``x^i``), modulo a fixed irreducible of degree ``k``.

Polynomials are tuples of field elements, lowest degree first.  Monic
polynomials carry their leading 1 explicitly, so ``(1, 1, 1)`` is
``z^2 + z + 1``.
"""

from __future__ import annotations

import functools
import itertools
from math import gcd

import numpy as np
from sympy import divisors, factorint, isprime, mobius, totient

__all__ = [
    'BudgetExceeded', 'FiniteField', 'field', 'MonicPoly',
    'poly_mul', 'poly_divmod', 'poly_mod', 'poly_gcd', 'poly_powmod',
    'poly_eval', 'poly_key', 'monic_polys',
    'is_irreducible', 'enumerate_monic_irreducibles', 'irreducible_count',
    'tilde', 'bar', 'self_tilde_count', 'self_bar_count',
    'enumerate_self_tilde_irreducibles', 'factor', 'root_order',
    'polys_with_root_order', 'euler_phi',
    'format_poly', 'parse_poly',
]

MonicPoly = tuple  # tuple[int, ...], low degree first, last entry 1

#: Largest field size handled.
MAX_FIELD_SIZE = 2 ** 16
#: Largest number of monic polynomials the sieve will index (q^m).
SIEVE_BUDGET = 4_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size budget."""


def _prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if q < 2 or len(f) != 1:
        raise ValueError(f'{q} is not a prime power')
    (p, k), = f.items()
    return p, k


def _fp_poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    return [x % p for x in a[:d]] + [0] * max(0, d - len(a))


class FiniteField:
    """The field with ``q = p^k`` elements.

    Multiplication goes through log/antilog tables built from the smallest
    primitive element; addition is digitwise mod ``p`` (a table for small
    fields, XOR in characteristic 2).
    """

    def __init__(self, q: int):
        p, k = _prime_power(q)
        if q > MAX_FIELD_SIZE:
            raise BudgetExceeded(f'field size {q} exceeds {MAX_FIELD_SIZE}')
        self.p, self.k, self.q = p, k, q
        self.modulus = self._find_modulus() if k > 1 else (0, 1)
        self._build_tables()

    def __repr__(self):
        return f'GF({self.q})'

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(('GF', self.q))

    # -- construction ---------------------------------------------------
    def _find_modulus(self) -> tuple[int, ...]:
        """Smallest monic irreducible of degree k over F_p in sieve order."""
        p, k = self.p, self.k
        for idx in range(p ** k):
            low = [(idx // p ** i) % p for i in range(k)]
            f = tuple(low) + (1,)
            if low[0] == 0:
                continue
            # no roots and no factor of degree <= k/2: brute force over F_p[x]
            if _fp_irreducible(f, p):
                return f
        raise AssertionError('no irreducible found')

    def _unpack(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.k)]

    def _pack(self, v) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(v))

    def _raw_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        va, vb = self._unpack(a), self._unpack(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self._pack(_fp_poly_mod(prod, self.modulus, self.p))

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        prime_divs = list(factorint(order)) if order > 1 else []
        for g in range(1, q):
            # g is primitive iff g^((q-1)/r) != 1 for all primes r | q-1
            if all(self._raw_pow(g, order // r) != 1 for r in prime_divs):
                break
        self.primitive = g
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log
        if self.k == 1:
            self._add_table = None
        elif p == 2:
            self._add_table = None
        else:
            digits = [self._unpack(a) for a in range(q)]
            self._add_table = [[self._pack([(x + y) % p for x, y in zip(da, db)])
                                for db in digits] for da in digits]
        self._neg = [self._raw_neg(a) for a in range(q)]

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _raw_neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._pack([(-c) % self.p for c in self._unpack(a)])

    # -- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError('inverse of 0 in ' + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        """``a -> a^(p^times)``."""
        return self.pow(a, self.p ** times)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        return n // gcd(n, self._log[a])

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.p == 2 or self._log[a] % 2 == 0

    def nonsquare(self) -> int:
        """Smallest non-square (odd q)."""
        return next(a for a in range(1, self.q) if not self.is_square(a))

    @functools.cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add, mul) as q-by-q numpy tables, for vectorized work."""
        q = self.q
        a = np.arange(q)
        if self.k == 1:
            add = (a[:, None] + a[None, :]) % self.p
            mul = (a[:, None] * a[None, :]) % self.p
        else:
            if self.p == 2:
                add = a[:, None] ^ a[None, :]
            else:
                add = np.array(self._add_table)
            mul = np.array([[self.mul(x, y) for y in range(q)] for x in range(q)])
        return add.astype(np.int64), mul.astype(np.int64)

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        return np.array(self._neg, dtype=np.int64)


def _fp_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Trial division over a prime field; only used to pick moduli."""
    d = len(f) - 1
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            g = tuple(low) + (1,)
            if not any(_fp_poly_mod(list(f), g, p)):
                return False
    return True


@functools.cache
def field(q: int) -> FiniteField:
    """The (cached) field of size q."""
    return FiniteField(q)


# -- polynomial arithmetic ----------------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(F: FiniteField, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def poly_add(F: FiniteField, a, b) -> tuple:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim(F.add(x, y) for x, y in zip(a, b))


def poly_sub(F: FiniteField, a, b) -> tuple:
    return poly_add(F, a, tuple(F.neg(y) for y in b))


def poly_divmod(F: FiniteField, a, b) -> tuple[tuple, tuple]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError('polynomial division by zero')
    r = list(_trim(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return (), tuple(r)
    lead_inv = F.inv(b[-1])
    quo = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, lead_inv)
            quo[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
    return _trim(quo), _trim(r[:db])


def poly_mod(F: FiniteField, a, b) -> tuple:
    return poly_divmod(F, a, b)[1]


def poly_monic(F: FiniteField, a) -> tuple:
    a = _trim(a)
    if not a:
        return a
    inv = F.inv(a[-1])
    return tuple(F.mul(c, inv) for c in a)


def poly_gcd(F: FiniteField, a, b) -> tuple:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_powmod(F: FiniteField, a, e: int, m) -> tuple:
    result = (1,)
    a = poly_mod(F, a, m)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, a), m)
        e >>= 1
        if e:
            a = poly_mod(F, poly_mul(F, a, a), m)
    return result


def poly_pow(F: FiniteField, a, e: int) -> tuple:
    result = (1,)
    for _ in range(e):
        result = poly_mul(F, result, a)
    return result


def poly_eval(F: FiniteField, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_key(F: FiniteField, f) -> tuple[int, int]:
    """Sort key: degree, then the base-q index of the non-leading coefficients."""
    d = len(f) - 1
    return d, sum(c * F.q ** i for i, c in enumerate(f[:-1]))


def _index_to_monic(q: int, m: int, idx: int) -> tuple:
    return tuple((idx // q ** i) % q for i in range(m)) + (1,)


def monic_polys(F: FiniteField, m: int):
    """All monic polynomials of degree m, in sieve order."""
    for idx in range(F.q ** m):
        yield _index_to_monic(F.q, m, idx)


# -- irreducibility -----------------------------------------------------

def is_irreducible(F: FiniteField, f) -> bool:
    """Distinct-degree test: no factor of degree d <= m/2."""
    f = poly_monic(F, f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    # roots first, the cheap and common rejection
    if any(poly_eval(F, f, x) == 0 for x in range(F.q)):
        return False
    h = (0, 1)
    for d in range(1, m // 2 + 1):
        h = poly_powmod(F, h, F.q, f)
        if d == 1:
            continue
        g = poly_gcd(F, poly_sub(F, h, (0, 1)), f)
        if len(g) > 1:
            return False
    return True


@functools.cache
def _irreducibles(q: int, m: int) -> tuple[tuple, ...]:
    F = field(q)
    if m == 1:
        return tuple((a, 1) for a in range(q))
    if q ** m > SIEVE_BUDGET:
        raise BudgetExceeded(f'enumerating degree-{m} polynomials over F_{q} '
                             f'needs {q ** m} slots (budget {SIEVE_BUDGET})')
    add, mul = F.tables
    reducible = np.zeros(q ** m, dtype=bool)
    powers = q ** np.arange(m, dtype=np.int64)
    for d in range(1, m // 2 + 1):
        e = m - d
        # all monic g of degree e as rows of coefficients
        idx = np.arange(q ** e, dtype=np.int64)
        G = np.stack([(idx // q ** i) % q for i in range(e)] + [np.ones_like(idx)], axis=1)
        for f in _irreducibles(q, d):
            prod = np.zeros((G.shape[0], m + 1), dtype=np.int64)
            for i, c in enumerate(f):
                if c:
                    prod[:, i:i + e + 1] = add[prod[:, i:i + e + 1], mul[c][G]]
            reducible[(prod[:, :m] * powers).sum(axis=1)] = True
    return tuple(_index_to_monic(q, m, int(i)) for i in np.flatnonzero(~reducible))


def enumerate_monic_irreducibles(F: FiniteField | int, m: int) -> list[tuple]:
    """Monic irreducibles of degree m over F, in sieve order (z first when m = 1)."""
    if m < 1:
        raise ValueError('degree must be at least 1')
    q = F if isinstance(F, int) else F.q
    return list(_irreducibles(q, m))


def irreducible_count(q: int, m: int, exclude_z: bool = True) -> int:
    """Number of monic irreducibles of degree m over F_q.

    With ``exclude_z`` the polynomial z is not counted (it only matters for
    m = 1).
    """
    if m < 1:
        raise ValueError('degree must be at least 1')
    shift = 1 if exclude_z else 0
    total = sum(mobius(k) * (q ** (m // k) - shift) for k in divisors(m))
    assert total % m == 0
    return total // m


def _subfield_q(F: FiniteField) -> int:
    if F.k % 2:
        raise ValueError(f'{F!r} is not a quadratic extension of a subfield')
    return F.p ** (F.k // 2)


def tilde(F: FiniteField, f) -> tuple:
    """Conjugate reciprocal ``z^m f^q(1/z) / f(0)^q`` over F = F_{q^2}."""
    q = _subfield_q(F)
    f = tuple(f)
    if f[0] == 0:
        raise ValueError('tilde needs a nonzero constant term')
    m = len(f) - 1
    a0 = f[0]
    return tuple(F.pow(F.div(f[m - k], a0), q) for k in range(m + 1))


def bar(F: FiniteField, f) -> tuple:
    """Normalized reciprocal ``z^m f(1/z) / f(0)``.

    Raising coefficients to the q-th power is trivial on F_q itself.
    """
    f = tuple(f)
    if f[0] == 0:
        raise ValueError('bar needs a nonzero constant term')
    m = len(f) - 1
    a0 = f[0]
    return tuple(F.div(f[m - k], a0) for k in range(m + 1))


def self_tilde_count(q: int, m: int) -> int:
    """Monic irreducibles of degree m over F_{q^2} fixed by ``tilde``."""
    if m < 1:
        raise ValueError('degree must be at least 1')
    if m % 2 == 0:
        return 0
    total = sum(mobius(d) * (q ** (m // d) + 1) for d in divisors(m))
    assert total % m == 0
    return total // m


def self_bar_count(q: int, m: int) -> int:
    """Monic irreducibles of degree m over F_q fixed by ``bar`` (q odd)."""
    if q % 2 == 0:
        raise ValueError('self-bar counts need odd q')
    if m < 1:
        raise ValueError('degree must be at least 1')
    if m == 1:
        return 2
    if m % 2:
        return 0
    m0 = m
    while m0 % 2 == 0:
        m0 //= 2
    total = sum(mobius(d) * (q ** (m // (2 * d)) - 1) for d in divisors(m0))
    assert total % m == 0
    return total // m


def enumerate_self_tilde_irreducibles(F: FiniteField, m: int) -> list[tuple]:
    return list(_self_tilde_irreducibles(F.q, m))


@functools.cache
def _self_tilde_irreducibles(Q: int, m: int) -> tuple[tuple, ...]:
    """Brute force: build every self-tilde monic polynomial, keep the irreducible ones.

    A monic f with f(0) = a0 is self-tilde iff a0^(q+1) = 1 and
    a_{m-j} = (a_j / a0)^q; the free coefficients are a_1..a_{(m-1)//2}
    plus, for even m, a middle coefficient filtered by its own constraint.
    """
    F = field(Q)
    q = _subfield_q(F)
    roots = [a for a in range(1, Q) if F.pow(a, q + 1) == 1]
    half = (m - 1) // 2
    mids = range(Q) if m % 2 == 0 else [None]
    found = []
    for a0 in roots:
        for free in itertools.product(range(Q), repeat=half):
            for mid in mids:
                c = [0] * (m + 1)
                c[0], c[m] = a0, 1
                for j, a in enumerate(free, start=1):
                    c[j] = a
                    c[m - j] = F.pow(F.div(a, a0), q)
                if mid is not None:
                    c[m // 2] = mid
                f = tuple(c)
                if mid is not None and tilde(F, f) != f:
                    continue
                if is_irreducible(F, f):
                    found.append(f)
    found.sort(key=lambda f: poly_key(F, f))
    return tuple(found)


def factor(F: FiniteField, f) -> list[tuple[tuple, int]]:
    """Factor a monic polynomial into (irreducible, multiplicity) pairs.

    Trial division by enumerated irreducibles in increasing degree; what is
    left once the degree bound passes half the remaining degree is itself
    irreducible.
    """
    f = poly_monic(F, f)
    if len(f) < 2:
        raise ValueError('factor needs degree >= 1')
    out = []
    d = 1
    while len(f) - 1 >= 2 * d:
        for g in enumerate_monic_irreducibles(F, d):
            e = 0
            while True:
                quo, rem = poly_divmod(F, f, g)
                if rem:
                    break
                f, e = quo, e + 1
            if e:
                out.append((g, e))
            if len(f) - 1 < 2 * d:
                break
        d += 1
    if len(f) > 1:
        for i, (g, e) in enumerate(out):
            if g == f:
                out[i] = (g, e + 1)
                break
        else:
            out.append((f, 1))
    out.sort(key=lambda ge: poly_key(F, ge[0]))
    return out


def root_order(F: FiniteField, f) -> int:
    """Multiplicative order of a root of the irreducible f (order of z mod f)."""
    if f[0] == 0:
        raise ValueError('z has no multiplicative order')
    m = len(f) - 1
    group = F.q ** m - 1
    for d in sorted(divisors(group)):
        if poly_powmod(F, (0, 1), d, f) == (1,):
            return d
    raise AssertionError('unreachable')


def euler_phi(n: int) -> int:
    return int(totient(n))


def polys_with_root_order(Q: int, n: int, N: int) -> int:
    """Irreducibles over F_Q whose roots have multiplicative order exactly N.

    Roots of order N live in F_{Q^d} with d the order of Q mod N, so they
    fall into Frobenius orbits of size d: phi(N)/d polynomials of degree d.
    """
    if (Q ** n - 1) % N:
        raise ValueError(f'{N} does not divide {Q}^{n} - 1')
    if N == 1:
        return 1
    d = 1
    while (Q ** d - 1) % N:
        d += 1
    return euler_phi(N) // d


# -- text form ----------------------------------------------------------

def _format_elem(F: FiniteField, a: int) -> str:
    if F.k == 1:
        return str(a)
    return ':'.join(str(c) for c in F._unpack(a))


def format_poly(F: FiniteField, f) -> str:
    """Coefficients low to high; extension elements as ``c0:c1:...`` over F_p."""
    return ','.join(_format_elem(F, a) for a in f)


def parse_poly(F: FiniteField, text: str) -> tuple:
    out = []
    for tok in text.replace(' ', '').split(','):
        if ':' in tok:
            digits = [int(c) for c in tok.split(':')]
            if len(digits) != F.k or any(not 0 <= c < F.p for c in digits):
                raise ValueError(f'bad element {tok!r} for {F!r}')
            out.append(F._pack(digits))
        else:
            a = int(tok)
            if not 0 <= a < F.q:
                raise ValueError(f'element {a} out of range for {F!r}')
            out.append(a)
    f = _trim(out)
    if not f or f[-1] != 1:
        raise ValueError(f'{text!r} is not monic')
    return f


def pretty_poly(F: FiniteField, f) -> str:
    """Human-readable form, e.g. ``z^2+z+1``; extension elements in brackets."""
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        cs = _format_elem(F, c)
        if F.k > 1:
            cs = f'[{cs}]'
        mon = '' if i == 0 else ('z' if i == 1 else f'z^{i}')
        if i == 0:
            terms.append(cs)
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(cs + mon)
    return '+'.join(terms) or '0'


def is_prime(n: int) -> bool:
    return bool(isprime(n))
