"""Cycle-index power series and the probabilistic consequences drawn from them.

Every series here is assembled from polynomial *counts* (closed forms in
:mod:`cycind.ffpoly`) and the GL-type factor ``c_gl``, evaluated at ``-q``
where the unitary-type slots need it.  The class enumeration in
:mod:`cycind.classdata` goes through actual polynomials and Wall's
centralizers instead, so comparing the two is a genuine cross-check.

Conventions for the coefficient of ``u^n``:

* GL, U, Sp: the average of the weight over the group (Sp: n is the matrix
  dimension, odd coefficients vanish);
* Mat: the weight summed over Mat(n, q), divided by |GL(n, q)|;
* O: the sum of the two averages over O+(n, q) and O-(n, q).
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from cycind import ffpoly
from cycind.ffpoly import (
    bar, field, irreducible_count, polys_with_root_order, self_bar_count,
    self_tilde_count, tilde,
)
from cycind.partitions import (
    Partition, SignedPartition, c_gl, c_o, c_sp,
    enumerate_o_signed, enumerate_partitions, enumerate_sp_signed, gl_order, o_order,
    sp_order, u_order,
)
from cycind.powerseries import Dual, MPoly, TruncSeries

SERIES_FAMILIES = ('GL', 'Mat', 'U', 'Sp', 'O')
DEFAULT_N = 30


def normalize_family(family: str) -> str:
    f = {'O-sum': 'O', 'O-avg': 'O', 'Oplus': 'O', 'Ominus': 'O', 'O+': 'O', 'O-': 'O'}.get(
        family, family)
    if f not in SERIES_FAMILIES:
        raise ValueError(f'unknown family {family!r}')
    return f


def _check_q(family: str, q: int):
    ffpoly._prime_power(q)
    if family in ('Sp', 'O') and q % 2 == 0:
        raise ValueError('characteristic 2 is not supported for Sp/O')


# -- weights ---------------------------------------------------------------

PROPERTIES = {
    'semisimple': lambda lam: not lam or lam[0] <= 1,
    'regular': lambda lam: len(lam) <= 1,
    'regular-semisimple': lambda lam: sum(lam) <= 1,
}


@dataclass(frozen=True)
class Weight:
    """Weight x_{phi, lam} substituted into the cycle index.

    ``kind`` is one of

    * ``'one'``: every weight 1;
    * ``'predicate'``: indicator of ``pred(lam)`` on the plain partition;
    * ``'mark'``: x^{|lam|}, tracked as a :class:`Dual` (value and d/dx at 1);
    * ``'weyl'``: x_m^{|lam|} for a degree-m polynomial, as an :class:`MPoly`;
    * ``'pin'``: characteristic-polynomial pinning, see :func:`pinned_series`.
    """
    kind: str = 'one'
    pred: Callable | None = None
    name: str = dc_field(default='', compare=False)

    @classmethod
    def one(cls):
        return cls('one', None, 'one')

    @classmethod
    def predicate(cls, pred, name=''):
        if isinstance(pred, str):
            name, pred = pred, PROPERTIES[pred]
        return cls('predicate', pred, name or getattr(pred, '__name__', 'predicate'))

    @classmethod
    def mark(cls):
        return cls('mark', None, 'mark')

    @classmethod
    def weyl(cls):
        return cls('weyl', None, 'weyl')

    def value(self, lam, m: int, copies: int = 1):
        """Weight of one slot: polynomial degree m, ``copies`` = 2 for a pair."""
        plain = lam.partition if isinstance(lam, SignedPartition) else lam
        size = sum(plain)
        if self.kind == 'one':
            return 1
        if self.kind == 'predicate':
            return 1 if self.pred(plain) else 0
        if self.kind == 'mark':
            return Dual(1, copies * size)
        if self.kind == 'weyl':
            if not size:
                return MPoly({(): 1})
            return MPoly.monomial((0,) * (m - 1) + (copies * size,))
        raise ValueError(f'weight kind {self.kind!r} is not slotwise')


# -- slot factors ------------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _factor_gl(Q: int, m: int, N: int, weight: Weight, copies: int, negate: bool):
    """sum_lam w(lam) s^{|lam|} u^{step |lam|} / c_gl(lam, Q).

    ``step = copies * m`` and ``s = -1`` when ``negate``: the unitary-type
    slots are (-u^m)^{|lam|} / c_gl(lam, -sqrt Q).
    """
    step = copies * m
    c = [0] * (N + 1)
    for k in range(N // step + 1):
        total = 0
        for lam in enumerate_partitions(k):
            w = weight.value(lam, m, copies)
            if w == 0:
                continue
            total = total + w * Fraction((-1) ** k if negate else 1, c_gl(lam, Q))
        c[k * step] = total
    return TruncSeries(c, N)


@functools.lru_cache(maxsize=256)
def _factor_pm1(family: str, q: int, N: int, weight: Weight):
    items = enumerate_sp_signed if family == 'Sp' else enumerate_o_signed
    cfun = c_sp if family == 'Sp' else c_o
    c = [0] * (N + 1)
    for k in range(N + 1):
        total = 0
        for lam in items(k):
            w = weight.value(lam, 1)
            if w != 0:
                total = total + w * Fraction(1) / cfun(lam, q)
        c[k] = total
    return TruncSeries(c, N)


def slot_counts(family: str, q: int, N: int) -> list[tuple[str, int, int]]:
    """(role, degree m, number of slots) for all slots of weight <= N.

    Roles: 'gl' (GL/Mat), 'self' (fixed by the involution, not z -+ 1),
    'pair' (one involution pair), 'pm1' (each of z - 1, z + 1).
    """
    family = normalize_family(family)
    out = []
    if family in ('GL', 'Mat'):
        for m in range(1, N + 1):
            k = irreducible_count(q, m, exclude_z=True)
            if family == 'Mat' and m == 1:
                k += 1
            out.append(('gl', m, k))
        return out
    if family == 'U':
        for m in range(1, N + 1):
            st = self_tilde_count(q, m)
            if st:
                out.append(('self', m, st))
            if 2 * m <= N:
                total = irreducible_count(q * q, m, exclude_z=True)
                out.append(('pair', m, (total - st) // 2))
        return out
    out.append(('pm1', 1, 2))
    for m in range(1, N + 1):
        sb = self_bar_count(q, m)
        if m >= 2 and sb:
            out.append(('self', m, sb))
        if 2 * m <= N:
            total = irreducible_count(q, m, exclude_z=True)
            out.append(('pair', m, (total - sb) // 2))
    return out


def slot_factor(family: str, q: int, role: str, m: int, N: int, weight: Weight) -> TruncSeries:
    family = normalize_family(family)
    if role == 'gl':
        return _factor_gl(q ** m, m, N, weight, 1, False)
    if role == 'pm1':
        return _factor_pm1(family, q, N, weight)
    if family == 'U':
        if role == 'self':
            return _factor_gl(-(q ** m), m, N, weight, 1, True)
        return _factor_gl(q ** (2 * m), m, N, weight, 2, False)
    if role == 'self':
        return _factor_gl(-(q ** (m // 2)), m, N, weight, 1, True)
    return _factor_gl(q ** m, m, N, weight, 2, False)


def cycle_index_series(family: str, q: int, weight: Weight | None = None,
                       N: int = DEFAULT_N) -> TruncSeries:
    """Product over all polynomial slots of the weighted slot sums, truncated at u^N."""
    family = normalize_family(family)
    _check_q(family, q)
    weight = weight or Weight.one()
    if weight.kind == 'pin':
        raise ValueError('use pinned_series for characteristic-polynomial pinning')
    out = TruncSeries.one(N)
    for role, m, count in slot_counts(family, q, N):
        if count:
            out = out * (slot_factor(family, q, role, m, N, weight) ** count)
    return out


# -- pinning ---------------------------------------------------------------

def _role_of(family: str, F, p) -> tuple[str, tuple]:
    """Slot role of polynomial p and the polynomials sharing its slot."""
    if family in ('GL', 'Mat'):
        return 'gl', (p,)
    inv = (lambda f: tilde(F, f)) if family == 'U' else (lambda f: bar(F, f))
    if family != 'U' and p in ((F.neg(1), 1), (1, 1)):
        return 'pm1', (p,)
    partner = inv(p)
    if partner == p:
        return 'self', (p,)
    return 'pair', (p, partner)


def pinned_series(family: str, q: int, pins: dict, N: int) -> TruncSeries:
    """Cycle index with x_{phi, lam} = [|lam| = j_phi] on pinned phi, 0 elsewhere.

    ``pins`` maps irreducible polynomials to a size ``j`` (or to a fixed
    Partition / signed partition).  For pairs, pin one member; the partner
    receives the same partition automatically.  The coefficient of u^n is
    then the proportion of elements with characteristic polynomial
    prod phi^{j_phi} (summed over O+ and O- for the orthogonal family).
    """
    family = normalize_family(family)
    _check_q(family, q)
    F = field(q * q if family == 'U' else q)
    out = TruncSeries.one(N)
    seen = set()
    for p, target in pins.items():
        p = tuple(p)
        if not ffpoly.is_irreducible(F, p):
            raise ValueError(f'{ffpoly.pretty_poly(F, p)} is not irreducible')
        if p == (0, 1) and family != 'Mat':
            if (isinstance(target, int) and target == 0):
                continue
            return TruncSeries([0], N)
        role, members = _role_of(family, F, p)
        if seen & set(members):
            raise ValueError('a polynomial and its involution image were both pinned')
        seen.update(members)
        m = len(p) - 1
        if isinstance(target, int):
            if role == 'pm1':
                opts = (enumerate_sp_signed if family == 'Sp' else enumerate_o_signed)(target)
            else:
                opts = enumerate_partitions(target)
        else:
            opts = [target]

        coeff = [0] * (N + 1)
        for lam in opts:
            size = lam.size if isinstance(lam, SignedPartition) else sum(lam)
            plain = lam.partition if isinstance(lam, SignedPartition) else Partition(lam)
            if role == 'gl':
                deg, val = m * size, Fraction(1, c_gl(plain, q ** m))
            elif role == 'pm1':
                deg, val = size, Fraction(1) / (c_sp(lam, q) if family == 'Sp' else c_o(lam, q))
            elif role == 'self':
                Qs = -(q ** m) if family == 'U' else -(q ** (m // 2))
                deg, val = m * size, Fraction((-1) ** size, c_gl(plain, Qs))
            else:
                Qp = q ** (2 * m) if family == 'U' else q ** m
                deg, val = 2 * m * size, Fraction(1, c_gl(plain, Qp))
            if deg <= N:
                coeff[deg] += val
        out = out * TruncSeries(coeff, N)
    return out


# -- finite-n probabilities -----------------------------------------------

def coefficient_to_probability(family: str, n: int, q: int, coeff) -> Fraction:
    """Turn a cycle-index coefficient into a probability / group average."""
    family = normalize_family(family)
    if family == 'Mat':
        return coeff * Fraction(gl_order(n, q), q ** (n * n))
    if family == 'O':
        return coeff / 2
    return coeff


def finite_n_probability(family: str, n: int, q: int, predicate) -> Fraction:
    """Exact probability that a uniform element satisfies a slotwise predicate.

    ``predicate`` is a property name ('semisimple', 'regular',
    'regular-semisimple') or a function on partitions, applied to every
    polynomial's partition (signs ignored).  For the orthogonal family the
    result is the average of the O+ and O- probabilities.
    """
    family = normalize_family(family)
    if not callable(predicate) and predicate not in PROPERTIES:
        raise ValueError(f'predicate must be slotwise: one of {sorted(PROPERTIES)} '
                         f'or a function of one partition')
    s = cycle_index_series(family, q, Weight.predicate(predicate), n)
    return coefficient_to_probability(family, n, q, s[n])


# -- limits ------------------------------------------------------------------

LIMIT_KINDS = ('ss-Mat', 'ss-GL', 'rss-Mat', 'reg-Mat', 'rss-GL', 'reg-GL')


def _s5(r: int) -> bool:
    return r % 5 in (0, 2, 3)


def _product_interval(q: int, R: int, numer, denom, start: int, has_denom: bool):
    """Bounds for prod_{r >= start} (1 - q^{-numer(r)}) / (1 - q^{-denom(r)}).

    ``numer``/``denom`` return an exponent or None (factor absent).  The
    partial product over r <= R is exact; for the tail, with s = sum of the
    dropped q^{-e}, the numerator lies in [1 - s, 1] and the reciprocal of the
    denominator in [1, 1/(1 - s')].  Exponents satisfy e(r) >= r - 1.
    """
    P = Fraction(1)
    for r in range(start, R + 1):
        a, b = numer(r), denom(r)
        if a is not None:
            P *= 1 - Fraction(1, q ** a)
        if b is not None:
            P /= 1 - Fraction(1, q ** b)
    # sum_{r > R} q^{-(r-1)} = q^{-(R)} / (1 - 1/q)
    tail = Fraction(1, q ** R) / (1 - Fraction(1, q))
    lo = P * (1 - tail)
    hi = P / (1 - tail) if has_denom else P
    return lo, hi


def limit_interval(kind: str, q: int, eps: Fraction | float = Fraction(1, 10 ** 12)):
    """Certified rational interval [lo, hi] of width <= eps around the limit."""
    if kind not in LIMIT_KINDS:
        raise ValueError(f'unknown kind {kind!r}; choose from {LIMIT_KINDS}')
    if q < 2:
        raise ValueError('q must be >= 2')
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError('eps must be positive')
    x = Fraction(1, q)
    if kind == 'rss-GL':
        v = 1 - x
        return v, v
    if kind == 'reg-GL':
        v = (1 - x ** 5) / (1 + x ** 3)
        return v, v
    specs = {
        'ss-Mat': (lambda r: r - 1 if _s5(r) else None, lambda r: None, 2, Fraction(1)),
        'ss-GL': (lambda r: r - 1 if _s5(r) else None, lambda r: r if _s5(r) else None, 2,
                  Fraction(1)),
        'rss-Mat': (lambda r: r, lambda r: None, 1, Fraction(1)),
        'reg-Mat': (lambda r: r, lambda r: None, 3, 1 - x ** 5),
    }
    numer, denom, start, pre = specs[kind]
    R = start + 4
    while True:
        lo, hi = _product_interval(q, R, numer, denom, start, kind == 'ss-GL')
        lo, hi = pre * lo, pre * hi
        if hi - lo <= eps:
            return lo, hi
        R *= 2


def limit_probability(kind: str, q: int, eps=Fraction(1, 10 ** 12)) -> tuple[Fraction, Fraction]:
    """(value, error bound): the midpoint of the certified interval and its half-width."""
    lo, hi = limit_interval(kind, q, eps)
    return (lo + hi) / 2, (hi - lo) / 2


LIMIT_SOURCES = {
    'ss-Mat': ('Mat', 'semisimple'), 'ss-GL': ('GL', 'semisimple'),
    'rss-Mat': ('Mat', 'regular-semisimple'), 'reg-Mat': ('Mat', 'regular'),
    'rss-GL': ('GL', 'regular-semisimple'), 'reg-GL': ('GL', 'regular'),
}


def finite_sequence(kind: str, q: int, n_max: int) -> list[Fraction]:
    """[P_1, ..., P_{n_max}] for the property and family behind a limit kind."""
    family, prop = LIMIT_SOURCES[kind]
    s = cycle_index_series(family, q, Weight.predicate(prop), n_max)
    return [coefficient_to_probability(family, n, q, s[n]) for n in range(1, n_max + 1)]


def neumann_praeger_bounds(q: int) -> dict[str, tuple]:
    """Bounds on P(not rss) and P(not regular) for Mat(n, q), n >= 2."""
    x = Fraction(1, q)
    return {
        'not-rss-lower': x - x ** 2 - x ** 3,
        'not-regular-lower': Fraction(1, q * q * (q + 1)),
        'not-regular-upper': Fraction(1, (q * q - 1) * (q - 1)),
    }


def neumann_praeger_check(n: int, q: int) -> dict:
    b = neumann_praeger_bounds(q)
    not_rss = 1 - finite_n_probability('Mat', n, q, 'regular-semisimple')
    not_reg = 1 - finite_n_probability('Mat', n, q, 'regular')
    return {
        'n': n, 'q': q, 'not_rss': not_rss, 'not_regular': not_reg,
        'ok': (not_rss >= b['not-rss-lower']
               and b['not-regular-lower'] <= not_reg <= b['not-regular-upper']),
    }


# -- product lemmas --------------------------------------------------------

def allpoly_check(q: int, t: int, N: int) -> bool:
    """prod over all monic irreducible phi of (1 - u^m / q^{mt}) == 1 - u / q^{t-1}."""
    lhs = TruncSeries.one(N)
    for m in range(1, N + 1):
        f = TruncSeries([1] + [0] * (m - 1) + [-Fraction(1, q ** (m * t))], N)
        lhs = lhs * (f ** irreducible_count(q, m, exclude_z=False))
    rhs = TruncSeries([1, -Fraction(1, q ** (t - 1))], N)
    return lhs == rhs


def product_lemma_series(q: int, N: int, R: int) -> TruncSeries:
    """prod_{phi != z} prod_{r <= R} (1 - u^m / q^{rm}); tends to 1 - u as R grows."""
    out = TruncSeries.one(N)
    for m in range(1, N + 1):
        per = TruncSeries.one(N)
        for r in range(1, R + 1):
            per = per * TruncSeries([1] + [0] * (m - 1) + [-Fraction(1, q ** (r * m))], N)
        out = out * (per ** irreducible_count(q, m, exclude_z=True))
    return out


# -- Gordon ------------------------------------------------------------------

def _inv_x_poch(n: int, M: int) -> TruncSeries:
    """1 / (x)_n as an integer power series to x^M."""
    s = TruncSeries.one(M)
    for j in range(1, n + 1):
        # 1/(1 - x^j) = sum x^{jk}
        s = s * TruncSeries([1 if d % j == 0 else 0 for d in range(M + 1)], M)
    return s


def gordon_sides(k: int, i: int, M: int) -> tuple[TruncSeries, TruncSeries]:
    """Both sides of Gordon's identity as power series in x, truncated at x^M."""
    if k < 2 or not 1 <= i <= k:
        raise ValueError('need k >= 2 and 1 <= i <= k')
    lhs = [0] * (M + 1)
    lhs_s = TruncSeries(lhs, M)

    def rec(j, ns):
        # ns = (n_j, ..., n_{k-1}) chosen from the top down; N_j = n_j + ... + n_{k-1}
        nonlocal lhs_s
        if j == 0:
            Ns = []
            acc = 0
            for nv in ns:
                acc += nv
                Ns.append(acc)
            Ns = Ns[::-1]  # Ns[0] = N_1
            e = sum(N * N for N in Ns) + sum(Ns[i - 1:])
            if e <= M:
                term = TruncSeries.one(M)
                for nv in ns:
                    term = term * _inv_x_poch(nv, M)
                lhs_s = lhs_s + TruncSeries.monomial(1, e, M) * term
            return
        partial = sum(ns)
        nv = 0
        while True:
            Nj = partial + nv
            # N_1 >= N_j, so N_j^2 alone already bounds the exponent
            if Nj * Nj > M:
                break
            rec(j - 1, ns + (nv,))
            nv += 1

    rec(k - 1, ())
    rhs = TruncSeries.one(M)
    mod = 2 * k + 1
    for r in range(1, M + 1):
        if r % mod not in (0, i % mod, (-i) % mod):
            rhs = rhs * TruncSeries([1 if d % r == 0 else 0 for d in range(M + 1)], M)
    return lhs_s, rhs


def gordon_check(k: int, i: int, M: int = 30) -> tuple[bool, TruncSeries, TruncSeries]:
    lhs, rhs = gordon_sides(k, i, M)
    return lhs == rhs, lhs, rhs


def corollary_part_check(k: int, q: int, M: int = 30) -> dict:
    """The c_gl form of Gordon's identity with i = k at x = 1/q.

    Three checks: (a) each 1/c_gl(lam, q) with lam_1 < k equals
    x^{sum lam'^2} / prod (x)_{m_i} at x = 1/q; (b) the formal series
    (x)_inf * sum_{lam_1<k} x^{sum lam'^2}/prod (x)_{m_i} equals
    prod_{r = 0, -+k mod 2k+1} (1 - x^r) to x^M; (c) numerically, the partial
    sum of 1/c_gl times prod (1 - q^{-r}) lies within a certified distance of
    the product on the right.
    """
    x = Fraction(1, q)

    def poch(n):
        out = Fraction(1)
        for j in range(1, n + 1):
            out *= 1 - x ** j
        return out

    per_lambda = True
    formal = TruncSeries([0], M)
    for size in range(M + 1):
        for lam in enumerate_partitions(size):
            if lam and lam[0] >= k:
                continue
            e = sum(d * d for d in lam.dual())
            mults = lam.multiplicities.values()
            val = x ** e
            for mm in mults:
                val /= poch(mm)
            if Fraction(1, c_gl(lam, q)) != val:
                per_lambda = False
            if e <= M:
                term = TruncSeries.monomial(1, e, M)
                for mm in mults:
                    term = term * _inv_x_poch(mm, M)
                formal = formal + term
    x_poch_inf = TruncSeries.one(M)
    for r in range(1, M + 1):
        x_poch_inf = x_poch_inf * (TruncSeries.monomial(-1, r, M) + 1)
    lhs = x_poch_inf * formal
    rhs = TruncSeries.one(M)
    mod = 2 * k + 1
    for r in range(1, M + 1):
        if r % mod in (0, k % mod, (-k) % mod):
            rhs = rhs * (TruncSeries.monomial(-1, r, M) + 1)
    formal_ok = lhs == rhs
    # numeric: both sides as exact rationals truncated at x^M, tails bounded
    lhs_val = sum((c * x ** d for d, c in enumerate(lhs)), Fraction(0))
    rhs_val = sum((c * x ** d for d, c in enumerate(rhs)), Fraction(0))
    direct = Fraction(0)
    for size in range(M + 1):
        for lam in enumerate_partitions(size):
            if not lam or lam[0] < k:
                direct += Fraction(1, c_gl(lam, q))
    for r in range(1, 4 * M):
        direct *= 1 - x ** r
    tol = Fraction(4 * (M + 2) ** 2, q ** (M // 2))
    numeric_ok = abs(direct - rhs_val) <= tol and abs(lhs_val - rhs_val) <= tol
    return {'per_lambda': per_lambda, 'formal': formal_ok, 'numeric': numeric_ok,
            'ok': per_lambda and formal_ok and numeric_ok}


# -- characteristic polynomials --------------------------------------------

def _split_charpoly(family: str, F, phi):
    """Factor phi and group factors by slot: list of (role, poly, exponent)."""
    facs = ffpoly.factor(F, phi)
    table = dict(facs)
    out = []
    done = set()
    for p, e in facs:
        if p in done:
            continue
        role, members = _role_of(family, F, p)
        if role == 'pair':
            partner = members[1]
            if table.get(partner) != e:
                return None
            done.update(members)
        else:
            done.add(p)
        out.append((role, p, e))
    return out


def charpoly_count(family: str, q: int, phi) -> Fraction:
    """Elements with characteristic polynomial phi (closed forms).

    GL, U, Sp: a count.  Orthogonal: half the sum of the proportions in
    O+(n, q) and O-(n, q).  Incompatible phi give 0.
    """
    family = normalize_family(family)
    if family == 'Mat':
        raise ValueError('charpoly_count covers GL, U, Sp and O')
    _check_q(family, q)
    F = field(q * q if family == 'U' else q)
    phi = tuple(phi)
    if phi[-1] != 1:
        raise ValueError('phi must be monic')
    n = len(phi) - 1
    if phi[0] == 0:
        return Fraction(0)
    parts = _split_charpoly(family, F, phi)
    if parts is None:
        return Fraction(0)
    if family == 'GL':
        out = Fraction(gl_order(n, q))
        for _, p, j in parts:
            m = len(p) - 1
            out *= Fraction(q ** (m * j * (j - 1)), gl_order(j, q ** m))
        return out
    if family == 'U':
        out = Fraction(u_order(n, q))
        for role, p, j in parts:
            m = len(p) - 1
            if role == 'self':
                out *= Fraction(q ** (m * j * (j - 1)), u_order(j, q ** m))
            else:
                out *= Fraction(q ** (2 * m * j * (j - 1)), gl_order(j, q ** (2 * m)))
        return out
    # Sp and O
    rest = Fraction(1)
    a = b = 0
    for role, p, j in parts:
        m = len(p) - 1
        if role == 'pm1':
            if p == (1, 1):
                b = j
            else:
                a = j
        elif role == 'self':
            rest *= Fraction(q ** (m * j * (j - 1) // 2), u_order(j, q ** (m // 2)))
        else:
            rest *= Fraction(q ** (m * j * (j - 1)), gl_order(j, q ** m))
    if family == 'Sp':
        if n % 2 or a % 2 or b % 2:
            return Fraction(0)
        out = Fraction(sp_order(n, q))
        for e in (a // 2, b // 2):
            out *= Fraction(q ** (2 * e * e), sp_order(2 * e, q))
        return out * rest

    def F_(t):
        s = t - t % 2
        return Fraction(q ** (s * s // 2), sp_order(s, q))
    return F_(a) * F_(b) / 2 * rest


def charpoly_by_series(family: str, q: int, phi) -> Fraction:
    """The same quantity via pinned cycle-index coefficients."""
    family = normalize_family(family)
    F = field(q * q if family == 'U' else q)
    phi = tuple(phi)
    n = len(phi) - 1
    if phi[0] == 0:
        return Fraction(0)
    parts = _split_charpoly(family, F, phi)
    if parts is None:
        return Fraction(0)
    pins = {p: j for _, p, j in parts}
    coeff = pinned_series(family, q, pins, n)[n]
    if family == 'GL':
        return coeff * gl_order(n, q)
    if family == 'U':
        return coeff * u_order(n, q)
    if family == 'Sp':
        return coeff * sp_order(n, q)
    return coeff / 2


def steinberg_identity(family: str, n: int, q: int) -> tuple[Fraction, int]:
    """(number of unipotent elements from the cycle index, |p-Sylow|^2).

    For the orthogonal family the first entry is the average unipotent
    proportion times the order, which equals the count in either group.
    """
    family = normalize_family(family)
    p = ffpoly._prime_power(q)[0]
    if family == 'GL':
        order = gl_order(n, q)
    elif family == 'U':
        order = u_order(n, q)
    elif family == 'Sp':
        order = sp_order(n, q)
    else:
        order = None
    F = field(q * q if family == 'U' else q)
    phi = ffpoly.poly_pow(F, (F.neg(1), 1), n)
    val = charpoly_count(family, q, phi)
    if family == 'O':
        # equal unipotent counts in both groups: use O+ order
        order = o_order(n, q, 1)
        # both groups hold the same number s of unipotents, so the average
        # proportion is s (1/|O+| + 1/|O-|) / 2
        inv = (Fraction(1, o_order(n, q, 1)) + Fraction(1, o_order(n, q, -1))) / 2
        val = val / inv
    sylow = 1
    while order % p == 0:
        order //= p
        sylow *= p
    return val, sylow * sylow


# -- Jordan blocks -----------------------------------------------------------

def jordan_block_means(family: str, q: int, n_max: int) -> dict[int, Fraction]:
    """E[X_n] for n = 1..n_max (Sp: even n only); O: the average over O+ and O-."""
    family = normalize_family(family)
    _check_q(family, q)
    s = cycle_index_series(family, q, Weight.mark(), n_max)
    out = {}
    for n in range(1, n_max + 1):
        c = s[n]
        if family == 'Sp' and n % 2:
            continue
        value, deriv = (c.a, c.b) if isinstance(c, Dual) else (c, 0)
        out[n] = Fraction(deriv) / Fraction(value)
    return out


def jordan_block_mean(family: str, n: int, q: int) -> Fraction:
    return jordan_block_means(family, q, n)[n]


def gl_jordan_mean_closed_form(n: int, q: int) -> Fraction:
    """sum_{r<=n} (sum_{m | r} I_{m,q}) / (q^r - 1)."""
    return sum((Fraction(sum(irreducible_count(q, m) for m in range(1, r + 1) if r % m == 0),
                         q ** r - 1) for r in range(1, n + 1)), Fraction(0))


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def jordan_residuals(family: str, q: int, n_max: int) -> list[tuple[int, Fraction, float]]:
    """(n, E[X_n], E[X_n] - c H_k): c = 1 for GL, 3/2 otherwise; k = n/2 for Sp."""
    family = normalize_family(family)
    c = Fraction(1) if family in ('GL', 'Mat') else Fraction(3, 2)
    rows = []
    for n, e in jordan_block_means(family, q, n_max).items():
        k = n // 2 if family == 'Sp' else n
        rows.append((n, e, float(e - c * harmonic(k))))
    return rows


# -- q -> infinity -----------------------------------------------------------

def _cycle_types(n: int):
    """Vectors (a_1, ..., a_n) with sum m a_m = n."""
    for lam in enumerate_partitions(n):
        a = [0] * n
        for part in lam:
            a[part - 1] += 1
        yield tuple(a)


def symmetric_cycle_type_distribution(n: int) -> dict[tuple, Fraction]:
    out = {}
    for a in _cycle_types(n):
        p = Fraction(1)
        for m, am in enumerate(a, start=1):
            p /= math.factorial(am) * m ** am
        out[a] = p
    return out


def factorization_type_distribution(n: int, q: int) -> dict[tuple, Fraction]:
    """P(characteristic polynomial has a_m degree-m factors) over GL(n, q)."""
    s = cycle_index_series('GL', q, Weight.weyl(), n)
    c = s[n]
    out = {a: Fraction(0) for a in _cycle_types(n)}
    terms = c.terms if isinstance(c, MPoly) else {(): c}
    for exps, v in terms.items():
        a = tuple(exps) + (0,) * (n - len(exps))
        out[a] += v
    return out


def weyl_limit_distance(n: int, q: int) -> Fraction:
    """Total-variation distance to the S_n cycle-type distribution."""
    gl = factorization_type_distribution(n, q)
    sym = symmetric_cycle_type_distribution(n)
    return sum((abs(gl[a] - sym[a]) for a in sym), Fraction(0)) / 2


# -- average order -----------------------------------------------------------

def avg_order_lower_bound(family: str, n: int, q: int) -> Fraction:
    """Lower bound for the mean element order from one family of regular semisimple elements.

    Each construction contributes (number of admissible polynomials) x
    (element order) x (proportion of the group with that characteristic
    polynomial).  Orthogonal: the average over O+(n, q) and O-(n, q); n is the
    matrix dimension throughout (Sp needs n even).
    """
    family = normalize_family(family)
    _check_q(family, q)
    if n < 1:
        raise ValueError('n must be >= 1')
    if family == 'U':
        if n % 2:
            N = q ** n + 1
            count = polys_with_root_order(q * q, n, N)
            prop = Fraction(1, abs(c_gl(Partition((1,)), -(q ** n))))
        else:
            N = q ** n - 1
            # pairs {phi, tilde phi} of degree n/2 polynomials over F_{q^2}
            count = Fraction(polys_with_root_order(q * q, n // 2, N), 2)
            prop = Fraction(1, c_gl(Partition((1,)), q ** n))
        return count * N * prop
    if family == 'Sp':
        if n % 2:
            raise ValueError('symplectic dimension must be even')
        k = n // 2
        N = q ** k + 1
        count = polys_with_root_order(q, n, N)
        prop = Fraction(1, abs(c_gl(Partition((1,)), -(q ** k))))
        return count * N * prop
    if family == 'O':
        l = n // 2
        if l == 0:
            return Fraction(1)
        N = q ** l + 1
        count = polys_with_root_order(q, 2 * l, N)
        prop_sum = Fraction(1, abs(c_gl(Partition((1,)), -(q ** l))))
        if n % 2:
            # (z - 1) phi and (z + 1) phi, each with both signs on the linear slot
            prop_sum *= 2 * sum(Fraction(1) / c_o(s, q) for s in enumerate_o_signed(1))
        return count * N * prop_sum / 2
    raise ValueError('average-order bounds cover U, Sp and O')


# -- output helpers ----------------------------------------------------------

def series_to_json(s: TruncSeries) -> str:
    return s.to_json()


def probability_rows_csv(rows) -> str:
    """CSV with columns family, n, q, property, exact, decimal."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(['family', 'n', 'q', 'property', 'exact', 'decimal'])
    for family, n, q, prop, val in rows:
        w.writerow([family, n, q, prop, str(val), f'{float(val):.12g}'])
    return buf.getvalue()


def fraction_json(v: Fraction) -> str:
    return json.dumps(str(Fraction(v)))
