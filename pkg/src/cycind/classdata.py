"""Conjugacy-class data for GL, Mat, U, Sp and O, with Wall-type class sizes.

A :class:`ClassDatum` maps polynomials to partitions.  For U and Sp/O both
members of an involution pair are stored, so the datum reads exactly like
the rational canonical form of a member.  The centralizer is assembled from
"slots": z -+ 1 (signed), self-involutive polynomials, and pairs.
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from cycind import ffpoly
from cycind.ffpoly import BudgetExceeded, FiniteField, bar, field, tilde
from cycind.partitions import (
    OSignedPartition, Partition, SignedPartition, SpSignedPartition, c_gl, c_o, c_sp,
    c_u, enumerate_o_signed, enumerate_partitions, enumerate_sp_signed, gl_order,
    o_order, sp_order, u_order,
)

FAMILIES = ('GL', 'Mat', 'U', 'Sp', 'Oplus', 'Ominus')

#: Upper bound on the number of class data produced by one enumeration.
CLASS_BUDGET = int(os.environ.get('CYCIND_CLASS_BUDGET', 2_000_000))


@dataclass(frozen=True)
class GroupId:
    family: str
    n: int
    q: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f'unknown family {self.family!r}')
        if self.n < 0:
            raise ValueError('dimension must be >= 0')
        ffpoly._prime_power(self.q)
        if self.family == 'Sp' and self.n % 2:
            raise ValueError('symplectic groups need even dimension')
        if self.family in ('Sp', 'Oplus', 'Ominus') and self.q % 2 == 0:
            raise ValueError('characteristic 2 is not supported for Sp/O')

    @property
    def is_orthogonal(self) -> bool:
        return self.family in ('Oplus', 'Ominus')

    @property
    def sign(self) -> int:
        return -1 if self.family == 'Ominus' else 1

    @property
    def poly_field(self) -> FiniteField:
        """Field of the characteristic-polynomial coefficients."""
        return field(self.q ** 2 if self.family == 'U' else self.q)

    def __str__(self):
        name = {'Oplus': 'O+', 'Ominus': 'O-'}.get(self.family, self.family)
        return f'{name}({self.n},{self.q})'


def group_order(g: GroupId) -> int:
    n, q = g.n, g.q
    if g.family == 'GL':
        return gl_order(n, q)
    if g.family == 'Mat':
        return q ** (n * n)
    if g.family == 'U':
        return u_order(n, q)
    if g.family == 'Sp':
        return sp_order(n, q)
    return o_order(n, q, g.sign)


# -- Witt types -----------------------------------------------------------

class WittType:
    """Witt class of a nondegenerate quadratic form over F_q, q odd.

    Stored as (dimension parity, whether the signed discriminant
    (-1)^{floor(d/2)} det is a square).  Sums are computed on representative
    diagonal forms of dimension 0, 1 or 2.
    """

    __slots__ = ('parity', 'square', 'q')

    def __init__(self, parity: int, square: bool, q: int):
        self.parity = parity % 2
        self.square = bool(square)
        self.q = q

    @classmethod
    def of_orthogonal(cls, dim: int, sign: int, q: int) -> 'WittType':
        """Type of the form whose isometry group is O^sign(dim, q)."""
        return cls(dim, sign > 0 or dim == 0, q)

    @classmethod
    def zero(cls, q):
        return cls(0, True, q)

    @classmethod
    def omega(cls, q):
        return cls(0, False, q)

    def _rep(self) -> tuple[int, bool]:
        # (dim, det is a square) of a representative
        if self.parity:
            return 1, self.square
        if self.square:
            return 0, True
        # x^2 - delta y^2: det = -delta
        return 2, not _minus_one_square(self.q)

    def __add__(self, other: 'WittType') -> 'WittType':
        d1, s1 = self._rep()
        d2, s2 = other._rep()
        d = d1 + d2
        det_square = s1 == s2
        if (d // 2) % 2 and not _minus_one_square(self.q):
            det_square = not det_square
        return WittType(d, det_square, self.q)

    def __mul__(self, k: int) -> 'WittType':
        out = WittType.zero(self.q)
        for _ in range(k % 4):
            out = out + self
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        return (self.parity, self.square) == (other.parity, other.square)

    def __hash__(self):
        return hash((self.parity, self.square))

    @property
    def name(self) -> str:
        return {(1, True): '1', (1, False): 'delta', (0, True): '0', (0, False): 'omega'}[
            (self.parity, self.square)]

    def __repr__(self):
        return f'WittType({self.name})'

    def group_sign(self) -> int:
        """+1 for types 1 and 0, -1 for delta and omega."""
        return 1 if self.square else -1


def _minus_one_square(q: int) -> bool:
    return q % 4 == 1


# -- class data -----------------------------------------------------------

class ClassDatum:
    """Mapping polynomial -> Partition (or signed partition at z -+ 1)."""

    __slots__ = ('group', 'entries')

    def __init__(self, group: GroupId, entries):
        object.__setattr__(self, 'group', group)
        items = entries.items() if isinstance(entries, dict) else entries
        F = group.poly_field
        clean = {tuple(p): lam for p, lam in items if lam.size}
        object.__setattr__(self, 'entries', tuple(sorted(
            clean.items(), key=lambda kv: ffpoly.poly_key(F, kv[0]))))

    def __setattr__(self, key, value):
        raise AttributeError('class data are immutable')

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __getitem__(self, poly):
        return self.as_dict().get(tuple(poly), Partition())

    def __eq__(self, other):
        return isinstance(other, ClassDatum) and self.group == other.group \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.group, self.entries))

    def __repr__(self):
        F = self.group.poly_field
        inner = ', '.join(f'{ffpoly.pretty_poly(F, p)}: {lam}' for p, lam in self.entries)
        return f'ClassDatum({self.group}, {{{inner}}})'

    def unsigned(self) -> dict:
        """Polynomial -> plain Partition, forgetting signs."""
        return {p: (lam.partition if isinstance(lam, SignedPartition) else lam)
                for p, lam in self.entries}

    def degree(self) -> int:
        return sum(lam.size * (len(p) - 1) for p, lam in self.entries)

    def to_json(self) -> str:
        g = self.group
        F = g.poly_field
        return json.dumps({
            'group': g.family, 'n': g.n, 'q': g.q,
            'data': [{'poly': ffpoly.format_poly(F, p), 'partition': str(lam)}
                     for p, lam in self.entries],
        })

    @classmethod
    def from_json(cls, text: str) -> 'ClassDatum':
        obj = json.loads(text)
        g = GroupId(obj['group'], obj['n'], obj['q'])
        F = g.poly_field
        out = {}
        for item in obj['data']:
            p = ffpoly.parse_poly(F, item['poly'])
            out[p] = _parse_partition_for(g, F, p, item['partition'])
        return cls(g, out)


def _parse_partition_for(g: GroupId, F, p, text: str):
    if p in _plus_minus_one(F) and g.family == 'Sp':
        return SpSignedPartition.parse(text)
    if p in _plus_minus_one(F) and g.is_orthogonal:
        return OSignedPartition.parse(text)
    return Partition.parse(text)


def _plus_minus_one(F: FiniteField) -> tuple[tuple, tuple]:
    """(z - 1, z + 1)."""
    return (F.neg(1), 1), (1, 1)


def _involution(g: GroupId):
    F = g.poly_field
    if g.family == 'U':
        return lambda f: tilde(F, f)
    if g.family in ('Sp', 'Oplus', 'Ominus'):
        return lambda f: bar(F, f)
    return None


def validate(datum: ClassDatum, g: GroupId | None = None) -> tuple[bool, str]:
    """Check a datum against the class parameterization of its group."""
    g = g or datum.group
    same_kind = g.is_orthogonal and datum.group.is_orthogonal and \
        (g.n, g.q) == (datum.group.n, datum.group.q)
    if datum.group != g and not same_kind:
        return False, f'datum belongs to {datum.group}, not {g}'
    F = g.poly_field
    z = (0, 1)
    entries = datum.as_dict()
    pm1 = _plus_minus_one(F)
    for p, lam in entries.items():
        if len(p) < 2 or p[-1] != 1:
            return False, f'{p} is not monic of degree >= 1'
        if not ffpoly.is_irreducible(F, p):
            return False, f'{ffpoly.pretty_poly(F, p)} is not irreducible'
        if p == z and g.family != 'Mat':
            return False, 'λ_z nonempty'
        signed_slot = p in pm1 and g.family in ('Sp', 'Oplus', 'Ominus')
        if signed_slot:
            want = SpSignedPartition if g.family == 'Sp' else OSignedPartition
            if not isinstance(lam, want):
                return False, f'{ffpoly.pretty_poly(F, p)} needs a {want.__name__}'
        elif not isinstance(lam, Partition) or isinstance(lam, SignedPartition):
            return False, f'{ffpoly.pretty_poly(F, p)} needs a plain partition'
    inv = _involution(g)
    if inv is not None:
        for p, lam in entries.items():
            if p == z:
                continue
            partner = inv(p)
            if entries.get(partner, Partition()) != lam:
                return False, (f'λ differs between {ffpoly.pretty_poly(F, p)} '
                               f'and its involution image')
    if datum.degree() != g.n:
        return False, f'total degree {datum.degree()} != {g.n}'
    if g.is_orthogonal:
        sign = witt_type_of_datum(datum)[1]
        if sign != g.sign:
            return False, f'Witt type places the datum in O{"+" if sign > 0 else "-"}'
    return True, 'ok'


def centralizer_order(datum: ClassDatum, g: GroupId | None = None) -> int:
    g = g or datum.group
    ok, why = validate(datum, g)
    if not ok:
        raise ValueError(f'invalid datum: {why}')
    return _centralizer_unchecked(datum, g)


def _centralizer_unchecked(datum: ClassDatum, g: GroupId) -> int:
    q = g.q
    F = g.poly_field
    entries = datum.as_dict()
    out = Fraction(1)
    if g.family in ('GL', 'Mat'):
        for p, lam in entries.items():
            out *= c_gl(lam, q ** (len(p) - 1))
        return int(out)
    inv = _involution(g)
    pm1 = _plus_minus_one(F)
    for p, lam in entries.items():
        m = len(p) - 1
        partner = inv(p)
        if g.family == 'U':
            if partner == p:
                out *= c_u(lam, q ** m)
            elif ffpoly.poly_key(F, p) < ffpoly.poly_key(F, partner):
                out *= c_gl(lam, q ** (2 * m))
        else:
            if p in pm1:
                out *= c_sp(lam, q) if g.family == 'Sp' else c_o(lam, q)
            elif partner == p:
                out *= c_u(lam, q ** (m // 2))
            elif ffpoly.poly_key(F, p) < ffpoly.poly_key(F, partner):
                out *= c_gl(lam, q ** m)
    if out.denominator != 1:
        raise AssertionError(f'non-integral centralizer for {datum}')
    return int(out)


def acting_order(g: GroupId) -> int:
    """Order of the group acting by conjugation (GL(n, q) for Mat)."""
    return gl_order(g.n, g.q) if g.family == 'Mat' else group_order(g)


def class_size(datum: ClassDatum, g: GroupId | None = None) -> int:
    g = g or datum.group
    order = acting_order(g)
    c = centralizer_order(datum, g)
    if order % c:
        raise AssertionError(f'centralizer {c} does not divide {order}')
    return order // c


def witt_type_of_datum(datum: ClassDatum) -> tuple[WittType, int]:
    """Witt type of the ambient form, and the sign of the orthogonal group."""
    g = datum.group
    q = g.q
    F = g.poly_field
    pm1 = _plus_minus_one(F)
    total = WittType.zero(q)
    rest = 0
    for p, lam in datum.entries:
        if p in pm1:
            if not isinstance(lam, OSignedPartition):
                raise ValueError('orthogonal data need signed partitions at z -+ 1')
            signs = dict(lam.signs)
            for i, m in lam.partition.multiplicities.items():
                if i % 2:
                    total = total + WittType.of_orthogonal(m, signs[i], q)
        else:
            rest += lam.size
    total = total + WittType.omega(q) * rest
    return total, total.group_sign()


# -- enumeration ----------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    """One factor of the cycle-index product.

    ``polys`` holds one polynomial, or an involution pair.  ``weight`` is the
    dimension used per unit of partition size.  ``kind`` is 'plain', 'sp' or
    'o'.  ``role`` is 'gl', 'self' (self-involutive, not z -+ 1), 'pair' or
    'pm1'.
    """
    polys: tuple
    weight: int
    kind: str
    role: str


@functools.cache
def _slots_cached(family: str, q: int, max_weight: int) -> tuple[Slot, ...]:
    F = field(q ** 2 if family == 'U' else q)
    out = []
    if family in ('GL', 'Mat'):
        for m in range(1, max_weight + 1):
            for p in ffpoly.enumerate_monic_irreducibles(F, m):
                if p == (0, 1) and family == 'GL':
                    continue
                out.append(Slot((p,), m, 'plain', 'gl'))
        return tuple(out)
    if family == 'U':
        inv = lambda f: tilde(F, f)  # noqa: E731
    else:
        inv = lambda f: bar(F, f)  # noqa: E731
    pm1 = _plus_minus_one(F)
    for m in range(1, max_weight + 1):
        # these degrees only occur in pairs
        pair_only = m % 2 == 0 if family == 'U' else (m % 2 == 1 and m > 1)
        if pair_only and 2 * m > max_weight:
            continue
        for p in ffpoly.enumerate_monic_irreducibles(F, m):
            if p == (0, 1):
                continue
            if family != 'U' and p in pm1:
                kind = 'sp' if family == 'Sp' else 'o'
                out.append(Slot((p,), 1, kind, 'pm1'))
                continue
            partner = inv(p)
            if partner == p:
                out.append(Slot((p,), m, 'plain', 'self'))
            elif ffpoly.poly_key(F, p) < ffpoly.poly_key(F, partner):
                if 2 * m <= max_weight:
                    out.append(Slot((p, partner), 2 * m, 'plain', 'pair'))
    return tuple(out)


def slots(g: GroupId, max_weight: int | None = None) -> tuple[Slot, ...]:
    """Cycle-index slots of weight <= max_weight (default n)."""
    fam = 'O' if g.is_orthogonal else g.family
    return _slots_cached(fam, g.q, g.n if max_weight is None else max_weight)


def _slot_options(slot: Slot, k: int):
    if slot.kind == 'sp':
        return enumerate_sp_signed(k)
    if slot.kind == 'o':
        return enumerate_o_signed(k)
    return enumerate_partitions(k)


def slot_centralizer(g: GroupId, slot: Slot, lam) -> int | Fraction:
    """Centralizer contribution of one slot (pairs counted once)."""
    q = g.q
    m = len(slot.polys[0]) - 1
    if slot.role == 'gl':
        return c_gl(lam, q ** m)
    if slot.role == 'pm1':
        return c_sp(lam, q) if slot.kind == 'sp' else c_o(lam, q)
    if g.family == 'U':
        return c_u(lam, q ** m) if slot.role == 'self' else c_gl(lam, q ** (2 * m))
    return c_u(lam, q ** (m // 2)) if slot.role == 'self' else c_gl(lam, q ** m)


def iter_data(g: GroupId, budget: int | None = None):
    """Yield (entries dict, centralizer) for every datum of dimension n.

    For orthogonal groups both signs are produced; filter with the Witt type.
    """
    budget = CLASS_BUDGET if budget is None else budget
    sl = slots(g)
    n = g.n
    produced = 0

    def rec(start, rem, entries, cent):
        nonlocal produced
        if rem == 0:
            produced += 1
            if produced > budget:
                raise BudgetExceeded(f'more than {budget} class data for {g}')
            yield dict(entries), cent
            return
        for idx in range(start, len(sl)):
            s = sl[idx]
            if s.weight > rem:
                continue
            for k in range(1, rem // s.weight + 1):
                for lam in _slot_options(s, k):
                    for p in s.polys:
                        entries[p] = lam
                    yield from rec(idx + 1, rem - k * s.weight, entries,
                                   cent * slot_centralizer(g, s, lam))
                    for p in s.polys:
                        del entries[p]

    yield from rec(0, n, {}, Fraction(1))


def enumerate_classes(g: GroupId, budget: int | None = None) -> list[tuple[ClassDatum, int]]:
    """Every class datum of g with its class size (orbit size for Mat)."""
    order = acting_order(g)
    out = []
    for entries, cent in iter_data(g, budget):
        datum = ClassDatum(g, entries)
        if g.is_orthogonal and witt_type_of_datum(datum)[1] != g.sign:
            continue
        if cent.denominator != 1 or order % cent.numerator:
            raise AssertionError(f'bad centralizer {cent} for {datum}')
        out.append((datum, order // int(cent)))
    return out
