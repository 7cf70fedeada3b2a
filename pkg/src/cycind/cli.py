"""Command-line interface: ``cycind <subcommand> ...``.

Exit codes: 0 ok, 1 domain error (bad input, failed check), 2 budget exceeded.
Exact rationals are always printed; decimals are for reading only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from cycind import classdata, ffpoly, oracle, series
from cycind.classdata import GroupId
from cycind.ffpoly import BudgetExceeded

GROUP_ALIASES = {'O+': 'Oplus', 'O-': 'Ominus', 'Oplus': 'Oplus', 'Ominus': 'Ominus'}


@dataclass
class RunConfig:
    N: int = series.DEFAULT_N
    eps: Fraction = Fraction(1, 10 ** 12)
    class_budget: int = classdata.CLASS_BUDGET
    group_budget: int = oracle.GROUP_BUDGET
    fmt: str = 'table'
    output: str | None = None

    def __post_init__(self):
        if self.N < 0:
            raise ValueError('N must be >= 0')
        if self.eps <= 0:
            raise ValueError('eps must be positive')
        if self.class_budget <= 0 or self.group_budget <= 0:
            raise ValueError('budgets must be positive')


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f'{self.prog}: error: {message}', file=sys.stderr)
        sys.exit(1)


def _dec(v) -> str:
    return f'{float(v):.12g}'


def _table(header, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    lines = ['  '.join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines += ['  '.join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return '\n'.join(line.rstrip() for line in lines)


def _csv(header, rows) -> str:
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip('\n')


def _emit(cfg: RunConfig, header, rows, obj, headline: str | None = None) -> str:
    if cfg.fmt == 'json':
        return json.dumps(obj, indent=2, default=str)
    if cfg.fmt == 'csv':
        return _csv(header, rows)
    if headline is not None:
        return headline
    return _table(header, rows)


def _group(args) -> GroupId:
    fam = GROUP_ALIASES.get(args.family, args.family)
    return GroupId(fam, args.n, args.q)


# -- subcommands -------------------------------------------------------------

def cmd_irred(args, cfg):
    q, m = args.q, args.m
    if args.self_tilde:
        F = ffpoly.field(q * q)
        count = ffpoly.self_tilde_count(q, m)
        polys = ffpoly.enumerate_self_tilde_irreducibles(F, m) if args.action == 'list' else None
        kind = 'self-tilde'
    elif args.self_bar:
        F = ffpoly.field(q)
        count = ffpoly.self_bar_count(q, m)
        polys = ([f for f in ffpoly.enumerate_monic_irreducibles(F, m)
                  if f != (0, 1) and ffpoly.bar(F, f) == f]
                 if args.action == 'list' else None)
        kind = 'self-bar'
    else:
        F = ffpoly.field(q)
        count = ffpoly.irreducible_count(q, m)
        polys = ([f for f in ffpoly.enumerate_monic_irreducibles(F, m) if f != (0, 1)]
                 if args.action == 'list' else None)
        kind = 'all'
    if args.action == 'count':
        return _emit(cfg, ['q', 'm', 'kind', 'count'], [[q, m, kind, count]],
                     {'q': q, 'm': m, 'kind': kind, 'count': count}, headline=str(count))
    rows = [[ffpoly.pretty_poly(F, f), ffpoly.format_poly(F, f)] for f in polys]
    obj = {'q': q, 'm': m, 'kind': kind, 'polys': [ffpoly.format_poly(F, f) for f in polys]}
    return _emit(cfg, ['poly', 'coefficients'], rows, obj)


def cmd_classes(args, cfg):
    g = _group(args)
    data = classdata.enumerate_classes(g, budget=cfg.class_budget)
    F = g.poly_field
    total = sum(s for _, s in data)
    if args.sizes_only:
        rows = [[s] for _, s in data]
        obj = {'group': str(g), 'sizes': [s for _, s in data], 'total': total}
        return _emit(cfg, ['size'], rows, obj)
    rows = []
    for d, s in data:
        desc = '; '.join(f'{ffpoly.pretty_poly(F, p)}: {lam}' for p, lam in d.entries) or '-'
        rows.append([desc, s, classdata.centralizer_order(d)])
    obj = {'group': str(g), 'order': classdata.group_order(g), 'classes': [
        {**json.loads(d.to_json()), 'size': s} for d, s in data]}
    out = _emit(cfg, ['datum', 'size', 'centralizer'], rows, obj)
    if cfg.fmt == 'table':
        out += f'\n{len(data)} classes, total {total} = |{g}| = {classdata.group_order(g)}'
    return out


def cmd_prob(args, cfg):
    val = series.finite_n_probability(args.family, args.n, args.q, args.property)
    row = [args.family, args.n, args.q, args.property, str(val), _dec(val)]
    obj = {'family': args.family, 'n': args.n, 'q': args.q, 'property': args.property,
           'exact': str(val), 'decimal': float(val)}
    return _emit(cfg, ['family', 'n', 'q', 'property', 'exact', 'decimal'], [row], obj,
                 headline=f'{val}\n{_dec(val)}')


def cmd_limit(args, cfg):
    eps = Fraction(args.eps) if args.eps is not None else cfg.eps
    lo, hi = series.limit_interval(args.kind, args.q, eps)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    digits = max(1, len(str(int(1 / eps))) - 1) if eps < 1 else 1
    shown = f'{float(mid):.{min(digits, 15)}g}'
    obj = {'kind': args.kind, 'q': args.q, 'value': float(mid), 'lower': str(lo),
           'upper': str(hi), 'error_bound': float(half)}
    rows = [[args.kind, args.q, shown, f'{float(half):.3g}']]
    return _emit(cfg, ['kind', 'q', 'value', 'error'], rows, obj,
                 headline=f'{shown}\n(certified within {float(half):.3g})')


def cmd_charpoly(args, cfg):
    fam = series.normalize_family(args.family)
    F = ffpoly.field(args.q ** 2 if fam == 'U' else args.q)
    phi = ffpoly.parse_poly(F, args.poly)
    val = series.charpoly_count(fam, args.q, phi)
    n = len(phi) - 1
    label = 'proportion' if fam == 'O' else 'count'
    obj = {'family': args.family, 'q': args.q, 'poly': args.poly, 'degree': n,
           label: str(val)}
    return _emit(cfg, ['family', 'q', 'poly', label], [[args.family, args.q,
                                                        ffpoly.pretty_poly(F, phi), val]], obj,
                 headline=str(val))


def cmd_jordan_mean(args, cfg):
    rows = series.jordan_residuals(args.family, args.q, args.n_max)
    out_rows = [[n, e, _dec(e), f'{r:.6f}'] for n, e, r in rows]
    obj = {'family': args.family, 'q': args.q,
           'rows': [{'n': n, 'mean': str(e), 'residual': r} for n, e, r in rows]}
    return _emit(cfg, ['n', 'E[X_n]', 'decimal', 'residual'], out_rows, obj)


def cmd_gordon(args, cfg):
    ok, lhs, rhs = series.gordon_check(args.k, args.i, args.max_degree)
    obj = {'k': args.k, 'i': args.i, 'max_degree': args.max_degree, 'equal': ok,
           'lhs': json.loads(lhs.to_json()), 'rhs': json.loads(rhs.to_json())}
    word = 'EQUAL' if ok else 'DIFFER'
    return _emit(cfg, ['k', 'i', 'max_degree', 'result'], [[args.k, args.i, args.max_degree, word]],
                 obj, headline=f'{word} through x^{args.max_degree}'), (0 if ok else 1)


def cmd_weyl(args, cfg):
    qs = [int(x) for x in args.q_list.split(',')]
    rows = []
    for q in qs:
        d = series.weyl_limit_distance(args.n, q)
        rows.append([args.n, q, d, _dec(d)])
    obj = {'n': args.n, 'rows': [{'q': q, 'tv': str(d), 'decimal': float(d)}
                                 for _, q, d, _ in rows]}
    return _emit(cfg, ['n', 'q', 'tv', 'decimal'], rows, obj)


def cmd_avg_order(args, cfg):
    val = series.avg_order_lower_bound(args.family, args.n, args.q)
    obj = {'family': args.family, 'n': args.n, 'q': args.q, 'bound': str(val)}
    return _emit(cfg, ['family', 'n', 'q', 'bound', 'decimal'],
                 [[args.family, args.n, args.q, val, _dec(val)]], obj,
                 headline=f'{val}\n{_dec(val)}')


def cmd_certify(args, cfg):
    g = _group(args)
    oracle.enumerate_group(g, budget=cfg.group_budget)
    report = oracle.certify(g)
    return _emit(cfg, ['group', 'classes', 'elements', 'status'],
                 [[report['group'], report['classes'], report['elements'], report['status']]],
                 report, headline=report['summary'])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog='cycind', description='Cycle indices of the finite classical groups.')
    p.add_argument('--format', choices=('table', 'json', 'csv'), default='table')
    p.add_argument('--output', '-o', help='write to this file instead of stdout')
    p.add_argument('--budget', type=int, help='enumeration budget (classes and elements)')
    sub = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    s = sub.add_parser('irred', help='irreducible polynomial counts and lists')
    s.add_argument('action', choices=('count', 'list'))
    s.add_argument('--q', type=int, required=True)
    s.add_argument('--m', type=int, required=True)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument('--self-tilde', action='store_true')
    grp.add_argument('--self-bar', action='store_true')
    s.set_defaults(func=cmd_irred)

    families = ('GL', 'Mat', 'U', 'Sp', 'Oplus', 'Ominus', 'O+', 'O-')
    for name, func, hlp in (('classes', cmd_classes, 'list conjugacy classes'),
                            ('certify', cmd_certify, 'brute-force certification')):
        s = sub.add_parser(name, help=hlp)
        s.add_argument('--family', required=True, choices=families)
        s.add_argument('--n', type=int, required=True)
        s.add_argument('--q', type=int, required=True)
        if name == 'classes':
            s.add_argument('--sizes-only', action='store_true')
        s.set_defaults(func=func)

    s = sub.add_parser('prob', help='exact finite-n probability')
    s.add_argument('--family', required=True, choices=('GL', 'Mat', 'U', 'Sp', 'O'))
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--q', type=int, required=True)
    s.add_argument('--property', required=True, choices=sorted(series.PROPERTIES))
    s.set_defaults(func=cmd_prob)

    s = sub.add_parser('limit', help='n -> infinity probability with certified error')
    s.add_argument('--kind', required=True, choices=series.LIMIT_KINDS)
    s.add_argument('--q', type=int, required=True)
    s.add_argument('--eps', help='error target, e.g. 1e-12 or 1/1000')
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser('charpoly', help='elements with a given characteristic polynomial')
    s.add_argument('--family', required=True, choices=('GL', 'U', 'Sp', 'O'))
    s.add_argument('--q', type=int, required=True)
    s.add_argument('--poly', required=True, help='coefficients low to high, e.g. 1,1,1')
    s.set_defaults(func=cmd_charpoly)

    s = sub.add_parser('jordan-mean', help='mean number of Jordan blocks')
    s.add_argument('--family', required=True, choices=('GL', 'U', 'Sp', 'O'))
    s.add_argument('--q', type=int, required=True)
    s.add_argument('--n-max', type=int, default=30)
    s.set_defaults(func=cmd_jordan_mean)

    s = sub.add_parser('gordon', help='check the Gordon identity')
    s.add_argument('--k', type=int, required=True)
    s.add_argument('--i', type=int, required=True)
    s.add_argument('--max-degree', type=int, default=30)
    s.set_defaults(func=cmd_gordon)

    s = sub.add_parser('weyl', help='distance to the symmetric-group cycle type')
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--q-list', default='2,3,5,11,101')
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser('avg-order-bound', help='lower-bound ingredient for the mean order')
    s.add_argument('--family', required=True, choices=('U', 'Sp', 'O'))
    s.add_argument('--n', type=int, required=True)
    s.add_argument('--q', type=int, required=True)
    s.set_defaults(func=cmd_avg_order)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(fmt=args.format, output=args.output,
                        class_budget=args.budget or classdata.CLASS_BUDGET,
                        group_budget=args.budget or oracle.GROUP_BUDGET)
        result = args.func(args, cfg)
    except BudgetExceeded as e:
        print(f'budget exceeded: {e}', file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, oracle.CertificationError) as e:
        print(f'error: {e}', file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if cfg.output:
        with open(cfg.output, 'w') as fh:
            fh.write(result + '\n')
    else:
        print(result)
    return code


if __name__ == '__main__':
    sys.exit(main())
