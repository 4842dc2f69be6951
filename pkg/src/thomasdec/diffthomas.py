"""Differential Thomas decomposition.

Extends the algebraic engine with Janet division: each equation reduces
only derivatives of its leader taken along its multiplicative derivations,
and every non-multiplicative prolongation is fed back into the queue until
all of them reduce to zero (passivity).
"""

from . import exactpoly as ep
from .algthomas import (DEFAULT_CAP, Decomposition, DiffSystem, Engine, Reducer,
                        SimpleSystem, check_simple, clean, is_unit)
from .diffring import DerivativeSymbol, differentiate
from .errors import ContractError

ThomasDecomposition = Decomposition
SimpleDiffSystem = SimpleSystem


def janet_axes(ranking):
    """Derivation order used for Janet division: time first, then the ranking's axes."""
    ring = ranking.ring
    axes = list(ranking.axis_order) if ranking.axis_order else list(ring.independents)
    if ring.time is not None and ring.time not in axes:
        axes = [ring.time] + axes
    return tuple(axes)


def janet_assign(leaders, axes=None):
    """Multiplicative derivations for each leader.

    ``leaders`` is a list of :class:`DerivativeSymbol`.  Leaders of
    different fields never interact.  An axis is multiplicative for a leader
    iff its order on that axis is maximal among the leaders of the same field
    that agree with it on all earlier axes.  Returns a list of frozensets of
    axis names aligned with ``leaders``.
    """
    if not leaders:
        return []
    if axes is None:
        axes = leaders[0].axes
    out = []
    for L in leaders:
        group = [M for M in leaders if M.field == L.field]
        mult = set()
        for k, ax in enumerate(axes):
            earlier = axes[:k]
            peers = [M for M in group if all(M.order_on(a) == L.order_on(a) for a in earlier)]
            if L.order_on(ax) == max(M.order_on(ax) for M in peers):
                mult.add(ax)
        out.append(frozenset(mult))
    return out


def cross_derivative(p, q, r):
    """Leader-eliminating combination of ``p`` and ``q`` prolonged to a common leader.

    Both are differentiated up to the least common derivative of their
    leaders; the result is ``sep(q') * p' - sep(p') * q'`` with ``'`` the
    prolongations (for equal leaders the prolongations are ``p`` and ``q``).
    """
    L1, L2 = r.leader_symbol(p), r.leader_symbol(q)
    if not (isinstance(L1, DerivativeSymbol) and isinstance(L2, DerivativeSymbol)) \
            or L1.field != L2.field:
        raise ContractError("cross_derivative: leaders belong to different indeterminates")
    top = tuple(max(a, b) for a, b in zip(L1.orders, L2.orders))
    pp, qq = p, q
    for ax, a, t in zip(L1.axes, L1.orders, top):
        for _ in range(t - a):
            pp = differentiate(pp, ax)
    for ax, b, t in zip(L2.axes, L2.orders, top):
        for _ in range(t - b):
            qq = differentiate(qq, ax)
    v = ep.intern(DerivativeSymbol(L1.field, top, L1.axes))
    if pp.degree(v) == 1 and qq.degree(v) == 1:
        a, b = pp.lead_coeff(v), qq.lead_coeff(v)
        g = ep.gcd(a, b)
        return ep.exact_div(b, g) * pp - ep.exact_div(a, g) * qq
    if pp.degree(v) >= qq.degree(v):
        return ep.prem(pp, qq, v)
    return ep.prem(qq, pp, v)


class DiffEngine(Engine):
    differential = True

    def __init__(self, ranking, generic=True, cap=DEFAULT_CAP, factor=True):
        super().__init__(ranking, generic, cap, factor)
        self.axes = janet_axes(ranking)

    def _assign(self, b):
        lids = list(b.eqs)
        syms = [ep.var_object(v) for v in lids]
        dsyms = [(v, s) for v, s in zip(lids, syms) if isinstance(s, DerivativeSymbol)]
        mult = janet_assign([s for _, s in dsyms], self.axes)
        b.mult = {v: m for (v, _), m in zip(dsyms, mult)}
        b.version += 1

    def _prolongations(self, b):
        for v, it in b.eqs.items():
            sym = ep.var_object(v)
            if not isinstance(sym, DerivativeSymbol):
                continue
            for ax in self.axes:
                if ax not in b.mult.get(v, ()):
                    yield it.poly, ax

    def _after_insert(self, b, v):
        self._assign(b)
        for p, ax in list(self._prolongations(b)):
            if (p, ax) not in b.prolonged:
                b.prolonged.add((p, ax))
                b.queue.append(self.item("eq", differentiate(p, ax)))

    def _requeue_above(self, b, v):
        super()._requeue_above(b, v)
        self._assign(b)

    def _drop_eq(self, b, v):
        it = super()._drop_eq(b, v)
        self._assign(b)
        return it

    def _complete(self, b):
        added = False
        for p, ax in list(self._prolongations(b)):
            r = self.reduce(b, differentiate(p, ax))
            if r.terms:
                b.queue.append(self.item("eq", r))
                added = True
        return not added


def diff_decompose(system, generic=True, cap=DEFAULT_CAP, factor=True):
    """Differential Thomas decomposition of ``system``."""
    return DiffEngine(system.ranking, generic, cap, factor).run(system)


def diff_reduce(p, S):
    """Janet pseudo-reduction of ``p`` modulo the simple differential system ``S``."""
    red = Reducer(S.ranking, S.generic, True)
    red.set({S.ranking.leader(e): e for e in S.equations}, S.mult)
    return red.reduce(ep.as_poly(p))


def check_passive(S):
    """Non-multiplicative prolongations of ``S`` that fail to reduce to zero."""
    red = S.reducer()
    axes = janet_axes(S.ranking)
    bad = []
    for e in S.equations:
        v = S.ranking.leader(e)
        if not isinstance(ep.var_object(v), DerivativeSymbol):
            continue
        for ax in axes:
            if ax in S.mult.get(v, ()):
                continue
            if red.reduce(differentiate(e, ax)).terms:
                bad.append((e, ax))
    return bad


def check_diff_simple(S, recurse=True):
    """List of violated conditions for a simple differential system."""
    problems = check_simple(S, recurse=recurse)
    r = S.ranking
    lds = [ep.var_object(r.leader(p)) for p in S.equations]
    syms = [s for s in lds if isinstance(s, DerivativeSymbol)]
    expected = janet_assign(syms, janet_axes(r))
    for s, m in zip(syms, expected):
        if frozenset(S.mult.get(ep.intern(s), ())) != m:
            problems.append(f"Janet assignment of {s} is not the Janet rule")
    for e, ax in check_passive(S):
        problems.append(f"passivity: prolongation of {r.format(e)} by {ax} does not reduce to zero")
    red = S.reducer()
    for q in S.inequations:
        if r.normalize(clean(red.reduce(q), S.generic)) != r.normalize(clean(q, S.generic)):
            problems.append(f"inequation {r.format(q)} is not reduced modulo the equations")
    return problems
