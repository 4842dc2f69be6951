"""Derivative symbols, derivations and rankings.

A :class:`DerivativeSymbol` names one jet variable ``∂^orders field``; its
``orders`` tuple is aligned with the ring's declared independent variables.
Parameters are constants of the differential field: every derivation sends
them to zero and every ranking puts them below all derivative symbols.
"""

from typing import NamedTuple

from . import exactpoly as ep
from .errors import ContractError
from .exactpoly import Poly


class DerivativeSymbol(NamedTuple):
    field: str
    orders: tuple
    axes: tuple

    @property
    def total_order(self):
        return sum(self.orders)

    def order_on(self, axis):
        return self.orders[self.axes.index(axis)]

    def shifted(self, k, by=1):
        o = list(self.orders)
        o[k] += by
        return DerivativeSymbol(self.field, tuple(o), self.axes)

    def divides(self, other):
        """True if ``other`` is a derivative of ``self`` (same field, orders dominate)."""
        return (self.field == other.field
                and all(a <= b for a, b in zip(self.orders, other.orders)))

    def __str__(self):
        if not any(self.orders):
            return self.field
        idx = ",".join(ax for ax, k in zip(self.axes, self.orders) for _ in range(k))
        return f"{self.field}[{idx}]"


class Parameter(NamedTuple):
    name: str

    def __str__(self):
        return self.name


class DiffRing:
    """Independent variables, field indeterminates and parameters.

    ``time`` names the distinguished independent variable used by
    t-dominant rankings and the Lagrangian layer; it is optional.
    """

    def __init__(self, independents, fields, params=(), time=None):
        self.independents = tuple(independents)
        self.fields = tuple(fields)
        self.params = tuple(params)
        self.time = time
        names = list(self.independents) + list(self.fields) + list(self.params)
        if len(set(names)) != len(names):
            raise ContractError("duplicate name among independents, fields and parameters")
        if time is not None and time not in self.independents:
            raise ContractError(f"time variable {time!r} is not an independent variable")

    def __eq__(self, other):
        return isinstance(other, DiffRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.independents, self.fields, self.params, self.time)

    def symbol(self, field, *axes):
        if field not in self.fields:
            raise ContractError(f"unknown field {field!r}")
        orders = [0] * len(self.independents)
        for ax in axes:
            if ax not in self.independents:
                raise ContractError(f"unknown independent variable {ax!r}")
            orders[self.independents.index(ax)] += 1
        return DerivativeSymbol(field, tuple(orders), self.independents)

    def sym(self, field, *axes):
        """The polynomial consisting of one derivative symbol."""
        return Poly.var(self.symbol(field, *axes))

    def param(self, name):
        if name not in self.params:
            raise ContractError(f"unknown parameter {name!r}")
        return Poly.var(Parameter(name))

    def derivations(self):
        return self.independents


_shift_cache = {}


def _shift_id(i, axis):
    key = (i, axis)
    j = _shift_cache.get(key)
    if j is None:
        obj = ep.var_object(i)
        if isinstance(obj, DerivativeSymbol) and axis in obj.axes:
            j = ep.intern(obj.shifted(obj.axes.index(axis)))
        else:
            j = -1
        _shift_cache[key] = j
    return j


def differentiate(p, axis):
    """Total derivative of ``p`` with respect to the independent variable ``axis``."""
    B = ep.BITS
    acc = {}
    get = acc.get
    for m, c in p.terms.items():
        for i, e in ep.mono_items(m):
            j = _shift_id(i, axis)
            if j < 0:
                continue
            nm = m - (1 << (i * B)) + (1 << (j * B))
            acc[nm] = get(nm, 0) + c * e
    return Poly._raw(acc)


def derive(p, orders, axes):
    """Apply ``∂^orders`` (aligned with ``axes``) to ``p``."""
    for ax, k in zip(axes, orders):
        for _ in range(k):
            p = differentiate(p, ax)
    return p


class Ranking:
    """A total order on derivative symbols and parameters.

    kinds:
      ``degrevlex``  total order first, then the reversed comparison of
                     orders along ``axis_order`` (a smaller exponent on the
                     least significant differing axis ranks higher), then
                     field priority.
      ``tdominant``  order in ``ring.time`` first, then total order in the
                     remaining axes, then degrevlex on them, then field
                     priority.
      ``table``      an explicit list of symbols, highest first.

    ``field_order`` lists fields from highest to lowest priority.
    """

    def __init__(self, ring, kind="degrevlex", axis_order=None, field_order=None,
                 table=None):
        self.ring = ring
        self.kind = kind
        if kind not in ("degrevlex", "tdominant", "table"):
            raise ContractError(f"unknown ranking kind {kind!r}")
        self._cache = {}
        if kind == "table":
            self._table = {s: len(table) - k for k, s in enumerate(table)}
            self.axis_order = ()
            self.field_order = ()
            return
        if kind == "tdominant" and ring.time is None:
            raise ContractError("a t-dominant ranking needs a time variable")
        default_axes = [a for a in ring.independents if not (kind == "tdominant" and a == ring.time)]
        self.axis_order = tuple(axis_order) if axis_order is not None else tuple(default_axes)
        if sorted(self.axis_order) != sorted(default_axes):
            raise ContractError("ranking axis order must list each spatial variable once")
        self.field_order = tuple(field_order) if field_order is not None else ring.fields
        if sorted(self.field_order) != sorted(ring.fields):
            raise ContractError("ranking field order must list each field once")
        self._axis_idx = tuple(ring.independents.index(a) for a in self.axis_order)
        self._time_idx = ring.independents.index(ring.time) if ring.time else None
        self._prio = {f: len(self.field_order) - k for k, f in enumerate(self.field_order)}
        self._table = None

    def __eq__(self, other):
        return (isinstance(other, Ranking) and self.ring == other.ring
                and self.kind == other.kind and self.axis_order == other.axis_order
                and self.field_order == other.field_order)

    def __hash__(self):
        return hash((self.ring, self.kind, self.axis_order, self.field_order))

    @classmethod
    def lex(cls, variables):
        """Ranking on plain variables for purely algebraic systems, highest first."""
        return cls(None, "table", table=list(variables))

    @property
    def is_t_dominant(self):
        return self.kind == "tdominant"

    def key(self, obj):
        """Sort key of a symbol or parameter; larger means higher rank."""
        if self._table is not None:
            if obj not in self._table:
                raise ContractError(f"{obj} is not listed in the ranking table")
            return (self._table[obj],)
        if isinstance(obj, Parameter):
            return (-1, -self.ring.params.index(obj.name))
        if not isinstance(obj, DerivativeSymbol):
            raise ContractError(f"{obj!r} is not a symbol of this ring")
        xs = [obj.orders[k] for k in self._axis_idx]
        rev = tuple(-e for e in reversed(xs))
        prio = self._prio[obj.field]
        if self.kind == "tdominant":
            return (obj.orders[self._time_idx], sum(xs), rev, prio)
        return (sum(xs), rev, prio)

    def var_key(self, i):
        k = self._cache.get(i)
        if k is None:
            k = self.key(ep.var_object(i))
            self._cache[i] = k
        return k

    def compare(self, u, v):
        a, b = self.key(u), self.key(v)
        return (a > b) - (a < b)

    def leader(self, p):
        """Variable id of the highest-ranked variable occurring in ``p``."""
        vs = p.vars()
        if not vs:
            raise ContractError("no leader: polynomial is constant")
        return max(vs, key=self.var_key)

    def leader_symbol(self, p):
        return ep.var_object(self.leader(p))

    def initial(self, p):
        return p.lead_coeff(self.leader(p))

    def separant(self, p):
        return p.diff(self.leader(p))

    def sort_vars(self, ids):
        return sorted(ids, key=self.var_key, reverse=True)

    def normalize(self, p):
        """Integer-primitive form with positive leading coefficient.

        The leading term is taken in the lexicographic term order induced by
        the ranking.  Zero and constants normalise to 0 and 1.
        """
        if not p.terms:
            return p
        if p.is_constant():
            return ep.ONE
        p = p.int_primitive()
        lead = max(p.terms, key=self._term_key)
        if p.terms[lead] < 0:
            p = -p
        return p

    def _term_key(self, m):
        return sorted(((self.var_key(i), e) for i, e in ep.mono_items(m)), reverse=True)

    def format(self, p):
        return ep.format_poly(p, self.var_key)


def leader(p, r):
    return r.leader_symbol(p)


def initial(p, r):
    return r.initial(p)


def separant(p, r):
    return r.separant(p)


def is_parameter_only(p):
    return all(isinstance(ep.var_object(i), Parameter) for i in p.vars())
