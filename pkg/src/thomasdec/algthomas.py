"""Splitting engine for Thomas decompositions.

The engine keeps, per branch of the case tree, a triangular set ``T`` of
equations and inequations with pairwise distinct leaders plus a queue of
polynomials still to be merged into ``T``.  Queue items are taken lowest
leader first.  Whenever a decision depends on whether some polynomial
vanishes (an initial, a discriminant, a content, a leading coefficient in a
gcd computation) and the branch does not already decide it, the branch is
split into ``c != 0`` and ``c = 0``.

The algebraic engine here treats derivative symbols as plain variables; the
differential engine in :mod:`thomasdec.diffthomas` subclasses it and adds
Janet prolongations and passivity checks.

Parameters (see :class:`thomasdec.diffring.Parameter`) are handled in one of
two modes.  In generic mode (the default) every nonzero polynomial in the
parameters alone is treated as a unit, as if the coefficients lived in the
field of rational functions of the parameters.  In strict mode parameters
are ordinary variables of lowest rank.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

from . import exactpoly as ep
from .diffring import DerivativeSymbol, Parameter, Ranking
from .errors import ContractError, TerminationCapError
from .exactpoly import ONE, Poly

ZERO_STATUS = "zero"
DEFAULT_CAP = 200_000


@dataclass
class DiffSystem:
    """Equations ``p = 0`` and inequations ``q != 0`` under a ranking."""

    equations: list
    inequations: list
    ranking: Ranking

    def __post_init__(self):
        self.equations = [ep.as_poly(p) for p in self.equations]
        self.inequations = [ep.as_poly(q) for q in self.inequations]


@dataclass
class SimpleSystem:
    """One simple system of a decomposition.

    ``equations`` is the full set used for reduction (Janet-complete in the
    differential case); ``mult`` maps each equation's leader id to its
    multiplicative axes.  ``path`` is the sequence of branch choices in the
    case tree leading to the system.  ``assumptions`` holds the input
    inequations in the parameters alone; in generic mode they are units and
    take no part in the triangular structure, but they still restrict the
    solution set.
    """

    equations: list
    inequations: list
    ranking: Ranking
    mult: dict = field(default_factory=dict)
    path: tuple = ()
    node: int = 0
    differential: bool = False
    generic: bool = True
    assumptions: list = field(default_factory=list)

    def leaders(self):
        r = self.ranking
        return [r.leader(p) for p in self.equations], [r.leader(q) for q in self.inequations]

    def display_equations(self):
        """Equations whose leaders are not proper derivatives of other leaders.

        For algebraic systems this is every equation.
        """
        if not self.differential:
            return list(self.equations)
        lds = [ep.var_object(self.ranking.leader(p)) for p in self.equations]
        out = []
        for p, L in zip(self.equations, lds):
            if not any(M != L and isinstance(M, DerivativeSymbol) and isinstance(L, DerivativeSymbol)
                       and M.divides(L) for M in lds):
                out.append(p)
        return out

    def reducer(self):
        red = Reducer(self.ranking, self.generic, self.differential)
        red.set({self.ranking.leader(p): p for p in self.equations}, self.mult)
        return red

    def reduce(self, p):
        return self.reducer().reduce(ep.as_poly(p))

    def contains_point(self, point):
        """True if ``point`` (var id -> number) satisfies every condition."""
        return (all(p.evaluate(point) == 0 for p in self.equations)
                and all(q.evaluate(point) != 0 for q in self.inequations + self.assumptions))


@dataclass
class SplitEvent:
    """A case distinction: ``pivot`` is zero in one child and nonzero in the other."""

    node: int
    pivot: Poly
    children: tuple  # ((relation, child_node), ...) in exploration order


@dataclass
class TreeNode:
    id: int
    parent: Optional[int]
    label: str = ""
    status: str = "open"  # open | split | leaf | inconsistent
    system: Optional[int] = None
    children: list = field(default_factory=list)


@dataclass
class Decomposition:
    systems: list
    events: list
    nodes: dict
    ranking: Ranking
    differential: bool = False
    generic: bool = True
    steps: int = 0

    def __len__(self):
        return len(self.systems)

    def __iter__(self):
        return iter(self.systems)

    def __getitem__(self, i):
        return self.systems[i]


# -- helpers -------------------------------------------------------------

def _param_ids(p):
    return {i for i in p.vars() if isinstance(ep.var_object(i), Parameter)}


def is_param_only(p):
    return all(isinstance(ep.var_object(i), Parameter) for i in p.vars())


def param_content(p):
    """Gcd of the coefficients of ``p`` viewed as a polynomial over the parameters."""
    pids = _param_ids(p)
    if not pids:
        return ONE
    groups = {}
    B = ep.BITS
    for m, c in p.terms.items():
        mp = 0
        for i, e in ep.mono_items(m):
            if i in pids:
                mp += e << (i * B)
        groups.setdefault(m - mp, {})[mp] = c
    g = None
    for t in sorted(groups.values(), key=len):
        g = Poly(t) if g is None else ep.gcd(g, Poly(t))
        if g.is_constant():
            return ONE
    return g


def clean(p, generic):
    """Remove unit factors: rational content, and parameter content in generic mode."""
    if not p.terms:
        return p
    p = p.int_primitive()
    if generic and not p.is_constant():
        pc = param_content(p)
        if not pc.is_constant():
            p = ep.exact_div(p, pc).int_primitive()
    return p


def is_unit(p, generic):
    return p.terms and (p.is_constant() or (generic and is_param_only(p)))


class Reducer:
    """Pseudo-reduction modulo a set of equations keyed by leader.

    In differential mode an equation also reduces every derivative of its
    leader obtained with multiplicative derivations only (its Janet cone).
    """

    def __init__(self, ranking, generic=True, differential=False):
        self.ranking = ranking
        self.generic = generic
        self.differential = differential
        self.eqs = {}
        self.mult = {}
        self._by_field = {}
        self._prol = {}

    def set(self, eqs, mult):
        self.eqs = dict(eqs)
        self.mult = dict(mult)
        self._by_field = {}
        if self.differential:
            for L, p in self.eqs.items():
                obj = ep.var_object(L)
                if isinstance(obj, DerivativeSymbol):
                    self._by_field.setdefault(obj.field, []).append((obj, p, self.mult.get(L, ())))

    def find(self, V, deg):
        e = self.eqs.get(V)
        if e is not None:
            return e if deg >= e.degree(V) else None
        if not self.differential:
            return None
        obj = ep.var_object(V)
        if not isinstance(obj, DerivativeSymbol):
            return None
        for L, p, axes in self._by_field.get(obj.field, ()):
            diff = [b - a for a, b in zip(L.orders, obj.orders)]
            if min(diff) < 0:
                continue
            if all(k == 0 or L.axes[j] in axes for j, k in enumerate(diff)):
                return self.prolong(p, tuple(diff), L.axes)
        return None

    def prolong(self, p, orders, axes):
        from .diffring import differentiate
        key = (p, orders)
        r = self._prol.get(key)
        if r is None:
            if not any(orders):
                return p
            j = max(i for i, k in enumerate(orders) if k)
            lower = list(orders)
            lower[j] -= 1
            r = differentiate(self.prolong(p, tuple(lower), axes), axes[j])
            self._prol[key] = r
        return r

    def reduce(self, p):
        key = self.ranking.var_key
        bound = None
        while p.terms:
            hit = None
            for v in sorted(p.vars(), key=key, reverse=True):
                if bound is not None and key(v) >= bound:
                    continue
                r = self.find(v, p.degree(v))
                if r is not None:
                    hit = (v, r)
                    break
            if hit is None:
                return p
            v, r = hit
            p = clean(ep.prem(p, r, v), self.generic)
            bound = key(v)
        return p


class _Item:
    __slots__ = ("kind", "poly", "init_ok", "disc_ok", "seq", "parts")

    def __init__(self, kind, poly, init_ok=False, disc_ok=False, seq=0, parts=None):
        self.kind = kind
        self.poly = poly
        self.init_ok = init_ok
        self.disc_ok = disc_ok
        self.seq = seq
        # known coprime factorisation of an inequation built by lcm merging
        self.parts = parts

    def copy(self, **kw):
        it = _Item(self.kind, self.poly, self.init_ok, self.disc_ok, self.seq, self.parts)
        for k, v in kw.items():
            setattr(it, k, v)
        return it


class _Branch:
    def __init__(self):
        self.eqs = {}
        self.ineqs = {}
        self.queue = []
        self.node = 0
        self.path = ()
        self.splits = set()
        self.mult = {}
        self.prolonged = set()
        self.version = 0
        self._reducer = None
        self._reducer_version = -1

    def copy(self):
        b = _Branch()
        b.eqs = {k: v.copy() for k, v in self.eqs.items()}
        b.ineqs = {k: v.copy() for k, v in self.ineqs.items()}
        b.queue = [it.copy() for it in self.queue]
        b.node = self.node
        b.path = self.path
        b.splits = set(self.splits)
        b.mult = dict(self.mult)
        b.prolonged = set(self.prolonged)
        b.version = self.version
        return b


class _Split:
    def __init__(self, pivot, children):
        self.pivot = pivot
        # children: list of (relation, items) in exploration order
        self.children = children


_INCONSISTENT = object()


class Engine:
    """Algebraic Thomas decomposition by case splitting."""

    differential = False

    def __init__(self, ranking, generic=True, cap=DEFAULT_CAP, factor=True):
        self.ranking = ranking
        self.generic = generic
        self.cap = cap
        self.factor = factor
        self.steps = 0
        self._seq = 0
        self.nodes = {0: TreeNode(0, None, "root")}
        self.events = []

    # -- small utilities ------------------------------------------------

    def key(self, v):
        return self.ranking.var_key(v)

    def norm(self, p):
        return self.ranking.normalize(clean(p, self.generic))

    def unit(self, p):
        return is_unit(p, self.generic)

    def leader(self, p):
        return self.ranking.leader(p)

    def item(self, kind, p, **kw):
        self._seq += 1
        return _Item(kind, p, seq=self._seq, **kw)

    def reducer(self, b):
        if b._reducer is None or b._reducer_version != b.version:
            red = Reducer(self.ranking, self.generic, self.differential)
            red.set({v: it.poly for v, it in b.eqs.items()}, b.mult)
            if b._reducer is not None:
                red._prol = b._reducer._prol
            b._reducer = red
            b._reducer_version = b.version
        return b._reducer

    def reduce(self, b, p):
        return self.reducer(b).reduce(p)

    def _tick(self):
        self.steps += 1
        if self.steps > self.cap:
            raise TerminationCapError(f"decomposition exceeded {self.cap} steps")

    def _label(self, p):
        return self.ranking.format(p)

    # -- driver ---------------------------------------------------------

    def initial_branch(self, system):
        self.assumptions = []
        if self.generic:
            for q in system.inequations:
                q = self.ranking.normalize(q)
                if not q.is_constant() and is_param_only(q) and q not in self.assumptions:
                    self.assumptions.append(q)
        b = _Branch()
        for p in system.equations:
            b.queue.append(self.item("eq", p))
        for q in system.inequations:
            b.queue.append(self.item("ineq", q))
        return b

    def run(self, system):
        root = self.initial_branch(system)
        stack = [root]
        found = []
        while stack:
            b = stack.pop()
            out = self._run_branch(b)
            if out is _INCONSISTENT:
                self.nodes[b.node].status = "inconsistent"
            elif isinstance(out, _Split):
                kids = []
                for idx, (rel, items) in enumerate(out.children):
                    c = b.copy()
                    c.queue.extend(items)
                    c.splits.add(out.pivot)
                    nid = len(self.nodes)
                    self.nodes[nid] = TreeNode(nid, b.node, f"{self._label(out.pivot)} {rel} 0")
                    self.nodes[b.node].children.append(nid)
                    c.node = nid
                    c.path = b.path + (idx,)
                    kids.append((rel, nid, c))
                self.nodes[b.node].status = "split"
                self.events.append(SplitEvent(b.node, out.pivot, tuple((r, n) for r, n, _ in kids)))
                for _, _, c in reversed(kids):
                    stack.append(c)
            else:
                found.append((b, out))
        found.sort(key=lambda bo: bo[0].path)
        systems = []
        for k, (b, s) in enumerate(found):
            self.nodes[b.node].status = "leaf"
            self.nodes[b.node].system = k
            systems.append(s)
        return Decomposition(systems, self.events, self.nodes, self.ranking,
                             self.differential, self.generic, self.steps)

    def _run_branch(self, b):
        while True:
            while b.queue:
                self._tick()
                it = self._pop(b)
                if it.kind == "eq":
                    out = self._process_eq(b, it)
                else:
                    out = self._process_ineq(b, it)
                if out is not None:
                    if isinstance(out, _Split) and out.pivot in b.splits:
                        raise RuntimeError(f"repeated split on {self._label(out.pivot)}")
                    return out
            if self._complete(b):
                return self._finish(b)

    def _pop(self, b):
        def k(it):
            p = it.poly
            lk = self.key(self.leader(p)) if not p.is_constant() else ()
            return (lk, it.kind != "eq", p.degree(self.leader(p)) if lk else 0, it.seq)
        i = min(range(len(b.queue)), key=lambda j: k(b.queue[j]))
        return b.queue.pop(i)

    def _complete(self, b):
        return True

    def _finish(self, b):
        r = self.ranking
        eqs = sorted((it.poly for it in b.eqs.values()), key=lambda p: r.var_key(r.leader(p)))
        ineqs = sorted((it.poly for it in b.ineqs.values()), key=lambda p: r.var_key(r.leader(p)))
        mult = {v: frozenset(ax) for v, ax in b.mult.items() if v in b.eqs}
        return SimpleSystem(eqs, ineqs, r, mult, b.path, b.node, self.differential, self.generic,
                            list(self.assumptions))

    # -- certification --------------------------------------------------

    def _known_nonzero(self, b):
        out = [it.poly for it in b.ineqs.values()]
        out += [it.poly for it in b.queue if it.kind == "ineq"]
        return out

    def certify(self, b, c, depth=0):
        """Decide whether ``c`` is nonzero on the branch.

        Returns ``(True, None)`` if certainly nonzero, ``(ZERO_STATUS, None)``
        if it vanishes on every solution, and ``(False, pivot)`` otherwise;
        ``pivot`` is ``c`` reduced and stripped of known nonzero factors.
        """
        c = clean(self.reduce(b, c), self.generic)
        if not c.terms:
            return ZERO_STATUS, None
        if self.unit(c):
            return True, None
        for q in self._known_nonzero(b):
            if q.is_constant():
                continue
            for qq in (q, clean(self.reduce(b, q), self.generic)):
                if qq.is_constant() or not (qq.vars() & c.vars()):
                    continue
                g = ep.gcd(c, qq)
                while not g.is_constant():
                    c = ep.exact_div(c, g)
                    g = ep.gcd(c, qq)
                if self.unit(clean(c, self.generic)):
                    return True, None
        c = self.norm(c)
        fs = self.factors(c)
        if len(fs) > 1 or fs[0][1] > 1:
            # vanishing is decided by the distinct factors alone
            sq = ONE
            for f, _ in fs:
                sq = sq * f
            c = self.norm(sq)
        w = self.leader(c)
        f = b.eqs.get(w)
        if f is not None and depth < 2:
            res = self.split_gcd(b, f.poly, c, w, depth + 1)
            if res[0] == "gcd" and res[1].degree(w) == 0:
                return True, None
        return False, c

    def split_gcd(self, b, a, c, v, depth=0):
        """Gcd in ``v`` of ``a`` and ``c`` modulo the branch.

        Returns ``("gcd", g)`` or ``("split", pivot)`` when a leading
        coefficient has undecided sign.  The leading coefficient of the
        higher-degree argument must already be known nonzero.
        """
        if a.degree(v) < c.degree(v):
            a, c = c, a
        while True:
            c = clean(self.reduce(b, c), self.generic) if c.terms else c
            if not c.terms:
                return "gcd", a
            if c.degree(v) == 0:
                st, piv = self.certify(b, c, depth + 1)
                if st is True:
                    return "gcd", ONE
                if st == ZERO_STATUS:
                    return "gcd", a
                return "split", piv
            st, piv = self.certify(b, c.lead_coeff(v), depth + 1)
            if st == ZERO_STATUS:
                c = c.reductum(v)
                continue
            if st is not True:
                return "split", piv
            a, c = c, ep.prem(a, c, v)

    def pquo(self, b, p, g, v):
        c1, c2, r = ep.pseudo_divide(p, g, v)
        if self.reduce(b, r).terms:
            raise RuntimeError("gcd does not divide the polynomial modulo the system")
        return c2

    # -- queue bookkeeping -----------------------------------------------

    def _requeue_above(self, b, v):
        kv = self.key(v)
        for store in (b.eqs, b.ineqs):
            for w in [w for w in store if self.key(w) > kv]:
                it = store.pop(w)
                b.queue.append(self.item(it.kind, it.poly))
        b.version += 1

    def _drop_eq(self, b, v):
        it = b.eqs.pop(v)
        b.version += 1
        return it

    def _after_insert(self, b, v):
        pass

    # -- equations --------------------------------------------------------

    def _process_eq(self, b, it):
        p = self.norm(self.reduce(b, it.poly))
        if p != it.poly:
            it = it.copy(poly=p, init_ok=False, disc_ok=False)
        if not p.terms:
            return None
        if self.unit(p):
            return _INCONSISTENT
        v = self.leader(p)

        kept = []
        for f, m in self.factors(p):
            st, _ = self.certify(b, f)
            if st == ZERO_STATUS:
                return None
            if st is not True:
                kept.append((f, m))
        if not kept:
            return _INCONSISTENT
        if len(kept) > 1:
            # parameter-only factors first (they act as coefficients), then the
            # highest leader; ties broken by multiplicity, degree, size
            kept.sort(key=self._factor_key)
            kept.sort(key=lambda fm: self.key(self.leader(fm[0])), reverse=True)
            kept.sort(key=lambda fm: not is_param_only(fm[0]))
            f1 = kept[0][0]
            rest = ONE
            for f, _ in kept[1:]:
                rest = rest * f
            return _Split(f1, [("!=", [self.item("ineq", f1), self.item("eq", rest)]),
                               ("=", [self.item("eq", f1)])])
        if kept[0][0] != p:
            b.queue.append(self.item("eq", kept[0][0]))
            return None

        if not it.init_ok:
            st, piv = self.certify(b, p.lead_coeff(v))
            if st == ZERO_STATUS:
                b.queue.append(self.item("eq", p.reductum(v)))
                return None
            if st is not True:
                return _Split(piv, [("!=", [self.item("ineq", piv), it.copy(init_ok=True)]),
                                    ("=", [self.item("eq", piv), self.item("eq", p.reductum(v))])])
            it.init_ok = True

        if p.degree(v) >= 2 and not it.disc_ok:
            st, piv = self.certify(b, ep.discriminant(p, v))
            if st == ZERO_STATUS:
                res = self.split_gcd(b, p, p.diff(v), v)
                if res[0] == "split":
                    piv = res[1]
                    return _Split(piv, [("!=", [self.item("ineq", piv), it]),
                                        ("=", [self.item("eq", piv), it])])
                g = res[1]
                if g.degree(v) >= 1:
                    b.queue.append(self.item("eq", self.pquo(b, p, g, v), init_ok=False))
                    return None
                it.disc_ok = True
            elif st is not True:
                return _Split(piv, [("!=", [self.item("ineq", piv), it.copy(disc_ok=True)]),
                                    ("=", [self.item("eq", piv), it])])
            else:
                it.disc_ok = True

        if v in b.eqs:
            old = self._drop_eq(b, v)
            b.queue.append(self.item("eq", old.poly))

        q = b.ineqs.get(v)
        if q is not None:
            res = self.split_gcd(b, p, q.poly, v)
            if res[0] == "split":
                piv = res[1]
                return _Split(piv, [("!=", [self.item("ineq", piv), it]),
                                    ("=", [self.item("eq", piv), it])])
            g = res[1]
            if g.degree(v) == 0:
                del b.ineqs[v]
            elif g.degree(v) >= p.degree(v):
                return _INCONSISTENT
            else:
                b.queue.append(self.item("eq", self.pquo(b, p, g, v)))
                return None

        b.eqs[v] = it
        self._requeue_above(b, v)
        self._after_insert(b, v)
        return None

    def factors(self, p):
        """Irreducible-as-far-as-cheaply-possible factors of ``p`` with multiplicities.

        Unit factors are dropped; each factor is normalised.
        """
        if self.unit(p) or p.is_constant():
            return []
        v = self.leader(p)
        out = {}
        if self.factor:
            parts = ep.factor_opportunistic(p, v)
        else:
            cont = ep.content(p, v)
            parts = [(cont, 1), (ep.exact_div(p, cont), 1)]
        cont, rest = parts[0][0], parts[1:]
        for f, m in self.factors(cont):
            out[f] = out.get(f, 0) + m
        for f, m in rest:
            f = self.norm(f)
            out[f] = out.get(f, 0) + m
        return list(out.items())

    def _factor_key(self, fm):
        f, mult = fm
        r = self.ranking
        v = r.leader(f)
        terms = sorted(((r._term_key(m), -c) for m, c in f.terms.items()), reverse=True)
        return (mult, f.degree(v), len(terms), terms)

    # -- inequations ------------------------------------------------------

    def _process_ineq(self, b, it):
        q = self.norm(self.reduce(b, it.poly))
        if q != it.poly:
            it = it.copy(poly=q, init_ok=False, disc_ok=False, parts=None)
        if not q.terms:
            return _INCONSISTENT
        if self.unit(q):
            return None
        v = self.leader(q)

        if it.parts:
            fs = [(f, 1) for f in it.parts]
        else:
            fs = self.factors(q)
        if len(fs) > 1 or (fs and fs[0][1] > 1):
            lead = ONE
            for f, _ in fs:
                if v in f.vars():
                    lead = lead * f
                else:
                    b.queue.append(self.item("ineq", f))
            lead = self.norm(lead)
            if lead != ONE and lead != q:
                parts = [f for f, _ in fs if v in f.vars()]
                b.queue.append(self.item("ineq", lead, parts=parts if len(parts) > 1 else None))
            if lead != q:
                return None

        if not it.init_ok:
            st, piv = self.certify(b, q.lead_coeff(v))
            if st == ZERO_STATUS:
                b.queue.append(self.item("ineq", q.reductum(v)))
                return None
            if st is not True:
                return _Split(piv, [("!=", [self.item("ineq", piv), it.copy(init_ok=True)]),
                                    ("=", [self.item("eq", piv), self.item("ineq", q.reductum(v))])])
            it.init_ok = True

        if q.degree(v) >= 2 and not it.disc_ok:
            st, piv = self._certify_squarefree(b, q, fs, v)
            if st == ZERO_STATUS:
                res = self.split_gcd(b, q, q.diff(v), v)
                if res[0] == "split":
                    piv = res[1]
                    return _Split(piv, [("!=", [self.item("ineq", piv), it]),
                                        ("=", [self.item("eq", piv), it])])
                g = res[1]
                if g.degree(v) >= 1:
                    b.queue.append(self.item("ineq", self.pquo(b, q, g, v)))
                    return None
                it.disc_ok = True
            elif st is not True:
                return _Split(piv, [("!=", [self.item("ineq", piv), it.copy(disc_ok=True)]),
                                    ("=", [self.item("eq", piv), it])])
            else:
                it.disc_ok = True

        f = b.eqs.get(v)
        if f is not None:
            res = self.split_gcd(b, f.poly, q, v)
            if res[0] == "split":
                piv = res[1]
                return _Split(piv, [("!=", [self.item("ineq", piv), it]),
                                    ("=", [self.item("eq", piv), it])])
            g = res[1]
            if g.degree(v) == 0:
                return None
            if g.degree(v) >= f.poly.degree(v):
                return _INCONSISTENT
            self._drop_eq(b, v)
            b.queue.append(self.item("eq", self.pquo(b, f.poly, g, v)))
            b.queue.append(it)
            self._requeue_above(b, v)
            return None

        old = b.ineqs.get(v)
        if old is not None:
            del b.ineqs[v]
            parts = list(old.parts or [old.poly])
            for p in it.parts or [q]:
                for o in parts:
                    g = ep.gcd(o, p)
                    if not g.is_constant():
                        p = ep.exact_div(p, g)
                if not p.is_constant():
                    parts.append(self.norm(p))
            prod = ONE
            for p in parts:
                prod = prod * p
            b.queue.append(self.item("ineq", self.norm(prod), parts=parts if len(parts) > 1 else None))
            return None

        b.ineqs[v] = it
        return None


    def _certify_squarefree(self, b, q, fs, v):
        """Certify ``disc(q) != 0`` through the factors of ``q`` when it has several.

        For a product of coprime factors the discriminant vanishes iff some
        factor's discriminant or some pairwise resultant does, and those
        pieces are far cheaper than the discriminant of the product.
        """
        parts = [f for f, _ in fs if v in f.vars()]
        if len(parts) < 2:
            return self.certify(b, ep.discriminant(q, v))
        conds = [ep.discriminant(f, v) for f in parts if f.degree(v) >= 2]
        conds += [ep.resultant(f, g, v) for i, f in enumerate(parts) for g in parts[i + 1:]]
        for c in conds:
            st, piv = self.certify(b, c)
            if st is not True:
                return st, piv
        return True, None


def alg_decompose(system, generic=True, cap=DEFAULT_CAP, factor=True):
    """Algebraic Thomas decomposition of ``system`` (symbols as plain variables)."""
    return Engine(system.ranking, generic, cap, factor).run(system)


def reduce(p, S):
    """Pseudo-reduce ``p`` modulo the equations of the simple system ``S``."""
    return S.reduce(p)


def _lower(S, v):
    r = S.ranking
    kv = r.var_key(v)
    eqs = [p for p in S.equations if r.var_key(r.leader(p)) < kv]
    ineqs = [q for q in S.inequations if r.var_key(r.leader(q)) < kv]
    return eqs, ineqs


def check_simple(S, recurse=True, depth=None):
    """List of violated simple-system conditions (empty when ``S`` is simple).

    With ``recurse`` the nonvanishing of initials and discriminants is
    checked by decomposing the lower subsystem together with the initial or
    discriminant set to zero, and requiring the result to be empty.
    """
    r = S.ranking
    problems = []
    allp = [("equation", p) for p in S.equations] + [("inequation", q) for q in S.inequations]
    for kind, p in allp:
        if is_unit(p, S.generic) or not p.terms:
            problems.append(f"simple-system condition (a): constant {kind} {r.format(p)}")
    if problems:
        return problems
    lds = [r.leader(p) for _, p in allp]
    if len(set(lds)) != len(lds):
        problems.append("simple-system condition (b): leaders not pairwise distinct")
        return problems
    if not recurse:
        return problems
    if depth is None:
        depth = len({v for _, p in allp for v in p.vars()})
    if depth <= 0:
        return problems
    for kind, p in allp:
        v = r.leader(p)
        eqs, ineqs = _lower(S, v)
        tests = [("initial", p.lead_coeff(v))]
        if p.degree(v) >= 2:
            tests.append(("discriminant", ep.discriminant(p, v)))
        for what, c in tests:
            if is_unit(c, S.generic):
                continue
            d = alg_decompose(DiffSystem(eqs + [c], ineqs, r), generic=S.generic)
            if len(d):
                problems.append(f"simple-system condition (c): {what} of {kind} "
                                f"{r.format(p)} can vanish on the lower subsystem")
    return problems
