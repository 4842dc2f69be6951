"""Euler-Lagrange equations, Hessians and Lagrangian constraints.

A model is a polynomial density in the fields and their first derivatives.
The Euler-Lagrange expression of field ``a`` is taken as

    E_a = sum_mu d/dx_mu (dL/d(phi_a)_mu) - dL/d(phi_a)

with ``x_0 = t``; its coefficients at the second time derivatives form the
Hessian.  Constraints are read off a differential Thomas decomposition of
the Euler-Lagrange system computed under a t-dominant ranking: in each
simple system they are the equations whose leader ranks below the second
time derivative of the lowest-ranked field.
"""

from dataclasses import dataclass, field

from . import exactpoly as ep
from .algthomas import DiffSystem, alg_decompose, clean
from .diffring import DerivativeSymbol, Parameter, Ranking, differentiate
from .diffthomas import diff_decompose, diff_reduce
from .errors import ContractError
from .exactpoly import ONE, ZERO, Poly


@dataclass
class LagrangianModel:
    ranking: Ranking
    density: Poly
    nonzero_params: list = field(default_factory=list)

    @property
    def ring(self):
        return self.ranking.ring

    def __post_init__(self):
        ring = self.ring
        if ring is None or ring.time is None:
            raise ContractError("a Lagrangian model needs a time variable")
        for i in self.density.vars():
            obj = ep.var_object(i)
            if isinstance(obj, DerivativeSymbol) and obj.total_order > 1:
                raise ContractError(f"density contains the higher derivative {obj}")

    def sym(self, f, *axes):
        return ep.intern(self.ring.symbol(f, *axes))


def euler_lagrange(M):
    """The Euler-Lagrange system of ``M`` with the nonzero parameters as inequations."""
    ring = M.ring
    eqs = []
    for f in ring.fields:
        E = -M.density.diff(M.sym(f))
        for ax in ring.independents:
            E = E + differentiate(M.density.diff(M.sym(f, ax)), ax)
        eqs.append(E)
    return DiffSystem(eqs, list(M.nonzero_params), M.ranking)


def hessian(M):
    """Matrix of second partials of the density in the first time derivatives."""
    ring = M.ring
    ids = [M.sym(f, ring.time) for f in ring.fields]
    return [[M.density.diff(i).diff(j) for j in ids] for i in ids]


def el_split(M):
    """``(H, P)`` with ``E_i = sum_j H[i][j] * (phi_j)_tt + P[i]``."""
    ring = M.ring
    E = euler_lagrange(M).equations
    tt = [M.sym(f, ring.time, ring.time) for f in ring.fields]
    H = [[E[i].coeff(v, 1) for v in tt] for i in range(len(E))]
    P = []
    for i, e in enumerate(E):
        r = e
        for j, v in enumerate(tt):
            r = r - H[i][j] * Poly.var_id(v)
        P.append(r)
    return H, P


def determinant(H):
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(H)
    A = [list(row) for row in H]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not A[k][k].terms:
            swap = next((i for i in range(k + 1, n) if A[i][k].terms), None)
            if swap is None:
                return ZERO
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = ep.exact_div(A[k][k] * A[i][j] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign if n else ONE


# -- Procedure based on linear algebra -----------------------------------

@dataclass
class NaiveResult:
    """Output of :func:`naive_constraints`.

    ``divisors`` lists every non-constant pivot the elimination divided by:
    each is a place where the result silently assumes a nonzero value.
    """

    constraints: list
    divisors: list
    ranks: list

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)


def _reduce_exact(p, S):
    """Normal form of ``p`` modulo ``S`` if the pseudo-division multiplier is constant."""
    red = S.reducer()
    mult = ONE
    key = S.ranking.var_key
    r = p
    for v in sorted(r.vars(), key=key, reverse=True):
        e = red.find(v, r.degree(v))
        if e is not None:
            c1, _, r = ep.pseudo_divide(r, e, v)
            mult = mult * c1
    if mult.is_constant():
        return r.scale(ep.Fraction(1) / mult.constant_value())
    return p


def _is_zero_mod(p, S):
    return not p.terms or not S.reduce(p).terms


def naive_constraints(M, max_rounds=None):
    """Constraints by rank and nullspace of the Hessian.

    Each round reduces the Hessian modulo the first (generic) system of an
    algebraic decomposition of the current equation set, runs fraction-free
    Gaussian elimination, and turns each nullspace vector ``V`` into the
    constraint ``sum_i P_i V^i``.  Rounds stop once the rank equals the
    current size or no new constraint appears.
    """
    H0, P = el_split(M)
    E = list(euler_lagrange(M).equations)
    m = len(E)
    C, divisors, ranks = [], [], []
    rounds = max_rounds if max_rounds is not None else m + 1
    for _ in range(rounds):
        D = alg_decompose(DiffSystem(E, list(M.nonzero_params), M.ranking), factor=False)
        if not len(D):
            break
        S = D[0]
        H = [[_reduce_exact(h, S) for h in row] for row in H0]
        r, V, piv = _nullspace(H, S)
        ranks.append(r)
        divisors.extend(p for p in piv if not p.is_constant() and p not in divisors)
        if r >= m:
            break
        new = []
        for vec in V:
            c = ZERO
            for Pi, vi in zip(P, vec):
                c = c + Pi * vi
            c = M.ranking.normalize(clean(c, True))
            if c.terms and c not in C:
                new.append(c)
        if not new:
            break
        C.extend(new)
        E.extend(new)
        m = r
    return NaiveResult(C, divisors, ranks)


def _nullspace(H, S):
    """Rank, polynomial nullspace basis and pivots of ``H`` with zero tests modulo ``S``."""
    n = len(H)
    A = [list(row) for row in H]
    pivots = []  # (row, col)
    row = 0
    for col in range(n):
        pr = next((i for i in range(row, n) if not _is_zero_mod(A[i][col], S)), None)
        if pr is None:
            for i in range(row, n):
                A[i][col] = ZERO
            continue
        A[row], A[pr] = A[pr], A[row]
        p = A[row][col]
        for i in range(n):
            if i == row or _is_zero_mod(A[i][col], S):
                A[i][col] = ZERO if i != row else p
                continue
            f = A[i][col]
            A[i] = [p * a - f * b for a, b in zip(A[i], A[row])]
            A[i] = [ZERO if _is_zero_mod(a, S) else a for a in A[i]]
            g = ZERO
            for a in A[i]:
                g = ep.gcd(g, a)
            if g.terms and not g.is_constant():
                A[i] = [ep.exact_div(a, g) for a in A[i]]
        pivots.append((row, col))
        row += 1
        if row == n:
            break
    pcols = [c for _, c in pivots]
    basis = []
    for free in range(n):
        if free in pcols:
            continue
        vec = [ZERO] * n
        L = ONE
        for r, c in pivots:
            L = L * A[r][c]
        vec[free] = L
        for r, c in pivots:
            vec[c] = -ep.exact_div(L, A[r][c]) * A[r][free]
        g = ZERO
        for a in vec:
            g = ep.gcd(g, a)
        if g.terms and not g.is_constant():
            vec = [ep.exact_div(a, g) for a in vec]
        basis.append(vec)
    return len(pivots), basis, [A[r][c] for r, c in pivots]


# -- constraints from a decomposition --------------------------------------

@dataclass
class Constraint:
    poly: Poly
    is_global: bool
    lagrangian: bool  # differential order <= 1 in every symbol

    @property
    def generalized_only(self):
        return not self.lagrangian


@dataclass
class ConstraintReport:
    psi: str
    per_system: list  # list of lists of Constraint, aligned with the decomposition

    def __iter__(self):
        return iter(self.per_system)


def minimal_field(ranking):
    """The lowest-ranked field (its undifferentiated symbol ranks lowest)."""
    ring = ranking.ring
    return min(ring.fields, key=lambda f: ranking.key(ring.symbol(f)))


def differential_order(p):
    return max((ep.var_object(i).total_order for i in p.vars()
                if isinstance(ep.var_object(i), DerivativeSymbol)), default=0)


def is_global(p, D):
    """True if ``p`` reduces to zero modulo every system of the decomposition."""
    return all(not diff_reduce(p, S).terms for S in D)


def extract_constraints(D, M):
    r = D.ranking
    if not r.is_t_dominant:
        raise ContractError("constraints require a t-dominant ranking")
    psi = minimal_field(r)
    bound = r.key(r.ring.symbol(psi, r.ring.time, r.ring.time))
    out = []
    for S in D:
        cs = []
        for p in S.display_equations():
            if r.key(r.leader_symbol(p)) < bound:
                cs.append(Constraint(p, is_global(p, D), differential_order(p) <= 1))
        out.append(cs)
    return ConstraintReport(psi, out)


def analyze(M, generic=True, cap=None):
    """Decompose the Euler-Lagrange system of ``M`` and extract its constraints."""
    kw = {} if cap is None else {"cap": cap}
    D = diff_decompose(euler_lagrange(M), generic=generic, **kw)
    return D, extract_constraints(D, M)
