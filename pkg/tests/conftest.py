"""Shared helpers: sympy conversion (the independent oracle) and example models."""

import functools
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from thomasdec import exactpoly as ep
from thomasdec.cli.build import load, poly_from_text
from thomasdec.diffthomas import diff_decompose
from thomasdec.exactpoly import Poly
from thomasdec.lagrange import euler_lagrange

FIXTURES = Path(__file__).parent / "fixtures"


def sym_name(i):
    return str(ep.var_object(i))


def to_sympy(p):
    """sympy expression of ``p``; variables become Symbols named by their str()."""
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for i, e in ep.mono_items(m):
            t *= sympy.Symbol(sym_name(i)) ** e
        expr += t
    return sympy.expand(expr)


def from_sympy(expr, objects):
    """Inverse of :func:`to_sympy`; ``objects`` maps symbol names to variable objects."""
    expr = sympy.expand(expr)
    if expr == 0:
        return Poly()
    gens = sorted(expr.free_symbols, key=str)
    if not gens:
        return Poly.const(Fraction(int(sympy.numer(expr)), int(sympy.denom(expr))))
    P = sympy.Poly(expr, *gens)
    items = []
    for exps, c in P.terms():
        c = sympy.Rational(c)
        items.append((Fraction(int(c.p), int(c.q)),
                      {objects[str(g)]: e for g, e in zip(gens, exps)}))
    return Poly.from_items(items)


def same_up_to_scale(p, q):
    """``p`` and ``q`` differ by a nonzero rational factor."""
    if not p.terms or not q.terms:
        return not p.terms and not q.terms
    m = next(iter(p.terms))
    if m not in q.terms:
        return False
    ratio = Fraction(p.terms[m]) / Fraction(q.terms[m])
    return p == q.scale(ratio)


def factor_set(polys):
    """Set of distinct non-constant irreducible factors (over Q, up to sign) of a product."""
    out = set()
    for p in polys:
        for f, _ in sympy.factor_list(to_sympy(p))[1]:
            f = sympy.expand(f)
            if (-f).sort_key() < f.sort_key():
                f = sympy.expand(-f)
            out.add(f)
    return out


def parse_in(ring, *texts):
    return [poly_from_text(t, ring) for t in texts]


@functools.lru_cache(maxsize=None)
def fixture(name):
    return load(FIXTURES / name)


@functools.lru_cache(maxsize=None)
def decomposition(name):
    """Differential decomposition of a fixture's system (or of its EL equations)."""
    prob = fixture(name)
    system = prob.system if prob.system is not None else euler_lagrange(prob.model)
    return diff_decompose(system)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# verdict lines of the acceptance suite, printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: s.split("criterion ")[1]):
            terminalreporter.write_line(line)
