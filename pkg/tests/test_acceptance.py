"""Acceptance suite: one verdict per criterion, printed in the terminal summary.

Each criterion runs the example end to end from its ``.tdp`` fixture, without
the cached decompositions of ``conftest``, so the runtime bound measures a
cold computation.  Polynomials are compared after ``Ranking.normalize``
(primitive, positive leading coefficient), i.e. up to nonzero rational
scaling; inequations given as products are compared through their
irreducible factors.  All arithmetic is exact, so tolerances are zero apart
from the wall-clock limits below.

Run directly with ``python tests/test_acceptance.py`` for just these lines.
"""

import contextlib
import sys
import time

import pytest

from thomasdec.diffthomas import check_diff_simple, check_passive, diff_decompose, diff_reduce
from thomasdec.algthomas import DiffSystem
from thomasdec.lagrange import (determinant, euler_lagrange, extract_constraints, hessian,
                                naive_constraints)

from conftest import ACCEPTANCE, factor_set, fixture, parse_in, same_up_to_scale

LIMITS = {1: 5.0, 2: 5.0, 3: 10.0, 4: 5.0, 5: 30.0}


@contextlib.contextmanager
def verdict(n, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        took = time.perf_counter() - start
        why = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        ACCEPTANCE.append(f"FAIL  criterion {n}: {title} ({took:.2f} s): {why}")
        raise
    took = time.perf_counter() - start
    ACCEPTANCE.append(f"PASS  criterion {n}: {title} ({took:.2f} s)")


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def el_decomposition(name):
    prob = fixture(name)
    return timed(lambda: diff_decompose(euler_lagrange(prob.model)))


def norm_set(r, polys):
    return {r.normalize(p) for p in polys}


def system_matches(S, ring, eqs, ineqs):
    """Display equations agree up to scaling; inequations agree as factor sets."""
    r = S.ranking
    if norm_set(r, S.display_equations()) != norm_set(r, parse_in(ring, *eqs)):
        return False
    return factor_set(S.inequations) == factor_set(parse_in(ring, *ineqs))


def assign(D, ring, table):
    """Map each expected system name to the index of the unique matching output."""
    out = {}
    for name, (eqs, ineqs) in table.items():
        hits = [k for k, S in enumerate(D) if system_matches(S, ring, eqs, ineqs)]
        assert len(hits) == 1, f"{name} matched {len(hits)} output systems"
        out[name] = hits[0]
    assert len(set(out.values())) == len(out)
    return out


# -- 1: the vanishing Hessian determinant ------------------------------------

HESSIAN_T = {
    "T1": (["u[x,x]*u[y,y]*u[z,z] + 2*u[x,y]*u[y,z]*u[x,z] - u[x,x]*u[y,z]^2"
            " - u[y,y]*u[x,z]^2 - u[z,z]*u[x,y]^2"],
           ["u[z,z]*u[y,y] - u[y,z]^2", "u[z,z]"]),
    "T2": (["-u[y,z]^2*u[x,x] + 2*u[y,z]*u[x,z]*u[x,y] - u[y,y]*u[x,z]^2", "u[z,z]"],
           ["u[y,z]"]),
    "T3": (["u[z,z]*u[x,y] - u[y,z]*u[x,z]", "u[z,z]*u[y,y] - u[y,z]^2"], ["u[z,z]"]),
    "T4": (["u[x,z]", "u[y,z]", "u[z,z]"], ["u[y,y]"]),
    "T5": (["u[y,y]", "u[y,z]", "u[z,z]"], []),
}


def test_criterion_1_hessian_equation():
    with verdict(1, "Hessian equation gives the five systems T1-T5"):
        prob = fixture("hessian.tdp")
        assert prob.ranking.kind == "degrevlex"
        D, took = timed(diff_decompose, prob.system)
        assert len(D) == 5
        assign(D, prob.ring, HESSIAN_T)
        assert took < LIMITS[1], f"runtime {took:.2f} s"


# -- 2: the gauge model ---------------------------------------------------------

# the constraint exactly as printed for this model
PRINTED_GAUGE_CONSTRAINT = "(1 - a)*A0[t] + (1 + a)*A0[x] - A1[t] - A1[x]"
# d/dx of the A0 equation minus d/dt of the A1 equation, reduced by the phi
# equation: e^2*(A0[t] + (1 + a)*A0[x] - (1 + a)*A1[t] - A1[x]) up to sign
DERIVED_GAUGE_CONSTRAINT = "A0[t] + (1 + a)*A0[x] - (1 + a)*A1[t] - A1[x]"
GAUGE_ROWS = (
    "(1 + a)*(A1[t,t] - A1[x,x]) - e*(2 + a)*(phi[t] + phi[x]) - a*e^2*(A0 + A1) - a^2*e^2*A1",
    "(a + 1)*(A1[t,x] - A0[x,x]) - e*(phi[t] + phi[x]) - a*e^2*A1",
    "phi[t,t] - phi[x,x] - e*a*(A0[x] - A1[t])",
)


def test_criterion_2_gauge_model():
    with verdict(2, "gauge model: one system, one global constraint as printed"):
        prob = fixture("gauge.tdp")
        M, r = prob.model, prob.ranking
        H = hessian(M)
        assert [[h.constant_value() if h.terms else 0 for h in row] for row in H] == \
            [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
        start = time.perf_counter()
        D = diff_decompose(euler_lagrange(M))
        rep = extract_constraints(D, M)
        took = time.perf_counter() - start
        assert len(D) == 1
        (S,) = D
        shown = norm_set(r, S.display_equations())
        assert len(shown) == 4
        assert norm_set(r, parse_in(prob.ring, *GAUGE_ROWS)) <= shown
        lagrangian = [c for c in rep.per_system[0] if c.lagrangian]
        assert len(lagrangian) == 1, f"{len(lagrangian)} order-one constraints"
        (c,) = lagrangian
        assert c.is_global
        assert r.normalize(c.poly) in shown
        assert took < LIMITS[2], f"runtime {took:.2f} s"
        (derived,) = parse_in(prob.ring, DERIVED_GAUGE_CONSTRAINT)
        assert same_up_to_scale(c.poly, derived)
        (printed,) = parse_in(prob.ring, PRINTED_GAUGE_CONSTRAINT)
        assert same_up_to_scale(c.poly, printed), \
            f"constraint is {r.format(r.normalize(c.poly))}, printed form differs"


# -- 3: the locally singular three-field model ---------------------------------

THREEFIELD_T = {
    "T1": (["u[t,t] + (2*u*v[t] + 1)*v[t,x] + u[x]*v[t]^2",
            "2*u*w[x]*v[t,t] + (2*u*v[t] + 1)*w[t,x] + 2*w[x]*v[t]*u[t]",
            "(2*u*v[t] + 1)*v[t,x] - w[t,t] + (u[x] + w[x])*v[t]^2"],
           ["w[x]", "u"]),
    "T2": (["u[t,t] + (2*u*v[t] + 1)*v[t,x] + u[x]*v[t]^2",
            "(2*u*v[t] + 1)*v[t,x,x] + 2*u*v[t,x]^2 + 4*u[x]*v[t]*v[t,x] + v[t]^2*u[x,x]",
            "(2*u*v[t] + 1)*v[t,x] + u[x]*v[t]^2 - w[t,t]",
            "w[x]"],
           ["u", "2*u*v[t] + 1"]),
    "T3": (["u", "v[t,x]", "w[t,t]", "w[x]"], []),
    "T4": (["u[t,t]", "u[x]", "2*u*v[t] + 1", "w[t,t]", "w[x]"], ["u"]),
    "T5": (["u", "v[t]", "w[t,t]", "w[t,x]"], ["w[x]"]),
    "T6": (["u", "v[t,x]", "w[t,t] - w[x]*v[t]^2", "w[t,x]", "w[x,x]"], ["w[x]", "v[t]"]),
}
THREEFIELD_BOLD = {
    "T1": [],
    "T2": ["(2*u*v[t] + 1)*v[t,x,x] + 2*u*v[t,x]^2 + 4*u[x]*v[t]*v[t,x] + v[t]^2*u[x,x]", "w[x]"],
    "T3": ["u", "v[t,x]", "w[x]"],
    "T4": ["u[x]", "2*u*v[t] + 1", "w[x]"],
    "T5": ["u", "v[t]", "w[t,x]"],
    "T6": ["u", "v[t,x]", "w[t,x]", "w[x,x]"],
}


def test_criterion_3_threefield_model():
    with verdict(3, "three-field model: six systems and their constraint sets"):
        prob = fixture("threefield.tdp")
        M, r, R = prob.model, prob.ranking, prob.ring
        start = time.perf_counter()
        D = diff_decompose(euler_lagrange(M))
        rep = extract_constraints(D, M)
        took = time.perf_counter() - start
        assert len(D) == 6
        where = assign(D, R, THREEFIELD_T)
        for name, bold in THREEFIELD_BOLD.items():
            got = {r.normalize(c.poly): c for c in rep.per_system[where[name]]}
            assert set(got) == norm_set(r, parse_in(R, *bold)), f"constraints of {name}"
        t2 = {r.normalize(c.poly): c for c in rep.per_system[where["T2"]]}
        (vtxx, wx) = parse_in(R, *THREEFIELD_BOLD["T2"])
        assert not t2[r.normalize(vtxx)].lagrangian
        assert t2[r.normalize(wx)].lagrangian
        assert took < LIMITS[3], f"runtime {took:.2f} s"


# -- 4: the singular two-coordinate model ----------------------------------------

MECHANICS_T = {
    "T1": (["2*q2*q2[t,t] + 2*q2[t]^2 - 1", "q1 - q2"], ["q2"]),
    "T2": (["2*q2*q2[t,t] + 2*q2[t]^2 - 1", "q1 + q2"], ["q2"]),
    "T3": (["q1", "q2"], []),
}


def test_criterion_4_mechanics_model():
    with verdict(4, "two-coordinate model: three systems, local and global constraints"):
        prob = fixture("mechanics.tdp")
        M, r, R = prob.model, prob.ranking, prob.ring
        start = time.perf_counter()
        D = diff_decompose(euler_lagrange(M))
        rep = extract_constraints(D, M)
        took = time.perf_counter() - start
        assert len(D) == 3
        where = assign(D, R, MECHANICS_T)
        # split on q2 first, then on a factor of q1^2 - q2^2 in the q2 != 0 branch
        root, second = D.events[0], D.events[1]
        assert r.format(root.pivot) == "q2"
        assert [rel for rel, _ in root.children] == ["!=", "="]
        assert second.node == root.children[0][1]
        assert r.normalize(second.pivot) in norm_set(r, parse_in(R, "q1 - q2", "q1 + q2"))
        for name, text in (("T1", "q1 - q2"), ("T2", "q1 + q2")):
            (want,) = parse_in(R, text)
            found = [c for c in rep.per_system[where[name]] if r.normalize(c.poly) == want]
            assert len(found) == 1 and not found[0].is_global, name
        (g,) = parse_in(R, "q1^2 - q2^2")
        assert all(diff_reduce(g, S).is_zero() for S in D)
        assert took < LIMITS[4], f"runtime {took:.2f} s"


# -- 5: the double sombrero ------------------------------------------------------

SOMBRERO_T = {
    "T1": (["-(q1^2*q2[t]^2 + q1[t]^2 - k)*(3*q1^2*q2[t]^2 + 3*q1[t]^2 - k)*q1[t,t]"
            " + 3*q1*q2[t]^2*q1[t]^4"
            " + q1*(6*q1^2*q2[t]^4 - 4*k*q2[t]^2 - lam*q1^2 + mu)*q1[t]^2"
            " + 3*q1^5*q2[t]^6 - 4*k*q1^3*q2[t]^4"
            " - q1*(3*lam*q1^4 - 3*mu*q1^2 - k^2)*q2[t]^2"
            " + k*lam*q1^3 - k*mu*q1",
            "(q1^2*q2[t]^2 + q1[t]^2 - k)*(3*q1^2*q2[t]^2 + 3*q1[t]^2 - k)*q1*q2[t,t]"
            " + 6*q2[t]*q1[t]^5 + 4*(3*q1^2*q2[t]^2 - 2*k)*q2[t]*q1[t]^3"
            " + (6*q1^4*q2[t]^5 - 8*k*q1^2*q2[t]^3 - 2*(lam*q1^4 - mu*q1^2 - k^2)*q2[t])*q1[t]"],
           ["q1*q2[t]*(q1^2*q2[t]^2 - k)*(q1^2*q2[t]^2 + q1[t]^2 - k)"
            "*(q1^2*q2[t]^2 + 3*q1[t]^2 - k)*(3*q1^2*q2[t]^2 - k)"
            "*(3*q1^2*q2[t]^2 + 3*q1[t]^2 - k)"]),
    "T2": (["(3*q1[t]^2 - k)*q1[t,t] + lam*q1^3 - mu*q1", "q2[t]"],
           ["q1*(q1[t]^2 - k)*(3*q1[t]^2 - k)"]),
    "T3": (["q1"], []),
    "T4": (["9*lam*q1^4 - 9*mu*q1^2 + 2*k^2", "3*q1^2*q2[t]^2 - k"], []),
    "T5": (["lam*q1^2 - mu", "mu*q2[t]^2 - k*lam"], []),
}
SOMBRERO_BOLD = {
    "T1": [],
    "T2": ["q2[t]"],
    "T3": ["q1"],
    "T4": ["9*lam*q1^4 - 9*mu*q1^2 + 2*k^2", "3*q1^2*q2[t]^2 - k"],
    "T5": ["lam*q1^2 - mu", "mu*q2[t]^2 - k*lam"],
}


def test_criterion_5_double_sombrero():
    with verdict(5, "double sombrero: five systems, det H, constraints of T2-T5"):
        prob = fixture("sombrero.tdp")
        M, r, R = prob.model, prob.ranking, prob.ring
        (want_det,) = parse_in(
            R, "q1^2*(q1^2*q2[t]^2 + q1[t]^2 - k)*(3*q1^2*q2[t]^2 + 3*q1[t]^2 - k)")
        assert determinant(hessian(M)) == want_det
        start = time.perf_counter()
        D = diff_decompose(euler_lagrange(M))
        rep = extract_constraints(D, M)
        took = time.perf_counter() - start
        assert len(D) == 5
        where = assign(D, R, SOMBRERO_T)
        for name, bold in SOMBRERO_BOLD.items():
            got = {r.normalize(c.poly) for c in rep.per_system[where[name]]}
            assert got == norm_set(r, parse_in(R, *bold)), f"constraints of {name}"
        # the parameters are declared nonzero and carried by every system
        assert all({str(q) for q in S.assumptions} == {"k", "lam", "mu"} for S in D)
        assert took < LIMITS[5], f"runtime {took:.2f} s"


# -- 6: property suites ------------------------------------------------------------

def test_criterion_6_property_suites():
    import test_algthomas as ta
    import test_diffthomas as td
    import test_exactpoly as te
    import test_lagrange as tl

    with verdict(6, "property suites (pseudo-division, cover, simplicity, Janet, Hessian)"):
        te.test_pseudo_division_identity()
        for case in range(len(ta.CORPUS)):
            ta.test_disjoint_cover(case)
            ta.test_outputs_are_simple(case)
        ta.test_samples_reach_solution_sets()
        for orders in td.LEADER_SETS:
            td.test_janet_cones_are_disjoint(orders)
        td.test_janet_cones_cover_complete_set()
        for name in ("hessian.tdp", "gauge.tdp", "threefield.tdp", "mechanics.tdp", "sombrero.tdp"):
            D, _ = el_decomposition(name) if fixture(name).system is None else \
                timed(diff_decompose, fixture(name).system)
            for S in D:
                assert check_diff_simple(S) == [], name
                assert check_passive(S) == [], name
        tl.test_hessian_symmetry_and_el_consistency()


# -- 7: the rank/nullspace procedure against the decomposition ----------------------

def test_criterion_7_naive_cross_check():
    with verdict(7, "naive procedure agrees on the gauge model, divides on the two-coordinate model"):
        prob = fixture("gauge.tdp")
        M = prob.model
        E = euler_lagrange(M)
        D = diff_decompose(E)
        (S,) = D
        (naive,) = naive_constraints(M).constraints
        assert diff_reduce(naive, S).is_zero()
        rep = extract_constraints(D, M)
        D2 = diff_decompose(DiffSystem(E.equations + [naive], E.inequations, E.ranking))
        assert len(D2) == 1
        for c in rep.per_system[0]:
            assert diff_reduce(c.poly, D2[0]).is_zero()
        N = naive_constraints(fixture("mechanics.tdp").model)
        assert N.divisors, "no division by a non-constant pivot was logged"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
