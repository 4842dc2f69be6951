"""Turn a parsed source document into rings, rankings, systems and models."""

from dataclasses import dataclass

from ..algthomas import DiffSystem
from ..diffring import DiffRing, Ranking
from ..errors import ContractError, ParseError
from ..lagrange import LagrangianModel
from . import syntax


@dataclass
class Problem:
    """What a ``.tdp`` file describes: a system, or a Lagrangian model and its EL system."""

    ring: DiffRing
    ranking: Ranking
    system: DiffSystem = None
    model: LagrangianModel = None


def make_ranking(doc):
    spec = doc.ranking
    indep, fields = doc.independents, doc.fields
    params = tuple(p.name for p in doc.params)
    if spec is None:
        ring = DiffRing(indep, fields, params)
        return ring, Ranking(ring, "degrevlex")
    if spec.kind == "degrevlex":
        ring = DiffRing(indep, fields, params)
        return ring, Ranking(ring, "degrevlex", axis_order=spec.axes)
    ring = DiffRing(indep, fields, params, time=spec.time)
    return ring, Ranking(ring, "tdominant", axis_order=spec.axes, field_order=spec.fields)


def lookup_for(ring):
    def lookup(sym):
        if sym.name in ring.params:
            return ring.param(sym.name)
        return ring.sym(sym.name, *sym.axes)
    return lookup


def build(doc):
    """A :class:`Problem` for ``doc``; raises ContractError on semantic misuse."""
    if not doc.independents:
        raise ContractError("no independent variables declared")
    if not doc.fields:
        raise ContractError("no fields declared")
    ring, ranking = make_ranking(doc)
    look = lookup_for(ring)
    nonzero = [ring.param(p.name) for p in doc.params if p.nonzero]
    if doc.density is not None:
        density = syntax.evaluate(doc.density.expr, look)
        model = LagrangianModel(ranking, density, nonzero)
        return Problem(ring, ranking, model=model)
    eqs, ineqs = [], []
    for rel in doc.relations:
        p = syntax.evaluate(rel.lhs, look) - syntax.evaluate(rel.rhs, look)
        (eqs if rel.kind == "eq" else ineqs).append(p)
    return Problem(ring, ranking, system=DiffSystem(eqs, ineqs + nonzero, ranking))


def load(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return build(syntax.parse(text))


def poly_from_text(text, ring):
    """Parse a serialised polynomial back into ``ring``."""
    try:
        return syntax.evaluate(syntax.parse_expr(text), lookup_for(ring))
    except ContractError as exc:
        raise ParseError(str(exc), 0, 0) from exc
