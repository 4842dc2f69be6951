"""JSON artifacts for decompositions and constraint reports, and text/dot renderings.

Polynomials are stored as strings in the input language, so an artifact is
readable on its own and reloads exactly.  ``provenance.timestamp`` is the
only field that varies between runs with the same input and flags.
"""

import datetime
import json
from dataclasses import dataclass, field

from .. import __version__
from .. import exactpoly as ep
from ..algthomas import SimpleSystem, TreeNode
from ..diffring import DiffRing, Ranking
from ..errors import ContractError
from ..lagrange import Constraint, ConstraintReport
from .build import poly_from_text

SCHEMA = 1


@dataclass
class Artifact:
    ranking: Ranking
    systems: list
    nodes: dict
    differential: bool = True
    generic: bool = True
    constraints: ConstraintReport = None
    provenance: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.ranking.ring

    @classmethod
    def from_decomposition(cls, D, report=None, source=None, flags=None):
        prov = {
            "tool": "thomasdec",
            "version": __version__,
            "source": source,
            "flags": dict(flags or {}),
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        }
        return cls(D.ranking, list(D.systems), dict(D.nodes), D.differential, D.generic,
                   report, prov)


# -- encoding -----------------------------------------------------------------

def _ring_json(ring):
    return {"independents": list(ring.independents), "fields": list(ring.fields),
            "params": list(ring.params), "time": ring.time}


def _ranking_json(r):
    return {"kind": r.kind, "axis_order": list(r.axis_order), "field_order": list(r.field_order)}


def to_json(a):
    r = a.ranking
    fmt = r.format
    systems = []
    for S in a.systems:
        systems.append({
            "path": list(S.path),
            "node": S.node,
            "equations": [fmt(p) for p in S.equations],
            "inequations": [fmt(q) for q in S.inequations],
            "multiplicative": [sorted(S.mult.get(r.leader(p), ())) for p in S.equations],
            "assumptions": [fmt(q) for q in S.assumptions],
        })
    tree = [{"id": n.id, "parent": n.parent, "label": n.label, "status": n.status,
             "system": n.system, "children": list(n.children)}
            for n in sorted(a.nodes.values(), key=lambda n: n.id)]
    out = {
        "schema": SCHEMA,
        "provenance": a.provenance,
        "ring": _ring_json(a.ring),
        "ranking": _ranking_json(r),
        "differential": a.differential,
        "generic": a.generic,
        "systems": systems,
        "tree": tree,
    }
    if a.constraints is not None:
        out["constraints"] = {
            "psi": a.constraints.psi,
            "per_system": [[{"poly": fmt(c.poly), "global": c.is_global, "lagrangian": c.lagrangian}
                            for c in cs] for cs in a.constraints.per_system],
        }
    return out


def dumps(a):
    return json.dumps(to_json(a), indent=2, sort_keys=True) + "\n"


# -- decoding -----------------------------------------------------------------

def from_json(d):
    if d.get("schema") != SCHEMA:
        raise ContractError(f"unsupported artifact schema {d.get('schema')!r}")
    rj = d["ring"]
    ring = DiffRing(rj["independents"], rj["fields"], rj["params"], rj["time"])
    kj = d["ranking"]
    ranking = Ranking(ring, kj["kind"], kj["axis_order"], kj["field_order"])
    P = lambda s: poly_from_text(s, ring)
    differential, generic = d["differential"], d["generic"]
    systems = []
    for sj in d["systems"]:
        eqs = [P(s) for s in sj["equations"]]
        mult = {}
        for p, axes in zip(eqs, sj["multiplicative"]):
            if differential:
                mult[ranking.leader(p)] = frozenset(axes)
        systems.append(SimpleSystem(eqs, [P(s) for s in sj["inequations"]], ranking, mult,
                                    tuple(sj["path"]), sj["node"], differential, generic,
                                    [P(s) for s in sj.get("assumptions", [])]))
    nodes = {}
    for nj in d["tree"]:
        nodes[nj["id"]] = TreeNode(nj["id"], nj["parent"], nj["label"], nj["status"],
                                   nj["system"], list(nj["children"]))
    report = None
    if "constraints" in d:
        cj = d["constraints"]
        report = ConstraintReport(cj["psi"], [[Constraint(P(c["poly"]), c["global"], c["lagrangian"])
                                               for c in cs] for cs in cj["per_system"]])
    return Artifact(ranking, systems, nodes, differential, generic, report, d.get("provenance", {}))


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ContractError(f"artifact is not valid JSON: {exc}") from exc
    try:
        return from_json(d)
    except (KeyError, TypeError) as exc:
        raise ContractError(f"malformed artifact: missing or invalid {exc}") from exc


# -- renderings ---------------------------------------------------------------

def render_text(a):
    r = a.ranking
    lines = []
    for k, S in enumerate(a.systems):
        marks = {}
        if a.constraints is not None:
            for c in a.constraints.per_system[k]:
                marks[c.poly] = c
        lines.append(f"T{k + 1}:")
        for p in S.display_equations():
            tag = ""
            c = marks.get(p)
            if c is not None:
                kind = "constraint" if c.lagrangian else "generalized constraint"
                tag = f"    [{kind}, {'global' if c.is_global else 'local'}]"
            lines.append(f"  {r.format(p)} = 0{tag}")
        for q in S.inequations + S.assumptions:
            lines.append(f"  {r.format(q)} != 0")
    if a.constraints is not None:
        lines.append(f"psi = {a.constraints.psi}")
    if not a.systems:
        lines.append("no solutions: the system is inconsistent")
    return "\n".join(lines) + "\n"


def case_tree(nodes):
    """The case tree with inconsistent branches removed and single-child chains spliced.

    Returns ``{node: [(child, [labels...]), ...]}`` for the kept nodes, rooted at 0.
    """
    alive = {}

    def live(n):
        if n not in alive:
            node = nodes[n]
            alive[n] = node.status == "leaf" or any(live(c) for c in node.children)
        return alive[n]

    out = {}

    def walk(n):
        kids = []
        for c in nodes[n].children:
            if not live(c):
                continue
            labels = [nodes[c].label]
            while True:
                nxt = [g for g in nodes[c].children if live(g)]
                if len(nxt) != 1:
                    break
                c = nxt[0]
                labels.append(nodes[c].label)
            kids.append((c, labels))
            walk(c)
        out[n] = kids

    if 0 in nodes and live(0):
        walk(0)
    return out


def _dot_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def render_dot(a):
    tree = case_tree(a.nodes)
    lines = ["digraph thomas {", "  node [shape=plaintext];", '  n0 [label="input"];']
    root = a.nodes.get(0)
    if root is not None and root.status == "leaf":
        lines += [f'  s0 [label="T{root.system + 1}"];', "  n0 -> s0;"]
    for n in sorted(tree):
        for c, labels in tree[n]:
            node = a.nodes[c]
            if node.status == "leaf":
                lines.append(f'  n{c} [label="T{node.system + 1}"];')
            else:
                lines.append(f'  n{c} [label="", shape=point];')
            label = "\\n".join(_dot_escape(s) for s in labels)
            lines.append(f'  n{n} -> n{c} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
