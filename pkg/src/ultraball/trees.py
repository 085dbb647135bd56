"""Tree data for the spectrum pictures, with DOT and record emission.

Arcs are nodes in their own right (kind ``arc``) carrying an interval
parameter; branch and leaf nodes carry a point parameter.  Emission
order is construction order and node ids are ``n<k>``, so the DOT and
record outputs are byte-deterministic for identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class TreeNode:
    id: str
    label: str
    kind: str  # branch | leaf | arc
    parameter: str


@dataclass(frozen=True)
class TreeEdge:
    parent: str
    child: str


@dataclass(frozen=True)
class TreeData:
    nodes: tuple[TreeNode, ...]
    edges: tuple[TreeEdge, ...]

    def root(self) -> TreeNode:
        children = {e.child for e in self.edges}
        roots = [n for n in self.nodes if n.id not in children]
        if len(roots) != 1:
            raise ValueError(f"tree must have a single root, found {len(roots)}")
        return roots[0]


class _Builder:
    def __init__(self) -> None:
        self.nodes: list[TreeNode] = []
        self.edges: list[TreeEdge] = []

    def node(self, label: str, kind: str, parameter: str) -> str:
        nid = f"n{len(self.nodes)}"
        self.nodes.append(TreeNode(nid, label, kind, parameter))
        return nid

    def edge(self, parent: str, child: str) -> None:
        self.edges.append(TreeEdge(parent, child))

    def build(self) -> TreeData:
        tree = TreeData(tuple(self.nodes), tuple(self.edges))
        tree.root()  # validates single root
        return tree


def emit_tree(
    kind: str,
    R: Fraction | None = None,
    primes: Sequence[int] = (),
    centers: Sequence[str] = (),
) -> TreeData:
    """Build the tree for one of the three spectrum pictures.

    ``spec_Z``: trivial-norm root, one p-adic arc per listed prime
    ending in its residue leaf, and one archimedean arc.
    ``trivial_R_lt_1``: a single radius segment [0, R].
    ``trivial_R_geq_1``: the radius segment [1, R] plus one sub-unit
    branch per sampled center below the branching point at radius 1.
    """
    b = _Builder()
    if kind == "spec_Z":
        if not primes:
            raise ValueError("spec_Z needs at least one prime")
        root = b.node("trivial norm", "branch", "0")
        for p in sorted(primes):
            arc = b.node(f"|.|_{p}^a", "arc", "a in (0,inf)")
            leaf = b.node(f"residue mod {p}", "leaf", "a=inf")
            b.edge(root, arc)
            b.edge(arc, leaf)
        arch = b.node("|.|_inf^a", "arc", "a in (0,1]")
        b.edge(root, arch)
        return b.build()

    if R is None or R <= 0:
        raise ValueError("trivially valued pictures need R > 0")

    if kind == "trivial_R_lt_1":
        if R >= 1:
            raise ValueError("trivial_R_lt_1 needs R < 1")
        root = b.node("gauss point", "branch", str(R))
        arc = b.node("radius segment", "arc", f"[0,{R}]")
        leaf = b.node("evaluation at 0", "leaf", "0")
        b.edge(root, arc)
        b.edge(arc, leaf)
        return b.build()

    if kind == "trivial_R_geq_1":
        if R < 1:
            raise ValueError("trivial_R_geq_1 needs R >= 1")
        root = b.node("gauss point", "branch", str(R))
        if R > 1:
            seg = b.node("radius segment", "arc", f"[1,{R}]")
            junction = b.node("branch point", "branch", "1")
            b.edge(root, seg)
            b.edge(seg, junction)
        else:
            junction = root
        for c in centers:
            arc = b.node(f"radii below 1 at {c}", "arc", "(0,1)")
            leaf = b.node(f"evaluation at {c}", "leaf", "0")
            b.edge(junction, arc)
            b.edge(arc, leaf)
        return b.build()

    raise ValueError(f"unknown tree kind: {kind!r}")


_DOT_SHAPE = {"branch": "circle", "leaf": "box", "arc": "plaintext"}


def to_dot(tree: TreeData) -> str:
    lines = ["digraph spectrum {", "  rankdir=TB;"]
    for n in tree.nodes:
        label = f"{n.label}\\n{n.parameter}" if n.parameter else n.label
        lines.append(f'  {n.id} [label="{label}", shape={_DOT_SHAPE[n.kind]}];')
    for e in tree.edges:
        lines.append(f"  {e.parent} -> {e.child};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_records(tree: TreeData) -> str:
    """One tab-separated record per line: kind, input, value, status."""
    lines = []
    for n in tree.nodes:
        lines.append(f"node\t{n.id}\t{n.kind}:{n.label}:{n.parameter}\tok")
    for e in tree.edges:
        lines.append(f"edge\t{e.parent}->{e.child}\t-\tok")
    return "\n".join(lines) + "\n"


def describe(tree: TreeData) -> str:
    kinds = {"branch": 0, "leaf": 0, "arc": 0}
    for n in tree.nodes:
        kinds[n.kind] += 1
    return (
        f"tree: {len(tree.nodes)} nodes ({kinds['branch']} branch, "
        f"{kinds['arc']} arc, {kinds['leaf']} leaf), {len(tree.edges)} edges, "
        f"root {tree.root().id}\n"
    )
