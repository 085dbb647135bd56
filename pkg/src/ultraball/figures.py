"""Matplotlib rendering of spectrum trees to image files.

Layout is deterministic: leaves are spread left to right in emission
order, inner nodes sit at the mean of their children, depth grows
downward.  Styling is intentionally plain; the DOT output is the
structured artifact, the figure is the human-facing report.
"""

from __future__ import annotations

from .trees import TreeData

_STYLE = {
    "branch": dict(marker="o", color="#1f4e79", size=55),
    "leaf": dict(marker="s", color="#8c1515", size=45),
    "arc": dict(marker="d", color="#666666", size=30),
}


def _layout(tree: TreeData) -> dict[str, tuple[float, float]]:
    children: dict[str, list[str]] = {n.id: [] for n in tree.nodes}
    for e in tree.edges:
        children[e.parent].append(e.child)
    root = tree.root().id

    depth: dict[str, int] = {root: 0}
    order = [root]
    for nid in order:
        for c in children[nid]:
            depth[c] = depth[nid] + 1
            order.append(c)

    xpos: dict[str, float] = {}
    next_slot = [0.0]

    def place(nid: str) -> float:
        kids = children[nid]
        if not kids:
            xpos[nid] = next_slot[0]
            next_slot[0] += 1.0
        else:
            xs = [place(c) for c in kids]
            xpos[nid] = sum(xs) / len(xs)
        return xpos[nid]

    place(root)
    return {nid: (xpos[nid], -float(depth[nid])) for nid in xpos}


def render_tree(tree: TreeData, path: str, title: str = "") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pos = _layout(tree)
    width = max(3.5, 1.6 * (1 + max(x for x, _ in pos.values())))
    height = 1.0 + 1.4 * (1 + max(-y for _, y in pos.values()))
    fig, ax = plt.subplots(figsize=(width, height))

    for e in tree.edges:
        (x0, y0), (x1, y1) = pos[e.parent], pos[e.child]
        ax.plot([x0, x1], [y0, y1], color="#999999", lw=1.2, zorder=1)
    for n in tree.nodes:
        x, y = pos[n.id]
        style = _STYLE[n.kind]
        ax.scatter([x], [y], marker=style["marker"], s=style["size"],
                   color=style["color"], zorder=2)
        text = n.label if not n.parameter else f"{n.label}\n{n.parameter}"
        ax.annotate(text, (x, y), textcoords="offset points", xytext=(6, 4),
                    fontsize=8)

    if title:
        ax.set_title(title, fontsize=10)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
