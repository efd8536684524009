"""Text reports, key=value machine blocks and DOT dual graphs."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..hjstring import determinant, minimal_string
from ..mmp import ChainSurface, ContractionStep, NotTerminal, Terminal, Verdict
from ..mmp.chain import RAMIFIED
from .documents import rational_str


def machine_block(pairs: Iterable[tuple[str, object]]) -> str:
    lines = []
    for key, value in pairs:
        if isinstance(value, Fraction):
            value = rational_str(value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    return "\n".join(lines)


def verdict_pairs(v: Verdict) -> list[tuple[str, object]]:
    if isinstance(v, Terminal):
        return [("verdict", "terminal"), ("case", v.case), ("sufficiency_only", v.sufficiency_only)]
    if isinstance(v, NotTerminal):
        pairs: list[tuple[str, object]] = [("verdict", "not_terminal")]
        if v.witness is not None:
            pairs.append(("witness", f"{v.witness.a},{v.witness.b}"))
        if v.delta is not None:
            pairs.append(("delta", v.delta))
        if v.ram_order is not None:
            pairs.append(("ram_order", v.ram_order))
        pairs.append(("b", v.b_value))
        if v.reason:
            pairs.append(("reason", v.reason))
        return pairs
    return [("verdict", "unsupported"), ("reason", v.reason)]


def verdict_report(v: Verdict) -> str:
    lines = [str(v)]
    if isinstance(v, NotTerminal) and v.reason and v.witness is not None:
        lines.append(f"witness={v.witness} b={v.b_value}")
    return "\n".join(lines) + "\n\n" + machine_block(verdict_pairs(v)) + "\n"


def singularity_str(s) -> str:
    return "smooth" if s is None else f"{s} det {determinant(s)}"


def step_lines(steps: Sequence[ContractionStep]) -> list[str]:
    out = []
    for i, st in enumerate(steps, start=1):
        out.append(
            f"{i}. contract {st.label}: K.E = {st.k_dot}, E^2 = {st.self_sq} -> {singularity_str(st.singularity)}"
        )
    return out


def step_pairs(steps: Sequence[ContractionStep]) -> list[tuple[str, object]]:
    pairs: list[tuple[str, object]] = [("steps", len(steps))]
    for i, st in enumerate(steps, start=1):
        pairs += [
            (f"step{i}.curve", st.label),
            (f"step{i}.k_dot", st.k_dot),
            (f"step{i}.self_sq", st.self_sq),
            (f"step{i}.singularity", "smooth" if st.singularity is None else str(st.singularity)),
        ]
    return pairs


def _ram_label(n: int, ram) -> str:
    if ram == RAMIFIED:
        return f"n={n} (secondary)"
    return f"n={n} z={ram.num}/{ram.den}"


def dot_graph(chain: ChainSurface, name: str = "Y") -> str:
    """Dual graph of the surface with its contracted components collapsed.

    Each curve node shows self-intersection and ramification order; each
    singular point is a double circle labelled by its HJ weights.
    """
    nodes: list[str] = []
    order: list[str] = []
    if chain.left is not None:
        g = chain.left
        nodes.append(f'  {g.label} [shape=box, label="{g.label}\\n{_ram_label(g.n, g.ram)}"];')
        order.append(g.label)
    comps = {i: k for k, comp in enumerate(chain.components(), start=1) for i in comp}
    seen = set()
    for i, c in enumerate(chain.curves):
        if i in comps:
            k = comps[i]
            if k in seen:
                continue
            seen.add(k)
            comp = next(cc for cc in chain.components() if i in cc)
            s = minimal_string([chain.curves[j].weight for j in comp])
            label = f"P{k}"
            text = f"{s}\\ndet {determinant(s)}" if len(s) else "smooth"
            shape = "doublecircle" if len(s) else "point"
            nodes.append(f'  {label} [shape={shape}, label="{text}"];')
            order.append(label)
        else:
            nodes.append(f'  {c.label} [label="{c.label}\\n({c.selfint})\\n{_ram_label(c.n, c.ram)}"];')
            order.append(c.label)
    if chain.right is not None:
        g = chain.right
        nodes.append(f'  {g.label} [shape=box, label="{g.label}\\n{_ram_label(g.n, g.ram)}"];')
        order.append(g.label)
    edges = [f"  {x} -- {y};" for x, y in zip(order, order[1:])]
    return "graph " + name + " {\n" + "\n".join(nodes + edges) + "\n}\n"
