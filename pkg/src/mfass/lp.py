"""Export of the mixed-binary model in CPLEX LP format.

Variables are ``x_<arc>_<period>`` (flow) and ``y_<arc>_<period>``
(availability of a job arc, 0 in its outage period); periods are numbered
from 1. Only job arcs get ``y`` variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mfass.model import Instance

Row = tuple[str, dict[str, int], str, int]


def xvar(arc: int, period: int) -> str:
    return f"x_{arc}_{period + 1}"


def yvar(arc: int, period: int) -> str:
    return f"y_{arc}_{period + 1}"


@dataclass
class LpModel:
    objective: dict[str, int] = field(default_factory=dict)
    rows: list[Row] = field(default_factory=list)
    continuous: list[str] = field(default_factory=list)
    binaries: list[str] = field(default_factory=list)

    def rows_named(self, prefix: str) -> list[Row]:
        return [r for r in self.rows if r[0].startswith(prefix + "_")]

    def to_text(self) -> str:
        out = ["\\ maximum total s-t throughput with scheduled arc outages", "Maximize"]
        out += _wrap(" obj:", self.objective)
        out.append("Subject To")
        for name, coefs, sense, rhs in self.rows:
            body = _wrap(f" {name}:", coefs)
            body[-1] += f" {sense} {rhs}"
            out += body
        out.append("Bounds")
        out += [f" {v} >= 0" for v in self.continuous]
        if self.binaries:
            out.append("Binaries")
            out += _chunk(self.binaries)
        out.append("End")
        return "\n".join(out) + "\n"


def _terms(coefs: dict[str, int]) -> list[str]:
    terms = []
    for var, c in coefs.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        terms.append(f"{sign} {var}" if mag == 1 else f"{sign} {mag} {var}")
    return terms


def _wrap(head: str, coefs: dict[str, int], width: int = 8) -> list[str]:
    terms = _terms(coefs)
    lines = [" ".join([head] + terms[:width])]
    for k in range(width, len(terms), width):
        lines.append("   " + " ".join(terms[k:k + width]))
    return lines


def _chunk(names: list[str], width: int = 8) -> list[str]:
    return [" " + " ".join(names[k:k + width]) for k in range(0, len(names), width)]


def build_lp(instance: Instance) -> LpModel:
    net, T = instance.network, instance.horizon
    jobs = set(instance.jobs)
    model = LpModel()
    for i in range(T):
        for a in net.arcs:
            if a.tail == net.source:
                model.objective[xvar(a.id, i)] = model.objective.get(xvar(a.id, i), 0) + 1
    for i in range(T):
        for a in net.arcs:
            if a.id in jobs:
                model.rows.append((f"capj_{a.id}_{i + 1}", {xvar(a.id, i): 1, yvar(a.id, i): -a.capacity}, "<=", 0))
            else:
                model.rows.append((f"capn_{a.id}_{i + 1}", {xvar(a.id, i): 1}, "<=", a.capacity))
    for a in instance.jobs:
        model.rows.append((f"dur_{a}", {yvar(a, i): 1 for i in range(T)}, "=", T - 1))
    touched = sorted({a.tail for a in net.arcs} | {a.head for a in net.arcs})
    for i in range(T):
        for v in touched:
            if v in (net.source, net.sink):
                continue
            coefs: dict[str, int] = {}
            for a in net.arcs:
                if a.head == v:
                    coefs[xvar(a.id, i)] = coefs.get(xvar(a.id, i), 0) + 1
                if a.tail == v:
                    coefs[xvar(a.id, i)] = coefs.get(xvar(a.id, i), 0) - 1
            coefs = {k: c for k, c in coefs.items() if c}
            if coefs:
                model.rows.append((f"flow_{v}_{i + 1}", coefs, "=", 0))
    if instance.jobs:
        for i in range(T):
            model.rows.append((f"lim_{i + 1}", {yvar(a, i): 1 for a in instance.jobs}, ">=",
                               len(instance.jobs) - instance.limits[i]))
    model.continuous = [xvar(a.id, i) for a in net.arcs for i in range(T)]
    model.binaries = [yvar(a, i) for a in instance.jobs for i in range(T)]
    return model


def export_lp(instance: Instance) -> str:
    return build_lp(instance).to_text()
