"""Text formats for instances (``.mfass``) and schedules.

Instance lines (``#`` starts a comment)::

    nodes <n>
    source <id>
    sink <id>
    horizon <T>
    limit <K>            or   limits <K_1> ... <K_T>
    arc <id> <tail> <head> <capacity> <job:0|1>

Schedule lines, periods numbered from 1, idle periods may be omitted::

    period <i>: <arc ids>
"""

from __future__ import annotations

from pathlib import Path

from mfass.errors import ParseError
from mfass.model import Arc, FlowNetwork, Instance, Schedule


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str) -> Instance:
    header: dict[str, int] = {}
    limits: list[int] | None = None
    arcs: dict[int, tuple[int, int, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key in ("nodes", "source", "sink", "horizon", "limit"):
            if len(rest) != 1:
                raise ParseError(f"'{key}' takes exactly one value", lineno)
            if key in header or (key == "limit" and limits is not None):
                raise ParseError(f"duplicate '{key}' line", lineno)
            header[key] = _ints(rest, lineno)[0]
        elif key == "limits":
            if limits is not None or "limit" in header:
                raise ParseError("per-period limits given twice", lineno)
            limits = _ints(rest, lineno)
        elif key == "arc":
            if len(rest) != 5:
                raise ParseError("'arc' needs: id tail head capacity job", lineno)
            arc_id, tail, head, cap, job = _ints(rest, lineno)
            if arc_id in arcs:
                raise ParseError(f"arc {arc_id} defined twice", lineno)
            if job not in (0, 1):
                raise ParseError(f"job flag must be 0 or 1, got {job}", lineno)
            if cap < 0:
                raise ParseError(f"arc {arc_id} has negative capacity", lineno)
            arcs[arc_id] = (tail, head, cap, job)
        else:
            raise ParseError(f"unknown keyword '{key}'", lineno)
    for key in ("nodes", "source", "sink", "horizon"):
        if key not in header:
            raise ParseError(f"missing '{key}' line")
    T = header["horizon"]
    if limits is None:
        if "limit" not in header:
            raise ParseError("missing 'limit' or 'limits' line")
        limits = [header["limit"]] * T
    elif len(limits) != T:
        raise ParseError(f"'limits' lists {len(limits)} values for horizon {T}")
    if sorted(arcs) != list(range(len(arcs))):
        raise ParseError("arc ids must be 0..m-1 without gaps")
    n = header["nodes"]
    for arc_id, (tail, head, _, _) in arcs.items():
        if not (0 <= tail < n and 0 <= head < n):
            raise ParseError(f"arc {arc_id} uses a node outside 0..{n - 1}")
    net = FlowNetwork(n, header["source"], header["sink"],
                      tuple(Arc(i, t, h, c) for i, (t, h, c, _) in sorted(arcs.items())))
    jobs = tuple(i for i, (_, _, _, j) in sorted(arcs.items()) if j)
    return Instance(net, jobs, T, tuple(limits))


def format_instance(instance: Instance) -> str:
    net = instance.network
    jobs = set(instance.jobs)
    lines = [f"nodes {net.node_count}", f"source {net.source}", f"sink {net.sink}", f"horizon {instance.horizon}"]
    if instance.is_uniform:
        lines.append(f"limit {instance.limit}")
    else:
        lines.append("limits " + " ".join(map(str, instance.limits)))
    lines += [f"arc {a.id} {a.tail} {a.head} {a.capacity} {int(a.id in jobs)}" for a in net.arcs]
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    assignment: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        words = head.split()
        if not sep or len(words) != 2 or words[0] != "period":
            raise ParseError("expected 'period <i>: <arc ids>'", lineno)
        period = _ints(words[1:], lineno)[0]
        if period < 1:
            raise ParseError("periods are numbered from 1", lineno)
        for a in _ints(body.split(), lineno):
            if a in assignment:
                raise ParseError(f"arc {a} scheduled twice", lineno)
            assignment[a] = period - 1
    return Schedule(assignment)


def format_schedule(schedule: Schedule, horizon: int) -> str:
    return "".join(f"period {i + 1}:" + "".join(f" {a}" for a in group) + "\n"
                   for i, group in enumerate(schedule.periods(horizon)))


def read_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())


def write_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(format_instance(instance))


def read_schedule(path: str | Path) -> Schedule:
    return parse_schedule(Path(path).read_text())


def write_schedule(schedule: Schedule, horizon: int, path: str | Path) -> None:
    Path(path).write_text(format_schedule(schedule, horizon))
