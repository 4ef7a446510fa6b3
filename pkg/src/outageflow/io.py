"""Text formats for instances and schedules.

Instance format (line oriented, ``c`` lines are comments)::

    p msp <num-nodes> <num-arcs> <T>
    n <id> source|sink|node
    a <arc-id> <tail> <head> <capacity> <jobs>

Schedule format: one line ``j <arc-id> <period> [<period> ...]`` per job arc.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Arc, Instance, Network, OutageFlowError, Schedule

ROLES = ("source", "sink", "node")


class ParseError(OutageFlowError, ValueError):
    def __init__(self, line: int, column: int, expected: str, code: str = "Syntax"):
        self.line = line
        self.column = column
        self.expected = expected
        self.code = code
        super().__init__(f"{line}:{column}: {code}: expected {expected}")


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = []
        col = 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append(_Token(part, lineno, col + 1))
            col += len(part)
        if toks and toks[0].text != "c":
            yield lineno, toks


def _int(tok: _Token, what: str, minimum: int | None = None) -> int:
    try:
        value = int(tok.text)
    except ValueError:
        raise ParseError(tok.line, tok.column, f"integer {what}", "BadInteger") from None
    if minimum is not None and value < minimum:
        raise ParseError(tok.line, tok.column, f"{what} >= {minimum}", "BadValue")
    return value


def _arity(toks, n, form):
    if len(toks) != n:
        t = toks[min(len(toks), n) - 1] if len(toks) > n else toks[-1]
        col = toks[n].column if len(toks) > n else t.column + len(t.text)
        raise ParseError(t.line, col, form, "WrongFieldCount")


def parse_instance(text: str) -> Instance:
    lines = list(_tokens(text))
    if not lines or lines[0][1][0].text != "p":
        line = lines[0][0] if lines else 1
        raise ParseError(line, 1, "header 'p msp <nodes> <arcs> <T>'", "MissingHeader")
    _, head = lines[0]
    _arity(head, 5, "'p msp <nodes> <arcs> <T>'")
    if head[1].text != "msp":
        raise ParseError(head[1].line, head[1].column, "problem type 'msp'", "BadHeader")
    n_nodes = _int(head[2], "node count", 0)
    n_arcs = _int(head[3], "arc count", 0)
    T = _int(head[4], "horizon")

    nodes: list[str] = []
    roles: dict[str, str] = {}
    arcs: list[Arc] = []
    jobs: dict[str, int] = {}
    seen_arcs = set()
    last = head[0]
    for lineno, toks in lines[1:]:
        kind = toks[0]
        last = toks[-1]
        if kind.text == "n":
            _arity(toks, 3, "'n <id> source|sink|node'")
            name, role = toks[1], toks[2]
            if name.text in roles:
                raise ParseError(lineno, name.column, "a new node id", "DuplicateNode")
            if role.text not in ROLES:
                raise ParseError(lineno, role.column, "source, sink or node", "BadRole")
            if role.text != "node" and role.text in roles.values():
                raise ParseError(lineno, role.column, f"a single {role.text}", "DuplicateTerminal")
            roles[name.text] = role.text
            nodes.append(name.text)
        elif kind.text == "a":
            _arity(toks, 6, "'a <arc-id> <tail> <head> <capacity> <jobs>'")
            arc_id = toks[1]
            if arc_id.text in seen_arcs:
                raise ParseError(lineno, arc_id.column, "a new arc id", "DuplicateArcId")
            seen_arcs.add(arc_id.text)
            cap = _int(toks[4], "capacity")
            m = _int(toks[5], "job count", 0)
            arcs.append(Arc(arc_id.text, toks[2].text, toks[3].text, cap))
            if m:
                jobs[arc_id.text] = m
        elif kind.text == "p":
            raise ParseError(lineno, kind.column, "a single header", "DuplicateHeader")
        else:
            raise ParseError(lineno, kind.column, "line type c, p, n or a", "UnknownLineType")

    end = (last.line, last.column + len(last.text))
    if len(nodes) != n_nodes:
        raise ParseError(*end, f"{n_nodes} node lines, found {len(nodes)}", "CountMismatch")
    if len(arcs) != n_arcs:
        raise ParseError(*end, f"{n_arcs} arc lines, found {len(arcs)}", "CountMismatch")
    for role in ("source", "sink"):
        if role not in roles.values():
            raise ParseError(*end, f"a node with role {role}", "MissingTerminal")
    source = next(v for v, r in roles.items() if r == "source")
    sink = next(v for v, r in roles.items() if r == "sink")
    return Instance(Network(tuple(nodes), tuple(arcs), source, sink), jobs, T)


def emit_instance(instance: Instance, comment: str | None = None) -> str:
    net = instance.network
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p msp {len(net.nodes)} {len(net.arcs)} {instance.horizon}")
    for v in net.nodes:
        role = "source" if v == net.source else "sink" if v == net.sink else "node"
        out.append(f"n {v} {role}")
    for a in net.arcs:
        out.append(f"a {a.id} {a.tail} {a.head} {a.capacity} {instance.jobs.get(a.id, 0)}")
    return "\n".join(out) + "\n"


def parse_schedule(text: str) -> Schedule:
    outages: dict[str, set[int]] = {}
    for lineno, toks in _tokens(text):
        if toks[0].text != "j":
            raise ParseError(lineno, toks[0].column, "line type c or j", "UnknownLineType")
        if len(toks) < 3:
            t = toks[-1]
            raise ParseError(lineno, t.column + len(t.text), "'j <arc-id> <period> ...'", "WrongFieldCount")
        arc = toks[1].text
        if arc in outages:
            raise ParseError(lineno, toks[1].column, "one line per arc", "DuplicateArcId")
        periods = set()
        for tok in toks[2:]:
            p = _int(tok, "period", 1)
            if p in periods:
                raise ParseError(lineno, tok.column, "distinct periods", "DuplicatePeriod")
            periods.add(p)
        outages[arc] = periods
    return Schedule(outages)


def emit_schedule(schedule: Schedule) -> str:
    return "".join(
        f"j {a} {' '.join(map(str, ps))}\n" for a, ps in schedule.as_lists().items()
    )
