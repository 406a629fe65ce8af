"""Line-based text format for DFAs and counter devices.

    # comments and blank lines are ignored
    dfa <num_states> <alphabet_size> <initial>
    finals <k> <f1> ... <fk>          (sorted ascending)
    trans <q> <t_0> ... <t_{na-1}>    (one line per state, ascending q)
    counter <c_lambda> <c_0> ... <c_{na-1}>   (optional, counter devices)

All integers decimal, space separated.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .dfa import Alphabet, Dfa
from .oracles import CounterFunction


class FormatError(ValueError):
    """Malformed DFA text; the message carries the offending line."""


def serialize_dfa(dfa: Dfa, counter: Optional[CounterFunction] = None) -> str:
    lines = [f"dfa {dfa.num_states} {dfa.alphabet.size} {dfa.initial}"]
    finals = sorted(dfa.finals)
    lines.append("finals " + " ".join(str(x) for x in [len(finals)] + finals))
    for q in range(dfa.num_states):
        row = " ".join(str(int(t)) for t in dfa.transitions[q])
        lines.append(f"trans {q} {row}")
    if counter is not None:
        vals = " ".join(str(v) for v in counter.per_letter)
        lines.append(f"counter {counter.c_lambda} {vals}")
    return "\n".join(lines) + "\n"


def parse_device(text: str) -> Tuple[Dfa, Optional[CounterFunction]]:
    """Parse a DFA, plus the counter function when one is attached."""
    header = None
    finals = None
    rows = {}
    counter = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            values = [int(x) for x in fields[1:]]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer field in {raw!r}") from exc
        if kind == "dfa":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate dfa header")
            if len(values) != 3:
                raise FormatError(f"line {lineno}: dfa header needs 3 integers")
            header = values
        elif kind == "finals":
            if header is None:
                raise FormatError(f"line {lineno}: finals before dfa header")
            if finals is not None:
                raise FormatError(f"line {lineno}: duplicate finals line")
            if not values or len(values) != values[0] + 1:
                raise FormatError(f"line {lineno}: finals count mismatch")
            finals = values[1:]
        elif kind == "trans":
            if header is None:
                raise FormatError(f"line {lineno}: trans before dfa header")
            if len(values) != header[1] + 1:
                raise FormatError(
                    f"line {lineno}: expected state plus {header[1]} targets"
                )
            q = values[0]
            if q in rows:
                raise FormatError(f"line {lineno}: duplicate trans row for state {q}")
            rows[q] = values[1:]
        elif kind == "counter":
            if header is None:
                raise FormatError(f"line {lineno}: counter before dfa header")
            if len(values) != header[1] + 1:
                raise FormatError(
                    f"line {lineno}: counter needs base value plus {header[1]} weights"
                )
            counter = CounterFunction(values[0], tuple(values[1:]))
        else:
            raise FormatError(f"line {lineno}: unknown line kind {kind!r}")
    if header is None:
        raise FormatError("missing dfa header line")
    num_states, alphabet_size, initial = header
    if finals is None:
        raise FormatError("missing finals line")
    missing = [q for q in range(num_states) if q not in rows]
    if missing:
        raise FormatError(f"missing trans row for state {missing[0]}")
    extra = [q for q in rows if not (0 <= q < num_states)]
    if extra:
        raise FormatError(f"trans row for out-of-range state {extra[0]}")
    table = [rows[q] for q in range(num_states)]
    try:
        dfa = Dfa(num_states, Alphabet(alphabet_size), initial, finals, table)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return dfa, counter


def parse_dfa(text: str) -> Dfa:
    dfa, counter = parse_device(text)
    if counter is not None:
        raise FormatError("unexpected counter line; use parse_device")
    return dfa
