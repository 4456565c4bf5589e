"""graph6 codec (short form, n <= 62) and a tolerant graph loader.

The codec is written out in full rather than delegated, so that tests can
cross-check it against an independent decoder.
"""

from __future__ import annotations

import json

from .errors import InvalidG6, SizeLimitExceeded
from .graph import Graph

_HEADER = ">>graph6<<"


def g6_decode(text: str) -> Graph:
    """Decode a short-form graph6 string into a Graph."""
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise InvalidG6("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise InvalidG6(f"character {ch!r} outside graph6 range")
    first = ord(s[0]) - 63
    if first == 63:
        raise InvalidG6("long-form graph6 (n > 62) is not supported")
    n = first
    body = s[1:]
    nbits = n * (n - 1) // 2
    want = (nbits + 5) // 6
    if len(body) != want:
        raise InvalidG6(f"expected {want} data characters for n={n}, got {len(body)}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise InvalidG6("nonzero padding bits")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def g6_encode(g: Graph) -> str:
    """Encode a Graph as short-form graph6. Requires n <= 62."""
    if g.n > 62:
        raise SizeLimitExceeded(f"graph6 short form supports n <= 62, got {g.n}")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if (u, v) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def parse_graph(text: str) -> Graph:
    """Parse either graph6 or the JSON edge-list form {"n":..,"edges":[[u,v],..]}."""
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
            return Graph.from_json_dict(obj)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InvalidG6(f"bad JSON graph: {exc}") from exc
    # take the first non-empty line of a g6 file
    for line in s.splitlines():
        line = line.strip()
        if line:
            return g6_decode(line)
    raise InvalidG6("no graph found in input")


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())
