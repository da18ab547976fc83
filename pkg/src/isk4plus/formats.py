"""Graph serialization: graph6 records, plain edge lists, DIMACS .col files.

graph6 layout: header N(n), then the upper triangle in column order
x(0,1), x(0,2), x(1,2), x(0,3), ... packed into 6-bit groups (MSB first,
zero padded), each group stored as one printable byte value+63.
"""

from __future__ import annotations

from .graph import Graph, graph_from_edges

GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    """Malformed serialized graph data."""


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    # 18-bit form covers 63..258047; our graphs never exceed MAX_VERTICES
    return bytes([126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63),
                  63 + (n & 63)])


def write_graph6(G: Graph) -> bytes:
    """Encode a labeled graph as one graph6 record (no trailing newline)."""
    n = G.n
    out = bytearray(_encode_size(n))
    group = 0
    nbits = 0
    adj = G.adj
    for j in range(1, n):
        col = adj[j]
        for i in range(j):
            group = (group << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(group + 63)
                group = 0
                nbits = 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(data: bytes | str) -> Graph:
    """Decode one graph6 record; rejects trailing bytes and bad padding."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    if not data:
        raise FormatError("empty graph6 record")
    for b in data:
        if not 63 <= b <= 126:
            raise FormatError(f"non-printable graph6 byte {b}")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise FormatError("graph6 records beyond 258047 vertices unsupported")
        if len(data) < 4:
            raise FormatError("truncated graph6 size header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise FormatError(f"truncated graph6 record: need {need} data bytes")
    if len(body) > need:
        raise FormatError("trailing garbage after graph6 record")
    rows = [0] * n
    pos = 0
    for byte in body:
        group = byte - 63
        for k in range(5, -1, -1):
            bit = (group >> k) & 1
            if pos < nbits:
                if bit:
                    i, j = _pair_at(pos)
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            elif bit:
                raise FormatError("nonzero padding bits in graph6 record")
            pos += 1
    return Graph(n, tuple(rows))


def _pair_at(pos: int) -> tuple[int, int]:
    # column-order position -> (i, j): column j holds bits j*(j-1)/2 .. +j-1
    j = 1
    while j * (j + 1) // 2 <= pos:
        j += 1
    return pos - j * (j - 1) // 2, j


def iter_graph6_lines(lines) -> "iter":
    """Parse an iterable of graph6 lines; yields (lineno, Graph).

    Blank lines and a leading >>graph6<< file header are skipped.
    """
    for lineno, raw in enumerate(lines, start=1):
        if isinstance(raw, str):
            raw = raw.encode("ascii", errors="replace")
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        try:
            yield lineno, parse_graph6(line)
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None


def read_edgelist(text: str) -> Graph:
    """Read the plain text format: "n m" header then m lines "u v" (0-based)."""
    tokens = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not tokens or len(tokens[0]) != 2:
        raise FormatError("edge list must start with 'n m' header")
    try:
        n, m = int(tokens[0][0]), int(tokens[0][1])
    except ValueError:
        raise FormatError("non-integer edge list header") from None
    if len(tokens) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(tokens) - 1}")
    edges = []
    for lineno, parts in enumerate(tokens[1:], start=2):
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer endpoint") from None
        edges.append((u, v))
    try:
        return graph_from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_dimacs(text: str) -> Graph:
    """Read a DIMACS .col file ("p edge n m" header, 1-based "e u v" lines)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise FormatError(f"line {lineno}: bad problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e u v'")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer endpoint") from None
            edges.append((u, v))
        # other record types (n, x, ...) are ignored
    if n is None:
        raise FormatError("missing DIMACS problem line")
    try:
        return graph_from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
