"""Instance and graph file formats.

Instance files hold one string per line, or ``<weight>\\t<string>`` lines;
lines starting with ``#`` are header comments and blank lines are ignored.
Graph files start with ``n m`` followed by ``m`` lines ``u v`` using 1-based
vertex indices.  Serialization is canonical: headers first, LF endings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError
from .generators import DiGraph, GeneratedInstance
from .strings_core import WeightedCollection

_WEIGHTED = re.compile(rb"^(\d+)\t(.*)$", re.DOTALL)
PROVENANCE = "provenance "
PARAMS = "params "


@dataclass
class InstanceFile:
    strings: list[bytes]
    weights: list[int] | None = None
    headers: list[str] = field(default_factory=list)

    def collection(self) -> WeightedCollection:
        return WeightedCollection.from_strings(self.strings, self.weights)

    @property
    def weighted(self) -> bool:
        return self.weights is not None


def parse_instance(data: bytes) -> InstanceFile:
    headers: list[str] = []
    body: list[tuple[int | None, bytes]] = []
    for lineno, line in enumerate(data.split(b"\n"), start=1):
        if not line.strip():
            continue
        if line.startswith(b"#"):
            text = line[1:].decode("utf-8", errors="replace")
            headers.append(text[1:] if text.startswith(" ") else text)
            continue
        m = _WEIGHTED.match(line)
        if m:
            if not m.group(2):
                raise InputError(f"line {lineno}: empty string")
            body.append((int(m.group(1)), m.group(2)))
        else:
            body.append((None, line))
    kinds = {w is None for w, _ in body}
    if len(kinds) > 1:
        raise InputError("instance mixes weighted and unweighted lines")
    weights = None if not body or None in {w for w, _ in body} else [w for w, _ in body]
    return InstanceFile([s for _, s in body], weights, headers)


def serialize_instance(inst: InstanceFile) -> bytes:
    for s in inst.strings:
        if not s or b"\n" in s or s.startswith(b"#") or not s.strip():
            raise InputError(f"string {s!r} cannot be written as an instance line")
        if inst.weights is None and _WEIGHTED.match(s):
            raise InputError(f"string {s!r} would parse as a weighted line")
    out = [b"#" + (b" " + h.encode("utf-8") if h else b"") for h in inst.headers]
    if inst.weights is None:
        out += inst.strings
    else:
        out += [str(w).encode() + b"\t" + s for w, s in zip(inst.weights, inst.strings)]
    return b"".join(line + b"\n" for line in out)


def read_instance(path: str | Path) -> InstanceFile:
    return parse_instance(Path(path).read_bytes())


def parse_graph(text: str) -> DiGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("graph file is empty")
    try:
        n, m = (int(x) for x in lines[0].split())
        arcs = []
        for ln in lines[1:]:
            u, v = (int(x) for x in ln.split())
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"arc {u} {v} outside 1..{n}")
            arcs.append((u - 1, v - 1))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed graph file: {exc}") from None
    if len(arcs) != m:
        raise InputError(f"header announces {m} arcs, found {len(arcs)}")
    return DiGraph.from_arcs(n, arcs)


def serialize_graph(G: DiGraph) -> str:
    return "".join([f"{G.n} {G.m}\n"] + [f"{u + 1} {v + 1}\n" for u, v in G.arcs])


def read_graph(path: str | Path) -> DiGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def generated_to_file(inst: GeneratedInstance) -> InstanceFile:
    headers = [
        f"construction {inst.provenance.get('construction', '')}",
        PARAMS + json.dumps(inst.params, sort_keys=True, separators=(",", ":")),
        PROVENANCE + json.dumps(inst.provenance, sort_keys=True, separators=(",", ":")),
    ]
    return InstanceFile(list(inst.strings.strings), None, headers)


def file_to_generated(f: InstanceFile) -> GeneratedInstance:
    params = prov = None
    for h in f.headers:
        if h.startswith(PARAMS):
            params = json.loads(h[len(PARAMS):])
        elif h.startswith(PROVENANCE):
            prov = json.loads(h[len(PROVENANCE):])
    if params is None or prov is None:
        raise InputError("instance carries no provenance header")
    return GeneratedInstance(f.collection(), params, prov)
