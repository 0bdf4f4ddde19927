"""Plain-text serialization of double complexes and morphism files.

Complex format, one record per line, '#' comments and blank lines ignored:

    dim   <p> <q> <dimension>
    d1    <p> <q> <row> <col> <scalar>
    d2    <p> <q> <row> <col> <scalar>
    sigma <p> <q> <row> <col> <scalar>
    label <p> <q> <index> <name>

Scalars use the a/b+c/d*i syntax of bicomplex.scalars.  dumps_complex emits
records sorted, so equal complexes serialize byte-identically.

Morphism files name their endpoints and list sparse block entries:

    source <reference>
    target <reference>
    block  <p> <q> <row> <col> <scalar>

References are resolved by a caller-supplied function (the command line
resolves preset names, model files and complex files).
"""

from __future__ import annotations

from typing import Callable

from .complexes import DoubleComplex, Morphism
from .linalg import Matrix
from .scalars import format_scalar, parse_scalar


class SerializeError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dumps_complex(a: DoubleComplex) -> str:
    lines = []
    for (p, q), n in sorted(a.dims.items()):
        lines.append(f"dim {p} {q} {n}")
    for tag, blocks in (("d1", a.d1), ("d2", a.d2), ("sigma", a.sigma or {})):
        for (p, q), m in sorted(blocks.items()):
            for (i, j), v in sorted(m.entries.items()):
                lines.append(f"{tag} {p} {q} {i} {j} {format_scalar(v)}")
    if a.labels:
        for (p, q), names in sorted(a.labels.items()):
            for i, name in enumerate(names):
                lines.append(f"label {p} {q} {i} {name}")
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SerializeError(lineno, f"{what} must be an integer, got {token!r}")


def _iter_records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        cut = raw.find("#")
        line = (raw if cut < 0 else raw[:cut]).strip()
        if line:
            yield lineno, line.split()


def loads_complex(text: str) -> DoubleComplex:
    dims: dict = {}
    cells: dict[str, dict] = {"d1": {}, "d2": {}, "sigma": {}}
    labels: dict = {}
    saw_sigma = False
    saw_label = False
    for lineno, parts in _iter_records(text):
        tag = parts[0]
        if tag == "dim":
            if len(parts) != 4:
                raise SerializeError(lineno, "dim takes p q dimension")
            p, q, n = (_parse_int(t, lineno, "dim field") for t in parts[1:])
            dims[(p, q)] = n
        elif tag in ("d1", "d2", "sigma"):
            if len(parts) != 6:
                raise SerializeError(lineno, f"{tag} takes p q row col scalar")
            p, q, i, j = (_parse_int(t, lineno, f"{tag} field") for t in parts[1:5])
            try:
                v = parse_scalar(parts[5])
            except ValueError as e:
                raise SerializeError(lineno, str(e))
            cells[tag].setdefault((p, q), {})[(i, j)] = v
            saw_sigma = saw_sigma or tag == "sigma"
        elif tag == "label":
            if len(parts) < 5:
                raise SerializeError(lineno, "label takes p q index name")
            p, q, i = (_parse_int(t, lineno, "label field") for t in parts[1:4])
            labels.setdefault((p, q), {})[i] = " ".join(parts[4:])
            saw_label = True
        else:
            raise SerializeError(lineno, f"unknown record {tag!r}")

    def shape(tag, pq):
        p, q = pq
        if tag == "d1":
            return dims.get((p + 1, q), 0), dims.get((p, q), 0)
        if tag == "d2":
            return dims.get((p, q + 1), 0), dims.get((p, q), 0)
        return dims.get((q, p), 0), dims.get((p, q), 0)

    def matrices(tag):
        out = {}
        for pq, entries in cells[tag].items():
            rows, cols = shape(tag, pq)
            try:
                out[pq] = Matrix(rows, cols, entries)
            except ValueError as e:
                raise SerializeError(0, f"{tag} block at {pq}: {e}")
        return out

    label_tuples = None
    if saw_label:
        label_tuples = {}
        for pq, by_index in labels.items():
            n = dims.get(pq, 0)
            if set(by_index) != set(range(n)):
                raise SerializeError(0, f"labels at {pq} do not cover indices 0..{n - 1}")
            label_tuples[pq] = tuple(by_index[i] for i in range(n))
    return DoubleComplex(
        dims,
        matrices("d1"),
        matrices("d2"),
        matrices("sigma") if saw_sigma else None,
        label_tuples,
    )


def parse_morphism_file(text: str, resolve: Callable[[str], DoubleComplex]) -> Morphism:
    source = None
    target = None
    blocks: dict = {}
    for lineno, parts in _iter_records(text):
        tag = parts[0]
        if tag == "source" or tag == "target":
            if len(parts) < 2:
                raise SerializeError(lineno, f"{tag} takes a model reference")
            ref = " ".join(parts[1:])
            if tag == "source":
                source = resolve(ref)
            else:
                target = resolve(ref)
        elif tag == "block":
            if len(parts) != 6:
                raise SerializeError(lineno, "block takes p q row col scalar")
            p, q, i, j = (_parse_int(t, lineno, "block field") for t in parts[1:5])
            try:
                v = parse_scalar(parts[5])
            except ValueError as e:
                raise SerializeError(lineno, str(e))
            blocks.setdefault((p, q), {})[(i, j)] = v
        else:
            raise SerializeError(lineno, f"unknown record {tag!r}")
    if source is None or target is None:
        raise SerializeError(0, "morphism file needs source and target lines")
    matrices = {}
    for pq, entries in blocks.items():
        matrices[pq] = Matrix(target.dim(*pq), source.dim(*pq), entries)
    return Morphism(source, target, matrices)
