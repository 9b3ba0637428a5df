import math
import os
import tempfile
from pathlib import Path


def format_value(x):
    """Shortest round-trip decimal, spelled like the C++ writer (no '.0')."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite embedding value {x!r}")
    r = repr(x)
    return r[:-2] if r.endswith(".0") else r


def write_tsv(path, engine, ids, vectors, attributes=None):
    """Writes `#engine=<id> dim=<d> [k=v...]` then `id<TAB>v1,v2,...` rows.

    The file appears atomically: nothing is left at `path` on failure.
    """
    rows = [list(v) for v in vectors]
    if len(rows) != len(ids):
        raise ValueError(f"{len(ids)} ids but {len(rows)} vectors")
    if not rows:
        raise ValueError("no vectors to write")
    dim = len(rows[0])
    header = [f"#engine={engine}", f"dim={dim}"]
    for k, v in (attributes or {}).items():
        if any(c.isspace() for c in f"{k}{v}") or "=" in k:
            raise ValueError(f"bad header attribute {k}={v}")
        header.append(f"{k}={v}")
    lines = [" ".join(header)]
    for pid, row in zip(ids, rows):
        if len(row) != dim:
            raise ValueError(f"vector for '{pid}' has width {len(row)}, expected {dim}")
        lines.append(pid + "\t" + ",".join(format_value(x) for x in row))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def read_tsv(path):
    """Returns (header dict, ids, vectors)."""
    with Path(path).open(encoding="utf-8") as f:
        first = f.readline().rstrip("\n")
        if not first.startswith("#"):
            raise ValueError(f"{path}: missing header line")
        header = dict(tok.split("=", 1) for tok in first[1:].split())
        ids, vectors = [], []
        for line in f:
            if not line.strip():
                continue
            pid, values = line.rstrip("\n").split("\t")
            ids.append(pid)
            vectors.append([float(v) for v in values.split(",")])
    return header, ids, vectors
