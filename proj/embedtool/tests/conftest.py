import hashlib
import os
import struct
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

REPO = Path(__file__).resolve().parents[2]


def hashed_vector(key, dim):
    """Deterministic pseudo-embedding; stands in for a real model."""
    out = []
    block = 0
    while len(out) < dim:
        digest = hashlib.sha256(f"{key}:{block}".encode()).digest()
        out.extend(v / 2**31 for v in struct.unpack("<8i", digest))
        block += 1
    return out[:dim]


@pytest.fixture
def sample_corpus():
    return REPO / "data" / "sample_corpus.jsonl"


@pytest.fixture
def text_encoder():
    calls = []

    def encode(texts):
        calls.append(len(texts))
        return [hashed_vector(t, 384) for t in texts]

    encode.calls = calls
    return encode


@pytest.fixture
def image_encoder():
    def encode(paths):
        vectors = []
        for p in paths:
            data = Path(p).read_bytes()
            if not data.startswith(b"IMG"):
                raise OSError(f"cannot decode {p}")
            vectors.append([abs(x) for x in hashed_vector(data, 2048)])
        return vectors

    return encode


@pytest.fixture
def artrec_cli():
    path = os.environ.get("ARTREC_CLI")
    if not path or not Path(path).exists():
        pytest.skip("ARTREC_CLI not set; build the C++ tree to run contract tests")
    return path
