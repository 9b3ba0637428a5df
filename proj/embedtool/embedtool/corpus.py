import json
from dataclasses import dataclass
from pathlib import Path

FIELDS = ("id", "title", "artist", "date", "technique", "description", "story_group", "image_ref")


@dataclass(frozen=True)
class Painting:
    id: str
    title: str = ""
    artist: str = ""
    date: str = ""
    technique: str = ""
    description: str = ""
    story_group: str = ""
    image_ref: str = ""


def load_corpus(path):
    """Reads the JSONL corpus; one painting object per non-blank line."""
    paintings = []
    with Path(path).open(encoding="utf-8") as f:
        for n, line in enumerate(f, 1):
            if not line.strip():
                continue
            obj = json.loads(line)
            if not obj.get("id"):
                raise ValueError(f"{path}:{n}: painting without id")
            paintings.append(Painting(**{k: str(obj.get(k, "")) for k in FIELDS}))
    return paintings


def painting_text(p):
    """Metadata fields in the same order the topic model reads them."""
    parts = (p.title, p.artist, p.date, p.technique, p.description)
    return " ".join(s.strip() for s in parts if s.strip())
