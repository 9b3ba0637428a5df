#!/usr/bin/env python3
"""Regenerate the in-repo sample corpus and fixture embeddings.

Everything is synthetic and seeded, so rerunning reproduces the files
byte for byte. The paintings are invented; no gallery data is used.

    python3 tools/make_fixtures.py [--out data]
"""

import argparse
import json
import math
import random
from pathlib import Path

SEED = 20240601

# story group -> (theme words used in descriptions, title stems)
GROUPS = {
    "devotion": (
        ["saint", "prayer", "altar", "chapel", "halo", "martyr", "relic", "monk"],
        ["Saint Jerome in Prayer", "Altarpiece of the Martyrs", "Monk at the Chapel Door"],
    ),
    "nativity": (
        ["virgin", "child", "manger", "shepherd", "angel", "star", "stable", "infant"],
        ["The Adoration of the Shepherds", "Virgin and Child in a Stable", "Angels above the Manger"],
    ),
    "mythology": (
        ["venus", "nymph", "satyr", "goddess", "olympus", "hero", "centaur", "myth"],
        ["Venus and the Nymphs", "The Centaur's Lament", "A Hero on Olympus"],
    ),
    "portraiture": (
        ["portrait", "merchant", "lady", "collar", "velvet", "gaze", "sitter", "ring"],
        ["Portrait of a Merchant", "Lady in a Velvet Collar", "Young Man with a Ring"],
    ),
    "landscape": (
        ["river", "valley", "hills", "trees", "meadow", "clouds", "village", "path"],
        ["River Valley at Dusk", "Meadow with Distant Hills", "Village Path under Clouds"],
    ),
    "seascape": (
        ["ship", "harbour", "waves", "storm", "sail", "coast", "fishermen", "tide"],
        ["Ships in a Storm", "Harbour at Low Tide", "Fishermen on the Coast"],
    ),
    "still_life": (
        ["fruit", "flowers", "vase", "table", "lemon", "glass", "pewter", "tulips"],
        ["Still Life with Lemons", "Tulips in a Glass Vase", "Fruit on a Pewter Dish"],
    ),
    "battle": (
        ["battle", "soldiers", "cavalry", "banner", "sword", "siege", "armour", "horse"],
        ["The Siege of the Citadel", "Cavalry Charge with Banners", "Soldiers in Armour"],
    ),
    "interiors": (
        ["room", "window", "maid", "letter", "light", "floor", "kitchen", "music"],
        ["Maid Reading a Letter", "Kitchen Interior with Light", "Music Lesson by a Window"],
    ),
}

UNCATEGORIZED = [
    ("Study of Drapery", ["drapery", "fabric", "folds", "light"]),
    ("Sketch of a Horse", ["horse", "sketch", "chalk", "study"]),
    ("Head of an Old Man", ["portrait", "beard", "study", "chalk"]),
]

ARTISTS = [
    "Anna Verhulst", "Pieter Morel", "Giulia Castellan", "Jan de Vries",
    "Maria Lindqvist", "Tomas Ferrer", "Claire Dubois", "Hendrik Aalst",
]
TECHNIQUES = ["Oil on canvas", "Oil on oak", "Tempera on panel", "Oil on copper"]
FILLER = [
    "The painter shows", "In this composition", "Here the artist places",
    "The scene presents", "A quiet arrangement of",
]


def description(rng, words):
    picks = [rng.choice(words) for _ in range(7)]
    return (
        f"{rng.choice(FILLER)} {picks[0]} and {picks[1]} near the {picks[2]}. "
        f"The {picks[3]} and {picks[4]} catch the light, while {picks[5]} "
        f"and {picks[6]} fill the background."
    )


def make_corpus(rng):
    paintings = []
    n = 0
    for group, (words, titles) in GROUPS.items():
        for title in titles:
            n += 1
            paintings.append({
                "id": f"P{n:03d}",
                "title": title,
                "artist": rng.choice(ARTISTS),
                "date": str(rng.randint(1420, 1890)),
                "technique": rng.choice(TECHNIQUES),
                "description": description(rng, words),
                "story_group": group,
                "image_ref": f"images/P{n:03d}.jpg",
            })
    for title, words in UNCATEGORIZED:
        n += 1
        paintings.append({
            "id": f"P{n:03d}",
            "title": title,
            "artist": rng.choice(ARTISTS),
            "date": str(rng.randint(1420, 1890)),
            "technique": "Chalk on paper",
            "description": description(rng, words),
            "story_group": "",
            "image_ref": f"images/P{n:03d}.jpg",
        })
    return paintings


def unit(rng, dim):
    v = [rng.gauss(0.0, 1.0) for _ in range(dim)]
    norm = math.sqrt(sum(x * x for x in v))
    return [x / norm for x in v]


def clustered_vectors(rng, paintings, dim, spread, positive=False):
    """Group centroid plus noise; uncategorized paintings get their own
    directions. ReLU-like features are kept non-negative."""
    centroids = {g: unit(rng, dim) for g in GROUPS}
    rows = []
    for p in paintings:
        base = centroids.get(p["story_group"]) or unit(rng, dim)
        v = [b + spread * rng.gauss(0.0, 1.0) / math.sqrt(dim) for b in base]
        if positive:
            v = [abs(x) for x in v]
        rows.append((p["id"], v))
    return rows


def lda_like(rng, paintings, k):
    group_topic = {g: i % k for i, g in enumerate(GROUPS)}
    rows = []
    for p in paintings:
        w = [rng.gammavariate(0.3, 1.0) + 1e-3 for _ in range(k)]
        t = group_topic.get(p["story_group"])
        if t is not None:
            w[t] += 3.0
        s = sum(w)
        rows.append((p["id"], [x / s for x in w]))
    return rows


def write_tsv(path, engine, rows, extra=""):
    dim = len(rows[0][1])
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"#engine={engine} dim={dim}{extra}\n")
        for pid, v in rows:
            f.write(pid + "\t" + ",".join(f"{x:.6g}" for x in v) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data", type=Path)
    args = ap.parse_args()
    rng = random.Random(SEED)

    paintings = make_corpus(rng)
    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "sample_corpus.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for p in paintings:
            f.write(json.dumps(p, ensure_ascii=False, separators=(",", ":")) + "\n")

    fixtures = args.out / "fixtures"
    fixtures.mkdir(exist_ok=True)
    write_tsv(fixtures / "bert.tsv", "bert", clustered_vectors(rng, paintings, 384, 0.8),
              " source=synthetic")
    write_tsv(fixtures / "resnet.tsv", "resnet",
              clustered_vectors(rng, paintings, 2048, 1.2, positive=True),
              " source=synthetic pooling=global_average")
    write_tsv(fixtures / "lda.tsv", "lda", lda_like(rng, paintings, 10), " source=synthetic")

    with open(fixtures / "ratings.txt", "w", encoding="utf-8", newline="\n") as f:
        f.write("# painting_id rating\n")
        for pid, r in [("P001", 5), ("P004", 2), ("P007", 4), ("P010", 1), ("P013", 3),
                       ("P016", 5), ("P019", 2), ("P022", 4), ("P025", 3)]:
            f.write(f"{pid} {r}\n")


if __name__ == "__main__":
    main()
