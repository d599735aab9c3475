"""Regenerate the bundled toy corpus (data/toy_corpus.jsonl).

One hundred short synthetic documents across ten topics.  Documents within
a topic share most of their vocabulary, so the similarity graph gets real
edges at moderate thresholds; the token "survey" appears corpus-wide with
varying frequency and makes a good query for threshold sweeps.  The file
is deterministic: rerunning this script reproduces it byte for byte.
"""

import json
import random
from pathlib import Path

TOPICS = {
    "solar": ["panel", "energy", "grid", "inverter", "noon", "flare"],
    "tides": ["moon", "coast", "harbor", "ebb", "swell", "current"],
    "glacier": ["ice", "moraine", "crevasse", "melt", "fjord", "serac"],
    "volcano": ["lava", "ash", "crater", "magma", "vent", "pumice"],
    "aurora": ["ionosphere", "solar_wind", "oval", "borealis", "storm", "arc"],
    "monsoon": ["rain", "season", "wind", "flood", "paddy", "humid"],
    "coral": ["reef", "polyp", "bleach", "lagoon", "atoll", "spawn"],
    "tundra": ["permafrost", "lichen", "caribou", "thaw", "bog", "willow"],
    "savanna": ["grass", "acacia", "herd", "drought", "fire", "termite"],
    "geyser": ["steam", "basin", "eruption", "silica", "vent", "plume"],
}
FILLERS = [
    "report", "region", "annual", "measure", "station", "record",
    "sample", "method", "study", "result",
]
STOPWORDS = ["the", "a", "of", "and", "in", "to", "is", "on"]


def build_docs() -> list[dict]:
    rng = random.Random(7)
    names = list(TOPICS)
    docs = []
    for i in range(100):
        topic = names[i % len(names)]
        words = [topic] * rng.randint(1, 4)
        for w in rng.sample(TOPICS[topic], 4):
            words += [w] * rng.randint(1, 2)
        words += ["survey"] * rng.randint(0, 3)
        words += rng.sample(FILLERS, 3)
        words.append(f"tag{i:03d}")
        words += rng.sample(STOPWORDS, 4)
        rng.shuffle(words)
        docs.append({"id": f"doc{i:03d}", "text": " ".join(words)})
    return docs


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "data" / "toy_corpus.jsonl"
    out.parent.mkdir(exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        for doc in build_docs():
            fh.write(json.dumps(doc))
            fh.write("\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
