#!/usr/bin/env python3
# Copyright 2026 The embedtopics Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled toy corpus and embeddings.

Four themes, each with frequent content words and a handful of rare words
whose vectors sit right next to the theme center, so proximity ranking
prefers the rare words and frequency reranking recovers the common ones.

Usage: make_toy.py [output_dir]
"""

import os
import random
import sys

THEMES = {
    "space": "orbit rocket launch planet moon shuttle nasa satellite astronaut telescope "
             "mission galaxy solar lunar spacecraft".split(),
    "sport": "game team player season hockey baseball score league coach pitcher "
             "goal playoff fans stadium inning".split(),
    "faith": "god jesus bible church christian faith religion belief scripture prayer "
             "heaven sin gospel atheist doctrine".split(),
    "computer": "windows driver disk software file program memory graphics monitor card "
                "keyboard printer modem server format".split(),
}
RARE = {
    "space": "apogee perigee ionosphere nebula quasar".split(),
    "sport": "shortstop bullpen faceoff slapshot dugout".split(),
    "faith": "apostle epistle liturgy psalm sacrament".split(),
    "computer": "bios firmware chipset kernel bitmap".split(),
}
DIM = 16


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    rng = random.Random(20260101)
    names = sorted(THEMES)

    docs, themes_of_doc = [], []
    for d in range(240):
        theme = names[d % len(names)]
        words = THEMES[theme]
        length = rng.randint(12, 30)
        tokens = []
        for _ in range(length):
            r = rng.random()
            if r < 0.08:
                tokens.append(rng.choice(RARE[theme]))
            elif r < 0.18:
                tokens.append(rng.choice(THEMES[rng.choice(names)]))
            else:
                # Zipf-like preference for the first words of the theme.
                idx = min(int(rng.paretovariate(1.2)) - 1, len(words) - 1)
                tokens.append(words[idx])
        # Stopwords, digits and punctuation exercise the tokenizer.
        filler = rng.choice(["the", "and", "of", "with", "1993", "re:", "--", "it's"])
        tokens.insert(rng.randrange(len(tokens) + 1), filler)
        docs.append(" ".join(tokens))
        themes_of_doc.append(theme)

    test = [i + 1 for i in range(len(docs)) if i % 5 in (1, 3)]
    with open(os.path.join(out, "corpus.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(docs) + "\n")
    with open(os.path.join(out, "split.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(str(i) for i in test) + "\n")

    centers = {t: [rng.gauss(0.0, 3.0) for _ in range(DIM)] for t in names}
    rows = []
    for t in names:
        for w in THEMES[t]:
            rows.append((w, [c + rng.gauss(0.0, 1.0) for c in centers[t]]))
        for w in RARE[t]:
            rows.append((w, [c + rng.gauss(0.0, 0.2) for c in centers[t]]))
    # Words outside the corpus, a cased duplicate and a multi-word key.
    rows.append(("Orbit", [rng.gauss(0.0, 3.0) for _ in range(DIM)]))
    rows.append(("zeppelin", [rng.gauss(0.0, 3.0) for _ in range(DIM)]))
    rows.sort(key=lambda r: r[0])
    # One corpus word ("modem") is left out to exercise coverage < 1.
    rows = [r for r in rows if r[0] != "modem"]
    with open(os.path.join(out, "glove.txt"), "w", encoding="utf-8") as f:
        for w, v in rows:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
        f.write("new york " + " ".join("0.5" for _ in range(DIM)) + "\n")
    with open(os.path.join(out, "toy.conf"), "w", encoding="utf-8") as f:
        f.write("# Bundled toy run: lines corpus, 16-d glove_text embeddings.\n")
        f.write("corpus = corpus.txt\ncorpus-format = lines\nsplit = split.txt\n")
        f.write("embeddings = glove.txt\nembedding-format = glove_text\n")
        f.write("k = 4\ntop-j = 5\nwindow = 20\n")


if __name__ == "__main__":
    main()
