#!/usr/bin/env python3
# Copyright 2026 The FactFilter Authors.
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

"""Writes the bundled 50-pair toy corpus and two sets of generated summaries.

Output is checked in; rerun only to regenerate data/toy/.
"""

import json
import pathlib
import random

SUBJECTS = ["council", "engineers", "villagers", "scientists", "committee", "farmers",
            "students", "officials", "volunteers", "researchers", "surgeons", "sailors"]
VERBS = ["approved", "rejected", "announced", "repaired", "discovered", "measured",
         "celebrated", "questioned", "delivered", "restored", "examined", "launched"]
OBJECTS = ["bridge", "harvest", "festival", "telescope", "hospital", "railway",
           "library", "reservoir", "satellite", "orchard", "lighthouse", "vaccine"]
PLACES = ["northern", "coastal", "mountain", "riverside", "eastern", "central",
          "southern", "western", "island", "valley"]
TIMES = ["yesterday", "tuesday", "overnight", "recently", "finally", "quickly"]
FOREIGN = ["dragons", "volcano", "spaceship", "pirates", "glacier", "carnival",
           "submarine", "wizards", "tornado", "monastery"]

N_PAIRS = 50
SPLITS = ["train"] * 30 + ["validation"] * 10 + ["test"] * 10


def sentence(rng):
    return "the {} {} the {} {} near the {} town".format(
        rng.choice(SUBJECTS), rng.choice(VERBS), rng.choice(PLACES), rng.choice(OBJECTS),
        rng.choice(PLACES)) + " " + rng.choice(TIMES) + "."


def summary_for(rng, sentences, kind):
    words = sentences[0].rstrip(".").split()
    if kind == "copy":
        return sentences[0]
    if kind == "extract":
        start = rng.randrange(0, max(1, len(words) - 5))
        return " ".join(words[start:start + 6]) + "."
    if kind == "hallucinate":
        words = words[:]
        for _ in range(rng.randint(1, 4)):
            words[rng.randrange(len(words))] = rng.choice(FOREIGN)
        return " ".join(words) + "."
    if kind == "mixed":
        other = sentences[-1].rstrip(".").split()
        return " ".join(words[:4] + other[-3:] + [rng.choice(FOREIGN)]) + "."
    raise ValueError(kind)


def main():
    rng = random.Random(20260417)
    root = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"
    root.mkdir(parents=True, exist_ok=True)
    kinds = ["copy", "extract", "hallucinate", "mixed"]
    pairs = []
    for i in range(N_PAIRS):
        sentences = [sentence(rng) for _ in range(rng.randint(3, 6))]
        document = " ".join(sentences)
        summary = summary_for(rng, sentences, kinds[i % len(kinds)])
        if i == 7:
            summary = "council."  # one token: no dependency arcs
        pairs.append({"id": "toy-{:02d}".format(i), "document": document, "summary": summary,
                      "split": SPLITS[i], "meta": {"source": "generated"}})
    with open(root / "toy.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for p in pairs:
            f.write(json.dumps(p, sort_keys=True) + "\n")

    # Two systems over the test split: one extracts the reference's bigrams
    # from the document, the other paraphrases with invented content.
    test = [p for p in pairs if p["split"] == "test"]
    for name, foreign_rate in (("gen_full", 0.35), ("gen_filtered", 0.1)):
        system_rng = random.Random(name)
        with open(root / (name + ".jsonl"), "w", encoding="utf-8", newline="\n") as f:
            for p in test:
                words = p["summary"].rstrip(".").split()
                doc_words = p["document"].replace(".", "").split()
                out = []
                for w in words:
                    r = system_rng.random()
                    if r < foreign_rate:
                        out.append(system_rng.choice(FOREIGN))
                    elif r < foreign_rate + 0.15:
                        out.append(system_rng.choice(doc_words))
                    else:
                        out.append(w)
                f.write(json.dumps({"id": p["id"], "summary": " ".join(out) + "."},
                                   sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
