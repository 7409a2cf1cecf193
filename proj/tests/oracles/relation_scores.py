#!/usr/bin/env python3
"""Independent reference for relation matching on the fixture.

Recomputes cosine(mean(question words), mean(relation words)) with plain
Python floats, maxed over the question text and its paraphrases, and prints
the scores and the surviving relation set per question at a threshold.
Used to derive the frozen expectations in semantic_matching_test.cc.
"""
import json
import math
import re
import sys
from pathlib import Path

FIXTURE = Path(__file__).resolve().parents[2] / "data" / "fixture"


def load_embeddings(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    _, dim = map(int, lines[0].split())
    table = {}
    for line in lines[1:]:
        parts = line.split()
        table[parts[0]] = [float(x) for x in parts[1:]]
        assert len(table[parts[0]]) == dim
    return table, dim


def question_words(text):
    out, cur = [], []
    for ch in text:
        if ord(ch) >= 0x80 or ch.isalnum():
            cur.append(ch.lower() if ord(ch) < 0x80 else ch)
        elif cur:
            out.append("".join(cur))
            cur = []
    if cur:
        out.append("".join(cur))
    return out


def relation_words(rel):
    rel = re.sub(r"([a-z0-9])([A-Z])", r"\1_\2", rel)
    return [w.lower() for w in re.split(r"[_\-]+", rel) if w]


def mean(table, dim, words):
    vecs = [table[w] for w in words if w in table]
    if not vecs:
        return [0.0] * dim
    return [sum(v[i] for v in vecs) / len(vecs) for i in range(dim)]


def cosine(a, b):
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(x * x for x in b))
    if na == 0 or nb == 0:
        return 0.0
    return max(-1.0, min(1.0, sum(x * y for x, y in zip(a, b)) / (na * nb)))


def score(table, dim, texts, rel):
    r = mean(table, dim, relation_words(rel))
    return max(cosine(mean(table, dim, question_words(t)), r) for t in texts)


def main():
    tau = float(sys.argv[1]) if len(sys.argv) > 1 else 0.3
    table, dim = load_embeddings(FIXTURE / "embeddings.txt")
    rels = set()
    for line in (FIXTURE / "kg.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        s, r, o = line.split("\t")
        if r not in ("type", "label"):
            rels.add(r)
    rels = sorted(rels)
    for name in ("questions.json", "extra_questions.json"):
        for q in json.loads((FIXTURE / name).read_text(encoding="utf-8")):
            texts = [q["text"]] + q["paraphrases"]
            scores = {r: score(table, dim, texts, r) for r in rels}
            keep = [r for r in rels if scores[r] >= tau]
            print(q["id"])
            for r in rels:
                print(f"  {r:18s} {scores[r]:.17g}")
            print("  keep:", keep)


if __name__ == "__main__":
    main()
