"""Regenerate the bundled analysis fixture.

Builds a ~1 MB English corpus from the docstrings of the Python standard
library, then trains 50-dimensional PPMI+SVD word vectors on it and writes
them in GloVe text format.  The outputs are committed, so this only needs
to be rerun when the fixture itself should change.

    python3 scripts/make_fixture.py crates/core/tests/fixtures
"""

import ast
import pathlib
import re
import sys
import sysconfig
from collections import Counter

import numpy as np

TARGET_BYTES = 1_000_000
VOCAB_SIZE = 3000
MIN_COUNT = 5
WINDOW = 5
DIM = 50
SKIP_DIRS = {"test", "tests", "idlelib", "lib2to3", "site-packages", "dist-packages", "turtledemo"}
CODEISH = re.compile(r"(>>>|\.\.\.|[{}\[\]=<>|\\`@#$]|::|\(\)|_\w)")
SENT_SPLIT = re.compile(r"[.!?\n]")
PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~"


def docstrings(path):
    try:
        tree = ast.parse(path.read_text(encoding="utf-8"))
    except (SyntaxError, UnicodeDecodeError, ValueError):
        return
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)):
            doc = ast.get_docstring(node)
            if doc:
                yield doc


def prose_lines(doc):
    for line in doc.splitlines():
        line = line.strip()
        if len(line) < 20 or CODEISH.search(line):
            continue
        letters = sum(c.isalpha() or c.isspace() for c in line)
        if letters / len(line) < 0.9:
            continue
        yield line


def build_corpus():
    stdlib = pathlib.Path(sysconfig.get_paths()["stdlib"])
    files = sorted(
        p for p in stdlib.rglob("*.py")
        if not SKIP_DIRS.intersection(p.relative_to(stdlib).parts)
    )
    out, size = [], 0
    for path in files:
        for doc in docstrings(path):
            para = " ".join(prose_lines(doc))
            if not para:
                continue
            out.append(para)
            size += len(para) + 1
            if size >= TARGET_BYTES:
                return "\n".join(out) + "\n"
    return "\n".join(out) + "\n"


def sentences(text):
    for raw in SENT_SPLIT.split(text):
        toks = [t.strip(PUNCT).lower() for t in raw.split()]
        toks = [t for t in toks if t]
        if toks:
            yield toks


def train(text):
    sents = list(sentences(text))
    counts = Counter(t for s in sents for t in s)
    vocab = [w for w, c in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])) if c >= MIN_COUNT]
    vocab = vocab[:VOCAB_SIZE]
    index = {w: i for i, w in enumerate(vocab)}
    n = len(vocab)
    co = np.zeros((n, n))
    for s in sents:
        ids = [index.get(t, -1) for t in s]
        for a, ia in enumerate(ids):
            if ia < 0:
                continue
            for b in range(max(0, a - WINDOW), min(len(ids), a + WINDOW + 1)):
                ib = ids[b]
                if b != a and ib >= 0:
                    co[ia, ib] += 1.0 / abs(a - b)
    total = co.sum()
    row = co.sum(axis=1, keepdims=True)
    ctx = co.sum(axis=0, keepdims=True) ** 0.75
    ctx /= ctx.sum()
    with np.errstate(divide="ignore", invalid="ignore"):
        pmi = np.log((co / total) / ((row / total) * ctx))
    ppmi = np.nan_to_num(np.maximum(pmi, 0.0), nan=0.0, posinf=0.0, neginf=0.0)
    u, s, _ = np.linalg.svd(ppmi, full_matrices=False)
    vecs = u[:, :DIM] * np.sqrt(s[:DIM])
    # fix SVD sign ambiguity so reruns are byte-stable
    signs = np.sign(vecs[np.abs(vecs).argmax(axis=0), range(DIM)])
    return vocab, vecs * signs


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/fixtures")
    out.mkdir(parents=True, exist_ok=True)
    text = build_corpus()
    (out / "corpus.txt").write_text(text, encoding="utf-8")
    vocab, vecs = train(text)
    with open(out / "vectors50.txt", "w", encoding="utf-8") as f:
        for w, v in zip(vocab, vecs):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
    print(f"corpus {len(text)} bytes, vocab {len(vocab)} x {DIM}")


if __name__ == "__main__":
    main()
