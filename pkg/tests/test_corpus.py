import os
import shlex

import pytest

from biortho import read_matrix
from biortho.cli import main

CORPUS = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")


def manifest_entries():
    with open(os.path.join(CORPUS, "MANIFEST")) as handle:
        for line in handle:
            parts = shlex.split(line)
            if parts:
                yield parts[0], parts[1:]


@pytest.mark.parametrize("name,args", list(manifest_entries()))
def test_corpus_file_regenerates_byte_identically(name, args, tmp_path):
    rebuilt = tmp_path / name
    assert main([*args, "--out", str(rebuilt)]) == 0
    recorded = os.path.join(CORPUS, name)
    assert rebuilt.read_bytes() == open(recorded, "rb").read()


def test_manifest_covers_every_corpus_file():
    listed = {name for name, _ in manifest_entries()}
    present = {f for f in os.listdir(CORPUS) if f.endswith(".mtx")}
    assert listed == present


def test_every_corpus_file_parses():
    for name, _ in manifest_entries():
        m = read_matrix(os.path.join(CORPUS, name))
        assert m.shape[0] == m.shape[1]
