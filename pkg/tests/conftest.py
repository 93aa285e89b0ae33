import math

import numpy as np
import pytest

from gvsm import vsm

# three-document sample corpus, token order as written
SAMPLE_LINES = [
    "term5 term1 term1 term5",
    "term2 term3 term3 term6 term4",
    "term2 term1 term2",
]
SAMPLE_QUERY = "term1 term2"
TERMS = tuple(f"term{i}" for i in range(1, 7))

# worked tf-idf values, rows term1..term6
WORKED_TF = {
    "Q": [1, 1, 0, 0, 0, 0],
    1: [2, 0, 0, 0, 2, 0],
    2: [0, 1, 2, 1, 0, 1],
    3: [1, 2, 0, 0, 0, 0],
}
WORKED_DF = [2, 2, 1, 1, 1, 1]
WORKED_IDF = [0.176, 0.176, 0.477, 0.477, 0.477, 0.477]
WORKED_W = {
    "Q": [0.176, 0.176, 0, 0, 0, 0],
    1: [0.352, 0, 0, 0, 0.954, 0],
    2: [0, 0.176, 0.954, 0.477, 0, 0.477],
    3: [0.176, 0.352, 0, 0, 0, 0],
}

# term-by-document matrix D and its images under H' and S
D_SAMPLE = np.array([
    [0.352, 0, 0.176],
    [0, 0.176, 0.352],
    [0, 0.954, 0],
    [0, 0.477, 0],
    [0.954, 0, 0],
    [0, 0.477, 0],
])
H_SWAP = np.array([
    [0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
], dtype=float)
H_U = np.array([-math.sqrt(2) / 2, math.sqrt(2) / 2, 0, 0, 0, 0])
D_SWAPPED = np.array([
    [0, 0.176, 0.352],
    [0.352, 0, 0.176],
    [0, 0.954, 0],
    [0, 0.477, 0],
    [0.954, 0, 0],
    [0, 0.477, 0],
])
S_SCALE = np.diag([2.0, 3, 2, 1, 1, 1])
D_SCALED = np.array([
    [0.704, 0, 0.352],
    [0, 0.528, 1.056],
    [0, 1.908, 0],
    [0, 0.477, 0],
    [0.954, 0, 0],
    [0, 0.477, 0],
])
T_B = np.array([
    [3.0, 1, 0, 0],
    [1, 3, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
])
_r = 1 / math.sqrt(2)
P_EIGEN = np.array([
    [_r, -_r, 0, 0],
    [_r, _r, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
])
SAMPLE_COSTS = {"term1": 3, "term2": 4, "term3": 5, "term4": 6, "term5": 6, "term6": 7}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sample_corpus():
    # term order term1..term6
    return vsm.ingest(SAMPLE_LINES, order="sorted")


@pytest.fixture
def sample_tfidf(sample_corpus):
    return vsm.tfidf_weights(sample_corpus)


@pytest.fixture
def sample_freq(sample_corpus):
    return vsm.frequency_weights(sample_corpus)


@pytest.fixture
def sample_file(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text("\n".join(SAMPLE_LINES) + "\n", encoding="utf-8")
    return p


# acceptance results, printed as one block at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
