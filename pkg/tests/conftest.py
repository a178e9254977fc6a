"""Shared fixtures: the published two-row dataset and single-rule file,
plus the full bundled iris data."""

from pathlib import Path

import pytest

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

TWO_ROW_DATASET = """@relation iris
@attribute sepalLength real [4.3, 7.9]
@attribute sepalWidth real [2.0, 4.4]
@attribute petalLength real [1.0, 6.9]
@attribute petalWidth real [0.1, 2.5]
@attribute class {Iris-setosa, Iris-versicolor, Iris-virginica}
@inputs sepalLength, sepalWidth, petalLength, petalWidth
@outputs class
@data
5.1, 3.5, 1.4, 0.2, Iris-setosa
4.9, 3.0, 1.4, 0.2, Iris-setosa
"""

SETOSA_RULES = (
    "@algorithm nmeef\n"
    "Number of labels: 3\n"
    "GENERATED RULE 0\n"
    "    Antecedent\n"
    "        Variable petalLength = Label 0 \t (-1.95 1.0 3.95)\n"
    "    Consecuent: Iris-setosa\n"
)

# Contingency of the single setosa rule over the full 150-row iris data,
# frozen from the independent brute-force script in tests/oracle.py.
IRIS_ORACLE = {"tp": 50, "fp": 11, "fn": 0, "tn": 89}

# Descending-edge membership of petalLength 1.4 in (-1.95, 1.0, 3.95).
EDGE_DEGREE = (3.95 - 1.4) / (3.95 - 1.0)


@pytest.fixture
def two_row_dataset_text():
    return TWO_ROW_DATASET


@pytest.fixture
def setosa_rules_text():
    return SETOSA_RULES


@pytest.fixture(scope="session")
def iris_path():
    return DATA_DIR / "iris.dat"


@pytest.fixture(scope="session")
def iris_text(iris_path):
    return iris_path.read_text()


@pytest.fixture(scope="session")
def setosa_rules_path():
    return DATA_DIR / "rules_setosa.txt"


@pytest.fixture(scope="session")
def crisp_rules_path():
    return DATA_DIR / "rules_iris_crisp.txt"


@pytest.fixture(scope="session")
def fuzzy_rules_path():
    return DATA_DIR / "rules_iris_fuzzy.txt"


@pytest.fixture(scope="session")
def iris_setosa_result(iris_path, setosa_rules_path):
    from rulebench import evaluate_session, parse_dataset, parse_rules

    data = parse_dataset(iris_path.read_text())
    rules = parse_rules(setosa_rules_path.read_text())
    return evaluate_session(data, rules)
