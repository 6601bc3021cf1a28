from fractions import Fraction

import pytest

from spincouple import CONTEXTS, PairDistribution, Scenario, scenario_from_correlations


def uniform_cells(e: Fraction) -> PairDistribution:
    hi = (1 + e) / 4
    lo = (1 - e) / 4
    return PairDistribution(hi, lo, lo, hi)


@pytest.fixture
def fair_scenario() -> Scenario:
    return scenario_from_correlations([Fraction(0)] * 4)


@pytest.fixture
def pr_box_scenario() -> Scenario:
    return scenario_from_correlations(
        [Fraction(1), Fraction(1), Fraction(1), Fraction(-1)]
    )


@pytest.fixture
def mixed_scenario() -> Scenario:
    # inside the classical polytope but with all four correlations distinct
    return scenario_from_correlations(
        [Fraction(3, 10), Fraction(-1, 5), Fraction(1, 4), Fraction(7, 100)]
    )


def scenario_doc(s: Scenario) -> dict:
    keys = ("11", "12", "21", "22")
    cells = ("pp", "pm", "mp", "mm")
    return {
        "pairs": {
            key: {cell: str(v) for cell, v in zip(cells, s.pairs[ctx].cells())}
            for key, ctx in zip(keys, CONTEXTS)
        }
    }
