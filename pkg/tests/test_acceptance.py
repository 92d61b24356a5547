from __future__ import annotations

from conftest import ACCEPTANCE_LINES
from irregular_tr.acceptance import CRITERIA, CriterionResult


BUDGET_SECONDS = {1: 60, 2: 60, 3: 60, 4: 300, 5: 300, 6: 600, 8: 300}


def check(number: int) -> CriterionResult:
    result = CRITERIA[number]()
    assert result.seconds < BUDGET_SECONDS.get(number, 600)
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    return result


def test_criterion_1_bessel_table():
    assert check(1).ok


def test_criterion_2_tau_function_heads():
    assert check(2).ok


def test_criterion_3_kdv():
    assert check(3).ok


def test_criterion_4_graph_sum():
    assert check(4).ok


def test_criterion_5_deformation():
    assert check(5).ok


def test_criterion_6_decomposition():
    assert check(6).ok


def test_criterion_7_asymptotics():
    assert check(7).ok


def test_criterion_8_chekhov():
    assert check(8).ok


def test_criterion_9_order_by_order():
    assert check(9).ok
