import sys

import sympy


V = sympy.Symbol("v")
T = sympy.Symbol("t")


def to_sympy(x):
    """Independent reading of a scalar through its printed form."""
    return sympy.sympify(str(x).replace("^", "**"), locals={"v": V})


def sym_equal(x, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[k])
