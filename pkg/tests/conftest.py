from __future__ import annotations

from rucodes.codes import ideal_code, linear_code
from rucodes.field import field_make
from rucodes.quotient import QuotientParams, all_polys

# (criterion, verdict, detail) tuples appended by test_acceptance.py
ACCEPTANCE: list[tuple[str, str, str]] = []


def make_params(p, m=1, s=1, alpha=1) -> QuotientParams:
    return QuotientParams.make(field_make(p, m), s, alpha)


def all_ideals(params):
    """Every ideal, as the closure of the principal ideals under sums."""
    principal = {}
    for f in all_polys(params):
        c = ideal_code(params, [f])
        principal[c.key] = c
    ideals = dict(principal)
    frontier = list(principal.values())
    while frontier:
        new = []
        for a in frontier:
            for b in principal.values():
                c = linear_code(params, list(a.basis) + list(b.basis))
                if c.key not in ideals:
                    ideals[c.key] = c
                    new.append(c)
        frontier = new
    return ideals


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name}: {detail}")
