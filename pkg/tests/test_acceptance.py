"""Acceptance criteria 1-13, one test each.

Every test runs a verification suite at its full default parameters and
records a single PASS/FAIL line.  The lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import pytest

from utcount.verify import run_suite

CRITERIA = [
    (1, "table1", "set partition taxonomy counts, n <= 12", {"max_n": 12}),
    (2, "appendix", "closed formula vs assembled N_(n,e), e <= 8, 2e < n <= 2e+8", {}),
    (3, "oracle-un", "coadjoint degree histogram of u_n(q) vs assembly, class numbers", {}),
    (4, "ex13", "crossing-algebra counts for 1,5,7,9,13/2,6,8,12/3,10/4,11 at q = 2 and 3", {}),
    (5, "lambda13", "stored polynomials for 1,6,8,13/2,7,12/3,9/4,10/5,11 at q = 2", {}),
    (6, "factorization", "orbit counts = product over crossing components, n <= 8, q = 2", {}),
    (7, "fact-identities", "chi(1) = q^d and <chi,chi> = q^|Cr|, n <= 5, q in {2,3}", {}),
    (8, "maxcross", "even maximal crossings give one constituent, n <= 8, q = 2", {}),
    (9, "prop-eval", "closed forms for |Cr| <= 2 and transpose symmetry, n <= 8", {}),
    (10, "congruence", "congruence mod (q-1)^2 and derivative at 1, n <= 30", {}),
    (11, "structure", "degree, Narayana, integrality and A/B triangle checks, e <= 8", {}),
    (12, "nonneg", "nonnegative (q-1)-coefficients, n <= 30, e <= 8", {}),
    (13, "algebra", "associativity, nilpotency, quotient isomorphisms", {}),
]


def evaluate(k, suite, what, params):
    rep = run_suite(suite, **params)
    status = "PASS" if rep.ok else "FAIL"
    line = f"criterion {k:2d}: {status}  {what}  (suite {suite}, {len(rep.checks)} checks, {rep.wall_time:.1f}s)"
    return rep, line


@pytest.mark.parametrize("k,suite,what,params", CRITERIA, ids=[f"criterion_{c[0]:02d}_{c[1]}" for c in CRITERIA])
def test_criterion(k, suite, what, params, acceptance_lines):
    rep, line = evaluate(k, suite, what, params)
    acceptance_lines[k] = line
    print(line)
    assert rep.ok, "\n".join(c.name + "  " + c.detail for c in rep.failures())


if __name__ == "__main__":
    import sys

    bad = 0
    for crit in CRITERIA:
        rep, line = evaluate(*crit)
        print(line, flush=True)
        bad += not rep.ok
    sys.exit(1 if bad else 0)
