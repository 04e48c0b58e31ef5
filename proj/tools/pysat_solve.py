#!/usr/bin/env python3
"""Minimal DIMACS front end for python-sat, following the usual exit codes."""

import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: pysat_solve.py FILE.cnf", file=sys.stderr)
        return 1
    cnf = CNF(from_file=sys.argv[1])
    with Solver(name="cadical195", bootstrap_with=cnf.clauses) as s:
        if not s.solve():
            print("s UNSATISFIABLE")
            return 20
        print("s SATISFIABLE")
        model = s.get_model() or []
        print("v " + " ".join(str(l) for l in model) + " 0")
        return 10


if __name__ == "__main__":
    sys.exit(main())
