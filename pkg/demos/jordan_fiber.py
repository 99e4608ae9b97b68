"""Solve X J - J X = X^alpha for a nilpotent Jordan block J, one entry at a time.

    python3 demos/jordan_fiber.py
"""

from commulab import GF, PivotFailure, jordan_block, solve_jordan_fiber

F = GF(7)
J = jordan_block(3, F)
for params in (["1", "0"], ["3", "2"], ["6", "1"]):
    try:
        fam = solve_jordan_fiber(3, 2, params, F)
    except PivotFailure as exc:
        print(f"x12, x13 = {params}: no solution ({exc})")
        continue
    (X,) = fam.solutions
    print(f"x12, x13 = {params}:")
    print(X)
    print("X J - J X == X^2:", X * J - J * X == X * X)
