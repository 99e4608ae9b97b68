"""Hilbert dimensions of the small varieties, from Groebner bases over GF(32003).

    python3 demos/dimensions.py
"""

from commulab import variety_dimension_experiment

cases = [("Y", 2, 2), ("Y", 3, 2), ("Y", 3, 3), ("N", 2, None), ("N", 3, None), ("S", 2, 2), ("S", 2, 3), ("W", 2, None)]
print(f"{'system':<10}{'dim':>5}{'expected':>10}{'basis':>7}")
for system, n, alpha in cases:
    rep = variety_dimension_experiment(system, n, alpha)
    m = rep.metrics
    label = f"{system}({n}" + (f",{alpha})" if alpha else ")")
    print(f"{label:<10}{m['dimension']:>5}{m['expected']:>10}{m['basis_size']:>7}   {rep.status}")
