"""Small exact counterexamples, printed step by step.

    python3 demos/counterexamples.py
"""

from commulab import GF, Matrix, Mod, charpoly, matrix_nilindex, resultant, simultaneous_triangularization
from commulab.matrix import nilpotency_bound
from commulab.poly import UniPoly
from commulab.registry import char3_pair

# Over GF(3) the pair below satisfies [A,B] = A^2 with A^3 = I,
# yet no common flag exists.
A, B = char3_pair()
print("A =\n" + str(A))
print("B =\n" + str(B))
print("[A,B] == A^2:", A * B - B * A == A * A)
print("A^3 == I:", A ** 3 == Matrix.identity(3, GF(3)))
print("charpoly(A) =", charpoly(A))
res = simultaneous_triangularization(A, B)
print("simultaneous triangularization:", res.status)

# Nilpotent matrices over a non-reduced ring can outlive their size.
R = Mod(27)
N = Matrix.identity(2, R).scale(R(3))
print("\n3*I over Z/27, nilindex =", matrix_nilindex(N, nilpotency_bound(N)), "(size 2)")

# det g(X) = Res(charpoly X, g) can vanish modulo a zero divisor without X^2 = 0.
R8 = Mod(8)
X = Matrix.from_values(R8, [[2, 0], [0, 2]])
g = UniPoly.from_values(R8, [2])
print("\nover Z/8: X = 2I, g = 2")
print("X^2 == 0:", (X * X).is_zero(), " X^2 g(X) == 0:", (X * X).scale(R8(2)).is_zero())
print("Res(charpoly X, g) =", resultant(charpoly(X), g))
