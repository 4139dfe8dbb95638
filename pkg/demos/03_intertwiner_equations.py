"""The rank-one intertwiner functional equation and its solution table.

A polynomial f(d, l) connecting two weighted lines under an acting line
with parameters (a, b) must satisfy an exact identity in three variables.
Solving is pure linear algebra over the scalars: expand the defect over
the monomial basis and take the exact nullspace.

Run with:  python3 demos/03_intertwiner_equations.py
"""

from lieconformal import (
    FuncEqInstance,
    bcsx_variant_solver,
    degree_offset,
    sc,
    solve_homogeneous,
    solve_intertwiner,
    verify_solution_table,
)
from lieconformal.scalars import Scalar, ZERO

print("=" * 70)
print("1. The adjoint intertwiner appears as a one-dimensional nullspace")
print("=" * 70)
inst = FuncEqInstance(Scalar(2), ZERO, Scalar(5), Scalar(7), Scalar(5), Scalar(7), 2)
basis = solve_intertwiner(inst)
print("solutions of total degree <= 2:", [p.render() for p in basis.basis])

print()
print("=" * 70)
print("2. Mismatched constants kill every solution")
print("=" * 70)
inst = FuncEqInstance(Scalar(2), Scalar(1), Scalar(5), ZERO, Scalar(3), ZERO, 6)
print("dimension with b != c_i - c_j:", solve_intertwiner(inst).dimension)

print()
print("=" * 70)
print("3. Homogeneous solutions by degree, and the degree offset")
print("=" * 70)
cases = [
    (sc(1), sc(-1), sc(1), 2),
    (sc(3), sc(1), sc(0), 1),
    (sc(1), sc(-2), sc(1), 3),
]
for a, di, dj, k in cases:
    basis = solve_homogeneous(a, di, dj, k)
    for p in basis.basis:
        off = degree_offset(p, a, di, dj)
        print(f"a={a}, deltas=({di},{dj}), degree {k}: {p.render()}   "
              f"[deg_l = {off.deg_lambda} = a+dj-di-1 = {off.expected}]")

print()
print("=" * 70)
print("4. The eight-row classification, verified on exact sample grids")
print("=" * 70)
result = verify_solution_table()
print(result.report.summary())
print("rows x samples checked:", len(result.rows))

print()
print("=" * 70)
print("5. The variant orientation (shift by m) is its own equation")
print("=" * 70)
inst = FuncEqInstance(sc(1), ZERO, sc(4), sc(9), sc(4), sc(9), 0)
print("matching lines, constants:", bcsx_variant_solver(inst).dimension)
inst = FuncEqInstance(sc(1), ZERO, sc(4), sc(9), sc(4), sc(8), 0)
print("mismatched lines:", bcsx_variant_solver(inst).dimension)
