"""Conformal modules, their axioms, indexed actions, and weight spaces.

Run with:  python3 demos/02_modules_and_weights.py
"""

from lieconformal import (
    ConformalModule,
    action_kernel,
    annih_bracket,
    AnnihAlgebra,
    check_annih_lie,
    check_module,
    map_virasoro_poly,
    module_action_n,
    rank_one_theorem_module,
    rank_one_vir,
    sc,
    virasoro,
    weight_spaces,
)
from lieconformal.poly import D, L, MultiPoly
from lieconformal.scalars import ONE, Scalar, ZERO

print("=" * 70)
print("1. The rank-one line: L _l v = (d + a*l + b) v")
print("=" * 70)
A = virasoro()
for a, b in ((2, 0), (0, 5)):
    M = rank_one_vir(a, b)
    rep = check_module(A, M)
    print(f"(a, b) = ({a}, {b}): {rep.summary()}; irreducible: {M.irreducible}")

print()
print("=" * 70)
print("2. Indexed actions recover the polynomial action")
print("=" * 70)
M = rank_one_vir(sc("5/2"), sc(-3))
v = [MultiPoly.one()]
for n in range(4):
    print(f"index-{n} action on v:", M.render_element(module_action_n(M, 0, n, v)))

print()
print("=" * 70)
print("3. The annihilation Lie algebra of the rank-one table")
print("=" * 70)
X = AnnihAlgebra(virasoro(), 6)
for m, n in ((2, 1), (3, 1), (1, 1)):
    combo = annih_bracket(X, (0, m), (0, n))
    desc = " + ".join(f"({c})*L_({i})" for (_, i), c in sorted(combo.items())) or "0"
    print(f"[L_({m}), L_({n})] = {desc}")
print(check_annih_lie(X).summary())

print()
print("=" * 70)
print("4. Weight spaces on a finite degree window")
print("=" * 70)
M = rank_one_vir(2, 0)
for w in weight_spaces(M, 4):
    print(f"weight {w.weight}: dim {w.dim}, basis {M.render_element(list(w.vectors[0]))}")

line = D + Scalar(2) * L
zero = MultiPoly.zero()
M2 = ConformalModule(("v1", "v2"), {0: ((line, zero), (zero, line))})
dims = [(str(w.weight), w.dim) for w in weight_spaces(M2, 3)]
print("rank-two direct sum saturates the rank bound:", dims)

print()
print("=" * 70)
print("5. Rank-one module of a scaled graded family, and its kernel")
print("=" * 70)
V = map_virasoro_poly(5)
M = rank_one_theorem_module(V, "a1=2", sc(1), ZERO, coeffs=[ONE] * 4)
print(check_module(V, M).summary())
ker = action_kernel(V, M)
print("scalar combinations acting as zero (coefficient vectors):")
for combo in ker.combinations:
    print("  ", tuple(str(c) for c in combo))
