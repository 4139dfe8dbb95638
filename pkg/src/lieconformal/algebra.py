"""Lie conformal algebras as polynomial structure tables.

An algebra is a finite list of generators g_0..g_{n-1} that are free module
generators over the polynomial operator d, together with a table entry for
every ordered generator pair:

    [g_i _l g_j] = sum_k  p_{i,j,k}(d, l) * g_k

Both orders (i, j) and (j, i) are stored; skew-symmetry is a checked axiom,
never an assumption.  Infinite graded families are materialized up to a
truncation grade: a pair whose grade sum exceeds the truncation has no
entry at all, and every check that would need it reports "skipped" rather
than passing silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .linalg import rref
from .poly import D, L, M, MultiPoly
from .reports import Report
from .scalars import ONE, Scalar, ZERO


class TruncationExceeded(Exception):
    """A required structure-table entry lies beyond the truncation grade."""


class InvalidStructure(ValueError):
    """Constructor input violates its structural preconditions."""


TableEntry = dict[int, MultiPoly]
Table = dict[tuple[int, int], TableEntry]


@dataclass(frozen=True)
class AlgebraElement:
    """Finitely supported combination  sum_i f_i(d) * g_i."""

    coords: dict[int, MultiPoly]

    def __post_init__(self):
        clean = {}
        for i, f in self.coords.items():
            if not isinstance(f, MultiPoly):
                f = MultiPoly.const(f)
            if not f.uses_only(("d",)):
                raise InvalidStructure("element coordinates must be polynomials in d only")
            if not f.is_zero():
                clean[i] = f
        object.__setattr__(self, "coords", clean)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        coords = dict(self.coords)
        for i, f in other.coords.items():
            coords[i] = coords.get(i, MultiPoly.zero()) + f
        return AlgebraElement(coords)

    def __mul__(self, factor) -> "AlgebraElement":
        return AlgebraElement({i: f * factor for i, f in self.coords.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraElement":
        return self * Scalar(-1)

    def is_zero(self) -> bool:
        return not self.coords

    def render(self, gens: tuple[str, ...]) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"({f.render()})*{gens[i]}" for i, f in sorted(self.coords.items()))


class ConformalAlgebra:
    """Immutable structure table with optional grading and truncation."""

    def __init__(
        self,
        gens: tuple[str, ...] | list[str],
        table: Table,
        grades: dict[int, int] | None = None,
        truncation: int | None = None,
    ):
        self.gens = tuple(gens)
        self.grades = dict(grades) if grades is not None else None
        self.truncation = truncation
        n = len(self.gens)
        if self.grades is not None:
            if set(self.grades) != set(range(n)):
                raise InvalidStructure("grading must assign a grade to every generator")
            if len(set(self.grades.values())) != n:
                raise InvalidStructure("grading must be one generator per grade")
            if any(g < 0 for g in self.grades.values()):
                raise InvalidStructure("grades must be nonnegative")
        clean: Table = {}
        for (i, j), entry in table.items():
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidStructure(f"table entry ({i},{j}) references unknown generators")
            if self._beyond_truncation(i, j):
                raise InvalidStructure(
                    f"table entry ({i},{j}) lies beyond the truncation grade"
                )
            vec: TableEntry = {}
            for k, p in entry.items():
                if not p.uses_only(("d", "l")):
                    raise InvalidStructure("table entries must be polynomials in d, l")
                if p.is_zero():
                    continue
                if self.grades is not None and self.grades[k] != self.grades[i] + self.grades[j]:
                    raise InvalidStructure(
                        f"graded entry ({i},{j}) must be supported on grade "
                        f"{self.grades[i] + self.grades[j]}"
                    )
                vec[k] = p
            clean[(i, j)] = vec
        self.table = clean

    # -- table access ------------------------------------------------------

    def _beyond_truncation(self, i: int, j: int) -> bool:
        if self.truncation is None or self.grades is None:
            return False
        return self.grades[i] + self.grades[j] > self.truncation

    def has_entry(self, i: int, j: int) -> bool:
        return not self._beyond_truncation(i, j)

    def entry(self, i: int, j: int) -> TableEntry:
        """The bracket [g_i _l g_j] as a generator-indexed vector.

        An unset pair inside the truncation is the zero bracket; a pair
        beyond the truncation is unknown and raises TruncationExceeded.
        """
        if self._beyond_truncation(i, j):
            raise TruncationExceeded(f"bracket ({i},{j}) beyond truncation {self.truncation}")
        return self.table.get((i, j), {})

    @property
    def n_gens(self) -> int:
        return len(self.gens)

    def gen(self, i: int) -> AlgebraElement:
        return AlgebraElement({i: MultiPoly.one()})

    def element(self, coords: dict[int, MultiPoly]) -> AlgebraElement:
        return AlgebraElement(coords)

    def render_vector(self, vec: dict[int, MultiPoly]) -> str:
        if not vec:
            return "0"
        return " + ".join(f"({p.render()})*{self.gens[k]}" for k, p in sorted(vec.items()))


# ---------------------------------------------------------------------------
# bracket evaluation


def bracket(A: ConformalAlgebra, x: AlgebraElement, y: AlgebraElement) -> dict[int, MultiPoly]:
    """[x _l y] extended bilinearly: [f(d)g_i _l g(d)g_j] = f(-l) g(d+l) [g_i _l g_j]."""
    out: dict[int, MultiPoly] = {}
    neg_l = -L
    d_plus_l = D + L
    for i, f in x.coords.items():
        f_shift = f.substitute("d", neg_l)
        for j, g in y.coords.items():
            g_shift = g.substitute("d", d_plus_l)
            factor = f_shift * g_shift
            if factor.is_zero():
                continue
            for k, p in A.entry(i, j).items():
                acc = out.get(k, MultiPoly.zero()) + factor * p
                if acc.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = acc
    return out


def jth_product(A: ConformalAlgebra, x: AlgebraElement, y: AlgebraElement, j: int) -> AlgebraElement:
    """j-th product: j! times the l^j coefficient of the bracket."""
    if j < 0:
        raise ValueError("product index must be nonnegative")
    vec = bracket(A, x, y)
    fact = Scalar(factorial(j))
    return AlgebraElement({k: p.coeff_of("l", j) * fact for k, p in vec.items()})


# ---------------------------------------------------------------------------
# axiom checks


def check_skew(A: ConformalAlgebra) -> Report:
    """Skew-symmetry p_{i,j}(d,l) = -p_{j,i}(d,-l-d), entrywise and exact."""
    report = Report("skew-symmetry")
    flip = -L - D
    n = A.n_gens
    for i in range(n):
        for j in range(i, n):
            if not A.has_entry(i, j) or not A.has_entry(j, i):
                report.skip(f"skew({i},{j})", "beyond truncation")
                continue
            left = A.entry(i, j)
            right = A.entry(j, i)
            defects = []
            for k in sorted(set(left) | set(right)):
                p = left.get(k, MultiPoly.zero())
                q = right.get(k, MultiPoly.zero())
                defect = p + q.substitute("l", flip)
                if not defect.is_zero():
                    defects.append(f"({defect.render()})*{A.gens[k]}")
            if defects:
                report.fail(f"skew({i},{j})", *defects)
            else:
                report.ok(f"skew({i},{j})")
    return report


def _jacobi_defect(A: ConformalAlgebra, x: int, y: int, z: int) -> dict[int, MultiPoly]:
    """Defect of [g_x _l [g_y _m g_z]] = [[g_x _l g_y] _{l+m} g_z] + [g_y _m [g_x _l g_z]]."""
    d_plus_l = D + L
    d_plus_m = D + M
    l_plus_m = L + M
    neg_lm = -L - M

    out: dict[int, MultiPoly] = {}

    def accumulate(k: int, p: MultiPoly) -> None:
        acc = out.get(k, MultiPoly.zero()) + p
        if acc.is_zero():
            out.pop(k, None)
        else:
            out[k] = acc

    for w, q in A.entry(y, z).items():
        factor = q.substitute("l", M).substitute("d", d_plus_l)
        for k, p in A.entry(x, w).items():
            accumulate(k, factor * p)
    for w, r in A.entry(x, y).items():
        factor = r.substitute("d", neg_lm)
        for k, p in A.entry(w, z).items():
            accumulate(k, -factor * p.substitute("l", l_plus_m))
    for w, s in A.entry(x, z).items():
        factor = s.substitute("d", d_plus_m)
        for k, p in A.entry(y, w).items():
            accumulate(k, -factor * p.substitute("l", M))
    return out


def check_jacobi(A: ConformalAlgebra) -> Report:
    """Jacobi identity on every generator triple; out-of-truncation triples are skipped."""
    report = Report("jacobi")
    n = A.n_gens
    for x in range(n):
        for y in range(n):
            for z in range(n):
                try:
                    defect = _jacobi_defect(A, x, y, z)
                except TruncationExceeded:
                    report.skip(f"jacobi({x},{y},{z})", "beyond truncation")
                    continue
                if defect:
                    report.fail(f"jacobi({x},{y},{z})", A.render_vector(defect))
                else:
                    report.ok(f"jacobi({x},{y},{z})")
    return report


def check_algebra(A: ConformalAlgebra) -> Report:
    report = Report("algebra axioms")
    report.checks.extend(check_skew(A).checks)
    report.checks.extend(check_jacobi(A).checks)
    return report


# ---------------------------------------------------------------------------
# structure-constant helpers for current-type constructors

StructureConstants = list[list[list[Scalar]]]


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


def sl2_constants() -> tuple[StructureConstants, tuple[str, ...]]:
    """sl2 in the basis (e, f, h): [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    n = 3
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    e, f, h = 0, 1, 2
    c[e][f][h] = ONE
    c[f][e][h] = -ONE
    c[h][e][e] = Scalar(2)
    c[e][h][e] = Scalar(-2)
    c[h][f][f] = Scalar(-2)
    c[f][h][f] = Scalar(2)
    return c, ("e", "f", "h")


def abelian_constants(n: int) -> tuple[StructureConstants, tuple[str, ...]]:
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    return c, tuple(f"x{i}" for i in range(n))


def nonabelian2_constants() -> tuple[StructureConstants, tuple[str, ...]]:
    """The 2-dimensional non-abelian Lie algebra: [x, y] = x."""
    c = [[[ZERO] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = ONE
    c[1][0][0] = -ONE
    return c, ("x", "y")


def _validate_antisymmetric(c: StructureConstants) -> None:
    n = len(c)
    for i in range(n):
        if len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)):
            raise InvalidStructure("structure constants must form an n x n x n array")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if _as_scalar(c[i][j][k]) != -_as_scalar(c[j][i][k]):
                    raise InvalidStructure("structure constants must be antisymmetric")


# ---------------------------------------------------------------------------
# built-in constructors


def virasoro() -> ConformalAlgebra:
    """Rank one, [L _l L] = (d + 2l) L."""
    return ConformalAlgebra(("L",), {(0, 0): {0: D + 2 * L}})


def current(structure: StructureConstants, labels: tuple[str, ...] | None = None) -> ConformalAlgebra:
    """Current algebra of a Lie algebra given by structure constants: brackets are l-free."""
    _validate_antisymmetric(structure)
    n = len(structure)
    if labels is None:
        labels = tuple(f"x{i}" for i in range(n))
    table: Table = {}
    for i in range(n):
        for j in range(n):
            table[(i, j)] = {
                k: MultiPoly.const(_as_scalar(structure[i][j][k]))
                for k in range(n)
                if not _as_scalar(structure[i][j][k]).is_zero()
            }
    return ConformalAlgebra(labels, table)


def vir_semidirect_current(
    a, structure: StructureConstants, labels: tuple[str, ...] | None = None
) -> ConformalAlgebra:
    """Virasoro acting on a current algebra by [L _l x] = (d + a*l) x."""
    a = _as_scalar(a)
    _validate_antisymmetric(structure)
    n = len(structure)
    if labels is None:
        labels = tuple(f"x{i}" for i in range(n))
    gens = ("L",) + labels
    table: Table = {(0, 0): {0: D + 2 * L}}
    act = D + a * L
    act_rev = (a - ONE) * D + a * L
    for i in range(n):
        table[(0, i + 1)] = {i + 1: act}
        table[(i + 1, 0)] = {i + 1: act_rev}
    for i in range(n):
        for j in range(n):
            table[(i + 1, j + 1)] = {
                k + 1: MultiPoly.const(_as_scalar(structure[i][j][k]))
                for k in range(n)
                if not _as_scalar(structure[i][j][k]).is_zero()
            }
    return ConformalAlgebra(gens, table)


def block(p, truncation: int) -> ConformalAlgebra:
    """Graded family [L_i _l L_j] = ((i+p)d + (i+j+2p)l) L_{i+j}, cut at the truncation grade."""
    p = _as_scalar(p)
    if p.is_zero():
        raise InvalidStructure("block parameter p must be nonzero")
    if truncation < 0:
        raise InvalidStructure("truncation must be nonnegative")
    n = truncation + 1
    gens = tuple(f"L{i}" for i in range(n))
    table: Table = {}
    for i in range(n):
        for j in range(n):
            if i + j > truncation:
                continue
            coeff_d = Scalar(i) + p
            coeff_l = Scalar(i + j) + 2 * p
            poly = coeff_d * D + coeff_l * L
            table[(i, j)] = {i + j: poly} if not poly.is_zero() else {}
    grades = {i: i for i in range(n)}
    return ConformalAlgebra(gens, table, grades=grades, truncation=truncation)


MultTable = list[list[list[Scalar]]]


def _find_unit(mult: MultTable) -> list[Scalar] | None:
    """Solve sum_k e_k (u_k u_i) = u_i for all i; None when no unit exists."""
    n = len(mult)
    rows = []
    rhs = []
    for i in range(n):
        for coord in range(n):
            rows.append([_as_scalar(mult[k][i][coord]) for k in range(n)])
            rhs.append(ONE if coord == i else ZERO)
    aug = [row + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if n in pivots:
        return None
    solution = [ZERO] * n
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][n]
    for row, b in zip(rows, rhs):
        acc = ZERO
        for x, e in zip(row, solution):
            acc = acc + x * e
        if acc != b:
            return None
    return solution


def map_virasoro(
    mult: MultTable,
    grades: dict[int, int] | None = None,
    truncation: int | None = None,
    labels: tuple[str, ...] | None = None,
) -> ConformalAlgebra:
    """Virasoro tensored with a commutative unital algebra given by its basis products.

    mult[i][j] is the coordinate vector of u_i * u_j.  With grades and a
    truncation this builds the horizon model of an infinite graded family:
    pairs beyond the truncation are left unknown, not set to zero.
    """
    n = len(mult)
    for i in range(n):
        for j in range(n):
            if [_as_scalar(x) for x in mult[i][j]] != [_as_scalar(x) for x in mult[j][i]]:
                raise InvalidStructure("multiplication table must be commutative")
    for i in range(n):
        for j in range(n):
            for h in range(n):
                left = [ZERO] * n
                for k in range(n):
                    ck = _as_scalar(mult[i][j][k])
                    if not ck.is_zero():
                        for t in range(n):
                            left[t] = left[t] + ck * _as_scalar(mult[k][h][t])
                right = [ZERO] * n
                for k in range(n):
                    ck = _as_scalar(mult[j][h][k])
                    if not ck.is_zero():
                        for t in range(n):
                            right[t] = right[t] + ck * _as_scalar(mult[i][k][t])
                if left != right:
                    raise InvalidStructure("multiplication table must be associative")
    if _find_unit(mult) is None:
        raise InvalidStructure("multiplication table must have a unit")
    if labels is None:
        labels = tuple(f"L{i}" for i in range(n))
    base = D + 2 * L
    table: Table = {}
    for i in range(n):
        for j in range(n):
            if grades is not None and truncation is not None:
                if grades[i] + grades[j] > truncation:
                    continue
            table[(i, j)] = {
                k: base * _as_scalar(mult[i][j][k])
                for k in range(n)
                if not _as_scalar(mult[i][j][k]).is_zero()
            }
    return ConformalAlgebra(labels, table, grades=grades, truncation=truncation)


def truncated_polynomial_products(n: int) -> MultTable:
    """Products of 1, T, ..., T^{n-1} with T^i T^j = T^{i+j} (zero once out of range)."""
    mult: MultTable = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = [ZERO] * n
            if i + j < n:
                vec[i + j] = ONE
            row.append(vec)
        mult.append(row)
    return mult


def map_virasoro_poly(n: int) -> ConformalAlgebra:
    """Horizon model of Virasoro tensored with polynomials in T, cut after T^{n-1}.

    Grades are the T-powers and the truncation is n-1, so brackets that
    would land past T^{n-1} are unknown (skipped by checks), matching the
    intended infinite family rather than the nilpotent quotient.
    """
    if n < 1:
        raise InvalidStructure("need at least one generator")
    mult = truncated_polynomial_products(n)
    grades = {i: i for i in range(n)}
    return map_virasoro(mult, grades=grades, truncation=n - 1)
