"""Truncated annihilation Lie algebras and weight-space computations.

Formal symbols g_(n) for each generator g and index 0 <= n <= depth obey

    [a_(m), b_(n)] = sum_s  C(m, s) (a_(s) b)_(m+n-s),
    (d^t a)_(r)    = (-1)^t r (r-1) ... (r-t+1) a_(r-t),

which turns the polynomial bracket table into an honest Lie algebra on
finitely many symbols.  Brackets whose result needs an index beyond the
depth raise, and the consistency checker reports those as skipped.

The module side: v -> n! * (coefficient of l^n in g _l v) gives the
indexed actions, and the weight spaces of the index-1 action of a chosen
Virasoro generator are computed exactly on a finite degree filtration
(candidate weights are read from the diagonal of the filtration matrix,
so no numerical eigensolver is involved).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from fractions import Fraction

from .algebra import ConformalAlgebra, TruncationExceeded
from .algebra import bracket as conformal_bracket
from .linalg import nullspace
from .modules import ConformalModule, apply_action
from .poly import MultiPoly
from .reports import Report
from .scalars import ONE, Scalar, ZERO

Symbol = tuple[int, int]  # (generator index, annihilation index)
Combination = dict[Symbol, Scalar]


class AnnihAlgebra:
    def __init__(self, parent: ConformalAlgebra, depth: int):
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        self.parent = parent
        self.depth = depth

    def symbols(self) -> list[Symbol]:
        return [
            (g, n)
            for g in range(self.parent.n_gens)
            for n in range(self.depth + 1)
        ]


def _place(out: Combination, sym: Symbol, coeff: Scalar) -> None:
    acc = out.get(sym, ZERO) + coeff
    if acc.is_zero():
        out.pop(sym, None)
    else:
        out[sym] = acc


def _element_at_index(coords: dict[int, MultiPoly], r: int) -> Combination:
    """(f(d) g)_(r) expanded through (d^t g)_(r) = (-1)^t (r)_t g_(r-t).

    Indices beyond any depth are kept here; the caller decides whether a
    net out-of-depth coefficient survives (cancellations are common on
    diagonal brackets and must not trip the truncation check)."""
    out: Combination = {}
    for gen, f in coords.items():
        for key, coeff in f.terms.items():
            t = key[0]
            if t > r:
                continue
            falling = 1
            for s in range(t):
                falling *= r - s
            c = coeff * Scalar((-1) ** t * falling)
            if c.is_zero():
                continue
            _place(out, (gen, r - t), c)
    return out


def annih_bracket(X: AnnihAlgebra, left: Symbol, right: Symbol) -> Combination:
    """[g_(m), h_(n)] = sum_s C(m,s) ((s-th product))_(m+n-s), exact and finite."""
    (i, m), (j, n) = left, right
    for idx in (m, n):
        if not (0 <= idx <= X.depth):
            raise TruncationExceeded(f"index {idx} beyond depth {X.depth}")
    out: Combination = {}
    vec = conformal_bracket(X.parent, X.parent.gen(i), X.parent.gen(j))
    max_s = 0
    for poly in vec.values():
        deg = poly.degree_in("l")
        if deg is not None:
            max_s = max(max_s, deg)
    for s in range(min(m, max_s) + 1):
        coords = {
            k: p.coeff_of("l", s) * Scalar(factorial(s))
            for k, p in vec.items()
        }
        coords = {k: f for k, f in coords.items() if not f.is_zero()}
        if not coords:
            continue
        binom = Scalar(comb(m, s))
        part = _element_at_index(coords, m + n - s)
        for sym, coeff in part.items():
            _place(out, sym, binom * coeff)
    overflow = [sym for sym in out if sym[1] > X.depth]
    if overflow:
        raise TruncationExceeded(
            f"bracket needs indices {sorted(idx for _, idx in overflow)} beyond depth {X.depth}"
        )
    return out


def _bracket_combinations(X: AnnihAlgebra, a: Combination, b: Combination) -> Combination:
    out: Combination = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            inner = annih_bracket(X, sa, sb)
            for sym, coeff in inner.items():
                _place(out, sym, ca * cb * coeff)
    return out


def render_combination(X: AnnihAlgebra, comb_: Combination) -> str:
    if not comb_:
        return "0"
    gens = X.parent.gens
    parts = [
        f"({coeff})*{gens[g]}_({n})"
        for (g, n), coeff in sorted(comb_.items())
    ]
    return " + ".join(parts)


def check_annih_lie(X: AnnihAlgebra) -> Report:
    """Antisymmetry and the Jacobi identity on all in-depth symbol pairs/triples."""
    report = Report("annihilation Lie algebra")
    syms = X.symbols()
    for a in syms:
        for b in syms:
            if a > b:
                continue
            try:
                ab = annih_bracket(X, a, b)
                ba = annih_bracket(X, b, a)
            except TruncationExceeded:
                report.skip(f"antisym{a}{b}", "beyond depth")
                continue
            defect = dict(ab)
            for sym, coeff in ba.items():
                _place(defect, sym, coeff)
            if defect:
                report.fail(f"antisym{a}{b}", render_combination(X, defect))
            else:
                report.ok(f"antisym{a}{b}")
    for a in syms:
        for b in syms:
            if b < a:
                continue
            for c in syms:
                if c < b:
                    continue
                try:
                    d1 = _bracket_combinations(X, annih_bracket(X, a, b), {c: ONE})
                    d2 = _bracket_combinations(X, annih_bracket(X, b, c), {a: ONE})
                    d3 = _bracket_combinations(X, annih_bracket(X, c, a), {b: ONE})
                except TruncationExceeded:
                    report.skip(f"jacobi{a}{b}{c}", "beyond depth")
                    continue
                defect: Combination = {}
                for d in (d1, d2, d3):
                    for sym, coeff in d.items():
                        _place(defect, sym, coeff)
                if defect:
                    report.fail(f"jacobi{a}{b}{c}", render_combination(X, defect))
                else:
                    report.ok(f"jacobi{a}{b}{c}")
    return report


# ---------------------------------------------------------------------------
# indexed module actions and weight spaces


def module_action_n(M_: ConformalModule, gen: int, n: int, vec: list[MultiPoly]) -> list[MultiPoly]:
    """n! times the l^n coefficient of the action of the generator on the element."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    image = apply_action(M_, gen, vec)
    fact = Scalar(factorial(n))
    return [p.coeff_of("l", n) * fact for p in image]


@dataclass(frozen=True)
class WeightReport:
    weight: Scalar
    vectors: tuple[tuple[MultiPoly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


def weight_spaces(M_: ConformalModule, degree_bound: int, virasoro_gen: int = 0) -> list[WeightReport]:
    """Exact eigenspaces of the index-1 action on elements of d-degree <= the bound.

    Weights are sorted by (real, imaginary) parts for deterministic output.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    m = M_.rank
    cols = [(j, t) for j in range(m) for t in range(degree_bound + 1)]
    col_index = {bt: i for i, bt in enumerate(cols)}
    images = []
    out_keys: set[tuple[int, int]] = set()
    for (j, t) in cols:
        vec = [MultiPoly.zero()] * m
        vec[j] = MultiPoly({(t, 0, 0): ONE})
        img = module_action_n(M_, virasoro_gen, 1, vec)
        entry: dict[tuple[int, int], Scalar] = {}
        for k, poly in enumerate(img):
            for key, coeff in poly.terms.items():
                entry[(k, key[0])] = coeff
                out_keys.add((k, key[0]))
        images.append(entry)
    out_keys.update(cols[i] for i in range(len(cols)))
    ordered_keys = sorted(out_keys)
    candidates = []
    seen = set()
    for i, (j, t) in enumerate(cols):
        diag = images[i].get((j, t), ZERO)
        if diag not in seen:
            seen.add(diag)
            candidates.append(diag)
    candidates.sort(key=lambda s: s.sort_key())
    reports = []
    for alpha in candidates:
        rows = []
        for key in ordered_keys:
            row = []
            for i, bt in enumerate(cols):
                val = images[i].get(key, ZERO)
                if key == bt:
                    val = val - alpha
                row.append(val)
            rows.append(row)
        basis = nullspace(rows, len(cols))
        if not basis:
            continue
        vectors = []
        for coeffs in basis:
            vec = [MultiPoly.zero()] * m
            for (j, t), coeff in zip(cols, coeffs):
                if not coeff.is_zero():
                    vec[j] = vec[j] + MultiPoly({(t, 0, 0): coeff})
            vectors.append(tuple(vec))
        reports.append(WeightReport(alpha, tuple(vectors)))
    return reports


def reconstruct_lambda_action(M_: ConformalModule, gen: int, vec: list[MultiPoly], max_index: int | None = None) -> list[MultiPoly]:
    """Rebuild g _l v as sum_n (indexed action) l^n / n!; equals apply_action exactly."""
    direct = apply_action(M_, gen, vec)
    if max_index is None:
        max_index = max((p.degree_in("l") or 0) for p in direct) if direct else 0
    m = M_.rank
    out = [MultiPoly.zero()] * m
    lpoly = MultiPoly.variable("l")
    for n in range(max_index + 1):
        part = module_action_n(M_, gen, n, vec)
        scale = Scalar(Fraction(1, factorial(n)))
        for k in range(m):
            out[k] = out[k] + part[k] * scale * lpoly**n
    return out
