"""Exact rational linear-inequality systems.

Every region in this package is carried by a :class:`LinSystem`: a finite
list of rows ``sum(c_j * x_j) <= b`` over named variables, plus a set of
variables constrained to be nonnegative.  All arithmetic is exact
(:class:`fractions.Fraction`); there is no floating point anywhere on the
solve path.

The solver is a condensed-tableau (dictionary) simplex with Bland's rule,
chosen for exactness and guaranteed termination on the highly degenerate
systems that boundary-tight parameter regimes produce.  Vertex enumeration
is exhaustive over active sets and is only intended for small dimensions
(<= 8 by default, override with the ``GDOF_MAX_DIM`` environment variable).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, PreconditionError

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

Row = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class LinSystem:
    """A system of linear inequalities ``coeffs . x <= rhs``.

    ``nonneg`` lists the variables additionally constrained ``>= 0``;
    variables not in ``nonneg`` are free.
    """

    vars: tuple[str, ...]
    rows: tuple[Row, ...]
    nonneg: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(
            self, "rows", tuple((tuple(coeffs), rhs) for coeffs, rhs in self.rows)
        )
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise PreconditionError("duplicate variable names in LinSystem")
        for coeffs, _rhs in self.rows:
            if len(coeffs) != n:
                raise PreconditionError(
                    "row length %d does not match %d variables" % (len(coeffs), n)
                )
        extra = self.nonneg - set(self.vars)
        if extra:
            raise PreconditionError("nonneg names not among vars: %s" % sorted(extra))

    def var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PreconditionError("unknown variable %r" % name) from None


def make_linsystem(varnames, rows, nonneg) -> LinSystem:
    """Build a LinSystem, coercing all numeric entries to Fraction."""
    tidy = tuple(
        (tuple(Fraction(c) for c in coeffs), Fraction(rhs)) for coeffs, rhs in rows
    )
    return LinSystem(tuple(varnames), tidy, frozenset(nonneg))


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


# ---------------------------------------------------------------------------
# Simplex core: max c.x  s.t.  A x <= b, x >= 0, exact arithmetic.
#
# Dictionary convention: each basic variable satisfies
#     basic_i = bcol[i] - sum_j T[i][j] * nonbasic_j
# and the objective satisfies  z = z0 + sum_j cobj[j] * nonbasic_j.
# Bland's rule (smallest variable index) on both the entering and the
# leaving choice guarantees termination under degeneracy.
# ---------------------------------------------------------------------------


def _pivot(T, bcol, cobj, row_var, col_var, r, s):
    a = T[r][s]
    inva = ONE / a
    new_r = [x * inva for x in T[r]]
    new_r[s] = inva
    T[r] = new_r
    bcol[r] = bcol[r] * inva
    br = bcol[r]
    m = len(T)
    for i in range(m):
        if i == r:
            continue
        f = T[i][s]
        if f:
            Ti = T[i]
            row = [x - f * y for x, y in zip(Ti, new_r)]
            row[s] = -f * inva
            T[i] = row
            if br:
                bcol[i] = bcol[i] - f * br
    g = cobj[s]
    z_inc = ZERO
    if g:
        for j in range(len(cobj)):
            if j != s:
                cobj[j] = cobj[j] - g * new_r[j]
        cobj[s] = -g * inva
        z_inc = g * br
    row_var[r], col_var[s] = col_var[s], row_var[r]
    return z_inc


def _bland_iterate(T, bcol, cobj, row_var, col_var):
    """Run Bland-rule pivots to optimality. Returns total objective gain,
    or None if the problem is unbounded."""
    gain = ZERO
    m = len(T)
    while True:
        s = -1
        s_var = None
        for j, cj in enumerate(cobj):
            if cj > 0 and (s_var is None or col_var[j] < s_var):
                s, s_var = j, col_var[j]
        if s_var is None:
            return gain
        r = -1
        r_var = None
        best = None
        for i in range(m):
            tis = T[i][s]
            if tis > 0:
                ratio = bcol[i] / tis
                if best is None or ratio < best or (ratio == best and row_var[i] < r_var):
                    best, r, r_var = ratio, i, row_var[i]
        if r_var is None:
            return None
        gain += _pivot(T, bcol, cobj, row_var, col_var, r, s)


def _solve_canonical(c, A, b):
    """max c.x s.t. A x <= b, x >= 0. Returns (status, value, x)."""
    n = len(c)
    m = len(A)
    T = [list(row) for row in A]
    bcol = list(b)
    col_var = list(range(n))
    row_var = list(range(n, n + m))
    z0 = ZERO
    cobj = list(c)

    if any(bi < 0 for bi in bcol):
        # Phase I: auxiliary variable with index n + m enters on the most
        # negative row, then minimize it (maximize its negation).
        aux = n + m
        for row in T:
            row.append(Fraction(-1))
        col_var.append(aux)
        caux = [ZERO] * (n + 1)
        caux[-1] = Fraction(-1)
        r = min(range(m), key=lambda i: (bcol[i], row_var[i]))
        zaux = _pivot(T, bcol, caux, row_var, col_var, r, n)
        more = _bland_iterate(T, bcol, caux, row_var, col_var)
        if more is None:  # the auxiliary objective is bounded above by 0
            raise PreconditionError("internal error: unbounded feasibility phase")
        zaux += more
        if zaux < 0:
            return INFEASIBLE, None, None
        if aux in row_var:
            r0 = row_var.index(aux)
            s0 = next((j for j, x in enumerate(T[r0]) if x != 0), None)
            if s0 is None:
                del T[r0], bcol[r0], row_var[r0]
            else:
                _pivot(T, bcol, caux, row_var, col_var, r0, s0)
        j0 = col_var.index(aux)
        del col_var[j0]
        for row in T:
            del row[j0]
        # Rebuild the original objective over the current dictionary.
        cobj = [ZERO] * len(col_var)
        for j, v in enumerate(col_var):
            if v < n:
                cobj[j] += c[v]
        for i, v in enumerate(row_var):
            if v < n and c[v]:
                cv = c[v]
                z0 += cv * bcol[i]
                Ti = T[i]
                for j in range(len(cobj)):
                    if Ti[j]:
                        cobj[j] -= cv * Ti[j]

    gain = _bland_iterate(T, bcol, cobj, row_var, col_var)
    if gain is None:
        return UNBOUNDED, None, None
    z0 += gain
    x = [ZERO] * n
    for i, v in enumerate(row_var):
        if v < n:
            x[v] = bcol[i]
    return OPTIMAL, z0, x


def lp_max(sys: LinSystem, objective) -> LpResult:
    """Maximize ``objective . x`` over the system, exactly.

    Free variables (not in ``nonneg``) are handled by the usual split into
    a difference of two nonnegative variables.  INFEASIBLE and UNBOUNDED
    are reported as result statuses, not exceptions.
    """
    objective = tuple(Fraction(v) for v in objective)
    if len(objective) != len(sys.vars):
        raise PreconditionError("objective length does not match variables")
    cols = []  # (var position, sign)
    for k, name in enumerate(sys.vars):
        cols.append((k, 1))
        if name not in sys.nonneg:
            cols.append((k, -1))
    c = [objective[k] * sgn for k, sgn in cols]
    A = [[coeffs[k] * sgn for k, sgn in cols] for coeffs, _ in sys.rows]
    b = [rhs for _, rhs in sys.rows]
    status, value, x = _solve_canonical(c, A, b)
    if status != OPTIMAL:
        return LpResult(status)
    point = [ZERO] * len(sys.vars)
    for (k, sgn), xv in zip(cols, x):
        point[k] += xv if sgn == 1 else -xv
    return LpResult(OPTIMAL, value, tuple(point))


def contains(sys: LinSystem, point) -> bool:
    """Exact membership test of a point in the system's feasible set."""
    point = tuple(Fraction(v) for v in point)
    if len(point) != len(sys.vars):
        raise PreconditionError("point length does not match variables")
    for name, v in zip(sys.vars, point):
        if name in sys.nonneg and v < 0:
            return False
    for coeffs, rhs in sys.rows:
        if sum(c * v for c, v in zip(coeffs, point) if c) > rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Row utilities
# ---------------------------------------------------------------------------


def _canonical_row(coeffs, rhs):
    """Scale a row by the absolute value of its first nonzero coefficient,
    giving a canonical representative for duplicate detection."""
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        return coeffs, rhs
    scale = ONE / abs(lead)
    return tuple(c * scale for c in coeffs), rhs * scale


def _dedup_rows(rows):
    """Drop rows whose canonical coefficient vector repeats, keeping the
    smallest right-hand side (first occurrence order is preserved)."""
    best: dict[tuple, tuple[int, Fraction, Row]] = {}
    order = []
    for pos, (coeffs, rhs) in enumerate(rows):
        ck, cr = _canonical_row(coeffs, rhs)
        if ck in best:
            if cr < best[ck][1]:
                best[ck] = (best[ck][0], cr, (coeffs, rhs))
        else:
            best[ck] = (pos, cr, (coeffs, rhs))
            order.append(ck)
    return [best[k][2] for k in order]


def _all_vars_nonneg(sys: LinSystem) -> bool:
    return set(sys.vars) <= sys.nonneg


def _dominance_filter(rows, pair_sums: bool):
    """Cheap redundancy pre-filter, valid only when every variable is
    nonnegative: a row is dropped when one kept row (or the sum of two kept
    rows) has componentwise >= coefficients and <= right-hand side.

    Removals are sequential against the currently kept set, which keeps the
    filter sound (each removed row is implied by rows that survive it).
    """
    kept = list(rows)
    i = 0
    while i < len(kept):
        ci, bi = kept[i]
        removed = False
        # zero or negative rows are implied by nonnegativity alone
        if bi >= 0 and all(c <= 0 for c in ci):
            del kept[i]
            continue
        for j, (cj, bj) in enumerate(kept):
            if j == i:
                continue
            if bj <= bi and all(x <= y for x, y in zip(ci, cj)):
                del kept[i]
                removed = True
                break
        if removed:
            continue
        if pair_sums:
            lowers = [
                (cj, bj)
                for j, (cj, bj) in enumerate(kept)
                if j != i and bj <= bi and all(x <= y for x, y in zip(cj, ci))
            ]
            for j1, (c1, b1) in enumerate(lowers):
                need = bi - b1
                hit = False
                for c2, b2 in lowers:
                    if b2 <= need and all(
                        x <= y + z for x, y, z in zip(ci, c1, c2)
                    ):
                        hit = True
                        break
                if hit:
                    del kept[i]
                    removed = True
                    break
        if not removed:
            i += 1
    return kept


def reduce_rows(sys: LinSystem) -> LinSystem:
    """Inexpensive shrink of a system (duplicate and dominance removal)
    without any LP solves.  The feasible set is unchanged."""
    rows = _dedup_rows(sys.rows)
    if _all_vars_nonneg(sys):
        rows = _dominance_filter(rows, pair_sums=False)
    return LinSystem(sys.vars, tuple(rows), sys.nonneg)


def remove_redundant(sys: LinSystem) -> LinSystem:
    """Minimal subsystem with the same feasible set.

    Requires a feasible input system.  Each removed row is implied by the
    remaining ones, verified exactly: maximizing its left-hand side subject
    to the rest stays at or below its right-hand side.
    """
    rows = _dedup_rows(sys.rows)
    if _all_vars_nonneg(sys):
        rows = _dominance_filter(rows, pair_sums=True)
    kept = list(rows)
    i = 0
    while i < len(kept):
        coeffs, rhs = kept[i]
        rest = LinSystem(sys.vars, tuple(kept[:i] + kept[i + 1 :]), sys.nonneg)
        res = lp_max(rest, coeffs)
        if res.status == INFEASIBLE:
            raise PreconditionError("remove_redundant requires a feasible system")
        if res.status == OPTIMAL and res.value <= rhs:
            del kept[i]
        else:
            i += 1
    return LinSystem(sys.vars, tuple(kept), sys.nonneg)


def fm_eliminate(sys: LinSystem, var: str) -> LinSystem:
    """Project the feasible set onto the remaining variables by
    Fourier-Motzkin elimination of ``var``.

    Every row with a positive coefficient on ``var`` is paired with every
    row with a negative coefficient (a nonnegativity constraint on ``var``
    participates as an implicit ``-var <= 0`` row); rows free of ``var``
    pass through.  Exact duplicates produced by the pairing are dropped.
    """
    idx = sys.var_index(var)
    keep_names = sys.vars[:idx] + sys.vars[idx + 1 :]
    zero_rows = []
    pos = []
    neg = []
    for coeffs, rhs in sys.rows:
        cv = coeffs[idx]
        reduced = coeffs[:idx] + coeffs[idx + 1 :]
        if cv == 0:
            zero_rows.append((reduced, rhs))
        elif cv > 0:
            pos.append((reduced, rhs, cv))
        else:
            neg.append((reduced, rhs, cv))
    if var in sys.nonneg:
        neg.append((tuple(ZERO for _ in keep_names), ZERO, Fraction(-1)))
    out = list(zero_rows)
    for pc, pb, pv in pos:
        for nc, nb, nv in neg:
            # scale so the var cancels: row_pos / pv + row_neg / (-nv)
            w = -nv
            coeffs = tuple(a * w + b * pv for a, b in zip(pc, nc))
            rhs = pb * w + nb * pv
            if any(coeffs):
                out.append((coeffs, rhs))
            elif rhs < 0:
                out.append((coeffs, rhs))  # infeasibility witness row
    out = _dedup_rows(out)
    return LinSystem(keep_names, tuple(out), sys.nonneg - {var})


def equals(sys1: LinSystem, sys2: LinSystem):
    """Decide exact equality of two feasible sets over the same variables.

    Returns ``(True, None)`` or ``(False, witness)`` where ``witness`` is a
    point lying in one set but not the other.
    """
    if sys1.vars != sys2.vars:
        raise PreconditionError("systems must share one variable universe")
    w = _one_sided_violation(sys1, sys2)
    if w is not None:
        return False, w
    w = _one_sided_violation(sys2, sys1)
    if w is not None:
        return False, w
    return True, None


def _one_sided_violation(inner: LinSystem, outer: LinSystem):
    """Find a point of ``inner`` violating some constraint of ``outer``."""
    small = reduce_rows(inner)
    constraints = list(reduce_rows(outer).rows)
    for name in sorted(outer.nonneg - inner.nonneg):
        k = outer.var_index(name)
        coeffs = tuple(Fraction(-1) if j == k else ZERO for j in range(len(outer.vars)))
        constraints.append((coeffs, ZERO))
    for coeffs, rhs in constraints:
        res = lp_max(small, coeffs)
        if res.status == INFEASIBLE:
            return None  # empty inner set is included in anything
        if res.status == UNBOUNDED:
            capped = LinSystem(
                small.vars, small.rows + ((coeffs, rhs + 1),), small.nonneg
            )
            res = lp_max(capped, coeffs)
        if res.value > rhs:
            return res.point
    return None


def minkowski_sum_membership(sys1: LinSystem, sys2: LinSystem, point) -> bool:
    """Exact test whether ``point = p1 + p2`` for some ``p1`` in ``sys1``
    and ``p2`` in ``sys2``, decided by a single feasibility LP over the
    split ``p1`` (with ``p2 = point - p1``)."""
    if sys1.vars != sys2.vars:
        raise PreconditionError("systems must share one variable universe")
    point = tuple(Fraction(v) for v in point)
    if len(point) != len(sys1.vars):
        raise PreconditionError("point length does not match variables")
    n = len(sys1.vars)
    rows = list(sys1.rows)
    for coeffs, rhs in sys2.rows:
        shift = sum(c * p for c, p in zip(coeffs, point) if c)
        rows.append((tuple(-c for c in coeffs), rhs - shift))
    for name in sys2.nonneg:
        k = sys1.var_index(name)
        coeffs = tuple(ONE if j == k else ZERO for j in range(n))
        rows.append((coeffs, point[k]))
    probe = LinSystem(sys1.vars, tuple(rows), sys1.nonneg)
    res = lp_max(probe, (ZERO,) * n)
    return res.status == OPTIMAL


# ---------------------------------------------------------------------------
# Vertex enumeration
# ---------------------------------------------------------------------------


def _solve_square(M, rhs):
    """Solve an n x n rational system by Gaussian elimination.
    Returns the solution list or None when singular."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        lead = A[col][col]
        inv = ONE / lead
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def max_dim_limit() -> int:
    return int(os.environ.get("GDOF_MAX_DIM", "8"))


def vertices(sys: LinSystem) -> tuple[tuple[Fraction, ...], ...]:
    """All extreme points of a bounded, feasible system.

    Exhaustive enumeration over active sets of ``dim`` constraints with a
    nonsingularity check; intended for small systems only.
    """
    n = len(sys.vars)
    limit = max_dim_limit()
    if n > limit:
        raise CapabilityError(
            "vertex enumeration limited to %d variables (got %d); "
            "set GDOF_MAX_DIM to override" % (limit, n)
        )
    constraints = list(_dedup_rows(sys.rows))
    for name in sorted(sys.nonneg):
        k = sys.var_index(name)
        coeffs = tuple(Fraction(-1) if j == k else ZERO for j in range(n))
        constraints.append((coeffs, ZERO))
    found = set()
    for combo in itertools.combinations(range(len(constraints)), n):
        M = [constraints[i][0] for i in combo]
        rhs = [constraints[i][1] for i in combo]
        x = _solve_square(M, rhs)
        if x is None:
            continue
        ok = True
        for coeffs, b in constraints:
            if sum(c * v for c, v in zip(coeffs, x) if c) > b:
                ok = False
                break
        if ok:
            found.add(tuple(x))
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# JSON (all rationals as canonical "p/q" strings)
# ---------------------------------------------------------------------------


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_frac(s) -> Fraction:
    """Parse "p/q", decimal, or integer strings (and numbers) exactly."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        raise PreconditionError(
            "floating point input %r rejected; pass a string like '9/20'" % s
        )
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError("cannot parse rational from %r" % (s,)) from exc


def linsystem_to_obj(sys: LinSystem) -> dict:
    return {
        "vars": list(sys.vars),
        "rows": [
            {"c": [frac_str(c) for c in coeffs], "b": frac_str(rhs)}
            for coeffs, rhs in sys.rows
        ],
        "nonneg": sorted(sys.nonneg),
    }


def linsystem_from_obj(obj: dict) -> LinSystem:
    try:
        varnames = tuple(str(v) for v in obj["vars"])
        rows = tuple(
            (tuple(parse_frac(c) for c in row["c"]), parse_frac(row["b"]))
            for row in obj["rows"]
        )
        nonneg = frozenset(str(v) for v in obj.get("nonneg", []))
    except (KeyError, TypeError) as exc:
        raise PreconditionError("malformed LinSystem object: %s" % exc) from exc
    return LinSystem(varnames, rows, nonneg)
