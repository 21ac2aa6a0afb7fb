"""Exact integer/rational matrix algebra and rational linear feasibility.

All arithmetic in this package runs on Python ints and ``fractions.Fraction``;
floating point is never used.  Matrices are tuples of row tuples, vectors are
plain tuples.  Sizes are desk-scale (dimensions below ~15), so the simple
dense algorithms here are entirely adequate.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]

Scalar = int | Fraction


def as_int_matrix(rows: Iterable[Sequence[int]]) -> IntMat:
    """Freeze ``rows`` into an integer matrix, checking shape and integrality."""
    out = []
    width = None
    for row in rows:
        tup = tuple(int(x) for x in row)
        if any(x != y for x, y in zip(tup, row)):
            raise ValueError("matrix entries must be integers")
        if width is None:
            width = len(tup)
        elif len(tup) != width:
            raise ValueError("ragged matrix rows")
        out.append(tup)
    return tuple(out)


def identity_matrix(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[Scalar]]) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(zip(*a)) if a else ()


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot product")
    return sum(x * y for x, y in zip(u, v))


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def vec_scale(c: Scalar, v: Sequence[Scalar]):
    return tuple(c * x for x in v)


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]):
    return tuple(x - y for x, y in zip(u, v))


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]):
    return tuple(x + y for x, y in zip(u, v))


def det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of non-square matrix")
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over Q; accepts int or Fraction entries."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c]
        for i in range(r + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / inv
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def _row_axpy(row: list[int], other: list[int], q: int) -> None:
    for j in range(len(row)):
        row[j] -= q * other[j]


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ a == h``; pivots are
    positive, entries above a pivot are reduced into ``[0, pivot)``.  Pivot
    selection is by minimal absolute value then minimal row index, so the
    output is deterministic.
    """
    mat = as_int_matrix(a)
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    h = [list(row) for row in mat]
    u = [list(row) for row in identity_matrix(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][c]), i))
            if i0 != r:
                h[r], h[i0] = h[i0], h[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    _row_axpy(h[i], h[r], q)
                    _row_axpy(u[i], u[r], q)
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q != 0:
                _row_axpy(h[i], h[r], q)
                _row_axpy(u[i], u[r], q)
        r += 1
    return tuple(tuple(row) for row in h), tuple(tuple(row) for row in u)


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Elementary divisors ``d_1 | d_2 | ...`` (nonzero Smith diagonal)."""
    mat = as_int_matrix(a)
    m = [list(row) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    divisors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        entries = [
            (abs(m[i][j]), i, j)
            for i in range(t, nrows)
            for j in range(t, ncols)
            if m[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, nrows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    _row_axpy(m[i], m[t], q)
            if any(m[i][t] != 0 for i in range(t + 1, nrows)):
                # remainder became the smaller pivot; move it up and repeat
                i0 = min(
                    (i for i in range(t, nrows) if m[i][t] != 0),
                    key=lambda i: (abs(m[i][t]), i),
                )
                m[t], m[i0] = m[i0], m[t]
                continue
            for j in range(t + 1, ncols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    for row in m:
                        row[j] -= q * row[t]
            if any(m[t][j] != 0 for j in range(t + 1, ncols)):
                j0 = min(
                    (j for j in range(t, ncols) if m[t][j] != 0),
                    key=lambda j: (abs(m[t][j]), j),
                )
                for row in m:
                    row[t], row[j0] = row[j0], row[t]
                continue
            # pivot must divide the remaining block for the divisor chain
            bad = next(
                (
                    (i, j)
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if m[i][j] % m[t][t] != 0
                ),
                None,
            )
            if bad is None:
                break
            bi, _ = bad
            for j in range(len(m[t])):
                m[t][j] += m[bi][j]
        divisors.append(abs(m[t][t]))
        t += 1
    return tuple(divisors)


def primitive_part(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    vec = tuple(int(x) for x in v)
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("primitive part of the zero vector is undefined")
    return tuple(x // g for x in vec)


def primitive_rational(v: Sequence[Scalar]) -> IntVec:
    """Scale a nonzero rational vector by a positive rational to a primitive
    integer vector."""
    fracs = [Fraction(x) for x in v]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    return primitive_part(ints)


def integer_kernel(a: Sequence[Sequence[int]]) -> IntMat:
    """Canonical (HNF) lattice basis of ``{c in Z^m : c . a = 0}``, as rows.

    The kernel lattice is saturated, so every basis row is itself primitive.
    """
    mat = as_int_matrix(a)
    if not mat:
        return ()
    h, u = hermite_normal_form(mat)
    zero_rows = tuple(u[i] for i in range(len(h)) if all(x == 0 for x in h[i]))
    if not zero_rows:
        return ()
    hk, _ = hermite_normal_form(zero_rows)
    return tuple(row for row in hk if any(x != 0 for x in row))


def lin_solve(
    a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]
) -> Optional[RatVec]:
    """One exact solution of ``a @ x = b`` (free variables set to zero).

    Returns None when the system is inconsistent.  Pivoting is first-nonzero,
    so the answer is deterministic; when ``a`` has full column rank the
    solution is the unique one.
    """
    nrows = len(a)
    if nrows == 0:
        return ()
    ncols = len(a[0])
    work = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if work[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row_idx, col_idx in pivots:
        x[col_idx] = work[row_idx][ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Rational linear feasibility via exact Fourier-Motzkin elimination
# ---------------------------------------------------------------------------

Constraint = tuple[tuple[Scalar, ...], Scalar]  # coeffs . x  >=  rhs   (or == rhs)


def _normalize_constraint(coeffs: Sequence[Scalar], rhs: Scalar) -> Constraint:
    """Scale by a positive rational so all entries are coprime integers."""
    fracs = [Fraction(x) for x in coeffs] + [Fraction(rhs)]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def _combine(pos: Constraint, neg: Constraint, var: int) -> Constraint:
    """Positive combination of a lower and an upper bound killing ``var``."""
    (ac, ar), (bc, br) = pos, neg
    mp = -bc[var]
    mn = ac[var]
    coeffs = tuple(mp * x + mn * y for x, y in zip(ac, bc))
    return _normalize_constraint(coeffs, mp * ar + mn * br)


def feasible_point(
    ineqs: Sequence[tuple[Sequence[Scalar], Scalar]],
    eqs: Sequence[tuple[Sequence[Scalar], Scalar]] = (),
    num_vars: Optional[int] = None,
) -> Optional[RatVec]:
    """Exact feasibility of ``{x : eq.x = rhs, ineq.x >= rhs}`` over Q.

    Equalities are eliminated by substitution first; the remaining system is
    projected variable by variable with Fourier-Motzkin elimination, and a
    feasible point is reconstructed by walking the eliminations backwards.
    Returns a certificate vector, or None when the system is infeasible.
    """
    if num_vars is None:
        for coeffs, _ in itertools.chain(ineqs, eqs):
            num_vars = len(coeffs)
            break
        else:
            raise ValueError("num_vars required for an empty system")
    n = num_vars

    work_eqs = [([Fraction(x) for x in c], Fraction(r)) for c, r in eqs]
    work_ineqs = [([Fraction(x) for x in c], Fraction(r)) for c, r in ineqs]
    if any(len(c) != n for c, _ in itertools.chain(work_eqs, work_ineqs)):
        raise ValueError("constraint arity mismatch")

    # substitute equalities away, remembering how to undo each substitution
    subs: list[tuple[int, list[Fraction], Fraction]] = []
    active = set(range(n))
    while work_eqs:
        coeffs, rhs = work_eqs.pop(0)
        var = next((v for v in sorted(active, reverse=True) if coeffs[v] != 0), None)
        if var is None:
            if rhs != 0:
                return None
            continue
        pivot = coeffs[var]
        expr = [-c / pivot for c in coeffs]
        expr[var] = Fraction(0)
        const = rhs / pivot
        subs.append((var, expr, const))
        active.discard(var)

        def substitute(c: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
            f = c[var]
            if f == 0:
                return c, r
            out = [x + f * e for x, e in zip(c, expr)]
            out[var] = Fraction(0)
            return out, r - f * const

        work_eqs = [substitute(c, r) for c, r in work_eqs]
        work_ineqs = [substitute(c, r) for c, r in work_ineqs]

    constraints = {_normalize_constraint(c, r) for c, r in work_ineqs}
    elim_order = sorted(active, reverse=True)
    records: list[tuple[int, list[Constraint], list[Constraint]]] = []
    for var in elim_order:
        pos = [c for c in constraints if c[0][var] > 0]
        neg = [c for c in constraints if c[0][var] < 0]
        zero = [c for c in constraints if c[0][var] == 0]
        records.append((var, pos, neg))
        constraints = set(zero)
        for p in pos:
            for q in neg:
                constraints.add(_combine(p, q, var))
    for coeffs, rhs in constraints:
        if all(x == 0 for x in coeffs) and rhs > 0:
            return None

    x = [Fraction(0)] * n
    for var, pos, neg in reversed(records):
        lows = [
            (Fraction(r) - sum(Fraction(c[j]) * x[j] for j in range(n) if j != var))
            / c[var]
            for c, r in pos
        ]
        highs = [
            (Fraction(r) - sum(Fraction(c[j]) * x[j] for j in range(n) if j != var))
            / c[var]
            for c, r in neg
        ]
        lo = max(lows) if lows else None
        hi = min(highs) if highs else None
        if lo is not None and hi is not None:
            if lo > hi:
                raise AssertionError("inconsistent bounds after elimination")
            x[var] = (lo + hi) / 2
        elif lo is not None:
            x[var] = lo
        elif hi is not None:
            x[var] = hi
    for var, expr, const in reversed(subs):
        x[var] = const + sum(e * v for e, v in zip(expr, x))
    return tuple(x)


def strict_positive_kernel_exists(a: Sequence[Sequence[int]]) -> Optional[RatVec]:
    """Strictly positive rational ``c`` with ``c . a = 0``, or None.

    Strict positivity is homogenized as ``c_i >= 1`` (any strictly positive
    solution scales up to one of that form, and down again to the positive
    integer relations of interest).
    """
    mat = as_int_matrix(a)
    k = len(mat)
    if k == 0:
        return None
    ncols = len(mat[0])
    eqs = [(tuple(mat[i][j] for i in range(k)), 0) for j in range(ncols)]
    ineqs = [(tuple(1 if i == t else 0 for i in range(k)), 1) for t in range(k)]
    return feasible_point(ineqs, eqs, num_vars=k)
