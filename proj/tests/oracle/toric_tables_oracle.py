#!/usr/bin/env python3
"""Exact combinatorial oracle for toric cone data and contact homology tables.

Builds, from scratch with exact rational arithmetic, everything the toric
module is expected to produce on the test corpora (the sphere family and the
C(k) family of cones):

  * extreme rays with their true active facet sets,
  * Smith normal form invariant factors of the normal matrix,
  * per-edge canonical lift rotation numbers for a given Reeb vector,
  * graded rank tables for a perturbed (nondegenerate) Reeb vector.

The table computation is repeated for several independent perturbation
directions; ranks must agree (they are invariants of the cone), which guards
against an error in the lift construction. Printed values are frozen into the
C++ unit and acceptance tests.
"""

from collections import Counter
from fractions import Fraction as Fr
from itertools import combinations
from math import gcd


# ---------- exact linear algebra over Q ----------

def mat_rank(rows):
    m = [list(map(Fr, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def kernel_vector(rows):
    """One nonzero rational kernel vector of an (n x (n+1)) rank-n system."""
    n1 = len(rows[0])
    m = [list(map(Fr, r)) for r in rows]
    pivots = []
    rank = 0
    for col in range(n1):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n1) if c not in pivots]
    assert len(free) == 1, "kernel not one dimensional"
    v = [Fr(0)] * n1
    v[free[0]] = Fr(1)
    for r, col in enumerate(pivots):
        v[col] = -m[r][free[0]]
    return v


def solve_exact(rows, rhs):
    """Solve A w = rhs for a consistent system, minimal pivot solution."""
    m = [list(map(Fr, r)) + [Fr(x)] for r, x in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(m)):
        assert m[i][ncols] == 0, "inconsistent system"
    w = [Fr(0)] * ncols
    for r, col in enumerate(pivots):
        w[col] = m[r][ncols]
    return w


# ---------- integer lattice ----------

def primitive(v):
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints]


def snf_invariants(mat):
    """Invariant factors of an integer matrix (classic pivoting algorithm)."""
    a = [row[:] for row in mat]
    rows, cols = len(a), len(a[0])
    factors = []
    top = 0
    while top < min(rows, cols):
        piv = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for r in a:
            r[top], r[j0] = r[j0], r[top]
        dirty = True
        while dirty:
            dirty = False
            for i in range(top + 1, rows):
                q = a[i][top] // a[top][top]
                if q:
                    for j in range(cols):
                        a[i][j] -= q * a[top][j]
                if a[i][top]:
                    a[top], a[i] = a[i], a[top]
                    dirty = True
            for j in range(top + 1, cols):
                q = a[top][j] // a[top][top]
                if q:
                    for i in range(rows):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    for i in range(rows):
                        a[i][top], a[i][j] = a[i][j], a[i][top]
                    dirty = True
        top += 1
    diag = [abs(a[i][i]) for i in range(top)]
    # enforce divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            lcm = diag[i] * diag[j] // g if g else 0
            diag[i], diag[j] = g, lcm
    return diag


def solve_eta(ms):
    """Deterministic integer solution of sum(eta_j * m_j) = gcd(m_j).

    Greedy extended-gcd chain in index order; this exact selection rule is
    mirrored by the C++ implementation so lift data matches bit for bit.
    """
    def egcd(x, y):
        if y == 0:
            return (x, 1, 0)
        g, u, v = egcd(y, x % y)
        return (g, v, u - (x // y) * v)

    eta = [0] * len(ms)
    g, acc = ms[0], [1] + [0] * (len(ms) - 1)
    for j in range(1, len(ms)):
        g2, u, v = egcd(g, ms[j])
        acc = [u * e for e in acc]
        acc[j] = v
        g = g2
    return g, acc


# ---------- cone machinery ----------

def facet_values(normals, v):
    return [sum(Fr(a) * b for a, b in zip(nu, v)) for nu in normals]


def extreme_rays(normals, n):
    d = len(normals)
    seen = {}
    for S in combinations(range(d), n):
        sub = [normals[j] for j in S]
        if mat_rank(sub) != n:
            continue
        v = kernel_vector(sub)
        vals = facet_values(normals, v)
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            v = [-x for x in v]
            vals = [-x for x in vals]
        else:
            continue
        e = primitive(v)
        vals = facet_values(normals, e)
        active = tuple(j for j in range(d) if vals[j] == 0)
        seen[tuple(e)] = active
    return [(list(e), act) for e, act in sorted(seen.items())]


def check_good(normals, n, rays):
    d = len(normals)
    for e, act in rays:
        assert len(act) == n, f"edge {e}: active set size {len(act)} != {n}"
    # all faces as intersections of ray active sets
    face_sets = set()
    for r in range(1, len(rays) + 1):
        for combo in combinations(range(len(rays)), r):
            act = set(rays[combo[0]][1])
            for i in combo[1:]:
                act &= set(rays[i][1])
            dim = mat_rank([rays[i][0] for i in combo])
            if act and 1 <= (n + 1 - dim) <= n:
                face_sets.add((tuple(sorted(act)), n + 1 - dim))
    for act, codim in sorted(face_sets):
        assert len(act) == codim, f"face {act}: {len(act)} facets, codim {codim}"
        inv = snf_invariants([list(normals[j]) for j in act])
        assert all(x == 1 for x in inv), f"face {act}: SNF {inv}"
    return True


def lift_rotation_numbers(normals, n, reeb, e, active):
    d = len(normals)
    b = sum(Fr(a) * x for a, x in zip(e, reeb))
    assert b > 0, "Reeb vector not positive on edge"
    inactive = [j for j in range(d) if j not in active]
    ms = [int(sum(a * x for a, x in zip(e, normals[j]))) for j in inactive]
    assert all(m >= 1 for m in ms)
    g, eta = solve_eta(ms)
    assert g == 1, f"pi1 obstruction on edge {e}: gcd {g}"
    rhs = [Fr(reeb[i]) - b * sum(eta[t] * normals[j][i] for t, j in enumerate(inactive))
           for i in range(n + 1)]
    cols = [[normals[j][i] for j in active] for i in range(n + 1)]
    w = solve_exact(cols, rhs)
    cs = [Fr(0)] * d
    for t, j in enumerate(active):
        cs[j] = w[t] / b
    for t, j in enumerate(inactive):
        cs[j] = Fr(eta[t])
    return b, cs


def rho(x: Fr) -> int:
    if x.denominator == 1:
        return 2 * int(x)
    return 2 * (x.numerator // x.denominator) + 1


def hc_table(normals, n, reeb, degree_max):
    rays = extreme_rays(normals, n)
    ranks = Counter()
    orbits = []
    for idx, (e, act) in enumerate(rays):
        b, cs = lift_rotation_numbers(normals, n, reeb, e, act)
        mean_sum = sum(2 * c for c in cs)
        assert mean_sum > 0, f"edge {e}: mean rotation sum {mean_sum} <= 0"
        N = 1
        while not (N * mean_sum - n > degree_max):
            mu = sum(rho(N * c) for c in cs)
            assert (mu - n) % 2 == 0, f"parity violation: mu={mu} n={n}"
            if mu <= degree_max:
                ranks[mu] += 1
                orbits.append((idx, N, mu))
            N += 1
    return dict(ranks), orbits, rays


# ---------- corpora ----------

def sphere_cone(n):
    nus = []
    for j in range(n):
        nus.append([1 if i == j else 0 for i in range(n + 1)])
    last = [-1] * n + [1]
    nus.append(last)
    return nus


def ck_cone(k):
    return [[1, 0, 1], [0, -1, 1], [0, k, 1], [-1, 2 * k - 1, 1]]


def perturbed_reeb(normals, ts):
    d = len(normals)
    n1 = len(normals[0])
    return [sum((1 + ts[j]) * Fr(normals[j][i]) for j in range(d)) for i in range(n1)]


PERTURBATIONS = [
    [Fr(1, 1009), Fr(2, 1013), Fr(3, 1019), Fr(5, 1021)],
    [Fr(5, 1021), Fr(3, 1019), Fr(2, 1013), Fr(1, 1009)],
    [Fr(-2, 1013), Fr(3, 1019), Fr(-1, 1009), Fr(5, 1021)],
]


def run_cone(label, normals, n, degree_max):
    print(f"== {label} (n={n}, d={len(normals)}) ==")
    rays = extreme_rays(normals, n)
    check_good(normals, n, rays)
    inv = snf_invariants([row[:] for row in normals])
    print(f"  normal SNF invariants: {inv} (pi1 {'trivial' if all(x==1 for x in inv) else 'NONTRIVIAL'})")
    for e, act in rays:
        print(f"  ray {e} active {list(act)}")
    reeb0 = [sum(Fr(normals[j][i]) for j in range(len(normals))) for i in range(n + 1)]
    print(f"  sum-of-normals Reeb: {reeb0}")
    for idx, (e, act) in enumerate(rays):
        b, cs = lift_rotation_numbers(normals, n, reeb0, e, act)
        print(f"    edge {idx}: b={b} c={[str(c) for c in cs]} mu_simple={sum(rho(c) for c in cs)}")
    tables = []
    for ts in PERTURBATIONS:
        reeb = perturbed_reeb(normals, ts[: len(normals)])
        ranks, orbits, _ = hc_table(normals, n, reeb, degree_max)
        tables.append(ranks)
    assert tables[0] == tables[1] == tables[2], f"perturbation dependence! {tables}"
    print(f"  ranks (degree<={degree_max}): " +
          " ".join(f"{dd}:{tables[0][dd]}" for dd in sorted(tables[0])))
    nz = sorted(dd for dd, r in tables[0].items() if r > 0)
    print(f"  k_minus={nz[0] if nz else None}")
    print()
    return tables[0]


def main():
    for n in (1, 2, 3):
        ranks = run_cone(f"sphere S^{2*n+1}", sphere_cone(n), n, n + 12)
        expect = {n + 2 + 2 * j: 1 for j in range((12 - 2) // 2 + 1) if n + 2 + 2 * j <= n + 12}
        assert ranks == expect, f"sphere n={n}: {ranks} != {expect}"
        print(f"  sphere n={n} matches rank-1-at-(n+2+2j) pattern")
        print()

    for k in (0, 1, 2, 3):
        ranks = run_cone(f"C({k})", ck_cone(k), 2, 12)
        expect = {}
        for deg in range(0, 13, 2):
            expect[deg] = k if deg == 0 else (2 * k + 1 if deg == 2 else 2 * k + 2)
        expect = {dd: r for dd, r in expect.items() if r > 0}
        assert ranks == expect, f"C({k}): {ranks} != {expect}"
        print(f"  C({k}) matches (k, 2k+1, 2k+2, ...) pattern")
        print()

    print("== SNF example {(2,1),(0,1)} ==")
    inv = snf_invariants([[2, 1], [0, 1]])
    print(f"  invariants {inv} -> group Z/{inv[-1]}")


if __name__ == "__main__":
    main()
