"""Exact integer linear algebra on Python ints.

Matrices are lists of rows (lists of ints).  Vectors acting on the right are
columns; ``A @ x`` is ``matvec(A, x)``.  Nothing here uses floating point.

Two engines live here: dense Smith/Hermite forms for small and medium
matrices, and a sparse unit-pivot elimination (:func:`sparse_kernel`,
:class:`Presentation`) for the large, very sparse systems that come out of
bar resolutions and Sylvester equations.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from functools import reduce

# -- small helpers -----------------------------------------------------------


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(a, cols=None):
    if not a:
        return 0, (cols or 0)
    return len(a), len(a[0])


def transpose(a, cols=None):
    r, c = shape(a, cols)
    return [[a[i][j] for i in range(r)] for j in range(c)]


def matmul(a, b, inner=None):
    if not a:
        return []
    bt = transpose(b, cols=None) if b else []
    if not bt:
        cols = 0 if not b else len(b[0])
        return [[0] * cols for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hstack(*mats):
    mats = [m for m in mats if m and m[0]]
    if not mats:
        return []
    return [sum((m[i] for m in mats), []) for i in range(len(mats[0]))]


def vstack(*mats):
    return [list(r) for m in mats for r in m]


def columns(a):
    return transpose(a)


def from_columns(cols, nrows):
    if not cols:
        return [[] for _ in range(nrows)]
    return [[c[i] for c in cols] for i in range(nrows)]


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def det(a):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
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
        mkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * mkk - mik * row_k[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


# -- abelian group invariants ------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and each d > 1."""

    torsion: tuple = ()
    free_rank: int = 0

    @classmethod
    def from_factors(cls, factors, free_rank=0):
        """Normalize an arbitrary list of cyclic orders (0 means Z)."""
        free = free_rank + sum(1 for d in factors if d == 0)
        primes = {}
        for d in factors:
            d = abs(d)
            if d <= 1:
                continue
            for p, e in _factorize(d).items():
                primes.setdefault(p, []).append(p ** e)
        # recombine prime powers into an invariant-factor chain
        width = max((len(v) for v in primes.values()), default=0)
        chain = [1] * width
        for p, powers in primes.items():
            powers.sort()
            for i, q in enumerate(reversed(powers)):
                chain[width - 1 - i] *= q
        return cls(tuple(d for d in chain if d > 1), free)

    @property
    def order(self):
        if self.free_rank:
            return 0
        return math.prod(self.torsion)

    def is_trivial(self):
        return not self.torsion and not self.free_rank

    def __add__(self, other):
        return AbelianInvariants.from_factors(list(self.torsion) + list(other.torsion),
                                              self.free_rank + other.free_rank)

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_list(self):
        return list(self.torsion) + [0] * self.free_rank


def cyclic_group(d):
    return AbelianInvariants.from_factors([d])


def _factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- Smith normal form -------------------------------------------------------


@dataclass
class SmithForm:
    """``A = U S V`` with U, V unimodular; ``P = U^-1`` and ``Q = V^-1`` satisfy ``P A Q = S``."""

    U: list
    S: list
    V: list
    invariant_factors: list
    P: list = None
    Q: list = None

    @property
    def rank(self):
        return len(self.invariant_factors)


def snf(a, cols=None, transforms=True):
    """Smith normal form.  ``invariant_factors`` lists the nonzero diagonal entries."""
    m, n = shape(a, cols)
    A = [list(r) for r in a]
    P = identity(m) if transforms else None
    Pi = identity(m) if transforms else None
    Q = identity(n) if transforms else None
    Qi = identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            P[i], P[j] = P[j], P[i]
            for row in Pi:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in Q:
                row[i], row[j] = row[j], row[i]
            Qi[i], Qi[j] = Qi[j], Qi[i]

    def add_row(i, t, q):
        # row_i -= q * row_t
        ri, rt = A[i], A[t]
        for j in range(n):
            if rt[j]:
                ri[j] -= q * rt[j]
        if transforms:
            pi, pt = P[i], P[t]
            for j in range(m):
                if pt[j]:
                    pi[j] -= q * pt[j]
            for row in Pi:
                if row[i]:
                    row[t] += q * row[i]

    def add_col(j, t, q):
        # col_j -= q * col_t
        for row in A:
            if row[t]:
                row[j] -= q * row[t]
        if transforms:
            for row in Q:
                if row[t]:
                    row[j] -= q * row[t]
            qt, qj = Qi[t], Qi[j]
            for k in range(n):
                if qj[k]:
                    qt[k] += q * qj[k]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if transforms:
            P[i] = [-x for x in P[i]]
            for row in Pi:
                row[i] = -row[i]

    t = 0
    factors = []
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            done = True
            # clear column t
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        done = False
                        if abs(A[i][t]) < abs(A[t][t]):
                            swap_rows(i, t)
            # clear row t
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        done = False
                        if abs(A[t][j]) < abs(A[t][t]):
                            swap_cols(j, t)
            if not done:
                continue
            # divisibility of the trailing block
            d = A[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            negate_row(t)
        factors.append(A[t][t])
        t += 1
    return SmithForm(U=Pi, S=A, V=Qi, invariant_factors=factors, P=P, Q=Q)


def invariant_factors(a, cols=None):
    return snf(a, cols, transforms=False).invariant_factors


def rank(a, cols=None):
    return len(invariant_factors(a, cols))


def cokernel_invariants(a, ambient_rank):
    """Invariants of Z^ambient_rank / (column span of a)."""
    if not a or not a[0]:
        return AbelianInvariants((), ambient_rank)
    f = invariant_factors(a)
    return AbelianInvariants.from_factors(f, ambient_rank - len(f))


# -- Hermite normal form -----------------------------------------------------


def hnf_transform(a, cols=None):
    """Column-style HNF: returns ``(H, V, r)`` with ``A V = H``, V unimodular.

    H is lower echelon: the first r columns carry positive pivots with
    residues to the left of each pivot reduced into [0, pivot); the
    remaining columns are zero.
    """
    m, n = shape(a, cols)
    H = [list(r) for r in a]
    V = identity(n)

    def col_sub(j, t, q):
        for row in H:
            if row[t]:
                row[j] -= q * row[t]
        for row in V:
            if row[t]:
                row[j] -= q * row[t]

    def col_swap(i, j):
        for row in H:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def col_neg(j):
        for row in H:
            row[j] = -row[j]
        for row in V:
            row[j] = -row[j]

    c = 0
    for r in range(m):
        if c >= n:
            break
        row = H[r]
        while True:
            nz = [j for j in range(c, n) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda k: abs(row[k]))
            if j != c:
                col_swap(j, c)
            if len(nz) == 1:
                break
            for k in range(c + 1, n):
                if row[k]:
                    col_sub(k, c, row[k] // row[c])
        if row[c] == 0:
            continue
        if row[c] < 0:
            col_neg(c)
        p = row[c]
        for j in range(c):
            if row[j] < 0 or row[j] >= p:
                col_sub(j, c, row[j] // p)
        c += 1
    return H, V, c


def hnf(a, cols=None):
    return hnf_transform(a, cols)[0]


def lattice_basis(gens, dim):
    """A basis (as columns of a dim x r matrix) for the lattice spanned by ``gens`` (columns)."""
    if not gens or not gens[0]:
        return [[] for _ in range(dim)]
    H, _, r = hnf_transform(gens)
    return [row[:r] for row in H]


def same_lattice(a, b, dim):
    """Do the column spans of a and b coincide?"""
    ha, hb = lattice_basis(a, dim), lattice_basis(b, dim)
    return ha == hb


def kernel_basis(a, cols=None):
    """Columns form a saturated Z-basis of ker(a), in canonical (HNF) form."""
    m, n = shape(a, cols)
    if n == 0:
        return []
    if m == 0:
        return identity(n)
    _, V, r = hnf_transform(a, n)
    K = [row[r:] for row in V]
    if r == n:
        return [[] for _ in range(n)]
    return lattice_basis(K, n)


def solve_linear(a, b, cols=None):
    """Some integer X with ``a X = b``, or None if no integral solution exists."""
    m, n = shape(a, cols)
    bcols = len(b[0]) if b and b[0] is not None and len(b) else 0
    if m == 0:
        return zeros(n, bcols)
    H, V, r = hnf_transform(a, n)
    # pivot rows of the echelon form
    piv_rows = []
    c = 0
    for i in range(m):
        if c < r and H[i][c] != 0 and all(H[i][k] == 0 for k in range(c + 1, r)):
            piv_rows.append(i)
            c += 1
    X = zeros(n, bcols)
    for col in range(bcols):
        y = [0] * r
        for k, i in enumerate(piv_rows):
            s = b[i][col] - sum(H[i][j] * y[j] for j in range(k))
            if s % H[i][k]:
                return None
            y[k] = s // H[i][k]
        for i in range(m):
            if sum(H[i][j] * y[j] for j in range(r)) != b[i][col]:
                return None
        for i in range(n):
            X[i][col] = sum(V[i][j] * y[j] for j in range(r))
    return X


def left_inverse(k):
    """Integer L with ``L k = I`` for a saturated full-column-rank k."""
    m, q = shape(k)
    if q == 0:
        return []
    sf = snf(k)
    if sf.invariant_factors != [1] * q:
        raise ValueError("matrix is not a saturated embedding")
    top = [row for row in sf.P[:q]]
    return matmul(sf.Q, top)


def inverse_unimodular(a):
    n = len(a)
    x = solve_linear(a, identity(n))
    if x is None:
        raise ValueError("matrix is not unimodular")
    return x


def modp_kernel(a, m, cols=None):
    """Generators (columns, entries in [0, m)) of ker(a) over Z/m."""
    r, n = shape(a, cols)
    if n == 0:
        return []
    if r == 0:
        return identity(n)
    lifted = hstack([list(row) for row in a], [[m if i == j else 0 for j in range(r)] for i in range(r)])
    K = kernel_basis(lifted)
    proj = [row for row in K[:n]]
    gens = hstack(proj, [[m if i == j else 0 for j in range(n)] for i in range(n)])
    B = lattice_basis(gens, n)
    # drop generators that are zero mod m
    out_cols = []
    for col in transpose(B):
        v = [x % m for x in col]
        if any(v):
            out_cols.append(v)
    return from_columns(out_cols, n)


def is_unimodular(a):
    return len(a) == (len(a[0]) if a else 0) and abs(det(a)) == 1


# -- sparse elimination ------------------------------------------------------


def sparse_kernel(equations, nvars):
    """Z-basis (list of dense vectors) of {x : sum_v c_v x_v = 0 for every equation}.

    ``equations`` is an iterable of dicts ``{var: coeff}``.  Unit pivots are
    eliminated first (least fill); the leftover system goes to the dense
    Hermite path.  Returns ``(basis, free_vars)``: when the whole system
    reduced by unit pivots, each basis vector is 1 on its own free variable and
    0 on the other free variables.
    """
    eqs = {}
    occ = {}
    for k, e in enumerate(equations):
        e = {v: c for v, c in e.items() if c}
        if not e:
            continue
        eqs[k] = e
        for v in e:
            occ.setdefault(v, set()).add(k)
    heap = [(len(e), k) for k, e in eqs.items()]
    heapq.heapify(heap)
    elim = []  # (var, {var: coeff}) meaning x_var = sum coeff * x_other
    stuck = set()
    while heap:
        ln, k = heapq.heappop(heap)
        e = eqs.get(k)
        if e is None or len(e) != ln:
            continue
        units = [v for v, c in e.items() if c in (1, -1)]
        if not units:
            stuck.add(k)
            continue
        v = min(units, key=lambda w: (len(occ[w]), w))
        u = e[v]
        expr = {w: -u * c for w, c in e.items() if w != v}
        elim.append((v, expr))
        del eqs[k]
        for w in e:
            occ[w].discard(k)
        for k2 in list(occ.get(v, ())):
            e2 = eqs[k2]
            c2 = e2.pop(v)
            for w, cw in expr.items():
                nv = e2.get(w, 0) + c2 * cw
                if nv:
                    if w not in e2:
                        occ[w].add(k2)
                    e2[w] = nv
                else:
                    if w in e2:
                        del e2[w]
                        occ[w].discard(k2)
            occ[v].discard(k2)
            stuck.discard(k2)
            if e2:
                heapq.heappush(heap, (len(e2), k2))
            else:
                del eqs[k2]
        occ.pop(v, None)
    eliminated = {v for v, _ in elim}
    rest = [eqs[k] for k in sorted(eqs)]
    dense_vars = sorted({v for e in rest for v in e})
    dense_set = set(dense_vars)
    free_vars = [v for v in range(nvars) if v not in eliminated and v not in dense_set]
    partial = []
    for f in free_vars:
        partial.append({f: 1})
    if rest:
        pos = {v: i for i, v in enumerate(dense_vars)}
        A = [[0] * len(dense_vars) for _ in rest]
        for i, e in enumerate(rest):
            for v, c in e.items():
                A[i][pos[v]] = c
        K = kernel_basis(A)
        for col in transpose(K) if K and K[0] else []:
            partial.append({dense_vars[i]: x for i, x in enumerate(col) if x})
    basis = []
    for p in partial:
        x = dict(p)
        for v, expr in reversed(elim):
            s = 0
            for w, c in expr.items():
                xw = x.get(w)
                if xw:
                    s += c * xw
            if s:
                x[v] = s
        vec = [0] * nvars
        for v, c in x.items():
            vec[v] = c
        basis.append(vec)
    return basis, (free_vars if not rest else None)


class Presentation:
    """The abelian group Z^nrows / (span of relation columns), with explicit generators.

    Built by unit-pivot elimination followed by a dense Smith form on what is
    left.  ``torsion`` lists invariant factors > 1, ``torsion_gens`` vectors in
    Z^nrows generating the matching cyclic summands, and :meth:`coords` maps a
    vector to its coordinates (torsion part reduced mod the factors).
    """

    def __init__(self, relations, nrows):
        self.nrows = nrows
        cols = {}
        rowidx = {}
        for j, col in enumerate(relations):
            col = {i: c for i, c in col.items() if c}
            if not col:
                continue
            cols[j] = col
            for i in col:
                rowidx.setdefault(i, set()).add(j)
        heap = [(len(c), j) for j, c in cols.items()]
        heapq.heapify(heap)
        elim = []  # (row, {row: coeff}): generator e_row equals sum coeff * e_other
        while heap:
            ln, j = heapq.heappop(heap)
            col = cols.get(j)
            if col is None or len(col) != ln:
                continue
            units = [i for i, c in col.items() if c in (1, -1)]
            if not units:
                continue
            i = min(units, key=lambda r: (len(rowidx[r]), r))
            u = col[i]
            expr = {r: -u * c for r, c in col.items() if r != i}
            elim.append((i, expr))
            del cols[j]
            for r in col:
                rowidx[r].discard(j)
            for j2 in list(rowidx.get(i, ())):
                c2 = cols[j2]
                v = c2.pop(i)
                for r, cr in expr.items():
                    nv = c2.get(r, 0) + v * cr
                    if nv:
                        if r not in c2:
                            rowidx[r].add(j2)
                        c2[r] = nv
                    elif r in c2:
                        del c2[r]
                        rowidx[r].discard(j2)
                if c2:
                    heapq.heappush(heap, (len(c2), j2))
                else:
                    del cols[j2]
            rowidx.pop(i, None)
        self._elim = elim
        eliminated = {i for i, _ in elim}
        rest = [cols[j] for j in sorted(cols)]
        self._dense_rows = sorted({i for c in rest for i in c})
        self._alive = nrows - len(eliminated)
        pos = {r: k for k, r in enumerate(self._dense_rows)}
        self._pos = pos
        if rest:
            A = [[0] * len(rest) for _ in self._dense_rows]
            for j, c in enumerate(rest):
                for i, v in c.items():
                    A[pos[i]][j] = v
            sf = snf(A)
            self._P = sf.P
            factors = sf.invariant_factors
            U = sf.U
        else:
            self._P = []
            factors = []
            U = []
        d = len(self._dense_rows)
        self._factors = factors + [0] * (d - len(factors))
        self.free_rank = self._alive - len(factors)
        self.torsion = [f for f in factors if f > 1]
        self._torsion_pos = [k for k, f in enumerate(factors) if f > 1]
        self.torsion_gens = []
        for k in self._torsion_pos:
            vec = [0] * nrows
            for r, row in zip(self._dense_rows, U):
                vec[r] = row[k]
            self.torsion_gens.append(vec)

    @property
    def invariants(self):
        return AbelianInvariants(tuple(self.torsion), self.free_rank)

    def reduce(self, vec):
        """Rewrite ``vec`` in the surviving generators (dict row -> coeff)."""
        x = {i: c for i, c in enumerate(vec) if c} if isinstance(vec, list) else dict(vec)
        for i, expr in self._elim:
            c = x.pop(i, 0)
            if c:
                for r, cr in expr.items():
                    nv = x.get(r, 0) + c * cr
                    if nv:
                        x[r] = nv
                    else:
                        x.pop(r, None)
        return x

    def coords(self, vec):
        """``(torsion_coords, is_torsion)``: torsion coordinates mod the factors,
        and whether the element has zero free part."""
        x = self.reduce(vec)
        dense = [0] * len(self._dense_rows)
        free_elsewhere = False
        for r, c in x.items():
            k = self._pos.get(r)
            if k is None:
                free_elsewhere = True
            else:
                dense[k] = c
        y = matvec(self._P, dense) if self._P else []
        tors = [y[k] % self._factors[k] for k in self._torsion_pos]
        free_part = any(y[k] for k, f in enumerate(self._factors) if f == 0)
        return tors, not (free_elsewhere or free_part)


class Subquotient:
    """L / B for lattices B <= L <= Z^dim, L given by a basis, B by generators.

    ``invariants`` describes the quotient, ``gens`` are vectors of L lifting
    the cyclic generators, and :meth:`coords` maps a vector of L to its
    coordinates on them (torsion entries reduced, free entries exact).
    """

    def __init__(self, basis, sub_gens, dim):
        self.dim = dim
        self.basis = basis
        k = len(basis[0]) if basis and basis[0] else 0
        self.k = k
        b = len(sub_gens[0]) if sub_gens and sub_gens[0] else 0
        if k == 0:
            self._P, self._factors, self.gens = [], [], []
            self.invariants = AbelianInvariants()
            return
        if b:
            C = solve_linear(basis, sub_gens)
            if C is None:
                raise ValueError("sub_gens do not lie in the lattice")
        else:
            C = zeros(k, 1)
        sf = snf(C)
        f = sf.invariant_factors
        self._P = sf.P
        self._factors = f + [0] * (k - len(f))
        self._keep = [j for j, d in enumerate(self._factors) if d != 1]
        self.gens = [matvec(basis, [row[j] for row in sf.U]) for j in self._keep]
        self.invariants = AbelianInvariants(tuple(d for d in self._factors if d > 1),
                                            sum(1 for d in self._factors if d == 0))

    @property
    def factors(self):
        return [self._factors[j] for j in self._keep]

    def coords(self, vec):
        if self.k == 0:
            return []
        c = solve_linear(self.basis, [[x] for x in vec])
        if c is None:
            raise ValueError("vector is not in the lattice")
        y = matvec(self._P, [row[0] for row in c])
        return [y[j] % self._factors[j] if self._factors[j] else y[j] for j in self._keep]


def gcd_list(xs):
    return reduce(math.gcd, xs, 0)


def lcm_list(xs):
    return reduce(math.lcm, xs, 1)
