"""G-lattices and the constructions used on them.

A :class:`GLattice` stores one integer matrix per generator of its group,
acting on column vectors.  Basis conventions (fixed everywhere, since the
sequence builders rely on them):

* permutation lattice on points x_0..x_{n-1}: basis e_i = x_i
* augmentation kernel: a_i = x_i - x_{n-1}, i = 0..n-2
* tensor product: basis (i, j) in lexicographic order, index i*r2 + j
* Sym^2: m_i m_j for i <= j, lexicographic
* wedge^2: m_i ^ m_j for i < j, lexicographic
* direct sum: first summand's basis, then the second's
* induced lattice: (coset k, basis b) at index k*rank + b, cosets in BFS order
"""
from __future__ import annotations

import itertools
from math import comb

import numpy as np

from . import intlin
from .errors import BadParams, CapExceeded, GroupMismatch, NotSubgroup, RankTooSmall
from .permgrp import Perm, PermGroup, symmetric

_BOUND = 1 << 62


def as_array(a):
    """Integer matrix as an int64 array, or object dtype when entries are huge."""
    if isinstance(a, np.ndarray):
        return a
    try:
        return np.array(a, dtype=np.int64).reshape(len(a), -1) if len(a) else np.zeros((0, 0), dtype=np.int64)
    except OverflowError:
        return np.array(a, dtype=object)


def mat_mul(a, b):
    """Exact matrix product; falls back to Python ints when int64 could overflow."""
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    ma = int(np.abs(a).max()) if a.size else 0
    mb = int(np.abs(b).max()) if b.size else 0
    if ma * mb * inner < _BOUND:
        return a @ b
    out = np.dot(a.astype(object), b.astype(object))
    if all(abs(int(x)) < _BOUND for x in out.flat):
        return out.astype(np.int64)
    return out


def to_list(a):
    return [[int(x) for x in row] for row in np.asarray(a).tolist()] if np.asarray(a).size else \
        [[] for _ in range(np.asarray(a).shape[0])]


class GLattice:
    """A G-lattice: free Z-module of finite rank with one matrix per group generator."""

    modulus = None

    def __init__(self, group: PermGroup, generators, labels=None, name=None, rank=None, element_fn=None):
        mats = [as_array(g) for g in generators]
        if len(mats) != len(group.generators):
            raise BadParams(f"need {len(group.generators)} generator matrices, got {len(mats)}")
        if rank is None:
            rank = mats[0].shape[0] if mats else 0
        for m in mats:
            if m.shape != (rank, rank):
                raise BadParams("generator matrices must be square of size rank")
        self.group = group
        self.rank = rank
        self.gens = [self._reduce(m) for m in mats]
        self.labels = list(labels) if labels is not None else None
        self.name = name
        self._table = None
        # exact matrix of an arbitrary permutation, for lattices built from the
        # natural action; lets subgroups of huge groups avoid the full closure
        self.element_fn = element_fn

    def __repr__(self):
        return f"{type(self).__name__}({self.name or '?'}, rank={self.rank}, group={self.group.name})"

    def _reduce(self, m):
        return m

    def identity_matrix(self):
        return np.eye(self.rank, dtype=np.int64)

    def _mul(self, a, b):
        return self._reduce(mat_mul(a, b))

    def table(self):
        """Element -> matrix for every element of the group (needs the closure)."""
        if self._table is None:
            parents = self.group.bfs_parents()
            tab = {}
            for g in self.group.elements():
                p = parents[g]
                if p is None:
                    tab[g] = self.identity_matrix()
                else:
                    k, prev = p
                    tab[g] = self._mul(self.gens[k], tab[prev])
            self._table = tab
        return self._table

    def matrix_of(self, g):
        g = Perm(g)
        if g.is_identity():
            return self.identity_matrix()
        if g in self.group.generators:
            return self.gens[self.group.generators.index(g)]
        if self._table is not None and g in self._table:
            return self._table[g]
        if self.element_fn is not None:
            if g not in self.group:
                raise NotSubgroup(f"{g!r} is not in {self.group!r}")
            return self._reduce(as_array(self.element_fn(g)))
        if self._table is None:
            self.table()
        try:
            return self._table[g]
        except KeyError:
            raise NotSubgroup(f"{g!r} is not in {self.group!r}") from None

    def element_matrices(self):
        tab = self.table()
        return [tab[g] for g in self.group.elements()]

    def check_homomorphism(self, sample=None, seed=0):
        """Verify table(g h) == table(g) table(h), exhaustively or on a sample of pairs."""
        elts = self.group.elements()
        tab = self.table()
        if sample is None or len(elts) ** 2 <= sample:
            pairs = itertools.product(elts, elts)
        else:
            rng = np.random.default_rng(seed)
            idx = rng.integers(0, len(elts), size=(sample, 2))
            pairs = ((elts[i], elts[j]) for i, j in idx)
        for g, h in pairs:
            if not np.array_equal(tab[g * h], self._mul(tab[g], tab[h])):
                return False
        return True

    def is_permutation(self):
        return all(_is_perm_matrix(m) for m in self.gens)

    def is_monomial(self):
        return all(_is_monomial(m) for m in self.gens)

    def gen_lists(self):
        return [to_list(m) for m in self.gens]


class FinModule(GLattice):
    """(Z/m)^rank with a group action; matrices are kept reduced mod m."""

    def __init__(self, group, generators, modulus, labels=None, name=None, rank=None, element_fn=None):
        if modulus < 2:
            raise BadParams("modulus must be >= 2")
        self.modulus = modulus
        super().__init__(group, generators, labels, name, rank, element_fn)

    def _reduce(self, m):
        return m % self.modulus


def _is_perm_matrix(m):
    return bool(np.all((m == 0) | (m == 1)) and np.all(m.sum(axis=0) == 1) and np.all(m.sum(axis=1) == 1))


def _is_monomial(m):
    a = np.abs(m)
    return bool(np.all((a == 0) | (a == 1)) and np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1))


def _same_group(*lats):
    g = lats[0].group
    for m in lats[1:]:
        if m.group is not g and (m.group.degree != g.degree or m.group.generators != g.generators):
            raise GroupMismatch("lattices live over different groups")
    return g


# -- permutation lattices ----------------------------------------------------

def perm_lattice(group: PermGroup, points=None, act=None, name=None):
    """Z[X] for a G-set X.  Default X = {0..degree-1} with the natural action."""
    if points is None:
        points = list(range(group.degree))
        act = act or (lambda g, x: g[x])
    elif act is None:
        raise BadParams("a custom point set needs an action")
    idx = {x: i for i, x in enumerate(points)}

    def fn(s):
        m = np.zeros((len(points), len(points)), dtype=np.int64)
        for x in points:
            m[idx[act(s, x)], idx[x]] = 1
        return m

    mats = [fn(s) for s in group.generators]
    return GLattice(group, mats, labels=points, name=name or "Z[X]", rank=len(points), element_fn=fn)


def two_subsets_lattice(group, name=None):
    """Z[P_2(X)] on 2-subsets {i < j} of the natural points, lexicographic."""
    pts = list(itertools.combinations(range(group.degree), 2))
    return perm_lattice(group, pts, lambda g, p: tuple(sorted((g[p[0]], g[p[1]]))),
                        name=name or f"W({group.degree})")


def ordered_pairs_lattice(group):
    pts = [(i, j) for i in range(group.degree) for j in range(group.degree) if i != j]
    return perm_lattice(group, pts, lambda g, p: (g[p[0]], g[p[1]]), name="Z[pairs]")


def trivial_lattice(group, rank=1):
    return GLattice(group, [np.eye(rank, dtype=np.int64) for _ in group.generators],
                    name="Z" if rank == 1 else f"Z^{rank}", rank=rank,
                    element_fn=lambda g: np.eye(rank, dtype=np.int64))


def cosets(group: PermGroup, sub: PermGroup):
    """Left cosets gH in BFS order: ``(reps, coset_of)`` with coset_of[element] -> index."""
    if not sub.is_subgroup_of(group):
        raise NotSubgroup(f"{sub!r} is not a subgroup of {group!r}")
    helts = sub.elements()
    group.elements()
    coset_of = {}
    reps = [group.identity]
    for h in helts:
        coset_of[h] = 0
    k = 0
    while k < len(reps):
        r = reps[k]
        for s in group.generators:
            y = s * r
            if y not in coset_of:
                j = len(reps)
                reps.append(y)
                for h in helts:
                    coset_of[y * h] = j
        k += 1
    return reps, coset_of


def coset_lattice(group, sub, name=None):
    """Z[G/H], the permutation lattice on left cosets."""
    reps, coset_of = cosets(group, sub)
    n = len(reps)
    mats = []
    for s in group.generators:
        m = np.zeros((n, n), dtype=np.int64)
        for i, r in enumerate(reps):
            m[coset_of[s * r], i] = 1
        mats.append(m)
    return GLattice(group, mats, labels=list(range(n)), name=name or f"Z[G/{sub.name}]", rank=n)


def point_permutation(m):
    """The point permutation of a permutation matrix (column i -> row)."""
    return [int(np.nonzero(m[:, i])[0][0]) for i in range(m.shape[1])]


def aug_kernel(u: GLattice):
    """Kernel of the augmentation Z[X] -> Z, basis a_i = x_i - x_last."""
    n = u.rank
    if n < 2:
        raise RankTooSmall("augmentation kernel needs at least 2 points")
    if not u.is_permutation():
        raise BadParams("aug_kernel needs a permutation lattice")

    def from_perm_matrix(g):
        p = point_permutation(g)
        m = np.zeros((n - 1, n - 1), dtype=np.int64)
        last = p[n - 1]
        for i in range(n - 1):
            # g a_i = x_{p(i)} - x_{p(last)} = a_{p(i)} - a_{p(last)}
            if p[i] != n - 1:
                m[p[i], i] += 1
            if last != n - 1:
                m[last, i] -= 1
        return m

    mats = [from_perm_matrix(g) for g in u.gens]
    fn = None
    if u.element_fn is not None:
        fn = lambda g: from_perm_matrix(u.element_fn(g))  # noqa: E731
    labels = [("a", i) for i in range(n - 1)]
    return GLattice(u.group, mats, labels=labels, name=f"A({u.name})", rank=n - 1, element_fn=fn)


def aug_inclusion(n):
    """Matrix (n x n-1) of A -> U, a_i -> x_i - x_{n-1}."""
    m = intlin.zeros(n, n - 1)
    for i in range(n - 1):
        m[i][i] = 1
        m[n - 1][i] = -1
    return m


def augmentation(n):
    return [[1] * n]


# -- rank-one twists ---------------------------------------------------------

class Character:
    """A homomorphism G -> {+1, -1}, given by its values on generators."""

    def __init__(self, group, values):
        values = [int(v) for v in values]
        if len(values) != len(group.generators) or any(v not in (1, -1) for v in values):
            raise BadParams("character values must be +-1, one per generator")
        self.group = group
        self.values = values

    def extend(self):
        """Values on every element; raises if the generator values do not extend."""
        parents = self.group.bfs_parents()
        val = {}
        for g in self.group.elements():
            p = parents[g]
            val[g] = 1 if p is None else self.values[p[0]] * val[p[1]]
        for g in self.group.elements():
            for s, v in zip(self.group.generators, self.values):
                if val[s * g] != v * val[g]:
                    raise BadParams("values do not define a homomorphism")
        return val

    def is_trivial(self):
        return all(v == 1 for v in self.values)


def sign_character(group):
    return Character(group, [s.sign() for s in group.generators])


def rank1_twist(phi: Character, name=None):
    mats = [np.array([[v]], dtype=np.int64) for v in phi.values]
    return GLattice(phi.group, mats, name=name or "Z_phi", rank=1)


def sign_lattice(group):
    out = rank1_twist(sign_character(group), name="Z-")
    out.element_fn = lambda g: np.array([[g.sign()]], dtype=np.int64)
    return out


# -- functors ----------------------------------------------------------------

def dual(m: GLattice):
    """Hom_Z(M, Z): generator g acts by the transpose of rho(g)^-1."""
    mats = []
    for s, a in zip(m.group.generators, m.gens):
        inv = m.identity_matrix()
        for _ in range(s.order() - 1):
            inv = mat_mul(inv, a)
        mats.append(inv.T.copy())
    fn = None
    if m.element_fn is not None:
        fn = lambda g: np.array(m.element_fn(g.inverse())).T.copy()  # noqa: E731
    return GLattice(m.group, mats, labels=m.labels, name=f"dual({m.name})", rank=m.rank, element_fn=fn)


def dsum(m: GLattice, n: GLattice, *more):
    if more:
        return dsum(dsum(m, n), *more)
    _same_group(m, n)

    def block(a, b):
        z = np.zeros((m.rank + n.rank, m.rank + n.rank), dtype=object if object in (a.dtype, b.dtype) else np.int64)
        z[:m.rank, :m.rank] = a
        z[m.rank:, m.rank:] = b
        return z

    mats = [block(a, b) for a, b in zip(m.gens, n.gens)]
    fn = _compose_fn(lambda a, b: block(as_array(a), as_array(b)), m, n)
    labels = None
    if m.labels is not None and n.labels is not None:
        labels = [(0, x) for x in m.labels] + [(1, x) for x in n.labels]
    return GLattice(m.group, mats, labels=labels, name=f"{m.name}+{n.name}", rank=m.rank + n.rank, element_fn=fn)


def _compose_fn(op, *lats):
    if any(x.element_fn is None for x in lats):
        return None
    return lambda g: op(*(x.element_fn(g) for x in lats))


def tensor(m: GLattice, n: GLattice):
    _same_group(m, n)
    mats = [np.kron(a, b) for a, b in zip(m.gens, n.gens)]
    labels = None
    if m.labels is not None and n.labels is not None:
        labels = [(x, y) for x in m.labels for y in n.labels]
    fn = _compose_fn(lambda a, b: np.kron(as_array(a), as_array(b)), m, n)
    return GLattice(m.group, mats, labels=labels, name=f"{m.name}(x){n.name}", rank=m.rank * n.rank,
                    element_fn=fn)


def sym2_basis(r):
    return [(i, j) for i in range(r) for j in range(i, r)]


def wedge2_basis(r):
    return list(itertools.combinations(range(r), 2))


def sym2_map(f, r_src, r_tgt):
    """Sym^2 of a linear map f (r_tgt x r_src), as a list matrix."""
    f = to_list(f) if isinstance(f, np.ndarray) else f
    src, tgt = sym2_basis(r_src), sym2_basis(r_tgt)
    pos = {p: k for k, p in enumerate(tgt)}
    out = intlin.zeros(len(tgt), len(src))
    for col, (i, j) in enumerate(src):
        for k in range(r_tgt):
            a = f[k][i]
            b = f[k][j]
            for l in range(r_tgt):
                # f(m_i) f(m_j) coefficient on m_k m_l
                c = a * f[l][j]
                if c:
                    out[pos[(min(k, l), max(k, l))]][col] += c
    return out


def wedge2_map(f, r_src, r_tgt):
    f = to_list(f) if isinstance(f, np.ndarray) else f
    src, tgt = wedge2_basis(r_src), wedge2_basis(r_tgt)
    pos = {p: k for k, p in enumerate(tgt)}
    out = intlin.zeros(len(tgt), len(src))
    for col, (i, j) in enumerate(src):
        for k in range(r_tgt):
            a = f[k][i]
            if not a:
                continue
            for l in range(r_tgt):
                if k == l:
                    continue
                c = a * f[l][j]
                if c:
                    if k < l:
                        out[pos[(k, l)]][col] += c
                    else:
                        out[pos[(l, k)]][col] -= c
    return out


def sym2(m: GLattice):
    r = m.rank
    mats = [as_array(sym2_map(g, r, r)) for g in m.gens]
    labels = [("sym", i, j) for i, j in sym2_basis(r)]
    fn = _compose_fn(lambda a: as_array(sym2_map(a, r, r)), m)
    return GLattice(m.group, mats, labels=labels, name=f"Sym2({m.name})", rank=comb(r + 1, 2), element_fn=fn)


def wedge2(m: GLattice):
    r = m.rank
    mats = [as_array(wedge2_map(g, r, r)) for g in m.gens]
    labels = [("wedge", i, j) for i, j in wedge2_basis(r)]
    fn = _compose_fn(lambda a: as_array(wedge2_map(a, r, r)), m)
    return GLattice(m.group, mats, labels=labels, name=f"Wedge2({m.name})", rank=comb(r, 2), element_fn=fn)


def antisym_embedding(r):
    """wedge^2 M -> M (x) M, m_i ^ m_j -> m_i (x) m_j - m_j (x) m_i."""
    out = intlin.zeros(r * r, comb(r, 2))
    for col, (i, j) in enumerate(wedge2_basis(r)):
        out[i * r + j][col] = 1
        out[j * r + i][col] = -1
    return out


def sym_projection(r):
    """M (x) M -> Sym^2 M, m_i (x) m_j -> m_i m_j."""
    pos = {p: k for k, p in enumerate(sym2_basis(r))}
    out = intlin.zeros(comb(r + 1, 2), r * r)
    for i in range(r):
        for j in range(r):
            out[pos[(min(i, j), max(i, j))]][i * r + j] = 1
    return out


def tensor_map(f, g):
    return to_list(np.kron(as_array(f), as_array(g)))


# -- change of group ---------------------------------------------------------

def restrict(m: GLattice, h: PermGroup):
    if not h.is_subgroup_of(m.group):
        raise NotSubgroup(f"{h!r} is not a subgroup of {m.group!r}")
    mats = [m.matrix_of(s) for s in h.generators]
    if isinstance(m, FinModule):
        return FinModule(h, mats, m.modulus, labels=m.labels, name=m.name, rank=m.rank, element_fn=m.element_fn)
    return GLattice(h, mats, labels=m.labels, name=m.name, rank=m.rank, element_fn=m.element_fn)


def induce(m: GLattice, g: PermGroup):
    """Z[G] (x)_{Z[H]} M for an H-lattice M, H = m.group <= G."""
    h = m.group
    reps, coset_of = cosets(g, h)
    r = m.rank
    k = len(reps)
    mats = []
    for s in g.generators:
        big = np.zeros((k * r, k * r), dtype=np.int64)
        for i, rep in enumerate(reps):
            y = s * rep
            j = coset_of[y]
            hh = reps[j].inverse() * y
            big[j * r:(j + 1) * r, i * r:(i + 1) * r] = m.matrix_of(hh)
        mats.append(big)
    labels = [(i, b) for i in range(k) for b in range(r)]
    return GLattice(g, mats, labels=labels, name=f"Ind({m.name})", rank=k * r)


def mod_m(m: GLattice, modulus):
    return FinModule(m.group, m.gens, modulus, labels=m.labels, name=f"{m.name}/{modulus}", rank=m.rank,
                     element_fn=m.element_fn)


def sublattice(m: GLattice, basis, name=None):
    """The G-stable sublattice spanned by the columns of ``basis`` (must be a basis)."""
    K = basis
    q = len(K[0]) if K and K[0] else 0
    try:
        L = intlin.left_inverse(K)
        mats = [as_array(intlin.matmul(L, intlin.matmul(to_list(g), K))) if q else
                np.zeros((0, 0), dtype=np.int64) for g in m.gens]
    except ValueError:
        mats = []
        for g in m.gens:
            x = intlin.solve_linear(K, intlin.matmul(to_list(g), K))
            if x is None:
                raise BadParams("basis does not span a G-stable sublattice")
            mats.append(as_array(x))
    out = GLattice(m.group, mats, name=name or f"sub({m.name})", rank=q)
    for g, a in zip(m.gens, out.gens):
        if intlin.matmul(to_list(g), K) != intlin.matmul(K, to_list(a)):
            raise BadParams("basis does not span a G-stable sublattice")
    return out


# -- invariants and homs -----------------------------------------------------

def fixed_points(m: GLattice, h: PermGroup = None):
    """Saturated basis (rank x f, columns) of M^H; for FinModules, generators over Z/m."""
    h = h or m.group
    mats = [m.matrix_of(s) for s in h.generators]
    r = m.rank
    rows = []
    for a in mats:
        a = to_list(a)
        for i in range(r):
            rows.append([a[i][j] - (1 if i == j else 0) for j in range(r)])
    if isinstance(m, FinModule):
        if not rows:
            return intlin.identity(r)
        return intlin.modp_kernel(rows, m.modulus, r)
    if not rows:
        return intlin.identity(r)
    eqs = [{j: v for j, v in enumerate(row) if v} for row in rows]
    basis, _ = intlin.sparse_kernel(eqs, r)
    if not basis:
        return [[] for _ in range(r)]
    return intlin.lattice_basis(intlin.transpose(basis), r)


def norm_matrix(m: GLattice, h: PermGroup = None):
    h = h or m.group
    if h is m.group:
        mats = m.element_matrices()
    else:
        mats = [m.matrix_of(x) for x in h.elements()]
    total = np.zeros((m.rank, m.rank), dtype=np.int64)
    for a in mats:
        total = total + a
    return to_list(total)


def is_equivariant(f, m: GLattice, n: GLattice):
    f = as_array(f)
    for a, b in zip(m.gens, n.gens):
        lhs = mat_mul(f, a)
        rhs = mat_mul(b, f)
        if n.modulus:
            lhs, rhs = lhs % n.modulus, rhs % n.modulus
        if not np.array_equal(lhs, rhs):
            return False
    return True


def equivariant_homs(m: GLattice, n: GLattice):
    """Z-basis of Hom_G(M, N) as a list of (rank N x rank M) list matrices."""
    _same_group(m, n)
    rm, rn = m.rank, n.rank
    nvars = rm * rn
    eqs = []
    for a, b in zip(m.gens, n.gens):
        a, b = to_list(a), to_list(b)
        for i in range(rn):
            for j in range(rm):
                e = {}
                # (b F)_{ij} - (F a)_{ij}
                for c in range(rn):
                    if b[i][c]:
                        e[c * rm + j] = e.get(c * rm + j, 0) + b[i][c]
                for c in range(rm):
                    if a[c][j]:
                        e[i * rm + c] = e.get(i * rm + c, 0) - a[c][j]
                eqs.append(e)
    basis, _ = intlin.sparse_kernel(eqs, nvars)
    if basis:
        basis = intlin.transpose(intlin.lattice_basis(intlin.transpose(basis), nvars))
    return [[v[i * rm:(i + 1) * rm] for i in range(rn)] for v in basis]


def _coefficient_shells(k, bound):
    """Integer vectors in [-bound, bound]^k ordered by max-norm, then L1 norm."""
    yield from ()
    for b in range(1, bound + 1):
        shell = [c for c in itertools.product(range(-b, b + 1), repeat=k) if max(map(abs, c)) == b]
        shell.sort(key=lambda c: (sum(map(abs, c)), c))
        yield b, shell


def find_iso(m: GLattice, n: GLattice, bound=3, expand_to=5, max_candidates=2_000_000):
    """Search Hom_G(M, N) for a unimodular map with coefficients in [-B, B].

    Tries ``bound`` first and then widens up to ``expand_to``.  Returns a list
    matrix or None; None only means the search came up empty.
    """
    _same_group(m, n)
    if m.rank != n.rank:
        return None
    if m.rank == 0:
        return []
    basis = equivariant_homs(m, n)
    if not basis:
        return None
    k = len(basis)
    stack = np.array(basis, dtype=np.float64)
    exact = [as_array(b) for b in basis]
    seen_b = 0
    for limit in (bound, expand_to):
        for b, shell in _coefficient_shells(k, limit):
            if b <= seen_b:
                continue
            seen_b = b
            if len(shell) > max_candidates:
                return None
            for start in range(0, len(shell), 20000):
                chunk = np.array(shell[start:start + 20000], dtype=np.float64)
                mats = np.tensordot(chunk, stack, axes=(1, 0))
                dets = np.linalg.det(mats)
                for idx in np.nonzero(np.abs(np.abs(dets) - 1) < 0.25)[0]:
                    c = shell[start + idx]
                    f = sum(ci * e for ci, e in zip(c, exact))
                    fl = to_list(f)
                    if abs(intlin.det(fl)) == 1:
                        return fl
    return None


# -- named fixtures ----------------------------------------------------------

def natural_lattice(group):
    return perm_lattice(group, name=f"U({group.degree})")


FIXTURES = ("U", "A", "A2", "Sym2A", "Wedge2A", "sign", "Wedge2U", "W", "V")


def fixture(name, group_or_n):
    """Named lattices over G <= S_n acting on n points (default G = S_n)."""
    group = symmetric(group_or_n) if isinstance(group_or_n, int) else group_or_n
    n = group.degree
    u = natural_lattice(group)
    if name == "U":
        return u
    if name == "sign":
        return sign_lattice(group)
    if name == "W":
        return two_subsets_lattice(group)
    if name == "Wedge2U":
        out = wedge2(u)
        out.name = f"Wedge2U({n})"
        return out
    a = aug_kernel(u)
    a.name = f"A({n})"
    if name == "A":
        return a
    if name == "A2":
        out = tensor(a, a)
    elif name == "Sym2A":
        out = sym2(a)
    elif name == "Wedge2A":
        out = wedge2(a)
    elif name == "V":
        out = tensor(u, a)
    else:
        raise BadParams(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    out.name = f"{name}({n})"
    return out
