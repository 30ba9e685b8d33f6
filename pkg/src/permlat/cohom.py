"""Group cohomology of G-lattices and finite G-modules.

H^i is computed from the normalized inhomogeneous bar complex: cochains are
functions on (H \\ {1})^i.  For a lattice M and i >= 1, H^i(H, M) is finite
and C^i / Z^i is free, so H^i is exactly the torsion subgroup of
coker(d^{i-1}); only the previous coboundary is ever built.  Modules over
Z/m go through the subquotient {x : d^i x = 0 mod m} / (im d^{i-1} + m Z^N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import glat, intlin
from .errors import BadParams, CapExceeded, NotSubgroup, SequenceNotVerified
from .intlin import AbelianInvariants
from .permgrp import PermGroup, cyclic_subgroup_reps, orbit_sizes

BAR_CAPS = {1: 192, 2: 24}


@dataclass
class CohomGroup:
    degree: int
    group: PermGroup
    coeffs: object
    invariants: AbelianInvariants
    reps: list
    path: str = "bar"
    _elements: list = field(default=None, repr=False)
    _engine: object = field(default=None, repr=False)

    def coords(self, cocycle):
        """Coordinates of a cocycle on ``reps`` (entries mod the invariant factors)."""
        if isinstance(self._engine, intlin.Presentation):
            tors, ok = self._engine.coords(cocycle)
            if not ok:
                raise ValueError("vector is not a cocycle")
            return tors
        return self._engine.coords(cocycle)

    @property
    def factors(self):
        return list(self.invariants.torsion)

    def to_dict(self):
        return {"group": getattr(self.group, "name", None), "coefficients": getattr(self.coeffs, "name", None),
                "degree": self.degree, "invariants": self.invariants.to_list(), "path": self.path}


@dataclass
class ShaGroup:
    degree: int
    group: PermGroup
    coeffs: object
    invariants: AbelianInvariants
    witnesses: list
    ambient: CohomGroup = None
    cyclic_count: int = 0
    path: str = "bar"
    label: str = None

    def to_dict(self):
        return {"group": getattr(self.group, "name", None), "coefficients": getattr(self.coeffs, "name", None),
                "degree": self.degree, "invariants": self.invariants.to_list(), "path": self.path,
                "cyclic_subgroups": self.cyclic_count}


# -- Tate groups -------------------------------------------------------------

def _element_matrices(h: PermGroup, m):
    elts = h.elements()
    return elts, [glat.to_list(m.matrix_of(g)) for g in elts]


def _check_sub(h, m):
    if not h.is_subgroup_of(m.group):
        raise NotSubgroup(f"{h!r} is not a subgroup of {m.group!r}")


def tate_h0(h: PermGroup, m):
    """M^H / N_H M."""
    _check_sub(h, m)
    if m.modulus:
        raise BadParams("Tate groups are implemented for lattices only")
    fixed = glat.fixed_points(m, h)
    f = len(fixed[0]) if fixed and fixed[0] else 0
    if f == 0:
        return AbelianInvariants()
    norm = glat.norm_matrix(m, h)
    coords = intlin.solve_linear(fixed, norm)
    return intlin.cokernel_invariants(coords, f)


def tate_hm1(h: PermGroup, m):
    """ker(N_H) / I_H M, with I_H M spanned by (rho(s) - 1) M over generators s."""
    _check_sub(h, m)
    if m.modulus:
        raise BadParams("Tate groups are implemented for lattices only")
    norm = glat.norm_matrix(m, h)
    ker = intlin.kernel_basis(norm, m.rank)
    k = len(ker[0]) if ker and ker[0] else 0
    if k == 0:
        return AbelianInvariants()
    r = m.rank
    gens = []
    for s in h.generators:
        a = glat.to_list(m.matrix_of(s))
        gens.append([[a[i][j] - (i == j) for j in range(r)] for i in range(r)])
    if not gens:
        return AbelianInvariants((), k)
    aug = intlin.hstack(*gens)
    coords = intlin.solve_linear(ker, aug)
    return intlin.cokernel_invariants(coords, k)


# -- bar complex -------------------------------------------------------------

class BarComplex:
    """Normalized inhomogeneous cochains of H with coefficients in M (restricted to H)."""

    def __init__(self, h: PermGroup, m):
        _check_sub(h, m)
        self.group = h
        self.m = m
        self.rank = m.rank
        self.elements, mats = _element_matrices(h, m)
        self.mats = mats
        idx = {g: i for i, g in enumerate(self.elements)}
        self.index = idx
        n = len(self.elements)
        # elements[0] is the identity; cochain slots use positions 1..n-1
        self.k = n - 1
        self.mul = [[idx[a * b] for b in self.elements] for a in self.elements] if n <= 4096 else None
        self._mul_cache = {}

    def dim(self, i):
        return self.k ** i * self.rank

    def slot(self, tup, b):
        """Flat index of the cochain coordinate (g_1..g_i ; basis b), g_j as element indices >= 1."""
        pos = 0
        for t in tup:
            pos = pos * self.k + (t - 1)
        return pos * self.rank + b

    def product(self, a, b):
        if self.mul is not None:
            return self.mul[a][b]
        return self.index[self.elements[a] * self.elements[b]]

    def _tuples(self, length):
        if length == 0:
            yield ()
            return
        for t in self._tuples(length - 1):
            for g in range(1, self.k + 1):
                yield t + (g,)

    def coboundary_columns(self, i):
        """d^i : C^i -> C^{i+1} as a list of sparse columns {row: coeff}."""
        r = self.rank
        cols = [dict() for _ in range(self.dim(i))]

        def add(col, row, c):
            d = cols[col]
            v = d.get(row, 0) + c
            if v:
                d[row] = v
            else:
                d.pop(row, None)

        for tup in self._tuples(i + 1):
            g1 = tup[0]
            a1 = self.mats[g1]
            rest = tup[1:]
            inner = []
            for j in range(i):
                p = self.product(tup[j], tup[j + 1])
                if p != 0:
                    inner.append(((-1) ** (j + 1), tup[:j] + (p,) + tup[j + 2:]))
            last_sign = (-1) ** (i + 1)
            head = tup[:i]
            for a in range(r):
                row = self.slot(tup, a)
                ra = a1[a]
                for b in range(r):
                    if ra[b]:
                        add(self.slot(rest, b), row, ra[b])
                for sign, t in inner:
                    add(self.slot(t, a), row, sign)
                add(self.slot(head, a), row, last_sign)
        return cols

    def dense(self, i):
        cols = self.coboundary_columns(i)
        out = intlin.zeros(self.dim(i + 1), self.dim(i))
        for j, col in enumerate(cols):
            for row, c in col.items():
                out[row][j] = c
        return out

    def evaluate(self, i, ops):
        """Apply d^i to a cochain vector (used by checks)."""
        cols = self.coboundary_columns(i)
        out = [0] * self.dim(i + 1)
        for j, x in enumerate(ops):
            if x:
                for row, c in cols[j].items():
                    out[row] += c * x
        return out


def restrict_cochain(vec, big_elements, small_elements, i, rank):
    """Restrict a normalized i-cochain to a subgroup (element lists start with 1)."""
    index = {g: k for k, g in enumerate(big_elements)}
    kb, ks = len(big_elements) - 1, len(small_elements) - 1
    pos = [index[g] - 1 for g in small_elements[1:]]
    out = [0] * (ks ** i * rank)
    for flat in range(ks ** i):
        big, rem = 0, flat
        weight = 1
        for _ in range(i):
            big += pos[rem % ks] * weight
            rem //= ks
            weight *= kb
        out[flat * rank:(flat + 1) * rank] = vec[big * rank:(big + 1) * rank]
    return out


def _cap_check(i, order, caps):
    caps = caps or BAR_CAPS
    cap = caps.get(i, BAR_CAPS[i])
    if order > cap:
        raise CapExceeded(f"bar complex H^{i}: |H| = {order} exceeds cap {cap}")


def h_bar(i, h: PermGroup, coeffs, caps=None):
    """H^i(H, coeffs) for i in {1, 2} from the bar complex, with cocycle representatives."""
    if i not in (1, 2):
        raise BadParams("h_bar handles degrees 1 and 2")
    _cap_check(i, h.order(), caps)
    bar = BarComplex(h, coeffs)
    n_i = bar.dim(i)
    if coeffs.modulus:
        mod = coeffs.modulus
        d_prev = bar.dense(i - 1)
        d_cur = bar.dense(i)
        # cocycles mod m: x with d_cur x in m Z^N'
        cocycles = intlin.modp_kernel(d_cur, mod, n_i) if d_cur else intlin.identity(n_i)
        gens = intlin.hstack(cocycles, [[mod if a == b else 0 for b in range(n_i)] for a in range(n_i)]) \
            if cocycles and cocycles[0] else [[mod if a == b else 0 for b in range(n_i)] for a in range(n_i)]
        lat = intlin.lattice_basis(gens, n_i)
        sub = intlin.hstack(d_prev, [[mod if a == b else 0 for b in range(n_i)] for a in range(n_i)])
        engine = intlin.Subquotient(lat, sub, n_i)
        inv = engine.invariants
        reps = [[x % mod for x in v] for v in engine.gens]
        return CohomGroup(i, h, coeffs, inv, reps, "bar", bar.elements, engine)
    cols = bar.coboundary_columns(i - 1)
    pres = intlin.Presentation(cols, n_i)
    inv = AbelianInvariants(tuple(pres.torsion), 0)
    return CohomGroup(i, h, coeffs, inv, pres.torsion_gens, "bar", bar.elements, pres)


def h1_dual_fast(h: PermGroup, m):
    """H^1(H, M) via the duality H^1(H, M) ~ Hom(Tate H^-1(H, M*), Q/Z)."""
    inv = tate_hm1(h, glat.dual(m))
    return inv


def h1_aug_formula(h: PermGroup):
    """H^1(H, A) = Z/d with d the gcd of the orbit sizes of H on its points."""
    return intlin.cyclic_group(math.gcd(*orbit_sizes(h)))


def _cycle_gcd(g):
    return math.gcd(*(len(c) for c in g.cycles(include_fixed=True)))


def sha1_aug_fast(h: PermGroup, mode="auto", cap=None):
    """Sha^1(H, A) = Z/(d_H / lcm_C d_C) over cyclic subgroups C, d = gcd of orbit sizes."""
    d_h = math.gcd(*orbit_sizes(h))
    if mode == "auto" and h.family is not None:
        mode = "cycle_type"
    kwargs = {} if cap is None else {"cap": cap}
    reps = cyclic_subgroup_reps(h, mode=mode, **kwargs)
    lcm = intlin.lcm_list([_cycle_gcd(c.generators[0]) if c.generators else 1 for c in reps])
    return intlin.cyclic_group(d_h // lcm)


# -- restriction and Sha -----------------------------------------------------

def restriction_map(source: CohomGroup, c: PermGroup, target: CohomGroup = None, caps=None):
    """Matrix (rows: target generators, columns: source generators) of Res^H_C.

    Returns ``(matrix, target)``; column j holds the coordinates of the
    restricted j-th representative, reduced mod the target's invariant factors.
    """
    h = source.group
    if not c.is_subgroup_of(h):
        raise NotSubgroup(f"{c!r} is not a subgroup of {h!r}")
    if target is None:
        target = h_bar(source.degree, c, source.coeffs, caps)
    cols = []
    for rep in source.reps:
        v = restrict_cochain(rep, source._elements, target._elements, source.degree, source.coeffs.rank)
        if source.coeffs.modulus:
            v = [x % source.coeffs.modulus for x in v]
        cols.append(target.coords(v))
    nrows = len(target.invariants.torsion)
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
    return mat, target


def _intersect_kernels(factors, blocks):
    """Subgroup of (+) Z/d_k killed by every block (R, e): R x = 0 mod e.

    Returns (invariants, generator coordinate vectors).
    """
    k = len(factors)
    if k == 0:
        return AbelianInvariants(), []
    rows = []
    for mat, mods in blocks:
        for row, e in zip(mat, mods):
            rows.append((row, e))
    ne = len(rows)
    # kernel of [R | diag(e)] projected to the first k coordinates
    if ne:
        big = [list(row) + [e if j == t else 0 for j in range(ne)] for t, (row, e) in enumerate(rows)]
        ker = intlin.kernel_basis(big, k + ne)
        proj = [r[:] for r in ker[:k]]
    else:
        proj = intlin.identity(k)
    diag = [[factors[a] if a == b else 0 for b in range(k)] for a in range(k)]
    gens = intlin.hstack(proj, diag) if proj and proj[0] else diag
    lat = intlin.lattice_basis(gens, k)
    sq = intlin.Subquotient(lat, diag, k)
    return sq.invariants, sq.gens


def sha(i, h: PermGroup, coeffs, caps=None, cyclic_mode="auto"):
    """Intersection of the kernels of restriction to every cyclic subgroup of H."""
    ambient = h_bar(i, h, coeffs, caps)
    reps = cyclic_subgroup_reps(h, mode=cyclic_mode)
    factors = list(ambient.invariants.torsion)
    blocks = []
    if factors:
        for c in reps:
            if c.generators and c.order() > 1:
                mat, tgt = restriction_map(ambient, c, caps=caps)
                if tgt.invariants.torsion:
                    blocks.append((mat, list(tgt.invariants.torsion)))
    inv, coord_gens = _intersect_kernels(factors, blocks)
    witnesses = []
    for x in coord_gens:
        v = [0] * len(ambient.reps[0]) if ambient.reps else []
        for xk, rep in zip(x, ambient.reps):
            if xk:
                v = [a + xk * b for a, b in zip(v, rep)]
        if coeffs.modulus:
            v = [a % coeffs.modulus for a in v]
        witnesses.append(v)
    return ShaGroup(i, h, coeffs, inv, witnesses, ambient, len(reps), "bar")


def sha2_via_sequence(h: PermGroup, seq, caps=None):
    """Sha^2(H, M) as Sha^1(H, N) for a verified 0 -> M -> P -> N -> 0 with P permutation."""
    if not getattr(seq, "verified", False):
        raise SequenceNotVerified("sequence must pass verify_exact first")
    terms = seq.short_terms()
    m, p, n = terms
    from .seqcert import middle_is_permutation
    if not middle_is_permutation(seq):
        raise BadParams("middle term must be a permutation lattice")
    out = sha(1, h, n, caps)
    out.degree = 2
    out.coeffs = m
    out.label = f"Sha2({m.name}) via Sha1({n.name})"
    out.path = "sequence"
    return out
