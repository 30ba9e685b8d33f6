"""Exact sequences of G-lattices and certificates built from them.

A sequence ``0 -> T_0 -> T_1 -> ... -> T_k -> 0`` is stored as its terms and
the k maps between them (matrices acting on column vectors).  Terms may be
lattices or modules over Z/m; a module (Z/m)^r is handled as Z^r / m Z^r, so
every exactness check becomes an equality of lattices in some Z^r, decided by
comparing Hermite normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import glat, intlin
from .errors import (BadParams, GroupMismatch, HypothesisFailed, NotEquivariant, NotExact,
                     SequenceNotVerified, WitnessInvalid)
from .glat import GLattice
from .permgrp import PermGroup, orbits, symmetric

SEQUENCES = ("gn", "square", "sym2U", "rho", "sym2seq", "koszul", "newexact")


@dataclass
class ExactSeq:
    terms: list
    maps: list
    verified: bool = False
    name: str = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        self.maps = [glat.to_list(f) if isinstance(f, np.ndarray) else f for f in self.maps]
        if len(self.maps) != len(self.terms) - 1:
            raise BadParams("need exactly one map between consecutive terms")

    def short_terms(self):
        if len(self.terms) != 3:
            raise BadParams("not a short exact sequence")
        return self.terms

    @property
    def ranks(self):
        return [t.rank for t in self.terms]

    def to_dict(self):
        return {"name": self.name,
                "terms": [{"name": t.name, "rank": t.rank, "modulus": t.modulus} for t in self.terms],
                "maps": self.maps, "verified": self.verified}


def _rel(term):
    """Generators of the relation lattice of a term (m Z^r for Z/m modules)."""
    if term.modulus:
        return [[term.modulus if i == j else 0 for j in range(term.rank)] for i in range(term.rank)]
    return None


def _span(cols, rel, dim):
    """HNF basis of span(cols) + span(rel) in Z^dim."""
    parts = [c for c in (cols, rel) if c and c[0]]
    if not parts or dim == 0:
        return [[] for _ in range(dim)]
    return intlin.lattice_basis(intlin.hstack(*parts) if len(parts) > 1 else parts[0], dim)


def _preimage(f, src_dim, tgt_rel, tgt_dim):
    """Columns spanning {x in Z^src_dim : f x in span(tgt_rel)}."""
    if src_dim == 0:
        return [[] for _ in range(0)]
    if tgt_dim == 0:
        return intlin.identity(src_dim)
    if not tgt_rel or not tgt_rel[0]:
        return intlin.kernel_basis(f, src_dim)
    k = len(tgt_rel[0])
    big = [list(f[i]) + [-x for x in tgt_rel[i]] for i in range(tgt_dim)]
    ker = intlin.kernel_basis(big, src_dim + k)
    return [row for row in ker[:src_dim]]


def _cols(a):
    return a if a and a[0] else None


def check_equivariant(f, src, tgt):
    f = glat.as_array(f) if src.rank and tgt.rank else None
    if f is None:
        return True
    return glat.is_equivariant(f, src, tgt)


def _lattices_equal(a, b, dim):
    return dim == 0 or _span(a, None, dim) == _span(b, None, dim)


def exactness_defects(terms, maps, rels=None):
    """List of (position, reason) where the sequence fails to be exact."""
    rels = rels if rels is not None else [_rel(t) for t in terms]
    dims = [t.rank for t in terms]
    out = []
    for k, f in enumerate(maps):
        if dims[k] and dims[k + 1] and len(f) != dims[k + 1]:
            out.append((k, "map shape mismatch"))
            return out
    # compositions vanish modulo the target relations
    for k in range(len(maps) - 1):
        if not dims[k] or not dims[k + 2] or not dims[k + 1]:
            continue
        comp = intlin.matmul(maps[k + 1], maps[k])
        zero = _span(comp, rels[k + 2], dims[k + 2]) == _span(None, rels[k + 2], dims[k + 2])
        if not zero:
            out.append((k + 1, "composition is not zero"))
    for k in range(len(terms)):
        d = dims[k]
        if d == 0:
            continue
        if k == 0:
            image = None
        else:
            image = _cols(maps[k - 1]) if dims[k - 1] else None
        image_lat = _span(image, rels[k], d)
        if k == len(terms) - 1:
            kernel_lat = intlin.identity(d)
            kernel_lat = _span(kernel_lat, None, d)
        else:
            pre = _preimage(maps[k], d, rels[k + 1], dims[k + 1])
            kernel_lat = _span(_cols(pre), rels[k], d)
        if image_lat != kernel_lat:
            out.append((k, "image differs from kernel"))
    return out


def verify_exact(s: ExactSeq):
    """Check equivariance and exactness; marks the sequence verified or raises."""
    for k, f in enumerate(s.maps):
        if not check_equivariant(f, s.terms[k], s.terms[k + 1]):
            raise NotEquivariant(f"map {k} is not equivariant")
    bad = exactness_defects(s.terms, s.maps)
    if bad:
        pos, why = bad[0]
        raise NotExact(f"not exact at term {pos}: {why}", position=pos)
    s.verified = True
    return s


# -- basis-level maps --------------------------------------------------------

def _identity(n):
    return intlin.identity(n)


def _block_diag(*mats_and_shapes):
    """Block diagonal of (matrix, rows, cols) triples."""
    rows = sum(r for _, r, _ in mats_and_shapes)
    cols = sum(c for _, _, c in mats_and_shapes)
    out = intlin.zeros(rows, cols)
    r0 = c0 = 0
    for m, r, c in mats_and_shapes:
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = m[i][j]
        r0 += r
        c0 += c
    return out


def squares_inclusion(n):
    """U -> Sym^2 U, x_i -> x_i^2."""
    pos = {p: k for k, p in enumerate(glat.sym2_basis(n))}
    out = intlin.zeros(len(pos), n)
    for i in range(n):
        out[pos[(i, i)]][i] = 1
    return out


def kill_squares(n):
    """Sym^2 U -> W, projection onto the x_i x_j (i < j) part."""
    pos = {p: k for k, p in enumerate(glat.sym2_basis(n))}
    pairs = glat.wedge2_basis(n)
    out = intlin.zeros(len(pairs), len(pos))
    for k, p in enumerate(pairs):
        out[k][pos[p]] = 1
    return out


def rho_matrix(n):
    """Sym^2 U -> U, x x' -> x + x'."""
    basis = glat.sym2_basis(n)
    out = intlin.zeros(n, len(basis))
    for k, (i, j) in enumerate(basis):
        out[i][k] += 1
        out[j][k] += 1
    return out


def rho_bar_matrix(n):
    """W -> A/2A, x_i x_j -> a_i + a_j (a_{n-1} = 0), entries mod 2."""
    pairs = glat.wedge2_basis(n)
    out = intlin.zeros(n - 1, len(pairs))
    for k, (i, j) in enumerate(pairs):
        for t in (i, j):
            if t != n - 1:
                out[t][k] = (out[t][k] + 1) % 2
    return out


def koszul_matrix(n):
    """wedge^2 U -> A, x_i ^ x_j -> a_i - a_j (a_{n-1} = 0)."""
    pairs = glat.wedge2_basis(n)
    out = intlin.zeros(n - 1, len(pairs))
    for k, (i, j) in enumerate(pairs):
        if i != n - 1:
            out[i][k] += 1
        if j != n - 1:
            out[j][k] -= 1
    return out


def sym2a_to_w(n):
    return intlin.matmul(kill_squares(n), glat.sym2_map(glat.aug_inclusion(n), n - 1, n))


def tensor_perm_basis(n):
    """Basis u_i (x) (u_j - u_i), i != j (lex), of U (x) A; G permutes it like ordered pairs."""
    r = n - 1
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = intlin.zeros(n * r, len(pairs))
    for k, (i, j) in enumerate(pairs):
        if j != n - 1:
            out[i * r + j][k] += 1
        if i != n - 1:
            out[i * r + i][k] -= 1
    return out


def has_permutation_basis(lat: GLattice, basis):
    """Is ``basis`` a Z-basis of ``lat`` on which every generator acts by a permutation?"""
    if not intlin.is_unimodular(basis):
        return False
    inv = intlin.inverse_unimodular(basis)
    for g in lat.gens:
        conj = intlin.matmul(inv, intlin.matmul(glat.to_list(g), basis))
        if not glat._is_perm_matrix(glat.as_array(conj)):
            return False
    return True


def middle_is_permutation(seq: ExactSeq):
    p = seq.terms[1]
    if p.is_permutation():
        return True
    basis = seq.extras.get("perm_basis")
    return basis is not None and has_permutation_basis(p, basis)


def odd_orbit(group: PermGroup):
    """The first orbit of odd length (by smallest point), or None."""
    for orb in sorted(orbits(group), key=min):
        if len(orb) % 2:
            return sorted(orb)
    return None


# -- named sequences ---------------------------------------------------------

def _group(n, group):
    g = group if group is not None else symmetric(n)
    if g.degree != n:
        raise BadParams("group degree must equal n")
    return g


def build_named(name, n, group=None, verify=True):
    """One of the standard sequences over G <= S_n (default S_n) on n points."""
    if not 2 <= n <= 12:
        raise BadParams("n must lie in 2..12")
    g = _group(n, group)
    u = glat.natural_lattice(g)
    a = glat.aug_kernel(u)
    a.name = f"A({n})"
    if name == "gn":
        ua = glat.tensor(u, a)
        seq = ExactSeq([glat.tensor(a, a), ua, a],
                       [glat.tensor_map(glat.aug_inclusion(n), _identity(n - 1)),
                        glat.tensor_map(glat.augmentation(n), _identity(n - 1))], name="gn")
        seq.extras["perm_basis"] = tensor_perm_basis(n)
    elif name == "square":
        seq = square_sequence(a)
    elif name == "sym2U":
        s2u = glat.sym2(u)
        w = glat.two_subsets_lattice(g)
        seq = ExactSeq([u, s2u, w], [squares_inclusion(n), kill_squares(n)], name="sym2U")
    elif name == "rho":
        s2a = glat.sym2(a)
        s2u = glat.sym2(u)
        z2 = glat.mod_m(glat.trivial_lattice(g), 2)
        seq = ExactSeq([s2a, s2u, u, z2],
                       [glat.sym2_map(glat.aug_inclusion(n), n - 1, n), rho_matrix(n), glat.augmentation(n)],
                       name="rho")
    elif name == "sym2seq":
        seq = ExactSeq([glat.sym2(a), glat.two_subsets_lattice(g), glat.mod_m(a, 2)],
                       [sym2a_to_w(n), rho_bar_matrix(n)], name="sym2seq")
    elif name == "koszul":
        seq = ExactSeq([glat.wedge2(a), glat.wedge2(u), a],
                       [glat.wedge2_map(glat.aug_inclusion(n), n - 1, n), koszul_matrix(n)], name="koszul")
    elif name == "newexact":
        return newexact(n, g, verify=verify)
    else:
        raise BadParams(f"unknown sequence {name!r}; known: {', '.join(SEQUENCES)}")
    return verify_exact(seq) if verify else seq


def square_sequence(m: GLattice):
    """0 -> wedge^2 M -> M (x) M -> Sym^2 M -> 0."""
    r = m.rank
    return ExactSeq([glat.wedge2(m), glat.tensor(m, m), glat.sym2(m)],
                    [glat.antisym_embedding(r), glat.sym_projection(r)], name="square")


def newexact_base(n, g):
    """0 -> Sym^2 A + Z -> W + Z -> U/2U -> 0, the odd-orbit extension of rho-bar."""
    orb = odd_orbit(g)
    if orb is None:
        raise BadParams("this sequence needs an orbit of odd length")
    u = glat.natural_lattice(g)
    a = glat.aug_kernel(u)
    a.name = f"A({n})"
    s2a = glat.sym2(a)
    z = glat.trivial_lattice(g)
    w = glat.two_subsets_lattice(g)
    m = glat.dsum(s2a, z)
    p = glat.dsum(w, z)
    ubar = glat.mod_m(u, 2)
    j = sym2a_to_w(n)
    inc = _block_diag((j, comb(n, 2), comb(n, 2)), ([[2]], 1, 1))
    pairs = glat.wedge2_basis(n)
    pi = intlin.zeros(n, len(pairs) + 1)
    for k, (x, y) in enumerate(pairs):
        pi[x][k] = 1
        pi[y][k] = 1
    for x in orb:
        pi[x][len(pairs)] = 1
    seq = ExactSeq([m, p, ubar], [inc, pi], name="newexact-base")
    seq.extras["odd_orbit"] = orb
    return seq, u


def newexact(n, g=None, verify=True):
    """0 -> Sym^2 A + Z -> W + Z + U -> U -> 0, by pull-back along multiplication by 2."""
    g = _group(n, g)
    base, u = newexact_base(n, g)
    verify_exact(base)
    m, p, _ = base.terms
    out = splice_pullback(m, p, u, 2, base)
    out.name = "newexact"
    out.extras["odd_orbit"] = base.extras["odd_orbit"]
    return out


# -- splitting and pull-back -------------------------------------------------

def find_splitting(f, src: GLattice, tgt: GLattice):
    """An equivariant section s of the surjection f: src -> tgt, or None.

    s ranges over Hom_G(tgt, src); f s = 1 is a linear system over Z in the
    coordinates on that lattice, so None means no section exists.
    """
    f = glat.to_list(f) if isinstance(f, np.ndarray) else f
    if tgt.rank == 0:
        return [[] for _ in range(src.rank)]
    basis = glat.equivariant_homs(tgt, src)
    if not basis:
        return None
    rt = tgt.rank
    cols = []
    for h in basis:
        fh = intlin.matmul(f, h)
        cols.append([x for row in fh for x in row])
    system = intlin.transpose(cols)
    rhs = [[1 if i == j else 0] for i in range(rt) for j in range(rt)]
    c = intlin.solve_linear(system, rhs, len(basis))
    if c is None:
        return None
    s = intlin.zeros(src.rank, rt)
    for ck, h in zip((row[0] for row in c), basis):
        if ck:
            for i in range(src.rank):
                for j in range(rt):
                    s[i][j] += ck * h[i][j]
    return s


def _is_coflasque_quick(q: GLattice, catalog=None):
    if q.is_permutation():
        return True
    from . import flasque
    if catalog is None:
        from .permgrp import subgroups_up_to_conjugacy
        catalog = subgroups_up_to_conjugacy(q.group)
    return flasque.is_coflasque(q, catalog).value == "yes"


def splice_pullback(m: GLattice, p: GLattice, q: GLattice, alpha, given: ExactSeq, catalog=None):
    """From 0 -> M -> P -> Q/alpha Q -> 0 build 0 -> M -> P + Q -> Q -> 0.

    ``alpha`` is an integer (scalar endomorphism) or a matrix; the last map
    of ``given`` is read as an integer lift P -> Q of the quotient map.
    """
    r = q.rank
    amat = [[alpha if i == j else 0 for j in range(r)] for i in range(r)] if isinstance(alpha, int) else alpha
    if not p.is_permutation():
        raise HypothesisFailed("P must be a permutation lattice")
    if intlin.det(amat) == 0:
        raise HypothesisFailed("alpha must be injective")
    if not glat.is_equivariant(glat.as_array(amat), q, q):
        raise HypothesisFailed("alpha must be equivariant")
    if not _is_coflasque_quick(q, catalog):
        raise HypothesisFailed("Q must be coflasque")
    j, pi = given.maps
    # the given row, with Q/alpha Q modelled as Z^r modulo the columns of alpha
    bad = exactness_defects([m, p, q], [j, pi], [None, None, amat])
    if bad:
        raise HypothesisFailed(f"given sequence is not exact at term {bad[0][0]}")
    rp = p.rank
    # X = {(p, q) : pi p - q in alpha Q}, a full-rank sublattice of P + Q
    big = [list(pi[i]) + [-(i == t) for t in range(r)] + [-x for x in amat[i]] for i in range(r)]
    ker = intlin.kernel_basis(big, rp + 2 * r)
    xbasis = intlin.lattice_basis([row for row in ker[:rp + r]], rp + r)
    pq = glat.dsum(p, q)
    x = glat.sublattice(pq, xbasis, name="X")
    # column 0 -> Q -> X -> P -> 0 with q -> (0, alpha q) and (p, q) -> p
    proj_p = intlin.matmul([[1 if i == t else 0 for t in range(rp + r)] for i in range(rp)], xbasis)
    sec = find_splitting(proj_p, x, p)
    if sec is None:
        raise HypothesisFailed("the pull-back does not split")
    iota = intlin.solve_linear(xbasis, [[0] * r for _ in range(rp)] + amat)
    phi = intlin.hstack(sec, iota)  # P + Q -> X, in X coordinates
    phi_inv = intlin.inverse_unimodular(phi)
    incl_x = intlin.solve_linear(xbasis, [list(row) for row in j] + intlin.zeros(r, m.rank))
    proj_q = intlin.matmul([[1 if t == rp + i else 0 for t in range(rp + r)] for i in range(r)], xbasis)
    seq = ExactSeq([m, pq, q], [intlin.matmul(phi_inv, incl_x), intlin.matmul(proj_q, phi)], name="pullback")
    seq.extras.update({"X": x, "x_basis": xbasis, "section": sec, "phi": phi})
    return verify_exact(seq)


# -- certificates ------------------------------------------------------------

@dataclass
class StablePermWitness:
    """An equivariant isomorphism S + P -> Q with P and Q permutation lattices."""

    s: GLattice
    p: GLattice
    q: GLattice
    iso: list

    def verify(self):
        if not (self.p.is_permutation() and self.q.is_permutation()):
            raise WitnessInvalid("P and Q must be permutation lattices")
        src = glat.dsum(self.s, self.p)
        if src.rank != self.q.rank or not intlin.is_unimodular(self.iso):
            raise WitnessInvalid("witness is not unimodular")
        if not glat.is_equivariant(glat.as_array(self.iso), src, self.q):
            raise WitnessInvalid("witness is not equivariant")
        return True


@dataclass
class EquivCertificate:
    """M ~ N: 0 -> M -> E -> P -> 0 and 0 -> N -> E -> Q -> 0 with P, Q permutation."""

    m: GLattice
    n: GLattice
    middle: GLattice
    seq_m: ExactSeq
    seq_n: ExactSeq

    def verify(self):
        for s, lat in ((self.seq_m, self.m), (self.seq_n, self.n)):
            verify_exact(s)
            if s.terms[0].rank != lat.rank or s.terms[1].rank != self.middle.rank:
                raise WitnessInvalid("certificate sequences do not match its lattices")
            if not s.terms[2].is_permutation():
                raise WitnessInvalid("cokernels must be permutation lattices")
        return True

    def to_dict(self):
        return {"m": self.m.name, "n": self.n.name, "middle": self.middle.name,
                "seq_m": self.seq_m.to_dict(), "seq_n": self.seq_n.to_dict()}


def zero_lattice(group):
    return GLattice(group, [np.zeros((0, 0), dtype=np.int64) for _ in group.generators], name="0", rank=0)


def identity_certificate(m: GLattice):
    """M ~ M through 0 -> M -> M -> 0 -> 0 twice."""
    z = zero_lattice(m.group)
    s = ExactSeq([m, m, z], [_identity(m.rank), []], name="identity")
    c = EquivCertificate(m, m, m, s, s)
    c.verify()
    return c


def quasi_perm_certificate(seq: ExactSeq):
    """M ~ 0 from 0 -> M -> P -> Q -> 0 with P, Q permutation."""
    m, p, q = seq.short_terms()
    z = zero_lattice(m.group)
    other = ExactSeq([z, p, p], [[[] for _ in range(p.rank)], _identity(p.rank)], name="trivial")
    c = EquivCertificate(m, z, p, seq, other)
    c.verify()
    return c


def cert_dsum(c1: EquivCertificate, c2: EquivCertificate):
    """(M ~ N) and (M' ~ N') give M + M' ~ N + N' through E + E'."""
    if c1.middle.group.generators != c2.middle.group.generators:
        raise GroupMismatch("certificates live over different groups")

    def combine(s1, s2):
        terms = [_sum(a, b) for a, b in zip(s1.terms, s2.terms)]
        maps = [_block_diag((f, s1.terms[k + 1].rank, s1.terms[k].rank),
                            (g, s2.terms[k + 1].rank, s2.terms[k].rank))
                for k, (f, g) in enumerate(zip(s1.maps, s2.maps))]
        return ExactSeq(terms, maps, name="dsum")

    sm = combine(c1.seq_m, c2.seq_m)
    sn = combine(c1.seq_n, c2.seq_n)
    sn.terms[1] = sm.terms[1]
    c = EquivCertificate(sm.terms[0], sn.terms[0], sm.terms[1], sm, sn)
    c.verify()
    return c


def _sum(a, b):
    if a.rank == 0:
        return b
    if b.rank == 0:
        return a
    return glat.dsum(a, b)


def cert_from_quotient(s: ExactSeq, witness: StablePermWitness):
    """0 -> M -> N -> S -> 0 with S + P = Q permutation gives M ~ N (through N + P)."""
    if not s.verified:
        raise SequenceNotVerified("sequence must pass verify_exact first")
    witness.verify()
    m, n, quo = s.short_terms()
    if quo.rank != witness.s.rank:
        raise WitnessInvalid("witness is for a different quotient")
    p, q = witness.p, witness.q
    np_ = _sum(n, p)
    f, g = s.maps
    rn, rp = n.rank, p.rank
    to_np = [row[:] for row in f] + [[0] * m.rank for _ in range(rp)]
    g_plus = _block_diag((g, quo.rank, rn), (_identity(rp), rp, rp))
    seq_m = ExactSeq([m, np_, q], [to_np, intlin.matmul(witness.iso, g_plus)], name="via-quotient")
    incl_n = [[1 if i == j else 0 for j in range(rn)] for i in range(rn)] + [[0] * rn for _ in range(rp)]
    proj_p = [[0] * rn + [1 if i == j else 0 for j in range(rp)] for i in range(rp)]
    seq_n = ExactSeq([n, np_, p], [incl_n, proj_p], name="split")
    c = EquivCertificate(m, n, np_, seq_m, seq_n)
    c.verify()
    return c


def stable_perm_from_newexact(seq: ExactSeq):
    """Split the tail of the new sequence and read off Sym^2 A + (Z + U) = W + Z + U.

    Returns ``(witness, section)``; witness is None when no section exists.
    """
    m, e, u = seq.short_terms()
    incl, tail = seq.maps
    sec = find_splitting(tail, e, u)
    if sec is None:
        return None, None
    # (Sym^2 A + Z) + U -> E, regrouped as Sym^2 A + (Z + U); E = W + Z + U
    iso = intlin.hstack(incl, sec)
    g = u.group
    s2a = glat.sym2(glat.aug_kernel(glat.natural_lattice(g)))
    p = glat.dsum(glat.trivial_lattice(g), u)
    witness = StablePermWitness(s2a, p, e, iso)
    witness.verify()
    return witness, sec


def stable_perm_by_search(s: GLattice, p: GLattice, q: GLattice, bound=3, expand_to=5):
    """A witness S + P = Q found by bounded search over Hom_G(S + P, Q), or None."""
    iso = glat.find_iso(glat.dsum(s, p), q, bound=bound, expand_to=expand_to)
    if iso is None:
        return None
    w = StablePermWitness(s, p, q, iso)
    w.verify()
    return w


def sym2a_witness(n):
    """A verified stable-permutation witness for Sym^2 A over S_n.

    Odd n: split the odd-orbit sequence.  n = 4: Sym^2 A + Z = U + Z[S_4 / D]
    with D the dihedral Sylow 2-subgroup, found by search.
    """
    if n % 2:
        witness, _ = stable_perm_from_newexact(build_named("newexact", n))
        return witness
    if n == 4:
        from .permgrp import sylow2_symmetric
        g = symmetric(4)
        z = glat.trivial_lattice(g)
        q = glat.dsum(glat.natural_lattice(g), glat.coset_lattice(g, sylow2_symmetric(4)))
        return stable_perm_by_search(glat.sym2(glat.aug_kernel(glat.natural_lattice(g))), z, q)
    raise BadParams(f"no stable-permutation witness construction for n = {n}")
