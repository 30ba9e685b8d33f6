"""Finite permutation groups on the points {0, ..., degree-1}.

Elements compose as functions, ``(p * q)(i) = p(q(i))``, so that the
permutation matrices built in :mod:`permlat.glat` give a left action.
"""
from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

from .errors import BadParams, CapExceeded, NotSubgroup

DEFAULT_CLOSURE_CAP = 250_000
DEFAULT_SUBGROUP_CAP = 200


class Perm(tuple):
    """A permutation stored as its tuple of images."""

    __slots__ = ()

    def __new__(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, cycles, one_based=False):
        images = list(range(degree))
        shift = 1 if one_based else 0
        seen = set()
        for cyc in cycles:
            pts = [c - shift for c in cyc]
            for p in pts:
                if not 0 <= p < degree or p in seen:
                    raise BadParams(f"bad cycle {cyc!r} for degree {degree}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        return tuple.__new__(Perm, map(self.__getitem__, other))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Perm, inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def cycles(self, include_fixed=False):
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self):
        return reduce(math.lcm, self.cycle_type(), 1)

    def sign(self):
        return -1 if (len(self) - len(self.cycles(include_fixed=True))) % 2 else 1

    def to_cycles(self, one_based=True):
        shift = 1 if one_based else 0
        return [[p + shift for p in c] for c in self.cycles()]

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def check_perm(images):
    if sorted(images) != list(range(len(images))):
        raise BadParams(f"not a permutation: {images!r}")
    return Perm(images)


class PermGroup:
    """A permutation group given by generators.

    ``family`` is ``("symmetric", n)`` or ``("alternating", n)`` when the group
    is known to be all of S_n or A_n; this enables order formulas and the
    cycle-type fast path for cyclic subgroups.
    """

    def __init__(self, degree, generators, name=None, family=None):
        if degree < 1:
            raise BadParams("degree must be positive")
        gens = []
        for g in generators:
            g = g if isinstance(g, Perm) else check_perm(list(g))
            if len(g) != degree:
                raise BadParams("generator degree mismatch")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self.family = family
        self._elements = None
        self._parent = None
        self._index = None
        self._mul = None

    def __repr__(self):
        label = self.name or "<" + ", ".join(map(repr, self.generators)) + ">"
        return f"PermGroup({label}, degree={self.degree})"

    @property
    def identity(self):
        return Perm.identity(self.degree)

    def order(self, cap=DEFAULT_CLOSURE_CAP):
        if self.family is not None and self._elements is None:
            kind, n = self.family
            f = math.factorial(n)
            return f if kind == "symmetric" or n < 2 else f // 2
        return len(self.elements(cap))

    def elements(self, cap=DEFAULT_CLOSURE_CAP):
        if self._elements is None:
            self._elements, self._parent = _bfs_closure(self.identity, self.generators, cap)
        elif len(self._elements) > cap:
            raise CapExceeded(f"|G| = {len(self._elements)} exceeds cap {cap}")
        return self._elements

    def has_closure(self):
        return self._elements is not None

    def element_index(self):
        if self._index is None:
            self._index = {g: i for i, g in enumerate(self.elements())}
        return self._index

    def word(self, g):
        """Generator indices ``[k1, ..., kr]`` with ``g = s_k1 * ... * s_kr``."""
        self.elements()
        out = []
        while self._parent[g] is not None:
            k, prev = self._parent[g]
            out.append(k)
            g = prev
        return out

    def bfs_parents(self):
        """Map element -> (generator index, predecessor) along the closure BFS."""
        self.elements()
        return self._parent

    def __contains__(self, g):
        if self.family is not None and self._elements is None:
            if len(g) != self.degree:
                return False
            return self.family[0] == "symmetric" or Perm(g).sign() == 1
        return Perm(g) in self.element_index()

    def mult_table(self):
        if self._mul is None:
            elts = self.elements()
            idx = self.element_index()
            self._mul = [[idx[a * b] for b in elts] for a in elts]
        return self._mul

    def is_subgroup_of(self, other):
        if self.degree != other.degree:
            return False
        return all(g in other for g in self.generators)

    def orbits(self):
        return orbits(self)


def _bfs_closure(identity, gens, cap):
    elements = [identity]
    parent = {identity: None}
    layer = [identity]
    while layer:
        nxt = []
        for x in layer:
            for k, s in enumerate(gens):
                y = s * x
                if y not in parent:
                    parent[y] = (k, x)
                    nxt.append(y)
                    if len(parent) > cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
        nxt.sort()
        elements.extend(nxt)
        layer = nxt
    return elements, parent


def close_elements(g: PermGroup, cap=DEFAULT_CLOSURE_CAP):
    """All elements of ``g``: identity first, then by word length, ties lexicographic."""
    return list(g.elements(cap))


def orbits(g: PermGroup):
    parent = list(range(g.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in g.generators:
        for i, j in enumerate(s):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(g.degree):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda o: o[0])


def orbit_sizes(g: PermGroup):
    return [len(o) for o in orbits(g)]


# -- standard groups ---------------------------------------------------------

def symmetric(n):
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Perm.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens, name=f"S{n}", family=("symmetric", n))


def alternating(n):
    gens = []
    if n >= 3:
        gens.append(Perm.from_cycles(n, [(0, 1, 2)]))
    if n >= 4:
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Perm.from_cycles(n, [long]))
    return PermGroup(n, gens, name=f"A{n}", family=("alternating", n))


def cyclic(n, degree=None):
    degree = degree or n
    g = Perm.from_cycles(degree, [tuple(range(n))]) if n > 1 else Perm.identity(degree)
    return PermGroup(degree, [g], name=f"C{n}")


def trivial(degree):
    return PermGroup(degree, [], name="1")


def point_stabilizer(n, point):
    """S_{n-1} fixing ``point`` inside S_n."""
    others = [i for i in range(n) if i != point]
    gens = []
    if len(others) >= 2:
        gens.append(Perm.from_cycles(n, [tuple(others[:2])]))
    if len(others) >= 3:
        gens.append(Perm.from_cycles(n, [tuple(others)]))
    return PermGroup(n, gens, name=f"Stab({point})")


# -- cyclic subgroups --------------------------------------------------------

def cycle_type_reps(n, even_only=False):
    """One permutation per cycle type of degree ``n`` (cycles on consecutive points)."""
    reps = []
    for part in _partitions(n):
        if even_only and (n - len(part)) % 2:
            continue
        cycles, start = [], 0
        for length in part:
            cycles.append(tuple(range(start, start + length)))
            start += length
        reps.append(Perm.from_cycles(n, cycles))
    return reps


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def cyclic_subgroup_reps(g: PermGroup, mode="auto", cap=DEFAULT_CLOSURE_CAP):
    """Cyclic subgroups of ``g`` as one-generator groups, trivial group included.

    ``mode="enumerate"`` returns every distinct cyclic subgroup.
    ``mode="cycle_type"`` (only for S_n / A_n) returns one generator per cycle
    type, which is enough wherever the question is invariant under conjugation
    in S_n.  ``"auto"`` enumerates when |g| <= cap, else uses cycle types.
    """
    if mode == "auto":
        mode = "enumerate" if g.order(cap=max(cap, 1)) <= cap else "cycle_type"
    if mode == "cycle_type":
        if g.family is None:
            raise CapExceeded("cycle-type fast path requires a symmetric or alternating group")
        kind, n = g.family
        reps = cycle_type_reps(n, even_only=(kind == "alternating"))
        return [PermGroup(g.degree, [r], name=f"<{r!r}>") for r in reps]
    if mode != "enumerate":
        raise BadParams(f"unknown mode {mode!r}")
    seen = set()
    out = []
    for x in g.elements(cap):
        # subgroup generated by x, as a set
        pw = [x ** k for k in range(x.order())]
        key = frozenset(pw)
        if key in seen:
            continue
        seen.add(key)
        out.append((len(pw), x))
    out.sort()
    return [PermGroup(g.degree, [x], name=f"<{x!r}>") for _, x in out]


# -- subgroups up to conjugacy -----------------------------------------------

@dataclass
class SubgroupCatalog:
    parent: PermGroup
    members: list
    completeness: str = "all-up-to-conjugacy"  # or "user-supplied"

    @property
    def complete(self):
        return self.completeness == "all-up-to-conjugacy"

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def digest(self):
        h = hashlib.sha256()
        for m in self.members:
            h.update(repr(sorted(tuple(s) for s in m.generators)).encode())
        return h.hexdigest()[:12]


def subgroups_up_to_conjugacy(g: PermGroup, cap=DEFAULT_SUBGROUP_CAP):
    """All subgroups of ``g`` up to conjugacy, by cyclic extension."""
    order = g.order(cap=max(cap, 1))
    if order > cap:
        raise CapExceeded(f"|G| = {order} exceeds subgroup-enumeration cap {cap}")
    elts = g.elements()
    mul = g.mult_table()
    n = len(elts)
    inv = [0] * n
    for i in range(n):
        for j in range(n):
            if mul[i][j] == 0:
                inv[i] = j
                break

    def close(gen_idx):
        members = {0}
        frontier = [0]
        while frontier:
            new = []
            for a in frontier:
                for s in gen_idx:
                    b = mul[s][a]
                    if b not in members:
                        members.add(b)
                        new.append(b)
            frontier = new
        return frozenset(members)

    canon_cache = {}

    def canon(sub):
        if sub not in canon_cache:
            best = None
            for x in range(n):
                xi = inv[x]
                key = tuple(sorted(mul[mul[x][k]][xi] for k in sub))
                if best is None or key < best:
                    best = key
            canon_cache[sub] = best
        return canon_cache[sub]

    trivial_sub = frozenset([0])
    classes = {canon(trivial_sub): (trivial_sub, [])}
    layer = [(trivial_sub, [])]
    while layer:
        nxt = []
        for sub, gens in layer:
            seen_here = set()
            for x in range(n):
                if x in sub:
                    continue
                big = close(gens + [x])
                if big in seen_here:
                    continue
                seen_here.add(big)
                key = canon(big)
                if key not in classes:
                    classes[key] = (big, gens + [x])
                    nxt.append((big, gens + [x]))
        layer = nxt

    members = []
    for key in sorted(classes, key=lambda k: (len(k), k)):
        members.append(_group_from_index_set(g, classes[key][0]))
    return SubgroupCatalog(g, members, "all-up-to-conjugacy")


def _group_from_index_set(g, sub):
    elts = g.elements()
    mul = g.mult_table()
    gens = []
    current = {0}
    for i in sorted(sub):
        if i in current:
            continue
        gens.append(i)
        frontier = list(current)
        while frontier:
            new = []
            for a in frontier:
                for s in gens:
                    b = mul[s][a]
                    if b not in current:
                        current.add(b)
                        new.append(b)
            frontier = new
    h = PermGroup(g.degree, [elts[i] for i in gens], name=f"sub{len(sub)}")
    return h


def user_catalog(parent, members):
    for m in members:
        if not m.is_subgroup_of(parent):
            raise NotSubgroup(f"{m!r} is not a subgroup of {parent!r}")
    return SubgroupCatalog(parent, list(members), "user-supplied")


# -- explicit subgroups used in the Sha computations -------------------------

def _block_cycle(i, p, n):
    """The p-cycle on the i-th block (1-based i) of consecutive points."""
    return Perm.from_cycles(n, [tuple(range((i - 1) * p, i * p))])


def alpha_beta(n, p):
    """<alpha, beta> ~ C_p x C_p for n = p*k with k >= p + 1.

    alpha is the product of the block cycles 1..k-1, beta the product of
    sigma_i^(-i) over blocks 1..p-1 and of sigma_i over blocks p+1..k.
    """
    if p < 2 or n % p or any(p % q == 0 for q in range(2, p)):
        raise BadParams(f"alpha_beta needs a prime p dividing n (got n={n}, p={p})")
    k = n // p
    if k < p + 1:
        raise BadParams(f"alpha_beta needs k = n/p >= p+1 (got k={k})")
    sig = [None] + [_block_cycle(i, p, n) for i in range(1, k + 1)]
    alpha = Perm.identity(n)
    for i in range(1, k):
        alpha = alpha * sig[i]
    beta = Perm.identity(n)
    for i in range(1, p):
        beta = beta * sig[i] ** (-i)
    for i in range(p + 1, k + 1):
        beta = beta * sig[i]
    return PermGroup(n, [alpha, beta], name=f"alpha_beta({n},{p})")


def sigma_pi(p):
    """<sigma, pi> ~ C_p x C_p acting regularly on p^2 points (rows and columns)."""
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise BadParams(f"sigma_pi needs a prime p (got {p})")
    n = p * p
    sigma = Perm.identity(n)
    for i in range(1, p + 1):
        sigma = sigma * _block_cycle(i, p, n)
    pi = Perm.identity(n)
    for i in range(p):
        pi = pi * Perm.from_cycles(n, [tuple(i + p * j for j in range(p))])
    return PermGroup(n, [sigma, pi], name=f"sigma_pi({p})")


def smallest_prime_subgroup(n):
    """The C_p x C_p subgroup of S_n for composite n, p the least prime factor.

    Uses alpha_beta when n/p >= p+1 and sigma_pi when n = p^2.
    """
    p = next((q for q in range(2, n) if n % q == 0), None)
    if p is None:
        raise BadParams(f"{n} is prime")
    return sigma_pi(p) if n == p * p else alpha_beta(n, p)


def even_pairs(n):
    """<(1,2)(3,4)...(n-3,n-2), (1,2)(5,6)...(n-1,n)> in 1-based notation."""
    if n < 6 or n % 2:
        raise BadParams(f"even_pairs needs even n >= 6 (got {n})")
    a = Perm.from_cycles(n, [(i, i + 1) for i in range(0, n - 2, 2)])
    b = Perm.from_cycles(n, [(0, 1)] + [(i, i + 1) for i in range(4, n, 2)])
    return PermGroup(n, [a, b], name=f"even_pairs({n})")


def sylow2_symmetric(n):
    """Iterated wreath product C_2 wr ... wr C_2, a Sylow 2-subgroup of S_n, n = 2^a."""
    a = n.bit_length() - 1
    if n < 2 or 1 << a != n:
        raise BadParams(f"n must be a power of 2 (got {n})")
    gens = []
    for level in range(a):
        half = 1 << level
        gens.append(Perm.from_cycles(n, [(i, i + half) for i in range(half)]))
    return PermGroup(n, gens, name=f"Syl2(S{n})")


def sylow2_alt(n, check=True):
    """Sylow 2-subgroup of A_n (n = 2^a >= 4): even part of the wreath Sylow of S_n."""
    if n < 4:
        raise BadParams("sylow2_alt needs n >= 4")
    full = sylow2_symmetric(n)
    odd = [s for s in full.generators if s.sign() == -1]
    if not odd:
        return PermGroup(n, full.generators, name=f"Syl2(A{n})")
    t = odd[0]
    t_inv = t.inverse()
    # Schreier generators for the index-2 subgroup with transversal {1, t}
    gens = []
    for s in full.generators:
        if s.sign() == 1:
            gens += [s, t * s * t_inv]
        else:
            gens += [s * t_inv, t * s]
    group = PermGroup(n, gens, name=f"Syl2(A{n})")
    if check and n <= 16:
        expected = 1 << (n - 2)  # |A_n|_2 = 2^(n-2) for n = 2^a
        if group.order() != expected:
            raise AssertionError(f"Sylow order {group.order()} != {expected}")
    return group


def klein_four():
    return PermGroup(4, [Perm.from_cycles(4, [(0, 1), (2, 3)]),
                         Perm.from_cycles(4, [(0, 2), (1, 3)])], name="V4")


def named_subgroup(kind, *params):
    """Dispatch by name: alpha_beta(n, p), sigma_pi(p), even_pairs(n), sylow2_alt(n)."""
    table = {
        "alpha_beta": alpha_beta,
        "sigma_pi": sigma_pi,
        "even_pairs": even_pairs,
        "sylow2_alt": sylow2_alt,
    }
    if kind not in table:
        raise BadParams(f"unknown subgroup kind {kind!r}")
    return table[kind](*params)
