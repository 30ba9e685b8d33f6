import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from permlat import intlin
from permlat.intlin import AbelianInvariants

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def det_divisors(a):
    """Oracle: d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    m, n = len(a), len(a[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, intlin.det([[a[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_matches_determinantal_divisors(a):
    sf = intlin.snf(a)
    assert sf.invariant_factors == det_divisors(a)
    assert intlin.matmul(intlin.matmul(sf.P, a), sf.Q) == sf.S
    assert abs(intlin.det(sf.P)) == 1 and abs(intlin.det(sf.Q)) == 1
    assert intlin.matmul(intlin.matmul(sf.U, sf.S), sf.V) == a


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_spans_same_lattice(a):
    H, V, r = intlin.hnf_transform(a)
    assert intlin.matmul(a, V) == H
    assert abs(intlin.det(V)) == 1
    assert r == intlin.rank(a)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_saturated_and_complete(a):
    n = len(a[0])
    K = intlin.kernel_basis(a)
    k = len(K[0]) if K and K[0] else 0
    assert k == n - intlin.rank(a)
    if k:
        assert intlin.is_zero(intlin.matmul(a, K))
        # saturated: all invariant factors of K are 1
        assert intlin.invariant_factors(K) == [1] * k


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_linear(a, x):
    n = len(a[0])
    x = [[v] for v in x[:n]]
    b = intlin.matmul(a, x)
    y = intlin.solve_linear(a, b)
    assert y is not None and intlin.matmul(a, y) == b


def test_solve_linear_detects_no_solution():
    assert intlin.solve_linear([[2, 0], [0, 2]], [[1], [0]]) is None


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), st.integers(2, 7))
def test_modp_kernel(a, m):
    K = intlin.modp_kernel(a, m)
    n = len(a[0])
    if K and K[0]:
        assert all(x % m == 0 for row in intlin.matmul(a, K) for x in row)
    # brute force count of solutions equals the size of the generated subgroup
    sols = [v for v in itertools.product(range(m), repeat=n)
            if all(sum(r[j] * v[j] for j in range(n)) % m == 0 for r in a)]
    gens = [list(c) for c in intlin.transpose(K)] if K and K[0] else []
    span = {tuple([0] * n)}
    frontier = list(span)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = tuple((x + y) % m for x, y in zip(v, g))
                if w not in span:
                    span.add(w)
                    new.append(w)
        frontier = new
    assert len(span) == len(sols)


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4))
def test_presentation_matches_snf(a):
    rels = [{i: a[i][j] for i in range(len(a))} for j in range(len(a[0]))]
    pres = intlin.Presentation(rels, len(a))
    assert pres.invariants == intlin.cokernel_invariants(a, len(a))
    for g, d in zip(pres.torsion_gens, pres.torsion):
        assert intlin.solve_linear(a, [[d * x] for x in g]) is not None


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_subquotient_order(l_gens, extra):
    # L = lattice spanned by l_gens, B = L * (some integer combos)
    dim = len(l_gens)
    L = intlin.lattice_basis(l_gens, dim)
    if not L or not L[0]:
        return
    k = len(L[0])
    coeffs = [row[:] for row in extra[:k]] if len(extra) >= k else None
    if coeffs is None or len(coeffs[0]) == 0:
        return
    B = intlin.matmul(L, coeffs)
    sq = intlin.Subquotient(L, B, dim)
    assert sq.invariants == intlin.cokernel_invariants(coeffs, k)
    for g, d in zip(sq.gens, sq.factors):
        if d:
            c = sq.coords([d * x for x in g])
            assert all(v == 0 for v in c)


def test_abelian_invariants_normalize():
    assert AbelianInvariants.from_factors([2, 3]).torsion == (6,)
    assert AbelianInvariants.from_factors([4, 6, 0]) == AbelianInvariants((2, 12), 1)
    assert AbelianInvariants.from_factors([1, 1]).is_trivial()
    assert str(AbelianInvariants((2, 2))) == "(Z/2)^2" or "Z/2" in str(AbelianInvariants((2, 2)))


def test_sparse_kernel_against_dense():
    eqs = [{0: 1, 1: -1}, {1: 2, 2: -2}, {3: 3, 4: 1}]
    basis, _ = intlin.sparse_kernel(eqs, 5)
    dense = [[e.get(j, 0) for j in range(5)] for e in eqs]
    cols = intlin.from_columns(basis, 5)
    assert intlin.same_lattice(cols, intlin.kernel_basis(dense), 5)


def test_det_bareiss():
    assert intlin.det([[2, 1], [7, 4]]) == 1
    assert intlin.det([[0, 1], [1, 0]]) == -1
    assert intlin.det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_small_examples():
    assert intlin.invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert intlin.invariant_factors([[0, 0], [0, 0]]) == [] and intlin.rank([[0, 0]]) == 0
    assert intlin.invariant_factors(intlin.identity(3)) == [1, 1, 1]
    assert intlin.hnf([[2], [4]]) == [[2], [4]]
    assert intlin.hnf(intlin.identity(3)) == intlin.identity(3)
    k = intlin.kernel_basis([[1, 1, 1]])
    assert len(k[0]) == 2 and intlin.solve_linear(k, [[1], [-1], [0]]) is not None
    assert intlin.kernel_basis([[2, 1], [1, 1]]) == [[], []]
    k = intlin.kernel_basis([[2, 4]])
    assert [row[0] for row in k] in ([2, -1], [-2, 1])
    assert intlin.solve_linear([[2]], [[4]]) == [[2]]
    assert intlin.solve_linear(intlin.identity(2), [[5], [-7]]) == [[5], [-7]]
    assert intlin.cokernel_invariants([[3]], 1).torsion == (3,)
    assert intlin.cokernel_invariants([[2, 1], [1, 1]], 2).is_trivial()
    assert intlin.cokernel_invariants([[2, 0], [0, 2]], 2).torsion == (2, 2)
    assert intlin.modp_kernel([[2]], 2) == [[1]]
    assert intlin.modp_kernel(intlin.identity(2), 2) in ([[], []], [])
    assert len(intlin.modp_kernel([[1, 1], [1, 1]], 2)[0]) == 1


def test_big_entries_stay_exact():
    a = [[10 ** 30, 1], [1, 0]]
    assert intlin.det(a) == -1
    sf = intlin.snf(a)
    assert sf.invariant_factors == [1, 1]
    assert intlin.matmul(intlin.matmul(sf.U, sf.S), sf.V) == a
