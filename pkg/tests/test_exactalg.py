import itertools
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from toricsod import exactalg as ea

small = st.integers(-9, 9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    )


def check_snf(A):
    U, S, V = ea.smith_normal_form(A)
    assert ea.matmul(ea.matmul(U, A), V) == S
    assert abs(ea.det(U)) == 1 and abs(ea.det(V)) == 1
    m, n = len(A), len(A[0])
    assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    d = [x for x in ea.diagonal(S) if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    return U, S, V


def test_snf_diag_2_3():
    _, S, _ = check_snf([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]


def test_snf_zero_matrix():
    U, S, V = ea.smith_normal_form([[0, 0], [0, 0]])
    assert S == [[0, 0], [0, 0]] and U == ea.identity(2) and V == ea.identity(2)


def test_snf_identity():
    assert check_snf([[1, 0], [0, 1]])[1] == ea.identity(2)


@given(matrices(6, 6))
def test_snf_identities(A):
    check_snf(A)


def upsilon_T(rays):
    return [list(v) for v in rays]


def test_cokernel_p123_is_z():
    G = ea.cokernel(upsilon_T([(1, 1), (-2, 1), (1, -1)]))
    assert (G.free_rank, G.invariant_factors) == (1, ())


def test_cokernel_p2mu3():
    G = ea.cokernel(upsilon_T([(1, 1), (-2, 1), (1, -2)]))
    assert (G.free_rank, G.invariant_factors) == (1, (3,))
    assert str(G) == "Z + Z/3"


def test_cokernel_identity_trivial():
    G = ea.cokernel(ea.identity(3))
    assert G.is_trivial() and str(G) == "0"
    assert G.project([4, 5, 6]).is_zero()


@given(matrices(4, 4))
def test_cokernel_invariant_under_permutation_and_basis_change(A):
    G = ea.cokernel(A)
    m, n = len(A), len(A[0])
    P = list(reversed(A))
    assert ea.cokernel(P).same_invariants(G)
    Q = [list(reversed(r)) for r in A]
    assert ea.cokernel(Q).same_invariants(G)
    # add column 0 to the others
    B = [[r[0]] + [x + r[0] for x in r[1:]] for r in A]
    assert ea.cokernel(B).same_invariants(G)


@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k), min_size=k, max_size=k)))
def test_torsion_order_is_gcd_of_minors(A):
    d = ea.det(A)
    G = ea.cokernel(A)
    if d == 0:
        assert G.free_rank > 0
    else:
        assert G.free_rank == 0 and G.torsion_order == abs(d)
        assert ea.ext1_torsion(G).order == abs(d)


def _brute_cokernel_size(A, box):
    # distinct classes of the box Z/box^m reached, for a full-rank square A with |det| | box
    m = len(A)
    n = len(A[0])
    seen = set()
    for v in itertools.product(range(box), repeat=m):
        seen.add(tuple(ea.cokernel(A).project(list(v)).coords))
    return len(seen)


@pytest.mark.parametrize("A", [[[2, 4], [6, 8]], [[3, 0], [0, 4]], [[2, 1], [0, 6]], [[4, 6], [2, 0]]])
def test_cokernel_against_enumeration(A):
    d = abs(ea.det(A))
    assert d <= 200
    assert _brute_cokernel_size(A, d) == d == ea.cokernel(A).order


def test_kernel_basis_examples():
    assert all(len(r) == 0 for r in ea.kernel_basis(ea.identity(3)))
    K = ea.kernel_basis([[1, 1]])
    col = [row[0] for row in K]
    assert col in ([1, -1], [-1, 1])
    ups = [[1, -2, 1], [1, 1, -1]]
    K = ea.kernel_basis(ups)
    assert len(K[0]) == 1
    assert ea.matmul(ups, K) == [[0], [0]]


def test_solve_integer_examples():
    assert ea.solve_integer([[2]], [4]) == [2]
    assert ea.solve_integer([[2]], [3]) is None


@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_integer_sound(A, x):
    x = x[: len(A[0])]
    b = ea.matvec(A, x)
    y = ea.solve_integer(A, b)
    assert y is not None and ea.matvec(A, y) == b
    b2 = [c + 1 for c in b]
    z = ea.solve_integer(A, b2)
    if z is not None:
        assert ea.matvec(A, z) == b2


def test_ext1_torsion_examples():
    assert ea.ext1_torsion(ea.FgAbelianGroup.from_invariants(1, [3])).invariant_factors == (3,)
    assert ea.ext1_torsion(ea.FgAbelianGroup.from_invariants(4)).is_trivial()
    assert ea.ext1_torsion(ea.FgAbelianGroup.from_invariants(2, [2])).invariant_factors == (2,)


def test_quotient_by_element():
    G = ea.FgAbelianGroup.from_invariants(0, [3])
    assert ea.quotient_by_element(G, G.gens()[0]).is_trivial()
    assert ea.quotient_by_element(G, G.zero()).invariant_factors == (3,)
    H = ea.FgAbelianGroup.from_invariants(0, [6])
    g = 3 * H.gens()[0]
    assert g.order == 2
    assert ea.quotient_by_element(H, g).invariant_factors == (3,)


def test_canonical_factors_and_direct_sum():
    assert ea.canonical_factors([2, 3]) == [6]
    assert ea.canonical_factors([4, 6, 1]) == [2, 12]
    S = ea.direct_sum(ea.FgAbelianGroup.from_invariants(1, [2]), ea.FgAbelianGroup.from_invariants(0, [3]))
    assert (S.free_rank, S.invariant_factors) == (1, (6,))


def test_group_element_arithmetic():
    G = ea.FgAbelianGroup.from_invariants(1, [4])
    a = G.element([3, 2])
    assert (a + a).coords == (2, 4)
    assert (a - a).is_zero()
    assert G.element([2, 0]).order == 2
    assert a.order is None
    assert a.to_json() == {"order": None, "coords": [3, 2]}


def test_invalid_groups_rejected():
    with pytest.raises(ValueError):
        ea.FgAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        ea.FgAbelianGroup(0, (1,))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3), st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_reduce_mod_lattice_is_canonical(vs, x):
    H = ea.hermite_basis(vs, 3)
    r = ea.reduce_mod_lattice(x, H)
    # adding a lattice vector does not change the representative
    y = [a + 2 * b for a, b in zip(x, vs[0])]
    assert ea.reduce_mod_lattice(y, H) == r
    # the difference lies in the lattice
    diff = [a - b for a, b in zip(x, r)]
    if any(diff):
        assert ea.solve_integer(ea.transpose(H, 3) if H else [[0], [0], [0]], diff) is not None


def test_inverse_unimodular():
    U = [[2, 1], [1, 1]]
    assert ea.matmul(U, ea.inverse_unimodular(U)) == ea.identity(2)
    with pytest.raises(ValueError):
        ea.inverse_unimodular([[2, 0], [0, 1]])


def test_rank():
    assert ea.rank([[1, 2], [2, 4]]) == 1
    assert ea.rank([[0, 0]]) == 0
