import itertools
import math
import random
from collections import Counter

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from arsss.array_codes import evenodd_generator
from arsss.errors import NotFullRank, TooLarge
from arsss.generator import GeneratorMatrix, vandermonde_generator
from arsss.leakage import (
    asymptotic_check,
    check_decomposition,
    closed_form_entropy_212,
    conditional_entropy,
    count_box_solutions,
    count_secret_solutions,
    hyperfactorial,
    iter_box_solutions,
    leakage_gap,
    smith_normal_form,
    solve_diophantine,
)
from arsss.leakage.entropy import joint_counts
from arsss.matrix import matmul, matvec
from arsss.prob import ProbSequence, restricted_alphabet

TWO_SHARE = GeneratorMatrix(((1, 1), (1, -1)), 2, 1)

# reference coefficient matrix and V1 for the width-4 two-share system
REF_G = ((1, 1, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0), (0, 0, 1, 1, 0, 0), (0, 0, 0, 0, 1, 1))
REF_V1 = ((1, 0, 0, 0, -1, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, -1, 0),
          (0, 0, 0, 0, 1, 0), (0, 0, 0, 1, 0, -1), (0, 0, 0, 0, 0, 1))
REF_V2 = ((1, -1, 1, 0), (0, 1, -1, 0), (0, 0, 1, 0), (0, 0, 0, 1))


# ---------------------------------------------------------------------- Smith form

def test_snf_single_row():
    d = smith_normal_form(((1, 1),))
    assert d.V2 == ((1,),)
    assert d.V1 == ((1, -1), (0, 1))
    assert d.B == ((1, 0),)


def test_snf_identity():
    I = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    d = smith_normal_form(I)
    assert d.V1 == I and d.V2 == I and d.B == I


def test_reference_decomposition_is_valid():
    from arsss.leakage.smith import SmithDecomposition
    reference = SmithDecomposition(REF_V2, matmul(matmul(REF_V2, REF_G), REF_V1), REF_V1, 4)
    assert check_decomposition(REF_G, reference)
    assert reference.B == tuple(tuple(int(i == j) for j in range(6)) for i in range(4))


def test_our_decomposition_spans_the_reference_solutions():
    ours = smith_normal_form(REF_G)
    assert check_decomposition(REF_G, ours)
    assert ours.diagonal == (1, 1, 1, 1)
    rng = random.Random(6)
    for _ in range(20):
        y = [rng.randint(0, 8) for _ in range(4)]
        mine = set(iter_box_solutions(REF_G, y, [0] * 6, [4] * 6))
        D = matvec(REF_V2, y)
        reference = set()
        for r2, r3 in itertools.product(range(-10, 11), repeat=2):
            x = matvec(REF_V1, list(D) + [r2, r3])
            if all(0 <= v <= 4 for v in x):
                reference.add(x)
        assert mine == reference


def test_snf_not_full_rank():
    with pytest.raises(NotFullRank):
        smith_normal_form(((1, 2), (2, 4)))
    assert smith_normal_form(((1, 2), (2, 4)), require_full_rank=False).rank == 1


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(r, 8).flatmap(
    lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_validity_against_sympy(rows):
    G = tuple(map(tuple, rows))
    d = smith_normal_form(G, require_full_rank=False)
    assert check_decomposition(G, d)
    diag = [v for v in d.diagonal if v]
    assert len(diag) == d.rank == sympy.Matrix(rows).rank()
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert diag == ref_diag


# ---------------------------------------------------------------------- Diophantine

def test_solve_single_equation():
    sol = solve_diophantine(((1, 1),), [5])
    assert sol.divisibility_ok
    pts = {sol.point((r,)) for r in range(-3, 4)}
    assert pts == {(5 - r, r) for r in range(-3, 4)}


def test_solve_not_divisible():
    assert not solve_diophantine(((2, 2),), [3]).divisibility_ok
    assert count_box_solutions(((2, 2),), [3], [0, 0], [10, 10]) == 0


def test_solve_zero_rhs():
    sol = solve_diophantine(((3, 5, 7), (1, 1, 2)), [0, 0])
    assert sol.particular == (0, 0, 0)


def brute_box(G, y, lo, hi):
    k = len(G[0])
    return sum(1 for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
               if all(sum(g * v for g, v in zip(row, x)) == t for row, t in zip(G, y)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_box_counts_match_brute_force(data):
    rows = data.draw(st.integers(1, 3))
    cols = data.draw(st.integers(1, 4))
    G = tuple(tuple(data.draw(st.integers(-5, 5)) for _ in range(cols)) for _ in range(rows))
    q = data.draw(st.integers(1, 6))
    x = [data.draw(st.integers(0, q)) for _ in range(cols)]
    y = matvec(G, x) if data.draw(st.booleans()) else [data.draw(st.integers(-10, 10)) for _ in range(rows)]
    lo, hi = [0] * cols, [q] * cols
    assert count_box_solutions(G, y, lo, hi) == brute_box(G, y, lo, hi)


# ---------------------------------------------------------------------- secret counts

def test_counts_two_share_first_row():
    assert count_secret_solutions(((1, 1),), [(3, 13)], 8, 2).total == 4
    assert count_secret_solutions(((1, 1),), [(13, 3)], 8, 2).total == 2 * 8 - 13 + 1
    for y in range(17):
        assert count_secret_solutions(((1, 1),), [(y, 16 - y)], 8, 2).total == (y + 1 if y <= 8 else 17 - y)


def _brute_secret_counts(G, q, m, L):
    alphabet = restricted_alphabet(q, m)
    k = len(G[0])
    u = q / m
    table = {}
    for X in itertools.product(alphabet, repeat=k):
        y = tuple(tuple(int(sum(g * x.values[c] - g * u + abs(g) * u for g, x in zip(row, X))) for c in range(m))
                  for row in G)
        s = tuple(x.values for x in X[:L])
        table.setdefault(y, Counter())[s] += 1
    return table


@pytest.mark.parametrize("q,m", [(4, 2), (8, 2), (4, 4), (8, 4)])
def test_counts_match_brute_force_two_symbols(q, m):
    for G in (((1, 1),), ((1, -1),), ((2, 1),)):
        table = _brute_secret_counts(G, q, m, 1)
        for y, per in table.items():
            got = count_secret_solutions(G, y, q, m)
            assert got.total == sum(per.values())
            assert got.per_secret == dict(per)


def test_counts_match_brute_force_three_symbols():
    G = ((1, 2, 1), (1, -1, 3))
    table = _brute_secret_counts(G, 4, 2, 1)
    for y, per in table.items():
        got = count_secret_solutions(G, y, 4, 2)
        assert got.per_secret == dict(per)


def test_counts_inconsistent_shares():
    assert count_secret_solutions(((1, 1),), [(3, 3)], 8, 2).total == 0


def test_counts_cap():
    with pytest.raises(TooLarge):
        count_secret_solutions(((1, 1, 1),), [(20, 28)], 16, 2, cap=10)


# ---------------------------------------------------------------------- entropy

def brute_entropy(G, subset, q, m):
    """H(S | Y'') straight from the definition, with exact probabilities."""
    alphabet = restricted_alphabet(q, m)
    k, L, l = G.k, G.L, getattr(G, "l", 1)
    rows = [G.matrix[b * l + r] for b in subset for r in range(l)]
    u = q / m
    joint = Counter()
    for X in itertools.product(alphabet, repeat=k * l):
        y = tuple(tuple(sum(g * x.values[c] - g * u + abs(g) * u for g, x in zip(row, X)) for c in range(m))
                  for row in rows)
        joint[(y, tuple(X[:L * l]))] += 1
    total = len(alphabet) ** (k * l)
    by_y = Counter()
    for (y, _), c in joint.items():
        by_y[y] += c
    h = 0.0
    for (y, _), c in joint.items():
        h -= c / total * math.log2(c / by_y[y])
    return h


@pytest.mark.parametrize("G,subset,q,m", [
    (TWO_SHARE, [0], 4, 2),
    (TWO_SHARE, [1], 4, 2),
    (TWO_SHARE, [0], 4, 4),
    (vandermonde_generator(4, 3, 1), [0, 2], 2, 2),
    (vandermonde_generator(4, 3, 2), [3], 2, 2),
    (vandermonde_generator(3, 3, 2), [1], 4, 4),
    (evenodd_generator(3, 1, 4), [1], 1, 2),
])
def test_entropy_matches_definition(G, subset, q, m):
    r = conditional_entropy(G, subset, q, m)
    assert r.H_S_given_Y == pytest.approx(brute_entropy(G, subset, q, m), abs=1e-9)
    assert r.sandwiched


def test_probability_normalisation():
    jc = joint_counts(((1, 1),), 2, 1, 8, 4)
    assert int(jc.n_y.sum()) == jc.total == int(jc.n_sy.sum())


def test_closed_form_small_cases():
    assert hyperfactorial(3) == 1 * 4 * 27
    assert closed_form_entropy_212(1) == pytest.approx(0.5, abs=1e-12)


def test_closed_form_agrees_with_enumeration():
    for q in range(1, 65):
        r = conditional_entropy(TWO_SHARE, [0], q, 2)
        assert r.H_S_given_Y == pytest.approx(closed_form_entropy_212(q), abs=1e-9), q


def test_second_share_leaks_like_the_first():
    for q in (4, 8):
        a = conditional_entropy(TWO_SHARE, [0], q, 2).H_S_given_Y
        b = conditional_entropy(TWO_SHARE, [1], q, 2).H_S_given_Y
        assert a == pytest.approx(b, abs=1e-12)


def test_all_k_shares_leave_nothing():
    G = vandermonde_generator(4, 3, 2)
    for q in (2, 4):
        r = conditional_entropy(G, [0, 1, 3], q, 2)
        assert r.ratio == 0 and r.upper_bound == 0


def test_asymptotic_check_two_share_grid():
    chk = asymptotic_check(TWO_SHARE, [0], [4, 8, 12, 16], 2)
    assert chk.nondecreasing and chk.within_bounds


def test_bounds_and_gap():
    G = vandermonde_generator(5, 3, 1)
    r = conditional_entropy(G, [0, 1], 4, 2)
    assert r.sandwiched
    assert leakage_gap(G) == pytest.approx(math.log2(10 * 7 * 7))
    # lower bound in the scalar case is (L - j) log(q + 1) - log g
    assert r.lower_bound == pytest.approx(math.log2(5) - math.log2(3 * 7))


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("ARSSS_ENUM_CAP", "100")
    with pytest.raises(TooLarge):
        conditional_entropy(vandermonde_generator(4, 3, 1), [0], 8, 2)
