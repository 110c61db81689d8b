"""Group models: normal forms, word lengths, canonical balls."""

import itertools

import numpy as np
import pytest

from rdmap.groups import (
    BallCapError,
    CyclicGroup,
    FreeAbelianGroup,
    FreeGroup,
    GroupMismatchError,
)

F2 = FreeGroup(2)
Z1 = FreeAbelianGroup(1)
Z3 = FreeAbelianGroup(3)
C5 = CyclicGroup(5)

ALL_GROUPS = [FreeGroup(1), F2, FreeGroup(3), Z1, FreeAbelianGroup(2), C5, CyclicGroup(6)]


# ---------------------------------------------------------------------------
# independent oracles


def naive_reduce(word):
    """Repeatedly delete the first adjacent cancelling pair until none remain."""
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] == word[i + 1].swapcase():
                word = word[:i] + word[i + 2 :]
                changed = True
                break
    return word


def brute_force_reduced_words(rank, n):
    """All reduced words of length <= n by filtering every string."""
    letters = "".join(c + c.upper() for c in "abcdefghijklmnopqrstuvwxyz"[:rank])
    found = set()
    for length in range(n + 1):
        for tup in itertools.product(letters, repeat=length):
            w = "".join(tup)
            if naive_reduce(w) == w:
                found.add(w)
    return found


def cyclic_bfs_distance(m, x):
    """Word metric on Z/m via breadth-first search over generator steps."""
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for step in (1, m - 1):
                w = (v + step) % m
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist[x]


# ---------------------------------------------------------------------------
# worked examples


def test_identity():
    assert F2.identity() == ""
    assert Z3.identity() == (0, 0, 0)
    assert C5.identity() == 0


def test_multiply_free():
    assert F2.multiply("a", "A") == ""
    # "ab" * "Ba": the bB pair cancels, leaving "aa"
    assert F2.multiply("ab", "Ba") == naive_reduce("abBa") == "aa"


def test_multiply_abelian():
    g = FreeAbelianGroup(2)
    assert g.multiply((1, 2), (3, -1)) == (4, 1)


def test_inverse():
    assert F2.inverse("ab") == "BA"
    assert C5.inverse(2) == 3
    assert FreeAbelianGroup(2).inverse((1, -4)) == (-1, 4)


def test_word_length():
    assert F2.length("") == 0
    assert F2.length("aBa") == 3
    assert C5.length(3) == 2 == cyclic_bfs_distance(5, 3)


def test_cyclic_length_matches_bfs_everywhere():
    for m in (2, 3, 5, 6, 9):
        g = CyclicGroup(m)
        for x in range(m):
            assert g.length(x) == cyclic_bfs_distance(m, x)


def test_ball_free():
    assert F2.ball(0) == [""]
    ball2 = F2.ball(2)
    assert len(ball2) == 17
    assert set(ball2) == brute_force_reduced_words(2, 2)


def test_ball_cyclic():
    assert set(C5.ball(2)) == {0, 1, 2, 3, 4}
    assert C5.ball(2) == [0, 1, 4, 2, 3]  # by length, then residue


def test_ball_abelian():
    assert Z1.ball(2) == [(0,), (-1,), (1,), (-2,), (2,)]
    ball = FreeAbelianGroup(2).ball(2)
    assert len(ball) == 13 == FreeAbelianGroup(2).ball_size(2)


# ---------------------------------------------------------------------------
# invariants and properties


def _sample_elements(group, rng, count):
    pool = group.ball(3)
    idx = rng.integers(0, len(pool), size=count)
    return [pool[i] for i in idx]


@pytest.mark.parametrize("group", ALL_GROUPS, ids=repr)
def test_group_axioms(group):
    rng = np.random.default_rng(7)
    e = group.identity()
    xs = _sample_elements(group, rng, 30)
    ys = _sample_elements(group, rng, 30)
    zs = _sample_elements(group, rng, 30)
    for x, y, z in zip(xs, ys, zs):
        assert group.multiply(group.multiply(x, y), z) == group.multiply(
            x, group.multiply(y, z)
        )
        assert group.multiply(x, group.inverse(x)) == e
        assert group.multiply(e, x) == x


@pytest.mark.parametrize("group", ALL_GROUPS, ids=repr)
def test_length_axioms(group):
    rng = np.random.default_rng(11)
    assert group.length(group.identity()) == 0
    for x, y in zip(_sample_elements(group, rng, 40), _sample_elements(group, rng, 40)):
        assert group.length(x) == group.length(group.inverse(x))
        assert group.length(group.multiply(x, y)) <= group.length(x) + group.length(y)


@pytest.mark.parametrize("group", ALL_GROUPS, ids=repr)
def test_ball_prefix_and_reproducible(group):
    b3 = group.ball(3)
    b4 = group.ball(4)
    assert b4[: len(b3)] == b3
    assert group.ball(3) == b3  # stable across calls
    assert all(group.length(x) <= 3 for x in b3)
    assert len(b3) == group.ball_size(3)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_free_sphere_sizes(rank):
    g = FreeGroup(rank)
    balls = [g.ball(n) for n in range(7)]
    for n in range(1, 7):
        sphere = len(balls[n]) - len(balls[n - 1])
        assert sphere == 2 * rank * (2 * rank - 1) ** (n - 1)


def test_ball_ordering_is_length_then_lex():
    ball = F2.ball(2)
    keys = [F2.sort_key(w) for w in ball]
    assert keys == sorted(keys)
    assert ball[:5] == ["", "a", "A", "b", "B"]


def test_ball_cap():
    with pytest.raises(BallCapError):
        F2.ball(12)  # 1,062,881 elements
    assert len(F2.ball(11, cap=400_000)) == F2.ball_size(11) == 354_293


def test_ball_size_closed_forms():
    for n in range(7):
        assert FreeGroup(1).ball_size(n) == 2 * n + 1
        assert F2.ball_size(n) == len(brute_force_reduced_words(2, n)) if n <= 3 else True
    assert Z1.ball_size(10) == 21
    assert C5.ball_size(1) == 3
    assert C5.ball_size(7) == 5


# ---------------------------------------------------------------------------
# encoding, normalization, validation


def test_parse_normalizes_free_words():
    assert F2.parse("abB") == "a"
    assert F2.parse("aA") == ""
    assert F2.length("abBA") == 0


def test_parse_cyclic_wraps():
    assert C5.parse(7) == 2
    assert C5.parse(-1) == 4


def test_encode_round_trip():
    assert F2.parse(F2.encode("aB")) == "aB"
    assert Z3.parse(Z3.encode((1, -2, 0))) == (1, -2, 0)
    assert C5.parse(C5.encode(3)) == 3


def test_mismatch_errors():
    with pytest.raises(GroupMismatchError):
        F2.multiply("a", "c")  # rank-2 group has no letter c
    with pytest.raises(GroupMismatchError):
        Z3.length((1, 2))
    with pytest.raises(GroupMismatchError):
        C5.length(9)
    with pytest.raises(GroupMismatchError):
        F2.length(3)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        FreeGroup(0)
    with pytest.raises(ValueError):
        FreeAbelianGroup(0)
    with pytest.raises(ValueError):
        CyclicGroup(1)
