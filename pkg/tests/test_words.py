import itertools

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wapkit.errors import PreconditionError, WordError
from wapkit.words import (
    BlockSpec,
    Constant,
    Geometric,
    Morphism,
    Recurrence,
    ToeplitzPattern,
    abelian_equivalent,
    apply_morphism,
    block_word_stream,
    finite_stream,
    fixed_point_stream,
    named_word,
    parikh,
    periodic_stream,
    prefix,
    read_word,
    toeplitz_stream,
    unify_letters,
    write_word,
)

PAPERFOLDING_32 = "00100110001101100010011100110110"


def morphism(*images):
    return Morphism(tuple(images))


# -- morphisms ---------------------------------------------------------------


@pytest.mark.parametrize(
    "images,u,expected",
    [
        (("01", "10"), "011", "011010"),
        (("0", "1"), "0010", "0010"),
        (("0001", "1011"), "0001", "0001000100011011"),
    ],
)
def test_apply_morphism_examples(images, u, expected):
    assert apply_morphism(Morphism(images), u) == expected


def test_apply_morphism_rejects_letter_outside_domain():
    with pytest.raises(WordError):
        apply_morphism(morphism("01", "10"), "012")


def test_morphism_properties():
    m = Morphism.parse("0001/1011")
    assert m.uniform and m.k == 4 and m.sigma == 2
    assert m.prolongeable(0) and m.prolongeable(1)
    assert m.incidence_matrix() == [[3, 1], [1, 3]]
    assert str(m.swapped()) == "0100/1110"
    assert not morphism("01", "0011").uniform
    assert morphism("01", "0011").k is None
    with pytest.raises(WordError):
        morphism("01", "")


@pytest.mark.parametrize(
    "images,start,n,expected",
    [
        (("01", "10"), 0, 8, "01101001"),
        (("0001", "1011"), 0, 16, "0001000100011011"),
        (("0001", "1011"), 1, 4, "1011"),
    ],
)
def test_fixed_point_examples(images, start, n, expected):
    assert fixed_point_stream(Morphism(images), start).prefix(n) == expected


def test_fixed_point_requires_prolongeable_start():
    with pytest.raises(PreconditionError):
        fixed_point_stream(morphism("10", "01"), 0)
    with pytest.raises(PreconditionError):
        fixed_point_stream(morphism("0", "1"), 0)  # k = 1


def test_fixed_point_property_enumerated():
    # every binary morphism with k <= 5 prolongeable on 0, n up to 10^4
    count = 0
    for k in range(2, 6):
        for tail in itertools.product("01", repeat=k - 1):
            for img1 in itertools.product("01", repeat=k):
                m = morphism("0" + "".join(tail), "".join(img1))
                u = fixed_point_stream(m, 0).prefix(10_000)
                assert apply_morphism(m, u)[: len(u)] == u
                count += 1
    assert count == 8 + 32 + 128 + 512


binary_images = st.text(alphabet="01", min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(img0=binary_images, img1=binary_images, u=st.text(alphabet="01", max_size=12))
def test_parikh_linearity(img0, img1, u):
    m = morphism(img0, img1)
    M = m.incidence_matrix()
    v = parikh(u, 2)
    expected = tuple(sum(M[i][j] * v[j] for j in range(2)) for i in range(2))
    assert parikh(apply_morphism(m, u), 2) == expected


@settings(max_examples=60, deadline=None)
@given(
    tail0=st.text(alphabet="012", min_size=1, max_size=3),
    img1=st.text(alphabet="012", min_size=1, max_size=4),
    img2=st.text(alphabet="012", min_size=1, max_size=4),
)
def test_lazy_fast_and_brute_fixed_points_agree(tail0, img1, img2):
    images = ("0" + tail0, img1, img2)
    m = Morphism(images)
    w = fixed_point_stream(m, 0)
    n = 500
    brute = oracles.fixed_point(images, 0, n)
    assert w.prefix(n) == brute
    assert "".join(itertools.islice(w.fresh(), len(brute))) == brute


def test_slow_growth_morphism_uses_stack_expansion():
    # 0 -> 01, 1 -> 1 grows by one letter per round
    w = fixed_point_stream(morphism("01", "1"), 0)
    assert w.prefix(300) == "0" + "1" * 299


# -- Toeplitz ---------------------------------------------------------------


@pytest.mark.parametrize(
    "pattern,n,expected",
    [("0?1?", 8, "00100110"), ("01", 6, "010101"), ("0?1?", 32, PAPERFOLDING_32)],
)
def test_toeplitz_examples(pattern, n, expected):
    assert toeplitz_stream(pattern).prefix(n) == expected


def test_toeplitz_pattern_validation():
    with pytest.raises(WordError):
        ToeplitzPattern("?01")
    with pytest.raises(WordError):
        ToeplitzPattern("")
    p = ToeplitzPattern("0?1?")
    assert (p.length, p.holes) == (4, 2)


patterns = st.builds(
    lambda first, rest: first + rest,
    st.sampled_from("012"),
    st.text(alphabet="012?", max_size=6),
)


@settings(max_examples=80, deadline=None)
@given(pattern=patterns)
def test_toeplitz_skeleton_and_self_similarity(pattern):
    n = 10_000
    u = toeplitz_stream(pattern).prefix(n)
    assert u == oracles.toeplitz(pattern, n)
    for j in range(1, n + 1):
        c = pattern[(j - 1) % len(pattern)]
        if c != "?":
            assert u[j - 1] == c
    # T = F_P(T): filling the holes of P^omega with T itself gives T back
    holes = (i for i in range(n) if pattern[i % len(pattern)] == "?")
    for h, i in enumerate(holes):
        assert u[i] == u[h]


def test_toeplitz_lazy_matches_fast():
    w = toeplitz_stream("0?1?")
    assert "".join(itertools.islice(w.fresh(), 4096)) == w.prefix(4096)


# -- named words and block words -----------------------------------------


def test_named_examples():
    assert named_word("paperfolding").prefix(32) == PAPERFOLDING_32
    assert named_word("prop34").prefix(10) == "0120112222"
    assert named_word("prop31").prefix(7) == "0100101"
    assert named_word("prop12").prefix(8) == "01110100"
    assert named_word("thue_morse").prefix(4) == "0110"
    with pytest.raises(WordError):
        named_word("fibonacci")


def test_named_words_match_block_oracle():
    assert named_word("prop12").prefix(5000) == oracles.blocks(
        ["01", "1", "10", "0"], [x for i in range(1, 200) for x in (2 * i - 1, 1, 2 * i, 1)], 5000
    )
    assert named_word("prop31").prefix(5000) == oracles.blocks(
        ["01", "0"], [x for i in range(20) for x in (2**i, 1)], 5000
    )
    exps = [1, 1, 1, 1, 2, 4]
    while len(exps) < 40:
        exps.append(exps[-1] + exps[-2])
    assert named_word("prop34").prefix(100_000) == oracles.blocks(["0", "1", "2"], exps, 100_000)
    assert named_word("thue_morse").prefix(4096) == oracles.thue_morse(4096)


def test_block_word_examples():
    spec = BlockSpec(("0", "1"), (Constant(1), Constant(2)))
    assert block_word_stream(spec).prefix(6) == "011011"
    assert named_word("prop34").prefix(16) == "0120112222000000"


def test_block_exponent_generators():
    assert list(itertools.islice(iter(Geometric(2, 1)), 5)) == [1, 2, 4, 8, 16]
    rec = Recurrence((1, 1, 1, 1, 2, 4))
    assert list(itertools.islice(iter(rec), 10)) == [1, 1, 1, 1, 2, 4, 6, 10, 16, 26]
    with pytest.raises(WordError):
        Constant(0)
    with pytest.raises(WordError):
        block_word_stream(BlockSpec(("0", "1"), (Geometric(2, 0),))).prefix(5)


def test_prop34_half_frequency_at_block_ends():
    exps = list(itertools.islice(iter(Recurrence((1, 1, 1, 1, 2, 4))), 21))
    u = named_word("prop34").prefix(sum(exps))
    end = 0
    for i, e in enumerate(exps, start=1):
        end += e
        if 4 <= i <= 20:
            letter = str((i - 1) % 3)
            assert 2 * u[:end].count(letter) == end


@pytest.mark.parametrize("u,n,expected", [("01", 5, "01010"), ("0", 3, "000"), ("0120", 8, "01200120")])
def test_periodic_examples(u, n, expected):
    assert periodic_stream(u).prefix(n) == expected


def test_periodic_rejects_empty():
    with pytest.raises(WordError):
        periodic_stream("")


# -- prefixes and streams -------------------------------------------------------


def test_prefix_examples():
    pf = named_word("paperfolding")
    assert prefix(pf, 0) == ""
    assert prefix(pf, 3) == "001"
    assert prefix(named_word("thue_morse"), 4) == "0110"
    with pytest.raises(WordError):
        prefix(pf, -1)


def test_stream_cursor_and_prefix_are_independent():
    w = named_word("paperfolding")
    assert w.take(5) == "00100"
    assert w.prefix(3) == "001"
    assert next(w) == "1"
    assert w.position == 6
    assert w.fresh().take(6) == PAPERFOLDING_32[:6]


def test_paperfolding_identities():
    u = named_word("paperfolding").prefix(4**6)
    for k in range(1, 7):
        p = u[: 4**k - 1]
        assert p.count("0") == 4**k // 2
        assert p.count("1") == 4**k // 2 - 1


# -- Parikh vectors, unification, I/O ----------------------------------------


def test_parikh_examples():
    assert parikh("0010") == (3, 1)
    assert abelian_equivalent("01", "10")
    assert not abelian_equivalent("0001", "1011")
    with pytest.raises(WordError):
        parikh("01a")


def test_unify_examples():
    assert unify_letters("0120", 0, 1) == "0020"
    assert unify_letters("222", 0, 1) == "222"
    assert unify_letters("0120112222", 1, 2) == "0110111111"
    assert unify_letters("0120", 1, 2, compact=True) == "0110"
    assert unify_letters("0120", 0, 2, compact=True) == "0100"
    with pytest.raises(WordError):
        unify_letters("01", 1, 1)
    w = unify_letters(named_word("prop34"), 0, 2)
    assert w.prefix(10) == unify_letters("0120112222", 0, 2)


@settings(max_examples=1000, deadline=None)
@given(u=st.text(alphabet="012", max_size=100), pair=st.permutations([0, 1, 2]))
def test_unify_preserves_length_and_adds_counts(u, pair):
    a, b = pair[0], pair[1]
    v = unify_letters(u, a, b)
    assert len(v) == len(u)
    assert v.count(str(a)) == u.count(str(a)) + u.count(str(b))
    assert str(b) not in v


def test_word_file_round_trip(tmp_path):
    u = named_word("paperfolding").prefix(1000)
    path = tmp_path / "w.txt"
    write_word(path, u)
    assert read_word(path) == u
    path.write_text("0 01\n10\n")
    assert read_word(path) == "00110"
    path.write_text("01x")
    with pytest.raises(WordError):
        read_word(path)


def test_finite_stream_stops_at_end():
    w = finite_stream("0110")
    assert w.prefix(100) == "0110"
    assert w.finite
