import pytest

from shellsort_lab.increments import (
    GENERATED,
    TARGET_EXPONENTS,
    IncrementError,
    InfeasibleSequence,
    generate,
    parse_increments,
    pratt_2i3j_set,
    validate,
)


@pytest.mark.parametrize(
    "family, n, expected",
    [
        ("shell", 16, (8, 4, 2, 1)),
        ("hibbard", 100, (63, 31, 15, 7, 3, 1)),
        ("pratt_log3", 30, (13, 4, 1)),
        ("pratt_2i3j", 20, (9, 8, 6, 4, 3, 2, 1)),
        ("knuth2", 1000, (10, 1)),
        ("papernov_stasevich", 16, (9, 5, 3, 2, 1)),
        ("shell", 17, (8, 4, 2, 1)),
        ("hibbard", 64, (63, 31, 15, 7, 3, 1)),
        ("pratt_log3", 13, (4, 1)),
    ],
)
def test_generate_examples(family, n, expected):
    assert generate(family, n).h == expected


def test_validate():
    assert validate((4, 2, 1), 8).h == (4, 2, 1)
    for h, code in [((4, 4, 1), "not_decreasing"), ((4, 2), "last_not_one"), ((8, 1), "first_not_below_n"), ((), "empty")]:
        with pytest.raises(IncrementError) as info:
            validate(h, 8)
        assert info.value.code == code


GRID = [4, 5, 7, 10, 16, 31, 64, 100, 127, 1000, 1024, 4096, 10**4, 65536, 10**5, 10**6]


@pytest.mark.parametrize("family", GENERATED)
def test_generated_sequences_validate(family):
    for n in GRID:
        try:
            H = generate(family, n)
        except InfeasibleSequence:
            assert family in ("jk3", "jk3_conjecture") and n < 100
            continue
        assert validate(H.h, n).h == H.h


def test_pratt_2i3j_matches_sieve():
    for n in [20, 100, 1000, 4096, 65536]:
        limit = n // 2
        sieve = []
        for v in range(1, limit):
            x = v
            while x % 2 == 0:
                x //= 2
            while x % 3 == 0:
                x //= 3
            if x == 1:
                sieve.append(v)
        assert pratt_2i3j_set(limit) == sieve
        assert generate("pratt_2i3j", n).h == tuple(sorted(sieve, reverse=True))


@pytest.mark.parametrize("family", sorted(TARGET_EXPONENTS))
def test_real_exponent_families_theta_consistent(family):
    for n in [10**3, 10**4, 10**5, 10**6]:
        H = generate(family, n)
        for h, e in zip(H.h, TARGET_EXPONENTS[family]):
            assert 0.5 <= h / n**e <= 2.0


def test_jk3_coprime():
    import math

    for n in [10**3, 5000, 10**4, 12345, 10**5, 10**6]:
        h1, h2, _ = generate("jk3", n).h
        assert math.gcd(h1, h2) == 1 and h1 > h2


def test_infeasible_is_explicit():
    with pytest.raises(InfeasibleSequence):
        generate("jk3", 4)
    with pytest.raises(InfeasibleSequence):
        generate("shell", 3)


def test_custom_and_unknown():
    assert generate("custom", 8, (4, 2, 1)).family == "custom"
    with pytest.raises(IncrementError):
        generate("custom", 8)
    with pytest.raises(IncrementError):
        generate("sedgewick", 100)
    assert parse_increments("4, 2,1") == (4, 2, 1)
