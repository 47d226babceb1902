import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shellsort_lab.codec import (
    CodecError,
    Descriptor,
    decode_selfdelim,
    decode_trace,
    decode_values,
    descr_length,
    encode_per_key_totals,
    encode_selfdelim,
    encode_trace,
    encode_values,
    from_bytes,
    log2_factorial,
    read_descriptor,
    to_bytes,
    write_descriptor,
)
from shellsort_lab.increments import GENERATED, IncrementError, generate, validate
from shellsort_lab.permcore import enumerate_permutations, random_permutation
from shellsort_lab.sorter import shellsort


@pytest.mark.parametrize("v, code", [(0, "01"), (5, "110010"), (1, "10"), (2, "1101"), (6, "111101")])
def test_selfdelim_examples(v, code):
    assert encode_selfdelim(v) == code
    assert decode_selfdelim(code) == (v, len(code))


def test_selfdelim_prefix_property_example():
    assert decode_selfdelim("10" + "0011") == (1, 2)


def test_selfdelim_errors():
    with pytest.raises(CodecError):
        decode_selfdelim("0011")
    with pytest.raises(CodecError):
        decode_selfdelim("1")
    with pytest.raises(CodecError):
        encode_selfdelim(-1)


@given(st.integers(0, 2**40))
def test_selfdelim_length(v):
    code = encode_selfdelim(v)
    assert len(code) == 2 * len(format(v, "b"))
    assert decode_selfdelim(code) == (v, len(code))


@given(st.lists(st.integers(0, 10**6), max_size=60))
def test_concatenation_parses(values):
    joined = "".join(encode_selfdelim(v) for v in values)
    bits = encode_values(values)
    assert "".join(map(str, bits.tolist())) == joined
    decoded, end = decode_values(joined, len(values))
    assert decoded.tolist() == values and end == len(joined)


def test_trace_roundtrip_examples():
    t = shellsort([1, 2, 3, 4], (2, 1))
    d = encode_trace(t)
    assert decode_trace(d).tolist() == [1, 2, 3, 4]
    assert decode_trace(encode_trace(shellsort([4, 3, 2, 1], (2, 1)))).tolist() == [4, 3, 2, 1]
    a = random_permutation(100, 8)
    H = generate("hibbard", 100)
    assert np.array_equal(decode_trace(encode_trace(shellsort(a, H))), a)


def test_trace_layout_last_pass_first():
    t = shellsort([4, 3, 2, 1], (2, 1))
    # pass 2 order: 2,1,4,3 -> counts 0,1,0,1 ; pass 1: 0,1,0,1
    expected = "".join(encode_selfdelim(c) for c in [0, 1, 0, 1, 0, 1, 0, 1])
    assert encode_trace(t).bitstring() == expected


@pytest.mark.parametrize("H", [(2, 1), (3, 1), (4, 2, 1)])
@pytest.mark.parametrize("n", [5, 6, 7])
def test_trace_roundtrip_exhaustive(n, H):
    for q in enumerate_permutations(n):
        assert tuple(decode_trace(encode_trace(shellsort(q, H, retain=False)))) == q


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_injective(n):
    for H in [(2, 1), (1,)]:
        codes = {encode_trace(shellsort(q, H, retain=False)).bitstring() for q in enumerate_permutations(n)}
        assert len(codes) == math.factorial(n)


@given(st.integers(4, 400), st.integers(0, 2**32), st.sampled_from(GENERATED))
def test_trace_roundtrip_random(n, seed, family):
    try:
        H = generate(family, n)
    except IncrementError:
        return
    a = random_permutation(n, seed)
    assert np.array_equal(decode_trace(encode_trace(shellsort(a, H, retain=False))), a)


def test_decode_rejects_bad_streams():
    H = validate((2, 1), 4)
    d = encode_trace(shellsort([4, 3, 2, 1], H))
    with pytest.raises(CodecError, match="trailing"):
        decode_trace(Descriptor(np.concatenate([d.bits, [1, 0]]).astype(np.uint8), 4, H))
    with pytest.raises(CodecError):
        decode_trace(Descriptor(d.bits[:-2], 4, H))
    # a chain head cannot move
    bad = encode_values([1, 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(CodecError, match="chain"):
        decode_trace(Descriptor(bad, 4, H))


def test_descr_length_identity():
    d = encode_trace(shellsort([1, 2, 3, 4], (2, 1)))
    L = descr_length(d)
    assert (L.total, L.payload, L.overhead) == (16, 0, 16)


def test_descr_length_accounting():
    for q in enumerate_permutations(7):
        L = descr_length(encode_trace(shellsort(q, (2, 1), retain=False)))
        assert L.total >= L.payload >= 0 and L.overhead == L.total - L.payload


def test_mean_length_above_entropy_floor():
    lengths = [len(encode_trace(shellsort(q, (2, 1), retain=False))) for q in enumerate_permutations(7)]
    assert np.mean(lengths) >= log2_factorial(7)
    assert log2_factorial(7) == pytest.approx(math.log2(5040))


def test_per_key_scheme_is_length_only():
    d = encode_per_key_totals([3, 2, 1], (2, 1))
    assert d.scheme == "per_key_totals"
    assert decode_values(d.bits, 3)[0].tolist() == [1, 0, 0]
    assert descr_length(d).total == 6
    with pytest.raises(CodecError, match="no decoder"):
        decode_trace(d)


def test_file_roundtrip(tmp_path):
    a = random_permutation(50, 4)
    d = encode_trace(shellsort(a, generate("pratt_log3", 50)))
    blob = to_bytes(d)
    assert blob[:8] == b"SHLDESC1"
    back = from_bytes(blob)
    assert back.increments.h == d.increments.h and np.array_equal(back.bits, d.bits)
    path = tmp_path / "perm.desc"
    write_descriptor(d, path)
    assert np.array_equal(decode_trace(read_descriptor(path)), a)
    with pytest.raises(CodecError, match="magic"):
        from_bytes(b"XXXXXXXX" + blob[8:])
