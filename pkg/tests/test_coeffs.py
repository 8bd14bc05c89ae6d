import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from paratwist.coeffs import (
    CoeffTable,
    LinearForm,
    add,
    canonical_key,
    emit,
    evaluate,
    has_improper_automorphism,
    ingest,
    ingest_text,
    lookup,
    lookup_symbolic,
    scale,
)
from paratwist.data import upsilon20_table
from paratwist.errors import (
    DuplicateKeyConflict,
    InputError,
    InvalidHeader,
    MissingCoefficient,
    OutsideANplus,
    ParseError,
)
from paratwist.qform import HalfIntegralForm as F, RationalMatrix2, reduced_forms, transform

UPSILON = "N=1 k=20\n1,0,18 2256995864880\n2,0,9 -4329978670800\n"


def test_lookup_examples():
    t = ingest_text(UPSILON)
    assert lookup(t, F(81, 78, 19)) == 2256995864880
    assert lookup(t, F(81, 24, 2)) == -4329978670800
    with pytest.raises(MissingCoefficient) as exc:
        lookup(CoeffTable(1, 20), F(1, 0, 1))
    assert exc.value.keys == [(1, 0, 1)]
    with pytest.raises(OutsideANplus):
        lookup(t, F(1, 3, 1))


def test_shipped_table():
    t = upsilon20_table()
    assert t == ingest_text(UPSILON)


def test_lookup_symbolic():
    assert lookup_symbolic(F(81, 78, 19), 1, 20) == LinearForm({(1, 0, 18): 1})
    assert lookup_symbolic(F(2, 1, 3), 1, 20) == LinearForm({(2, 1, 3): 1})
    # (2,-1,3) needs a determinant -1 move to reach (2,1,3)
    assert lookup_symbolic(F(2, -1, 3), 1, 19) == LinearForm({(2, 1, 3): -1})
    assert lookup_symbolic(F(2, -1, 3), 1, 20) == LinearForm({(2, 1, 3): 1})


def test_level_n_normalization():
    key, sign = canonical_key(F(6, 13, 10), 2)
    assert key == (6, 1, 3) and sign == 1
    key, sign = canonical_key(F(6, -13, 10), 2)
    assert key == (6, 1, 3) and sign == -1
    with pytest.raises(OutsideANplus):
        canonical_key(F(5, 1, 3), 2)


def test_ingest_examples():
    assert len(ingest_text(UPSILON)) == 2
    assert len(ingest_text("N=1 k=20\n")) == 0
    with pytest.raises(ParseError) as exc:
        ingest_text("N=1 k=20\n1,0 5\n")
    assert exc.value.line == 2
    with pytest.raises(InvalidHeader):
        ingest_text("k=20\n1,0,1 5\n")
    with pytest.raises(InvalidHeader):
        ingest_text("")
    with pytest.raises(DuplicateKeyConflict):
        ingest_text("N=1 k=20\n1,0,18 1\n81,78,19 2\n")
    with pytest.raises(ParseError):
        ingest_text("N=1 k=20\n1,0,18 abc\n")


def test_ingest_comments_fractions_and_canonicalization():
    t = ingest_text("# header comment\nN=1 k=19\n\n2,-1,3 5/7  # trailing\n")
    assert t.entries == {(2, 1, 3): Fraction(-5, 7)}
    assert ingest_text("N=1 k=20\n81,78,19 3\n1,0,18 3\n").entries == {(1, 0, 18): 3}


def test_ingest_from_path(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text(UPSILON)
    assert ingest(path) == ingest(str(path)) == ingest(io.StringIO(UPSILON))


def test_table_validation():
    with pytest.raises(InputError):
        CoeffTable(1, 20, {(81, 78, 19): 1})
    with pytest.raises(InputError):
        CoeffTable(1, 19, {(1, 0, 18): 3})
    with pytest.raises(InputError):
        CoeffTable(0, 20)
    assert has_improper_automorphism((3, 3, 5), 1)
    assert has_improper_automorphism((3, 1, 3), 1)
    assert not has_improper_automorphism((3, 1, 3), 3)
    assert not has_improper_automorphism((2, 1, 3), 1)


def test_linear_form_algebra_examples():
    L = LinearForm({(1, 0, 1): 2, (1, 1, 1): Fraction(1, 3)})
    assert add(L, scale(-1, L)).is_zero()
    assert (L - L).support() == []
    t = CoeffTable(1, 20, {(1, 0, 1): 4})
    assert evaluate(LinearForm({(1, 0, 1): Fraction(3, 2)}), t) == 6
    with pytest.raises(MissingCoefficient) as exc:
        evaluate(L, t)
    assert exc.value.keys == [(1, 1, 1)]
    assert L.evaluate(t.entries, missing_ok=True) == 8
    assert LinearForm({(1, 0, 1): 0}).is_zero()


KEYS = [S.key for S in reduced_forms(60)]
forms_st = st.dictionaries(st.sampled_from(KEYS), st.fractions(max_denominator=50), max_size=8)


@given(forms_st, forms_st, st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_evaluate_is_linear(d1, d2, c1, c2):
    rng = random.Random(len(d1) * 31 + len(d2))
    t = CoeffTable(1, 20, {k: rng.randint(-99, 99) for k in KEYS})
    L1, L2 = LinearForm(d1), LinearForm(d2)
    lhs = evaluate(add(scale(c1, L1), scale(c2, L2)), t)
    assert lhs == c1 * evaluate(L1, t) + c2 * evaluate(L2, t)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.sampled_from(KEYS), st.fractions(max_denominator=9), max_size=30),
       st.sampled_from([19, 20]))
def test_emit_ingest_round_trip(entries, k):
    if k % 2:
        entries = {key: v for key, v in entries.items() if not has_improper_automorphism(key, 1)}
    t = CoeffTable(1, k, entries)
    text = emit(t)
    assert ingest_text(text) == t
    lines = text.splitlines()[1:]
    assert lines == sorted(lines, key=lambda s: tuple(map(int, s.split()[0].split(","))))


def _random_unimodular(rng):
    M = RationalMatrix2.identity()
    gens = [RationalMatrix2(1, 1, 0, 1), RationalMatrix2(1, -1, 0, 1),
            RationalMatrix2(0, -1, 1, 0), RationalMatrix2(1, 0, 0, -1)]
    for _ in range(rng.randint(0, 10)):
        M = M @ rng.choice(gens)
    return M


def test_symbolic_lookup_agrees_with_numeric():
    rng = random.Random(5)
    for k in (19, 20):
        t = CoeffTable(1, k, {key: rng.randint(-50, 50) for key in KEYS
                              if not (k % 2 and has_improper_automorphism(key, 1))})
        for _ in range(200):
            key = rng.choice(KEYS)
            if key not in t:
                continue
            S = transform(F(*key), _random_unimodular(rng))
            assert evaluate(lookup_symbolic(S, 1, k), t) == lookup(t, S)
