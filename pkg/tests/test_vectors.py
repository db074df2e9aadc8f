"""VectorSet queries and the text interchange format."""

import math

import numpy as np
import pytest

from wikivec.vectors import NotInVocabulary, VectorSet, load_text, save_text


def _basis_set(frequency_ranked=False):
    return VectorSet(
        ["east", "north", "up", "northeast", "origin"],
        np.array([
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 1.0, 0.0],
            [0.0, 0.0, 0.0],
        ]),
        frequency_ranked=frequency_ranked,
    )


def test_constructor_validation():
    with pytest.raises(ValueError, match="2-D"):
        VectorSet(["a"], np.zeros(3))
    with pytest.raises(ValueError, match="one row per token"):
        VectorSet(["a", "b"], np.zeros((1, 3)))
    with pytest.raises(ValueError, match="duplicate"):
        VectorSet(["a", "a"], np.zeros((2, 3)))
    with pytest.raises(ValueError, match="whitespace"):
        VectorSet(["a b"], np.zeros((1, 3)))
    with pytest.raises(ValueError, match="empty"):
        VectorSet([""], np.zeros((1, 3)))


def test_lookup_and_membership():
    vset = _basis_set()
    assert len(vset) == 5
    assert vset.dim == 3
    assert "east" in vset and "west" not in vset
    assert vset.row("north") == 1
    assert np.array_equal(vset.get("up"), [0.0, 0.0, 1.0])
    with pytest.raises(NotInVocabulary) as err:
        vset.get("west")
    assert err.value.tokens == ("west",)


def test_cosine_hand_values():
    vset = _basis_set()
    assert vset.cosine("east", "north") == pytest.approx(0.0, abs=1e-15)
    assert vset.cosine("east", "east") == pytest.approx(1.0, abs=1e-15)
    assert vset.cosine("east", "northeast") == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    # Zero-norm rows normalise to zero rather than NaN.
    assert vset.cosine("origin", "east") == 0.0


def test_nearest_ranks_and_skips_zero_rows():
    vset = _basis_set()
    hits = vset.nearest(np.array([1.0, 0.1, 0.0]), k=10)
    assert [t for t, _ in hits] == ["east", "northeast", "north", "up"]
    assert "origin" not in [t for t, _ in hits]


def test_nearest_tie_breaks_toward_earlier_token():
    vset = VectorSet(["b_first", "a_second"], np.array([[1.0, 0.0], [1.0, 0.0]]))
    hits = vset.nearest(np.array([2.0, 0.0]), k=1)
    assert hits[0][0] == "b_first"


def test_nearest_exclusions_and_validation():
    vset = _basis_set()
    hits = vset.nearest(np.array([1.0, 0.0, 0.0]), k=2, exclude=["east"])
    assert hits[0][0] == "northeast"
    with pytest.raises(ValueError, match="zero-norm"):
        vset.nearest(np.zeros(3))
    with pytest.raises(ValueError, match="shape"):
        vset.nearest(np.ones(4))
    with pytest.raises(ValueError, match="k"):
        vset.nearest(np.ones(3), k=0)


def test_analogy_query_excludes_inputs():
    vset = VectorSet(
        ["man", "king", "woman", "queen"],
        np.array([
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 1.0, 1.0],
        ]),
    )
    assert vset.analogy_query("man", "king", "woman") == "queen"
    with pytest.raises(NotInVocabulary):
        vset.analogy_query("man", "king", "princess")


def test_rank_and_top_require_frequency_order():
    plain = _basis_set(frequency_ranked=False)
    with pytest.raises(ValueError, match="frequency"):
        plain.rank("east")
    with pytest.raises(ValueError, match="frequency"):
        plain.top(3)
    ranked = _basis_set(frequency_ranked=True)
    assert ranked.rank("up") == 2
    sub = ranked.top(2)
    assert list(sub.tokens) == ["east", "north"]
    assert len(ranked.top(99)) == 5


def test_save_load_round_trip_with_header(tmp_path):
    vset = _basis_set(frequency_ranked=True)
    path = tmp_path / "vecs.txt"
    save_text(vset, path)
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first == "5 3"
    loaded = load_text(path)
    assert loaded.tokens == vset.tokens
    assert loaded.frequency_ranked
    assert np.array_equal(loaded.matrix, vset.matrix)


def test_save_load_round_trip_without_header(tmp_path):
    vset = _basis_set()
    path = tmp_path / "vecs.txt"
    save_text(vset, path, header=False)
    loaded = load_text(path)
    assert loaded.tokens == vset.tokens
    assert np.array_equal(loaded.matrix, vset.matrix)


def test_values_written_with_six_significant_digits(tmp_path):
    vset = VectorSet(["pi"], np.array([[3.14159265358979, -0.000123456789]]))
    path = tmp_path / "pi.txt"
    save_text(vset, path, header=False)
    assert path.read_text(encoding="utf-8") == "pi 3.14159 -0.000123457\n"


def test_six_digit_format_is_idempotent_after_first_quantisation(tmp_path):
    rng = np.random.default_rng(8)
    vset = VectorSet([f"t{i}" for i in range(20)], rng.normal(size=(20, 7)))
    p1, p2 = tmp_path / "a.txt", tmp_path / "b.txt"
    save_text(vset, p1)
    save_text(load_text(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_load_errors_carry_line_numbers(tmp_path):
    ragged = tmp_path / "ragged.txt"
    ragged.write_text("a 1 2 3\nb 1 2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="line 2"):
        load_text(ragged)

    dup = tmp_path / "dup.txt"
    dup.write_text("a 1 2\na 3 4\n", encoding="utf-8")
    with pytest.raises(ValueError, match="line 2: duplicate"):
        load_text(dup)

    badfloat = tmp_path / "badfloat.txt"
    badfloat.write_text("a 1 2\nb 1 oops\n", encoding="utf-8")
    with pytest.raises(ValueError, match="line 2: bad float"):
        load_text(badfloat)

    short = tmp_path / "short.txt"
    short.write_text("3 2\na 1 2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="declares 3"):
        load_text(short)

    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ValueError, match="empty"):
        load_text(empty)


def test_header_detection_requires_exactly_two_integers(tmp_path):
    # Two-integer first line: header.  Anything else on line one is data.
    with_header = tmp_path / "with_header.txt"
    with_header.write_text("2 3\na 1 2 3\nb 4 5 6\n", encoding="utf-8")
    assert load_text(with_header).tokens == ("a", "b")

    word_first = tmp_path / "word_first.txt"
    word_first.write_text("alpha 7\nbeta 8\n", encoding="utf-8")
    loaded = load_text(word_first)
    assert loaded.tokens == ("alpha", "beta")
    assert loaded.matrix.tolist() == [[7.0], [8.0]]

    floatish = tmp_path / "floatish.txt"
    floatish.write_text("1.5 2\n", encoding="utf-8")
    loaded = load_text(floatish)
    assert loaded.tokens == ("1.5",)
    assert loaded.matrix.tolist() == [[2.0]]
