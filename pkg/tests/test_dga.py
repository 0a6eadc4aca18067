import itertools

import pytest
from hypothesis import given, strategies as st

from augiso.dga import (
    DgaParseError, Poly, dga_parse, dga_serialize, dga_validate, eval_map, leibniz_boundary,
)
from augiso.gfield import field_make

from conftest import corpus_cases, load

UNKNOT = """
field 2^1
components 1
gen t 0 1 1 loop
gen a 1 1 1 chord
diff a = 1 + t
"""


def poly(dga, text):
    """Sum of the dot-separated words in ``text``, all with coefficient 1."""
    out = Poly(dga.field)
    for term in text.split("+"):
        letters = [x for x in term.strip().split(".") if x != "1"]
        out = out + Poly.word(dga.field, dga.reduce(dga.gen_index(x) for x in letters))
    return out


def test_unknot_parse():
    dga = dga_parse(UNKNOT)
    assert [g.name for g in dga.generators] == ["t", "t^-1", "a"]
    assert dga.n == 1
    assert dga_validate(dga) == []
    assert dga.format_poly(dga.diff[dga.gen_index("a")]) in ("1 + t", "t + 1")


def test_composability_error():
    text = """field 2^1
components 2
gen b -1 1 2 chord
gen c -1 1 2 chord
gen a 0 1 2 chord
diff b = 0
diff c = 0
diff a = b.c
"""
    try:
        dga = dga_parse(text)
    except DgaParseError as exc:
        assert "compos" in str(exc)
    else:
        assert any(i.kind == "composability" for i in dga_validate(dga))


def test_degree_minus_one_target_accepted():
    dga = dga_parse("field 2^2\ncomponents 1\ngen e 0 1 1 chord\ngen b -1 1 1 chord\ndiff e = b\ndiff b = 0\n")
    assert dga_validate(dga) == []


def test_d_squared_witness():
    dga = dga_parse("""field 2^1
components 1
gen a 1 1 1 chord
gen e 0 1 1 chord
gen b -1 1 1 chord
diff a = e
diff e = b
diff b = 0
""")
    issues = [i for i in dga_validate(dga) if i.kind == "d2"]
    assert [i.generator for i in issues] == ["a"]


def naive_d2(dga):
    """d(d x) for each generator by literal expansion, without reduction shortcuts."""
    out = {}
    for x in range(len(dga)):
        total = {}
        for w, c in dga.diff[x].terms.items():
            for t in range(len(w)):
                for v, a in dga.diff[w[t]].terms.items():
                    word = dga.reduce(tuple(w[:t]) + tuple(v) + tuple(w[t + 1:]))
                    total[word] = total.get(word, dga.field.zero) + c * a
        out[dga.generators[x].name] = {w: c for w, c in total.items() if c}
    return out


@pytest.mark.parametrize("name,m", corpus_cases())
def test_corpus_valid(name, m):
    dga = load(name, m)
    assert dga_validate(dga) == []
    assert all(not v for v in naive_d2(dga).values())


def test_leibniz_examples():
    dga = dga_parse(UNKNOT)
    assert leibniz_boundary(dga, Poly.unit(dga.field)).is_zero()
    assert leibniz_boundary(dga, poly(dga, "t")).is_zero()
    assert leibniz_boundary(dga, poly(dga, "a.a")) == poly(dga, "t.a + a.t")
    b = dga_parse("field 2^1\ncomponents 1\ngen t 0 1 1 loop\ngen b -1 1 1 chord\ndiff b = 0\n")
    assert leibniz_boundary(b, poly(b, "t.b")).is_zero()


def test_eval_examples(gf4):
    dga = dga_parse(UNKNOT, field=gf4)
    p = dga.diff[dga.gen_index("a")]
    assert eval_map(dga, {"t": gf4.one, "t^-1": gf4.one, "a": gf4.zero}, p) == gf4.zero
    g = gf4.gen
    assert eval_map(dga, {"t": g, "t^-1": g.inv(), "a": gf4.zero}, p) == gf4.one + g
    b = dga_parse("field 2^2\ncomponents 1\ngen e 0 1 1 chord\ngen b -1 1 1 chord\ndiff e = b.e + e.b\ndiff b = 0\n")
    vals = {"e": g, "b": gf4.zero}
    assert eval_map(b, vals, b.diff[b.gen_index("e")]) == gf4.zero


def test_inverse_cancels():
    dga = dga_parse(UNKNOT)
    t, ti = dga.gen_index("t"), dga.gen_index("t^-1")
    a = dga.gen_index("a")
    assert dga.reduce((a, t, ti, a)) == (a, a)
    assert dga.reduce((t, t, ti, ti)) == ()


@given(st.lists(st.sampled_from([0, 1, 2]), max_size=10), st.integers(0, 10))
def test_reduction_confluent(word, cut):
    dga = dga_parse(UNKNOT)
    w = tuple(word)
    cut = min(cut, len(w))
    once = dga.reduce(w)
    assert dga.reduce(once) == once
    assert dga.concat(dga.reduce(w[:cut]), dga.reduce(w[cut:])) == once


@given(st.lists(st.sampled_from(["t", "t^-1", "a"]), max_size=4),
       st.lists(st.sampled_from(["t", "t^-1", "a"]), max_size=4))
def test_boundary_is_a_derivation(u, v):
    dga = dga_parse(UNKNOT)
    pu = Poly.word(dga.field, dga.reduce(dga.gen_index(x) for x in u))
    pv = Poly.word(dga.field, dga.reduce(dga.gen_index(x) for x in v))
    lhs = leibniz_boundary(dga, dga.mul(pu, pv))
    rhs = dga.mul(leibniz_boundary(dga, pu), pv) + dga.mul(pu, leibniz_boundary(dga, pv))
    assert lhs == rhs


@given(st.lists(st.sampled_from([0, 1, 2]), max_size=6), st.sampled_from([1, 2]), st.data())
def test_eval_is_multiplicative(word, m, data):
    f = field_make(m)
    dga = dga_parse(UNKNOT, field=f)
    t = f(data.draw(st.integers(1, f.order - 1)))
    vals = [t, t.inv(), f(data.draw(st.integers(0, f.order - 1)))]
    w = dga.reduce(word)
    for k in range(len(w) + 1):
        whole = eval_map(dga, vals, Poly.word(f, w))
        parts = eval_map(dga, vals, Poly.word(f, w[:k])) * eval_map(dga, vals, Poly.word(f, w[k:]))
        assert whole == parts


@pytest.mark.parametrize("name,m", corpus_cases())
def test_serialize_round_trip(name, m):
    dga = load(name, m)
    assert dga_parse(dga_serialize(dga)) == dga


def test_energy_violation():
    dga = dga_parse("""field 2^1
components 1
gen e 0 1 1 chord
gen b -1 1 1 chord
energy e 1
energy b 2
diff e = b
diff b = 0
""")
    assert [i.kind for i in dga_validate(dga)] == ["energy"]


@pytest.mark.parametrize("text,line", [
    ("field 2^1\ncomponents 1\ngen a 1 1 1 chord\ndiff a = q\n", 4),
    ("field 2^1\ncomponents 1\ngen a 1 1 1 chord\n", None),
    ("field 2^1\ncomponents x\n", 2),
    ("field 2^1\ncomponents 1\ngen a 1 1 1 widget\ndiff a = 0\n", 3),
    ("field 3^1\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(DgaParseError) as info:
        dga_parse(text)
    if line is not None:
        assert info.value.line == line


def test_unit_word_only_on_diagonal():
    with pytest.raises(DgaParseError, match="unit word"):
        dga_parse("field 2^1\ncomponents 2\ngen a 1 2 1 chord\ndiff a = 1\n")


def test_words_in_corpus_are_composable():
    for name, m in corpus_cases():
        dga = load(name, m)
        for x, p in dga.diff.items():
            assert all(dga.composable(w) for w, _ in p.items())
        assert list(itertools.chain(dga.chords(), dga.loops()))
