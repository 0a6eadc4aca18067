import itertools

import pytest
from hypothesis import given, settings, strategies as st

from augiso.augment import Augmentation, enumerate_augmentations
from augiso.dga import Poly, dga_parse
from augiso.homotopy import (
    DilatedHomotopy, HomotopyError, apply_dilation, compose_homotopy_dilation, decompose_dilated_homotopy,
    extend_K, find_dilated_homotopy, is_dilated_homotopy, parse_witness, serialize_witness,
)
from augiso.oracle import brute_witnesses

from conftest import corpus_cases, load

LOOP_B = """field 2^2
components 1
gen t 0 1 1 loop
gen b -1 1 1 chord
diff b = 0
"""


def aug(dga, **values):
    return Augmentation.from_mapping(dga, values)


def pairs(dga):
    augs = enumerate_augmentations(dga)
    return list(itertools.product(augs, repeat=2))


# -- extend_K ---------------------------------------------------------------

def test_extend_k_examples(gf4):
    g = gf4.gen
    dga = dga_parse(LOOP_B)
    e = aug(dga, t=g)
    f = aug(dga, t=gf4.one)
    assert extend_K(dga, e, f, {"b": g}, Poly.unit(gf4)) == gf4.zero
    t, b = dga.gen_index("t"), dga.gen_index("b")
    assert extend_K(dga, e, f, {"b": g}, Poly.word(gf4, (t, b))) == g + 1
    dgab = load("dgaB", 2)
    p = dgab.diff[dgab.gen_index("e")]
    assert extend_K(dgab, aug(dgab, e=0), aug(dgab, e=1), {"b": 1}, p) == gf4.one


def test_k_only_on_negative_chords():
    dga = load("dgaB", 2)
    with pytest.raises(HomotopyError):
        extend_K(dga, aug(dga, e=0), aug(dga, e=0), {"e": 1}, dga.diff[0])


# -- checker and search -----------------------------------------------------

@pytest.mark.parametrize("name,m", corpus_cases())
def test_reflexive(name, m):
    dga = load(name, m)
    one = dga.field.one
    for e in enumerate_augmentations(dga):
        assert is_dilated_homotopy(dga, e, e, DilatedHomotopy((one,) * dga.n, {}))
        h = find_dilated_homotopy(dga, e, e)
        assert h.d == (one,) * dga.n and h.is_pure_dilation


def test_checker_examples(gf4):
    g = gf4.gen
    dgab = load("dgaB", 2)
    assert is_dilated_homotopy(dgab, aug(dgab, e=0), aug(dgab, e=1), DilatedHomotopy((gf4.one,), {"b": gf4.one}))
    dgaa = load("dgaA_gf4", 2)
    assert is_dilated_homotopy(dgaa, aug(dgaa, e=1), aug(dgaa, e=g), DilatedHomotopy((gf4.one, g + 1)))
    chk = is_dilated_homotopy(dgaa, aug(dgaa, e=1), aug(dgaa, e=g), DilatedHomotopy((gf4.one, g)))
    assert not chk and chk.generator == "e"


def test_find_examples(gf2, gf4):
    g = gf4.gen
    a2 = load("dgaA_gf2", 1)
    assert find_dilated_homotopy(a2, aug(a2, e=1), aug(a2, e=0)) is None
    a4 = load("dgaA_gf4", 2)
    h = find_dilated_homotopy(a4, aug(a4, e=1), aug(a4, e=g))
    assert h == DilatedHomotopy((gf4.one, g + 1), {})
    assert find_dilated_homotopy(a4, aug(a4, e=1), aug(a4, e=g), mode="plain") is None


def test_loop_mismatch_rejected(gf4):
    dga = load("hopf", 2)
    augs = enumerate_augmentations(dga)
    t1 = dga.gen_index("t1")
    for e1, e2 in itertools.product(augs, repeat=2):
        if e1.values[t1] != e2.values[t1]:
            assert find_dilated_homotopy(dga, e1, e2) is None
            chk = is_dilated_homotopy(dga, e1, e2, DilatedHomotopy((gf4.one, gf4.one)))
            assert not chk and chk.generator in ("t1", "t2")


@pytest.mark.parametrize("name,m", corpus_cases())
@pytest.mark.parametrize("mode", ["full", "plain", "dilation"])
def test_find_is_complete(name, m, mode):
    dga = load(name, m)
    for e1, e2 in pairs(dga)[:400]:
        h = find_dilated_homotopy(dga, e1, e2, mode)
        assert (h is not None) == bool(brute_witnesses(dga, e1, e2, mode, first_only=True))
        if h is not None:
            assert is_dilated_homotopy(dga, e1, e2, h)
            if mode == "plain":
                assert h.is_plain
            if mode == "dilation":
                assert h.is_pure_dilation


@pytest.mark.parametrize("name,m", corpus_cases())
def test_unit_scaling(name, m):
    dga = load(name, m)
    for e1, e2 in pairs(dga)[:100]:
        h = find_dilated_homotopy(dga, e1, e2)
        if h is None:
            continue
        for lam in dga.field.units():
            assert is_dilated_homotopy(dga, e1, e2, h.scaled(lam))


@pytest.mark.parametrize("name", ["trefoil", "hopf_ext", "dgaB", "unknot_stab2"])
def test_over_gf2_d_is_one(name):
    dga = load(name, 1)
    for e1, e2 in pairs(dga):
        for h in brute_witnesses(dga, e1, e2):
            assert h.is_plain


# -- dilations and (de)composition -------------------------------------------

def test_apply_dilation_examples(gf4):
    g = gf4.gen
    a4 = load("dgaA_gf4", 2)
    e = aug(a4, e=g)
    assert apply_dilation(a4, e, (1, 1)) == e
    assert apply_dilation(a4, e, (gf4.one, g))["e"] == g + 1
    tref = load("trefoil", 2)
    for x in enumerate_augmentations(tref):
        assert apply_dilation(tref, x, (g,)) == x


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["hopf", "hopf_ext", "dgaA_gf4", "dgaE"]), st.data())
def test_dilation_is_an_isomorphism(name, data):
    dga = load(name, 2)
    augs = enumerate_augmentations(dga)
    e = data.draw(st.sampled_from(augs))
    units = dga.field.units()
    d = tuple(data.draw(st.sampled_from(units)) for _ in range(dga.n))
    e2 = apply_dilation(dga, e, d)
    assert e2 in augs
    assert apply_dilation(dga, e2, [x.inv() for x in d]) == e
    inv = tuple(x.inv() for x in d)
    assert is_dilated_homotopy(dga, e, e2, DilatedHomotopy(inv, {}))


def test_compose_examples(gf4):
    g = gf4.gen
    dgae = load("dgaE", 2)
    e1, e2 = aug(dgae, e12=1), aug(dgae, e12=g)
    kplain = DilatedHomotopy((gf4.one, gf4.one), {"b12": gf4.one + g})
    assert is_dilated_homotopy(dgae, e1, e2, kplain)
    e3, h = compose_homotopy_dilation(dgae, e1, e2, kplain, (gf4.one, g))
    assert h.kvals["b12"] == kplain.kvals["b12"]
    assert e3["e12"] == g.inv() * g
    assert is_dilated_homotopy(dgae, e1, e3, h)
    same, h1 = compose_homotopy_dilation(dgae, e1, e2, kplain, (1, 1))
    assert same == e2 and h1 == kplain
    e3, h = compose_homotopy_dilation(dgae, e1, e1, DilatedHomotopy((gf4.one, gf4.one), {}), (g, g + 1))
    assert h.is_pure_dilation and is_dilated_homotopy(dgae, e1, e3, h)


def test_decompose_examples(gf4):
    g = gf4.gen
    a4 = load("dgaA_gf4", 2)
    mid, kplain, d = decompose_dilated_homotopy(a4, aug(a4, e=1), aug(a4, e=g), DilatedHomotopy((gf4.one, g + 1)))
    assert mid["e"] == gf4.one and kplain.is_plain and kplain.is_pure_dilation
    assert d == (gf4.one, g + 1)
    dgab = load("dgaB", 2)
    h = DilatedHomotopy((gf4.one,), {"b": g})
    mid, kplain, _ = decompose_dilated_homotopy(dgab, aug(dgab, e=0), aug(dgab, e=g), h)
    assert mid == aug(dgab, e=g) and kplain == h


def test_compose_requires_plain(gf4):
    a4 = load("dgaA_gf4", 2)
    e = aug(a4, e=1)
    with pytest.raises(HomotopyError):
        compose_homotopy_dilation(a4, e, e, DilatedHomotopy((gf4.one, gf4.gen)), (1, 1))


# -- text format --------------------------------------------------------------

@pytest.mark.parametrize("name,m", corpus_cases())
def test_witness_round_trip(name, m):
    dga = load(name, m)
    for e1, e2 in pairs(dga)[:60]:
        h = find_dilated_homotopy(dga, e1, e2)
        if h is not None:
            text = serialize_witness(dga, h)
            assert parse_witness(dga, text) == h
            assert parse_witness(dga, "ISO\n" + text) == h


def test_witness_parse_errors():
    dga = load("dgaB", 2)
    for text in ["d = (1, 1)\n", "d = (0\n", "d = (1)\nK e = 1\n", "d = (1)\nK q = 1\n"]:
        with pytest.raises(HomotopyError):
            parse_witness(dga, text)
