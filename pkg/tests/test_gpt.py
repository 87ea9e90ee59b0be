import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triconc.gpt import (
    CATALOG,
    IDENTITY,
    ROW_SLOTS,
    SLOT_ORDER,
    GptOperation,
    IndexSlot,
    all_operations,
    apply_gpt,
    full_transpose_identity_check,
    gpt_norm,
    is_gpt_entangled,
    parse_operation,
    regroup,
)
from triconc.states import maximally_mixed, product_state, random_mixed_state, special_type_state
from triconc.tensor_core import mixture, outer_product, trace_norm

from .oracles import partial_transpose_loop, realign_loop

DIMS = [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)]


def slot(label):
    side = "row" if label[0] == "r" else "col"
    return IndexSlot(label[1], side)


def test_catalog_contents():
    expect = {
        "Y1": "cA rA", "Y2": "cB rB", "Y3": "cC rC",
        "Y4": "cA rB rC", "Y5": "cA cB rC", "Y6": "cA cC rB",
        "Y7": "cA rB", "Y8": "cA rC", "Y9": "cB rC",
    }
    for name, labels in expect.items():
        assert CATALOG[name].moves == frozenset(slot(x) for x in labels.split())


def test_six_distinct_slots():
    assert len(set(SLOT_ORDER)) == 6
    assert len(all_operations()) == 64


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Y4", CATALOG["Y4"]),
        ("y_7", CATALOG["Y7"]),
        ("identity", IDENTITY),
        ("cA,rBC", CATALOG["Y4"]),
        ("Ac, Br", CATALOG["Y7"]),
        ("cAB,rC", CATALOG["Y5"]),
        ("CC,rc", CATALOG["Y3"]),
    ],
)
def test_parse_operation(text, expected):
    assert parse_operation(text) == expected


def test_parse_operation_rejects_garbage():
    with pytest.raises(ValueError):
        parse_operation("xA")


def test_identity_leaves_rho_unchanged():
    s = random_mixed_state((2, 3, 2), 4, 5)
    np.testing.assert_array_equal(apply_gpt(s, IDENTITY), s.rho)


@pytest.mark.parametrize("dims", DIMS)
def test_class_one_is_partial_transpose(dims):
    s = random_mixed_state(dims, 5, 11)
    for i, name in enumerate(("Y1", "Y2", "Y3")):
        img = apply_gpt(s, CATALOG[name])
        direct = partial_transpose_loop(s.rho, dims, i)
        np.testing.assert_allclose(img, direct, atol=1e-12)
        assert np.max(np.abs(img - img.conj().T)) <= 1e-10
        assert abs(gpt_norm(s, CATALOG[name]) - trace_norm(direct)) <= 1e-10


@pytest.mark.parametrize("dims", DIMS)
@pytest.mark.parametrize("name", ["Y7", "Y8", "Y9"])
def test_class_three_index_formulas(dims, name):
    s = random_mixed_state(dims, 3, 7)
    np.testing.assert_allclose(apply_gpt(s, CATALOG[name]), realign_loop(s.rho, dims, name), atol=0)


@pytest.mark.parametrize("dims", DIMS)
def test_shape_law(dims):
    s = random_mixed_state(dims, 2, 3)
    d = int(np.prod(dims))
    sizes = dict(zip("ABC", dims))
    for y in all_operations():
        img = apply_gpt(s, y)
        row_side = ROW_SLOTS ^ y.moves
        assert img.shape[0] == int(np.prod([sizes[x.subsystem] for x in row_side]))
        assert img.size == d * d


def test_involution():
    s = random_mixed_state((2, 3, 2), 4, 17)
    for y in all_operations():
        img, layout = regroup(s.rho, s.dims, ROW_SLOTS, y.moves)
        back, layout2 = regroup(img, s.dims, layout, y.moves)
        assert layout2 == ROW_SLOTS
        np.testing.assert_array_equal(back, s.rho)


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 2)])
def test_full_transpose(dims):
    assert full_transpose_identity_check(random_mixed_state(dims, 4, 23))


def test_full_transpose_ghz(ghz_rho):
    assert full_transpose_identity_check(ghz_rho)


def test_product_state_norms_are_one():
    s = outer_product(product_state([1, 1j], [0.3, 0.7], [1, -2]))
    for y in CATALOG.values():
        assert gpt_norm(s, y) == pytest.approx(1.0, abs=1e-12)


def test_example_dct_norms(example_dct):
    assert abs(gpt_norm(example_dct, CATALOG["Y1"]) - 4 / 3) <= 1e-9
    for name in ("Y4", "Y5", "Y6"):
        assert abs(gpt_norm(example_dct, CATALOG[name]) - 0.8727) <= 5e-4


def test_entanglement_verdicts(ghz_rho, example_dct):
    assert not is_gpt_entangled(maximally_mixed())
    assert not is_gpt_entangled(maximally_mixed()).violations
    verdict = is_gpt_entangled(ghz_rho)
    assert verdict.entangled and set(verdict.violations) == set(CATALOG)
    for v in verdict.norms.values():
        assert v == pytest.approx(2.0, abs=1e-12)
    dct = is_gpt_entangled(example_dct)
    assert dct.entangled and "Y1" in dct.violations


def test_unknown_slot_rejected():
    with pytest.raises(ValueError):
        GptOperation(frozenset({IndexSlot("D", "row")}))


@given(seed=st.integers(0, 2**32 - 1), p=st.floats(0, 1))
@settings(max_examples=30, deadline=None)
def test_convexity(seed, p):
    sigma = random_mixed_state((2, 2, 2), 3, seed)
    tau = random_mixed_state((2, 2, 2), 2, seed + 1)
    mix = mixture([sigma, tau], [p, 1 - p])
    for y in CATALOG.values():
        assert gpt_norm(mix, y) <= p * gpt_norm(sigma, y) + (1 - p) * gpt_norm(tau, y) + 1e-9


@given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 8))
@settings(max_examples=30, deadline=None)
def test_separable_ceiling(seed, k):
    rng = np.random.default_rng(seed)
    def local(d):
        return rng.standard_normal(d) + 1j * rng.standard_normal(d)
    states = [product_state(local(2), local(2), local(2)) for _ in range(k)]
    w = rng.uniform(size=k)
    s = mixture(states, w / w.sum())
    for y in CATALOG.values():
        assert gpt_norm(s, y) <= 1 + 1e-9


def test_special_type_catalog_norms():
    s = outer_product(special_type_state(0.6, 0.8))
    for y in CATALOG.values():
        assert abs(gpt_norm(s, y) - 1.96) <= 1e-9
