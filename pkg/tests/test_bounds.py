import math

import numpy as np
import pytest

from triconc.bounds import (
    bound_corollary,
    bound_theorem1,
    bound_theorem2,
    cut_dimensions,
    proof_cut_inequalities,
    reorder_subsystems,
    theorem2_bound_array,
)
from triconc.concurrence import concurrence_pure
from triconc.gpt import CATALOG, gpt_norm
from triconc.states import (
    ghz_state,
    maximally_mixed,
    product_state,
    random_mixed_state,
    random_pure_state,
    special_type_state,
)
from triconc.tensor_core import mixture, outer_product

R2 = 1 / math.sqrt(2)


def _consistent(rep):
    for k, term in rep.bound_terms.items():
        assert abs(term - rep.coefficients[k] * (rep.norms[k] - 1)) <= 1e-12
    assert rep.lower_bound == max(0.0, *rep.bound_terms.values())


def test_theorem1_example_dct(example_dct):
    rep = bound_theorem1(example_dct)
    assert abs(rep.lower_bound - 1 / 3) <= 1e-9
    assert rep.theorem == "T1" and not rep.conditional
    assert abs(rep.bound_terms["Y2"]) <= 1e-9 and abs(rep.bound_terms["Y3"]) <= 1e-9
    for k in ("Y4", "Y5", "Y6"):
        assert rep.bound_terms[k] < 0
    _consistent(rep)


def test_theorem1_separable_and_ghz(ghz_rho):
    assert bound_theorem1(maximally_mixed()).lower_bound == 0.0
    rep = bound_theorem1(ghz_rho)
    assert rep.lower_bound == pytest.approx(1.0, abs=1e-12)
    assert rep.lower_bound <= concurrence_pure(ghz_state())


def test_theorem1_rejects_non_qubit():
    with pytest.raises(ValueError, match="bound_theorem2"):
        bound_theorem1(random_mixed_state((2, 3, 2), 2, 1))


def test_theorem2_examples(ghz_rho, example_dct):
    rep = bound_theorem2(ghz_rho)
    assert all(c == pytest.approx(R2) for c in rep.coefficients.values())
    assert rep.lower_bound == pytest.approx(R2, abs=1e-12)
    for dims in [(2, 2, 2), (2, 3, 2), (2, 2, 4)]:
        prod = outer_product(product_state(*[np.ones(d) for d in dims]))
        assert bound_theorem2(prod).lower_bound <= 1e-12
    t2 = bound_theorem2(example_dct).lower_bound
    assert abs(t2 - (4 / 3 - 1) / math.sqrt(2)) <= 1e-9
    assert t2 < bound_theorem1(example_dct).lower_bound


def test_theorem2_coefficients_for_2x3x2():
    rep = bound_theorem2(random_mixed_state((2, 3, 2), 3, 8))
    assert cut_dimensions((2, 3, 2)) == {"A": 2, "B": 3, "C": 2}
    assert rep.coefficients["Y2"] == pytest.approx(math.sqrt(1 / 6))
    assert rep.coefficients["Y1"] == rep.coefficients["Y3"] == pytest.approx(R2)
    _consistent(rep)


def test_theorem2_dims_order():
    s = random_mixed_state((3, 2, 2), 3, 2)
    with pytest.raises(ValueError, match="reorder_subsystems"):
        bound_theorem2(s)
    moved = reorder_subsystems(s, "BAC")
    assert tuple(moved.dims) == (2, 3, 2)
    _consistent(bound_theorem2(moved))


def test_reorder_subsystems_is_index_permutation():
    v = random_pure_state((2, 3, 4), 9)
    s = outer_product(v)
    moved = reorder_subsystems(s, "CAB")
    expected = v.amplitudes.reshape(2, 3, 4).transpose(2, 0, 1).reshape(-1)
    np.testing.assert_allclose(moved.rho, np.outer(expected, expected.conj()), atol=1e-15)
    with pytest.raises(ValueError):
        reorder_subsystems(s, "AAB")


def test_theorem2_degenerate_cut_omitted():
    s = random_mixed_state((1, 2, 3), 2, 4)
    rep = bound_theorem2(s)
    assert "Y1" not in rep.coefficients and "Y4" not in rep.coefficients
    assert any("A cut" in n for n in rep.notes)
    s = random_mixed_state((1, 1, 3), 2, 4)
    rep = bound_theorem2(s)
    assert rep.coefficients == {} and rep.lower_bound == 0.0
    assert theorem2_bound_array(s.rho[None], s.dims).tolist() == [0.0]


def test_theorem1_dominates_theorem2_termwise():
    for seed in range(20):
        s = random_mixed_state((2, 2, 2), 1 + seed % 8, seed)
        t1, t2 = bound_theorem1(s), bound_theorem2(s)
        for k in ("Y1", "Y2", "Y3"):
            assert t1.bound_terms[k] >= t2.bound_terms[k] or t1.bound_terms[k] < 0


def test_corollary_examples(ghz_rho):
    phi = outer_product(special_type_state(0.6, 0.8))
    mix = mixture([phi, ghz_rho], [0.5, 0.5])
    rep = bound_corollary(mix)
    assert rep.conditional and rep.theorem == "Corollary"
    assert rep.lower_bound == pytest.approx(max(gpt_norm(mix, y) for y in CATALOG.values()) - 1, abs=1e-12)
    _consistent(rep)

    for l0 in (0.3, 0.6, R2):
        l4 = math.sqrt(1 - l0 * l0)
        pure = special_type_state(l0, l4)
        lb = bound_corollary(outer_product(pure)).lower_bound
        assert lb == pytest.approx(2 * l0 * l4, abs=1e-9)
        assert lb <= concurrence_pure(pure) + 1e-12

    assert bound_corollary(outer_product(product_state([1, 0], [1, 0], [1, 0]))).lower_bound <= 1e-12


def test_corollary_rejects_non_qubit():
    with pytest.raises(ValueError):
        bound_corollary(random_mixed_state((2, 3, 2), 2, 1))


def test_cut_inequalities_examples():
    for check in proof_cut_inequalities(ghz_state()):
        assert check.coefficient == 0.5
        assert abs(check.residual) <= 1e-12 and check.holds
    for check in proof_cut_inequalities(product_state([1, 0], [1, 1], [0, 1])):
        assert abs(check.residual) <= 1e-12 and check.holds


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 2), (3, 3, 2)])
def test_cut_inequalities_random(dims):
    for seed in range(50):
        assert all(c.holds for c in proof_cut_inequalities(random_pure_state(dims, seed)))


def test_pure_state_soundness():
    for seed in range(200):
        v = random_pure_state((2, 2, 2), seed)
        s = outer_product(v)
        c = concurrence_pure(v)
        assert c >= bound_theorem1(s).lower_bound - 1e-9
        assert c >= bound_theorem2(s).lower_bound - 1e-9


def test_mixture_soundness():
    rng = np.random.default_rng(31)
    for trial in range(200):
        k = int(rng.integers(1, 5))
        vecs = [random_pure_state((2, 2, 2), int(rng.integers(2**32))) for _ in range(k)]
        w = rng.uniform(size=k)
        w /= w.sum()
        s = mixture(vecs, w)
        average = sum(wi * concurrence_pure(v) for wi, v in zip(w, vecs))
        assert average >= bound_theorem1(s).lower_bound - 1e-9


def test_report_serialises(example_dct):
    d = bound_theorem1(example_dct).to_dict()
    assert {"dims", "norms", "bound_terms", "lower_bound", "theorem", "conditional"} <= set(d)
    assert d["dims"] == [2, 2, 2]
