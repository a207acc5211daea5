import json
import pathlib
import sys

import numpy as np
import pytest

from gtlab import harness, matcore, randgen
from gtlab.errors import ContractionError

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
sys.path.insert(0, str(FIXTURES))
import make_golden  # noqa: E402


def test_generator_golden_file():
    expected = (FIXTURES / "generator_seed42.json").read_text()
    assert harness.dumps(make_golden.generator_document()) + "\n" == expected


def test_golden_file_decodes_to_valid_objects():
    doc = json.loads((FIXTURES / "generator_seed42.json").read_text())
    u = matcore.decode_matrix(doc["unitary"])
    assert matcore.unitarity_defect(u) <= 1e-12
    h = matcore.decode_matrix(doc["hermitian"])
    assert np.array_equal(h, h.conj().T)
    stack = np.vstack([matcore.decode_matrix(b) for b in doc["exact_tuple"]])
    assert np.linalg.norm(stack.conj().T @ stack - np.eye(3)) <= 1e-12


def test_same_key_same_values():
    a = randgen.stream(5, 3, "x").complex_gaussian(3, 2)
    b = randgen.stream(5, 3, "x").complex_gaussian(3, 2)
    assert np.array_equal(a, b)


def test_streams_independent_of_draw_order():
    late = randgen.stream(5, 9, "x")
    for i in range(9):
        randgen.stream(5, i, "x").normal(17)
    assert np.array_equal(late.uniform(4), randgen.stream(5, 9, "x").uniform(4))


def test_different_keys_differ():
    base = randgen.stream(5, 0, "x").raw(4)
    assert not np.array_equal(base, randgen.stream(6, 0, "x").raw(4))
    assert not np.array_equal(base, randgen.stream(5, 1, "x").raw(4))
    assert not np.array_equal(base, randgen.stream(5, 0, "y").raw(4))


def test_normal_spare_keeps_sequence():
    whole = randgen.stream(1, 0, "n").normal(7)
    rs = randgen.stream(1, 0, "n")
    parts = np.concatenate([rs.normal(3), rs.normal(1), rs.normal(3)])
    assert np.array_equal(whole, parts)


def test_distribution_moments():
    rs = randgen.stream(2, 0, "moments")
    u = rs.uniform(200000)
    assert 0.0 <= u.min() and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 5e-3
    g = rs.normal(200000)
    assert abs(g.mean()) < 1e-2 and abs(g.var() - 1.0) < 1e-2
    z = rs.complex_gaussian(500, 200)
    assert abs(np.mean(np.abs(z) ** 2) - 1.0) < 1e-2


def test_integers_inclusive():
    rs = randgen.stream(3, 0, "int")
    draws = {rs.integers(1, 4) for _ in range(400)}
    assert draws == {1, 2, 3, 4}


def test_qr_positive_diagonal():
    g = randgen.stream(4, 0, "qr").complex_gaussian(4, 3)
    q = randgen.qr_positive(g)
    r = q.conj().T @ g
    assert np.all(np.abs(np.diagonal(r).imag) <= 1e-12)
    assert np.all(np.diagonal(r).real >= 0)


def test_hermitian_scale():
    rs = randgen.stream(5, 0, "herm")
    assert np.array_equal(randgen.rand_hermitian(3, 0.0, rs), np.zeros((3, 3)))
    for _ in range(50):
        h = randgen.rand_hermitian(4, 4.0, rs)
        assert np.array_equal(h, h.conj().T)
        assert 0 < matcore.operator_norm(h) <= 4.0 + 1e-12


def test_pd_condition_cap():
    rs = randgen.stream(6, 0, "pd")
    np.testing.assert_allclose(randgen.rand_pd(3, 1.0, rs), np.eye(3), atol=1e-15)
    for _ in range(50):
        a = randgen.rand_pd(4, 1e3, rs)
        lam = np.linalg.eigvalsh(a)
        assert lam[0] > 0
        spread = np.log(lam[-1] / lam[0])
        assert spread <= np.log(1e3) + 1e-10


def test_contraction_tuple_resolution():
    rs = randgen.stream(7, 0, "tuple")
    for _ in range(200):
        k, n, m = rs.integers(1, 4), rs.integers(1, 5), rs.integers(1, 5)
        if k * n < m:
            with pytest.raises(ContractionError, match="k\\*n"):
                randgen.rand_contraction_tuple(k, n, m, True, rs)
            continue
        ct = randgen.rand_contraction_tuple(k, n, m, True, rs)
        assert ct.residual() <= 1e-12 * np.sqrt(m)


def test_contraction_tuple_special_cases():
    rs = randgen.stream(8, 0, "tuple")
    u = randgen.rand_contraction_tuple(1, 3, 3, True, rs).h_list[0]
    assert matcore.unitarity_defect(u) <= 1e-12
    a, b = randgen.rand_contraction_tuple(2, 1, 1, True, rs).h_list
    assert abs(a[0, 0]) ** 2 + abs(b[0, 0]) ** 2 == pytest.approx(1.0, abs=1e-15)


def test_sub_tuples():
    rs = randgen.stream(9, 0, "sub")
    for k, n, m in [(2, 2, 3), (1, 1, 3), (3, 2, 2)]:
        ct = randgen.rand_contraction_tuple(k, n, m, False, rs)
        top = np.linalg.eigvalsh(ct.gram())[-1]
        assert top <= 1.0 + 1e-12
        assert ct.resolution == "sub"


def test_invertible_contraction():
    rs = randgen.stream(10, 0, "inv")
    for _ in range(50):
        x = randgen.rand_invertible_contraction(3, 0.2, rs)
        s = np.linalg.svd(x, compute_uv=False)
        assert s[0] <= 1 + 1e-12 and s[-1] >= 0.2 - 1e-12
    x = randgen.rand_invertible_contraction(3, 1.0, rs)
    assert matcore.unitarity_defect(x) <= 1e-12
    with pytest.raises(ValueError):
        randgen.rand_invertible_contraction(3, 0.0, rs)


def test_commuting_pair():
    a, b = randgen.rand_commuting_pair(4, 1.5, randgen.stream(11, 0, "pair"))
    assert np.linalg.norm(a @ b - b @ a) <= 1e-12 * np.linalg.norm(a) * np.linalg.norm(b)


def test_gen_config_validation():
    with pytest.raises(ValueError):
        randgen.GenConfig(n_range=(0, 3))
    with pytest.raises(ValueError):
        randgen.GenConfig(min_singular=1.5)
    with pytest.raises(ValueError):
        randgen.GenConfig(cond_cap=0.5)
