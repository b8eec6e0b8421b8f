import numpy as np
import pytest

import bcinv


def test_z6_compute():
    status, report = bcinv.run({
        "command": "compute",
        "ring": "Z6",
        "elements": {"a": 5, "b": 4, "c": 4},
    })
    assert status == 0
    assert report["outcome"] == "ok"
    assert report["outputs"]["y"] == 2


def test_absent_inverse_is_status_1():
    status, report = bcinv.run({
        "command": "compute",
        "ring": "R:2",
        "elements": {"a": [[0, 1], [1, 0]], "b": [[1, 0], [0, 0]], "c": [[1, 0], [0, 0]]},
    })
    assert status == 1
    assert report["outcome"] == "InverseAbsent"


def test_bad_ring_is_status_2():
    status, _ = bcinv.run({"command": "compute", "ring": "nonsense", "elements": {}})
    assert status == 2


def test_csv_has_status_row():
    _, report = bcinv.run({"command": "compute", "ring": "Z6", "elements": {"a": 5, "b": 4, "c": 4}})
    assert bcinv.to_csv(report).splitlines()[1] == "status,0"


def test_representations_match_closed_form():
    a = np.diag([2.0, 3.0])
    e = np.diag([1.0, 0.0])
    y = bcinv.bc_inverse(a, e, e)
    np.testing.assert_allclose(y, np.diag([0.5, 0.0]), atol=1e-12)
    v = bcinv.corner_v(e, e)
    for f in (bcinv.integral, bcinv.series, bcinv.limit):
        np.testing.assert_allclose(f(a, v), y, atol=1e-8)


def test_random_against_numpy_oracle():
    rng = np.random.default_rng(7)
    n = 4
    b = rng.standard_normal((n, 2)) @ rng.standard_normal((2, n))
    c = rng.standard_normal((n, 2)) @ rng.standard_normal((2, n))
    a = rng.standard_normal((n, n))
    # y = B (C a B)^{-1} C with B, C spanning range(b) and the row space of c.
    ub = np.linalg.svd(b)[0][:, :2]
    vc = np.linalg.svd(c)[2][:2, :]
    want = ub @ np.linalg.inv(vc @ a @ ub) @ vc
    np.testing.assert_allclose(bcinv.bc_inverse(a, b, c), want, atol=1e-9)


def test_bound_and_errors():
    a = np.diag([2.0, 3.0])
    e = np.diag([1.0, 0.0])
    r = bcinv.perturbation_bound(a, e, e, 0.1)
    assert r["holds"] and r["measured"] <= r["bound"]
    with pytest.raises(bcinv.Error) as info:
        bcinv.bc_inverse(np.array([[0.0, 1.0], [1.0, 0.0]]), e, e)
    assert info.value.kind == "InverseAbsent"
    assert bcinv.spectral_radius(a) == pytest.approx(3.0)
