"""Smoke test for the pseudogauss_py extension module."""

import math

import pseudogauss_py as pg


def close(a, b, tol):
    return all(abs(x - y) < tol for x, y in zip(a, b))


def main():
    names = pg.catalog_names()
    assert "clifford_torus" in names and len(names) == 14, names

    sig = pg.Signature(5, 1)
    assert sig.dot([0, 0, 0, 0, 1], [0, 0, 0, 0, 1]) == -1.0
    assert sig.causal_character([1, 0, 0, 0, 1]) == "null"

    torus = pg.Surface("clifford_torus")
    u = [0.7, 2.3]
    p = torus.point(u)
    assert abs(sig.dot(p, p) - 1.0) < 1e-12

    nu = torus.gauss_map(u)
    lap = torus.laplacian(u)
    assert close(lap, [2.0 * x for x in nu], 1e-10)
    assert close(torus.laplacian_numeric(u), lap, 1e-6)

    fit = torus.classify()
    assert fit["verdict"] == "one_type_through_origin", fit["verdict"]
    assert abs(fit["lambda_p"] - 2.0) < 1e-6

    mt = pg.Surface("marginally_trapped")
    geo = mt.geometry([0.3, 1.0])
    assert geo["hhat_character"] == "null"
    assert abs(geo["gauss_curvature"] - 1.0) < 1e-8
    assert abs(geo["shape_operators"][0][0][0] + 1.0 / math.sqrt(2.0)) < 1e-8

    report = pg.verify("horosphere", n=3)
    assert report["passed"] and report["fit"]["verdict"] == "biharmonic"

    chart = "\n".join([
        "dim 2",
        "signature 4 0",
        "domain 0 1 0 1",
        "component cos[1,0;0]",
        "component sin[1,0;0]",
        "component 0",
        "component 0",
    ])
    try:
        pg.Surface.from_chart(chart).gauss_map([0.5, 0.5])
    except pg.GeometryError as e:
        assert "degenerate" in str(e)
    else:
        raise AssertionError("degenerate chart accepted")

    try:
        pg.Surface("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown name accepted")

    data = [([float(i == k) + 0.1 * k for i in range(10)], None) for k in range(6)]
    c = [0.2] * 10
    data = [(nu_k, [3.0 * (a - b) for a, b in zip(nu_k, c)]) for nu_k, _ in data]
    f = pg.fit_one_type(5, 1, data)
    assert abs(f["lambda"] - 3.0) < 1e-10 and close(f["c"], c, 1e-10)

    print("pseudogauss_py", pg.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
