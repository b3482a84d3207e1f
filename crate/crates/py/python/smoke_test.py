"""Smoke test for the tschirn extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import json

import tschirn


def main():
    p = tschirn.predict(3, 5)
    assert p["structure"] == [0, -5, -10], p
    assert p["genus"] == 13, p

    p = tschirn.predict(4, 2, delta=1)
    assert p["structure"] == [0, -3, -5, -7], p
    assert p["twisted"] == [0, -2, -5, -7], p

    conic = tschirn.CoxCurve(2, 1, 0, [[1, 0, 1], [], [1]])
    assert conic.is_smooth()
    assert conic.structure_splitting() == [0, -1]

    curve = tschirn.CoxCurve.random(3, 2, 1, seed=5)
    report = tschirn.verify(curve)
    assert report["computed"] == [0, -3, -5], report
    assert report["computed_twisted"] == [0, -2, -5], report
    assert report["matches"] and report["twisted_matches"]
    again = tschirn.CoxCurve.from_json(curve.to_json())
    assert again.structure_splitting() == report["computed"]

    nodal = tschirn.CoxCurve(2, 2, 0, [[0, 0, -2, -3, -1], [], [1]])
    assert not nodal.is_smooth()
    assert nodal.singular_witness()["base_values"] == ["0/1"]
    try:
        tschirn.verify(nodal)
    except ValueError:
        pass
    else:
        raise AssertionError("singular curve accepted")

    fermat = {
        "G": [{"exp": [4, 0, 0], "coeff": 1}, {"exp": [0, 4, 0], "coeff": 1}, {"exp": [0, 0, 4], "coeff": 1}],
        "P": [0, 0, 1],
        "L": [0, 0, 1],
    }
    assert tschirn.verify_plane(json.dumps(fermat))["computed"] == [0, -1, -2, -3]

    # [[x^2, 1], [0, x^-1]]
    rows = [[[2, [1]], [0, [1]]], [[0, []], [-1, [1]]]]
    assert tschirn.splitting_type(rows) == [2, -1]
    assert tschirn.factorize(rows)["exponents"] == [2, -1]
    assert tschirn.h0(rows, 0) == 3

    assert tschirn.intersect("H", "H", 4) == 4
    assert tschirn.adjunction_genus("3H", 2) == 4
    assert tschirn.pushforward(-3, 2) == ([], [-2, -4])
    print("smoke test passed")


if __name__ == "__main__":
    main()
