"""Smoke test for the crystald extension module."""

import crystald

N5 = {
    "n": 5,
    "lambda2": [5, 3, 3, 1, -1],
    "columns": [
        {"entries": [2, 3, -5, -4, -1], "tail": 0},
        {"entries": [4, 5, -1], "tail": 0},
        {"entries": [-5], "tail": 0},
    ],
    "spin": True,
}


def main():
    lam = crystald.Weight("5/2,3/2,3/2,1/2,-1/2")
    assert lam.n == 5
    assert crystald.weyl_dim("1,0,0,0") == "8"

    t = crystald.KnTableau.from_json(N5)
    assert t.is_valid()
    s = t.to_spinor()
    assert s.n_signature() == "-++-."
    v = s.separate()
    assert v.body == [[-5, -1], [-5, -4, -3, -1]]
    assert v.tail_rows == [[-5, -4, -2], [-3, -1], [-2], [-1]]
    assert t.to_lusztig().c == [1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1]

    roots = crystald.convex_order(5)
    assert len(roots) == 20 and roots[0] == "e4+e5"

    kn = crystald.enumerate_kn("1,1,0,0")
    sp = crystald.enumerate_spinor("1,1,0,0")
    assert len(kn) == len(sp) == int(crystald.weyl_dim("1,1,0,0"))

    h = crystald.SpinorTuple.highest("1,1,0,0")
    assert all(h.e(i) is None for i in range(1, 5))
    f = h.f(2)
    assert f is not None and f.e(2) == h

    for suite in ["dimension", "rsk", "sliding"]:
        report = crystald.run_suite(suite)
        assert report["violations"] == [], report["violations"][:3]

    print("python smoke test passed")


if __name__ == "__main__":
    main()
