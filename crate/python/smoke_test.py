"""Smoke test for the sumset_lab extension module.

Build first, e.g. `pip install --no-build-isolation -e crates/py`, then run
`python python/smoke_test.py`.
"""

from fractions import Fraction

import sumset_lab as sl


def main():
    p = sl.BinomPoly("x^3 + x")
    assert p.degree == 3
    assert p.eval("2") == "10/1"
    seq = p.derived_sequence()
    assert [s.degree for s in seq] == [3, 2, 1]

    a = sl.Adele.generic([2, 3, 5], 64, 1)
    b = sl.Adele.from_real("1/3")
    # e_Q is a character and kills the diagonal
    assert Fraction((a + b).e_q()) == (Fraction(a.e_q()) + Fraction(b.e_q())) % 1
    assert (a + sl.Adele.diagonal("7/12")).e_q() == a.e_q()
    assert sl.Adele.diagonal("5/2").is_zero()
    assert sl.Adele.from_json(a.to_json()) == a

    phi = sl.PhasePolynomial("1/5", [a, b])
    assert phi.degree == 2
    assert phi.multilinearize(["1/2", "3", "7/4"]) == "0/1"
    assert phi.multilinearize(["1/2", "3"]) == phi.leading_coefficient(["1/2", "3"])

    sys = sl.SkewSystem.remark(a)
    pt = sys.apply("3/2", sys.origin())
    assert pt[0][0] == a.scalar_mul("3/2") and pt[1][0] == a.scalar_mul("9/4")

    s6 = abs(sl.weyl_sum([sl.Adele.zero(), a], 6))
    s3 = abs(sl.weyl_sum([sl.Adele.zero(), a], 3))
    assert s6 < s3 and s6 < 0.15
    assert sl.weyl_sum([sl.Adele.zero()], 4) == 1

    rep = sl.remark_counterexample_check(a, ("0", "1/8"), ("1/2", "5/8"), 5)
    assert rep["passed"] and rep["violations"] == []

    assert sl.return_time_density("1/4", 6) == "4309/8641"
    assert sl.folner_defect(2, "1") == "4/9"
    assert len(sl.folner_set(2)) == 9

    assert sl.color_check(60)["violations"] == []
    assert sl.bergelson_triple(100) == (4, 8)

    assert sl.ordered_ramsey_number(3, 2, [[1, 2], [2, 3]]) == 5
    assert sl.corners_count(2, ["1", "1", "1", "1"]) == "1/1"
    assert sl.markov_level_set(2, ["1", "0", "1", "1"], "1/2")["corners_ok"]

    out = sl.greedy_sumset_builder(lambda x: x % 2 == 0, k=1)
    assert out["outcome"] == "found"
    b_, t = out["b"], out["t"]
    assert all((b_[i] ** 2 + b_[j] + t) % 2 == 0 for i in range(4) for j in range(i + 1, 4))

    try:
        sl.BinomPoly("x^")
    except sl.SumsetError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("sumset_lab smoke test: ok")


if __name__ == "__main__":
    main()
