"""Smoke test for the `treecount` extension module.

Build and stage the module first:

    cargo build -p treecount-py --features extension-module --release
    cp target/release/libtreecount.so python/treecount.so
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import treecount as tc


def main() -> None:
    p2 = tc.Tree.path(2)
    assert str(tc.count_polynomial(p2)) == "q^2 + 1"

    d4 = tc.Tree.dynkin_d(4)
    poly = tc.count_polynomial(d4, "generic")
    assert poly.coeffs == [1, 0, -2, 0, 1], poly.coeffs
    assert poly.factored() == "(q - 1)^2 (q + 1)^2"
    assert poly(5) == 576 == tc.count_points(d4, 5, "generic")
    assert tc.count_points(d4, 3, "generic") is None
    assert poly == tc.closed_form("D", 4, "generic")

    col = tc.coloring(tc.Tree.from_graph6("@"))
    assert col["colors"] == ["Red"] and col["dimension"] == 1

    e7 = tc.Tree.dynkin_e(7)
    a7 = tc.Tree.path(7)
    assert tc.count_polynomial(e7) == tc.count_polynomial(a7)
    assert tc.ranks(e7, "versal") == (0, 1)

    assert all(status != "fail" for _, status in tc.verify(d4, "versal"))
    assert len(tc.free_trees(10)) == 106
    assert tc.census(10, "orange")[:2] == (15, 13)
    assert tc.count_maximum_independent_sets(tc.Tree.star(3)) == 1
    assert tc.normalize(tc.Tree.path(3), [(1, 2)])[0] == {0: 1, 2: -1}

    try:
        tc.Tree.from_graph6("Bw")
    except tc.TreecountError:
        pass
    else:
        raise AssertionError("a cycle must be rejected")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
