"""Smoke test for the lattice_screening extension module.

Build and install it first:
    pip install --no-build-isolation -e crates/python
"""

import sys
from fractions import Fraction

import lattice_screening as ls


def check(name, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return ok


def main():
    a2 = ls.Lattice([[2, -1], [-1, 2]])
    a3 = ls.Lattice.catalog("A", 3)
    d4 = ls.Lattice.catalog("D", 4)
    results = []

    results.append(check("A2 has 6 canonical screeners", len(ls.all_screeners(a2)) == 6))
    results.append(check("A2 dual minimum is 2/3", ls.dual_minimum(a2) == Fraction(2, 3)))
    nonroot = [v for v, n in ls.all_screeners(a3) if n != 2]
    results.append(check("A3 nonroot screeners", sorted(nonroot) == [(1, 0, -1), (1, 0, 1), (1, 2, 1)]))

    c = ls.identify_extended_type(d4)
    results.append(check("D4 classifies as F_4", [g["extended"]["type"] for g in c["groups"]] == ["F_4"]))
    results.append(check("|Phi(D4)| = 48", c["screener_count"] == 48))

    parsed = ls.Lattice.parse('{"gram": [[2,-1],[-1,2]], "scale": 3}')
    results.append(check("scale is applied", parsed.gram == [[6, -3], [-3, 6]]))
    try:
        ls.Lattice([[1, 2], [2, 1]])
        results.append(check("indefinite Gram rejected", False))
    except ls.LatticeError as e:
        results.append(check("indefinite Gram rejected", "E_NOT_POSITIVE_DEFINITE" in str(e)))

    results.append(check("rank-2 odd-p 2b warning", ls.rank2_check(ls.Lattice([[2, -1], [-1, 1]]))["warning"] == "W_RANK2_2B_ODD_P"))
    results.append(check("pair decompositions of [[12]]", ls.pair_decompositions(ls.Lattice([[12]]), [1]) == [(1, 6), (2, 3), (3, 2), (6, 1)]))
    results.append(check("c_{2,1} = -2", ls.type_i_central_charge(ls.Lattice([[4]]), [1], 2, 1) == Fraction(-2)))
    results.append(check("weight quadratic", ls.solve_weight_quadratic(2, 1, 1, 0) == [2]))
    iv = ls.type_iv_search(6, 1, 10)
    results.append(check("type IV search", [(s["branch"], s["r2"], s["m"]) for s in iv] == [("A", 2, [4, 6])]))
    pairs = ls.screening_pairs(ls.Lattice([[1, 0], [0, 3]]), [1, 0], 10)
    results.append(check("odd momentum doubled", pairs["doubled"] and pairs["alpha"] == [2, 0]))
    oc = ls.oracle_check(7, cases=20, max_rank=3, max_entry=6)
    results.append(check("oracle check", oc["discrepancies"] == 0 and len(oc["cases"]) == 20))

    passed = sum(results)
    print(f"{passed}/{len(results)} passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
