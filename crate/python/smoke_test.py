"""Smoke test for the pyclebsch extension module.

Build and install it first, e.g.

    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/pyclebsch-*.whl

then run `python python/smoke_test.py`.
"""

import sys

import pyclebsch as pc


def check(label, cond):
    print(f"{'ok  ' if cond else 'FAIL'} {label}")
    return bool(cond)


def main():
    results = []

    z3 = pc.Group("cyclic:3")
    results.append(check("cyclic:3 order", z3.order == 3 and z3.degree == 2))
    results.append(check("cartan inverse of cyclic:3",
                         z3.cartan_inverse() == [["2/3", "1/3"], ["1/3", "2/3"]]))
    results.append(check("all inverse methods agree",
                         all(z3.cartan_inverse(m) == z3.cartan_inverse()
                             for m in ("characters", "eta", "limit", "sylvester-limit"))))
    results.append(check("relation suite", all(p for _, p in z3.relation_suite())))

    t = pc.Group("2T")
    results.append(check("McKay for 2T", [p for _, p in t.mckay()] == [True, True]))
    results.append(check("validation of 2T", all(p for _, p in t.validate())))
    value, agree = t.minor([0, 1], [0, 1], kind="S")
    results.append(check("2x2 minor routes agree", agree and value))

    icosa = pc.Group("2I")
    results.append(check("hsop degrees of 2I", icosa.hsop() == [12, 20]))
    cm = icosa.cohen_macaulay([12, 20])
    results.append(check("D[R]_0^0 of 2I", cm["D"][0][0] == "1 + q^30"))
    results.append(check("2I Weyl vector is integral", all("/" not in x for x in icosa.weyl_vector())))

    e8 = pc.Graph("affine:E8")
    _, _, ok = e8.continued_fraction()
    results.append(check("affine E8 continued fraction", ok))
    results.append(check("affine det vanishes at 1", e8.finiteness()["det_vanishes_at_one"]))

    results.append(check("Kostka-Foulkes (2,1),(1,1,1)", pc.kostka_foulkes("2,1", "1,1,1") == "q + q^2"))
    results.append(check("Kronecker (2,1)^3", pc.kronecker("2,1", "2,1", "2,1") == 1))
    results.append(check("KF identity", pc.kf_check("2,2", "2,1,1")))
    results.append(check("supersymmetric check", pc.supersym_check("2,1", "2")))
    results.append(check("fake degrees d = 4", pc.fake_degree_check(4)))

    try:
        pc.Group("nope")
        results.append(check("bad selector raises", False))
    except ValueError:
        results.append(check("bad selector raises", True))

    outcomes = pc.verify_all("fast")
    results.append(check("verify_all fast", len(outcomes) == 14 and all(o[2] for o in outcomes)))

    print(f"{sum(results)}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
