"""Smoke test for the dsfaces Python extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o target/wheels
    pip install --force-reinstall target/wheels/dsfaces-*.whl
then run:  python3 python/smoke_test.py
"""

from fractions import Fraction

import dsfaces


def main():
    # Structured matrices and the relation h = f S.
    s = dsfaces.matrix("S", 2)
    assert s == [[1, -2, 1], [0, 1, -1], [0, 0, 1]], s
    assert all(isinstance(x, Fraction) for row in s for x in row)
    assert dsfaces.charpoly("U", 2)[-1] == 1

    # Face systems: the boundary of the square is DS, the full square is not.
    square = dsfaces.FaceSystem(2, [[], [1], [2], [1, 2]])
    boundary = dsfaces.FaceSystem(2, [[], [1], [2]])
    assert square.f_vector() == [1, 2, 1]
    assert dsfaces.h_from_f(square.f_vector()) == square.h_vector()
    assert dsfaces.f_from_h(square.h_vector()) == square.f_vector()
    assert boundary.is_ds() and not square.is_ds()
    assert dsfaces.FaceSystem.from_json(boundary.to_json()) == boundary
    assert boundary.size == 1 and len(boundary) == 3
    assert dsfaces.FaceSystem.simplex_boundary(3, 5).is_ds()
    try:
        dsfaces.FaceSystem(2, [[3]])
    except ValueError:
        pass
    else:
        raise AssertionError("element outside [m] accepted")

    # Bases: integer vectors have integer coordinates, and they reconstruct.
    w = [3, -1, 4, 1, 5]
    kappa = dsfaces.coords("Fup", 4, w)
    rows = dsfaces.basis("Fup", 4)
    assert all(k.denominator == 1 for k in kappa)
    assert [sum(k * r[i] for k, r in zip(kappa, rows)) for i in range(5)] == w
    assert dsfaces.coords("S", 3, [Fraction(1, 2), 0, 0, 0])[0] == Fraction(1, 2)

    # The one misprinted coordinate row and its corrected form.
    assert dsfaces.table1_entry("f", "Fdown", 1, 1, 2) == 0
    assert dsfaces.table1_entry("f", "Fdown", 1, 1, 2, corrected=True) == -2
    assert dsfaces.fh_bar("f", 2, 3) == [1, 2, 0, 0]

    # Projectors are idempotent.
    p = dsfaces.projector("f", 4)
    n = len(p)
    p2 = [[sum(p[i][k] * p[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert p2 == p
    q = dsfaces.rank1_projector("f", 2, 3, corrected=True)
    assert sum(q[i][i] for i in range(4)) == 1
    assert dsfaces.norm_sq("f", 2, 3) == 5

    # Polytopes, lattice points and counts.
    assert dsfaces.contains("Qf", 2, [1, 1, 1])
    assert not dsfaces.contains("Qf", 2, [1, 2, 0])
    assert dsfaces.ds_fvectors(2, "all") == [[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 1], [1, 2, 0]]
    assert dsfaces.ds_fvectors(6, "all", workers=4) == dsfaces.ds_fvectors(6, "all")
    assert dsfaces.table4_row(6) == (291, 41, 333)
    assert dsfaces.table4_row(8, workers=2) == (17465, 1107, 18573)
    assert dsfaces.multiplicity([0, 2, 3, 0, 0], 4) == 120
    assert dsfaces.total_ds_count(2, "matching") == 5

    # C^f(m) has more extreme rays than generators from m = 5 on.
    assert [1, 0, 0, 20, 30, 12] in dsfaces.cf_extreme_rays(5)
    assert len(dsfaces.cf_extreme_rays(4)) == 3

    report = dsfaces.verify("spectra", 2, 5)
    assert report["passed"] and report["checks"] > 0, report
    printed = dsfaces.verify("tables", 3)
    assert not printed["passed"]
    assert {f["item"] for f in printed["failures"]} == {"table1: kappa(fbar,Fdown)"}
    assert dsfaces.verify("tables", 3, corrected=True)["passed"]

    try:
        dsfaces.verify("nonsense", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
