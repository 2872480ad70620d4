"""Smoke test for the hallq extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import sys

import hallq


def main() -> int:
    q = hallq.example(1)
    assert q.vertex_count == 3
    assert q.relation_counts()[0][2] == 1

    form = q.unit_form()
    roots = form.positive_roots(6)
    assert sorted(roots) == sorted([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert form.evaluate([1, 1, 1]) == 2
    assert form.ad_exponent([1, 0, 0], [0, 1, 0]) == -form.ad_exponent([0, 1, 0], [1, 0, 0])

    table = hallq.IndecomposableTable(q, q=3)
    assert len(table) == 5 and table.bijective() and table.is_directed()
    assert table.decompose_sum([1, 0, 2, 0, 1]) == [1, 0, 2, 0, 1]

    hall = hallq.HallAlgebra(table, degree_bound=6)
    simples = [c for c in hall.classes_of_degree([1, 0, 0])]
    assert len(simples) == 1
    assert hall.verify_associativity(4)["failures"] == []

    pres = hallq.Presentation(q)
    assert len(pres) == 14
    assert pres.graded_dimension([1, 1, 1]) == pres.graded_dimension([1, 1, 1], v="1")
    report = hall.rho_verify(pres, 5)
    assert report["homomorphism_verified"] and report["isomorphism_verified"]
    assert all(m["pass"] for m in pres.match_golden(1))

    a2 = hallq.BoundQuiver.parse("vertex 1\nvertex 2\narrow a 1 2\n")
    assert a2.global_dimension(3) == 1

    ex = hallq.run("examples", "1")
    assert all(c["pass"] for c in ex["checks"]), ex["checks"]

    try:
        hallq.BoundQuiver.parse("vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n")
    except ValueError as e:
        assert "cycle" in str(e)
    else:
        raise AssertionError("cycle accepted")

    print("hallq smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
