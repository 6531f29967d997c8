"""Smoke test for the Python bindings. Run after `pip install -e crates/python`."""

from pathlib import Path

import fingroupoid_py as fg

DATA = Path(__file__).resolve().parent.parent / "data"


def expect_value_error(fn, *args):
    try:
        fn(*args)
    except ValueError as e:
        return str(e)
    raise AssertionError("expected ValueError")


def main():
    pair3 = fg.Groupoid.pair(["1", "2", "3"])
    assert (pair3.object_count(), pair3.arrow_count()) == (3, 9)
    assert pair3.classify() == ["transitive", "principal", "banal"]
    assert pair3.compose("(1,2)", "(2,3)") == "(1,3)"
    assert pair3.compose("(1,2)", "(1,3)") is None
    assert pair3.inverse("(1,2)") == "(2,1)"
    assert pair3.unit("2") == "(2,2)"

    z3 = fg.Groupoid.cyclic(3)
    assert len(z3) == 3 and z3.classify() == ["transitive", "plurigroup"]
    assert z3.squares().arrow_count() == 27

    g = z3.disjoint_union(pair3)
    assert sorted(len(o) for o in g.orbits()) == [1, 3]
    assert expect_value_error(g.trivialize).startswith("not transitive")

    t = z3.product(pair3).trivialize()
    assert t.arrow_count() == 27 and t.classify() == ["transitive"]

    assert fg.Groupoid.parse(pair3.to_text()) == pair3
    assert fg.Groupoid.parse(pair3.to_json()) == pair3

    broken = (DATA / "broken.grpd").read_text()
    problems = fg.violations(broken)
    assert problems and any("unit" in p for p in problems), problems
    assert "violation" in expect_value_error(fg.Groupoid.parse, broken)

    collapse = fg.Functor.load(DATA / "pair2_to_point.fnct")
    flags = collapse.flags()
    assert flags["s_equivalence"] and not flags["actor"]
    assert collapse.kernel().arrow_count() == 4
    core, props = collapse.holograph()
    assert props["irreducible"] and props["morita_equivalence"]
    assert core.arrow_count() > 0

    include = fg.Functor.load(DATA / "point_to_z2.fnct")
    composite = include.after(collapse)
    assert composite.object_map == {"1": "*", "2": "*"}

    actor = fg.Functor.load(DATA / "free_z2_actor.fnct")
    assert "actor" in actor.classify()
    assert actor.conjugate_target().arrow_count() == 18

    point = fg.Groupoid.null(["p"])
    same, hat = fg.morita(pair3, point)
    assert same and hat.arrow_count() == 16
    same, hat = fg.morita(z3, point)
    assert not same and hat is None

    f = fg.Functor(point, z3, {"p": "*"}, {"(p,p)": "0"})
    assert fg.Functor.parse(f.to_text()) == f
    expect_value_error(fg.Functor, point, z3, {"p": "*"}, {"(p,p)": "1"})

    checks = fg.diptych_checks(2)
    assert len(checks) == 13 and all(failures == 0 for _, _, failures in checks)

    assert pair3.dot("pair3").count(" -> ") == 6
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
