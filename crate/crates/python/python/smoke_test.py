"""Smoke test for the Python bindings; run after `pip install -e crates/python`."""

import pyrealcurves as rc


def main():
    s = rc.Scheme("<1<5> + 5>", degree=6)
    assert s.text == "<5 + 1<5>>", s.text
    assert s.components == 11 and s.defect == 0 and s.depth == 2
    report = s.check("I")
    assert report["admissible"], report
    assert {v["rule_id"] for v in report["verdicts"]} >= {"harnack", "gudkov"}

    bad = rc.Scheme("<6 + 1<4>>", degree=6).check()
    assert not bad["admissible"]

    classes = rc.Scheme("<9 + 1<1>>", degree=6).orientations()
    assert len(classes) == 512
    o = classes[0]
    assert o.is_oriented and o.forget() == rc.Scheme("<9 + 1<1>>", degree=6)
    assert o.flip().flip() == o

    try:
        rc.Scheme("<1 + x>", degree=6)
    except rc.ParseError as e:
        message, position = e.args
        assert position == 5, e.args
    else:
        raise AssertionError("malformed text parsed")

    h = rc.Scheme("<4 + 1<5>>", surface="hyperboloid", bidegree=(4, 4))
    assert h.check()["admissible"]

    assert [rc.brown(w) for w in ["A+", "A-", "U", "V"]] == [1, 7, 0, 4]
    assert rc.classify("A+ U")["normal_form"] == "A+ A+ A-"

    e8 = rc.Lattice.e8()
    assert (e8.rank, e8.signature, e8.determinant, e8.is_even) == (8, 8, 1, True)
    d4 = rc.Lattice.d4().discriminant()
    assert d4["brown"] == 4, d4
    assert all(v["pass"] for v in rc.Lattice.diag([2, -2]).van_der_blij() if v["applicable"])
    swap = rc.Lattice.u().eigenlattices([[0, 1], [1, 0]])
    assert swap["plus"]["rank"] == 1 and swap["minus"]["rank"] == 1

    quartics = [t for t, claims in rc.enumerate_schemes(degree=4) if claims]
    assert len(quartics) == 6, quartics
    diff = rc.golden_diff("hyperboloid", (3, 1))
    assert diff["missing"] == []

    code, out = rc.run_cli(["parse", "--degree", "6", "<1<1> + 9>"])
    assert code == 0 and "<9 + 1<1>>" in out

    print("pyrealcurves smoke test passed")


if __name__ == "__main__":
    main()
