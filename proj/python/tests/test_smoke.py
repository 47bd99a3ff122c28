import pyqcyc


def test_corpus_listing():
    assert set(pyqcyc.builtin_groupoids()) == {"z2", "pair2", "z2z3", "flip"}
    assert "kg" in pyqcyc.builtin_algebras()


def test_counts():
    g = pyqcyc.Groupoid("z2z3")
    assert g.num_units == 2
    assert g.num_arrows == 5
    assert g.num_orbits == 2
    assert g.num_loops == 5


def test_hp_ranks():
    expected = {"z2": 2, "pair2": 1, "z2z3": 5, "flip": 1}
    for name, even in expected.items():
        r = pyqcyc.Groupoid(name).hp()
        assert r["even"] == even
        assert r["odd"] == 0


def test_paramixed():
    r = pyqcyc.Groupoid("z2").paramixed("kg", cap=4)
    assert r["passed"]
    assert r["failures"] == []


def test_quasifree_dichotomy():
    g = pyqcyc.Groupoid("pair2")
    assert g.is_quasifree("kg")
    assert not g.is_quasifree("dual")


def test_hp_level_tower():
    levels = pyqcyc.Groupoid("z2").hp_level("trivial", "dual", 3)
    assert [r["even"] for r in levels] == [2, 4, 2]


def test_green_julg():
    r = pyqcyc.Groupoid("flip").green_julg("kg")
    assert r["equal"] and r["orbit_sums_equal"]
    assert r["lhs"]["even"] == 1 and r["lhs"]["odd"] == 0


def test_stability():
    r = pyqcyc.Groupoid("pair2").stability("trivial")
    assert r["all"]
    assert r["hp_a"]["even"] == r["hp_ak"]["even"] == 1
