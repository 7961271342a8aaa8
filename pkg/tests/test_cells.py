"""Orbit combinatorics: case tables, orbit shapes, word feasibility."""

import pytest

from grsatake import cells
from grsatake.atoms import omega_set
from grsatake.cells import (bruhat_orbit, cell_case, isotropy_root_set,
                            levi_component_degree, minuscule_cell_case,
                            mv_degree, quasiminuscule_cell_case,
                            support_feasible)
from grsatake.rootdata import Coweight, build_root_datum
from grsatake.satake import build_ic_module


def test_mv_degree_matches_module_grading():
    d = build_root_datum("G2")
    m = build_ic_module(d, Coweight((0, 1)))
    for mu in m.spaces:
        assert mv_degree(d, mu) == m.degree(mu)


def test_isotropy_root_set_dominant():
    d = build_root_datum("A2")
    s = isotropy_root_set(d, Coweight((1, 1)))
    # regular dominant: exactly the negative roots
    assert len(s) == 3
    for w in s:
        assert d.pairing(w, Coweight((1, 1))) < 0
    # zero coweight: everything is isotropy
    assert len(isotropy_root_set(d, Coweight((0, 0)))) == 6


def test_minuscule_cases_cover_orbit():
    d = build_root_datum("A2")
    lam = Coweight((1, 0))
    tags = set()
    for mu in omega_set(d, lam):
        for i in range(d.rank):
            c = minuscule_cell_case(d, lam, mu, i)
            assert c.pairing == mu.coords[i]
            assert c.pairing in (-1, 0, 1)
            assert not c.reflected
            tags.add((c.tag, c.pairing))
    assert tags == {("A", 1), ("B", -1), ("C", 0)}


def test_quasiminuscule_cases_cover_orbit():
    d = build_root_datum("G2")
    lam = Coweight((0, 1))
    seen = set()
    for mu in omega_set(d, lam):
        for i in range(d.rank):
            c = quasiminuscule_cell_case(d, lam, mu, i)
            assert c.reflected == (c.pairing < 0)
            seen.add((c.tag, abs(c.pairing)))
    # pairing 2 only at the short simple coroot itself (or its negative)
    assert seen == {("A", 0), ("C", 1), ("B", 2)}
    assert quasiminuscule_cell_case(d, lam, d.simple_coroot(1), 1).tag == "B"


def test_cell_case_dispatch_and_rejection():
    d = build_root_datum("A2")
    assert cell_case(d, Coweight((1, 0)), Coweight((1, 0)), 0).tag == "A"
    with pytest.raises(ValueError):
        cell_case(d, Coweight((2, 0)), Coweight((2, 0)), 0)
    with pytest.raises(ValueError):
        minuscule_cell_case(d, Coweight((1, 0)), Coweight((0, 1)), 0)


def test_bruhat_orbit_shapes():
    d = build_root_datum("A1")
    line = bruhat_orbit(d, 0, Coweight((1,)))
    assert line.kind == "line" and not line.reflected
    assert line.cells == (("U_i-orbit", Coweight((1,))),
                          ("point", Coweight((-1,))))
    rev = bruhat_orbit(d, 0, Coweight((-1,)))
    assert rev.kind == "line" and rev.reflected
    d2 = build_root_datum("A2")
    pt = bruhat_orbit(d2, 0, Coweight((0, 1)))
    assert pt.kind == "point"


def test_levi_component_degree_constant_on_strings():
    d = build_root_datum("B2")
    for i in range(2):
        mu = Coweight((1, 0))
        assert levi_component_degree(d, mu, i) == \
            levi_component_degree(d, mu - d.simple_coroot(i), i)


def test_support_feasible_single_steps_minuscule():
    d = build_root_datum("A2")
    lam = Coweight((1, 0))
    support = set(omega_set(d, lam))
    for mu in support:
        for i in range(d.rank):
            up = support_feasible(d, lam, mu, [("e", i)])
            assert up.feasible == ((mu + d.simple_coroot(i)) in support)
            if up.feasible:
                assert up.chain == [mu, mu + d.simple_coroot(i)]
            else:
                assert "blocked" in up.violated
            down = support_feasible(d, lam, mu, [("f", i)])
            assert down.feasible == ((mu - d.simple_coroot(i)) in support)


def test_support_feasible_bad_start():
    d = build_root_datum("A2")
    res = support_feasible(d, Coweight((1, 0)), Coweight((5, 5)), ["e1"])
    assert not res.feasible and "not in the support" in res.violated


def test_support_feasible_string_word_notation():
    d = build_root_datum("A1")
    res = support_feasible(d, Coweight((1,)), Coweight((-1,)), ["e1"])
    assert res.feasible
    res = support_feasible(d, Coweight((1,)), Coweight((1,)), ["e1"])
    assert not res.feasible


def test_mixed_word_infeasible_g2():
    # the pairing forced by an e_1-then-f_2 chain exceeds the support bound
    d = build_root_datum("G2")
    lam = Coweight((0, 1))
    support = set(omega_set(d, lam)) | {d.zero_coweight()}
    for mu in support:
        res = support_feasible(d, lam, mu, [("e", 0), ("f", 1)])
        assert not res.feasible
        assert res.required_pairing == (1, 4)
        assert "impossible" in res.violated
        assert "bounded by 2" in res.violated


def test_mixed_word_feasible_with_orthogonality_note():
    d = build_root_datum("A1xA1")
    lam = Coweight((1, 1))
    res = support_feasible(d, lam, Coweight((-1, 1)), [("e", 0), ("f", 1)])
    assert res.feasible
    assert res.note == "(alpha_2, alpha_1^vee)=0"
    assert res.required_pairing == (1, 1)


def test_mixed_word_feasible_through_zero_a2():
    # on a quasi-minuscule support with short coroots the chain can pass
    # through zero, so mixed words are not automatically blocked
    d = build_root_datum("A2")
    lam = Coweight((1, 1))
    feas = [mu for mu in set(omega_set(d, lam)) | {d.zero_coweight()}
            if support_feasible(d, lam, mu, [("e", 0), ("f", 1)]).feasible]
    assert feas, "A2 adjoint support admits an e_1-then-f_2 chain"
