"""Relation checker: passes on good modules, pinpoints corruption."""

from fractions import Fraction

from grsatake import linalg, verify
from grsatake.rootdata import Coweight, build_root_datum
from grsatake.satake import GradedModule, WeightedOperator, build_ic_module
from grsatake.verify import (compare_characters, op_commutator, op_compose,
                             serre_exponent, verify_cross_commutators,
                             verify_gradings, verify_module, verify_serre,
                             verify_triples, verify_weight_shifts)


def _adjoint_a2():
    d = build_root_datum("A2")
    return d, build_ic_module(d, Coweight((1, 1)))


def test_full_suite_passes():
    d, m = _adjoint_a2()
    report = verify_module(m)
    assert report.passed, [c.witness for c in report.failures()]
    report = compare_characters(m, Coweight((1, 1)))
    assert report.passed, [c.witness for c in report.failures()]


def test_serre_exponents():
    g2 = build_root_datum("G2")
    assert serre_exponent(g2, 0, 1) == 2   # a_12 = -1
    assert serre_exponent(g2, 1, 0) == 4   # a_21 = -3
    b2 = build_root_datum("B2")
    assert {serre_exponent(b2, 0, 1), serre_exponent(b2, 1, 0)} == {2, 3}


def test_op_compose_and_commutator():
    d, m = _adjoint_a2()
    ef = op_compose(m, m.e[0], m.f[0])
    assert ef.shift == d.zero_coweight()
    comm = op_commutator(m, m.e[0], m.f[0])
    for mu in m.spaces:
        got = comm.blocks.get(mu, linalg.zeros(m.dim(mu), m.dim(mu)))
        want = linalg.mat_scale(mu.coords[0], linalg.identity(m.dim(mu)))
        assert got == want


def _tampered(m, scale=2):
    """Copy with one nonzero e_1 block scaled: operators no longer close."""
    mu = min(m.e[0].blocks)
    blocks = dict(m.e[0].blocks)
    blocks[mu] = linalg.mat_scale(scale, blocks[mu])
    e_ops = [WeightedOperator(m.e[0].shift, blocks)] + list(m.e[1:])
    return GradedModule(m.datum, dict(m.spaces), e_ops, list(m.f))


def test_tampered_module_fails_with_witness():
    d, m = _adjoint_a2()
    bad = _tampered(m)
    report = verify_triples(bad)
    assert not report.passed
    assert any("[e_1, f_1]" in c.witness for c in report.failures())


def test_witnesses_name_weight_and_operator():
    d, m = _adjoint_a2()
    bad = _tampered(m, scale=Fraction(1, 3))
    report = verify_module(bad)
    wit = report.failures()[0].witness
    assert "weight" in wit or "e_1" in wit


def test_cross_commutators_pass_on_product_type():
    d = build_root_datum("A1xA1")
    m = build_ic_module(d, Coweight((1, 1)))
    report = verify_cross_commutators(m)
    assert report.passed
    names = {c.name for c in report.checks}
    assert "cross_e1_f2" in names and "cross_e2_f1" in names


def test_serre_check_names_carry_exponent():
    d = build_root_datum("G2")
    m = build_ic_module(d, Coweight((0, 1)))
    report = verify_serre(m)
    assert report.passed
    names = {c.name for c in report.checks}
    assert "serre_e_i2_j1_n4" in names
    assert "serre_e_i1_j2_n2" in names


def test_weight_shifts_and_gradings():
    d, m = _adjoint_a2()
    assert verify_weight_shifts(m).passed
    assert verify_gradings(m).passed


def test_compare_characters_flags_wrong_top():
    d, m = _adjoint_a2()
    report = compare_characters(m, Coweight((1, 0)))
    assert not report.passed


def test_report_merge_and_failures():
    d, m = _adjoint_a2()
    r1 = verify_gradings(m)
    n = len(r1.checks)
    r1.merge(verify_weight_shifts(m))
    assert len(r1.checks) > n
    assert r1.failures() == []
