"""The nine acceptance criteria, at their stated bounds.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import time

import pytest

from lawvere_cs.bridge import (
    OpAssignment,
    assignment_to_functor,
    check_assignment,
    check_cs_homomorphism,
    check_joint_monicity,
    check_projections,
    cl,
    compare_csystems,
    lc,
    roundtrip_csystem,
    roundtrip_lawvere,
)
from lawvere_cs.csystem import check_csystem, term_csystem
from lawvere_cs.models import clone, const_family, enumerate_models, telescope_csystem
from lawvere_cs.parsing import parse_term
from lawvere_cs.report import ProbeSpec
from lawvere_cs.subsystem import Tower, generate_subsystem
from lawvere_cs.theory import all_finfuns, term_lawvere, verify_lawvere
from mutants import DropLastQ, SwappedLC, collapsing_multiplication

TIME_LIMIT = 60.0


def clean(rep, *checks):
    assert rep.ok, "\n".join(e.line() for e in rep.failures()[:10])
    for c in checks:
        assert rep.cases(c) > 0, f"{c} never ran"


@pytest.fixture
def timed():
    start = time.perf_counter()
    yield
    assert time.perf_counter() - start < TIME_LIMIT


def n_finfuns(m, n):
    return n**m


# 1 ---------------------------------------------------------------------------------


@pytest.mark.criterion(1)
def test_functor_laws(magma, timed):
    probe = ProbeSpec(max_n=0, max_fin=3)
    expected = sum(n_finfuns(k, m) * n_finfuns(m, n) for k in range(4) for m in range(4) for n in range(4))
    structures = {
        "term_lawvere(magma)": term_lawvere(magma),
        "cl(term_csystem(magma))": cl(term_csystem(magma)),
        "clone(2)": clone(2).lawvere,
        "cl(clone(2))": cl(clone(2).csystem),
    }
    for name, L in structures.items():
        rep = verify_lawvere(L, probe)
        clean(rep, "L1.identity", "L2.composition")
        assert rep.cases("L2.composition") == expected, name


# 2 ---------------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_projection_compatibility(magma, monoid, timed):
    probe = ProbeSpec(max_fin=4)
    expected = sum(n_finfuns(m, n) * m for m in range(1, 5) for n in range(1, 5))
    for C in (term_csystem(magma), term_csystem(monoid), clone(2).csystem):
        rep = check_projections(C, probe)
        clean(rep, "PI.projection")
        assert rep.cases("PI.projection") == expected


# 3 ---------------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_joint_monicity(timed):
    rep = check_joint_monicity(clone(2).csystem, ProbeSpec(max_fin=2))
    clean(rep, "PI.monic")
    assert not any(e.status == "skip" for e in rep.entries)
    assert rep.cases("PI.monic") == sum((2**m) ** (2**n) for m in range(3) for n in range(3))


# 4 ---------------------------------------------------------------------------------

AXIOMS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8.section")


@pytest.mark.criterion(4)
def test_axioms_term_models(magma, monoid, timed):
    probe = ProbeSpec(max_n=4, depth=2)
    clean(check_csystem(term_csystem(magma), probe), *AXIOMS)
    clean(check_csystem(term_csystem(monoid), probe), *AXIOMS)


@pytest.mark.criterion(4)
def test_axioms_clones(timed):
    rep = check_csystem(clone(2).csystem, ProbeSpec(max_n=2))
    clean(rep, *AXIOMS, "A8.unique", "A8.exists", "A8.bijection")
    # every (Z, Y, X, f) with Z <= 2, i.e. domains of at most 4 elements
    squares = sum(len(clone(2).hom.homs(Y, X - 1, ProbeSpec())) for X in (1, 2) for Y in range(3)) * 3
    assert rep.cases("A8.bijection") == squares
    clean(check_csystem(clone(3).csystem, ProbeSpec(max_n=2)), *AXIOMS)


@pytest.mark.criterion(4)
def test_axioms_telescope(timed):
    rep = check_csystem(telescope_csystem(2), ProbeSpec(max_n=2))
    clean(rep, *AXIOMS, "A8.bijection")


# 5 ---------------------------------------------------------------------------------

TERM_RT = ProbeSpec(max_n=5, max_fin=4, samples=100, depth=3)


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", ["magma", "monoid"])
def test_roundtrip_terms(name, request, timed):
    pres = request.getfixturevalue(name)
    rep = roundtrip_lawvere(term_lawvere(pres), TERM_RT)
    clean(rep, "RT.mor_map", "RT.merge")
    assert rep.cases("RT.mor_map") == sum(n_finfuns(m, n) for m in range(5) for n in range(5))
    rep = roundtrip_csystem(term_csystem(pres), TERM_RT)
    clean(rep, "RT.p", "RT.ft", "RT.q", "RT.s")
    assert rep.cases("RT.q") >= 100 and rep.cases("RT.s") >= 100
    clean(compare_csystems(term_csystem(pres), lc(term_lawvere(pres)), TERM_RT, prefix="LC"), "LC.q", "LC.s")


@pytest.mark.criterion(5)
def test_roundtrip_clone(timed):
    probe = ProbeSpec(max_n=2, max_fin=2)
    k2 = clone(2)
    clean(roundtrip_lawvere(k2.lawvere, probe), "RT.mor_map", "RT.merge")
    rep = roundtrip_csystem(k2.csystem, probe)
    clean(rep, "RT.q", "RT.s")
    # exhaustive: every f: Y -> ft X and every f: Y -> X with X, Y <= 2
    expected_q = sum(k2.hom.hom_count(Y, X - 1) for X in (1, 2) for Y in range(3))
    expected_s = sum(k2.hom.hom_count(Y, X) for X in (1, 2) for Y in range(3))
    assert rep.cases("RT.q") == expected_q and rep.cases("RT.s") == expected_s
    clean(compare_csystems(k2.csystem, lc(k2.lawvere), ProbeSpec(max_n=5, max_fin=2), prefix="LC"))


# 6 ---------------------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_opposite_monoid_homomorphism(monoid, timed):
    opp = OpAssignment(monoid, monoid, {"e": parse_term("e()"), "m": parse_term("m(x1,x0)")})
    _, H = assignment_to_functor(opp)
    rep = check_cs_homomorphism(H, H.source, H.target, ProbeSpec(max_n=4, samples=50))
    clean(rep, "H1.length", "H2.pt", "H3.ft", "H4.p", "H5.q", "H.pi")
    assert rep.cases("H5.q") == 50


# 7 ---------------------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_model_counts(magma, monoid, timed):
    assert len(enumerate_models(monoid, 2)) == 4
    assert len(enumerate_models(magma, 2)) == 16


# 8 ---------------------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_generated_subsystem(timed):
    S = generate_subsystem(Tower(telescope_csystem(2), const_family(2, 1)))
    counts = {(m, n): S.hom.hom_count(m, n) for m in range(3) for n in range(3)}
    assert counts == {(m, n): (2**n) ** (2**m) for m in range(3) for n in range(3)}
    assert {counts[(0, 1)], counts[(1, 1)], counts[(2, 1)], counts[(2, 2)]} == {2, 4, 16, 256}
    clean(check_csystem(S, ProbeSpec(max_n=2)), *AXIOMS, "A8.bijection")
    L, ref = cl(S), clone(2).lawvere
    for m in range(3):
        for n in range(3):
            for f in all_finfuns(m, n):
                assert L.mor_map(f).table == ref.mor_map(f).table


# 9 ---------------------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_mutation_swapped_injections(magma, timed):
    mutant = SwappedLC(term_lawvere(magma))
    rep = check_csystem(mutant, ProbeSpec(max_n=3))
    assert not rep.ok and rep.failures()[0].witness
    rt = compare_csystems(term_csystem(magma), mutant, ProbeSpec(max_n=3), prefix="LC")
    assert not rt.ok and rt.failures()[0].witness


@pytest.mark.criterion(9)
def test_mutation_dropped_q_component(magma, timed):
    rep = check_csystem(DropLastQ(magma), ProbeSpec(max_n=3))
    assert rep.failed_checks() & {"A5", "A8.section"}
    assert rep.failures()[0].witness


@pytest.mark.criterion(9)
def test_mutation_broken_assignment(monoid, timed):
    rep = check_assignment(collapsing_multiplication(monoid))
    assert "assign.equation" in rep.failed_checks()
    w = rep.failures()[0].witness
    assert w["equation"] and w["lhs"] != w["rhs"]
