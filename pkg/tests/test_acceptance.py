"""Acceptance gate: nine headline guarantees, one test and one line each.

Each test prints a single [criterion N] PASS/FAIL line (visible with -s,
and pytest -v shows one result line per criterion).  Criterion 3 asserts
the recorded relation set exactly as stated; the one irreducible entry is
reported with its residual and the consequence-variant side by side, and
the test is expected to fail until the recorded sign is amended.
"""

import random
import time

import pytest

from jforge.contraction import (
    contract,
    extract_sector,
    standard_schedule,
)
from jforge.freealg import nc_gen, nc_mul, nc_sub, nc_str
from jforge.grammar import parse
from jforge.hopf import (
    check_antipode_axiom,
    check_bialgebra,
    coaction_covariance,
    delta_centrality,
    hopf_ideal_check,
    qdet_checks,
)
from jforge.rmat import (
    TensorMat,
    four_param_deformed_r3,
    jordanian_r2,
    jordanian_r3,
    qybe_check,
    qybe_holds,
    two_param_deformed_r2,
    twist_3x3,
)
from jforge.rtt import (
    GEN_ORDER,
    LETTERS,
    DerivedAlgebra,
    rtt_zero_report,
    verify_reference,
)

from test_rtt import load


def _line(n: int, ok: bool, text: str) -> None:
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'} - {text}", flush=True)


def _random_point(mat: TensorMat, rng: random.Random) -> TensorMat:
    vals = {}
    seen = set()
    for v in sorted(mat.params()):
        while True:
            f = (rng.randint(2, 97), rng.randint(1, 13))
            if f not in seen:
                seen.add(f)
                break
        vals[v] = parse(f"{f[0]}/{f[1]}")
    return mat.substitute(vals)


def _is_identity(mat: TensorMat) -> bool:
    one, zero = parse("1"), parse("0")
    return all(mat.entry(rp, cp) == (one if rp == cp else zero)
               for rp in mat.basis for cp in mat.basis)


def test_criterion_1_braid_consistency():
    ok = True
    rng = random.Random(20260819)
    for name, builder in (("deformed", four_param_deformed_r3),
                          ("triangular", jordanian_r3)):
        start = time.perf_counter()
        report = qybe_check(builder(), name=name)
        elapsed = time.perf_counter() - start
        ok = ok and report.passed and elapsed < 30.0
        points = sum(qybe_holds(_random_point(builder(), rng))
                     for _ in range(20))
        ok = ok and points == 20
    _line(1, ok, "braid consistency, symbolic and at 20 rational points each")
    assert ok


def test_criterion_2_singular_limit_transport():
    start = time.perf_counter()
    schedule = standard_schedule()
    result = contract(four_param_deformed_r3(), twist_3x3(), schedule)
    target = jordanian_r3()
    elapsed = time.perf_counter() - start
    entries_equal = all(result.entry(rp, cp) == target.entry(rp, cp)
                        for rp in result.basis for cp in result.basis)
    sector = extract_sector(result, (2, 3))
    small = jordanian_r2()
    sector_equal = all(sector.entry(rp, cp) == small.entry(rp, cp)
                       for rp in sector.basis for cp in sector.basis)
    params_exact = (result.params() == {"m", "n", "k", "p"}
                    and schedule.survivors() == {"m", "n", "k", "p"})
    ok = entries_equal and sector_equal and params_exact and elapsed < 60.0
    _line(2, ok, "singular limit reproduces the triangular matrix, "
                 "its 2x2 sector and exactly the surviving parameters")
    assert entries_equal
    assert sector_equal
    assert params_exact
    assert elapsed < 60.0


def test_criterion_3_recorded_relation_set():
    start = time.perf_counter()
    alg = DerivedAlgebra()
    ref = verify_reference(alg)
    rtt = rtt_zero_report(alg)
    elapsed = time.perf_counter() - start
    failing = [c for c in ref.checks if not c.passed]
    ok = (not failing) and rtt.passed and elapsed < 120.0
    _line(3, ok, "all 27 recorded relations and all 81 exchange entries "
                 "reduce to zero")
    assert rtt.passed, "exchange entries must reduce under the derived table"
    assert elapsed < 120.0
    assert len(ref.checks) == 27
    if failing:
        c = failing[0]
        pytest.fail(
            "recorded relation {name} does not reduce: residual {res}; the "
            "variant with the opposite sign on its inhomogeneous term is a "
            "consequence of the derived table (residual {flip}), and the "
            "table itself is internally consistent, so the recorded sign "
            "conflicts with the derivation; analysis in "
            "/root/notes/decisions.md".format(
                name=c.name,
                res=c.details["recorded_residual"],
                flip=c.details["sign_flipped_residual"]))


def test_criterion_4_overlap_words_resolve():
    alg = DerivedAlgebra()
    bound = len(GEN_ORDER) ** 3
    full = alg.confluence(max_degree=3)
    quot = alg.quotient().confluence(max_degree=3)
    candidates = (full.checks[0].details["candidates"],
                  quot.checks[0].details["candidates"])
    ok = (full.passed and quot.passed and len(GEN_ORDER) == 13
          and all(c <= bound for c in candidates))
    _line(4, ok, f"every degree-3 overlap word resolves uniquely "
                 f"({candidates[0]} full, {candidates[1]} quotient, "
                 f"bound {bound})")
    assert ok


def test_criterion_5_row_vector_hopf_ideal(alg):
    report = hopf_ideal_check(alg)
    names = [c.name for c in report.checks]
    ok = report.passed and names == ["two-sided-ideal", "co-ideal",
                                     "antipode-stability"]
    _line(5, ok, "the row-vector span is a two-sided co-ideal stable "
                 "under the antipode")
    assert ok, report.to_text()


def test_criterion_6_coalgebra_maps_and_antipode(alg, quotient):
    bi = check_bialgebra(alg.system)
    axiom = check_antipode_axiom(quotient)
    fixture = load("t_inverse.json")
    gens = alg.system.generators
    inv_matches = [[nc_str(alg.block_inv[i][j], gens) for j in (0, 1)]
                   for i in (0, 1)] == fixture["entries"]
    positions = [c for c in axiom.checks if c.name.startswith("antipode:")]
    ok = bi.passed and axiom.passed and inv_matches and len(positions) == 9
    _line(6, ok, "coproduct and counit annihilate every relation; the "
                 "antipode axiom holds at all 9 positions using the "
                 "derived block inverse")
    assert bi.passed, bi.to_text()
    assert axiom.passed, axiom.to_text()
    assert inv_matches


def test_criterion_7_determinant_structure(alg, quotient):
    qdet = qdet_checks(quotient)
    central = delta_centrality(alg)
    ok = qdet.passed and central.passed
    _line(7, ok, "total determinant is group-like with counit one and an "
                 "inverse; block-determinant commutators match and die at "
                 "equal plane parameters; the scale is a non-central witness")
    assert qdet.passed, qdet.to_text()
    assert central.passed, central.to_text()


def test_criterion_8_coaction_braiding(quotient):
    braided = coaction_covariance(quotient, braiding=True)
    naive = coaction_covariance(quotient, braiding=False)
    ok = braided.passed and not naive.passed
    _line(8, ok, "the coacted plane relation vanishes with the braiding "
                 "and survives without it")
    assert braided.passed, braided.to_text()
    assert not naive.passed, "naive factor commutation must leave a residual"


def test_criterion_9_classical_limits():
    classical = {
        "rq2": (two_param_deformed_r2, {"r": "1", "s": "1"}),
        "rq3": (four_param_deformed_r3, {"p": "1", "q": "1",
                                         "r": "1", "s": "1"}),
        "rj2": (jordanian_r2, {"m": "0", "n": "0"}),
        "rj3": (jordanian_r3, {"m": "0", "n": "0", "k": "0", "p": "1"}),
    }
    matrices_ok = True
    for builder, binding in classical.values():
        vals = {k: parse(v) for k, v in binding.items()}
        matrices_ok = matrices_ok and _is_identity(builder().substitute(vals))
    table = DerivedAlgebra(
        bindings={k: parse(v) for k, v in classical["rj3"][1].items()},
        extend=False)
    commutative = all(
        table.reduces_to_zero(nc_sub(nc_mul(nc_gen(u), nc_gen(v)),
                                     nc_mul(nc_gen(v), nc_gen(u))))
        for u in LETTERS for v in LETTERS)
    ok = matrices_ok and commutative
    _line(9, ok, "all four constructors hit the identity and the derived "
                 "table turns commutative at the classical point")
    assert matrices_ok
    assert commutative
