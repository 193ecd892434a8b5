"""One test per acceptance criterion, each at exact tolerance."""

import time

from gravop import checks


def _verdict(results):
    failed = [f"{r.claim} {r.label}" for r in results if not r.passed]
    return not failed, f"{len(results) - len(failed)}/{len(results)} cases" + (f"; failed: {failed[:5]}" if failed else "")


def test_criterion_1_poincare_products(acceptance_line):
    t = time.perf_counter()
    ok, detail = _verdict(checks.poincare_products(6, 3))
    elapsed = time.perf_counter() - t
    ok = ok and elapsed < 60
    acceptance_line(1, "conf Poincare profile = product formula = presentation oracle, n<=6, d<=3", ok,
                    f"{detail}, {elapsed:.1f}s (target < 60s)")
    assert ok


def test_criterion_2_th_structure(acceptance_line):
    ok, detail = _verdict(checks.th_structure(6, 3))
    acceptance_line(2, "th profile = Z[c]/(c^d) x fiber, total rank d*n!/2", ok, detail)
    assert ok


def test_criterion_3_kernel_is_Y(acceptance_line):
    ok, detail = _verdict(checks.free_splitting(6, 3))
    acceptance_line(3, "ker Delta_d^* = Y per degree and Y + Y.x12 is a Z-basis, n<=6", ok, detail)
    assert ok


def test_criterion_4_delta_properties(acceptance_line):
    ok, detail = _verdict(checks.delta_properties(6, 3))
    acceptance_line(4, "Delta^2 = 0 and the derivation identity, combined arity <= 6", ok, detail)
    assert ok


def test_criterion_5_kernel_is_image(acceptance_line):
    ok, detail = _verdict(checks.kernel_equals_image(6, 3))
    acceptance_line(5, "rank ker Delta = rank im Delta = fiber profile shifted by 2d-1, arity 2..6", ok, detail)
    assert ok


def test_criterion_6_gravity_relation(acceptance_line):
    t = time.perf_counter()
    results = checks.gravity_relations(6, 3)
    elapsed = time.perf_counter() - t
    ok, detail = _verdict(results)
    vectors = sum(r.detail["parity_vectors"] for r in results)
    ok = ok and elapsed < 600
    acceptance_line(6, "gravity relation, k+l-1 <= 6, every parity vector, d<=3", ok,
                    f"{detail}, {vectors} parity vectors, {elapsed:.1f}s (target < 600s)")
    assert ok


def test_criterion_7_main_theorem(acceptance_line):
    ok, detail = _verdict(checks.main_theorem(6, 3))
    acceptance_line(7, "gravity profile = suspended TH_{d,n} homology, n<=6, d<=3", ok, detail)
    assert ok


def test_criterion_8_getzler(acceptance_line):
    ok, detail = _verdict(checks.getzler_regression(6))
    acceptance_line(8, "d=1 profile = suspended homology of M_{0,n+1}, n<=6", ok, detail)
    assert ok


def test_criterion_9_confluence(acceptance_line):
    results = checks.confluence(5, 3, samples=1000)
    ok, detail = _verdict(results)
    acceptance_line(9, "1000 random products per (n,d), two strategies + presentation oracle, n<=5", ok, detail)
    assert ok
