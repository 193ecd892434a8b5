"""Batch verifications over ranges of (n, d), one function per claim.

Each function returns a list of :class:`CheckResult` rows; a claim holds
when every row passes. The CLI's ``verify all`` and the acceptance tests
both run these.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import gravity
from .arnold import (
    RingDescriptor,
    normal_form,
    poincare,
    presentation_oracle,
    presentation_profile,
    product_by_association,
    product_formula_profile,
    truncated_polynomial_profile,
)
from .poisson import operad
from .poisson.operad import OperadElement
from .unitary import verify_free_splitting, verify_kernel_equals_Y


@dataclass
class CheckResult:
    claim: str
    label: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "label": self.label, "pass": self.passed, **self.detail}


def poincare_products(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            ring = RingDescriptor(n, d, "conf")
            prof = poincare(ring)
            formula = product_formula_profile(n, d)
            oracle = presentation_profile(ring)
            out.append(CheckResult(
                "poincare", f"n={n} d={d}", prof == formula == oracle,
                {"profile": prof.format(), "product": formula.format(), "presentation": oracle.format()},
            ))
    return out


def th_structure(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            th = poincare(RingDescriptor(n, d, "th"))
            tensor = poincare(RingDescriptor(n, d, "fiber")).convolve(truncated_polynomial_profile(d))
            total = d * math.factorial(n) // 2
            out.append(CheckResult(
                "th_structure", f"n={n} d={d}", th == tensor and th.total() == total,
                {"th": th.format(), "total": th.total(), "expected_total": total},
            ))
    return out


def free_splitting(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            kernel = verify_kernel_equals_Y(n, d)
            split = verify_free_splitting(n, d)
            ok = all(r["pass"] for r in kernel) and all(r["pass"] for r in split)
            out.append(CheckResult("kernel_is_Y", f"n={n} d={d}", ok, {"kernel": kernel, "splitting": split}))
    return out


def _all_basis(n: int, d: int) -> list[OperadElement]:
    h = 2 * d - 1
    return [OperadElement(n, d, {m: 1}) for q in range(0, n * h, h) for m in operad.poisson_basis(n, d, q)]


def delta_properties(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    """Delta^2 = 0 on every basis monomial of arity <= max_n, and the
    derivation identity on every pair of basis monomials with combined
    arity <= max_n."""
    out = []
    for d in range(1, max_d + 1):
        for n in range(1, max_n + 1):
            bad = sum(1 for e in _all_basis(n, d) if operad.delta(operad.delta(e)))
            out.append(CheckResult("delta_squared", f"n={n} d={d}", bad == 0, {"failures": bad}))
        pairs = bad = 0
        for na in range(1, max_n + 1):
            for nb in range(1, max_n + 2 - na):
                for a in _all_basis(na, d):
                    sa = -1 if a.degree() % 2 else 1
                    da = operad.delta(a)
                    for b in _all_basis(nb, d):
                        db = operad.delta(b)
                        for i in range(1, na + 1):
                            lhs = operad.delta(operad.compose(a, i, b))
                            rhs = operad.compose(da, i, b) + sa * operad.compose(a, i, db)
                            pairs += 1
                            bad += lhs != rhs
        out.append(CheckResult("derivation", f"arity<={max_n} d={d}", bad == 0, {"compositions": pairs, "failures": bad}))
    return out


def kernel_equals_image(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            ker = operad.kernel_rank_profile(n, d)
            im = operad.image_rank_profile(n, d)
            fiber = poincare(RingDescriptor(n, d, "fiber")).shift(2 * d - 1)
            out.append(CheckResult(
                "kernel_is_image", f"n={n} d={d}", ker == im == fiber,
                {"kernel": ker.format(), "image": im.format(), "fiber_shifted": fiber.format()},
            ))
    return out


def gravity_relations(max_arity: int = 6, max_d: int = 3) -> list[CheckResult]:
    """Every (k, l) with k >= 2, l >= 1, k + l - 1 <= max_arity, every parity vector."""
    out = []
    for d in range(1, max_d + 1):
        for k in range(2, max_arity + 1):
            for l in range(1, max_arity + 2 - k):
                reports = gravity.sweep_gravity_relation(k, l, d, cap=max(max_arity, gravity.DEFAULT_ARITY_CAP))
                failed = [r["parities"] for r in reports if not r["pass"]]
                out.append(CheckResult(
                    "gravity_relation", f"k={k} l={l} d={d}", not failed,
                    {"parity_vectors": len(reports), "failed": failed},
                ))
    return out


def main_theorem(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            rep = gravity.verify_main_theorem(n, d)
            out.append(CheckResult("main_theorem", f"n={n} d={d}", rep["pass"], {"rows": rep["rows"]}))
    return out


def c_compatibility(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            rep = gravity.verify_c_compatibility(n, d)
            out.append(CheckResult("c_compatibility", f"n={n} d={d}", rep["pass"], {"slice_ranks": rep["slice_ranks"]}))
    return out


def getzler_regression(max_n: int = 6) -> list[CheckResult]:
    out = []
    for n in range(2, max_n + 1):
        grav = gravity.gravity_rank_profile(n, 1)
        ref = gravity.getzler_profile(n)
        out.append(CheckResult("getzler", f"n={n}", grav == ref, {"gravity": grav.format(), "moduli": ref.format()}))
    return out


def _random_factors(n: int, rng: random.Random) -> list[tuple[int, int]]:
    m = rng.randint(0, n)
    out = []
    for _ in range(m):
        i, j = rng.sample(range(1, n + 1), 2)
        out.append((i, j))
    return out


def confluence(max_n: int = 5, max_d: int = 3, samples: int = 1000, seed: int = 0) -> list[CheckResult]:
    """Random products of generators reduce to one normal form under two
    randomised strategies (redex choice, association order), and the
    result agrees with the presentation in the exterior algebra."""
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, max_d + 1):
            for flavor in ("conf", "fiber"):
                ring = RingDescriptor(n, d, flavor)
                rng = random.Random(f"{seed}:{n}:{d}:{flavor}")
                bad = 0
                for _ in range(samples):
                    factors = _random_factors(n, rng)
                    a = normal_form([(1, 0, factors)], ring, random.Random(rng.random()))
                    b = product_by_association(factors, ring, random.Random(rng.random()))
                    oracle = presentation_oracle(n, len(factors), ring.kills_x12)
                    nf = [(v, list(mono)) for (_, mono), v in a.terms.items()]
                    if a != b or not oracle.equivalent([(1, factors)], nf):
                        bad += 1
                out.append(CheckResult(
                    "confluence", f"n={n} d={d} {flavor}", bad == 0, {"samples": samples, "failures": bad},
                ))
    return out


CLAIMS = {
    "poincare": poincare_products,
    "th_structure": th_structure,
    "kernel_is_Y": free_splitting,
    "delta": delta_properties,
    "kernel_is_image": kernel_equals_image,
    "gravity_relation": gravity_relations,
    "main_theorem": main_theorem,
    "c_compatibility": c_compatibility,
    "getzler": getzler_regression,
    "confluence": confluence,
}


def run_all(max_n: int = 6, max_d: int = 3) -> list[CheckResult]:
    results = []
    results += poincare_products(max_n, max_d)
    results += th_structure(max_n, max_d)
    results += free_splitting(max_n, max_d)
    results += delta_properties(max_n, max_d)
    results += kernel_equals_image(max_n, max_d)
    results += gravity_relations(max_n, max_d)
    results += main_theorem(max_n, max_d)
    results += c_compatibility(max_n, max_d)
    results += getzler_regression(max_n)
    results += confluence(min(max_n, 5), max_d)
    return results
