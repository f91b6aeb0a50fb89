"""End-to-end acceptance suite.

Each test exercises one release criterion at its stated tolerance and prints
one PASS/FAIL line (visible with ``pytest -s``, or in captured output on
failure).  Run with::

    pytest tests/test_acceptance.py -v -s
"""

import math

import numpy as np

from pagree import (
    LatticeConfig,
    closed_form,
    coarse_to_units,
    continuum_form,
    curve_limit_integral,
    curve_value,
    derive_units,
    digamma,
    harmonic_sum_identities,
    lower_bound,
    p_agree_average_brute,
    p_agree_average_gram,
    p_agree_state,
    perturbation_exact,
    perturbation_in_units,
    perturbation_integral,
    sample_haar_states,
)

ORACLE_DIMS = (2, 3, 4, 6, 8, 12, 16, 24, 36, 60)
BOUND_DIMS = (100, 400, 900, 2500, 10**4)


def divisors(d):
    return [w for w in range(1, d + 1) if d % w == 0]


def report(number, description, ok, detail=""):
    line = f"ACCEPTANCE {number} [{'PASS' if ok else 'FAIL'}] {description}"
    if detail:
        line += f" :: {detail}"
    print(line)


def test_criterion_1_oracle_equivalence():
    worst = 0.0
    for d in ORACLE_DIMS:
        for w_x in divisors(d):
            for w_p in divisors(d):
                config = LatticeConfig(d, w_x, w_p)
                closed = closed_form(d, w_x, w_p)
                worst = max(worst,
                            abs(closed - p_agree_average_brute(config)),
                            abs(closed - p_agree_average_gram(config)))
    ok = worst < 1e-9
    report(1, "closed form vs brute trace vs Gram sum on the oracle lattice set",
           ok, f"worst residual {worst:.3e}")
    assert ok


def test_criterion_2_curve_table_and_limit():
    table = {1: 1.00, 2: 0.703, 3: 0.675, 4: 0.667, 15: 0.657, 16: 0.656}
    worst = max(abs(curve_value(w_p).value - want) for w_p, want in table.items())
    limit_gap = abs(curve_limit_integral() - 0.656)
    ok = worst < 5e-4 and limit_gap < 5e-4
    report(2, "transition-curve table to 3 significant figures plus its limit",
           ok, f"worst table gap {worst:.2e}, limit gap {limit_gap:.2e}")
    assert ok


def test_criterion_3_bound_validity():
    ok = True
    detail = ""
    for d in BOUND_DIMS:
        root = math.sqrt(d)
        for w in divisors(d):
            closed = closed_form(d, w, w)
            if w < root:
                if closed > w * w / d + 1e-12:
                    ok, detail = False, f"upper bound violated at d={d}, w={w}"
            elif w > root:
                if closed < lower_bound(d, w) - 1e-12:
                    ok, detail = False, f"lower bound violated at d={d}, w={w}"
    report(3, "diagonal values respect both bounds on their validity domains",
           ok, detail or f"checked d in {BOUND_DIMS}")
    assert ok, detail


def test_criterion_4_diagonal_shape_at_desk_scale():
    d = 10**4
    sampled = [w for w in divisors(d) if 10 <= w <= 2000]
    values = {w: closed_form(d, w, w) for w in sampled}
    ordered = [values[w] for w in sampled]
    monotone = all(a < b for a, b in zip(ordered, ordered[1:]))
    ok = (monotone and values[10] < 0.01 and values[2000] > 0.99
          and abs(values[100] - 0.656) < 0.01)
    report(4, "diagonal rises monotonically from <0.01 through ~0.656 at sqrt(d) to >0.99",
           ok, f"v(10)={values[10]:.4f} v(100)={values[100]:.4f} v(2000)={values[2000]:.4f}")
    assert ok


def test_criterion_5_perturbation_consistency():
    ratios = {}
    for d in (10**3, 10**4):
        w_x, w_p = d // 100, 100
        pert = perturbation_exact(d, w_x, w_p)
        residual = abs(closed_form(d, w_x, w_p)
                       - continuum_form(w_x / d, w_p) - pert)
        ratios[d] = residual / pert
    improvement = ratios[10**3] / ratios[10**4]

    worst_rel = 0.0
    units = derive_units(1.0, 1.0, 10**4)
    for w_x, w_p in ((100, 100), (50, 200), (200, 50), (25, 400)):
        scales = coarse_to_units(units, w_x, w_p)
        target = (units.delta_x / scales.delta_X) ** 2 / 6.0
        for value in (perturbation_integral(10**4, w_x, w_p),
                      perturbation_in_units(units, w_x, w_p),
                      perturbation_exact(10**4, w_x, w_p)):
            worst_rel = max(worst_rel, abs(value / target - 1.0))

    ok = improvement >= 5.0 and worst_rel < 1e-12
    report(5, "decomposition residual shrinks >=5x from d=1e3 to 1e4; "
              "curve values equal (1/6)(dx/DX)^2",
           ok, f"improvement {improvement:.1f}x, worst curve mismatch {worst_rel:.2e}")
    assert ok


def test_criterion_6_exchange_symmetry():
    worst = 0.0
    for d in range(1, 361):
        divs = divisors(d)
        for i, w_x in enumerate(divs):
            for w_p in divs[i + 1:]:
                worst = max(worst, abs(closed_form(d, w_x, w_p) - closed_form(d, w_p, w_x)))
    ok = worst < 1e-9
    report(6, "closed form symmetric under width exchange for every d <= 360",
           ok, f"worst asymmetry {worst:.3e}")
    assert ok


def test_criterion_7_haar_average():
    config = LatticeConfig(32, 4, 4)
    states = sample_haar_states(config, 500, seed=20240801)
    values = np.array([p_agree_state(config, state) for state in states])
    average = closed_form(32, 4, 4)
    stderr = values.std(ddof=1) / math.sqrt(len(values))
    gap = abs(values.mean() - average)
    ok = gap < 4.0 * stderr
    report(7, "mean over 500 Haar states matches the closed form within 4 SE",
           ok, f"gap {gap:.2e} vs 4*SE {4 * stderr:.2e}")
    assert ok


def test_criterion_8_polygamma_identities():
    rng = np.random.default_rng(814)
    worst = 0.0
    for _ in range(50):
        g = int(rng.integers(2, 201))
        x = float(rng.uniform(0.01, 0.99))
        worst = max(worst, *harmonic_sum_identities(g, x))
    bracket_ok = True
    for x in np.logspace(-3, 6, 100):
        value = digamma(float(x))
        if not (math.log(x) - 1.0 / x < value < math.log(x) - 0.5 / x):
            bracket_ok = False
    ok = worst < 1e-8 and bracket_ok
    report(8, "harmonic-sum closures hold and digamma sits in its log bracket",
           ok, f"worst residual {worst:.3e}")
    assert ok


def test_criterion_9_unit_identities():
    rng = np.random.default_rng(95)
    worst = 0.0
    for _ in range(100):
        hbar = 10.0 ** rng.uniform(-35, 2)
        L = 10.0 ** rng.uniform(-3, 3)
        d = 10.0 ** rng.uniform(0, 36)
        units = derive_units(hbar, L, d)
        worst = max(
            worst,
            abs(units.delta_x * units.delta_p * units.d / (2 * math.pi * hbar) - 1.0),
            abs(units.l_u**2 / (units.delta_x * units.L) - 1.0),
        )
    example = derive_units(1.0, 1.0, 1e35)
    example_gap = abs(example.l_u / 10.0**-17.5 - 1.0)
    ok = worst < 1e-12 and example_gap < 1e-12
    report(9, "phase-cell and geometric-mean identities; l_u = 1e-17.5 m example",
           ok, f"worst identity gap {worst:.2e}, example gap {example_gap:.2e}")
    assert ok
