import cmath
import math
import random

import pytest

import irgrowth as ig


def test_lattice_counts_and_sums():
    lattice = ig.ZeroLattice(12)
    assert lattice.counting(16.0) == 30
    assert lattice.normalized_count(16.0) == 1.875
    assert lattice.total_zeros == 2**13 - 2
    assert abs(lattice.reciprocal_sum(1024.0)) <= 1e-12
    assert lattice.circle(1) == [2 + 0j, -2 + 0j]
    report = ig.verify_lattice(lattice)
    assert report["counting_bound_holds"] and report["reciprocal_bound_holds"]
    with pytest.raises(ig.LatticeExhausted):
        lattice.counting(2.0**13)


def test_product_values_and_zeros():
    f = ig.ProductEvaluator()
    # mpmath reference
    assert abs(f(1) - 0.7470702679711394) <= 1e-15
    assert f.eval_log(4j).is_zero()
    z = 3.7 - 1.2j
    k = f.cutoff(z)
    a, b = f.eval_log_truncated(z, k), f.eval_log_direct(z, k)
    assert abs(a.to_complex() - b.to_complex()) <= 1e-12 * abs(b.to_complex())


def test_log_complex_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        z = complex(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
        back = ig.LogComplex.from_complex(z).to_complex()
        assert abs(back - z) <= 1e-14 * abs(z)
    big = ig.LogComplex.polar(1000.0, 0.5) * ig.LogComplex.polar(-990.0, 0.25)
    assert big.log_mag == pytest.approx(10.0)
    assert big.arg == pytest.approx(0.75)


def test_coefficients():
    stream = ig.CoefficientStream()
    assert stream.taylor(1) == (0, 0)
    assert stream.taylor(2) == (-1, -2)
    assert stream.taylor(6) == (1, -10)
    sign, log_abs = stream.borel(2)
    assert sign == -1 and math.exp(log_abs) == pytest.approx(0.5)


def test_borel_and_contours():
    g = ig.BorelEvaluator()
    assert g(4).real == pytest.approx(0.24213886327016976, rel=1e-15)
    with pytest.raises(ig.DomainError):
        g(1)
    f = ig.ProductEvaluator()
    z = 1.5 + 0.5j
    assert abs(ig.borel_inversion(z, 4.0)["value"] - f(z)) <= 1e-10
    u0 = ig.u_eval(0)["value"]
    assert abs(u0) == pytest.approx(0.0438, abs=1e-3)
    for x in range(0, 11):
        assert abs(ig.u_eval(x)["value"]) <= ig.U_DECAY_CONSTANT * math.exp(-3 * x) * (1 + 1e-6)
    assert ig.splitting_residual(-2 + 3j, f) <= 1e-7 * (1 + abs(f(-2 + 3j)))
    with pytest.raises(ig.DomainError):
        ig.F_eval(100)
    far = ig.F_via_identity(300.5, f)
    assert far.log_mag == pytest.approx(f.eval_log(300.5).log_mag)


def test_growth_verdicts():
    f = ig.ProductEvaluator()
    pf = f.growth_profile(0.0, 256.0, 16384.0, 6 * 256 + 1)
    v = ig.classify(pf, trailing_windows=0)
    assert v["verdict"] == "irregular"
    assert v["windows"] == [8, 9, 10, 11, 12, 13]
    assert min(w.width for w in ig.window_stats(pf)) >= 0.04

    radii = ig.geometric_radii(256.0, 16384.0, 6 * 256 + 1)
    e = ig.classify(ig.control_profile("exp2z", 0.0, radii))
    assert e["verdict"] == "regular" and e["limit_or_gap"] == pytest.approx(2.0, abs=0.01)
    s = ig.classify(ig.control_profile("sin2z", math.pi / 2, radii))
    assert s["verdict"] == "regular" and s["limit_or_gap"] == pytest.approx(2.0, abs=0.01)

    with pytest.raises(ig.InsufficientSamples):
        ig.window_stats(ig.control_profile("exp2z", 0.0, ig.geometric_radii(256.0, 1024.0, 513)))


def test_type_estimate():
    f = ig.ProductEvaluator()
    rays = [f.growth_profile(0.1 + 2 * math.pi * j / 8, 256.0, 16384.0, 6 * 256 + 1) for j in range(8)]
    value, theta, max_radius = ig.type_estimate(rays)
    assert value <= 2.0
    assert value == pytest.approx(4 / math.e, abs=0.01)
    assert max_radius == 16384.0


def test_relative_measure():
    e = ig.IntervalSet()
    for k in range(21):
        e.add(2.0**k, 2.0**k + 1)
    assert ig.relative_measure(e, 2.0**20) == pytest.approx(20 / 2.0**20)
    assert e.contains(1.5) and not e.contains(3.5)
