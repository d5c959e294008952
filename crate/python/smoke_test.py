"""Quick end-to-end check of the Python bindings."""

import math

import specest

grid_step = 0.5 / 1023

x = specest.synth_two_tone(1.0, 1.0, 0.2, 0.25, 128, 1e-3, 42)
assert len(x) == 128

r = specest.sample_autocorrelation(x, 10)
assert r[0] > 0 and len(r) == 11

p = specest.periodogram(x)
assert len(p) == 1024 and min(p.values) >= -1e-9 * max(p.values)

model, spec = specest.modcov(x, 10)
assert model.order == 10 and model.method == "modcov"
peaks = sorted(f for f, _ in spec.peaks(2))
assert abs(peaks[0] - 0.2) < 0.01 and abs(peaks[1] - 0.25) < 0.01, peaks

exact = specest.exact_two_tone_acf(5.0, 5.0, 0.2, 0.3, 10)
yw_model, yw = specest.yule_walker(exact, 10)
ld = specest.levinson_durbin(exact, 10)
assert all(abs(a - b) < 1e-12 for a, b in zip(yw_model.coefficients, ld.coefficients))
capon = specest.capon(exact, 10)
for f in (0.2, 0.3):
    assert any(abs(pf - f) <= grid_step for pf, _ in specest.peak_pick(capon)), f

bt = specest.blackman_tukey(exact, 10, window="parzen", grid=257)
assert len(bt.frequencies) == 257
assert specest.bartlett_window(0, 5) == 1.0 and specest.parzen_window(5, 5) == 0.0

carrier = specest.synth_carrier(7, 1000)
stego = specest.embed(carrier, 0.2, 1.0)
f_hat, err, _, _ = specest.detect(stego, "modcov", 10, true_frequency=0.2)
assert err < 0.01, f_hat

try:
    specest.yule_walker([1.0, 0.5], 5)
except ValueError:
    pass
else:
    raise AssertionError("expected ValueError for too few lags")

report = specest.run_scenario("SC-B1")
assert report["cells"]["periodogram"]["status"] == "not_applicable"
assert set(specest.scenario_names()) >= {"SC-A1", "SC-C2"}
assert not math.isnan(report["cells"]["capon"]["spectrum"].db()[0])

print("smoke test ok")
