"""Benchmark ARIS against the Schnorr baseline and turn timings into energy.

Run:  python demos/04_benchmark_and_energy.py [iterations]
"""
import sys
import warnings

from aris import SecurityWarning, builtin_params
from aris.bench import EnergyModel, compare, emit_comparison, energy

warnings.simplefilter("ignore", SecurityWarning)
iterations = int(sys.argv[1]) if len(sys.argv) > 1 else 500

reports = []
for name in ("commodity", "embedded"):
    params = builtin_params(name)
    reports += compare(params, iterations=iterations, expanded=True)
    reports += compare(params, schemes=("aris",), iterations=iterations, expanded=False)

csv_text, md = emit_comparison(reports, include_reference=True)
print(md)
print(csv_text)

# Energy at constant voltage and current grows linearly with time, so the
# energy ratio between two schemes is their time ratio.  V and I below are
# placeholders; supply your board's figures.
V, I = 5.0, 0.02
for r in reports:
    e_us = energy(EnergyModel(V, I, r.end_to_end_delay_us * 1e-6))
    print(f"{r.scheme:8} {r.params:10} {r.key_mode:9} sign+verify energy at {V} V / {I} A: {e_us * 1e6:.2f} uJ")
