"""Benchmark harness: latencies, operation counts, size and energy reports.

Absolute timings depend on the machine and on CPython; only orderings and
operation counts are meaningful across machines.  Schemes compared in one
call are measured interleaved (message by message) so that clock drift and
frequency scaling hit them equally.
"""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, replace

from . import formats, schnorr
from .group import get_group
from .params import ParamSet
from .scheme import expand, keygen, sign, verify

CSV_FIELDS = [
    "scheme", "params", "sign_us", "verify_us", "keygen_us", "e2e_us",
    "scalar_muls_sign", "scalar_muls_verify", "adds_sign", "adds_verify",
]

# Figures reported for the FourQ-based implementations (laptop: microseconds,
# ATmega2560: seconds).  Shown next to local measurements, never asserted.
REFERENCE_FIGURES = {
    ("aris", "commodity"): dict(sign=9, verify=12, e2e=21, sk_kb=32.03, pk_kb=32, sig_kb=0.06, unit="us"),
    ("schnorr", "commodity"): dict(sign=12, verify=22, e2e=34, sk_kb=0.03, pk_kb=0.03, sig_kb=0.06, unit="us"),
    ("aris", "embedded"): dict(sign=0.19, verify=0.37, e2e=0.56, sk_kb=16, pk_kb=8, sig_kb=0.06, unit="s"),
    ("schnorr", "embedded"): dict(sign=0.27, verify=0.60, e2e=0.87, sk_kb=0.03, pk_kb=0.03, sig_kb=0.06, unit="s"),
}


def expected_counts(scheme: str, params: ParamSet):
    """``((muls, adds) per sign, (muls, adds) per verify)`` by construction."""
    if scheme == "aris":
        return (0, params.k - 1), (1, params.k)
    if scheme == "schnorr":
        return (1, 0), (2, 1)
    raise ValueError(f"unknown scheme {scheme!r}")


@dataclass
class BenchReport:
    scheme: str
    params: str
    group: str
    key_mode: str
    iterations: int
    sign_median_us: float
    sign_p95_us: float
    verify_median_us: float
    verify_p95_us: float
    keygen_median_us: float
    keygen_p95_us: float
    scalar_muls_sign: int
    adds_sign: int
    scalar_muls_verify: int
    adds_verify: int
    pk_bytes: int
    sk_bytes: int
    sig_bytes: int

    @property
    def end_to_end_delay_us(self) -> float:
        return self.sign_median_us + self.verify_median_us

    @property
    def sign_ops_per_sec(self) -> float:
        return 1e6 / self.sign_median_us

    @property
    def verify_ops_per_sec(self) -> float:
        return 1e6 / self.verify_median_us

    def csv_row(self) -> dict:
        return {
            "scheme": self.scheme,
            "params": self.params,
            "sign_us": f"{self.sign_median_us:.1f}",
            "verify_us": f"{self.verify_median_us:.1f}",
            "keygen_us": f"{self.keygen_median_us:.1f}",
            "e2e_us": f"{self.end_to_end_delay_us:.1f}",
            "scalar_muls_sign": self.scalar_muls_sign,
            "scalar_muls_verify": self.scalar_muls_verify,
            "adds_sign": self.adds_sign,
            "adds_verify": self.adds_verify,
        }


class _Aris:
    name = "aris"

    def __init__(self, params, expanded):
        self.params = params
        self.expanded = expanded

    def keygen(self, seed):
        sk, pk = keygen(self.params, seed[: self.params.seed_len])
        if self.expanded:
            sk = expand(sk)
        self.sk, self.pk = sk, pk

    def sign(self, m):
        return sign(m, self.sk)

    def verify(self, m, sig):
        return verify(m, sig, self.pk)

    def sizes(self):
        g = self.params.group
        sk_payload = len(formats.secret_key_to_bytes(self.sk)) - len(
            formats.encode_header(self.params, formats.KIND_SECRET, 0, 0)
        )
        return self.params.t * g.element_len, sk_payload, self.params.signature_len


class _Schnorr:
    name = "schnorr"

    def __init__(self, params):
        self.params = params
        self.group = params.group

    def keygen(self, seed):
        self.kp = schnorr.schnorr_keygen(self.group, seed)

    def sign(self, m):
        return schnorr.schnorr_sign(m, self.kp)

    def verify(self, m, sig):
        return schnorr.schnorr_verify(m, sig, self.kp.public)

    def sizes(self):
        g = self.group
        return g.element_len, g.scalar_len, 2 * g.scalar_len


def _p95(xs):
    return statistics.quantiles(xs, n=20, method="inclusive")[18]


def _fresh(params: ParamSet) -> ParamSet:
    # own backend instance so counters see only this run
    return replace(params, group=get_group(params.group_id))


def compare(
    params: ParamSet,
    schemes=("aris", "schnorr"),
    iterations: int = 1000,
    warmup: int = 20,
    seed: int = 0,
    keygen_iterations: int = 3,
    expanded: bool = False,
) -> list[BenchReport]:
    """Benchmark several schemes on the same group, interleaving their calls.

    Raises ``RuntimeError`` if any operation count differs from
    :func:`expected_counts`.
    """
    if iterations < 100:
        raise ValueError("iterations must be >= 100")
    rng = random.Random(seed)
    corpus = [rng.randbytes(32) for _ in range(warmup + iterations)]
    key_seed = rng.randbytes(32)

    runners = []
    for name in schemes:
        p = _fresh(params)
        if name == "aris":
            runners.append(_Aris(p, expanded))
        elif name == "schnorr":
            runners.append(_Schnorr(p))
        else:
            raise ValueError(f"unknown scheme {name!r}")

    clock = time.perf_counter_ns
    keygen_t = {r.name: [] for r in runners}
    for _ in range(keygen_iterations):
        for r in runners:
            t0 = clock()
            r.keygen(key_seed)
            keygen_t[r.name].append(clock() - t0)

    sign_t = {r.name: [] for r in runners}
    verify_t = {r.name: [] for r in runners}
    sign_counts = {}
    verify_counts = {}
    sigs = {r.name: [] for r in runners}

    for r in runners:
        for m in corpus[:warmup]:
            r.verify(m, r.sign(m))
        r.params.group.reset_counters()
    for m in corpus[warmup:]:
        for r in runners:
            t0 = clock()
            sig = r.sign(m)
            sign_t[r.name].append(clock() - t0)
            sigs[r.name].append(sig)
    for r in runners:
        sign_counts[r.name] = r.params.group.snapshot()
        r.params.group.reset_counters()
    for j, m in enumerate(corpus[warmup:]):
        for r in runners:
            sig = sigs[r.name][j]
            t0 = clock()
            ok = r.verify(m, sig)
            verify_t[r.name].append(clock() - t0)
            if not ok:
                raise RuntimeError(f"{r.name}: honest signature rejected")
    for r in runners:
        verify_counts[r.name] = r.params.group.snapshot()

    reports = []
    for r in runners:
        exp_sign, exp_verify = expected_counts(r.name, r.params)
        per_sign = tuple(c // iterations for c in sign_counts[r.name])
        per_verify = tuple(c // iterations for c in verify_counts[r.name])
        if (
            sign_counts[r.name] != tuple(c * iterations for c in exp_sign)
            or verify_counts[r.name] != tuple(c * iterations for c in exp_verify)
        ):
            raise RuntimeError(
                f"{r.name}: operation counts sign={sign_counts[r.name]} verify={verify_counts[r.name]} "
                f"over {iterations} runs, expected per-op {exp_sign} / {exp_verify}"
            )
        pk_b, sk_b, sig_b = r.sizes()
        us = lambda xs: [x / 1000 for x in xs]
        st, vt, kt = us(sign_t[r.name]), us(verify_t[r.name]), us(keygen_t[r.name])
        reports.append(
            BenchReport(
                scheme=r.name,
                params=params.name,
                group=params.group_id,
                key_mode=("expanded" if expanded else "seeded") if r.name == "aris" else "-",
                iterations=iterations,
                sign_median_us=statistics.median(st),
                sign_p95_us=_p95(st),
                verify_median_us=statistics.median(vt),
                verify_p95_us=_p95(vt),
                keygen_median_us=statistics.median(kt) if kt else float("nan"),
                keygen_p95_us=_p95(kt) if len(kt) > 1 else (kt[0] if kt else float("nan")),
                scalar_muls_sign=per_sign[0],
                adds_sign=per_sign[1],
                scalar_muls_verify=per_verify[0],
                adds_verify=per_verify[1],
                pk_bytes=pk_b,
                sk_bytes=sk_b,
                sig_bytes=sig_b,
            )
        )
    return reports


def run_bench(scheme: str, params: ParamSet, iterations: int = 1000, warmup: int = 20, **kw) -> BenchReport:
    """Benchmark one scheme; see :func:`compare` for keyword arguments."""
    return compare(params, (scheme,), iterations, warmup, **kw)[0]


@dataclass(frozen=True)
class EnergyModel:
    voltage: float
    current: float
    time: float

    def __post_init__(self):
        for name in ("voltage", "current", "time"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


def energy(model: EnergyModel) -> float:
    """Joules drawn by a device at constant voltage and current: ``V * I * t``."""
    return model.voltage * model.current * model.time


def emit_comparison(reports, csv_path=None, md_path=None, include_reference=False):
    """Render reports as CSV (fixed schema) and a markdown table.

    Returns ``(csv_text, markdown_text)`` and writes them when paths are given.
    """
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    csv_text = buf.getvalue()

    lines = [
        "| Scheme | Sign (us) | Private key (KB) | Signature (KB) | Verify (us) | Public key (KB) | End-to-end (us) |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in reports:
        label = f"{r.scheme} [{r.params}, {r.group}" + (f", {r.key_mode}]" if r.key_mode != "-" else "]")
        lines.append(
            f"| {label} | {r.sign_median_us:.1f} | {r.sk_bytes / 1024:.2f} | {r.sig_bytes / 1024:.2f} "
            f"| {r.verify_median_us:.1f} | {r.pk_bytes / 1024:.2f} | {r.end_to_end_delay_us:.1f} |"
        )
        ref = REFERENCE_FIGURES.get((r.scheme, r.params)) if include_reference else None
        if ref:
            lines.append(
                f"| {r.scheme} [{r.params}, reported FourQ, {ref['unit']}] | {ref['sign']} | {ref['sk_kb']} "
                f"| {ref['sig_kb']} | {ref['verify']} | {ref['pk_kb']} | {ref['e2e']} |"
            )
    md_text = "\n".join(lines) + "\n"

    if csv_path is not None:
        with open(csv_path, "w", newline="") as f:
            f.write(csv_text)
    if md_path is not None:
        with open(md_path, "w") as f:
            f.write(md_text)
    return csv_text, md_text
