"""Verification suite: every headline distinguishability claim as a scenario.

Each scenario compares an expected value (closed form, frozen oracle value,
or bound) against an independently computed one: brute-force optimizer runs,
fixed-probe Helstrom evaluations, random-probe spreads, grid sign patterns,
and CPTP residuals. ``run_acceptance`` executes the whole battery and returns
one report per sub-check; the CLI renders them, and the pytest acceptance
module asserts on them criterion by criterion.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np

from .channels import (
    choi,
    make_amplitude_damping,
    make_depolarizing,
    make_dephasing,
    make_erasure,
    make_generalized_dephasing,
    mixed_unitary_pair_d3,
    mixed_unitary_pair_d6,
)
from .discrimination import (
    ad_maxent_closed,
    ad_nonmax_norm,
    ad_single_closed,
    dephasing_closed,
    depolarizing_maxent_closed,
    depolarizing_nonmax_closed,
    depolarizing_single_closed,
    discrim_fixed_entangled,
    discrim_fixed_single,
    ensemble_pairs,
    erasure_closed,
    gen_dephasing_closed,
    helstrom,
    mixed_unitary_maxent_bound,
)
from .optimize import OptimizerOptions, optimize_entangled, optimize_single
from .probes import (
    basis_probe,
    bloch_qubit,
    max_entangled,
    nonmax_qubit,
    product_probe,
    random_bipartite,
    random_pure,
    schmidt_pair,
    uniform_superposition,
    zeta_probe,
)


@dataclass
class ScenarioReport:
    """One verified sub-claim: expected vs computed at a stated tolerance."""

    scenario_id: str
    claim: str
    expected: float
    computed: float
    tolerance: float
    kind: str  # abs | le | ge | gt
    passed: bool
    runtime_ms: float

    def to_dict(self) -> dict:
        return asdict(self)


def _passes(expected: float, computed: float, tolerance: float, kind: str) -> bool:
    if kind == "abs":
        return abs(expected - computed) <= tolerance
    if kind == "le":
        return computed <= expected + tolerance
    if kind == "ge":
        return computed >= expected - tolerance
    if kind == "gt":
        return computed > expected
    raise ValueError(f"unknown check kind {kind!r}")


class _Suite:
    def __init__(self):
        self.reports: list[ScenarioReport] = []
        self._clock = time.perf_counter()

    def add(self, scenario_id, claim, expected, computed, tolerance, kind="abs"):
        now = time.perf_counter()
        elapsed_ms = (now - self._clock) * 1000.0
        self._clock = now
        self.reports.append(
            ScenarioReport(
                scenario_id=scenario_id,
                claim=claim,
                expected=float(expected),
                computed=float(computed),
                tolerance=float(tolerance),
                kind=kind,
                passed=_passes(float(expected), float(computed), float(tolerance), kind),
                runtime_ms=elapsed_ms,
            )
        )

    def reset_clock(self):
        self._clock = time.perf_counter()


def _seed(base: int, *tags: int) -> int:
    out = base
    for t in tags:
        out = (out * 1000003 + t) % (2**31 - 1)
    return out


def _criterion_1(s: _Suite, seed: int, scale: float):
    """Depolarizing: every pure single-system probe performs identically."""
    q1, q2 = 0.9, 0.3
    for d in (2, 3, 4):
        ch1 = make_depolarizing(d, q1)
        ch2 = make_depolarizing(d, q2)
        rng = np.random.default_rng(_seed(seed, 1, d))
        values = [
            discrim_fixed_single(ch1, ch2, random_pure(d, rng)).probability
            for _ in range(100)
        ]
        spread = max(values) - min(values)
        s.add(
            f"c1.d{d}.constancy",
            f"depolarizing d={d}: spread over 100 random pure probes",
            0.0,
            spread,
            1e-9,
        )
        closed = depolarizing_single_closed(d, q1, q2)
        s.add(
            f"c1.d{d}.closed",
            f"depolarizing d={d}: fixed-probe value equals (1/2)(1+|q1-q2|(1-1/d))",
            closed,
            values[0],
            1e-12,
        )
        opt = optimize_single(
            ch1, ch2, OptimizerOptions(restarts=8, seed=_seed(seed, 1, d, 7))
        )
        s.add(
            f"c1.d{d}.optimizer",
            f"depolarizing d={d}: probe optimizer agrees with the closed form",
            closed,
            opt.probability,
            1e-6 * scale,
        )


def _criterion_2(s: _Suite, seed: int, scale: float):
    """Depolarizing qubits: the maximally entangled probe is optimal."""
    q1, q2 = 0.9, 0.3
    ch1 = make_depolarizing(2, q1)
    ch2 = make_depolarizing(2, q2)
    opt = optimize_entangled(
        ch1, ch2, OptimizerOptions(restarts=12, seed=_seed(seed, 2))
    )
    s.add(
        "c2.optimizer",
        "depolarizing d=2: entangled optimizer reaches the maximally entangled value",
        depolarizing_maxent_closed(2, q1, q2),
        opt.probability,
        1e-5 * scale,
    )
    gs = np.linspace(0.0, 1.0, 50)
    worst = 0.0
    for g in gs:
        closed = depolarizing_nonmax_closed(g, q1, q2)
        for z in (0.0, 2.1):
            fixed = discrim_fixed_entangled(ch1, ch2, nonmax_qubit(g, z)).probability
            worst = max(worst, abs(fixed - closed))
    s.add(
        "c2.gcurve",
        "depolarizing d=2: partially entangled closed form matches fixed-probe values "
        "(50 g-points, two phases)",
        0.0,
        worst,
        1e-9,
    )
    rising = np.linspace(0.0, 0.5, 50)
    curve = [depolarizing_nonmax_closed(g, q1, q2) for g in rising]
    s.add(
        "c2.monotone",
        "depolarizing d=2: value strictly increases with entanglement up to g=1/2",
        0.0,
        float(np.min(np.diff(curve))),
        0.0,
        kind="gt",
    )


def _criterion_3(s: _Suite, seed: int, scale: float):
    """Dephasing: a single-system probe is already optimal in any dimension."""
    r1, r2 = 0.9, 0.2
    target = dephasing_closed(r1, r2)
    for d in (2, 3, 4, 5):
        ch1 = make_dephasing(d, r1)
        ch2 = make_dephasing(d, r2)
        opt = optimize_single(
            ch1, ch2, OptimizerOptions(restarts=8, seed=_seed(seed, 3, d))
        )
        s.add(
            f"c3.d{d}.single_opt",
            f"dephasing d={d}: single-probe optimizer reaches (1/2)(1+|r1-r2|)",
            target,
            opt.probability,
            1e-5 * scale,
        )
        uniform = discrim_fixed_single(ch1, ch2, uniform_superposition(d)).probability
        s.add(
            f"c3.d{d}.uniform",
            f"dephasing d={d}: the uniform superposition attains the optimum exactly",
            target,
            uniform,
            1e-12,
        )
        if d <= 3:
            ent_opts = OptimizerOptions(restarts=6, seed=_seed(seed, 3, d, 2))
        else:
            ent_opts = OptimizerOptions(
                restarts=4,
                step_tolerance=1e-6,
                max_iterations=1500,
                seed=_seed(seed, 3, d, 2),
            )
        ent = optimize_entangled(ch1, ch2, ent_opts)
        s.add(
            f"c3.d{d}.ent_ceiling",
            f"dephasing d={d}: no entangled probe beats the single-system optimum",
            target,
            ent.probability,
            1e-5 * scale,
            kind="le",
        )


def _criterion_4(s: _Suite, seed: int, scale: float):
    """Unitary mixing with u = diag(1, e^(i pi/3)): two-point hull geometry."""
    r1, r2 = 0.8, 0.2
    u = np.diag([1.0, np.exp(1j * np.pi / 3.0)])
    closed = gen_dephasing_closed(u, r1, r2, seed=_seed(seed, 4))
    # chord midpoint at distance cos(pi/6) -> value (1/2)(1 + 0.6 * 1/2)
    s.add(
        "c4.closed",
        "unitary mixing diag(1, e^(i pi/3)): closed form equals 0.65",
        0.65,
        closed,
        1e-9,
    )
    ch1 = make_generalized_dephasing(u, r1)
    ch2 = make_generalized_dephasing(u, r2)
    opt = optimize_single(ch1, ch2, OptimizerOptions(restarts=8, seed=_seed(seed, 4, 1)))
    s.add(
        "c4.single_opt",
        "unitary mixing: single-probe optimizer matches the hull closed form",
        closed,
        opt.probability,
        1e-5 * scale,
    )
    ent = optimize_entangled(ch1, ch2, OptimizerOptions(restarts=6, seed=_seed(seed, 4, 2)))
    s.add(
        "c4.ent_gain",
        "unitary mixing: entanglement provides no gain",
        closed,
        ent.probability,
        1e-5 * scale,
        kind="le",
    )


def _criterion_5(s: _Suite, seed: int, scale: float):
    """Amplitude damping: the noise level decides which probe class wins."""
    cases = {
        # (sqrt(mu1)+sqrt(mu2))^2 = 2.25 >= 1/2: single wins
        "r1": (0.81, 0.36, "ge"),
        # (sqrt(mu1)+sqrt(mu2))^2 = 0.09 < 1/2: maximally entangled wins
        "r2": (0.04, 0.01, "le"),
    }
    for index, (tag, (mu1, mu2, _)) in enumerate(cases.items()):
        ch1 = make_amplitude_damping(mu1)
        ch2 = make_amplitude_damping(mu2)
        single_closed, theta = ad_single_closed(mu1, mu2)
        maxent = ad_maxent_closed(mu1, mu2)
        opt = optimize_single(
            ch1, ch2, OptimizerOptions(restarts=8, seed=_seed(seed, 5, index))
        )
        s.add(
            f"c5.{tag}.single_opt",
            f"amplitude damping ({mu1},{mu2}): optimizer matches the regime formula",
            single_closed,
            opt.probability,
            1e-5 * scale,
        )
        fixed_single = discrim_fixed_single(ch1, ch2, bloch_qubit(theta, 0.0)).probability
        s.add(
            f"c5.{tag}.single_fixed",
            f"amplitude damping ({mu1},{mu2}): the closed-form angle attains the formula",
            single_closed,
            fixed_single,
            1e-9,
        )
        fixed_me = discrim_fixed_entangled(ch1, ch2, max_entangled(2)).probability
        s.add(
            f"c5.{tag}.maxent_fixed",
            f"amplitude damping ({mu1},{mu2}): |phi+> evaluation matches its closed form",
            maxent,
            fixed_me,
            1e-9,
        )
        margin = single_closed - maxent
        if tag == "r1":
            s.add(
                "c5.r1.order",
                "amplitude damping (0.81,0.36): single probe strictly beats |phi+> "
                "(0.725 vs 0.65)",
                0.0,
                margin,
                0.0,
                kind="gt",
            )
            s.add("c5.r1.single_value", "single-probe value is 0.725", 0.725, single_closed, 1e-9)
            s.add("c5.r1.maxent_value", "|phi+> value is 0.65", 0.65, maxent, 1e-9)
        else:
            s.add(
                "c5.r2.order",
                "amplitude damping (0.04,0.01): |phi+> strictly beats the single probe",
                0.0,
                -margin,
                0.0,
                kind="gt",
            )
            s.add(
                "c5.r2.single_value",
                "single-probe value is 0.5262071209",
                0.526207120918048,
                single_closed,
                1e-9,
            )
            s.add(
                "c5.r2.maxent_value",
                "|phi+> value is 0.5290296855 (oracle-verified)",
                0.5290296855201959,
                maxent,
                1e-9,
            )
    rng = np.random.default_rng(_seed(seed, 5, 42))
    mismatches = 0
    count = 0
    while count < 200:
        mu2, mu1 = np.sort(rng.uniform(0.01, 0.99, size=2))
        c = (np.sqrt(mu1) + np.sqrt(mu2)) ** 2
        if mu1 - mu2 < 1e-6 or abs(c - 0.5) < 1e-3:
            continue
        count += 1
        gap = ad_single_closed(mu1, mu2)[0] - ad_maxent_closed(mu1, mu2)
        if np.sign(gap) != np.sign(c - 0.5):
            mismatches += 1
    s.add(
        "c5.grid",
        "amplitude damping: probe-class ranking flips exactly at "
        "(sqrt(mu1)+sqrt(mu2))^2 = 1/2 (200 random points)",
        0.0,
        float(mismatches),
        0.0,
    )


def _criterion_6(s: _Suite, seed: int, scale: float):
    """Weakly entangled Schmidt probe beating the single-system optimum."""
    mu1, mu2, p = 0.36, 0.09, 0.1
    norm = ad_nonmax_norm(p, mu1, mu2)
    s.add(
        "c6.norm",
        "amplitude damping (0.36,0.09), p=0.1: Schmidt-probe trace norm",
        0.5454053570954059,
        norm,
        1e-9,
    )
    ch1 = make_amplitude_damping(mu1)
    ch2 = make_amplitude_damping(mu2)
    fixed = discrim_fixed_entangled(ch1, ch2, schmidt_pair(p)).probability
    s.add(
        "c6.fixed",
        "amplitude damping: fixed Schmidt-probe evaluation matches 1/2 + norm/4",
        0.5 + norm / 4.0,
        fixed,
        1e-9,
    )
    single_norm = 2.0 * (mu1 - mu2)
    s.add(
        "c6.margin",
        "Schmidt probe beats the single-system optimum by more than 1e-3 in trace norm",
        1e-3,
        norm - single_norm,
        0.0,
        kind="ge",
    )
    c = (np.sqrt(mu1) + np.sqrt(mu2)) ** 2
    s.add(
        "c6.condition",
        "advantage condition (sqrt(mu1)+sqrt(mu2))^2 < 1 - p holds (0.81 < 0.9)",
        1.0 - p,
        c,
        0.0,
        kind="le",
    )


def _criterion_7(s: _Suite, seed: int, scale: float):
    """Qutrit mixed-unitary pair: only a tuned entangled probe is perfect."""
    ch1, ch2 = mixed_unitary_pair_d3()
    perfect = discrim_fixed_entangled(ch1, ch2, zeta_probe(0.5, 0.5)).probability
    s.add(
        "c7.zeta",
        "qutrit pair: probe (|00>+|11>+|22> weighted 1/2,1/4,1/4) discriminates perfectly",
        1.0,
        perfect,
        1e-9,
    )
    opt = optimize_single(
        ch1,
        ch2,
        OptimizerOptions(restarts=64, step_tolerance=1e-6, seed=_seed(seed, 7)),
    )
    s.add(
        "c7.single_cap",
        "qutrit pair: no single-system probe gets within 1e-3 of certainty (64 restarts)",
        1.0 - 1e-3,
        opt.probability,
        0.0,
        kind="le",
    )
    bound = mixed_unitary_maxent_bound(ensemble_pairs(ch1, ch2))
    s.add(
        "c7.ent_bound",
        "qutrit pair: |phi+> trace-norm bound stays below 2",
        2.0,
        bound,
        0.0,
        kind="le",
    )
    s.add(
        "c7.ent_bound_strict",
        "qutrit pair: the |phi+> bound excludes certainty (gap > 1e-3)",
        1e-3,
        2.0 - bound,
        0.0,
        kind="ge",
    )


def _criterion_8(s: _Suite, seed: int, scale: float):
    """Dimension-6 mixed-unitary pair: |0> is perfect, |phi+> provably is not."""
    ch1, ch2 = mixed_unitary_pair_d6()
    single = discrim_fixed_single(ch1, ch2, basis_probe(6, 0)).probability
    s.add(
        "c8.single",
        "dimension-6 pair: the basis probe |0> discriminates perfectly",
        1.0,
        single,
        1e-9,
    )
    bound = mixed_unitary_maxent_bound(ensemble_pairs(ch1, ch2))
    cap = 0.5 + bound / 4.0
    s.add(
        "c8.cap",
        "dimension-6 pair: |phi+> probability is capped strictly below 1 (margin > 1e-3)",
        1.0 - 1e-3,
        cap,
        0.0,
        kind="le",
    )
    fixed_me = discrim_fixed_entangled(ch1, ch2, max_entangled(6)).probability
    s.add(
        "c8.maxent_fixed",
        "dimension-6 pair: the actual |phi+> value respects the cap",
        cap,
        fixed_me,
        1e-9,
        kind="le",
    )


def _criterion_9(s: _Suite, seed: int, scale: float):
    """Erasure: the value never depends on the probe."""
    eps1, eps2 = 0.8, 0.3
    target = erasure_closed(eps1, eps2)
    for d in (2, 3):
        ch1 = make_erasure(d, eps1)
        ch2 = make_erasure(d, eps2)
        rng = np.random.default_rng(_seed(seed, 9, d))
        worst = 0.0
        for _ in range(100):
            p_single = discrim_fixed_single(ch1, ch2, random_pure(d, rng)).probability
            worst = max(worst, abs(p_single - target))
        for _ in range(100):
            p_ent = discrim_fixed_entangled(
                ch1, ch2, random_bipartite(d, d, rng)
            ).probability
            worst = max(worst, abs(p_ent - target))
        s.add(
            f"c9.d{d}",
            f"erasure d={d}: 200 random probes (single and bipartite) all give "
            f"(1/2)(1+|eps1-eps2|)",
            0.0,
            worst,
            1e-9,
        )


def _criterion_10(s: _Suite, seed: int, scale: float):
    """Framework sanity: Helstrom value, product reduction, CPTP residuals."""
    zero = basis_probe(2, 0).density()
    plus = uniform_superposition(2).density()
    s.add(
        "c10.helstrom",
        "two pure qubit states at overlap 1/2: Helstrom value (1/2)(1+1/sqrt(2))",
        0.5 * (1.0 + 1.0 / np.sqrt(2.0)),
        helstrom(zero, plus),
        1e-12,
    )
    rng = np.random.default_rng(_seed(seed, 10))
    pairs = [
        (make_amplitude_damping(0.7), make_amplitude_damping(0.2)),
        (make_dephasing(3, 0.9), make_dephasing(3, 0.35)),
    ]
    worst = 0.0
    for ch1, ch2 in pairs:
        d = ch1.dim_in
        for _ in range(25):
            a = random_pure(d, rng)
            b = random_pure(d + 1, rng)
            p_ent = discrim_fixed_entangled(ch1, ch2, product_probe(a, b)).probability
            p_single = discrim_fixed_single(ch1, ch2, a).probability
            worst = max(worst, abs(p_ent - p_single))
    s.add(
        "c10.product",
        "a product probe performs exactly like its A factor (50 random probes)",
        0.0,
        worst,
        1e-10,
    )
    u = np.diag([1.0, np.exp(0.4j), np.exp(1.9j)])
    instances = [
        make_depolarizing(2, 0.5),
        make_depolarizing(3, 0.4),
        make_depolarizing(4, 0.85),
        make_dephasing(2, 0.5),
        make_dephasing(5, 0.7),
        make_generalized_dephasing(u, 0.6),
        make_amplitude_damping(0.36),
        make_erasure(2, 0.3),
        make_erasure(3, 0.55),
        *mixed_unitary_pair_d3(),
        *mixed_unitary_pair_d6(),
    ]
    worst_tp = 0.0
    worst_choi = 0.0
    for ch in instances:
        tp = sum(k.conj().T @ k for k in ch.kraus)
        worst_tp = max(worst_tp, float(np.max(np.abs(tp - np.eye(ch.dim_in)))))
        worst_choi = min(worst_choi, float(np.linalg.eigvalsh(choi(ch)).min()))
    s.add(
        "c10.cptp_tp",
        "every built-in channel preserves trace (worst sum K†K residual)",
        0.0,
        worst_tp,
        1e-10,
    )
    s.add(
        "c10.cptp_choi",
        "every built-in channel is completely positive (worst Choi eigenvalue)",
        -1e-10,
        worst_choi,
        0.0,
        kind="ge",
    )


_CRITERIA = {
    1: _criterion_1,
    2: _criterion_2,
    3: _criterion_3,
    4: _criterion_4,
    5: _criterion_5,
    6: _criterion_6,
    7: _criterion_7,
    8: _criterion_8,
    9: _criterion_9,
    10: _criterion_10,
}


def run_acceptance(
    tolerance_scale: float = 1.0, seed: int = 0, only: set[int] | None = None
) -> list[ScenarioReport]:
    """Run the verification battery; optimizer-based tolerances scale with ``tolerance_scale``."""
    suite = _Suite()
    for number, fn in sorted(_CRITERIA.items()):
        if only is not None and number not in only:
            continue
        suite.reset_clock()
        fn(suite, seed, tolerance_scale)
    return suite.reports


def run_criterion(
    number: int, tolerance_scale: float = 1.0, seed: int = 0
) -> list[ScenarioReport]:
    """Run a single criterion of the battery."""
    if number not in _CRITERIA:
        raise ValueError(f"unknown criterion {number}; valid: 1..10")
    return run_acceptance(tolerance_scale=tolerance_scale, seed=seed, only={number})


def render_table(reports: list[ScenarioReport]) -> str:
    """Fixed-width text table, one row per sub-check."""
    header = f"{'scenario':28} {'expected':>16} {'computed':>16} {'tol':>8} {'ok':>4}  claim"
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.scenario_id:28} {r.expected:16.10g} {r.computed:16.10g} "
            f"{r.tolerance:8.1g} {'PASS' if r.passed else 'FAIL':>4}  {r.claim}"
        )
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)
