"""Helstrom probabilities, closed-form distinguishability values, and bounds.

Two channels sampled with priors (p1, 1-p1) are distinguished in one shot by
feeding a probe through the unknown channel and measuring optimally; the
success probability is (1/2)(1 + ||p1 rho1 - p2 rho2||_1) over the evolved
states. For the built-in channel families the optimum over a probe class
reduces to a closed form; those formulas live here, next to a convex-hull
helper and trace-norm bounds for mixed-unitary channels, all cross-checkable
against the brute-force probe optimizer in :mod:`chandiscrim.optimize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import channels as ch_mod
from .channels import Channel
from .linalg import as_complex, hermitian_eig, unitary_eigenphases
from .probes import BipartitePureProbe, SinglePureProbe


@dataclass
class DiscriminationResult:
    """Outcome of one discrimination evaluation."""

    probability: float
    probe_class: str
    probe: dict = field(default_factory=dict)
    method: str = "fixed_probe"  # closed_form | optimizer | fixed_probe
    optimizer_meta: dict | None = None


def helstrom(rho1, rho2, p1: float = 0.5) -> float:
    """Optimal success probability (1/2)(1 + ||p1 rho1 - p2 rho2||_1)."""
    rho1 = as_complex(rho1)
    rho2 = as_complex(rho2)
    if rho1.shape != rho2.shape:
        raise ValueError(f"state shapes differ: {rho1.shape} vs {rho2.shape}")
    p1 = float(p1)
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0, 1], got {p1!r}")
    diff = p1 * rho1 - (1.0 - p1) * rho2
    return 0.5 * (1.0 + float(np.abs(hermitian_eig(diff).values).sum()))


def _check_same_dims(ch1: Channel, ch2: Channel):
    if ch1.dim_in != ch2.dim_in or ch1.dim_out != ch2.dim_out:
        raise ValueError(
            f"channel dimensions differ: ({ch1.dim_in}->{ch1.dim_out}) vs "
            f"({ch2.dim_in}->{ch2.dim_out})"
        )


def discrim_fixed_single(
    ch1: Channel, ch2: Channel, probe: SinglePureProbe, p1: float = 0.5
) -> DiscriminationResult:
    """Helstrom probability for a fixed single-system probe."""
    _check_same_dims(ch1, ch2)
    if probe.dim != ch1.dim_in:
        raise ValueError(f"probe dimension {probe.dim} does not match channel input {ch1.dim_in}")
    rho = probe.density()
    p = helstrom(ch_mod.apply(ch1, rho), ch_mod.apply(ch2, rho), p1)
    return DiscriminationResult(p, probe_class="single", probe=probe.to_dict())


def discrim_fixed_entangled(
    ch1: Channel, ch2: Channel, probe: BipartitePureProbe, p1: float = 0.5
) -> DiscriminationResult:
    """Helstrom probability for a fixed bipartite probe, channel acting on A."""
    _check_same_dims(ch1, ch2)
    if probe.dim_a != ch1.dim_in:
        raise ValueError(
            f"probe A-dimension {probe.dim_a} does not match channel input {ch1.dim_in}"
        )
    rho = probe.density()
    p = helstrom(
        ch_mod.apply_on_A(ch1, rho, probe.dim_b),
        ch_mod.apply_on_A(ch2, rho, probe.dim_b),
        p1,
    )
    return DiscriminationResult(p, probe_class="general_entangled", probe=probe.to_dict())


# ---------------------------------------------------------------------------
# Closed forms. All assume equal priors and are symmetric in the two noise
# parameters (only the absolute difference enters).
# ---------------------------------------------------------------------------


def depolarizing_single_closed(d: int, q1: float, q2: float) -> float:
    """Single-probe value (1/2)(1 + |q1-q2| (1 - 1/d)); the same for every pure probe."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    return 0.5 * (1.0 + abs(q1 - q2) * (1.0 - 1.0 / d))


def depolarizing_maxent_closed(d: int, q1: float, q2: float) -> float:
    """Maximally entangled probe value (1/2)(1 + |q1-q2| (1 - 1/d^2))."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    return 0.5 * (1.0 + abs(q1 - q2) * (1.0 - 1.0 / d**2))


def depolarizing_nonmax_closed(g: float, q1: float, q2: float) -> float:
    """Qubit probe sqrt(g)|00> + e^(iz) sqrt(1-g)|11>: value is z-independent.

    The trace-norm factor is 1/2 + (1/2) sqrt(1 + 12 g (1-g)), increasing in
    the entanglement of the probe and maximal at g = 1/2, where it reproduces
    the maximally entangled value.
    """
    g = float(g)
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"g must lie in [0, 1], got {g!r}")
    norm = 0.5 + 0.5 * np.sqrt(1.0 + 12.0 * g * (1.0 - g))
    return 0.5 * (1.0 + 0.5 * abs(q1 - q2) * norm)


def dephasing_closed(r1: float, r2: float) -> float:
    """Optimal value (1/2)(1 + |r1-r2|), reached by the uniform superposition probe."""
    return 0.5 * (1.0 + abs(r1 - r2))


def hull_min_distance(phases: Sequence[float]) -> float:
    """Distance from the origin to the convex hull of unit-circle points.

    ``phases`` are angles in radians. Returns 0 when the origin lies inside
    or on the hull. With the points sorted by angle, the origin is outside
    the hull exactly when some arc gap between consecutive points exceeds pi;
    the nearest hull point is then the midpoint of the chord closing that
    gap, at distance cos(s/2) for chord arc-length s = 2*pi - gap.
    """
    pts = np.mod(np.asarray(list(phases), dtype=float), 2.0 * np.pi)
    if pts.size == 0:
        raise ValueError("need at least one phase")
    pts = np.sort(pts)
    keep = np.ones(pts.size, dtype=bool)
    keep[1:] = np.diff(pts) > 1e-12
    # 0 and 2*pi are the same point
    if pts.size > 1 and (2.0 * np.pi - pts[-1]) + pts[0] <= 1e-12:
        keep[-1] = False
    pts = pts[keep]
    gaps = np.diff(pts, append=pts[0] + 2.0 * np.pi)
    widest = float(gaps.max())
    if widest <= np.pi:
        return 0.0
    return float(np.cos((2.0 * np.pi - widest) / 2.0))


def gen_dephasing_closed(u, r1: float, r2: float, seed: int = 0) -> float:
    """Optimal single-probe value for channels r*rho + (1-r) U rho U†.

    Equals (1/2)(1 + |r1-r2| sqrt(1 - m^2)) where m is the distance from the
    origin to the convex hull of the eigenphase points of U; entangled probes
    cannot improve on it.
    """
    phases = [theta for theta, _ in unitary_eigenphases(u, seed=seed)]
    m = hull_min_distance(phases)
    return 0.5 * (1.0 + abs(r1 - r2) * np.sqrt(max(0.0, 1.0 - m * m)))


def hull_nearest_weights(phases: Sequence[float]) -> np.ndarray:
    """Convex weights on unit-circle points realizing the hull point nearest the origin.

    Returns w >= 0 with sum(w) = 1 such that |sum_k w_k e^(i phase_k)| equals
    ``hull_min_distance(phases)``. When the origin lies inside the hull a
    triangle (or antipodal pair) of points absorbs all the weight; when it
    lies outside, the two points bounding the widest arc gap share the weight
    equally (the nearest hull point is that chord's midpoint).
    """
    raw = np.mod(np.asarray(list(phases), dtype=float), 2.0 * np.pi)
    if raw.size == 0:
        raise ValueError("need at least one phase")
    order = np.argsort(raw)
    sorted_phases = raw[order]
    weights = np.zeros(raw.size)
    if raw.size == 1:
        weights[0] = 1.0
        return weights

    gaps = np.diff(sorted_phases, append=sorted_phases[0] + 2.0 * np.pi)
    widest = int(np.argmax(gaps))
    if gaps[widest] > np.pi:
        weights[order[widest]] += 0.5
        weights[order[(widest + 1) % raw.size]] += 0.5
        return weights

    pts = np.exp(1j * sorted_phases)
    # Antipodal pair through the origin.
    for i in range(raw.size):
        for j in range(i + 1, raw.size):
            if abs(pts[i] + pts[j]) <= 1e-9:
                weights[order[i]] = weights[order[j]] = 0.5
                return weights
    # Otherwise some triangle of points contains the origin (Caratheodory).
    for i in range(raw.size):
        for j in range(i + 1, raw.size):
            for k in range(j + 1, raw.size):
                a = np.array(
                    [
                        [pts[i].real, pts[j].real, pts[k].real],
                        [pts[i].imag, pts[j].imag, pts[k].imag],
                        [1.0, 1.0, 1.0],
                    ]
                )
                try:
                    w = np.linalg.solve(a, np.array([0.0, 0.0, 1.0]))
                except np.linalg.LinAlgError:
                    continue
                if np.all(w >= -1e-12):
                    w = np.clip(w, 0.0, None)
                    w /= w.sum()
                    weights[order[i]], weights[order[j]], weights[order[k]] = w
                    return weights
    raise ValueError("could not decompose the nearest hull point into convex weights")


def gen_dephasing_optimal_probe(u, seed: int = 0) -> SinglePureProbe:
    """A single-system probe attaining the generalized-dephasing optimum.

    Mixes eigenvectors of the unitary with amplitudes sqrt(w_k), where the
    weights place the convex combination of eigenphase points as close to the
    origin as possible.
    """
    eig = unitary_eigenphases(u, seed=seed)
    weights = hull_nearest_weights([theta for theta, _ in eig])
    v = sum(np.sqrt(w) * vec for w, (_, vec) in zip(weights, eig))
    return SinglePureProbe(v / np.linalg.norm(v))


def _ordered_mu(mu1: float, mu2: float) -> tuple[float, float]:
    mu1, mu2 = float(mu1), float(mu2)
    for name, v in (("mu1", mu1), ("mu2", mu2)):
        if not 0.0 < v < 1.0:
            raise ValueError(f"{name} must lie strictly in (0, 1), got {v!r}")
    return (mu1, mu2) if mu1 >= mu2 else (mu2, mu1)


def ad_single_closed(mu1: float, mu2: float) -> tuple[float, float]:
    """Optimal single-probe value and optimizing Bloch angle for amplitude damping.

    Two regimes, split by c = (sqrt(mu1) + sqrt(mu2))^2:
    c >= 1/2 -> value (1/2)(1 + (mu1 - mu2)) at theta = pi;
    c <  1/2 -> value (1/2)(1 + (sqrt(mu1) - sqrt(mu2)) / (2 sqrt(1 - c)))
                at theta = 2 arcsin sqrt(1 / (2 (1 - c))).
    Both branches agree on the boundary.
    """
    mu1, mu2 = _ordered_mu(mu1, mu2)
    root_sum_sq = (np.sqrt(mu1) + np.sqrt(mu2)) ** 2
    if root_sum_sq >= 0.5:
        return 0.5 * (1.0 + (mu1 - mu2)), float(np.pi)
    gap = np.sqrt(mu1) - np.sqrt(mu2)
    value = 0.5 * (1.0 + gap / (2.0 * np.sqrt(1.0 - root_sum_sq)))
    theta = 2.0 * np.arcsin(np.sqrt(1.0 / (2.0 * (1.0 - root_sum_sq))))
    return float(value), float(theta)


def ad_maxent_closed(mu1: float, mu2: float) -> float:
    """Maximally entangled probe value for two amplitude damping channels.

    (1/2)(1 + (1/4)(mu1-mu2) + (1/4) sqrt((mu1-mu2)^2 + 4 (sqrt(mu1)-sqrt(mu2))^2));
    the same for every maximally entangled probe.
    """
    mu1, mu2 = _ordered_mu(mu1, mu2)
    diff = mu1 - mu2
    root_gap = np.sqrt(mu1) - np.sqrt(mu2)
    return float(
        0.5 * (1.0 + 0.25 * diff + 0.25 * np.sqrt(diff**2 + 4.0 * root_gap**2))
    )


def ad_nonmax_norm(p: float, mu1: float, mu2: float) -> float:
    """Trace norm of the evolved-state difference for probe sqrt(p)|00> + sqrt(1-p)|11>.

    (1-p)(mu1-mu2) + (1-p) sqrt((mu1-mu2)^2 + 4 p/(1-p) (sqrt(mu1)-sqrt(mu2))^2).
    At p = 1/2 this reduces to the maximally entangled trace norm; the
    corresponding probability is 1/2 + (norm)/4.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly in (0, 1), got {p!r}")
    mu1, mu2 = _ordered_mu(mu1, mu2)
    diff = mu1 - mu2
    root_gap = np.sqrt(mu1) - np.sqrt(mu2)
    return float(
        (1.0 - p) * diff
        + (1.0 - p) * np.sqrt(diff**2 + 4.0 * (p / (1.0 - p)) * root_gap**2)
    )


def ad_nonmax_closed(p: float, mu1: float, mu2: float) -> float:
    """Probability 1/2 + ||difference||/4 for the Schmidt-pair probe."""
    return 0.5 + 0.25 * ad_nonmax_norm(p, mu1, mu2)


def erasure_closed(eps1: float, eps2: float) -> float:
    """Value (1/2)(1 + |eps1 - eps2|), independent of the probe, entangled or not."""
    return 0.5 * (1.0 + abs(eps1 - eps2))


# ---------------------------------------------------------------------------
# Trace-norm bounds for mixed-unitary channel pairs sharing weights.
# ---------------------------------------------------------------------------


def mixed_unitary_single_bound(
    pairs: Iterable[tuple[np.ndarray, np.ndarray, float]], probe: SinglePureProbe
) -> float:
    """Upper bound 2 sum_k q_k sqrt(1 - |<d| V_k† W_k |d>|^2) on the trace norm.

    ``pairs`` iterates (V_k, W_k, q_k). Equals 2 only if the probe perfectly
    separates every unitary pair at once. Returns a trace-norm-scale value,
    not a probability.
    """
    d = probe.amplitudes
    total = 0.0
    for v, w, q in pairs:
        v = as_complex(v)
        w = as_complex(w)
        if v.shape != w.shape or v.shape[0] != probe.dim:
            raise ValueError("unitary pair dimensions must match the probe")
        overlap = abs(np.vdot(d, v.conj().T @ w @ d)) ** 2
        total += float(q) * np.sqrt(max(0.0, 1.0 - overlap))
    return 2.0 * total


def mixed_unitary_maxent_bound(
    pairs: Iterable[tuple[np.ndarray, np.ndarray, float]]
) -> float:
    """Upper bound 2 sum_k q_k sqrt(1 - |Tr(V_k† W_k)|^2 / d^2) for the probe |phi+>.

    Any pair with Tr(V_k† W_k) != 0 pushes the bound strictly below 2, so a
    maximally entangled probe cannot reach certainty. Trace-norm scale.
    """
    total = 0.0
    for v, w, q in pairs:
        v = as_complex(v)
        w = as_complex(w)
        dim = v.shape[0]
        overlap = abs(np.trace(v.conj().T @ w)) ** 2 / dim**2
        total += float(q) * np.sqrt(max(0.0, 1.0 - overlap))
    return 2.0 * total


def ensemble_pairs(ch1: Channel, ch2: Channel) -> list[tuple[np.ndarray, np.ndarray, float]]:
    """Zip two mixed-unitary channels with shared weights into (V, W, q) triples."""
    w1 = ch1.params.get("weights")
    w2 = ch2.params.get("weights")
    if w1 is None or w2 is None:
        raise ValueError("both channels must be mixed-unitary with recorded weights")
    if len(w1) != len(w2) or any(abs(a - b) > 1e-12 for a, b in zip(w1, w2)):
        raise ValueError("the two ensembles must share the same weights")
    out = []
    for (k1, k2, q) in zip(ch1.kraus, ch2.kraus, w1):
        out.append((k1 / np.sqrt(q), k2 / np.sqrt(q), float(q)))
    return out
