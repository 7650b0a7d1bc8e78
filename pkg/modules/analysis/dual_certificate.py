"""
Dual-Fitting Certificate
Turns a greedy trace into a dual solution y, checks that y / H(lambda-1) is
dual feasible, and derives the lower bound that certifies the run
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from modules.analysis.greedy_solver import greedy_solve
from modules.errors import CheckFailed, MalformedTrace, MismatchedDigest
from modules.model.instance import internal_nodes, nonleaf_nodes, tree_lambda
from modules.model.rationals import harmonic
from modules.utils.connectivity import is_feasible_augmentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedSnapshot:
    index: int
    iteration: int
    partition: object
    weight: Fraction
    y: Fraction


@dataclass(frozen=True)
class IterationRecord:
    number: int
    link_id: int
    ratio: Fraction
    covered: tuple


@dataclass
class DualCertificate:
    nodes: dict
    bases: dict
    lam: int
    harmonic: Fraction
    greedy_cost: Fraction
    picked: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    instance_digest: str = None


def build_dual(trace, instance):
    """
    y(P^1_u) = wgt(P^1_u), y(P^j_u) = wgt(P^j_u) - wgt(P^{j-1}_u);
    every other partition implicitly gets y = 0.
    """
    bases = trace.bases
    nodes = {}
    for u, snaps in trace.snapshots.items():
        if u not in bases:
            raise MalformedTrace(f"snapshot for node {u} which is not a non-leaf node")
        nu = len(bases[u])
        if len(snaps) > nu - 1:
            raise MalformedTrace(f"node {u} has {len(snaps)} weighted partitions, at most {nu - 1} allowed")
        weighted = []
        previous = None
        for j, snap in enumerate(snaps):
            if snap.index != j:
                raise MalformedTrace(f"node {u}: snapshot {snap.index} out of order or duplicated")
            if previous is not None:
                if snap.iteration <= previous.iteration:
                    raise MalformedTrace(f"node {u}: snapshot {j} precedes its predecessor")
                if len(snap.partition) >= len(previous.partition):
                    raise MalformedTrace(f"node {u}: snapshot {j} is not coarser than snapshot {j - 1}")
            y = snap.weight if previous is None else snap.weight - previous.weight
            weighted.append(WeightedSnapshot(j, snap.iteration, snap.partition, snap.weight, y))
            previous = snap
        nodes[u] = weighted

    for it in trace.iterations:
        if it.weight_assigned != it.ratio:
            raise MalformedTrace(f"iteration {it.number} assigns {it.weight_assigned}, ratio is {it.ratio}")

    lam = tree_lambda(instance)
    return DualCertificate(
        nodes=nodes,
        bases=dict(bases),
        lam=lam,
        harmonic=harmonic(lam - 1),
        greedy_cost=trace.cost,
        picked=[link.link_id for link in trace.picked],
        iterations=[IterationRecord(it.number, it.link.link_id, it.ratio, it.covered)
                    for it in trace.iterations],
    )


def check_nonnegative(cert):
    return all(s.y >= 0 for snaps in cert.nodes.values() for s in snaps)


def crossed_snapshots(cert, u, link):
    """Weighted snapshots of node u whose partition separates the link's endpoints"""
    if u in link.endpoints:
        return []
    return [s for s in cert.nodes.get(u, []) if s.partition.crosses(link.u, link.v)]


def link_load(cert, link):
    """Sum of y over all weighted partitions crossed by the link"""
    return sum((s.y for u in cert.nodes for s in crossed_snapshots(cert, u, link)), Fraction(0))


def check_load_telescopes(cert, instance):
    """
    For every link and node u the crossed snapshots form a prefix
    P^1_u..P^h_u and their y values sum to wgt(P^h_u).
    """
    for link in instance.links:
        for u in cert.nodes:
            crossed = crossed_snapshots(cert, u, link)
            if not crossed:
                continue
            if [s.index for s in crossed] != list(range(len(crossed))):
                return False
            if sum((s.y for s in crossed), Fraction(0)) != crossed[-1].weight:
                return False
    return True


def check_dual_feasible(cert, instance):
    """load(l) <= H(lambda-1) * cost(l) for every link, exactly"""
    return all(link_load(cert, link) <= cert.harmonic * link.cost for link in instance.links)


def check_harmonic_link_bounds(cert, instance):
    """Sharper per-link form: load(l) <= H(q_l) * cost(l), q_l = internal nodes of T(l)"""
    return all(
        link_load(cert, link) <= harmonic(len(internal_nodes(instance, link))) * link.cost
        for link in instance.links
    )


def check_trace_consistent(cert):
    """Iteration records agree with the snapshots they weighted; ratios never decrease"""
    if [it.link_id for it in cert.iterations] != list(cert.picked):
        return False
    last = None
    for it in cert.iterations:
        if last is not None and it.ratio < last:
            return False
        for u, idx in it.covered:
            snaps = cert.nodes.get(u, [])
            if idx >= len(snaps) or snaps[idx].iteration != it.number or snaps[idx].weight != it.ratio:
                return False
        last = it.ratio
    weighted = sum(len(snaps) for snaps in cert.nodes.values())
    return weighted == sum(len(it.covered) for it in cert.iterations)


def dual_objective(cert):
    """Sum over weighted partitions of (|P| - 1) * y(P)"""
    return sum(
        ((len(s.partition) - 1) * s.y for snaps in cert.nodes.values() for s in snaps),
        Fraction(0),
    )


def lower_bound(cert):
    """dual_objective / H(lambda-1): a lower bound on the partition LP optimum"""
    return dual_objective(cert) / cert.harmonic


def certified_ratio(cert):
    bound = lower_bound(cert)
    if bound == 0:
        return Fraction(1) if cert.greedy_cost == 0 else None
    return cert.greedy_cost / bound


@dataclass
class CertificateReport:
    greedy_cost: Fraction
    lower_bound: Fraction
    certified_ratio: Fraction
    harmonic: Fraction
    lam: int
    checks: dict
    certificate: DualCertificate
    trace: object

    @property
    def passed(self):
        return all(self.checks.values())


def run_checks(cert, instance):
    """All certificate checks by name, in the order they are reported"""
    picked = [instance.link_by_id(i) for i in cert.picked]
    return {
        'nonnegativity': check_nonnegative(cert),
        'telescoping': check_load_telescopes(cert, instance),
        'dual_feasibility': check_dual_feasible(cert, instance),
        'harmonic_link_bounds': check_harmonic_link_bounds(cert, instance),
        'accounting': dual_objective(cert) == cert.greedy_cost
                      and instance.total_cost(picked) == cert.greedy_cost,
        'feasibility': is_feasible_augmentation(instance, picked),
        'ratio_bound': (certified_ratio(cert) is not None
                        and certified_ratio(cert) <= cert.harmonic),
    }


def ratio_certificate(instance):
    """Solve, certify and check one instance"""
    _, trace = greedy_solve(instance)
    cert = build_dual(trace, instance)
    checks = run_checks(cert, instance)
    report = CertificateReport(
        greedy_cost=cert.greedy_cost,
        lower_bound=lower_bound(cert),
        certified_ratio=certified_ratio(cert),
        harmonic=cert.harmonic,
        lam=cert.lam,
        checks=checks,
        certificate=cert,
        trace=trace,
    )
    logger.info("certificate: greedy %s, lower bound %s, checks %s",
                report.greedy_cost, report.lower_bound,
                'passed' if report.passed else 'FAILED')
    return report


def verify_certificate(instance, cert, expected_digest=None):
    """
    Independently re-verify a certificate read from disk against its
    instance; raises CheckFailed naming the first failed check.
    """
    if expected_digest is not None and cert.instance_digest != expected_digest:
        raise MismatchedDigest(f"certificate is for {cert.instance_digest}, instance is {expected_digest}")

    if set(cert.nodes) - set(nonleaf_nodes(instance)):
        raise CheckFailed('structure', "certificate names a node that is not a non-leaf node")
    lam = tree_lambda(instance)
    if cert.lam != lam or cert.harmonic != harmonic(lam - 1):
        raise CheckFailed('lambda', f"certificate says lambda={cert.lam}, instance has {lam}")

    if not check_trace_consistent(cert):
        raise MalformedTrace("iteration records do not match the weighted snapshots")

    for u, snaps in cert.nodes.items():
        previous = None
        for s in snaps:
            expected = s.weight if previous is None else s.weight - previous.weight
            if s.y < 0:
                raise CheckFailed('nonnegativity', f"node {u} snapshot {s.index} has y={s.y}")
            if s.y != expected:
                raise CheckFailed('weights', f"node {u} snapshot {s.index}: y={s.y}, weights give {expected}")
            previous = s

    for name, ok in run_checks(cert, instance).items():
        if not ok:
            raise CheckFailed(name)
    return True
