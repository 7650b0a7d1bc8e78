"""
Reports
One report per instance run (greedy, certificate, oracle values, ratios),
collected into pandas frames for batch runs and CSV export
"""

import logging

import pandas as pd

from modules.model.rationals import fmt, fmt_human

logger = logging.getLogger(__name__)

RATIONAL_FIELDS = (
    'greedy_cost', 'lower_bound', 'certified_ratio', 'harmonic',
    'lp_opt', 'ip_opt', 'greedy_over_ip', 'ip_over_lp', 'greedy_over_lower_bound',
)

COLUMNS = [
    'instance', 'digest', 'n', 'links', 'lambda',
    'greedy_cost', 'lower_bound', 'certified_ratio', 'harmonic', 'checks_passed',
    'lp_opt', 'ip_opt', 'greedy_over_ip', 'ip_over_lp', 'greedy_over_lower_bound',
    'greedy_seconds', 'lp_seconds', 'ip_seconds',
]


def build_report(instance, digest, name=None, certificate=None, lp_opt=None, ip_opt=None, timings=None):
    """
    Report dict; ratio fields appear only when both operands were computed
    """
    report = {
        'instance': name or digest[:12],
        'digest': digest,
        'n': instance.n,
        'links': len(instance.links) if hasattr(instance, 'links') else len(instance.edges),
    }
    if certificate is not None:
        report.update({
            'lambda': certificate.lam,
            'greedy_cost': certificate.greedy_cost,
            'lower_bound': certificate.lower_bound,
            'certified_ratio': certificate.certified_ratio,
            'harmonic': certificate.harmonic,
            'checks_passed': certificate.passed,
            'checks': dict(certificate.checks),
        })
    if lp_opt is not None:
        report['lp_opt'] = lp_opt
    if ip_opt is not None:
        report['ip_opt'] = ip_opt

    greedy = report.get('greedy_cost')
    if greedy is not None and ip_opt:
        report['greedy_over_ip'] = greedy / ip_opt
    if ip_opt is not None and lp_opt:
        report['ip_over_lp'] = ip_opt / lp_opt
    if greedy is not None and report.get('lower_bound'):
        report['greedy_over_lower_bound'] = greedy / report['lower_bound']

    for key, seconds in (timings or {}).items():
        report[f"{key}_seconds"] = round(seconds, 4)
    return report


def report_json(report):
    """Machine form: rationals as exact "p/q" strings only"""
    out = {}
    for key, value in report.items():
        if key in RATIONAL_FIELDS and value is not None:
            out[key] = fmt(value)
        else:
            out[key] = value
    return out


def report_lines(report):
    """Human form: one "label: value" line per field, rationals with a decimal"""
    lines = []
    for key in COLUMNS:
        if key not in report:
            continue
        value = report[key]
        if key in RATIONAL_FIELDS and value is not None:
            value = fmt_human(value)
        lines.append(f"{key.replace('_', ' ')}: {value}")
    for name, ok in report.get('checks', {}).items():
        lines.append(f"  check {name}: {'ok' if ok else 'FAILED'}")
    return lines


def report_frame(reports):
    """One row per report; rational columns keep their exact Fraction values"""
    frame = pd.DataFrame([{k: v for k, v in r.items() if k != 'checks'} for r in reports])
    return frame.reindex(columns=[c for c in COLUMNS if c in frame.columns])


def get_summary_stats(frame):
    """
    Batch-level statistics over a report frame
    """
    if frame is None or len(frame) == 0:
        return None

    def column_max(name):
        if name not in frame.columns:
            return None
        values = frame[name].dropna()
        if not len(values):
            return None
        best = max(values)
        # numpy scalars from integer columns
        return best.item() if hasattr(best, 'item') else best

    stats = {
        'total_instances': len(frame),
        'all_checks_passed': bool(frame['checks_passed'].all()) if 'checks_passed' in frame.columns else None,
        'max_certified_ratio': column_max('certified_ratio'),
        'max_greedy_over_ip': column_max('greedy_over_ip'),
        'max_ip_over_lp': column_max('ip_over_lp'),
        'max_lambda': column_max('lambda'),
    }
    if 'certified_ratio' in frame.columns:
        ratios = frame['certified_ratio'].dropna()
        stats['mean_certified_ratio'] = round(float(sum(ratios)) / len(ratios), 4) if len(ratios) else None
    return stats


def certificate_table(cert):
    """Per-node weighted snapshots of a certificate as a frame"""
    rows = []
    for u, snaps in sorted(cert.nodes.items()):
        for s in snaps:
            rows.append({
                'node': u,
                'snapshot': s.index,
                'iteration': s.iteration,
                'blocks': len(s.partition),
                'weight': s.weight,
                'y': s.y,
            })
    return pd.DataFrame(rows, columns=['node', 'snapshot', 'iteration', 'blocks', 'weight', 'y'])


def export_csv(frame, path):
    """Fractions are written in their exact "p/q" form"""
    frame.to_csv(path, index=False)
    logger.info("wrote %d rows to %s", len(frame), path)
