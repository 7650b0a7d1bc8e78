"""
Certificate Parser
Reads and writes dual-fitting certificates. Partitions are stored as lists
of base-block representatives and re-expanded against the instance on load.
"""

import json
import logging

from modules.analysis.dual_certificate import (
    DualCertificate,
    IterationRecord,
    WeightedSnapshot,
    certified_ratio,
    lower_bound,
)
from modules.errors import CheckFailed, SchemaError, TapCertError, ValidationError
from modules.model.instance import components_partition
from modules.model.partition import Partition
from modules.model.rationals import fmt, to_rational
from modules.parsers.instance_parser import decode_json

logger = logging.getLogger(__name__)

CERTIFICATE_KIND = 'certificate'


def certificate_document(cert):
    nodes = {}
    for u, snaps in sorted(cert.nodes.items()):
        base = cert.bases[u]
        nodes[str(u)] = [
            {
                'index': s.index,
                'iteration': s.iteration,
                'blocks': s.partition.representatives(base),
                'weight': fmt(s.weight),
                'y': fmt(s.y),
            }
            for s in snaps
        ]
    ratio = certified_ratio(cert)
    return {
        'kind': CERTIFICATE_KIND,
        'instance_digest': cert.instance_digest,
        'lambda': cert.lam,
        'harmonic': fmt(cert.harmonic),
        'greedy_cost': fmt(cert.greedy_cost),
        'lower_bound': fmt(lower_bound(cert)),
        'certified_ratio': None if ratio is None else fmt(ratio),
        'picked': list(cert.picked),
        'iterations': [
            {
                'number': it.number,
                'link': it.link_id,
                'ratio': fmt(it.ratio),
                'covered': [[u, idx] for u, idx in it.covered],
            }
            for it in cert.iterations
        ],
        'nodes': nodes,
    }


def serialize_certificate(cert):
    return (json.dumps(certificate_document(cert), sort_keys=True, indent=1) + '\n').encode('utf-8')


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", field=field)
    return value


def _list(value, field):
    if not isinstance(value, list):
        raise SchemaError("expected a list", field=field)
    return value


def _snapshot(item, base, where):
    if not isinstance(item, dict):
        raise SchemaError("expected a snapshot object", field=where)
    for key in ('index', 'iteration', 'blocks', 'weight', 'y'):
        if key not in item:
            raise SchemaError(f"missing {key}", field=where)
    groups = _list(item['blocks'], f"{where}.blocks")
    for g, group in enumerate(groups):
        for rep in _list(group, f"{where}.blocks[{g}]"):
            _int(rep, f"{where}.blocks[{g}]")
    try:
        partition = Partition.from_representatives(base, groups)
    except ValidationError as e:
        raise CheckFailed('structure', f"{where}: {e.reason}")
    return WeightedSnapshot(
        index=_int(item['index'], f"{where}.index"),
        iteration=_int(item['iteration'], f"{where}.iteration"),
        partition=partition,
        weight=to_rational(item['weight'], f"{where}.weight"),
        y=to_rational(item['y'], f"{where}.y"),
    )


def parse_certificate(raw, instance):
    """
    Parse certificate bytes against the instance they claim to certify

    Raises SchemaError for malformed documents and CheckFailed('structure')
    when the snapshots cannot be re-expanded against the instance's tree.
    """
    data = decode_json(raw, what='certificate')
    if data.get('kind', CERTIFICATE_KIND) != CERTIFICATE_KIND:
        raise SchemaError(f"not a certificate: kind {data.get('kind')!r}", field='kind')
    for key in ('lambda', 'harmonic', 'greedy_cost', 'picked', 'iterations', 'nodes'):
        if key not in data:
            raise SchemaError(f"missing {key}", field=key)

    raw_nodes = data['nodes']
    if not isinstance(raw_nodes, dict):
        raise SchemaError("expected an object keyed by node id", field='nodes')
    nodes, bases = {}, {}
    for key, snaps in raw_nodes.items():
        try:
            u = int(key)
        except ValueError:
            raise SchemaError(f"node key {key!r} is not an integer", field='nodes')
        if not 0 <= u < instance.n:
            raise CheckFailed('structure', f"node {u} is outside the instance")
        try:
            bases[u] = components_partition(instance, u)
        except ValidationError:
            raise CheckFailed('structure', f"node {u} is a leaf of the tree")
        nodes[u] = [_snapshot(item, bases[u], f"nodes.{key}[{j}]")
                    for j, item in enumerate(_list(snaps, f"nodes.{key}"))]

    iterations = []
    for i, item in enumerate(_list(data['iterations'], 'iterations')):
        where = f"iterations[{i}]"
        if not isinstance(item, dict):
            raise SchemaError("expected an iteration object", field=where)
        covered = []
        for pair in _list(item.get('covered'), f"{where}.covered"):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError("expected a [node, snapshot] pair", field=f"{where}.covered")
            covered.append((_int(pair[0], f"{where}.covered"), _int(pair[1], f"{where}.covered")))
        iterations.append(IterationRecord(
            number=_int(item.get('number'), f"{where}.number"),
            link_id=_int(item.get('link'), f"{where}.link"),
            ratio=to_rational(item.get('ratio'), f"{where}.ratio"),
            covered=tuple(covered),
        ))

    return DualCertificate(
        nodes=nodes,
        bases=bases,
        lam=_int(data['lambda'], 'lambda'),
        harmonic=to_rational(data['harmonic'], 'harmonic'),
        greedy_cost=to_rational(data['greedy_cost'], 'greedy_cost'),
        picked=[_int(v, 'picked') for v in _list(data['picked'], 'picked')],
        iterations=iterations,
        instance_digest=data.get('instance_digest'),
    )


def save_certificate(cert, path):
    with open(path, 'wb') as f:
        f.write(serialize_certificate(cert))
    logger.info("wrote certificate %s", path)


def load_certificate(path, instance):
    """
    Returns:
        certificate, error (exactly one of them is None)
    """
    try:
        with open(path, 'rb') as f:
            cert = parse_certificate(f.read(), instance)
    except OSError as e:
        return None, SchemaError(f"cannot read {path}: {e.strerror}")
    except TapCertError as e:
        logger.info("rejected certificate %s: %s", path, e)
        return None, e
    return cert, None
