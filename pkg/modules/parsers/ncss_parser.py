"""
2NCSS Instance Parser
Handles the "ncss" kind: a general costed graph
"""

from modules.errors import SchemaError
from modules.model.instance import NcssInstance, validate_ncss
from modules.parsers.tap_parser import parse_costed_items, parse_labels, serialize_costed_items


def parse_ncss(data):
    """
    Parse a decoded "ncss" document

    Expected fields: kind, n, edges (list of {u, v, cost}), optional labels.
    The graph must be 2-node connected.
    """
    n = data.get('n')
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("node count must be an integer", field='n')
    edges = parse_costed_items(data.get('edges'), 'edges')
    instance = NcssInstance.build(n, edges, labels=parse_labels(data))
    validate_ncss(instance)
    return instance


def serialize_ncss(instance):
    doc = {
        'kind': 'ncss',
        'n': instance.n,
        'edges': serialize_costed_items(instance.edges),
    }
    if instance.labels:
        doc['labels'] = list(instance.labels)
    return doc
