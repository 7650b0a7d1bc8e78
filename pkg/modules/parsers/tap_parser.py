"""
2NC-TAP Instance Parser
Handles the "tap" kind of the JSON instance format
"""

from modules.errors import SchemaError
from modules.model.instance import Link, TapInstance, validate_tap
from modules.model.rationals import fmt, to_cost


def _node(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"node id must be an integer, got {value!r}", field=field)
    return value


def parse_costed_items(items, field):
    """Parse a list of {"u", "v", "cost"[, "id"]} objects into Links"""
    if not isinstance(items, list):
        raise SchemaError("expected a list", field=field)
    parsed = []
    for i, item in enumerate(items):
        where = f"{field}[{i}]"
        if not isinstance(item, dict):
            raise SchemaError("expected an object with u, v, cost", field=where)
        missing = [key for key in ('u', 'v', 'cost') if key not in item]
        if missing:
            raise SchemaError(f"missing {', '.join(missing)}", field=where)
        u = _node(item['u'], f"{where}.u")
        v = _node(item['v'], f"{where}.v")
        cost = to_cost(item['cost'], field=f"{where}.cost")
        link_id = _node(item.get('id', i), f"{where}.id")
        parsed.append(Link(min(u, v), max(u, v), cost, link_id))
    return parsed


def parse_labels(data):
    labels = data.get('labels', [])
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SchemaError("expected a list of strings", field='labels')
    return labels


def serialize_costed_items(items):
    out = []
    for i, item in enumerate(items):
        record = {'u': item.u, 'v': item.v, 'cost': fmt(item.cost)}
        if item.link_id != i:
            record['id'] = item.link_id
        out.append(record)
    return out


def parse_tap(data):
    """
    Parse a decoded "tap" document

    Expected fields:
    kind, n, tree_edges, links, and optionally target ("2nc"/"2ec") and labels
    """
    n = _node(data.get('n'), 'n')
    tree_raw = data.get('tree_edges')
    if not isinstance(tree_raw, list):
        raise SchemaError("expected a list of [u, v] pairs", field='tree_edges')
    tree = []
    for i, pair in enumerate(tree_raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError("expected a [u, v] pair", field=f"tree_edges[{i}]")
        tree.append(tuple(_node(x, f"tree_edges[{i}]") for x in pair))
    links = parse_costed_items(data.get('links', []), 'links')
    target = data.get('target', '2nc')
    labels = parse_labels(data)

    instance = TapInstance.build(n, tree, links, target=target, labels=labels)
    validate_tap(instance)
    return instance


def serialize_tap(instance):
    doc = {
        'kind': 'tap',
        'n': instance.n,
        'tree_edges': [list(e) for e in instance.tree_edges],
        'links': serialize_costed_items(instance.links),
    }
    if instance.target != '2nc':
        doc['target'] = instance.target
    if instance.labels:
        doc['labels'] = list(instance.labels)
    return doc
