"""
Main Instance Parser
Routes to the kind-specific parser based on the document's "kind" field
"""

import hashlib
import json
import logging

from modules.errors import SchemaError, TapCertError
from modules.model.instance import NcssInstance, TapInstance
from modules.parsers.ncss_parser import parse_ncss, serialize_ncss
from modules.parsers.tap_parser import parse_tap, serialize_tap

logger = logging.getLogger(__name__)


def decode_json(raw, what='instance'):
    """Decode bytes/str into a JSON object, reporting the line of a syntax error"""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode('utf-8-sig')
        except UnicodeDecodeError as e:
            raise SchemaError(f"{what} file is not UTF-8: {e}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise SchemaError(f"{what} document must be a JSON object")
    return data


def detect_instance_kind(data):
    """
    Returns the instance kind ("tap" or "ncss") of a decoded document
    """
    kind = data.get('kind')
    if isinstance(kind, str) and kind in get_supported_kinds():
        return kind
    # documents written without a kind are recognised by their fields
    if 'tree_edges' in data:
        return 'tap'
    if 'edges' in data:
        return 'ncss'
    known = ', '.join(get_supported_kinds())
    raise SchemaError(f"unknown instance kind {kind!r}; known: {known}", field='kind')


def parse_instance(raw):
    """
    Parse bytes (or str) into a validated TapInstance or NcssInstance

    Raises SchemaError for malformed documents and ValidationError for
    well-formed documents that violate an instance invariant.
    """
    data = decode_json(raw)
    kind = detect_instance_kind(data)
    if kind == 'tap':
        return parse_tap(data)
    return parse_ncss(data)


def instance_document(instance):
    if isinstance(instance, TapInstance):
        return serialize_tap(instance)
    if isinstance(instance, NcssInstance):
        return serialize_ncss(instance)
    raise TypeError(f"not an instance: {type(instance).__name__}")


def serialize_instance(instance):
    """Canonical UTF-8 JSON bytes; parse_instance(serialize_instance(x)) == x"""
    doc = instance_document(instance)
    return (json.dumps(doc, sort_keys=True, indent=1) + '\n').encode('utf-8')


def instance_digest(instance):
    """SHA-256 hex digest of the canonical serialization"""
    return hashlib.sha256(serialize_instance(instance)).hexdigest()


def load_instance(path):
    """
    Read and parse an instance file

    Returns:
        instance, error (exactly one of them is None; the error is a
        TapCertError whose exit_code the CLI reports)
    """
    try:
        with open(path, 'rb') as f:
            instance = parse_instance(f.read())
    except OSError as e:
        return None, SchemaError(f"cannot read {path}: {e.strerror}")
    except TapCertError as e:
        logger.info("rejected %s: %s", path, e)
        return None, e
    return instance, None


def save_instance(instance, path):
    with open(path, 'wb') as f:
        f.write(serialize_instance(instance))
    logger.info("wrote %s (%s)", path, instance_digest(instance)[:12])


def get_supported_kinds():
    """
    Returns the supported instance kinds
    """
    return {
        'tap': '2NC-TAP (spanning tree of cost 0 plus costed links)',
        'ncss': 'min-cost 2NCSS (general 2-node-connected costed graph)',
    }
