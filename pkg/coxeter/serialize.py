"""
coxnorm/coxeter/serialize.py
Versioned JSON documents for groups.
"""

import json
import logging
from typing import Union

from coxeter.errors import CoxeterError
from coxeter.group import CoxeterGroup, build_group
from coxeter.spec import CoxeterSpec

logger = logging.getLogger(__name__)

GROUP_SCHEMA = "coxnorm.group/1"


def group_to_dict(group: CoxeterGroup) -> dict:
    """Spec, simple roots as decimal strings and the reduced word of every element id."""
    return {
        'schema': GROUP_SCHEMA,
        'spec': group.spec.to_dict(),
        'simple_roots': group.roots.to_dict()['simple_roots'],
        'elements': [list(group.word(w)) for w in range(group.order)],
    }


def group_from_dict(data: dict) -> CoxeterGroup:
    """
    Rebuild a group from its document and confirm the element ids agree
    with the stored words.
    """
    if data.get('schema') != GROUP_SCHEMA:
        raise CoxeterError(f"Unsupported group document schema: {data.get('schema')}")
    group = build_group(CoxeterSpec.from_dict(data['spec']))
    words = data.get('elements', [])
    if len(words) != group.order:
        raise CoxeterError(f"Document lists {len(words)} elements, group has order {group.order}")
    for w, word in enumerate(words):
        if tuple(word) != group.word(w):
            raise CoxeterError(f"Element id {w} has word {word} in the document but {list(group.word(w))} here")
    return group


def dump_group(group: CoxeterGroup, path: str) -> None:
    with open(path, 'w') as f:
        json.dump(group_to_dict(group), f, indent=2)
    logger.info("Wrote %s group document to %s", group.label, path)


def load_group(source: Union[str, dict]) -> CoxeterGroup:
    if isinstance(source, dict):
        return group_from_dict(source)
    with open(source) as f:
        return group_from_dict(json.load(f))
