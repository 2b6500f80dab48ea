"""
SIL result structures and their translation into TRI pairs.
"""

import copy
import hashlib
import json
import logging
from typing import Any, Dict, List, Sequence

from nltk.featstruct import FeatDict

from . import featstruct
from .errors import MalformedFeatureStructure, MalformedRule
from .models import ChartEdge, SilStructure, SilSyntax, TriPair, TriSet, TrcMappingRule
from .scoring import display_score

logger = logging.getLogger(__name__)

RULE_KEYS = {"pattern", "attr", "value_path"}


def _result_hash(edge: ChartEdge) -> str:
    identity = json.dumps(
        [
            edge.start,
            edge.end,
            list(edge.words),
            edge.category,
            featstruct.canonical_key(edge.constituent.sem),
        ],
        separators=(",", ":"),
    )
    return hashlib.sha1(identity.encode("utf-8")).hexdigest()


def build_sil(edge: ChartEdge) -> SilStructure:
    """SIL structure for a selected result; syn and sem share one id."""
    digest = _result_hash(edge)
    shared_id = "s" + digest[:8]

    sem = edge.constituent.sem
    sem = copy.deepcopy(sem) if featstruct.is_structure(sem) else FeatDict()
    sem["id"] = shared_id

    syn = SilSyntax(
        id=shared_id,
        category=edge.category,
        string=edge.string,
        score=float(display_score(edge.scores.qs)),
    )
    return SilStructure(id="r" + digest[:8], syn=syn, sem=sem)


def sil_to_json(results: Sequence[SilStructure]) -> List[Dict[str, Any]]:
    return [r.to_dict() for r in results]


def _parse_rule(index: int, raw: Any) -> TrcMappingRule:
    if not isinstance(raw, dict):
        raise MalformedRule(index, "rule must be an object")
    if set(raw) != RULE_KEYS:
        raise MalformedRule(index, f"rule needs exactly the keys {sorted(RULE_KEYS)}")
    try:
        pattern = featstruct.structure_from_json(raw["pattern"])
    except MalformedFeatureStructure as e:
        raise MalformedRule(index, f"bad pattern: {e}")
    attr = raw["attr"]
    if not isinstance(attr, str) or not attr:
        raise MalformedRule(index, "'attr' must be a non-empty string")
    path = raw["value_path"]
    if not isinstance(path, str) or not all(path.split(".")):
        raise MalformedRule(index, f"invalid value_path {path!r}")
    return TrcMappingRule(pattern=pattern, attr=attr, value_path=path)


def load_trc_rules(text: str) -> List[TrcMappingRule]:
    """Read a JSON array of ``{pattern, attr, value_path}`` rules."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedRule(0, f"invalid JSON: {e}")
    if not isinstance(data, list):
        raise MalformedRule(0, "expected a JSON array of rules")
    return [_parse_rule(index, raw) for index, raw in enumerate(data)]


def sil_to_tri(
    results: Sequence[SilStructure], rules: Sequence[TrcMappingRule]
) -> TriSet:
    """PTRI of a result sequence; the first matching rule fires per result."""
    pairs: List[TriPair] = []
    for result in results:
        fired = [rule for rule in rules if featstruct.subsumes(rule.pattern, result.sem)]
        if not fired:
            logger.debug("no TRC rule for %s", result.syn.string)
            continue
        if len(fired) > 1:
            logger.warning(
                "ambiguous TRC rules for %s: %s; using %s",
                result.syn.string,
                ", ".join(rule.attr for rule in fired),
                fired[0].attr,
            )
        rule = fired[0]
        value = featstruct.get_path(result.sem, rule.value_path)
        if not featstruct.is_atom(value):
            logger.warning(
                "TRC rule %s: %s does not resolve to an atom in %s",
                rule.attr,
                rule.value_path,
                result.syn.string,
            )
            continue
        pairs.append(TriPair(rule.attr, value))
    return TriSet(tuple(pairs))
