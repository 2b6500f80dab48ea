"""
Context-dependent semantic predictions.

A prediction list holds the semantic structures a dialogue manager expects
in the next user turn. Edges whose semantics unify with any of them are
boosted during scoring and seed the island parser first.
"""

import json
import logging
from typing import Any, Dict, List, Mapping, Sequence

from . import featstruct
from .errors import MalformedFeatureStructure, MalformedPrediction
from .featstruct import Value
from .models import ChartEdge, PredictionList

logger = logging.getLogger(__name__)

NO_CONTEXT = "none"


def empty_predictions() -> PredictionList:
    return PredictionList(items=(), label=NO_CONTEXT)


def _parse_items(label: str, items: Any) -> PredictionList:
    if not isinstance(items, list):
        raise MalformedPrediction(f"{label}: 'items' must be a list")
    parsed = []
    for index, item in enumerate(items):
        try:
            parsed.append(featstruct.structure_from_json(item))
        except MalformedFeatureStructure as e:
            raise MalformedPrediction(f"{label}: item {index}: {e}")
    return PredictionList(items=tuple(parsed), label=label)


def load_predictions(text: str) -> PredictionList:
    """Read ``{"label": ..., "items": [AVM, ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedPrediction(f"invalid JSON: {e}")
    if not isinstance(data, dict):
        raise MalformedPrediction("expected a JSON object with 'label' and 'items'")
    unknown = set(data) - {"label", "items"}
    if unknown:
        raise MalformedPrediction(f"unknown keys {sorted(unknown)}")
    label = data.get("label", NO_CONTEXT)
    if not isinstance(label, str) or not label:
        raise MalformedPrediction("'label' must be a non-empty string")
    return _parse_items(label, data.get("items", []))


def contexts_from_mapping(data: Any) -> Dict[str, PredictionList]:
    """Build the label → predictions table of a contexts file.

    The label ``none`` always maps to the empty list.
    """
    if not isinstance(data, dict):
        raise MalformedPrediction("contexts must be an object mapping labels to lists")
    contexts = {NO_CONTEXT: empty_predictions()}
    for label, items in data.items():
        if not isinstance(label, str) or not label:
            raise MalformedPrediction(f"invalid context label {label!r}")
        if label == NO_CONTEXT:
            if items:
                raise MalformedPrediction("context 'none' is reserved for the empty list")
            continue
        contexts[label] = _parse_items(label, items)
    logger.debug("loaded %d dialogue contexts", len(contexts))
    return contexts


def prediction_to_json(preds: PredictionList) -> Mapping[str, Any]:
    return {"label": preds.label, "items": [featstruct.to_json(p) for p in preds.items]}


def matches(sem: Value, preds: PredictionList) -> bool:
    """True iff ``sem`` unifies with at least one prediction."""
    if not featstruct.is_structure(sem):
        return False
    return any(featstruct.unify(sem, p) is not None for p in preds.items)


def seed_rank(edges: Sequence[ChartEdge], preds: PredictionList) -> List[ChartEdge]:
    """Matching edges first, each partition by ascending QS (stable)."""
    return sorted(
        edges,
        key=lambda e: (0 if matches(e.constituent.sem, preds) else 1, e.scores.qs),
    )
