"""
Attribute-value matrices (AVMs) with unification.

Feature structures are nltk ``FeatDict`` objects; variables are nltk
``Variable`` objects whose names start with ``?``. Atoms are lowercase
tokens or integers, and a token never unifies with an integer.

All functions treat their inputs as immutable values and return new
structures.
"""

import copy
import json
from typing import Any, Dict, Mapping, Optional, Set, Union

import networkx as nx
from nltk.featstruct import FeatDict, FeatStruct, find_variables
from nltk.featstruct import substitute_bindings as _substitute_bindings
from nltk.featstruct import unify as _unify
from nltk.sem.logic import Variable

from .errors import CyclicBinding, MalformedFeatureStructure

Atom = Union[str, int]
Value = Union[Atom, FeatStruct, Variable]

VARIABLE_PREFIX = "?"


def is_structure(value: Any) -> bool:
    """True for a (possibly empty) feature structure."""
    return isinstance(value, FeatStruct)


def is_variable(value: Any) -> bool:
    return isinstance(value, Variable)


def variable(name: str) -> Variable:
    """Create a variable, adding the ``?`` prefix if missing."""
    if not name.startswith(VARIABLE_PREFIX):
        name = VARIABLE_PREFIX + name
    return Variable(name)


def empty() -> FeatDict:
    return FeatDict()


def from_json(obj: Any) -> Value:
    """Read the JSON AVM form: objects are structures, ``"?x"`` strings are
    variables, other strings and integers are atoms."""
    if isinstance(obj, bool) or obj is None:
        raise MalformedFeatureStructure(f"unsupported AVM value {obj!r}")
    if isinstance(obj, dict):
        fs = FeatDict()
        for key, val in obj.items():
            if not isinstance(key, str) or not key:
                raise MalformedFeatureStructure(f"invalid attribute {key!r}")
            if key == "id":
                # id is reserved for SIL co-indexation
                raise MalformedFeatureStructure("attribute 'id' is reserved")
            fs[key] = from_json(val)
        return fs
    if isinstance(obj, str):
        if not obj:
            raise MalformedFeatureStructure("empty atom")
        if obj.startswith(VARIABLE_PREFIX):
            if len(obj) == 1:
                raise MalformedFeatureStructure("variable without a name")
            return Variable(obj)
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float) and obj.is_integer():
        return int(obj)
    raise MalformedFeatureStructure(f"unsupported AVM value {obj!r}")


def structure_from_json(obj: Any) -> FeatDict:
    """Like from_json, but the top level must be an object."""
    if not isinstance(obj, dict):
        raise MalformedFeatureStructure(f"expected a JSON object, got {obj!r}")
    return from_json(obj)


def to_json(value: Value) -> Any:
    """Inverse of from_json."""
    if isinstance(value, FeatStruct):
        return {key: to_json(val) for key, val in value.items()}
    if isinstance(value, Variable):
        return value.name
    return value


def canonical_key(value: Value) -> str:
    """Deterministic structural key; equal keys mean structurally equal values."""
    return json.dumps(to_json(value), sort_keys=True, separators=(",", ":"))


def structurally_equal(a: Value, b: Value) -> bool:
    return canonical_key(a) == canonical_key(b)


def variables(value: Value) -> Set[Variable]:
    if isinstance(value, Variable):
        return {value}
    if isinstance(value, FeatStruct):
        return set(find_variables(value))
    return set()


def unify(a: FeatStruct, b: FeatStruct) -> Optional[FeatStruct]:
    """Most general structure subsumed by both, or None on a clash.

    Variables of ``b`` that share a name with variables of ``a`` are renamed
    apart first; same-named variables inside one structure stay shared.
    """
    if not (isinstance(a, FeatStruct) and isinstance(b, FeatStruct)):
        return None
    return _unify(a, b, rename_vars=True)


def subsumes(general: FeatStruct, specific: FeatStruct) -> bool:
    """True iff every path and atom of ``general`` is compatible with
    ``specific`` and adds nothing to it.

    Each variable of ``general`` must stand for one value of ``specific``
    wherever it occurs. Variables of ``specific`` are matched like atoms,
    so only a variable of ``general`` covers them.
    """
    if not (isinstance(general, FeatStruct) and isinstance(specific, FeatStruct)):
        return False
    return _match(general, specific, {})


def _match(general: Value, specific: Value, bindings: Dict[Variable, str]) -> bool:
    if isinstance(general, Variable):
        key = canonical_key(specific)
        return bindings.setdefault(general, key) == key
    if isinstance(general, FeatStruct):
        if not isinstance(specific, FeatStruct):
            return False
        return all(
            attribute in specific and _match(val, specific[attribute], bindings)
            for attribute, val in general.items()
        )
    if isinstance(specific, (FeatStruct, Variable)):
        return False
    return type(general) is type(specific) and general == specific


def _binding_graph(bindings: Mapping[Variable, Value]) -> nx.DiGraph:
    graph = nx.DiGraph()
    for var, val in bindings.items():
        graph.add_node(var)
        for dependency in variables(val):
            graph.add_edge(var, dependency)
    return graph


def _normalize_bindings(bindings: Mapping[Any, Value]) -> Dict[Variable, Value]:
    normalized = {}
    for key, val in bindings.items():
        var = key if isinstance(key, Variable) else variable(str(key))
        normalized[var] = val
    return normalized


def substitute(value: Value, bindings: Mapping[Any, Value]) -> Value:
    """Replace every bound variable in ``value``; unbound ones stay.

    Raises CyclicBinding if the bindings refer back to themselves.
    """
    bound = _normalize_bindings(bindings)
    graph = _binding_graph(bound)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        names = " -> ".join(str(u) for u, _ in cycle)
        raise CyclicBinding(f"cyclic variable bindings: {names}")

    # resolve chains first so every bound value is variable-free w.r.t. bound
    resolved: Dict[Variable, Value] = {}
    for var in reversed(list(nx.topological_sort(graph))):
        if var not in bound:
            continue
        val = copy.deepcopy(bound[var])
        if isinstance(val, Variable):
            resolved[var] = resolved.get(val, val)
        elif isinstance(val, FeatStruct):
            resolved[var] = _substitute_bindings(val, resolved)
        else:
            resolved[var] = val

    if isinstance(value, Variable):
        return copy.deepcopy(resolved.get(value, value))
    if isinstance(value, FeatStruct):
        return _substitute_bindings(value, resolved)
    return value


def get_path(value: Value, path: str) -> Optional[Value]:
    """Follow a dotted attribute path such as ``thehour.value``."""
    current: Any = value
    for attribute in path.split("."):
        if not isinstance(current, FeatStruct) or attribute not in current:
            return None
        current = current[attribute]
    return current


def is_atom(value: Any) -> bool:
    return isinstance(value, (str, int)) and not isinstance(value, bool)
