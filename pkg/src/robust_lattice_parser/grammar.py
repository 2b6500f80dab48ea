"""
Lexicalized categorial grammar.

Every lexical entry carries a major category, an ordered valence list of
argument slots and a semantic recipe. Composition is binary function
application: a functor consumes the saturated argument named by its first
remaining slot and substitutes the argument's semantics for the slot's
variable in its own recipe.
"""

import json
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from nltk.sem.logic import Variable

from . import featstruct
from .errors import (
    DanglingSemVar,
    MalformedEntry,
    MalformedFeatureStructure,
    UnknownDirection,
)
from .featstruct import Value

logger = logging.getLogger(__name__)

ENTRY_KEYS = {"form", "cat", "valence", "sem"}
SLOT_KEYS = {"direction", "cat", "sem_var"}


class Direction(Enum):
    """Side on which a functor expects its argument."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Category:
    major: str

    def __post_init__(self):
        if not self.major:
            raise ValueError("category major must be non-empty")

    def __str__(self) -> str:
        return self.major


@dataclass(frozen=True)
class ArgSlot:
    """One argument a functor still needs."""

    direction: Direction
    cat: str
    sem_var: Variable

    def __str__(self) -> str:
        arrow = "\\" if self.direction == Direction.LEFT else "/"
        return f"{arrow}{self.cat}"


@dataclass(frozen=True, eq=False)
class LexicalEntry:
    form: str
    cat: Category
    valence: Tuple[ArgSlot, ...]
    sem: Value


@dataclass(frozen=True, eq=False)
class Constituent:
    """A lexical or composed grammatical unit."""

    cat: Category
    remaining_valence: Tuple[ArgSlot, ...]
    sem: Value
    consumed: int
    total_valence: int

    def __post_init__(self):
        if self.consumed + len(self.remaining_valence) != self.total_valence:
            raise ValueError(
                f"consumed ({self.consumed}) + remaining "
                f"({len(self.remaining_valence)}) != total ({self.total_valence})"
            )

    @property
    def saturated(self) -> bool:
        return not self.remaining_valence

    def signature(self) -> str:
        """Category with remaining slots, e.g. ``prep/np``."""
        return self.cat.major + "".join(str(slot) for slot in self.remaining_valence)


class Lexicon:
    """Entries indexed by surface form; a form may have several homonyms."""

    def __init__(self, entries: Iterable[LexicalEntry]):
        self._entries: Tuple[LexicalEntry, ...] = tuple(entries)
        by_form: Dict[str, List[LexicalEntry]] = defaultdict(list)
        for entry in self._entries:
            by_form[entry.form].append(entry)
        self._by_form = {form: tuple(items) for form, items in by_form.items()}

    def lookup(self, word: str) -> Tuple[LexicalEntry, ...]:
        return self._by_form.get(word, ())

    @property
    def forms(self) -> List[str]:
        return sorted(self._by_form)

    def __contains__(self, word: object) -> bool:
        return word in self._by_form

    def __iter__(self) -> Iterator[LexicalEntry]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def _parse_slot(index: int, raw: Any) -> ArgSlot:
    if not isinstance(raw, dict):
        raise MalformedEntry(index, f"valence slot must be an object, got {raw!r}")
    unknown = set(raw) - SLOT_KEYS
    if unknown:
        raise MalformedEntry(index, f"unknown slot keys {sorted(unknown)}")
    try:
        direction = Direction(raw.get("direction"))
    except ValueError:
        raise UnknownDirection(
            index, f"direction must be 'left' or 'right', got {raw.get('direction')!r}"
        )
    cat = raw.get("cat")
    if not isinstance(cat, str) or not cat:
        raise MalformedEntry(index, "valence slot needs a non-empty 'cat'")
    sem_var = raw.get("sem_var")
    if not isinstance(sem_var, str) or not sem_var.strip("?"):
        raise MalformedEntry(index, "valence slot needs a 'sem_var' name")
    return ArgSlot(direction=direction, cat=cat, sem_var=featstruct.variable(sem_var))


def _parse_entry(index: int, raw: Any) -> LexicalEntry:
    if not isinstance(raw, dict):
        raise MalformedEntry(index, "entry must be an object")
    unknown = set(raw) - ENTRY_KEYS
    if unknown:
        raise MalformedEntry(index, f"unknown keys {sorted(unknown)}")

    form = raw.get("form")
    if not isinstance(form, str) or not form or form != form.lower():
        raise MalformedEntry(index, f"'form' must be a lowercase token, got {form!r}")
    if any(ch.isspace() for ch in form):
        raise MalformedEntry(index, f"'form' contains whitespace: {form!r}")
    cat = raw.get("cat")
    if not isinstance(cat, str) or not cat:
        raise MalformedEntry(index, "'cat' must be a non-empty string")
    if "sem" not in raw:
        raise MalformedEntry(index, "missing 'sem'")

    valence_raw = raw.get("valence", [])
    if not isinstance(valence_raw, list):
        raise MalformedEntry(index, "'valence' must be a list")
    valence = tuple(_parse_slot(index, slot) for slot in valence_raw)

    try:
        sem = featstruct.from_json(raw["sem"])
    except MalformedFeatureStructure as e:
        raise MalformedEntry(index, f"bad 'sem': {e}")

    recipe_vars = featstruct.variables(sem)
    if not valence:
        if not featstruct.is_structure(sem):
            raise MalformedEntry(index, "'sem' of an entry without valence must be an object")
        if recipe_vars:
            raise MalformedEntry(index, "'sem' of an entry without valence must be variable-free")
    else:
        if not (featstruct.is_structure(sem) or featstruct.is_variable(sem)):
            raise MalformedEntry(index, "'sem' must be an object or a variable")
        slot_vars = {slot.sem_var for slot in valence}
        for slot in valence:
            if slot.sem_var not in recipe_vars:
                raise DanglingSemVar(
                    index, f"sem_var {slot.sem_var} does not occur in 'sem'"
                )
        unbound = recipe_vars - slot_vars
        if unbound:
            names = ", ".join(sorted(str(v) for v in unbound))
            raise MalformedEntry(index, f"'sem' variables not bound by a slot: {names}")

    return LexicalEntry(form=form, cat=Category(cat), valence=valence, sem=sem)


def load_lexicon(text: str) -> List[LexicalEntry]:
    """Read a JSON array of ``{form, cat, valence?, sem}`` entries."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedEntry(None, f"invalid JSON: {e}")
    if not isinstance(data, list):
        raise MalformedEntry(None, "expected a JSON array of entries")

    entries = [_parse_entry(index, raw) for index, raw in enumerate(data)]
    logger.debug("loaded %d lexical entries", len(entries))
    return entries


def lexical_constituent(entry: LexicalEntry) -> Constituent:
    return Constituent(
        cat=entry.cat,
        remaining_valence=entry.valence,
        sem=entry.sem,
        consumed=0,
        total_valence=len(entry.valence),
    )


def apply(
    functor: Constituent, argument: Constituent, side: Direction
) -> Optional[Constituent]:
    """Function application; None when the pair does not combine.

    ``side`` is where the argument stands relative to the functor.
    """
    if functor.saturated:
        return None
    slot = functor.remaining_valence[0]
    if slot.direction != side:
        return None
    if not argument.saturated or argument.cat.major != slot.cat:
        return None

    sem = featstruct.substitute(functor.sem, {slot.sem_var: argument.sem})
    return Constituent(
        cat=functor.cat,
        remaining_valence=functor.remaining_valence[1:],
        sem=sem,
        consumed=functor.consumed + 1,
        total_valence=functor.total_valence,
    )
