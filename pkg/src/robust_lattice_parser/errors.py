"""
Exception hierarchy for the lattice parser.

Input problems (files, lexicon, graph, config) derive from
InputValidationError and map to CLI exit code 2; everything else derived
from LatticeParserError is a runtime failure (exit code 3).
"""

from typing import Any, Optional


class LatticeParserError(Exception):
    """Base class for all errors raised by this package."""


class InputValidationError(LatticeParserError, ValueError):
    """An input file or value failed validation."""


class MalformedLine(InputValidationError):
    """A word graph line does not match `[<from> <word> <score> <to>]`."""

    def __init__(self, line_number: int, line: str, reason: str = ""):
        self.line_number = line_number
        self.line = line
        detail = f": {reason}" if reason else ""
        super().__init__(f"line {line_number}: malformed edge {line!r}{detail}")


class EmptyGraph(InputValidationError):
    """The graph text contains no edges."""

    def __init__(self):
        super().__init__("word graph contains no edges")


class GraphValidationFailure(InputValidationError):
    """The edges do not form a valid word graph."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class MalformedFeatureStructure(InputValidationError):
    """A JSON value cannot be read as an attribute-value matrix."""


class MalformedEntry(InputValidationError):
    """A lexicon entry is malformed (index None: the file as a whole)."""

    def __init__(self, index: Optional[int], message: str):
        self.index = index
        where = f"lexicon entry {index}" if index is not None else "lexicon"
        super().__init__(f"{where}: {message}")


class UnknownDirection(MalformedEntry):
    """A valence slot direction is neither `left` nor `right`."""


class DanglingSemVar(MalformedEntry):
    """A valence slot binds a variable absent from the semantic recipe."""


class MalformedPrediction(InputValidationError):
    """A prediction file is malformed."""


class MalformedRule(InputValidationError):
    """A TRC mapping rule is malformed."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"TRC rule {index}: {message}")


class MalformedAnnotation(InputValidationError):
    """An utterance annotation is malformed."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"annotation {index}: {message}")


class UnknownWord(InputValidationError):
    """A graph word has no lexical entry."""

    def __init__(self, word: str, hypothesis: Any = None):
        self.word = word
        self.hypothesis = hypothesis
        where = f" in edge {hypothesis}" if hypothesis is not None else ""
        super().__init__(f"unknown word {word!r}{where}")


class WordNotInLexicon(InputValidationError):
    """A transcript word has no lexical entry."""

    def __init__(self, word: str, utterance_id: Optional[str] = None):
        self.word = word
        self.utterance_id = utterance_id
        where = f" (utterance {utterance_id})" if utterance_id else ""
        super().__init__(f"transcript word {word!r} is not in the lexicon{where}")


class UnknownContext(InputValidationError):
    """An utterance names a dialogue context with no prediction list."""

    def __init__(self, label: str, utterance_id: Optional[str] = None):
        self.label = label
        self.utterance_id = utterance_id
        where = f" (utterance {utterance_id})" if utterance_id else ""
        super().__init__(f"unknown dialogue context {label!r}{where}")


class CorpusMismatch(InputValidationError):
    """A corpus graph has no annotation or an annotation has no graph."""

    def __init__(self, utterance_id: str, message: str):
        self.utterance_id = utterance_id
        super().__init__(f"utterance {utterance_id}: {message}")


class EmptyCorpus(InputValidationError):
    """The corpus contains no utterances."""

    def __init__(self, where: str = ""):
        super().__init__(f"corpus is empty{': ' + where if where else ''}")


class ConfigError(InputValidationError):
    """A configuration value is unknown or invalid."""


class NoPath(LatticeParserError):
    """No path connects two graph nodes."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"no path from node {i} to node {j}")


class CyclicBinding(LatticeParserError):
    """Variable bindings refer back to themselves."""


class ZeroLength(LatticeParserError):
    """A score was requested for an edge spanning no words."""


class NonPositiveDivisor(LatticeParserError):
    """sc × pr is not positive."""


class CoverageGap(LatticeParserError):
    """No chart edge is adjacent to a node during partial-result selection."""

    def __init__(self, node: int):
        self.node = node
        super().__init__(f"no chart edge is adjacent to node {node}")


class EmptyReference(LatticeParserError):
    """IC is undefined for an empty reference annotation."""

    def __init__(self):
        super().__init__("reference TRI set is empty; IC is undefined")
