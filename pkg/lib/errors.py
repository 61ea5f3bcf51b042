"""Exception hierarchy for graph construction, coloring and the solver.

Library code raises these; only the CLI maps them to exit codes.
"""

from __future__ import annotations

from typing import Any


class LinsplitError(Exception):
    """Base class for every error raised by the lib package."""


# ---------------------------------------------------------------------------
# Graph construction and mutation
# ---------------------------------------------------------------------------

class NotPlanar(LinsplitError):
    """The edge set admits no crossing-free embedding."""


class InconsistentRotation(LinsplitError):
    """A supplied rotation system disagrees with the edges or is not planar."""


class UnknownVertex(LinsplitError):
    def __init__(self, vertex: int):
        super().__init__(f"unknown vertex {vertex}")
        self.vertex = vertex


class NotOnFace(LinsplitError):
    def __init__(self, vertex: int, face: int):
        super().__init__(f"vertex {vertex} is not on face {face}")
        self.vertex = vertex
        self.face = face


class AlreadyAdjacent(LinsplitError):
    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} are already adjacent")
        self.u = u
        self.v = v


class BadParameter(LinsplitError):
    """A generator or query parameter is out of range."""


class ReconstructionUnavailable(LinsplitError):
    """A compiled-in gadget failed its own certification."""


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------

class UncoloredVertex(LinsplitError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no color")
        self.vertex = vertex


class ListTooSmall(LinsplitError):
    def __init__(self, vertex: int, size: int = 0):
        super().__init__(f"vertex {vertex} has a list of size {size}, need at least 2")
        self.vertex = vertex
        self.size = size


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

class PreconditionViolated(LinsplitError):
    def __init__(self, lemma: str, message: str):
        super().__init__(f"[{lemma}] {message}")
        self.lemma = lemma


class GirthTooSmall(LinsplitError):
    def __init__(self, girth: int):
        super().__init__(f"girth {girth} is below 6")
        self.girth = girth


class AssumptionViolated(LinsplitError):
    """A structural claim the solver relies on did not hold on this instance."""

    def __init__(self, lemma: str, witness: Any = None, message: str = ""):
        text = f"[{lemma}] {message}" if message else f"[{lemma}] assumption violated"
        super().__init__(text)
        self.lemma = lemma
        self.witness = witness

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "message": str(self), "witness": _jsonable(self.witness)}


class RuleDeadlock(LinsplitError):
    def __init__(self, uncolored: list[int]):
        super().__init__(f"no coloring rule applies, uncolored: {uncolored}")
        self.uncolored = uncolored


class BudgetExceeded(LinsplitError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exceeded after {nodes:,} nodes")
        self.nodes = nodes


class ParseError(LinsplitError):
    """Input JSON is malformed or does not follow the format."""


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
