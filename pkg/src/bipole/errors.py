"""Exception hierarchy for the bipole package.

Every error raised by the library derives from :class:`BipoleError`, so
callers can catch one type at the CLI boundary.  Construction errors carry
the offending labels where that helps diagnosis.
"""

from __future__ import annotations


class BipoleError(Exception):
    """Base class for all bipole errors."""


class DuplicateLabel(BipoleError):
    """A label occurs twice inside a single cell."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"duplicate labels within a cell: {', '.join(self.labels)}")


class NoPoles(BipoleError):
    """A cell was declared without any negative pole."""

    def __init__(self):
        super().__init__("a cell needs at least one pole")


class LabelClash(BipoleError):
    """Composition would make a label occur twice on the same side."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"label clash on: {', '.join(self.labels)}")


class NotPending(BipoleError):
    """A restriction mentioned a label that is not a pending port."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"not pending ports: {', '.join(self.labels)}")


class NotClosed(BipoleError):
    """A closed-module operation was applied to a module with a border."""

    def __init__(self, pending):
        self.pending = tuple(pending)
        super().__init__(f"module is not closed, pending: {', '.join(self.pending)}")


class InvalidModule(BipoleError):
    """A module value violates the structural invariants."""


class StaleRedex(BipoleError):
    """A recorded rewrite step no longer applies to the given module."""


class NotNormalForm(BipoleError):
    """Classification was asked for a graph that still has a redex."""


class NotOCorrect(BipoleError):
    """A session was opened over a module that is not o-correct."""


class StaleCandidate(BipoleError):
    """A commit used a candidate from an older session generation."""


class NotAccepted(BipoleError):
    """A commit used a candidate whose verdict was a rejection."""


class UnknownName(BipoleError):
    """A composition chain referenced an undeclared cell name."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown name: {name}")


class ParseError(BipoleError):
    """Syntax error in the module source format."""

    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")
