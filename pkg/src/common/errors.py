# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
from typing import List, Optional


class HomologyError(ValueError):
    """Base class of every error raised by the homology library."""


class BezoutError(HomologyError):
    pass


class MatrixShapeError(HomologyError):
    pass


class CompletionError(HomologyError):
    pass


class NotSublatticeError(HomologyError):
    pass


class GroupSyntaxError(HomologyError):
    pass


class ProfileError(HomologyError):
    pass


class ExtensionError(HomologyError):
    pass


class CirclesCoincideError(HomologyError):
    pass


class FiniteSubgroupError(HomologyError):
    pass


class FormulaInconsistencyError(HomologyError):
    """A divisibility or identity that a closed formula guarantees failed."""


class ProductActionError(HomologyError):
    pass


class CatalogError(HomologyError):
    pass


class NotACycleError(HomologyError):
    pass


class DeltaMismatchError(HomologyError):
    pass


class InvalidDiagramError(HomologyError):

    def __init__(self, family: str, violations: List[str]):
        self.family = family
        self.violations = list(violations)
        super().__init__(
            f"invalid {family} diagram: {'; '.join(self.violations)}")


class DiagramParseError(HomologyError):
    """
    Raised for unreadable diagram files. Each diagnostic names the line
    and the field (when known) that failed.
    """

    def __init__(self, diagnostics: List[str], path: Optional[str] = None):
        self.diagnostics = list(diagnostics)
        self.path = path
        where = f"{path}: " if path else ""
        super().__init__(where + "; ".join(self.diagnostics))
