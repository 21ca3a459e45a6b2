# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Group diagram parameters, one record per family, and the reader for
diagram files.

A diagram file is YAML (so JSON works as well) holding a single
diagram, a list of diagrams, or a mapping
``{schema: 1, diagrams: [...]}``.
"""
import logging
import os
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, \
    Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, \
    ValidationError

from cohomology.torus import CircleWithFinite
from common import const
from common.errors import DiagramParseError

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)


class _Diagram(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    def parameters(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"family"})

    def describe(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters().items()
                          if v is not None)
        return f"{self.family} {params}".strip()


class _TwoCircles(_Diagram):
    p_minus: int = Field(description="Slope of K-0, first coordinate")
    q_minus: int = Field(description="Slope of K-0, second coordinate")
    b_minus: int = Field(description="Order of H- = H n K-0")
    p_plus: int = Field(description="Slope of K+0, first coordinate")
    q_plus: int = Field(description="Slope of K+0, second coordinate")
    b_plus: int = Field(description="Order of H+ = H n K+0")
    h: Optional[int] = Field(
        None, description="Order of H; derived, checked when given")

    @property
    def minus(self) -> CircleWithFinite:
        return CircleWithFinite(p=self.p_minus, q=self.q_minus,
                                b=self.b_minus)

    @property
    def plus(self) -> CircleWithFinite:
        return CircleWithFinite(p=self.p_plus, q=self.q_plus, b=self.b_plus)

    @property
    def equal_circles(self) -> bool:
        return (self.p_minus, self.q_minus) in \
            ((self.p_plus, self.q_plus), (-self.p_plus, -self.q_plus))


class N7ADiagram(_TwoCircles):
    family: Literal["N7A"] = "N7A"


class N7BDiagram(_Diagram):
    family: Literal["N7B"] = "N7B"
    p: int
    q: int
    n_minus: int = Field(description="Order of H- inside K-0")
    n_plus: int = Field(description="Order of H+ inside K+0, 1 or 2")


class N7CDiagram(_Diagram):
    family: Literal["N7C"] = "N7C"
    p: int
    q: int
    n: int


class N7DDiagram(_Diagram):
    family: Literal["N7D"] = "N7D"
    m: int
    n: int
    mu: int
    nu: int
    p: int
    a: int


class N7EDiagram(_TwoCircles):
    family: Literal["N7E"] = "N7E"
    m: int = Field(description="Normal circle slope, first coordinate")
    n: int = Field(description="Normal circle slope, second coordinate")
    mu: int = Field(description="Complement with m nu - n mu = 1")
    nu: int = Field(description="Complement with m nu - n mu = 1")


class N7FDiagram(_Diagram):
    family: Literal["N7F"] = "N7F"
    p: int
    a: int
    n: int


class N7GDiagram(_Diagram):
    family: Literal["N7G"] = "N7G"


class N7HDiagram(_Diagram):
    family: Literal["N7H"] = "N7H"
    m_minus: int
    n_minus: int
    m_plus: int
    n_plus: int
    b_minus: int = Field(description="Order of the finite part of K-")
    b_plus: int = Field(description="Order of the finite part of K+")
    h: Optional[int] = Field(
        None, description="Order of the generated finite group, checked")

    @property
    def minus(self) -> CircleWithFinite:
        return CircleWithFinite(p=self.m_minus, q=self.n_minus,
                                b=self.b_minus)

    @property
    def plus(self) -> CircleWithFinite:
        return CircleWithFinite(p=self.m_plus, q=self.n_plus, b=self.b_plus)


class N7IDiagram(_Diagram):
    family: Literal["N7I"] = "N7I"


class BrieskornDiagram(_Diagram):
    family: Literal["brieskorn"] = "brieskorn"
    d: int


class PFamilyDiagram(_Diagram):
    family: Literal["P7A", "P7B", "P7C", "P7D"]
    r: int = Field(description="The integer r, supplied externally")
    variant: Literal["plain", "Z2"] = "plain"


class N6DDiagram(_Diagram):
    family: Literal["N6D"] = "N6D"
    p: int


class SpaceDiagram(_Diagram):
    family: Literal["space"] = "space"
    name: str = Field(description="Catalog atom or product like S2xS5")


FamilyDiagram = Annotated[
    Union[N7ADiagram, N7BDiagram, N7CDiagram, N7DDiagram, N7EDiagram,
          N7FDiagram, N7GDiagram, N7HDiagram, N7IDiagram, BrieskornDiagram,
          PFamilyDiagram, N6DDiagram, SpaceDiagram],
    Field(discriminator="family")]

DIAGRAM_ADAPTER = TypeAdapter(FamilyDiagram)

_FAMILY_TAGS = {"N7A", "N7B", "N7C", "N7D", "N7E", "N7F", "N7G", "N7H",
                "N7I", "brieskorn", "P7A", "P7B", "P7C", "P7D", "N6D",
                "space"}


def parse_diagram(data: Dict[str, Any]) -> FamilyDiagram:
    """
    :raises pydantic.ValidationError: on unknown families, unknown or
        missing fields
    """
    return DIAGRAM_ADAPTER.validate_python(data)


class LocatedDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(description="Position in the file, from 1")
    line: int = Field(description="Line where the diagram starts")
    diagram: FamilyDiagram


def _entries(root: yaml.Node, data: Any) -> List[Tuple[Any, int]]:
    """Pairs each diagram with its starting line."""
    if isinstance(data, dict) and "diagrams" in data:
        schema = data.get("schema", const.SCHEMA_VERSION)
        if schema != const.SCHEMA_VERSION:
            raise DiagramParseError(
                [f"line {root.start_mark.line + 1}: field schema: "
                 f"unsupported schema version {schema}"])
        extra = set(data) - {"schema", "diagrams"}
        if extra:
            raise DiagramParseError(
                [f"line {root.start_mark.line + 1}: unknown top level "
                 f"fields {sorted(extra)}"])
        node = next(v for k, v in root.value if k.value == "diagrams")
        data = data["diagrams"]
        if not isinstance(data, list):
            raise DiagramParseError(
                [f"line {node.start_mark.line + 1}: field diagrams: "
                 f"expected a list"])
        return [(item, n.start_mark.line + 1)
                for item, n in zip(data, node.value)]
    if isinstance(data, list):
        return [(item, n.start_mark.line + 1)
                for item, n in zip(data, root.value)]
    if isinstance(data, dict):
        schema = data.pop("schema", const.SCHEMA_VERSION)
        if schema != const.SCHEMA_VERSION:
            raise DiagramParseError(
                [f"line {root.start_mark.line + 1}: field schema: "
                 f"unsupported schema version {schema}"])
        return [(data, root.start_mark.line + 1)]
    raise DiagramParseError(
        [f"line {root.start_mark.line + 1}: expected a diagram, a list "
         f"of diagrams or a diagrams document"])


def parse_diagram_text(text: str,
                       path: Optional[str] = None) -> List[LocatedDiagram]:
    """
    Parse every diagram of a document. All problems are collected before
    raising, each prefixed by its line and field.

    :raises DiagramParseError: when the text is not a valid document
    """
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = f"line {mark.line + 1}: " if mark is not None else ""
        raise DiagramParseError([f"{line}{e}"], path) from e
    if root is None:
        raise DiagramParseError(["empty document"], path)

    try:
        entries = _entries(root, data)
    except DiagramParseError as e:
        raise DiagramParseError(e.diagnostics, path) from e

    located = []
    diagnostics = []
    for index, (item, line) in enumerate(entries, start=1):
        try:
            diagram = parse_diagram(item)
        except ValidationError as e:
            for error in e.errors():
                field = ".".join(str(part) for part in error["loc"]
                                 if part not in _FAMILY_TAGS)
                field = field or "family"
                diagnostics.append(
                    f"line {line}: diagram {index}: field {field}: "
                    f"{error['msg']}")
            continue
        located.append(LocatedDiagram(index=index, line=line,
                                      diagram=diagram))

    if diagnostics:
        raise DiagramParseError(diagnostics, path)
    logger.info(f"parsed {len(located)} diagrams")
    return located


def parse_diagram_file(path: str) -> List[LocatedDiagram]:
    if not os.path.exists(path):
        raise DiagramParseError(["file not found"], path)
    logger.info(f"reading diagrams from {path}")
    with open(path, 'r') as file:
        return parse_diagram_text(file.read(), path)

