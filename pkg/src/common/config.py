# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
import logging
import os
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

from common import const

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)


class SweepConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    workers: int = Field(1, ge=1, description="Worker processes for sweeps")
    max_slope: int = Field(
        5, ge=1, alias="max-slope",
        description="Bound on |p|, |q| (and |m| for N7H) in sweeps")
    max_order: int = Field(
        4, ge=1, alias="max-order",
        description="Bound on the finite orders b- and b+ in sweeps")
    max_mn: int = Field(
        3, ge=1, alias="max-mn",
        description="Bound on |m|, |n| of the N7E normal circle")
    max_q: int = Field(
        9, ge=1, alias="max-q", description="Bound on |q| for N7B and N7C")
    max_n: int = Field(
        4, ge=1, alias="max-n",
        description="Bound on n (N7C), n-/4 (N7B) and n+- (N7H)")


class HomologyConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    enumeration_cutoff: int = Field(
        const.ENUMERATION_CUTOFF, ge=1, alias="enumeration-cutoff",
        description="Largest finite group enumerated by cross-checks")
    pair_enumeration_cutoff: int = Field(
        const.PAIR_ENUMERATION_CUTOFF, ge=1, alias="pair-enumeration-cutoff",
        description="Largest number of pairs the I4 oracle enumerates")
    atoms_file: str = Field(
        const.DEFAULT_ATOMS_FILE, alias="atoms-file",
        description="Data file holding the catalog atoms")
    output_format: Literal["text", "json"] = Field(
        "text", alias="output-format", description="Default report format")
    sweep: SweepConfig = Field(
        default_factory=SweepConfig, description="Sweep defaults")


def load_configuration(path: Optional[str] = None) -> HomologyConfig:
    """
    Load the YAML configuration file. A missing file yields the
    built-in defaults.

    :param path: configuration file, defaults to ./config/config.yml
    :return: validated configuration
    :raises ValueError: if the file does not validate
    """
    path = path or const.DEFAULT_CONFIG
    if not os.path.exists(path):
        logger.warning(f"configuration file {path} not found, using defaults")
        return HomologyConfig()

    logger.info(f"using config file {path}")
    with open(path, 'r') as file:
        configuration: Dict[str, Any] = yaml.safe_load(file) or {}

    logger.info(f"Using configuration:{configuration}")
    return HomologyConfig.model_validate(configuration)
