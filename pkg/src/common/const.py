# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2024-03-08 by davis.broda@brodagroupsoftware.com
import os

LOGGING_FORMAT = \
    "%(asctime)s - %(module)s:%(funcName)s %(levelname)s - %(message)s"

PROJECT_DIR = os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..", ".."))

DEFAULT_CONFIG = "./config/config.yml"
DEFAULT_ATOMS_FILE = os.path.join(PROJECT_DIR, "config", "atoms.yml")

# Versions the input and result documents
SCHEMA_VERSION = 1

# Largest finite group the brute-force cross-checks will enumerate
ENUMERATION_CUTOFF = 10_000

# Largest number of pairs the I4 image oracle will enumerate
PAIR_ENUMERATION_CUTOFF = 1_000_000

COHOMOLOGY = "cohomology"
HOMOLOGY = "homology"

SWEEP_FAMILIES = ["N7A", "N7B", "N7C", "N7E", "N7H"]

STATUS_OK = "ok"
STATUS_MISMATCH = "mismatch"
STATUS_ERROR = "error"
STATUS_SKIPPED = "skipped"
