# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
import json
import logging
from typing import Any, Dict, List, Optional

from cohomology import catalog, classify, families, oracle, sweep
from cohomology.abgroup import GradedGroups
from cohomology.catalog import SpaceAtom
from cohomology.diagrams import LocatedDiagram, parse_diagram_file
from common import config as configuration
from common import const
from common.errors import CatalogError, DiagramParseError, HomologyError

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)


class CliExecHomology:

    def __init__(self, config: dict):
        """Create CLI"""
        logger.info(f"Using config:{config}")
        self.settings = configuration.load_configuration(
            config.get("configuration"))
        catalog.use_atoms_file(self.settings.atoms_file)

    #####
    # RUN
    #####

    def run(self, input_file: str, check: bool = False) -> Dict[str, Any]:
        """
        Validate and compute every diagram of a file.

        :param input_file: YAML or JSON diagram file
        :param check: also run the oracle checks
        :return: the result document, {schema, results, ok}
        :raises DiagramParseError: when the file does not parse
        """
        located = parse_diagram_file(input_file)
        results = [self._result(item, check) for item in located]
        ok = all(r["valid"] and r["error"] is None and
                 all(c["status"] in (const.STATUS_OK, const.STATUS_SKIPPED)
                     for c in r["checks"])
                 for r in results)
        logger.info(f"computed {len(results)} diagrams, ok={ok}")
        return {"schema": const.SCHEMA_VERSION, "results": results, "ok": ok}

    def _result(self, item: LocatedDiagram, check: bool) -> Dict[str, Any]:
        d = item.diagram
        result: Dict[str, Any] = {
            "index": item.index,
            "line": item.line,
            "diagram": d.model_dump(exclude_none=True),
            "valid": True,
            "violations": [],
            "error": None,
            "cohomology": None,
            "homology": None,
            "extension": None,
            "classification": None,
            "diagnostics": {},
            "checks": [],
        }
        violations = families.validate(d)
        if violations:
            logger.warning(f"{d.describe()} is invalid: {violations}")
            result["valid"] = False
            result["violations"] = violations
            return result

        try:
            report = families.report(d)
            cohomology = report.cohomology
            found = classify.classify_theorem_type(cohomology)
            result["cohomology"] = cohomology.to_record()
            result["homology"] = report.homology.to_record()
            result["diagnostics"] = dict(report.diagnostics)
            result["classification"] = found.model_dump()
            if report.beta is not None:
                state = "open" if cohomology.has_open_extension() \
                    else "resolved"
                result["extension"] = {"beta": report.beta,
                                       "gamma": report.gamma,
                                       "state": state}
            if check:
                records = oracle.check_diagram(
                    d, self.settings.enumeration_cutoff,
                    self.settings.pair_enumeration_cutoff)
                result["checks"] = [r.model_dump() for r in records]
        except HomologyError as e:
            logger.error(f"{d.describe()}: {e}")
            result["error"] = str(e)
        return result

    #####
    # SWEEP
    #####

    def sweep(self, family: str, bounds: Dict[str, Optional[int]],
              check: bool = False, workers: Optional[int] = None):
        """
        Tabulate every valid diagram of family in a box. Bounds left as
        None come from the sweep block of the configuration.
        """
        defaults = sweep.SweepBounds.from_config(self.settings.sweep)
        given = {k: v for k, v in bounds.items() if v is not None}
        box = defaults.model_copy(update=given)
        workers = workers or self.settings.sweep.workers
        return sweep.run_sweep(family, box, check=check, workers=workers,
                               cutoff=self.settings.enumeration_cutoff)

    #####
    # CATALOG
    #####

    def catalog(self, name: Optional[str] = None,
                brieskorn: Optional[int] = None,
                p_family: Optional[str] = None, r: Optional[int] = None,
                variant: str = "plain") -> Optional[GradedGroups]:
        """
        Homology of a catalog entry, or None when no entry was named.

        :raises CatalogError: on unknown names or bad parameters
        """
        if name is not None:
            return catalog.low_dim(name)
        if brieskorn is not None:
            return catalog.brieskorn(brieskorn)
        if p_family is not None:
            if r is None:
                raise CatalogError(
                    f"P-family {p_family} needs an explicit r")
            return catalog.p_family(p_family, r, variant)
        return None

    def atoms(self) -> List[SpaceAtom]:
        atoms = catalog.load_atoms()
        return [atoms[n] for n in catalog.atom_names(atoms)]


#####
# RENDERING
#####


def render_run(document: Dict[str, Any], fmt: str = "text",
               kinds: Optional[List[str]] = None) -> str:
    """
    Render a run document as text or JSON.

    :param kinds: profiles to print, cohomology and/or homology
    """
    if fmt == "json":
        return json.dumps(document, indent=2, ensure_ascii=False)

    kinds = kinds or [const.COHOMOLOGY, const.HOMOLOGY]
    lines = []
    for r in document["results"]:
        params = " ".join(f"{k}={v}" for k, v in r["diagram"].items()
                          if k != "family")
        lines.append(f"diagram {r['index']} (line {r['line']}): "
                     f"{r['diagram']['family']} {params}".rstrip())
        if not r["valid"]:
            lines.append("  invalid:")
            lines += [f"    {v}" for v in r["violations"]]
            continue
        if r["error"] is not None:
            lines.append(f"  error: {r['error']}")
            continue
        for kind in kinds:
            profile = GradedGroups.from_record(r[kind])
            lines.append(f"  {kind}:")
            lines += [f"    {line}" for line in profile.render_lines()]
        if r["extension"] is not None:
            e = r["extension"]
            lines.append(f"  extension: beta={e['beta']} "
                         f"gamma={e['gamma']} ({e['state']})")
        found = classify.Classification(**r["classification"])
        lines.append(f"  classification: {found.render()}")
        lines += [f"  warning: {w}" for w in found.warnings]
        for c in r["checks"]:
            lines.append(f"  check: {oracle.CheckRecord(**c).render()}")
    lines.append(f"ok: {document['ok']}")
    return "\n".join(lines)


def load_results(text: str) -> List[Dict[str, Any]]:
    """
    Read a JSON run document back. The cohomology and homology entries
    come back as GradedGroups.

    :raises DiagramParseError: on a different schema version
    """
    document = json.loads(text)
    schema = document.get("schema")
    if schema != const.SCHEMA_VERSION:
        raise DiagramParseError([f"unsupported schema version {schema}"])
    results = []
    for r in document["results"]:
        r = dict(r)
        for kind in (const.COHOMOLOGY, const.HOMOLOGY):
            if r.get(kind) is not None:
                r[kind] = GradedGroups.from_record(r[kind])
        results.append(r)
    return results
