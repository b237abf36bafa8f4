import logging
import os
from typing import List, Optional, Tuple

import yaml
from addict import Dict

from normal_cover import harness, report_generation
from normal_cover.errors import InputError
from normal_cover.solver import CoverResult, CoverStructureReport, analyze_min_covers

log = logging.getLogger(__name__)


def parse_config_yaml(config_yaml_path: Optional[str]) -> Dict:
    """ Reads the configuration section of a YAML file; a missing path gives the defaults. """
    parsed_yaml = {}
    if config_yaml_path:
        if not os.path.exists(config_yaml_path):
            raise InputError("Config yaml file does not exist: " + os.path.abspath(config_yaml_path))
        with open(config_yaml_path, 'r') as stream:
            try:
                parsed_yaml = yaml.safe_load(stream) or {}
            except yaml.YAMLError as ex:
                raise InputError("Config yaml file " + config_yaml_path + " is not valid yaml: " + str(ex))
        if not isinstance(parsed_yaml, dict):
            raise InputError("Config yaml file " + config_yaml_path + " must contain a mapping.")

    return harness.prepare_configuration(
        parsed_yaml["configuration"] if "configuration" in parsed_yaml else {})


def merge_options(config: Dict, **options) -> Dict:
    """ Command line options override the file configuration when they are set. """
    config = Dict(config)
    for key, value in options.items():
        if value is None or value == ():
            continue
        if isinstance(value, tuple):
            value = list(value)
        config[key] = value
    return harness.prepare_configuration(config)


def compute_gamma(n: int, group: str, config: Dict) -> Tuple[CoverResult, Optional[CoverStructureReport]]:
    log.info("Computing the modeled gamma of " + group + "_" + str(n))
    result = harness.compute_gamma(n, group, config)
    structure = None
    if result.all_minimum_covers is not None:
        structure = analyze_min_covers(result, n)
    return result, structure


def render_gamma(result: CoverResult, structure: Optional[CoverStructureReport], output_format: str) -> str:
    if output_format == "json":
        return report_generation.generate_cover_json(result, structure)
    if output_format == "csv":
        return report_generation.generate_cover_csv(result)
    if output_format == "md":
        return report_generation.generate_cover_md(result, structure)
    return report_generation.generate_cover_text(result, structure)


def _write(path: str, content: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        f.write(content)
    log.info("Wrote " + os.path.abspath(path))


def run_verification(start: int, end: int, groups: List[str], config: Dict,
                     output_json: Optional[str] = None, output_csv: Optional[str] = None,
                     output_markdown: Optional[str] = None) -> harness.VerificationReport:
    report = harness.verify_conjectures(start, end, groups, config)

    if output_json:
        _write(output_json, report_generation.generate_verification_json(report) + "\n")
    if output_csv:
        _write(output_csv, report_generation.verification_table(report).to_csv(index=False))
    if output_markdown:
        _write(output_markdown, report_generation.generate_verification_md(report))
    return report
