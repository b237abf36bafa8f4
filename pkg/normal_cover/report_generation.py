import json
import logging
from typing import Optional

import pandas as pd

from normal_cover import arith, utils
from normal_cover.harness import FixtureReport, VerificationReport
from normal_cover.solver import CoverResult, CoverStructureReport

log = logging.getLogger(__name__)

TABLE_COLUMNS = ["n", "gamma_S", "gamma_A", "g", "conditional_S", "conditional_A", "known_S", "known_A"]

MAXIMALITY_NOTE = "Classes that are not maximal for a particular n (for example exceptional " + \
    "intersections with A_n) are kept in the universe. An extra class can only leave a minimum cover " + \
    "unchanged or make it smaller, never invalid."

CONDITIONAL_NOTE = "Conditional: no primitive classes were supplied, so the modeled value is an upper " + \
    "bound for gamma that may exceed it when a primitive class takes part in a smaller cover."


def _g_or_none(n: int) -> Optional[int]:
    f = arith.factorize(n)
    return arith.g_value(f) if f.r >= 2 else None


def cover_summary(result: CoverResult, structure: Optional[CoverStructureReport] = None) -> dict:
    summary = result.to_dict()
    summary["g"] = _g_or_none(result.n)
    if structure is not None:
        summary["p_min_match"] = structure.to_dict()
    return summary


def generate_cover_json(result: CoverResult, structure: Optional[CoverStructureReport] = None) -> str:
    return json.dumps(cover_summary(result, structure), indent=2, sort_keys=True)


def generate_cover_csv(result: CoverResult) -> str:
    summary = cover_summary(result)
    row = {
        "n": summary["n"],
        "group": summary["group"],
        "g": summary["g"],
        "gamma_modeled": summary["gamma_modeled"],
        "conditional": summary["conditional"],
        "timed_out": summary["timed_out"],
        "canonical_cover": " ".join(summary["canonical_cover"]),
    }
    return pd.DataFrame([row]).to_csv(index=False)


def generate_cover_text(result: CoverResult, structure: Optional[CoverStructureReport] = None) -> str:
    g = _g_or_none(result.n)
    text = "gamma(" + result.group + "_" + str(result.n) + ") modeled = " + str(result.minimum_size)
    if g is not None:
        text += "   g(n) = " + str(g)
    text += "\n"
    text += "cover: " + ", ".join(item.label for item in result.canonical_cover) + "\n"
    if result.timed_out:
        text += "time limit reached: the cover is the best one found, not a proven minimum\n"
    if result.all_minimum_covers is not None:
        text += "minimum covers: " + str(len(result.all_minimum_covers)) + \
            (" (truncated)" if result.truncated else "") + "\n"
    if structure is not None and structure.p_min is not None:
        text += "P_min = {" + ", ".join(str(x) for x in structure.p_min) + "}: " + \
            str(structure.p_min_agree) + " covers match, " + str(structure.p_min_disagree) + " differ, " + \
            str(structure.expected_shape) + " have the expected shape\n"
    if result.conditional:
        text += CONDITIONAL_NOTE + "\n"
    stats = result.stats
    if stats:
        text += "types: " + str(stats.get("types")) + " (" + str(stats.get("minimal_types")) + " after reduction), " + \
            "classes: " + str(stats.get("classes")) + " (" + str(stats.get("reduced_classes")) + " after reduction), " + \
            "nodes: " + utils.simplify_number(stats.get("nodes") or 0) + "\n"
    return text


def generate_cover_md(result: CoverResult, structure: Optional[CoverStructureReport] = None) -> str:
    g = _g_or_none(result.n)
    markdown = "## Minimum normal cover of " + result.group + "<sub>" + str(result.n) + "</sub>\n\n"
    markdown += "| | |\n|---|---|\n"
    markdown += "| modeled gamma | " + str(result.minimum_size) + " |\n"
    markdown += "| g(n) | " + (str(g) if g is not None else "-") + " |\n"
    markdown += "| conditional | " + str(result.conditional).lower() + " |\n"
    markdown += "| canonical cover | " + ", ".join("`" + item.label + "`" for item in result.canonical_cover) + " |\n"
    if result.all_minimum_covers is not None:
        markdown += "| minimum covers | " + str(len(result.all_minimum_covers)) + \
            (" (truncated)" if result.truncated else "") + " |\n"
    markdown += "\n"

    if structure is not None and structure.covers:
        markdown += "### Intransitive part of the minimum covers\n\n"
        markdown += "| cover | intransitive | equals P_min | wreath pair |\n|---|---|---|---|\n"
        for shape in structure.covers:
            markdown += "| " + ", ".join(shape.cover) + " | " + \
                ", ".join(str(x) for x in shape.intransitive) + " | " + \
                _yes_no(shape.p_min_match) + " | " + _yes_no(shape.wreath_match) + " |\n"
        markdown += "\n"

    if result.conditional:
        markdown += "_" + CONDITIONAL_NOTE + "_\n\n"
    markdown += "_" + MAXIMALITY_NOTE + "_\n"
    return markdown


def _yes_no(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


def verification_table(report: VerificationReport) -> pd.DataFrame:
    return pd.DataFrame(report.table_rows(), columns=TABLE_COLUMNS)


def generate_verification_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def generate_verification_md(report: VerificationReport) -> str:
    markdown = "# Normal covering numbers, n = " + str(report.start) + ".." + str(report.end) + "\n\n"
    markdown += "| n | gamma(S_n) | gamma(A_n) | g(n) | known S | known A |\n|---|---|---|---|---|---|\n"
    for row in report.table_rows():
        markdown += "| " + " | ".join([
            str(row["n"]),
            _cell(row["gamma_S"], row["conditional_S"]),
            _cell(row["gamma_A"], row["conditional_A"]),
            str(row["g"]) if row["g"] is not None else "-",
            row["known_S"] or "-",
            row["known_A"] or "-",
        ]) + " |\n"
    markdown += "\n* marks a conditional value (no primitive classes supplied).\n\n"

    problems = [item for item in report.items if item.status != "ok"]
    if report.mismatches or problems:
        markdown += "## Findings\n\n"
        for item in report.mismatches:
            markdown += "- " + item.group + "_" + str(item.n) + ": modeled " + str(item.gamma) + \
                ", known " + str(item.known) + (" (conditional)" if item.conditional else "") + "\n"
        for item in problems:
            markdown += "- " + item.group + "_" + str(item.n) + ": " + item.status + \
                (" - " + item.note if item.note else "") + "\n"
        markdown += "\n"
    markdown += "_" + MAXIMALITY_NOTE + "_\n"
    return markdown


def _cell(gamma: Optional[int], conditional: Optional[bool]) -> str:
    if gamma is None:
        return "-"
    return str(gamma) + ("*" if conditional else "")


def generate_fixture_text(report: FixtureReport) -> str:
    text = "n = " + str(report.n) + " (" + report.family + ", q = " + str(report.q) + ")\n"
    for check in report.checks:
        text += "[" + check.status + "] " + check.name
        if check.status != "PASS":
            text += ": expected " + str(check.to_dict()["expected"]) + ", computed " + str(check.to_dict()["computed"])
        if check.note:
            text += " (" + check.note + ")"
        text += "\n"
    if report.note:
        text += report.note + "\n"
    return text


def generate_fixture_json(report: FixtureReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)
