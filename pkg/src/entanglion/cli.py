"""Command-line interface for entanglion.

Subcommands:
- measure: every applicable measure on the focus cut and on each focus pair
- check: evaluate relations at one alpha on a state or a quoted profile
- sweep: tabulate both sides of the monogamy or polygamy family over an alpha grid
- random-suite: tally verdicts over Haar-random pure qubit states
- catalog: list the named example states

Exit codes: 0 success, 1 usage or input error, 2 an unexpected violation was found.
"""

import argparse
import functools
import logging
import os
import sys
import tempfile
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import NamedTuple, NoReturn

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError

from entanglion import __version__
from entanglion.config import ENTANGLION_THREADS, LCREN_SCALE, LCRENOA_SCALE
from entanglion.errors import EntanglionError, UsageError
from entanglion.inequalities import (
    HYBRID_THEOREMS,
    KNOWN_FAILING_THEOREMS,
    MONOGAMY_THEOREMS,
    NEGATIVE_ALPHA_THEOREMS,
    POLYGAMY_THEOREMS,
    MeasureProfile,
    ckw_check,
    compare_tightness,
    evaluate_monogamy,
    evaluate_polygamy,
    evaluate_theorem,
    measure_for,
    measure_profile,
    quoted_profile,
)
from entanglion.measures import Bipartition, all_measures
from entanglion.models import (
    AlphaGrid,
    CheckEnvelope,
    Command,
    InequalityReport,
    MeasureName,
    MeasureRecord,
    OutputFormat,
    QuotedProfileSpec,
    ReportEnvelope,
    RunSpec,
    SuiteSummary,
    SweepRow,
    TheoremId,
    TheoremTally,
    Verdict,
)
from entanglion.roof import RoofConfig
from entanglion.states import (
    CATALOG,
    HAAR_ALGORITHM,
    CatalogEntry,
    QuantumState,
    catalog_entry,
    haar_random_pure,
    load_state,
)

logger = logging.getLogger("entanglion.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

CATALOG_PREFIX = "catalog:"
SWEEP_COLUMNS = ["alpha", "lhs", "rhs_baseline", "rhs_thm1", "rhs_thm2", "margin"]

# Fixed alpha sets of the random suite, one per family.
SUITE_ALPHAS: dict[str, tuple[float, ...]] = {
    "monogamy": (LCREN_SCALE, 3.0, 5.0),
    "polygamy": (0.5, 1.5, LCRENOA_SCALE),
    "negative": (-0.5, -2.0),
}
SUITE_THEOREMS = (
    TheoremId.BASELINE_MONO,
    TheoremId.THM1,
    TheoremId.THM2,
    TheoremId.THM3,
    TheoremId.BASELINE_POLY,
    TheoremId.THM5,
    TheoremId.THM6,
    TheoremId.THM7,
    TheoremId.THM4,
    TheoremId.THM8,
)
_SUITE_CKW_QUBITS = 3
# Split relations need at least three parties besides the focus.
_SUITE_HYBRID_QUBITS = 4


class CommandOutput(NamedTuple):
    """Rendered output of one subcommand and the exit code it asks for."""

    text: str
    exit_code: int = EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


# --- Parsing ---
def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command, all sharing the same flags."""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--state", help="State JSON file or catalog:NAME")
    common.add_argument("--profile", help="Quoted values TOTAL:E0,E1,... instead of a state")
    common.add_argument("--focus", type=int, default=0, help="Index of the focus party")
    common.add_argument("--alpha", type=float, help="Single exponent")
    common.add_argument("--alpha-grid", help="Exponent grid lo:hi:steps")
    common.add_argument("--theorems", help="Comma separated relation ids, e.g. thm1,thm2")
    common.add_argument(
        "--measure",
        default=MeasureName.LCREN.value,
        help="Profile measure for --profile and sweep (lcren, lcrenoa or tangle)",
    )
    common.add_argument("--split", type=int, help="Split t of thm3/thm7; all splits when omitted")
    common.add_argument("--seed", type=int, default=0, help="Seed of every random choice")
    common.add_argument("--count", type=int, default=100, help="Samples of random-suite")
    common.add_argument("--qubits", type=int, default=3, help="Qubits per random-suite sample")
    common.add_argument("--out", type=Path, help="Output file; stdout when omitted")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="json or csv")

    parser = _ArgumentParser(
        prog="entanglion",
        description="Entanglement measures and their monogamy and polygamy relations",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for command in Command:
        subparsers.add_parser(command.value, parents=[common])
    return parser


def _parse_theorems(text: str | None) -> list[TheoremId]:
    if not text:
        return []
    return [TheoremId(item.strip()) for item in text.split(",") if item.strip()]


def parse_run_spec(argv: Sequence[str] | None = None) -> RunSpec:
    """Parse command-line arguments into a validated RunSpec, raising UsageError on bad input."""
    args = build_parser().parse_args(argv)
    command = Command(args.command)
    default_format = OutputFormat.CSV if command == Command.SWEEP else OutputFormat.JSON
    try:
        return RunSpec(
            command=command,
            state_source=args.state,
            profile=QuotedProfileSpec.parse(args.profile) if args.profile else None,
            focus=args.focus,
            alpha=args.alpha,
            alpha_grid=AlphaGrid.parse(args.alpha_grid) if args.alpha_grid else None,
            theorems=_parse_theorems(args.theorems),
            measure=MeasureName(args.measure),
            out=args.out,
            output_format=OutputFormat(args.format) if args.format else default_format,
            seed=args.seed,
            count=args.count,
            qubits=args.qubits,
            split=args.split,
        )
    except ValueError as err:
        raise UsageError(str(err)) from err


# --- Shared helpers ---
def _roof_config(spec: RunSpec) -> RoofConfig:
    return RoofConfig(seed=spec.seed)


def _load(spec: RunSpec) -> QuantumState | None:
    if spec.state_source is None:
        return None
    return load_state(spec.state_source)


def _expected_violations(spec: RunSpec) -> set[TheoremId]:
    """Relations allowed to be violated: the known failures plus the catalog entry's own."""
    expected = set(KNOWN_FAILING_THEOREMS)
    if spec.state_source is not None and spec.state_source.startswith(CATALOG_PREFIX):
        entry = catalog_entry(spec.state_source.removeprefix(CATALOG_PREFIX))
        expected.update(entry.expected_violations)
    return expected


def _fan_out[T, R](function: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map ``function`` over ``items`` on at most ENTANGLION_THREADS threads, keeping order."""
    workers = max(1, min(ENTANGLION_THREADS, len(items)))
    if workers == 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))


def _envelope_json(envelope: BaseModel) -> str:
    return envelope.model_dump_json(indent=2) + "\n"


def _csv(rows: Iterable[dict[str, object]], columns: Sequence[str]) -> str:
    frame = pd.DataFrame(list(rows), columns=list(columns))
    return frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def _profile(
    spec: RunSpec,
    state: QuantumState | None,
    measure: MeasureName,
    config: RoofConfig,
    *,
    include_tails: bool = False,
) -> MeasureProfile:
    """Profile of ``measure``, computed from the state or taken from --profile."""
    if state is not None:
        return measure_profile(
            state, spec.focus, measure, include_tails=include_tails, config=config
        )
    if spec.profile is None:
        msg = "A state or a quoted profile is required"
        raise UsageError(msg)
    if measure != spec.measure:
        msg = f"The quoted profile holds {spec.measure} values but {measure} is needed"
        raise UsageError(msg)
    return quoted_profile(spec.profile.total, spec.profile.pairwise, measure, focus=spec.focus)


# --- measure ---
def _measure_cuts(state: QuantumState, focus: int) -> list[Bipartition]:
    size = state.shape.size
    if not 0 <= focus < size:
        msg = f"Focus {focus} out of range for a {size}-party state"
        raise UsageError(msg)
    cuts = [Bipartition.focus_rest(focus, size)]
    if size > 2:  # noqa: PLR2004
        cuts.extend(Bipartition.split(focus, [b]) for b in range(size) if b != focus)
    return cuts


def cmd_measure(spec: RunSpec) -> CommandOutput:
    """Every applicable measure across ``focus | rest`` and on each pair ``(focus, b)``."""
    state = _load(spec)
    if state is None:
        msg = "measure needs --state"
        raise UsageError(msg)
    config = _roof_config(spec)
    records = [
        MeasureRecord(
            cut=cut.label,
            side_a=sorted(cut.side_a),
            side_b=sorted(cut.side_b),
            measures=all_measures(state, cut, config),
        )
        for cut in _measure_cuts(state, spec.focus)
    ]
    logger.info("Measured %d cuts of %s", len(records), spec.state_source)

    if spec.output_format == OutputFormat.CSV:
        rows = (
            {"cut": record.cut, **value.model_dump(mode="json")}
            for record in records
            for value in record.measures
        )
        columns = ["cut", "name", "value", "method", "error_bound", "converged"]
        return CommandOutput(_csv(rows, columns))
    envelope = ReportEnvelope[MeasureRecord](
        command=spec.command,
        version=__version__,
        seed=spec.seed,
        source=spec.state_source,
        items=records,
    )
    return CommandOutput(_envelope_json(envelope))


# --- check ---
def default_theorems(alpha: float) -> list[TheoremId]:
    """Relations whose alpha range contains ``alpha``, split relations and CKW excluded."""
    if alpha >= LCREN_SCALE:
        return [t for t in MONOGAMY_THEOREMS if t not in HYBRID_THEOREMS]
    if 0 <= alpha <= LCRENOA_SCALE:
        return [t for t in POLYGAMY_THEOREMS if t not in HYBRID_THEOREMS]
    if alpha < 0:
        return list(NEGATIVE_ALPHA_THEOREMS)
    msg = f"No relation covers alpha={alpha}; use alpha < 0, 0 <= alpha <= 2 or alpha >= 4 ln 2"
    raise UsageError(msg)


def _check_theorems(spec: RunSpec) -> list[TheoremId]:
    if spec.theorems:
        return spec.theorems
    if spec.alpha is None:
        msg = "check needs --alpha or --theorems"
        raise UsageError(msg)
    theorems = default_theorems(spec.alpha)
    if spec.profile is not None:
        theorems = [t for t in theorems if measure_for(t) == spec.measure]
    return theorems


def _run_checks(
    spec: RunSpec,
    state: QuantumState | None,
    theorems: Sequence[TheoremId],
    config: RoofConfig,
) -> list[InequalityReport]:
    profiles: dict[MeasureName, MeasureProfile] = {}
    reports: list[InequalityReport] = []
    for theorem in theorems:
        if theorem == TheoremId.CKW:
            if state is None:
                msg = "ckw needs --state"
                raise UsageError(msg)
            reports.append(ckw_check(state, spec.focus, config))
            continue
        if spec.alpha is None:
            msg = f"{theorem} needs --alpha"
            raise UsageError(msg)
        measure = measure_for(theorem)
        if measure not in profiles:
            tails = any(t in HYBRID_THEOREMS and measure_for(t) == measure for t in theorems)
            profiles[measure] = _profile(spec, state, measure, config, include_tails=tails)
        reports.extend(evaluate_theorem(profiles[measure], spec.alpha, theorem, spec.split))
    return reports


def cmd_check(spec: RunSpec) -> CommandOutput:
    """Evaluate the requested relations at one alpha."""
    state = _load(spec)
    theorems = _check_theorems(spec)
    if not theorems:
        msg = "No relation selected"
        raise UsageError(msg)
    reports = _run_checks(spec, state, theorems, _roof_config(spec))
    tightness = compare_tightness(reports)

    expected = _expected_violations(spec)
    unexpected = [
        r for r in reports if r.verdict == Verdict.VIOLATED and r.theorem_id not in expected
    ]
    for report in unexpected:
        logger.warning(
            "%s violated at alpha=%g (margin %.6g)", report.theorem_id, report.alpha, report.margin
        )
    for verdict in tightness:
        if verdict.holds is False:
            logger.warning(
                "%s is looser than %s at alpha=%g", verdict.tighter, verdict.looser, verdict.alpha
            )
    logger.info("Checked %d relations, %d unexpected violations", len(reports), len(unexpected))
    exit_code = EXIT_VIOLATION if unexpected else EXIT_OK

    if spec.output_format == OutputFormat.CSV:
        columns = [
            "theorem_id", "split", "measure", "alpha", "lhs", "rhs",
            "margin", "uncertainty", "holds", "verdict", "flags",
        ]  # fmt: skip
        rows = (
            {**r.model_dump(mode="json", include=set(columns)), "flags": ";".join(r.flags)}
            for r in reports
        )
        return CommandOutput(_csv(rows, columns), exit_code)
    envelope = CheckEnvelope(
        command=spec.command,
        version=__version__,
        seed=spec.seed,
        source=spec.state_source or "profile",
        items=reports,
        tightness=tightness,
    )
    return CommandOutput(_envelope_json(envelope), exit_code)


# --- sweep ---
def _sweep_row(profile: MeasureProfile, alpha: float) -> SweepRow:
    if profile.measure == MeasureName.LCREN:
        evaluate = evaluate_monogamy
        baseline, first, second = TheoremId.BASELINE_MONO, TheoremId.THM1, TheoremId.THM2
    else:
        evaluate = evaluate_polygamy
        baseline, first, second = TheoremId.BASELINE_POLY, TheoremId.THM5, TheoremId.THM6
    base = evaluate(profile, alpha, baseline)
    refined = evaluate(profile, alpha, first)
    geometric = evaluate(profile, alpha, second)
    return SweepRow(
        alpha=alpha,
        lhs=refined.lhs,
        rhs_baseline=base.rhs,
        rhs_thm1=refined.rhs,
        rhs_thm2=None if geometric.verdict == Verdict.CONDITION_FAILED else geometric.rhs,
        margin=refined.margin if refined.margin is not None else float("nan"),
    )


def cmd_sweep(spec: RunSpec) -> CommandOutput:
    """Both sides of the baseline and refined bounds over an alpha grid.

    With lcrenoa the polygamy bounds fill the ``rhs_thm1``/``rhs_thm2`` columns.
    """
    if spec.alpha_grid is None:
        msg = "sweep needs --alpha-grid"
        raise UsageError(msg)
    if spec.measure not in {MeasureName.LCREN, MeasureName.LCRENOA}:
        msg = f"sweep supports lcren and lcrenoa, got {spec.measure}"
        raise UsageError(msg)
    profile = _profile(spec, _load(spec), spec.measure, _roof_config(spec))
    rows = _fan_out(functools.partial(_sweep_row, profile), spec.alpha_grid.values())
    logger.info("Swept %d alpha values of %s", len(rows), spec.measure)

    if spec.output_format == OutputFormat.CSV:
        return CommandOutput(_csv((row.model_dump() for row in rows), SWEEP_COLUMNS))
    envelope = ReportEnvelope[SweepRow](
        command=spec.command,
        version=__version__,
        seed=spec.seed,
        source=spec.state_source or "profile",
        items=rows,
    )
    return CommandOutput(_envelope_json(envelope))


# --- random-suite ---
def suite_seeds(seed: int, count: int) -> list[int]:
    """Independent per-sample seeds spawned from one master seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _suite_alphas(theorem: TheoremId) -> tuple[float, ...]:
    if theorem in MONOGAMY_THEOREMS:
        return SUITE_ALPHAS["monogamy"]
    if theorem in POLYGAMY_THEOREMS:
        return SUITE_ALPHAS["polygamy"]
    if theorem in NEGATIVE_ALPHA_THEOREMS:
        return SUITE_ALPHAS["negative"]
    return (1.0,)


def _suite_sample(
    seed: int, *, qubits: int, theorems: Sequence[TheoremId], split: int | None
) -> list[InequalityReport]:
    """Every relation at every suite alpha on one Haar-random state."""
    state = haar_random_pure([2] * qubits, seed)
    config = RoofConfig(seed=seed)
    profiles: dict[MeasureName, MeasureProfile] = {}
    reports: list[InequalityReport] = []
    for theorem in theorems:
        if theorem == TheoremId.CKW:
            reports.append(ckw_check(state, 0, config))
            continue
        measure = measure_for(theorem)
        if measure not in profiles:
            tails = any(t in HYBRID_THEOREMS and measure_for(t) == measure for t in theorems)
            profiles[measure] = measure_profile(
                state, 0, measure, include_tails=tails, config=config
            )
        for alpha in _suite_alphas(theorem):
            reports.extend(evaluate_theorem(profiles[measure], alpha, theorem, split))
    return reports


def _tally(samples: Iterable[list[InequalityReport]]) -> list[TheoremTally]:
    tallies: dict[tuple[TheoremId, float, int | None], TheoremTally] = {}
    for reports in samples:
        for report in reports:
            key = (report.theorem_id, report.alpha, report.split)
            if key not in tallies:
                tallies[key] = TheoremTally(
                    theorem_id=report.theorem_id, alpha=report.alpha, split=report.split
                )
            tallies[key].add(report)
    order = list(TheoremId)
    return [
        tallies[key]
        for key in sorted(tallies, key=lambda k: (order.index(k[0]), k[1], k[2] or 0))
    ]


def cmd_random_suite(spec: RunSpec) -> CommandOutput:
    """Tally verdicts of every relation over ``count`` Haar-random pure qubit states."""
    theorems = spec.theorems or list(SUITE_THEOREMS)
    if not spec.theorems and spec.qubits < _SUITE_HYBRID_QUBITS:
        theorems = [t for t in theorems if t not in HYBRID_THEOREMS]
    if not spec.theorems and spec.qubits == _SUITE_CKW_QUBITS:
        theorems.append(TheoremId.CKW)
    if spec.qubits < _SUITE_HYBRID_QUBITS and any(t in HYBRID_THEOREMS for t in theorems):
        msg = f"Split relations need at least {_SUITE_HYBRID_QUBITS} qubits"
        raise UsageError(msg)
    if TheoremId.CKW in theorems and spec.qubits != _SUITE_CKW_QUBITS:
        msg = "ckw is evaluated on three qubits only"
        raise UsageError(msg)

    sample = functools.partial(
        _suite_sample, qubits=spec.qubits, theorems=theorems, split=spec.split
    )
    samples = _fan_out(sample, suite_seeds(spec.seed, spec.count))
    tallies = _tally(samples)
    unexpected = sum(t.violated for t in tallies if t.theorem_id not in KNOWN_FAILING_THEOREMS)
    summary = SuiteSummary(
        count=spec.count,
        qubits=spec.qubits,
        seed=spec.seed,
        tallies=tallies,
        unexpected_violations=unexpected,
    )
    logger.info(
        "Random suite of %d %d-qubit states: %d unexpected violations",
        spec.count,
        spec.qubits,
        unexpected,
    )
    exit_code = EXIT_VIOLATION if unexpected else EXIT_OK

    if spec.output_format == OutputFormat.CSV:
        columns = [
            "theorem_id", "alpha", "split", "evaluated", "holds", "violated",
            "inconclusive", "condition_failed", "condition_incidence", "worst_margin",
        ]  # fmt: skip
        return CommandOutput(_csv((t.model_dump(mode="json") for t in tallies), columns), exit_code)
    envelope = ReportEnvelope[SuiteSummary](
        command=spec.command,
        version=__version__,
        seed=spec.seed,
        haar_algorithm=HAAR_ALGORITHM,
        source=f"haar:{spec.qubits}x2",
        items=[summary],
    )
    return CommandOutput(_envelope_json(envelope), exit_code)


# --- catalog ---
def cmd_catalog(spec: RunSpec) -> CommandOutput:
    """List the named example states."""
    entries = list(CATALOG.values())
    if spec.output_format == OutputFormat.CSV:
        rows = (
            {
                "name": entry.name,
                "dims": "x".join(str(d) for d in entry.dims),
                "description": entry.description,
                "reference_values": ";".join(
                    f"{ref.label}={ref.value:.6g}" for ref in entry.reference_values
                ),
                "expected_violations": ";".join(entry.expected_violations),
            }
            for entry in entries
        )
        columns = ["name", "dims", "description", "reference_values", "expected_violations"]
        return CommandOutput(_csv(rows, columns))
    envelope = ReportEnvelope[CatalogEntry](
        command=spec.command, version=__version__, items=entries
    )
    return CommandOutput(_envelope_json(envelope))


COMMANDS: dict[Command, Callable[[RunSpec], CommandOutput]] = {
    Command.MEASURE: cmd_measure,
    Command.CHECK: cmd_check,
    Command.SWEEP: cmd_sweep,
    Command.RANDOM_SUITE: cmd_random_suite,
    Command.CATALOG: cmd_catalog,
}


# --- Output ---
def write_output(text: str, out: Path | None) -> None:
    """Write to ``out`` through a temporary file and rename, or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        Path(tmp).replace(out)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.debug("Wrote %s", out)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        spec = parse_run_spec(argv)
        output = COMMANDS[spec.command](spec)
        write_output(output.text, spec.out)
    except UsageError as err:
        logger.error("Usage error: %s", err)  # noqa: TRY400
        return EXIT_USAGE
    except (EntanglionError, ValidationError) as err:
        logger.error("Invalid input: %s", err)  # noqa: TRY400
        return EXIT_USAGE
    except OSError:
        logger.exception("Could not read or write a file")
        return EXIT_USAGE
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
