import argparse
import sys
from typing import Dict, List, Optional, Sequence

from vote_tally import __version__
from vote_tally.Configs.config import config
from vote_tally.Main.ballots import presence_indicator, threshold_indicator
from vote_tally.Main.baseline_methods import count_approval, count_plurality, count_score
from vote_tally.Main.preferential_methods import condorcet, count_two_round
from vote_tally.Main.stv_engine import count_stv
from vote_tally.Models.errors import ConfigError, VoteTallyError
from vote_tally.Models.models import (
    BallotKind,
    ElectionConfig,
    Method,
    OutputFormat,
    QuotaPolicy,
    ReservedSeats,
    RunSpec,
    StvOptions,
    TiePolicy,
)
from vote_tally.Utils.logging_utils import log_error, set_console_level, setup_logger
from vote_tally.Views.ballot_file_handler import parse_ballots
from vote_tally.Views.plot_exporter import emit_plots
from vote_tally.Views.report import render_report

logger = setup_logger(__name__)

# Flags that only make sense for some methods, by argparse dest
METHOD_FLAGS: Dict[str, Sequence[Method]] = {
    'seats': (Method.PLURALITY, Method.APPROVAL, Method.SCORE, Method.STV),
    'eps': (Method.STV,),
    'constant_quota': (Method.STV,),
    'equal_ranking': (Method.STV,),
    'ties': (Method.STV,),
    'reserve_seats': (Method.STV,),
    'reserve_group': (Method.STV,),
    'complete_ranking': (Method.STV,),
    'legacy_ties': (Method.STV,),
    'larger_wins': (Method.SCORE,),
    'fill_score': (Method.SCORE,),
    'min_score': (Method.SCORE,),
    'max_score': (Method.SCORE,),
    'ranks_as_approval': (Method.PLURALITY, Method.APPROVAL),
    'runoff': (Method.CONDORCET,),
    'plots': (Method.TWO_ROUND, Method.CONDORCET, Method.STV),
}


def _rank_list(text: str) -> List[int]:
    try:
        ranks = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ranks, got {text!r}")
    if not ranks or any(r < 1 for r in ranks):
        raise argparse.ArgumentTypeError(f"ranks must be positive integers, got {text!r}")
    return ranks


def _name_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(',') if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tally',
        description="Count an election from a delimited ballot file and print the result.",
    )
    parser.add_argument('method', choices=[m.value for m in Method], help="counting method")
    parser.add_argument('file', help="ballot file: header of candidate names, one ballot per row")
    parser.add_argument('--sep', default=config.DEFAULT_SEPARATOR, help="field separator (default ',')")
    parser.add_argument('--seats', type=int, help="number of seats (default 1)")
    parser.add_argument('--eps', type=float, help=f"quota epsilon (default {config.DEFAULT_EPSILON})")
    parser.add_argument('--constant-quota', action='store_true', default=None,
                        help="keep the first-count quota for the whole count")
    parser.add_argument('--equal-ranking', action='store_true', default=None,
                        help="accept equal preferences and correct the rankings")
    parser.add_argument('--ties', choices=[p.value for p in TiePolicy], help="forwards or backwards tie-breaking")
    parser.add_argument('--reserve-seats', type=int, help="seats reserved for the marked group")
    parser.add_argument('--reserve-group', type=_name_list, help="comma-separated names of the marked group")
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED, help="seed for every random draw")
    parser.add_argument('--digits', type=int, default=config.DEFAULT_DIGITS, help="decimals shown in reports")
    parser.add_argument('--larger-wins', action='store_true', default=None, help="higher scores are better")
    parser.add_argument('--fill-score', type=float, help="score given to unscored candidates")
    parser.add_argument('--min-score', type=float, help="lowest allowed score (default 0)")
    parser.add_argument('--max-score', type=float, help="highest allowed score")
    parser.add_argument('--ranks-as-approval', type=_rank_list,
                        help="count these ranks as marks, e.g. 1,2,3")
    parser.add_argument('--runoff', action='store_true', default=None,
                        help="run off the leaders when there is no Condorcet winner")
    parser.add_argument('--complete-ranking', action='store_true', default=None,
                        help="add the complete ranking to the report")
    parser.add_argument('--legacy-ties', action='store_true', default=None,
                        help="break ties by ballot-paper position")
    parser.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.MARKDOWN.value)
    parser.add_argument('--plots', metavar='DIR', help="write plot datasets and SVGs to DIR")
    parser.add_argument('--log-level', help="console log level (default from TALLY_LOG_LEVEL)")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    return parser


def _check_method_flags(args: argparse.Namespace, method: Method) -> None:
    misused = [
        '--' + dest.replace('_', '-')
        for dest, methods in METHOD_FLAGS.items()
        if getattr(args, dest) is not None and method not in methods
    ]
    if misused:
        raise ConfigError(f"{', '.join(misused)} cannot be used with {method.value}")
    if (args.reserve_seats is None) != (args.reserve_group is None):
        raise ConfigError("--reserve-seats and --reserve-group must be given together")


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    method = Method(args.method)
    _check_method_flags(args, method)
    reserved = None
    if args.reserve_seats is not None:
        reserved = ReservedSeats(args.reserve_seats, frozenset(args.reserve_group))
    election = ElectionConfig(
        seats=args.seats if args.seats is not None else 1,
        epsilon=args.eps if args.eps is not None else config.DEFAULT_EPSILON,
        quota_policy=QuotaPolicy.CONSTANT if args.constant_quota else QuotaPolicy.ADAPTIVE,
        ties=TiePolicy(args.ties) if args.ties else TiePolicy.FORWARDS,
        equal_ranking=bool(args.equal_ranking),
        reserved=reserved,
        seed=args.seed,
        larger_wins=bool(args.larger_wins),
        fill_score=args.fill_score,
        complete_ranking=bool(args.complete_ranking),
        legacy_ties=bool(args.legacy_ties),
    )
    return RunSpec(
        input_path=args.file,
        method=method,
        separator=args.sep,
        election=election,
        output_format=OutputFormat(args.format),
        digits=args.digits,
        plots_dir=args.plots,
        ranks_as_approval=frozenset(args.ranks_as_approval) if args.ranks_as_approval else None,
        runoff=bool(args.runoff),
    )


def count(spec: RunSpec, min_score: Optional[float] = None, max_score: Optional[float] = None):
    """Read the ballot file and run the requested method."""
    election = spec.election
    method = spec.method

    if method is Method.SCORE:
        ballots = parse_ballots(spec.input_path, spec.separator, kind=BallotKind.SCORE)
        return count_score(ballots, election.seats, election.larger_wins, election.fill_score,
                           election.seed, min_score if min_score is not None else 0.0, max_score)

    ballots = parse_ballots(spec.input_path, spec.separator)
    if method is Method.PLURALITY:
        marks = threshold_indicator(ballots, spec.ranks_as_approval or {1})
        return count_plurality(marks, election.seats, election.seed)
    if method is Method.APPROVAL:
        if spec.ranks_as_approval:
            marks = threshold_indicator(ballots, spec.ranks_as_approval)
        else:
            marks = presence_indicator(ballots)
        return count_approval(marks, election.seats, election.seed)
    if method is Method.TWO_ROUND:
        return count_two_round(ballots, election.seed)
    if method is Method.CONDORCET:
        return condorcet(ballots, runoff=spec.runoff)
    return count_stv(ballots, StvOptions.from_config(election))


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.log_level:
        set_console_level(args.log_level)

    try:
        spec = spec_from_args(args)
        logger.info(f"Counting {spec.input_path} with {spec.method.value}")
        result = count(spec, args.min_score, args.max_score)
        report = render_report(result, spec.digits, spec.election.complete_ranking, spec.output_format)
        if spec.plots_dir:
            emit_plots(result, spec.plots_dir, spec.separator)
    except (VoteTallyError, OSError) as e:
        log_error(logger, e, f"tally {' '.join(argv if argv is not None else sys.argv[1:])}")
        print(f"tally: error: {e}", file=sys.stderr)
        return 1

    sys.stdout.write(report)
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
