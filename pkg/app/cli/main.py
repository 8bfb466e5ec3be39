"""
depthknn command-line entry point.

Exit codes: 0 on success, 1 on invalid input or usage, 2 on a numerically
degenerate computation (singular scatter, zero MAD, zero volume).
"""
import argparse
import sys
from typing import List, Optional, Sequence

from app.cli.commands import COMMANDS
from app.cli.manifest import build_manifest, changed_files, load_manifest, write_manifests
from app.cli.options import CommandResult
from app.core.config import settings
from app.core.exceptions import ComputationError, UsageError, ValidationError
from app.core.logging_config import get_logger, setup_logging

logger = get_logger("app.cli")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPUTATION = 2
NO_MANIFEST_NOTE = "no run manifest: results went to stdout (pass --output to record one)"


class CliArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors raise instead of exiting with status 2"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def configure_replay(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--manifest", required=True, help="manifest written beside an earlier output")


def run_replay(args: argparse.Namespace) -> CommandResult:
    """Re-run a recorded command and check that its outputs come out identical"""
    manifest = load_manifest(args.manifest)
    changed = changed_files(manifest.inputs)
    if changed:
        raise ValidationError(f"inputs changed since the recorded run: {changed}")
    logger.info(f"Replaying: depthknn {' '.join(manifest.argv)}")
    code = dispatch(manifest.argv)
    if code != EXIT_OK:
        raise ComputationError(f"replayed command exited with status {code}")
    differing = changed_files(manifest.outputs)
    if differing:
        raise ComputationError(f"replay produced different outputs: {differing}")
    print(f"replay of {manifest.subcommand} reproduced {len(manifest.outputs)} output(s)")
    return CommandResult()


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="depthknn",
        description="Depth-based nearest-neighbor classification, competitors and benchmarks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("--log-level", default=None, help=f"logging level (default: {settings.LOG_LEVEL})")
    parser.add_argument("--log-file", action="store_true", help=f"also log to files under {settings.LOG_DIR}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    commands = dict(COMMANDS)
    commands["replay"] = ("re-run a manifest and verify its outputs", configure_replay, run_replay)
    for name, (help_text, configure, handler) in commands.items():
        subparser = subparsers.add_parser(name, help=help_text, description=help_text)
        configure(subparser)
        subparser.set_defaults(handler=handler)
    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run the addressed subcommand and return its exit code"""
    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(arguments)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)

    setup_logging(args.log_level, to_file=args.log_file or None)
    try:
        result = args.handler(args)
        if result.outputs:
            for path in write_manifests(build_manifest(args, arguments, result)):
                print(f"manifest: {path}", file=sys.stderr)
        elif hasattr(args, "output"):
            print(NO_MANIFEST_NOTE, file=sys.stderr)
    except ValueError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArithmeticError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTATION
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
