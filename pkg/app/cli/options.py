"""
Argument types and option groups shared by several subcommands
"""
import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
from numpy.typing import NDArray

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.models.depth import DepthKind, DepthSpec


@dataclass
class CommandResult:
    """What a subcommand read and wrote; drives the run manifest"""

    inputs: List[Path] = field(default_factory=list)
    outputs: List[Path] = field(default_factory=list)
    seed: Optional[int] = None


def parse_point(text: str) -> NDArray[np.float64]:
    """'x1,...,xd' -> point; negative first coordinates need the --query=-1,2 form"""
    try:
        coords = [float(part) for part in text.split(",")]
    except ValueError as e:
        raise ValidationError(f"not a comma-separated point: {text!r}") from e
    point = np.array(coords)
    if not np.all(np.isfinite(point)):
        raise ValidationError(f"point has non-finite coordinates: {text!r}")
    return point


def parse_floats(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ValidationError(f"not a comma-separated list of numbers: {text!r}") from e


def parse_ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ValidationError(f"not a comma-separated list of integers: {text!r}") from e


def parse_names(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def add_header_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--header",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="CSV files start with a header row (default: detect)",
    )


def add_depth_options(parser: argparse.ArgumentParser, default: DepthKind = DepthKind.HALFSPACE) -> None:
    group = parser.add_argument_group("depth")
    group.add_argument(
        "--depth",
        choices=[kind.value for kind in DepthKind],
        default=default.value,
        help=f"depth function (default: {default.value})",
    )
    group.add_argument(
        "--directions",
        type=int,
        default=settings.DEFAULT_DIRECTIONS,
        help="directions for approximate halfspace (d >= 3) and projection depth",
    )
    group.add_argument(
        "--max-enumeration",
        type=int,
        default=settings.MAX_ENUMERATION,
        help="largest simplex count enumerated exactly by simplicial depth (d >= 3)",
    )
    group.add_argument(
        "--depth-seed",
        type=int,
        default=0,
        help="stream of the Monte Carlo simplicial depth beyond the enumeration cap",
    )


def depth_spec_from(args: argparse.Namespace) -> DepthSpec:
    return DepthSpec(
        kind=DepthKind(args.depth),
        directions=args.directions,
        max_enumeration=args.max_enumeration,
        seed=args.depth_seed,
    )


def add_seed_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.DEFAULT_SEED,
        help=f"master seed of every random stream (default: {settings.DEFAULT_SEED})",
    )
