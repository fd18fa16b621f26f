"""Subcommands; each module registers its parsers with :func:`add_command`."""

import argparse
from pathlib import Path
from typing import Callable, Type

from hashembed.cli.run_config import RunConfig


def add_command(
    subparsers: argparse._SubParsersAction,
    name: str,
    help: str,
    run_config: Type[RunConfig],
    handler: Callable[[RunConfig], None],
) -> argparse.ArgumentParser:
    """
    Register a subcommand.

    Flags default to absent so that config-file keys and model defaults
    show through; only flags actually given override them.
    """
    parser = subparsers.add_parser(
        name,
        help=help,
        description=help,
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("--config", type=Path, help="key = value file of settings")
    parser.add_argument(
        "--save-config", type=Path, help="write the resolved settings here for reruns"
    )
    parser.set_defaults(run_config=run_config, handler=handler)
    return parser


def add_aux_input_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags of :class:`~hashembed.cli.dependencies.AuxInputConfig`."""
    parser.add_argument("--edges", type=Path, help="edge-list file (adjacency rows)")
    parser.add_argument("--dense", type=Path, help="GEF32 matrix file (embedding rows)")
    parser.add_argument(
        "--no-symmetrize", dest="symmetrize", action="store_false", help="keep edges directed"
    )
    parser.add_argument("--n-nodes", type=int, help="declared node count")
    parser.add_argument(
        "--in-memory", dest="streaming", action="store_false", help="load GEF32 input whole"
    )
    parser.add_argument("--block-rows", type=int, help="rows per streamed block")
