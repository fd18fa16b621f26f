"""Command-line entry point."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from hashembed import __version__
from hashembed.cli.commands import encode, report, synth, train
from hashembed.cli.run_config import format_config, log_config, resolve
from hashembed.core.exceptions import ConfigError, HashEmbedError
from hashembed.core.logger import logger, set_level

COMMAND_MODULES = (encode, train, report, synth)

# exit statuses
EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="hashembed",
        description="Hashing-based compositional codes for node embeddings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL for this run")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 2 for configuration errors, 1 for any other failure
    """
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    run_config = args.pop("run_config")
    handler = args.pop("handler")
    config_file = args.pop("config", None)
    log_level = args.pop("log_level", None)
    save_config = args.pop("save_config", None)

    try:
        if log_level is not None:
            set_level(log_level)
        cfg = resolve(run_config, args, config_file)
        log_config(command, cfg)
        for line in format_config(cfg).splitlines():
            print(f"# {line}")
        if save_config is not None:
            Path(save_config).write_text(format_config(cfg) + "\n", encoding="utf-8")
        handler(cfg)
    except ConfigError as e:
        logger.error(f"{command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (HashEmbedError, OSError) as e:
        logger.error(f"{command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
