"""Main entry point for the hashembed command line."""

import sys

from hashembed.cli.main import main


if __name__ == "__main__":
    sys.exit(main())
