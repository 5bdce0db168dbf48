"""Entry point for running entanglion from a source checkout."""

import sys

from entanglion.cli import main

if __name__ == "__main__":
    sys.exit(main())
