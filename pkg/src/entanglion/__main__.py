"""Allow ``python -m entanglion``."""

import sys

from entanglion.cli import main

sys.exit(main())
