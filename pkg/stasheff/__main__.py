"""Entry point for ``python -m stasheff``."""

import sys

from stasheff.cli import main

sys.exit(main())
