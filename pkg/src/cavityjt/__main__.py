"""Allow running the command line tools as python -m cavityjt."""

import sys

from .cli import main

sys.exit(main())
