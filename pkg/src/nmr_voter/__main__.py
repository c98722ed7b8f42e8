"""Entry point for python -m nmr_voter."""

import sys

from .cli import main

sys.exit(main())
