"""Allow ``python -m resnewt`` as an alias for the ``resnewt`` script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
