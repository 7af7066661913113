"""Package entry point for python -m folp"""

import sys

from folp.cli import main

if __name__ == "__main__":
    sys.exit(main())
