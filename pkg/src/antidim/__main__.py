"""Entry point for running antidim as a module."""

import sys

from antidim.main import main

if __name__ == "__main__":
    sys.exit(main())
