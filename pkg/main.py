"""Main entry point for the nmatrix command-line interface and API server."""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
