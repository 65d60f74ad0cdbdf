"""Run the simulator from a checkout: ``python main.py run --preset paper``."""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
