#!/usr/bin/env python3
"""Run the orbit command-line tool from a source checkout."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import main


if __name__ == "__main__":
    main()
