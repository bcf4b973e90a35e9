# -*- coding: utf-8 -*-

import sys

from robust_prediction.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
