# -*- coding: utf-8 -*-

import sys

from .cli.main import main

sys.exit(main())
