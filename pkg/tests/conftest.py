# -*- coding: utf-8 -*-

from robust_prediction.tests.conftest import *
