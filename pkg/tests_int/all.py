# -*- coding: utf-8 -*-

if __name__ == "__main__":
    from robust_prediction.tests import run_int_test

    run_int_test()
