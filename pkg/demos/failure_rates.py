"""Failure probability of GC codes: Monte Carlo, exact enumeration, the bound.

A reduced version of the rate/failure table (1000 trials per cell). Pass a
trial count as the first argument for more.
"""
import sys

from guesscheck.experiments import (TrialConfig, bound_delta1, exhaustive_failure_rate,
                                    rate_and_case_report, run_trials)

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 1000

print(f"{'k':>5} {'delta':>5} {'R':>5} {'cases':>7} {'failures':>9} {'95% CI':>22}")
for k in (256, 512):
    for delta in (2, 3):
        rep = rate_and_case_report(k, delta, delta + 1)
        s = run_trials(TrialConfig(k, delta, delta + 1, trials, seed=1))
        print(f"{k:5d} {delta:5d} {rep['rate_R']:5.2f} {rep['case_count']:7d} "
              f"{s.failures:4d}/{trials:<4d} [{s.ci_low:.1e}, {s.ci_high:.1e}]")

# exact numbers for a toy code, against the single-deletion bound
for c in (2, 3):
    r = exhaustive_failure_rate(12, 1, c, 4)
    print(f"k=12 c={c}: exact Pr(F) = {r.rate} = {float(r.rate):.2e}, "
          f"bound {bound_delta1(12, c):.2e}, wrong decodes {r.wrong_decodes}")
