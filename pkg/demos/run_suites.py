"""
Property suites at a glance
===========================

Run every verification suite with a modest trial count and print the
summary line of each report.  Failures carry the seed and the full inputs,
so a failing trial can be replayed with ``rdr.verify.run_trial``.
"""

from rdr.verify import SUITES, run_suite

for name in SUITES:
    report = run_suite(name, trials=10, root_seed=0)
    status = "ok" if report.passed else "FAILED"
    print(f"{name:24s} {status:6s} failures={len(report.failures)} "
          f"skipped={len(report.skipped)} {report.elapsed:6.2f}s")
