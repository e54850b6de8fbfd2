"""
Run every acceptance criterion and write the reports.

    python run_acceptance_suite.py [criterion ...]

Writes reports/acceptance/<criterion>.json (one report per line) and
reports/acceptance/summary.csv; exits 1 if any criterion fails.
"""

import logging
import sys
from pathlib import Path

from src.config import get_settings
from src.models import AcceptanceSuite, reports_to_frame

OUTPUT_DIR = Path("reports/acceptance")


def main(names=None) -> int:
    settings = get_settings()
    logging.basicConfig(level=getattr(logging, settings.log_level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    suite = AcceptanceSuite(settings)
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

    print("Running acceptance suite...")
    print("=" * 60)
    results = suite.run(names or None)
    for result in results:
        path = OUTPUT_DIR / f"{result.name}.json"
        path.write_text("".join(report.to_json() + "\n" for report in result.reports))
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}  {result.name:<20} {result.description}")
        if not result.passed:
            print(reports_to_frame(result.reports).to_string(index=False))

    summary = AcceptanceSuite.summary(results)
    summary.to_csv(OUTPUT_DIR / "summary.csv", index=False)
    print("=" * 60)
    print(f"{int(summary['pass'].sum())} of {len(summary)} criteria passed")
    print(f"Reports saved to {OUTPUT_DIR}/")
    return 0 if summary["pass"].all() else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
