"""Run the exhaustive claim checks and the catalog verifier.

Examples:
    python scripts/verify_claims.py
    python scripts/verify_claims.py --workers 4 --json-out claims.json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT_DIR = Path(__file__).resolve().parents[1]
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from condorcet_domains.catalog import verify_catalog
from condorcet_domains.claims import run_all_claims
from condorcet_domains.config import load_settings


def _print_event(event_type: str, message: str, details: dict) -> None:
    print(f"[{event_type}] {message}")


def main() -> int:
    parser = argparse.ArgumentParser(description="Verify the composition claims and the printed catalog")
    parser.add_argument("--workers", type=int, help="Worker processes (default: CONDORCET_WORKERS)")
    parser.add_argument("--json-out", help="Optional path to write claim results and the catalog report as JSON")
    parser.add_argument("--quiet", action="store_true", help="Only print the final summary")
    args = parser.parse_args()

    callback = None if args.quiet else _print_event
    results = run_all_claims(event_callback=callback, workers=args.workers or load_settings().workers)
    report = verify_catalog(event_callback=callback)

    if args.json_out:
        payload = {"claims": [result.to_dict() for result in results], "catalog": report.to_dict()}
        Path(args.json_out).write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")

    failed = [result.name for result in results if not result.passed]
    print(f"Claims passed: {len(results) - len(failed)}/{len(results)}")
    print(f"Catalog: {'OK' if report.ok else 'FAILED'}")
    if failed:
        print(f"Failed claims: {', '.join(failed)}")
    if report.unexpected:
        print(f"Unexpected mismatches: {', '.join(report.unexpected)}")
    if report.missing:
        print(f"Ledgered mismatches not reproduced: {', '.join(report.missing)}")
    return 0 if not failed and report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
