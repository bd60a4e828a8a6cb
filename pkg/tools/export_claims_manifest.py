#!/usr/bin/env python3
"""Write the shipped claims manifest from the claim registry.

Run from the repository root after changing the registry:
    python tools/export_claims_manifest.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from soscert.claims import all_claims  # noqa: E402


def main() -> None:
    manifest = {
        c.id: {"title": c.title, "tags": list(c.tags)} for c in all_claims()
    }
    out = ROOT / "src" / "soscert" / "data" / "claims.json"
    out.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(manifest)} claims)")


if __name__ == "__main__":
    main()
