#!/usr/bin/env python3
"""Write the certificate JSON schema from the pydantic models.

Run from the repository root:  python tools/export_schema.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from pydantic import TypeAdapter  # noqa: E402

from soscert.service.models import CertificateModel  # noqa: E402


def main() -> None:
    schema = TypeAdapter(CertificateModel).json_schema()
    out = ROOT / "docs" / "certificate-schema.json"
    out.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
