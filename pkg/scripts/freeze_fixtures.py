#!/usr/bin/env python3
"""Regenerate the frozen golden fixtures.

Run only when the fixture corpus, the lateralization inquiry, or the
serialization contract changes deliberately. Before writing anything the
script re-derives every cell three ways (hand enumeration below, the
naive reference scanner, the engine) and refuses to freeze on any
disagreement.

Outputs:
  tests/fixtures/golden_result.json   canonical run_inquiry payload
  tests/fixtures/golden_overview.csv  byte-stable CLI csv output
  frontend/fixtures/*.json            recorded API payloads for the UI tests
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from fastapi.testclient import TestClient

from litscope.aggregate import cell_documents, cell_histogram, overview, run_inquiry
from litscope.cli import format_csv
from litscope.corpus import load_corpus
from litscope.inquiry import validate
from litscope.service import create_app, default_synonyms
from reference import ref_run

FIXTURES = ROOT / "tests" / "fixtures"
FRONTEND_FIXTURES = ROOT / "frontend" / "fixtures"

# Hand-enumerated expectation: doc-id suffixes per cell, counted once by
# reading all 20 abstracts against the matching rules.
def _ids(*nums: int) -> set[str]:
    return {f"100000{n:02d}" for n in nums}


HAND_COUNTS: dict[str, set[str]] = {
    "amygdala | (none)": _ids(*[n for n in range(1, 21) if n != 3]),
    "amygdala | anxiety": _ids(5, 6, 11, 15, 19, 20),
    "amygdala | fear": _ids(1, 4, 13, 16),
    "amygdala | fmri": _ids(6, 7, 13, 14, 18, 19),
    "amygdala | anxiety & fmri": _ids(6, 19),
    "amygdala | fear & fmri": _ids(13),
    "left amygdala | (none)": _ids(4, 7, 11, 14, 16, 19),
    "left amygdala | anxiety": _ids(11, 19),
    "left amygdala | fear": _ids(4, 16),
    "left amygdala | fmri": _ids(7, 14, 19),
    "left amygdala | anxiety & fmri": _ids(19),
    "left amygdala | fear & fmri": set(),
    "right amygdala | (none)": _ids(2, 5, 6, 11, 14, 18),
    "right amygdala | anxiety": _ids(5, 6, 11),
    "right amygdala | fear": set(),
    "right amygdala | fmri": _ids(6, 14, 18),
    "right amygdala | anxiety & fmri": _ids(6),
    "right amygdala | fear & fmri": set(),
}

DRILL_ROW, DRILL_COL = "right amygdala", "anxiety"


def main() -> int:
    corpus = load_corpus(FIXTURES / "corpus_amygdala_20.jsonl", source_label="amygdala-20")
    config = json.loads((FIXTURES / "inquiry_lateralization.json").read_text())
    synonyms = default_synonyms()
    inquiry = validate(config, synonyms=synonyms)

    engine_result = run_inquiry(inquiry, corpus)
    engine = {key: set(h.doc_ids) for key, h in engine_result.per_query.items()}
    oracle = ref_run(inquiry, corpus)

    if not (engine.keys() == oracle.keys() == HAND_COUNTS.keys()):
        raise SystemExit("cell key sets disagree; refusing to freeze")
    bad = [k for k in HAND_COUNTS if not (engine[k] == oracle[k] == HAND_COUNTS[k])]
    if bad:
        for k in bad:
            print(f"disagreement at {k}:")
            print(f"  engine={sorted(engine[k])}")
            print(f"  oracle={sorted(oracle[k])}")
            print(f"  hand  ={sorted(HAND_COUNTS[k])}")
        raise SystemExit("refusing to freeze")
    print("agreement verified: engine == oracle == hand enumeration (18 cells)")

    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "golden_result.json").write_text(
        json.dumps(engine_result.to_payload(), indent=2, ensure_ascii=False) + "\n"
    )
    (FIXTURES / "golden_overview.csv").write_text(format_csv(overview(engine_result)))
    goldens = {
        "golden_overview.json": overview(engine_result).to_payload(),
        "golden_histogram_right_amygdala_anxiety.json": cell_histogram(
            engine_result, DRILL_ROW, DRILL_COL
        ).to_payload(),
        "golden_documents_right_amygdala_anxiety.json": [
            h.to_payload() for h in cell_documents(engine_result, DRILL_ROW, DRILL_COL)
        ],
    }
    for name, data in goldens.items():
        (FIXTURES / name).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    print("wrote tests/fixtures/golden_* files")

    # Recorded API payloads, captured through the real HTTP surface.
    app = create_app(corpus=corpus, synonyms=synonyms)
    client = TestClient(app)
    created = client.post("/api/inquiries", json=config)
    created.raise_for_status()
    payload = created.json()
    handle = payload["handle"]["id"]
    hist = client.get(f"/api/inquiries/{handle}/cells/{DRILL_ROW}/{DRILL_COL}/histogram")
    hist.raise_for_status()
    docs = client.get(f"/api/inquiries/{handle}/cells/{DRILL_ROW}/{DRILL_COL}/documents")
    docs.raise_for_status()
    docs_2004 = client.get(
        f"/api/inquiries/{handle}/cells/{DRILL_ROW}/{DRILL_COL}/documents", params={"year": 2004}
    )
    docs_2004.raise_for_status()

    FRONTEND_FIXTURES.mkdir(parents=True, exist_ok=True)
    recordings = {
        "create_inquiry_response.json": payload,
        "histogram_right_amygdala_anxiety.json": hist.json(),
        "documents_right_amygdala_anxiety.json": docs.json(),
        "documents_right_amygdala_anxiety_2004.json": docs_2004.json(),
        "inquiry_config.json": config,
    }
    for name, data in recordings.items():
        (FRONTEND_FIXTURES / name).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {len(recordings)} recorded API payloads to frontend/fixtures/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
