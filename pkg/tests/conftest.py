import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # reference.py, gen.py

from litscope.corpus import load_corpus
from litscope.inquiry import validate
from litscope.service import default_synonyms

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def amygdala_corpus():
    return load_corpus(FIXTURES / "corpus_amygdala_20.jsonl", source_label="amygdala-20")


@pytest.fixture(scope="session")
def neuro_synonyms():
    return default_synonyms()


@pytest.fixture(scope="session")
def lateralization_config() -> dict:
    return json.loads((FIXTURES / "inquiry_lateralization.json").read_text())


@pytest.fixture(scope="session")
def lateralization_inquiry(lateralization_config, neuro_synonyms):
    return validate(lateralization_config, synonyms=neuro_synonyms)
