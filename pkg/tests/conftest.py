import json
import random
from pathlib import Path

import pytest

from app.models import DerivationDocument, StructureDocument
from app.nmatrix import get_system

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tm():
    return get_system("tm", "det")


@pytest.fixture
def tm_nd():
    return get_system("tm", "nd")


@pytest.fixture
def rng():
    return random.Random(1234)


def load_structure(name: str, sig=None):
    data = json.loads((FIXTURES / "structures" / name).read_text(encoding="utf-8"))
    return StructureDocument.model_validate(data).to_structure(sig)


def load_derivation(name: str) -> DerivationDocument:
    data = json.loads((FIXTURES / "proofs" / name).read_text(encoding="utf-8"))
    return DerivationDocument.model_validate(data)
