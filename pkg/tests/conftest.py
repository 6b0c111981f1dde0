from pathlib import Path

import pytest

from termcoder import TermCoder, Terminology, load_terminology
from termcoder.textprep import load_word_list

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Worked-example texts used across the suite.
D1_EN = "anaphylactic shock (hypotension + cutaneous rash) 1 hour after taking the drug"
D1_IT = "Shock anafilattico (ipotensione + rash cutaneo) 1 h dopo assunzione x os del farmaco"
D2_IT = (
    "gonfiore in sede di vaccinazione sx dal 5/11, febbre meno di 39,5 dal 21/11, "
    "vescicole, bolle presso la guancia dal 10/11"
)
D3_IT = "Reazione locale estesa, dolore locale; cefalea e febbre per due giorni"
GLOTTIS_TONGUE_IT = "edema della glottide-lingua, parestesia al volto, dispnea"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def en_stops():
    return load_word_list(DATA_DIR / "stopwords_en.txt")


@pytest.fixture(scope="session")
def it_stops():
    return load_word_list(DATA_DIR / "stopwords_it.txt")


@pytest.fixture(scope="session")
def en_terminology(en_stops) -> Terminology:
    return load_terminology(DATA_DIR / "terminology_en_toy.csv", stop_words=en_stops)


@pytest.fixture(scope="session")
def it_terminology(it_stops) -> Terminology:
    return load_terminology(DATA_DIR / "terminology_it_toy.csv", stop_words=it_stops)


@pytest.fixture(scope="session")
def en_coder(en_terminology) -> TermCoder:
    return TermCoder().fit(en_terminology)


@pytest.fixture(scope="session")
def it_coder(it_terminology) -> TermCoder:
    return TermCoder().fit(it_terminology)


@pytest.fixture(scope="session")
def d1_en_coder(en_terminology, en_stops) -> TermCoder:
    """Minimal D1 fixture: the two anaphylaxis terms plus Hypotension."""
    return TermCoder().fit(subset(en_terminology, "10002199", "10054844", "10021097"))


def subset(terminology: Terminology, *llt_ids: str) -> Terminology:
    return Terminology(
        [terminology[i] for i in llt_ids],
        stop_words=terminology.stop_words,
        fold_diacritics=terminology.fold_diacritics,
    )
