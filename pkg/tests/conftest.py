import pytest

from textileguess.backends import MockEmbeddingBackend
from textileguess.catalog import Catalog, TextileSample, FibreCategory, build_embedding_store


def make_sample(sample_id: int, name: str, category: FibreCategory, words: dict) -> TextileSample:
    """Sample whose field content is built from caller-chosen tokens."""
    fields = {
        "characteristic": words["characteristic"],
        "sample_book_info": words.get("sample_book_info", ""),
        "composition": words["composition"],
        "raw_material": words["raw_material"],
        "fibre_characteristic": words["fibre_characteristic"],
        "fabric": words["fabric"],
        "produce_method": words["produce_method"],
        "fabric_characteristic": words["fabric_characteristic"],
        "application": words["application"],
    }
    return TextileSample(id=sample_id, name=name, fibre_category=category, template_fields=fields)


@pytest.fixture(scope="session")
def disjoint_catalog() -> Catalog:
    """Three samples whose names and field tokens are pairwise disjoint.

    The rendered descriptions still share the template's glue words ("is",
    "a", "produced", ...); the sample-specific vocabulary never overlaps.
    """
    one = make_sample(
        1,
        "Alphacloth",
        FibreCategory.NATURAL,
        {
            "characteristic": "grainy bumpy",
            "composition": "alphafibre",
            "raw_material": "alphaplant stems",
            "fibre_characteristic": "crunchy strands",
            "fabric": "Alphaband",
            "produce_method": "looped tightly",
            "fabric_characteristic": "ridged everywhere",
            "application": "sacks",
        },
    )
    two = make_sample(
        2,
        "Betaweave",
        FibreCategory.ANIMAL,
        {
            "characteristic": "fluffy warm",
            "composition": "betafibre",
            "raw_material": "betabeast coats",
            "fibre_characteristic": "curly filaments",
            "fabric": "Betafelt",
            "produce_method": "pressed flat",
            "fabric_characteristic": "springy throughout",
            "application": "rugs",
        },
    )
    three = make_sample(
        3,
        "Gammasheet",
        FibreCategory.SYNTHETIC,
        {
            "characteristic": "glossy slick",
            "composition": "gammapolymer",
            "raw_material": "gammaresin pellets",
            "fibre_characteristic": "smooth threads",
            "fabric": "Gammafilm",
            "produce_method": "extruded thinly",
            "fabric_characteristic": "shiny overall",
            "application": "covers",
        },
    )
    return Catalog(samples=(one, two, three))


@pytest.fixture(scope="session")
def mock_backend() -> MockEmbeddingBackend:
    return MockEmbeddingBackend(dim=64)


@pytest.fixture(scope="session")
def disjoint_store(disjoint_catalog, mock_backend):
    return build_embedding_store(disjoint_catalog, mock_backend)
