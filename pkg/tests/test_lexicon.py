"""Lexicon loading and synset lookup."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from litscope.lexicon import LexiconError, SynonymSet, load_synonyms, make_synonym_set, synset


@pytest.fixture
def lexicon_file(tmp_path):
    def write(payload) -> str:
        path = tmp_path / "lex.json"
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return write


class TestLoadSynonyms:
    def test_basic_entry(self, lexicon_file):
        sy = load_synonyms(lexicon_file({"amygdala": ["amygdalar", "amygdalae"]}))
        assert sy.entries == {"amygdala": ("amygdalar", "amygdalae")}

    def test_empty_file(self, lexicon_file):
        assert load_synonyms(lexicon_file("")).entries == {}
        assert load_synonyms(lexicon_file({})).entries == {}

    def test_alternative_equal_to_key_rejected(self, lexicon_file):
        with pytest.raises(LexiconError):
            load_synonyms(lexicon_file({"fmri": ["fMRI"]}))  # same token after normalization

    def test_duplicate_key_after_normalization_rejected(self, lexicon_file):
        path = lexicon_file('{"fMRI": ["functional mri"], "FMRI": ["other"]}')
        with pytest.raises(LexiconError) as exc:
            load_synonyms(path)
        assert "duplicate" in str(exc.value)

    def test_multiword_key_rejected(self, lexicon_file):
        with pytest.raises(LexiconError):
            load_synonyms(lexicon_file({"left amygdala": ["la"]}))

    def test_malformed_entry_names_key(self, lexicon_file):
        with pytest.raises(LexiconError) as exc:
            load_synonyms(lexicon_file({"fmri": "not-a-list"}))
        assert "fmri" in str(exc.value)

    def test_invalid_json(self, lexicon_file):
        with pytest.raises(LexiconError):
            load_synonyms(lexicon_file("{broken"))

    def test_entries_normalized(self, lexicon_file):
        sy = load_synonyms(lexicon_file({"fMRI": ["Functional MRI"]}))
        assert sy.entries == {"fmri": ("functional mri",)}

    def test_duplicate_alternatives_collapse(self, lexicon_file):
        sy = load_synonyms(lexicon_file({"fear": ["fright", "Fright"]}))
        assert sy.entries["fear"] == ("fright",)


class TestSynset:
    def test_known_word(self):
        sy = make_synonym_set({"amygdala": ["amygdalar", "amygdalae"]})
        assert synset("amygdala", sy) == ["amygdala", "amygdalar", "amygdalae"]

    def test_absent_word_is_identity(self):
        assert synset("fmri", SynonymSet.empty()) == ["fmri"]

    def test_single_alternative(self):
        sy = make_synonym_set({"depression": ["depressive"]})
        assert synset("depression", sy) == ["depression", "depressive"]

    def test_word_always_first(self, neuro_synonyms):
        for word in list(neuro_synonyms.entries) + ["absent"]:
            assert synset(word, neuro_synonyms)[0] == word

    @given(st.text(alphabet="abcxyz", min_size=1, max_size=6))
    def test_size_law(self, word):
        sy = make_synonym_set({"abc": ["abd", "abe"]})
        expected = 1 + len(sy.entries.get(word, ()))
        result = synset(word, sy)
        assert len(result) == expected
        assert len(set(result)) == len(result)

    def test_stable_order(self, neuro_synonyms):
        first = synset("fmri", neuro_synonyms)
        assert first == synset("fmri", neuro_synonyms)
        assert first == ["fmri", "functional magnetic resonance imaging", "functional mri"]
