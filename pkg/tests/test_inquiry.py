"""Inquiry validation, variant generation, expansion, and the lattice."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from litscope.inquiry import (
    NONE_COLUMN,
    CrossQuery,
    Dimension,
    Inquiry,
    InquiryValidationError,
    MainQuery,
    QueryTerm,
    column_keys,
    cross_queries,
    expand_term,
    main_variants,
    validate,
)
from litscope.lexicon import SynonymSet, make_synonym_set

import gen
from reference import ref_lattice


@pytest.fixture
def amygdala_synonyms():
    return make_synonym_set({"amygdala": ["amygdalar", "amygdalae"], "left": ["l"]})


class TestValidate:
    def test_defaults(self):
        inq = validate({"main": "amygdala"})
        assert inq.window == 6
        assert inq.fields == "all"
        assert inq.interval is None
        assert inq.main.central.words == ("amygdala",)

    def test_empty_main_rejected(self):
        with pytest.raises(InquiryValidationError) as exc:
            validate({"main": ""})
        assert exc.value.field == "main.central"

    def test_terms_normalized(self):
        inq = validate({"main": "Left Amygdala"})
        assert inq.main.central.words == ("left", "amygdala")

    def test_duplicate_dimension_labels_rejected(self):
        with pytest.raises(InquiryValidationError) as exc:
            validate(
                {
                    "main": "amygdala",
                    "dimensions": [
                        {"label": "moods", "terms": ["anxiety"]},
                        {"label": "moods", "terms": ["fear"]},
                    ],
                }
            )
        assert "label" in exc.value.field

    def test_negative_window_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate({"main": "amygdala", "window": -1})

    def test_window_above_maximum_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate({"main": "amygdala", "window": 11})

    def test_bad_fields_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate({"main": "amygdala", "fields": "keywords"})

    def test_interval_parsed(self):
        inq = validate({"main": "a", "interval": {"begin": 1980, "end": 2018}})
        assert (inq.interval.begin, inq.interval.end) == (1980, 2018)

    def test_inverted_interval_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate({"main": "a", "interval": {"begin": 2018, "end": 1980}})

    def test_same_term_in_two_dimensions_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate(
                {
                    "main": "amygdala",
                    "dimensions": [
                        {"label": "a", "terms": ["fear"]},
                        {"label": "b", "terms": ["fear"]},
                    ],
                }
            )

    def test_empty_dimension_term_rejected(self):
        with pytest.raises(InquiryValidationError):
            validate({"main": "a", "dimensions": [{"label": "x", "terms": ["!!"]}]})


class TestMainVariants:
    def test_preceding_words(self):
        mq = MainQuery(QueryTerm(("amygdala",)), preceding=("left", "right"))
        assert [v.text for v in main_variants(mq)] == [
            "amygdala",
            "left amygdala",
            "right amygdala",
        ]

    def test_bare_central(self):
        mq = MainQuery(QueryTerm(("amygdala",)))
        assert [v.text for v in main_variants(mq)] == ["amygdala"]

    def test_succeeding_words(self):
        mq = MainQuery(QueryTerm(("amygdala",)), succeeding=("lesion",))
        assert [v.text for v in main_variants(mq)] == ["amygdala", "amygdala lesion"]

    def test_order_bare_then_preceding_then_succeeding(self):
        mq = MainQuery(QueryTerm(("x",)), preceding=("p1", "p2"), succeeding=("s1",))
        assert [v.text for v in main_variants(mq)] == ["x", "p1 x", "p2 x", "x s1"]


class TestExpandTerm:
    def test_expansion_example(self, amygdala_synonyms):
        sy = make_synonym_set({"amygdala": ["amygdalar", "amygdalae"]})
        variants = expand_term(QueryTerm(("left", "amygdala")), sy)
        assert [" ".join(v.words) for v in variants] == [
            "left amygdala",
            "left amygdalar",
            "left amygdalae",
        ]

    def test_identity_without_entries(self):
        term = QueryTerm(("novel", "term"))
        variants = expand_term(term, SynonymSet.empty())
        assert len(variants) == 1
        assert variants[0].words == term.words

    def test_product_of_synsets(self, amygdala_synonyms):
        variants = expand_term(QueryTerm(("left", "amygdala")), amygdala_synonyms)
        assert len(variants) == 6  # 2 x 3
        assert variants[0].words == ("left", "amygdala")  # original first

    def test_multiword_alternative_splices(self):
        sy = make_synonym_set({"fmri": ["functional mri"]})
        variants = expand_term(QueryTerm(("fmri", "study")), sy)
        assert [v.words for v in variants] == [
            ("fmri", "study"),
            ("functional", "mri", "study"),
        ]
        # position structure keeps the splice in one slot
        assert variants[1].parts == (("functional", "mri"), ("study",))

    @given(st.lists(st.sampled_from(["abc", "abd", "xyz", "pqr"]), min_size=1, max_size=3))
    def test_size_law(self, words):
        sy = make_synonym_set({"abc": ["one", "two"], "xyz": ["three"]})
        sizes = {"abc": 3, "xyz": 2}
        expected = 1
        for w in words:
            expected *= sizes.get(w, 1)
        assert len(expand_term(QueryTerm(tuple(words)), sy)) == expected


class TestCrossQueries:
    def _inquiry(self, main, dims, **kw):
        return Inquiry(
            main=main,
            dimensions=tuple(Dimension(label, tuple(QueryTerm.parse(t) for t in terms)) for label, terms in dims),
            **kw,
        )

    def test_three_single_term_dimensions_form_lattice_of_eight(self):
        inq = self._inquiry(
            MainQuery(QueryTerm(("mq",))),
            [("a1", ["rq1"]), ("a2", ["rq2"]), ("a3", ["rq3"])],
        )
        cqs = cross_queries(inq)
        assert len(cqs) == 8
        assert [cq.col_key for cq in cqs] == [
            NONE_COLUMN,
            "rq1",
            "rq2",
            "rq3",
            "rq1 & rq2",
            "rq1 & rq3",
            "rq2 & rq3",
            "rq1 & rq2 & rq3",
        ]

    def test_no_dimensions(self):
        inq = self._inquiry(MainQuery(QueryTerm(("mq",))), [])
        cqs = cross_queries(inq)
        assert len(cqs) == 1
        assert cqs[0] == CrossQuery(QueryTerm(("mq",)), ())

    def test_use_case_lattice_of_eighteen(self):
        inq = self._inquiry(
            MainQuery(QueryTerm(("amygdala",)), preceding=("left", "right")),
            [("moods", ["anxiety", "fear"]), ("imaging", ["fmri"])],
        )
        cqs = cross_queries(inq)
        # 3 variants x (1 + 2 + 1 + 2x1)
        assert len(cqs) == 18
        assert len({cq.key for cq in cqs}) == 18

    def test_conjunct_labels_subset_and_unique(self):
        inq = self._inquiry(
            MainQuery(QueryTerm(("m",))),
            [("d1", ["t1", "t2"]), ("d2", ["u1"]), ("d3", ["v1", "v2", "v3"])],
        )
        labels = {"d1", "d2", "d3"}
        for cq in cross_queries(inq):
            used = [label for label, _ in cq.conjuncts]
            assert set(used) <= labels
            assert len(used) == len(set(used))

    def test_column_keys_match_lattice_order(self, lateralization_inquiry):
        cqs = cross_queries(lateralization_inquiry)
        first_row = lateralization_inquiry.main.central.text
        cols_from_lattice = [cq.col_key for cq in cqs if cq.row_key == first_row]
        assert column_keys(lateralization_inquiry) == cols_from_lattice

    def test_determinism(self, lateralization_inquiry):
        first = [cq.key for cq in cross_queries(lateralization_inquiry)]
        second = [cq.key for cq in cross_queries(lateralization_inquiry)]
        assert first == second


class TestLatticeCountLaw:
    def test_random_inquiries_match_brute_force(self):
        rng = random.Random(20240215)
        for _ in range(100):
            corpus = gen.random_corpus(rng, max_docs=5)
            vocab = gen.corpus_vocab(corpus)
            inq = gen.random_inquiry(rng, vocab, SynonymSet.empty())
            engine = cross_queries(inq)
            reference = ref_lattice(inq)
            assert len(engine) == len(reference)
            assert {cq.key for cq in engine} == {key for *_, key in reference}

    def test_power_set_size_for_single_term_dimensions(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(0, 5)
            dims = tuple(
                Dimension(f"d{k}", (QueryTerm((f"t{k}",)),)) for k in range(n)
            )
            inq = Inquiry(main=MainQuery(QueryTerm(("m",))), dimensions=dims)
            assert len(cross_queries(inq)) == 2**n
