"""Gateway surfaces: HTTP API and CLI."""

import json
import urllib.parse

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from litscope.cli import EXIT_CONFIG, EXIT_CORPUS, main
from litscope.service import create_app

FIXTURE_CORPUS = "tests/fixtures/corpus_amygdala_20.jsonl"
FIXTURE_CONFIG = "tests/fixtures/inquiry_lateralization.json"


@pytest.fixture(scope="module")
def client(amygdala_corpus, neuro_synonyms):
    app = create_app(corpus=amygdala_corpus, synonyms=neuro_synonyms)
    return TestClient(app)


def _cell_url(handle: str, row: str, col: str, leaf: str) -> str:
    quoted_row = urllib.parse.quote(row, safe="")
    quoted_col = urllib.parse.quote(col, safe="")
    return f"/api/inquiries/{handle}/cells/{quoted_row}/{quoted_col}/{leaf}"


class TestCreateInquiry:
    def test_fixture_config_returns_overview(self, client, lateralization_config):
        resp = client.post("/api/inquiries", json=lateralization_config)
        assert resp.status_code == 200
        body = resp.json()
        assert body["handle"]["id"]
        table = body["overview"]
        assert len(table["rows"]) == 3
        assert len(table["columns"]) == 6
        assert table["cells"]["right amygdala"]["anxiety"]["count"] == 3

    def test_empty_main_is_400_naming_field(self, client):
        resp = client.post("/api/inquiries", json={"main": ""})
        assert resp.status_code == 400
        assert resp.json()["detail"]["field"] == "main.central"

    def test_idempotent_handle(self, client, lateralization_config):
        first = client.post("/api/inquiries", json=lateralization_config).json()
        second = client.post("/api/inquiries", json=lateralization_config).json()
        assert first["handle"]["id"] == second["handle"]["id"]

    def test_no_corpus_is_503(self, neuro_synonyms):
        bare = TestClient(create_app(corpus=None, synonyms=neuro_synonyms))
        resp = bare.post("/api/inquiries", json={"main": "amygdala"})
        assert resp.status_code == 503

    def test_malformed_dimensions_is_400(self, client):
        resp = client.post("/api/inquiries", json={"main": "amygdala", "dimensions": 5})
        assert resp.status_code == 400
        assert resp.json()["detail"]["field"] == "dimensions"


class TestCellEndpoints:
    @pytest.fixture
    def handle(self, client, lateralization_config) -> str:
        return client.post("/api/inquiries", json=lateralization_config).json()["handle"]["id"]

    def test_histogram(self, client, handle):
        resp = client.get(_cell_url(handle, "right amygdala", "anxiety", "histogram"))
        assert resp.status_code == 200
        assert resp.json()["bins"] == {"1999": 2, "2004": 1}
        assert resp.json()["total"] == 3

    def test_documents_with_year_filter(self, client, handle):
        resp = client.get(_cell_url(handle, "right amygdala", "anxiety", "documents"), params={"year": 2004})
        assert resp.status_code == 200
        (hit,) = resp.json()
        assert hit["doc_id"] == "10000011"
        assert hit["link"] == "https://pubmed.ncbi.nlm.nih.gov/10000011/"

    def test_unknown_handle_404(self, client):
        resp = client.get(_cell_url("deadbeef", "amygdala", "(none)", "histogram"))
        assert resp.status_code == 404

    def test_unknown_cell_404_not_empty_success(self, client, handle):
        resp = client.get(_cell_url(handle, "amygdala", "bogus", "histogram"))
        assert resp.status_code == 404
        resp = client.get(_cell_url(handle, "amygdala", "bogus", "documents"))
        assert resp.status_code == 404

    def test_empty_cell_is_success(self, client, handle):
        resp = client.get(_cell_url(handle, "right amygdala", "fear", "documents"))
        assert resp.status_code == 200
        assert resp.json() == []


class TestCorpusInfo:
    def test_info(self, client):
        resp = client.get("/api/corpus/info")
        assert resp.status_code == 200
        assert resp.json() == {
            "label": "amygdala-20",
            "documents": 20,
            "years": {"begin": 1995, "end": 2019},
        }

    def test_info_without_corpus_503(self, neuro_synonyms):
        bare = TestClient(create_app(corpus=None, synonyms=neuro_synonyms))
        assert bare.get("/api/corpus/info").status_code == 503


class TestApiMatchesAggregates:
    def test_api_equals_direct_aggregation(self, client, lateralization_config, lateralization_inquiry, amygdala_corpus):
        from litscope.aggregate import overview, run_inquiry

        direct = overview(run_inquiry(lateralization_inquiry, amygdala_corpus)).to_payload()
        via_api = client.post("/api/inquiries", json=lateralization_config).json()["overview"]
        assert via_api == direct

    def test_cli_and_service_agree(self, client, lateralization_config):
        runner = CliRunner()
        result = runner.invoke(
            main,
            ["run", "--config", FIXTURE_CONFIG, "--corpus", FIXTURE_CORPUS, "--format", "flat-object"],
        )
        assert result.exit_code == 0
        via_cli = json.loads(result.stdout)["overview"]
        via_api = client.post("/api/inquiries", json=lateralization_config).json()["overview"]
        assert via_cli == via_api


class TestCli:
    def test_csv_output_matches_golden(self, fixtures_dir):
        runner = CliRunner()
        result = runner.invoke(
            main,
            ["run", "--config", FIXTURE_CONFIG, "--corpus", FIXTURE_CORPUS, "--format", "csv"],
        )
        assert result.exit_code == 0, result.output
        assert result.stdout == (fixtures_dir / "golden_overview.csv").read_text()

    def test_byte_stable_across_runs(self):
        runner = CliRunner()
        args = ["run", "--config", FIXTURE_CONFIG, "--corpus", FIXTURE_CORPUS, "--format", "flat-object"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout

    def test_missing_corpus_exit_code(self):
        runner = CliRunner()
        result = runner.invoke(
            main, ["run", "--config", FIXTURE_CONFIG, "--corpus", "no/such/file.jsonl"]
        )
        assert result.exit_code == EXIT_CORPUS

    def test_bad_config_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--config", str(bad), "--corpus", FIXTURE_CORPUS])
        assert result.exit_code == EXIT_CONFIG

    def test_invalid_inquiry_exit_code(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"main": "", "window": 6}))
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--config", str(cfg), "--corpus", FIXTURE_CORPUS])
        assert result.exit_code == EXIT_CONFIG

    def test_table_format(self):
        runner = CliRunner()
        result = runner.invoke(
            main,
            ["run", "--config", FIXTURE_CONFIG, "--corpus", FIXTURE_CORPUS, "--format", "table"],
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("main variant")
        assert "anxiety & fmri" in lines[0]
        assert any(line.startswith("right amygdala") for line in lines)

    def test_flag_overrides_beat_config(self):
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "run",
                "--config",
                FIXTURE_CONFIG,
                "--corpus",
                FIXTURE_CORPUS,
                "--format",
                "flat-object",
                "--full",
                "--after",
                "2000",
                "--before",
                "2010",
                "--fields",
                "title",
                "--window",
                "0",
            ],
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        echoed = payload["result"]["inquiry"]
        assert echoed["interval"] == {"begin": 2000, "end": 2010}
        assert echoed["fields"] == "title"
        assert echoed["window"] == 0

    def test_generate_then_run(self, tmp_path):
        runner = CliRunner()
        out = tmp_path / "syn.jsonl"
        gen_result = runner.invoke(
            main, ["generate", "--seed", "11", "--docs", "12", "--out", str(out)]
        )
        assert gen_result.exit_code == 0
        again = tmp_path / "syn2.jsonl"
        runner.invoke(main, ["generate", "--seed", "11", "--docs", "12", "--out", str(again)])
        assert out.read_text() == again.read_text()  # same seed, same corpus

        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"main": "a"}))
        run_result = runner.invoke(
            main, ["run", "--config", str(cfg), "--corpus", str(out), "--format", "csv"]
        )
        assert run_result.exit_code == 0
        assert run_result.stdout.startswith("row,column,count,percent")
