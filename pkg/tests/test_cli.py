import json
import shutil

import pytest

from skoshub.cli import main
from skoshub.ntriples import parse_ntriples

from conftest import FIXTURES, LISTING1_LINE

INVERSE_LINE = (
    "<http://zbw.eu/stw/descriptor/11971-0> "
    "<http://www.w3.org/2004/02/skos/core#exactMatch> "
    "<http://lod.gesis.org/thesoz/concept/10039068> ."
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_clean_fixture_exit_0(self, capsys):
        code, out, _ = run(["validate", str(FIXTURES / "mini_thesoz.nt")], capsys)
        assert code == 0
        assert out == ""

    def test_seeded_error_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.nt"
        bad.write_text(
            "<http://e.org/c:1> <http://www.w3.org/2004/02/skos/core#prefLabel> \"A\"@de .\n"
            "<http://e.org/c:1> <http://www.w3.org/2004/02/skos/core#prefLabel> \"B\"@de .\n"
        )
        code, out, _ = run(["validate", str(bad)], capsys)
        assert code == 1
        assert "DUPLICATE_PREFLABEL" in out

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run(["validate", "/no/such/file.nt"], capsys)
        assert code == 2
        assert "error" in err

    def test_json_report(self, tmp_path, capsys):
        bad = tmp_path / "bad.nt"
        bad.write_text("<http://e.org/c:1> <http://www.w3.org/2004/02/skos/core#exactMatch> \"x\" .\n")
        code, out, _ = run(["validate", "--report-json", str(bad)], capsys)
        assert code == 1
        records = json.loads(out)
        assert any(r["code"] == "MAPPING_NON_CONCEPT" for r in records)


class TestConvert:
    def convert(self, capsys, tmp_path, crosswalk="listing1.xwalk", *flags):
        out_path = tmp_path / "mappings.nt"
        code, out, err = run(
            [
                "convert",
                "--source", str(FIXTURES / "mini_thesoz.nt"),
                "--target", str(FIXTURES / "mini_stw.nt"),
                "--crosswalk", str(FIXTURES / crosswalk),
                "--output", str(out_path),
                *flags,
            ],
            capsys,
        )
        return code, out_path, out, err

    def test_listing1_trio_exact_output(self, capsys, tmp_path):
        code, out_path, report, _ = self.convert(capsys, tmp_path)
        assert code == 0
        assert out_path.read_bytes() == (LISTING1_LINE + "\n" + INVERSE_LINE + "\n").encode()
        assert "XWALK_OK" in report

    def test_no_inverses_flag(self, capsys, tmp_path):
        code, out_path, _, _ = self.convert(capsys, tmp_path, "listing1.xwalk", "--no-inverses")
        assert code == 0
        assert out_path.read_bytes() == (LISTING1_LINE + "\n").encode()

    def test_unresolvable_line_partial_output_exit_1(self, capsys, tmp_path):
        code, out_path, report, _ = self.convert(capsys, tmp_path, "full.xwalk")
        assert code == 1
        assert "XWALK_UNRESOLVED" in report
        g, errors = parse_ntriples(out_path.read_bytes())
        assert errors == []
        assert len(g) > 0  # successful subset still written

    def test_missing_input_exit_2(self, capsys, tmp_path):
        code, _, _, err = self.convert(capsys, tmp_path, "absent.xwalk")
        assert code == 2

    def test_deterministic_output(self, capsys, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        a.mkdir()
        b.mkdir()
        _, p1, r1, _ = self.convert(capsys, a, "full.xwalk")
        _, p2, r2, _ = self.convert(capsys, b, "full.xwalk")
        assert p1.read_bytes() == p2.read_bytes()
        assert r1 == r2

    def test_promote_policy_flag(self, capsys, tmp_path):
        xwalk = tmp_path / "np.xwalk"
        xwalk.write_text(
            "#xwalk source=thesoz target=stw source-lang=de target-lang=de\n"
            "Wanderung\t=\tArbeitsmigration\n"
        )
        shutil.copy(xwalk, tmp_path / "np2.xwalk")
        out_path = tmp_path / "out.nt"
        code, out, _ = run(
            [
                "convert",
                "--source", str(FIXTURES / "mini_thesoz.nt"),
                "--target", str(FIXTURES / "mini_stw.nt"),
                "--crosswalk", str(xwalk),
                "--output", str(out_path),
                "--nonpreferred", "promote",
            ],
            capsys,
        )
        assert code == 0
        assert "XWALK_PROMOTED" in out
        g, _ = parse_ntriples(out_path.read_bytes())
        assert len(g) == 2  # forward + inverse


@pytest.fixture()
def convert_fixtures(tmp_path, capsys):
    return tmp_path


class TestMerge:
    def test_merged_size_is_sum_of_parts(self, tmp_path, capsys, fixture_store):
        store, _ = fixture_store
        out = tmp_path / "merged.nt"
        code, _, _ = run(["merge", str(FIXTURES / "manifest.json"), "--output", str(out)], capsys)
        assert code == 0
        g, errors = parse_ntriples(out.read_bytes())
        assert errors == []
        assert len(g) == sum(len(r.graph) for r in store.registrations) + 2

    def test_empty_manifest(self, tmp_path, capsys):
        manifest = tmp_path / "m.json"
        manifest.write_text("{}")
        out = tmp_path / "merged.nt"
        code, _, _ = run(["merge", str(manifest), "--output", str(out)], capsys)
        assert code == 0
        assert out.read_bytes() == b""

    def test_bad_manifest_exit_2(self, tmp_path, capsys):
        code, _, err = run(["merge", "/no/such.json", "--output", str(tmp_path / "o.nt")], capsys)
        assert code == 2


class TestQuery:
    def test_exact_match_pattern(self, capsys):
        code, out, _ = run(
            ["query", str(FIXTURES / "manifest.json"), "--predicate", "skos:exactMatch"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert LISTING1_LINE in lines
        assert len(lines) == 2

    def test_no_matches_empty_exit_0(self, capsys):
        code, out, _ = run(
            ["query", str(FIXTURES / "manifest.json"), "--predicate", "skos:closeMatch"],
            capsys,
        )
        assert code == 0
        assert out == ""

    def test_malformed_term_exit_2(self, capsys):
        code, _, err = run(
            ["query", str(FIXTURES / "manifest.json"), "--predicate", '"a literal"'],
            capsys,
        )
        assert code == 2

    def test_manifest_prefix_expansion(self, capsys):
        code, out, _ = run(
            [
                "query",
                str(FIXTURES / "manifest.json"),
                "--subject", "thesoz:concept/10039068",
                "--predicate", "skos:exactMatch",
            ],
            capsys,
        )
        assert code == 0
        assert out.strip() == LISTING1_LINE


class TestInvocation:
    def test_unknown_subcommand_exit_2(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_help_available(self, capsys):
        assert main(["convert", "--help"]) == 0
        out = capsys.readouterr().out
        assert "--nonpreferred" in out
