import json
import subprocess
import sys

from e8bounds import cli
from e8bounds.graph import branched_triangular, deserialize, serialize


def run_cli(capsys, *args):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_resolve_prints_e8_graph(capsys):
    code, out, _ = run_cli(capsys, "resolve", "2", "3", "5")
    assert code == 0
    cfg = deserialize(out)
    assert cfg.n == 8
    assert all(w == -2 for _, w in cfg.vertices)


def test_resolve_rejects_noncoprime(capsys):
    code, out, err = run_cli(capsys, "resolve", "2", "3", "4")
    assert code == 1
    assert "coprime" in err


def test_resolve_is_byte_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "resolve", "2", "3", "17")
    _, out2, _ = run_cli(capsys, "resolve", "2", "3", "17")
    assert out1 == out2


def test_resolve_json_carries_seifert_record(capsys):
    code, out, _ = run_cli(capsys, "resolve", "2", "3", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["seifert"] == {"b0": 2, "legs": [[2, 1], [3, 2], [5, 4]]}


def test_invariants_json(capsys):
    code, out, err = run_cli(capsys, "invariants", "2", "3", "7", "11")
    assert code == 0
    payload = json.loads(out)
    assert payload["d"] == 2
    assert payload["rank"] == 8
    assert payload["mu_bar"] == -1
    assert payload["feasible_b2_negdef"] == [8]


def test_form_on_graph_file(tmp_path, capsys):
    path = tmp_path / "e8.graph"
    _, out, _ = run_cli(capsys, "resolve", "2", "3", "5")
    path.write_text(out, encoding="utf-8")
    code, out, _ = run_cli(capsys, "form", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["determinant"] == 1
    assert payload["negative_e8"]["is_negative_e8"] is True


def test_blowdown_and_errors(tmp_path, capsys):
    path = tmp_path / "chain.graph"
    path.write_text("v a -2\nv b -1\nv c -2\ne a b 1\ne b c 1\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "blowdown", str(path), "b")
    assert code == 0
    cfg = deserialize(out)
    assert cfg.weight("a") == -1 and cfg.label("a", "c") == 1
    code, _, err = run_cli(capsys, "blowdown", str(path), "a")
    assert code == 1 and "weight -1" in err


def test_normalize_boundary_pipeline(tmp_path, capsys):
    cfg = branched_triangular(1, 2, 5, 3, 1, 1)
    path = tmp_path / "config.graph"
    path.write_text(serialize(cfg), encoding="utf-8")
    trace_path = tmp_path / "trace.jsonl"
    code, out, _ = run_cli(capsys, "normalize", str(path), "--trace", str(trace_path))
    assert code == 0
    star = deserialize(out)
    assert star.weight("c") == -1
    assert trace_path.exists() and len(trace_path.read_text().splitlines()) == 2
    code, out, _ = run_cli(capsys, "boundary", str(path))
    assert code == 0 and out.strip() == "7 8 45"


def test_malformed_graph_file_gives_parse_exit(tmp_path, capsys):
    path = tmp_path / "bad.graph"
    path.write_text("nonsense\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "boundary", str(path))
    assert code == 1 and "unknown record" in err


def test_search_csv_and_json(capsys):
    code, out, _ = run_cli(capsys, "search", "1", "2", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,a,b,c,coprime"
    assert "1,1,2,5,1" in lines
    code, out, _ = run_cli(capsys, "--jobs", "1", "search", "7", "2", "2", "--format", "json")
    assert code == 0
    assert {"family": 7, "a": 2, "b": 1, "c": 5, "coprime": True} in json.loads(out)


def test_tables_csv_round_trip(capsys):
    code, out, _ = run_cli(capsys, "tables", "3", "--bmax", "120")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "a,b,c,row,i"
    parsed = {tuple(map(int, line.split(",")[:3])) for line in lines[1:]}
    code, out2, _ = run_cli(capsys, "tables", "3", "--bmax", "120")
    assert out == out2
    from e8bounds.search import solve_family

    expected = {(s.a, s.b, s.c) for s in solve_family(1, 6, 120) if s.gcd_ok}
    assert parsed == expected


def test_tables_2_marks_findings(capsys):
    code, out, _ = run_cli(capsys, "tables", "2", "--imax", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p,q,r,row,i,source_a,source_b,source_c,matched"
    kinds = {line.rsplit(",", 1)[1] for line in lines[1:]}
    assert kinds == {"printed", "corrected"}


def test_tables_outdir_writes_csv_and_figure(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "tables", "1", "--kmax", "2", "--outdir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "table1.csv").exists()
    figure = tmp_path / "table1_example.png"
    assert figure.exists() and figure.stat().st_size > 1000


def test_report_bundle(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "report", "--outdir", str(tmp_path), "--kmax", "1", "--imax", "2",
        "--bmax", "60", "--kmax-families", "1",
    )
    assert code == 0
    manifest = json.loads((tmp_path / "report_manifest.json").read_text())
    for name in manifest["files"]:
        assert (tmp_path / name).exists()
    assert any(name.endswith(".png") for name in manifest["files"])
    assert (tmp_path / "invariants_families.csv").read_text().splitlines()[0].startswith("family,")


def test_outdir_env_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_OUTDIR, str(tmp_path))
    code, _, _ = run_cli(capsys, "tables", "3", "--bmax", "60")
    assert code == 0
    assert (tmp_path / "table3.csv").exists()


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "e8bounds.cli", "resolve", "2", "3", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("v c -2")


def test_usage_error_exit_code(capsys):
    assert cli.main(["resolve"]) == 1
    assert cli.main(["no-such-command"]) == 1
