import json
import subprocess
import sys

import pytest

from keylift.cli import main
from keylift.fixtures import write_fixtures


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    root = tmp_path_factory.mktemp("fx")
    write_fixtures(root, 20)
    assert main(["index", "build", str(root / "corpus"), "-o", str(root / "index.klix")]) == 0
    return root


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_index_build_warns_small_corpus(fx, tmp_path, caplog):
    out = tmp_path / "i.klix"
    assert main(["index", "build", str(fx / "corpus"), "-o", str(out)]) == 0
    assert out.read_bytes()[:4] == b"KLIX"
    assert "unreliable" in caplog.text


def test_counts_and_pmi(fx, capsys):
    code, out = run(capsys, "counts", fx / "index.klix", "--phrase", "Zebrafish")
    assert code == 0 and out.strip().isdigit()
    df = int(out)
    code, out = run(capsys, "counts", fx / "index.klix", "--phrase", "zebrafish", "--with", "zebrafish")
    assert int(out) == df
    code, out = run(capsys, "pmi", fx / "index.klix", "zebrafish", "qqqq")
    assert out.strip() == "UNDEFINED"
    code, out = run(capsys, "pmi", fx / "index.klix", "zebrafish", "zebrafish")
    assert float(out) > 0


def test_pmi_neg_inf_marker(tmp_path, capsys):
    corpus = tmp_path / "c"
    corpus.mkdir()
    (corpus / "a.txt").write_text("alpha")
    (corpus / "b.txt").write_text("beta")
    main(["index", "build", str(corpus), "-o", str(tmp_path / "i.klix")])
    capsys.readouterr()
    code, out = run(capsys, "pmi", tmp_path / "i.klix", "alpha", "beta", "--pmi-floor", "-4")
    assert out.strip() == "-4.0 NEG_INF"


def test_extract_enhance_cluster_evaluate(fx, tmp_path, capsys):
    idx = fx / "index.klix"
    ext = tmp_path / "doc003.json"
    assert main(["extract", str(idx), str(fx / "corpus" / "doc003.txt"), "-k", "10", "-o", str(ext)]) == 0
    data = json.loads(ext.read_text())
    assert data["ordering"] == "extractor_confidence" and len(data["keyphrases"]) == 10
    assert set(data["keyphrases"][0]) == {"text", "rank", "score"}

    enh = tmp_path / "enh.json"
    assert main(["enhance", str(idx), str(ext), "--order", "--prune", "threshold:2", "-o", str(enh)]) == 0
    data = json.loads(enh.read_text())
    assert data["ordering"] == "informativeness"
    hits = [kp["hit_count"] for kp in data["keyphrases"]]
    assert hits == sorted(hits, reverse=True) and min(hits) >= 2

    cl = tmp_path / "cl.json"
    assert main(["cluster", str(idx), str(ext), "--k", "3", "--keep", "drop-smallest:1,min-second:2", "-o", str(cl)]) == 0
    data = json.loads(cl.read_text())
    sizes = [len(c) for c in data["clusters"]]
    assert len(sizes) == 3 and sizes == sorted(sizes, reverse=True) and sum(sizes) == 10
    assert "kept" in data

    rep = tmp_path / "rep.json"
    assert main(["evaluate", str(idx), str(ext), "--gold", str(fx / "gold" / "doc003.key"),
                 "--doc", str(fx / "corpus" / "doc003.txt"), "--all-variants", "-o", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert {"full", "threshold", "largest_cluster", "prefix_5"} <= set(data["variants"])
    assert data["gold_in_text_ratio"] is not None

    code, out = run(capsys, "aggregate", rep, rep)
    assert code == 0
    assert "Average over 2 documents" in out


def test_exit_codes(fx, tmp_path, capsys):
    idx = fx / "index.klix"
    assert main(["counts", str(tmp_path / "missing.klix"), "--phrase", "x"]) == 2
    corrupt = tmp_path / "corrupt.klix"
    corrupt.write_bytes(b"NOPE" + idx.read_bytes()[4:])
    assert main(["counts", str(corrupt), "--phrase", "x"]) == 2
    raw = idx.read_bytes()
    # fingerprint string follows magic + version byte + u16 length
    mismatched = tmp_path / "fp.klix"
    mismatched.write_bytes(raw[:7] + b"X" + raw[8:])
    assert main(["counts", str(mismatched), "--phrase", "x"]) == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["enhance", str(idx), str(bad)]) == 3
    assert main(["cluster", str(idx), str(tmp_path / "nope.json")]) == 3
    assert main(["extract", str(idx), str(fx / "corpus" / "doc000.txt"), "-k", "2"]) == 1
    capsys.readouterr()


def test_pipeline_exit_codes(fx, tmp_path, capsys):
    out = tmp_path / "out"
    code, stdout = run(capsys, "pipeline", fx / "index.klix", "-o", out)
    assert code == 0 and stdout.strip() == "0 documents"
    assert main(["pipeline", str(tmp_path / "none.klix"), str(fx / "corpus" / "doc000.txt"), "-o", str(out)]) == 2


def test_pipeline_composition_and_determinism(fx, tmp_path, capsys):
    idx = fx / "index.klix"
    doc = fx / "corpus" / "doc004.txt"
    gold = fx / "gold" / "doc004.key"
    runs = []
    for name in ("run1", "run2"):
        out = tmp_path / name
        assert main(["pipeline", str(idx), str(doc), "--gold", str(gold), "-o", str(out), "--jobs", "2"]) == 0
        runs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert runs[0] == runs[1]
    assert sorted(runs[0]) == [
        "doc004.clusters.json", "doc004.enhanced.json", "doc004.extracted.json", "doc004.report.json"]

    single = tmp_path / "single"
    single.mkdir()
    main(["extract", str(idx), str(doc), "-o", str(single / "e.json")])
    main(["enhance", str(idx), str(single / "e.json"), "--order", "-o", str(single / "h.json")])
    main(["cluster", str(idx), str(single / "e.json"), "-o", str(single / "c.json")])
    main(["evaluate", str(idx), str(single / "e.json"), "--gold", str(gold), "--doc", str(doc),
          "--all-variants", "-o", str(single / "r.json")])
    assert runs[0]["doc004.extracted.json"] == (single / "e.json").read_bytes()
    assert runs[0]["doc004.enhanced.json"] == (single / "h.json").read_bytes()
    assert runs[0]["doc004.clusters.json"] == (single / "c.json").read_bytes()
    assert runs[0]["doc004.report.json"] == (single / "r.json").read_bytes()
    capsys.readouterr()


def test_seed_fixtures_and_console_script(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "keylift.cli", "seed-fixtures", str(tmp_path / "s"), "--docs", "6", "--index"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(list((tmp_path / "s" / "corpus").iterdir())) == 6
    assert (tmp_path / "s" / "index.klix").exists()
