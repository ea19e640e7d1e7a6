import json
import subprocess
import sys

import numpy as np
import pytest

from guesscheck.cli import main
from guesscheck.io import dumps_records, read_bits, write_bits

CODE = ["--k", "16", "--delta", "1", "--c", "2", "--ell", "4"]


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_encode_example(tmp_path, capsys):
    (tmp_path / "m.txt").write_text("1110000011010001\n")
    out = tmp_path / "x.txt"
    code, text = run(["encode", *CODE, "--input", str(tmp_path / "m.txt"), "--output", str(out)],
                     capsys)
    assert code == 0 and json.loads(text)["length"] == 32
    assert out.read_text() == "1110000011010001" + "0000110000111111" + "\n"
    code, text = run(["encode", *CODE, "--input", str(tmp_path / "m.txt"), "--precoded"], capsys)
    assert text.strip() == "111000001101000100100111"


def test_decode_ambiguous_example(tmp_path, capsys):
    f = tmp_path / "y.txt"
    f.write_text("11010000100000100000101\n")
    code, text = run(["decode", *CODE, "--precoded", "--input", str(f)], capsys)
    rec = json.loads(text)
    assert code == 1 and rec["reason"] == "ambiguous" and rec["candidates"] == 2


def test_corrupt_then_decode(tmp_path, capsys):
    m, x, y, u = (tmp_path / n for n in ("m.txt", "x.txt", "y.txt", "u.txt"))
    m.write_text("1110000011010001\n")
    run(["encode", *CODE, "--input", str(m), "--output", str(x)], capsys)
    code, text = run(["corrupt", "--delta", "1", "--seed", "4", "--input", str(x),
                      "--output", str(y)], capsys)
    side = json.loads((tmp_path / "y.txt.positions.json").read_text())
    assert code == 0 and len(side["positions"]) == 1 and 1 <= side["positions"][0] <= 32
    code, text = run(["decode", *CODE, "--input", str(y), "--output", str(u)], capsys)
    assert code in (0, 1)
    if code == 0:
        assert u.read_text().strip() == "1110000011010001"


def test_raw_bit_files(tmp_path):
    bits = np.random.default_rng(0).integers(0, 2, 37).astype(np.uint8)
    write_bits(tmp_path / "b.bin", bits, "raw")
    data = (tmp_path / "b.bin").read_bytes()
    assert int.from_bytes(data[:8], "little") == 37 and len(data) == 8 + 5
    assert np.array_equal(read_bits(tmp_path / "b.bin", "raw"), bits)
    (tmp_path / "bad.bin").write_bytes(data[:-1])
    with pytest.raises(ValueError):
        read_bits(tmp_path / "bad.bin", "raw")


def test_experiment_byte_identical(tmp_path, capsys):
    outs = []
    for i, jobs in enumerate(("1", "2")):
        path = tmp_path / f"r{i}.json"
        run(["experiment", "--k", "64", "--delta", "2", "--c", "3", "--trials", "300",
             "--seed", "7", "--jobs", jobs, "--output", str(path)], capsys)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    rec = json.loads(outs[0])
    assert rec["seed"] == 7 and rec["k"] == 64 and "jobs" not in rec


def test_csv_column_order(capsys):
    code, text = run(["experiment", "--k", "32", "--delta", "1", "--trials", "50",
                      "--format", "csv"], capsys)
    header = text.splitlines()[0].split(",")
    assert header[:6] == ["k", "delta", "c", "ell", "trials", "seed"]


def test_config_file_and_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# defaults\nk = 32\ndelta = 1\ntrials = 40\nseed = 3\n")
    code, text = run(["--config", str(conf), "experiment", "--seed", "9"], capsys)
    rec = json.loads(text)
    assert code == 0 and (rec["k"], rec["trials"], rec["seed"]) == (32, 40, 9)


def test_bound_and_exhaustive(capsys):
    code, text = run(["bound", "--k", "16", "--c", "3"], capsys)
    assert code == 0 and json.loads(text)["bound"] == 0.03125
    code, text = run(["exhaustive", "--k", "16", "--delta", "2", "--c", "3"], capsys)
    assert code == 2 and json.loads(text)["error"] == "instance_too_large"
    code, text = run(["exhaustive", "--k", "6", "--delta", "1", "--c", "2", "--ell", "3"], capsys)
    assert code == 0 and json.loads(text)["wrong_decodes"] == 0


def test_config_errors_exit_2(capsys):
    code, text = run(["decode", "--k", "16", "--delta", "2", "--c", "2", "--input", "x"], capsys)
    assert code == 2 and json.loads(text)["error"] == "config_error"
    assert main(["nonsense"]) == 2
    assert main(["bound", "--k", "16"]) == 2


def test_sync_command(tmp_path, capsys):
    code, text = run(["sync", "--n", "20000", "--d", "10", "--runs", "2", "--seed", "1"], capsys)
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(recs) == 4 and all(r["success"] for r in recs)
    f = tmp_path / "file.txt"
    write_bits(f, np.random.default_rng(1).integers(0, 2, 3000).astype(np.uint8))
    code, text = run(["sync", "--input", str(f), "--d", "3", "--strategy", "sync_gc"], capsys)
    assert code == 0 and json.loads(text)["strategy"] == "sync_gc"


def test_dumps_records_csv_blank_for_none():
    text = dumps_records([{"a": 1}, {"a": 2, "b": None}], "csv")
    assert text == "a,b\n1,\n2,\n"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "guesscheck", "bound", "--k", "1024", "--c", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["bound"] == pytest.approx(1.953125e-4)
