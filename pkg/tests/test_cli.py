import csv
import json
import struct
import subprocess
import sys

import pytest

from huffkit.cli import main
from huffkit.codec import compress_uniform


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTable:
    def test_n3_rows(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "3")
        assert code == 0
        assert out == "0\t0\n1\t10\n2\t11\n"

    def test_n6_rows(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "6")
        assert code == 0
        assert [line.split("\t")[1] for line in out.splitlines()] == [
            "00", "01", "100", "101", "110", "111",
        ]

    def test_json_n2(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "2", "--json")
        assert code == 0
        assert json.loads(out) == {
            "n": 2, "lower": 1, "upper": 1, "diff": 0, "codes": ["0", "1"],
        }

    def test_range_violations(self, capsys):
        for n in ("1", str((1 << 20) + 1)):
            code, _, err = run_cli(capsys, "table", "--n", n)
            assert code == 2
            assert err.startswith("error: usage:")

    def test_deterministic(self, capsys):
        first = run_cli(capsys, "table", "--n", "100")
        second = run_cli(capsys, "table", "--n", "100")
        assert first == second


class TestParams:
    def test_n5(self, capsys):
        code, out, _ = run_cli(capsys, "params", "--n", "5")
        assert code == 0
        assert json.loads(out) == {"n": 5, "lower": 2, "upper": 3, "diff": 2}

    def test_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "params", "--n", "1")
        assert code == 2
        assert err.startswith("error: usage:")


class TestState:
    def test_n5_sparse(self, capsys):
        code, out, _ = run_cli(capsys, "state", "--n", "5")
        assert code == 0
        assert out == "register1: (0,0) (1,1) (2,2)\nregister2: (3,6) (4,7)\n"

    def test_n4_empty_second_register(self, capsys):
        code, out, _ = run_cli(capsys, "state", "--n", "4")
        assert code == 0
        assert out == "register1: (0,0) (1,1) (2,2) (3,3)\nregister2:\n"

    def test_n5_dense(self, capsys):
        code, out, _ = run_cli(capsys, "state", "--n", "5", "--dense")
        assert code == 0
        lines = out.splitlines()
        start1 = lines.index("register1 dense:") + 1
        grid1 = lines[start1:start1 + 8]
        assert grid1[0] == "1 0 0 0"
        assert grid1[2] == "0 0 1 0"
        assert grid1[3] == "0 0 0 0"
        start2 = lines.index("register2 dense:") + 1
        grid2 = lines[start2:start2 + 8]
        assert grid2[3] == "0 0 0 0 0 0 1 0"
        assert grid2[4] == "0 0 0 0 0 0 0 1"

    def test_dense_size_bound(self, capsys):
        code, _, err = run_cli(capsys, "state", "--n", "8192", "--dense")
        assert code == 1
        assert err.startswith("error: too-large:")


class TestVerify:
    def test_small_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--max-n", "64")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "range\t2..64"
        assert lines[1].startswith("checked\t")
        assert lines[2] == "failures\t0"

    def test_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--max-n", "1")
        assert code == 2
        assert err.startswith("error: usage:")


class TestEncodeDecode:
    def write_symbols(self, path, symbols, width=1):
        fmt = {1: "B", 2: "H", 4: "I"}[width]
        path.write_bytes(struct.pack(f"<{len(symbols)}{fmt}", *symbols))

    def test_direct_roundtrip_with_golden_container(self, capsys, tmp_path):
        raw = tmp_path / "symbols.bin"
        packed = tmp_path / "symbols.qihc"
        restored = tmp_path / "restored.bin"
        self.write_symbols(raw, [2, 3])

        code, out, _ = run_cli(
            capsys, "encode", "--mode", "direct", "--n", "5",
            "--in", str(raw), "--out", str(packed),
        )
        assert code == 0
        assert out == "2\t20\t2.500000\n"
        assert packed.read_bytes() == compress_uniform([2, 3], 5)

        code, out, _ = run_cli(
            capsys, "decode", "--in", str(packed), "--out", str(restored),
        )
        assert code == 0
        assert out == "20\t2\t2.500000\n"
        assert restored.read_bytes() == raw.read_bytes()

    def test_qstate_container_is_byte_identical(self, capsys, tmp_path):
        raw = tmp_path / "symbols.bin"
        self.write_symbols(raw, [0, 4, 2, 3, 1, 4])
        out_direct = tmp_path / "direct.qihc"
        out_qstate = tmp_path / "qstate.qihc"
        assert run_cli(capsys, "encode", "--mode", "direct", "--n", "5",
                       "--in", str(raw), "--out", str(out_direct))[0] == 0
        assert run_cli(capsys, "encode", "--mode", "qstate", "--n", "5",
                       "--in", str(raw), "--out", str(out_qstate))[0] == 0
        assert out_direct.read_bytes() == out_qstate.read_bytes()

    def test_wide_symbols_roundtrip(self, capsys, tmp_path):
        raw = tmp_path / "wide.bin"
        packed = tmp_path / "wide.qihc"
        restored = tmp_path / "wide.out"
        symbols = [0, 999, 500, 123, 998]
        self.write_symbols(raw, symbols, width=2)
        assert run_cli(capsys, "encode", "--mode", "direct", "--n", "1000",
                       "--sym-width", "2", "--in", str(raw), "--out", str(packed))[0] == 0
        assert run_cli(capsys, "decode", "--in", str(packed),
                       "--out", str(restored))[0] == 0
        assert restored.read_bytes() == raw.read_bytes()

    def test_tree_roundtrip(self, capsys, tmp_path):
        raw = tmp_path / "text.txt"
        packed = tmp_path / "text.qihc"
        restored = tmp_path / "text.out"
        raw.write_bytes(b"how much wood would a woodchuck chuck" * 20)
        code, out, _ = run_cli(capsys, "encode", "--mode", "tree",
                               "--in", str(raw), "--out", str(packed))
        assert code == 0
        in_bytes, out_bytes, bps = out.split()
        assert int(out_bytes) < int(in_bytes)  # payload beats 8 bits/byte
        assert float(bps) < 8
        assert run_cli(capsys, "decode", "--mode", "tree", "--in", str(packed),
                       "--out", str(restored))[0] == 0
        assert restored.read_bytes() == raw.read_bytes()

    def test_mode_mismatch_rejected(self, capsys, tmp_path):
        raw = tmp_path / "s.bin"
        packed = tmp_path / "s.qihc"
        self.write_symbols(raw, [1, 2])
        run_cli(capsys, "encode", "--mode", "direct", "--n", "5",
                "--in", str(raw), "--out", str(packed))
        code, _, err = run_cli(capsys, "decode", "--mode", "tree",
                               "--in", str(packed), "--out", str(tmp_path / "x"))
        assert code == 2
        assert err.startswith("error: usage:")

    def test_n_mismatch_rejected(self, capsys, tmp_path):
        raw = tmp_path / "s.bin"
        packed = tmp_path / "s.qihc"
        self.write_symbols(raw, [1, 2])
        run_cli(capsys, "encode", "--mode", "direct", "--n", "5",
                "--in", str(raw), "--out", str(packed))
        code, _, err = run_cli(capsys, "decode", "--n", "6",
                               "--in", str(packed), "--out", str(tmp_path / "x"))
        assert code == 2

    def test_missing_n_for_direct(self, capsys, tmp_path):
        raw = tmp_path / "s.bin"
        self.write_symbols(raw, [1])
        code, _, err = run_cli(capsys, "encode", "--mode", "direct",
                               "--in", str(raw), "--out", str(tmp_path / "o"))
        assert code == 2
        assert err.startswith("error: usage:")

    def test_width_not_matching_file(self, capsys, tmp_path):
        raw = tmp_path / "s.bin"
        raw.write_bytes(b"\x01\x02\x03")
        code, _, err = run_cli(capsys, "encode", "--mode", "direct", "--n", "300",
                               "--sym-width", "2", "--in", str(raw),
                               "--out", str(tmp_path / "o"))
        assert code == 2

    def test_narrow_width_for_n(self, capsys, tmp_path):
        raw = tmp_path / "s.bin"
        self.write_symbols(raw, [1])
        code, _, err = run_cli(capsys, "encode", "--mode", "direct", "--n", "300",
                               "--in", str(raw), "--out", str(tmp_path / "o"))
        assert code == 1
        assert err.startswith("error: header:")

    def test_corrupt_container(self, capsys, tmp_path):
        bad = tmp_path / "bad.qihc"
        bad.write_bytes(b"NOPE" + bytes(20))
        code, _, err = run_cli(capsys, "decode", "--in", str(bad),
                               "--out", str(tmp_path / "x"))
        assert code == 1
        assert err.startswith("error: format:")

    def test_missing_input_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "encode", "--mode", "tree",
                               "--in", str(tmp_path / "absent"),
                               "--out", str(tmp_path / "o"))
        assert code == 1
        assert err.startswith("error: io:")


class TestBench:
    def test_counters_at_small_sizes(self, capsys, tmp_path):
        csv_path = tmp_path / "bench.csv"
        code, out, _ = run_cli(capsys, "bench", "--n-list", "4,16",
                               "--csv", str(csv_path))
        assert code == 0
        rows = {}
        lines = out.splitlines()
        assert lines[0] == "n\tmode\tcounter\tvalue\tnanos"
        for line in lines[1:]:
            n, mode, counter, value, _nanos = line.split("\t")
            rows[(int(n), mode, counter)] = int(value)

        assert rows[(4, "tree", "tree_merges")] == 3
        assert rows[(16, "tree", "tree_merges")] == 15
        assert rows[(4, "tree", "tree_walk_steps")] == 8
        assert rows[(4, "direct", "bits_emitted")] == 8
        assert rows[(16, "direct", "bits_emitted")] == 64
        assert rows[(4, "qstate", "state_ones_written")] == 4
        assert rows[(4, "qstate", "coord_lookups")] == 4
        assert rows[(4, "qstate", "bits_emitted")] == 8

        with csv_path.open() as handle:
            table = list(csv.reader(handle))
        assert table[0] == ["n", "mode", "counter", "value", "nanos"]
        assert len(table) == len(lines)
        assert all(row[4].isdigit() for row in table[1:])

    def test_kernel_rows_cover_backends(self, capsys):
        from huffkit import kernels

        code, out, _ = run_cli(capsys, "bench", "--n-list", "8", "--mode", "kernels")
        assert code == 0
        modes = {line.split("\t")[1] for line in out.splitlines()[1:]}
        assert modes == {f"pack[{name}]" for name in kernels.available_backends()}

    def test_stdout_deterministic_without_nanos(self, capsys):
        def stripped():
            code, out, _ = run_cli(capsys, "bench", "--n-list", "4,16,64")
            assert code == 0
            return [line.rsplit("\t", 1)[0] for line in out.splitlines()]

        assert stripped() == stripped()

    def test_bad_n_list(self, capsys):
        for bad in ("x", "4,one", "", "1"):
            code, _, err = run_cli(capsys, "bench", "--n-list", bad)
            assert code == 2
            assert err.startswith("error: usage:")


class TestEntropy:
    def write_freq(self, path, lines):
        path.write_text("\n".join(lines) + "\n")

    def test_five_weights(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        self.write_freq(freq, ["0 0.25", "1 0.25", "2 0.2", "3 0.15", "4 0.15"])
        code, out, _ = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 0
        assert out == "H\t2.285475\nL\t2.300000\nredundancy\t0.014525\n"

    def test_fair_pair(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        self.write_freq(freq, ["0 7", "1 7"])
        code, out, _ = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 0
        assert out == "H\t1.000000\nL\t1.000000\nredundancy\t0.000000\n"

    def test_uniform_eight(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        self.write_freq(freq, [f"{i} 1" for i in range(8)])
        code, out, _ = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 0
        assert out.splitlines()[0] == "H\t3.000000"
        assert out.splitlines()[1] == "L\t3.000000"

    def test_malformed_line(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        self.write_freq(freq, ["0 1", "whoops"])
        code, _, err = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 1
        assert err.startswith("error: distribution:")

    def test_non_numeric_count(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        self.write_freq(freq, ["0 banana"])
        code, _, err = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 1
        assert err.startswith("error: distribution:")

    def test_empty_file(self, capsys, tmp_path):
        freq = tmp_path / "freq.txt"
        freq.write_text("\n\n")
        code, _, err = run_cli(capsys, "entropy", "--freq", str(freq))
        assert code == 1
        assert err.startswith("error: distribution:")

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "entropy", "--freq", str(tmp_path / "no"))
        assert code == 1
        assert err.startswith("error: io:")


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "huffkit", "params", "--n", "5"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"n": 5, "lower": 2, "upper": 3, "diff": 2}


def test_module_entry_point_error_status():
    out = subprocess.run(
        [sys.executable, "-m", "huffkit", "table", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 2
    assert out.stderr.startswith("error: usage:")
