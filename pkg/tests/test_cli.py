import pytest
from click.testing import CliRunner

from kummerlift.cli import main, measure, published_cost


@pytest.fixture()
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def invoke(*args, input=None):
        return runner.invoke(main, list(args), input=input, catch_exceptions=False)

    return invoke


def test_keygen_sign_verify(run, tmp_path):
    (tmp_path / "msg").write_bytes(b"hello")
    assert run("keygen", "--key", "sk", "--pub", "pk", "--seed", "3").exit_code == 0
    assert len(bytes.fromhex((tmp_path / "pk").read_text())) == 32
    assert run("sign", "--key", "sk", "--msg", "msg", "--sig", "sig").exit_code == 0
    r = run("verify", "--pub", "pk", "--msg", "msg", "--sig", "sig")
    assert (r.exit_code, r.output.strip()) == (0, "accept")

    sig = bytearray(bytes.fromhex((tmp_path / "sig").read_text()))
    sig[40] ^= 4
    (tmp_path / "bad").write_text(sig.hex())
    r = run("verify", "--pub", "pk", "--msg", "msg", "--sig", "bad")
    assert (r.exit_code, r.output.strip()) == (1, "reject")


def test_raw_mode_and_stdin(run, tmp_path):
    assert run("keygen", "--key", "sk", "--pub", "pk", "--seed", "4", "--raw").exit_code == 0
    assert len((tmp_path / "pk").read_bytes()) == 32
    assert run("sign", "--key", "sk", "--sig", "sig", "--raw", input=b"stdin message").exit_code == 0
    r = run("verify", "--pub", "pk", "--sig", "sig", "--raw", input=b"stdin message")
    assert r.exit_code == 0


def test_io_and_encoding_errors(run, tmp_path):
    assert run("sign", "--key", "missing", "--msg", "missing").exit_code == 3
    (tmp_path / "sk").write_text("zz")
    assert run("sign", "--key", "sk", "--msg", "sk").exit_code == 4
    (tmp_path / "pk").write_text("ff" * 32)
    assert run("decompress", "--pub", "pk").exit_code == 4
    assert run("bench", "--model", "nope").exit_code == 2


def test_compress_decompress(run, tmp_path):
    r = run("compress", "--seed", "1")
    point, enc = r.output.strip().splitlines()
    (tmp_path / "pk").write_text(enc)
    assert run("decompress", "--pub", "pk").output.strip() == point


def test_bench_rows_match_direct_measurement(run, tmp_path):
    r = run("bench", "--model", "weierstrass", "--model", "montgomery", "--dim", "1", "--beta", "64",
            "--seed", "2", "--figure", "fig.png")
    assert r.exit_code == 0
    rows = {line.split("|")[1]: line.split("|") for line in r.output.splitlines() if line.startswith("COUNT|")}
    assert set(rows) == {"weierstrass", "montgomery"}
    w = rows["weierstrass"]
    got, _ = measure("weierstrass", 1, 64, 2)
    assert [int(w[4]), int(w[5]), int(w[7]), int(w[8])] == [got.M, got.S, got.a, got.I]
    assert w[-1] == "yes" and got == published_cost("weierstrass", 1, 64)
    assert rows["montgomery"][-1] == "no"
    assert (tmp_path / "fig.png").read_bytes()[:4] == b"\x89PNG"
    strict = run("bench", "--model", "montgomery", "--dim", "1", "--beta", "16", "--strict")
    assert strict.exit_code == 5


def test_params_check(run):
    r = run("params-check", "--points", "3")
    assert r.exit_code == 0
    assert r.output.splitlines() == ["annihilated|3|3", "generator_order_N|yes"]
