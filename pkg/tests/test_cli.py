import json

import pytest

from ggt.cli import main


@pytest.fixture()
def workdir(tmp_path):
    (tmp_path / "c4.g").write_text("v 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\n")
    (tmp_path / "c6.g").write_text(
        "v 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 0 5\n"
    )
    (tmp_path / "c3.g").write_text("v 3\ne 0 1\ne 1 2\ne 0 2\n")
    (tmp_path / "rot3.act").write_text(f"graph: {tmp_path}/c3.g\nperm a: 1 2 0\n")
    (tmp_path / "rot2c6.act").write_text(
        f"graph: {tmp_path}/c6.g\nperm a: 2 3 4 5 0 1\n"
    )
    (tmp_path / "s3.act").write_text("set: 3\nperm r: 1 2 0\nperm s: 1 0 2\n")
    (tmp_path / "cube.pres").write_text("gens a\nrel aaa\n")
    (tmp_path / "free2.gog").write_text(
        "vertex v 1\nedge a v v 1\nedge b v v 1\n"
    )
    (tmp_path / "amalgam.gog").write_text(
        "vertex p 2\nvertex q 3\nedge e p q 1\n"
    )
    (tmp_path / "volt.txt").write_text("a 0 1\nb 1 0\n")
    (tmp_path / "phi.m").write_text("2\n")
    (tmp_path / "phi_half.m").write_text("1/2\n")
    (tmp_path / "z.lat").write_text("1\n")
    (tmp_path / "2z.lat").write_text("2\n")
    return tmp_path


def run(capsys, argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSubcommands:
    def test_delta(self, workdir, capsys):
        code, out, _ = run(capsys, ["delta", "--graph", workdir / "c4.g"])
        assert code == 0 and "delta4: 1" in out

    def test_geodesics(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["geodesics", "--graph", workdir / "c4.g", "--pair", 0, 2]
        )
        assert code == 0 and "count: 2" in out

    def test_cylinder(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["cylinder", "--graph", workdir / "c4.g", "--pair", 0, 2]
        )
        assert code == 0 and "theta: 1" in out

    def test_slices(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["slices", "--graph", workdir / "c4.g", "--pair", 0, 2]
        )
        assert code == 0 and "n_slices: 1" in out

    def test_stability(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["stability", "--graph", workdir / "c4.g", "--triple", 0, 2, 1,
             "--kind", "tau"],
        )
        assert code == 0 and "tau_observed: 1" in out

    def test_rips_and_homology(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["rips", "--graph", workdir / "c6.g", "--d", 1, "--dim-cap", 2]
        )
        assert code == 0 and "euler_characteristic: 0" in out
        code, out, _ = run(
            capsys,
            ["homology", "--graph", workdir / "c6.g", "--d", 1, "--dim-cap", 2],
        )
        assert code == 0 and "acyclic: false" in out

    def test_foliate(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["foliate", "--presentation", workdir / "cube.pres",
             "--action", workdir / "rot2c6.act", "--basepoint", 0],
        )
        assert code == 0 and "epsilon_observed: 1" in out

    def test_foliate_dot(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["foliate", "--presentation", workdir / "cube.pres",
             "--action", workdir / "rot3.act", "--format", "dot"],
        )
        assert code == 0 and out.startswith("graph foliation {")

    def test_census(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["census", "--action", workdir / "s3.act", "--subgroup", "r",
             "--h", "r", "--k", "s"],
        )
        assert code == 0
        assert "v_invariant: 1/2" in out and "chain_ok: true" in out

    def test_chi(self, workdir, capsys):
        code, out, _ = run(capsys, ["chi", "--gog", workdir / "amalgam.gog"])
        assert code == 0 and "chi: -1/6" in out and "reduced: true" in out

    def test_cover(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["cover", "--gog", workdir / "free2.gog", "--sheets", 2,
             "--voltages", workdir / "volt.txt"],
        )
        assert code == 0 and "multiplicative: true" in out

    def test_comm_tower(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["comm-tower", "--phi", workdir / "phi_half.m",
             "--A", workdir / "2z.lat", "--B", workdir / "z.lat",
             "--depth", 4],
        )
        assert code == 0 and "abar: 16" in out

    def test_comm_search(self, workdir, capsys):
        code, out, _ = run(
            capsys,
            ["comm-search", "--phi", workdir / "phi.m",
             "--A", workdir / "z.lat", "--B", workdir / "2z.lat",
             "--lambda", 7],
        )
        assert code == 0 and "status: found" in out and "n: 3" in out

    def test_selftest(self, capsys):
        code, out, _ = run(capsys, ["selftest"])
        assert code == 0 and "passed: 16" in out


class TestFormatsAndDeterminism:
    def test_json_parses(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["delta", "--graph", workdir / "c4.g", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["delta4"] == "1" and doc["subcommand"] == "delta"
        assert len(doc["inputs"]["graph"]["sha256"]) == 64

    def test_byte_identical_reruns(self, workdir, capsys):
        argvs = [
            ["delta", "--graph", workdir / "c4.g"],
            ["slices", "--graph", workdir / "c6.g", "--pair", 0, 3,
             "--format", "json"],
            ["foliate", "--presentation", workdir / "cube.pres",
             "--action", workdir / "rot2c6.act"],
            ["selftest", "--format", "json"],
        ]
        for argv in argvs:
            _, out1, _ = run(capsys, argv)
            _, out2, _ = run(capsys, argv)
            assert out1 == out2 and out1

    def test_version_and_seed_present(self, workdir, capsys):
        code, out, _ = run(
            capsys, ["delta", "--graph", workdir / "c4.g", "--seed", 5]
        )
        assert code == 0 and "seed: 5" in out and "version:" in out


class TestErrorExits:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["delta", "--graph", "nope.g"])
        assert code == 1 and "error:" in err

    def test_bad_graph(self, tmp_path, capsys):
        bad = tmp_path / "bad.g"
        bad.write_text("v 2\ne 0 9\n")
        code, _, _ = run(capsys, ["delta", "--graph", bad])
        assert code == 1

    def test_missing_subcommand(self, capsys):
        code, _, _ = run(capsys, [])
        assert code == 1

    def test_unknown_flag(self, workdir, capsys):
        code, _, _ = run(capsys, ["delta", "--graph", workdir / "c4.g", "--nope"])
        assert code == 1

    def test_dot_elsewhere(self, workdir, capsys):
        code, _, _ = run(
            capsys, ["delta", "--graph", workdir / "c4.g", "--format", "dot"]
        )
        assert code == 1

    def test_internal_violation_exit2(self, workdir, capsys, monkeypatch):
        import ggt.cli as cli_mod
        from ggt.errors import InternalError

        def boom(seed):
            raise InternalError("forced")

        monkeypatch.setattr(cli_mod, "_selftest", boom)
        code, _, err = run(capsys, ["selftest"])
        assert code == 2 and "internal error:" in err
