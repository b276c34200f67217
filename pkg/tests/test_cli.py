import json
import subprocess
import sys

import pytest

from fspectrum import battery
from fspectrum.cli import run
from fspectrum.instance import Instance, format_rational, parse_rational, random_instance, trial_rng

from conftest import DATA

W6 = str(DATA / "w6.json")


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


class TestSubcommands:
    def test_filters(self, capsys):
        code, out, _ = invoke(capsys, "filters", W6)
        assert code == 0
        assert out.splitlines()[0] == "3 ultrafilters, 7 F-filters"

    def test_algebra_json(self, capsys):
        code, out, _ = invoke(capsys, "algebra", W6, "--format", "json")
        assert code == 0
        assert json.loads(out) == {"blocks": [["a", "b"], ["c", "d"], ["e", "f"]], "dimension": 3}

    def test_spectrum_and_extend(self, capsys):
        code, out, _ = invoke(capsys, "spectrum", W6, "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data["points"]) == 3 and len(data["sets"]) == 7
        code, out, _ = invoke(capsys, "extend", W6, "--fn", "h", "--format", "json")
        assert json.loads(out)["values"] == [["0", "0"], ["1/2", "1"], ["-2", "0"]]

    def test_approx(self, capsys):
        code, out, _ = invoke(capsys, "approx", W6, "--target", DATA / "w6_target.json", "--epsilon", "1/3")
        assert code == 0
        assert out.startswith("achieved error") and "<= 1/3" in out.splitlines()[0]
        code, out, _ = invoke(
            capsys, "approx", W6, "--target", DATA / "w6_target.json", "--epsilon", "1/10", "--trace", "--format", "json"
        )
        data = json.loads(out)
        assert data["within_epsilon"] and data["trace"]["n"] == 30
        assert parse_rational(data["error_squared"]) <= parse_rational("1/100")

    def test_approx_function_target(self, capsys, tmp_path):
        t = write(tmp_path, "t.json", {"function": [["0", "0"]] * 2 + [["1", "0"]] * 2 + [["1/2", "0"]] * 2})
        code, out, _ = invoke(capsys, "approx", W6, "--target", t, "--epsilon", "1/5")
        assert code == 0

    def test_ideals(self, capsys):
        code, out, _ = invoke(capsys, "ideals", W6, "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert len(data["ideals"]) == 7 and len(data["characters"]) == 3 and len(data["maximal_ideals"]) == 3

    def test_compare(self, capsys, tmp_path):
        coarse = json.loads((DATA / "w6.json").read_text())
        coarse["functions"]["k"] = [["1", "0"]] * 4 + [["2", "0"]] * 2
        coarse["generators"] = ["k"]
        c = write(tmp_path, "coarse.json", coarse)
        code, out, _ = invoke(capsys, "compare", W6, c, "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["second_in_first"] and not data["first_in_second"]
        assert data["map_first_to_second"] == [0, 0, 1]

    def test_embopen(self, capsys):
        code, out, _ = invoke(capsys, "embopen")
        assert code == 0 and "compact" in out

    def test_verify_file(self, capsys):
        code, out, _ = invoke(capsys, "verify", W6, "--format", "json")
        report = json.loads(out)
        assert code == 0 and report["passed"]
        names = [e["theorem"] for e in report["entries"]]
        assert len(names) == len(set(names))
        assert all({"theorem", "status", "seed", "instance_digest", "trial"} <= e.keys() for e in report["entries"])


class TestMalformedInput:
    @pytest.mark.parametrize(
        "obj",
        [
            {"ground": ["a", "a"], "functions": {}, "generators": []},
            {"ground": ["a"], "functions": {"f": [["1.5", "0"]]}, "generators": ["f"]},
            {"ground": ["a"], "functions": {"f": [["1/0", "0"]]}, "generators": ["f"]},
            {"ground": ["a"], "functions": {"f": [["1", "0"], ["2", "0"]]}, "generators": ["f"]},
            {"ground": ["a"], "functions": {}, "generators": ["missing"]},
            {"ground": ["a"], "functions": {"f": [[1, 0]]}, "generators": ["f"]},
            {"ground": ["a"], "functions": {"f": [["1"]]}, "generators": ["f"]},
            {"ground": [], "functions": {}, "generators": []},
            {"ground": ["a"], "extra": 1},
            [1, 2],
        ],
    )
    def test_bad_instances(self, capsys, tmp_path, obj):
        code, _, err = invoke(capsys, "algebra", write(tmp_path, "bad.json", obj))
        assert code == 2 and err.startswith("error:")

    def test_not_json_and_missing(self, capsys, tmp_path):
        assert invoke(capsys, "filters", write(tmp_path, "x.json", "{nope"))[0] == 2
        assert invoke(capsys, "filters", tmp_path / "absent.json")[0] == 2

    def test_bad_flags(self, capsys):
        assert invoke(capsys, "extend", W6, "--fn", "nope")[0] == 2
        assert invoke(capsys, "approx", W6, "--target", DATA / "w6_target.json", "--epsilon", "0")[0] == 2
        assert invoke(capsys, "approx", W6, "--target", DATA / "w6_target.json", "--epsilon", "0.3")[0] == 2
        assert invoke(capsys, "verify")[0] == 2
        assert invoke(capsys, "frobnicate")[0] == 2

    def test_target_not_block_constant(self, capsys, tmp_path):
        t = write(tmp_path, "t.json", {"function": [["0", "0"], ["1", "0"]] + [["0", "0"]] * 4})
        assert invoke(capsys, "approx", W6, "--target", t, "--epsilon", "1/3")[0] == 2


class TestSerialization:
    def test_rational_format(self):
        assert format_rational(parse_rational("-4/6")) == "-2/3"
        assert format_rational(parse_rational("+5")) == "5"
        assert format_rational(parse_rational("6/2")) == "3"

    def test_instance_round_trip(self, w6_instance):
        again = Instance.from_json(json.loads(json.dumps(w6_instance.to_json())))
        assert again.canonical() == w6_instance.canonical()
        assert again.digest() == w6_instance.digest()

    def test_random_instance_is_deterministic(self):
        a = random_instance(trial_rng(7, 3), 5)
        b = random_instance(trial_rng(7, 3), 5)
        assert a.canonical() == b.canonical()


class TestVerifyRandom:
    def test_deterministic(self, capsys):
        outs = [invoke(capsys, "verify", "--random", "--seed", 3, "--trials", 4, "--format", "json") for _ in range(2)]
        assert outs[0] == outs[1]
        assert outs[0][0] == 0

    def test_failure_replays_from_counterexample(self, capsys, tmp_path, monkeypatch):
        def planted(ctx):
            # fails on any instance with two or more blocks
            return {"blocks": ctx.algebra.num_blocks} if ctx.algebra.num_blocks >= 2 else None

        monkeypatch.setattr(battery, "CHECKS", battery.CHECKS + [("planted", planted)])
        code, out, _ = invoke(capsys, "verify", "--random", "--seed", 11, "--trials", 6, "--format", "json")
        assert code == 1
        report = json.loads(out)
        fail = next(e for e in report["entries"] if e["status"] == "fail")
        cx = fail["counterexample"]
        path = write(tmp_path, "cx.json", cx["instance"])
        code, out, _ = invoke(capsys, "verify", path, "--seed", cx["seed"], "--format", "json")
        replay = json.loads(out)
        again = next(e for e in replay["entries"] if e["theorem"] == fail["theorem"])
        assert code == 1
        assert again["status"] == "fail"
        assert again["counterexample"]["detail"] == cx["detail"]
        assert again["instance_digest"] == fail["instance_digest"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fspectrum", "filters", W6], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("3 ultrafilters, 7 F-filters")
