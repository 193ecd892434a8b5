import json
import re
import subprocess
import sys

import pytest

from gravop.cli import main
from gravop.poisson import operad


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poincare_example(capsys):
    code, out, _ = run(["poincare", "--flavor", "conf", "--n", "3", "--d", "1"], capsys)
    assert code == 0 and out.strip() == "1 + 3t + 2t^2"


def test_normal_form(capsys):
    code, out, _ = run(["normal-form", "--n", "3", "--d", "1", "--expr", "x(1,3)*x(1,3)"], capsys)
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(["normal-form", "--n", "3", "--d", "2", "--flavor", "th", "--expr", "c*c*x(1,3)"], capsys)
    assert code == 0 and out.strip() == "0"


def test_parse_error_exit_code(capsys):
    code, _, err = run(["normal-form", "--n", "3", "--d", "1", "--expr", "x(1,"], capsys)
    assert code == 2 and "column 5" in err
    code, _, err = run(["normal-form", "--n", "3", "--d", "1", "--expr", "x(1,7)"], capsys)
    assert code == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["poincare", "--n", "3"])
    assert info.value.code == 2


def test_delta_star(capsys):
    code, out, _ = run(["delta-star", "--n", "3", "--d", "2", "--expr", "x(1,2)*x(1,3)"], capsys)
    assert code == 0 and out.strip() == "-x(1,2) + x(1,3)"


def test_kernel(capsys):
    code, out, _ = run(["kernel", "--n", "3", "--d", "1", "--degree", "1"], capsys)
    assert code == 0 and out.startswith("rank 2")
    code, out, _ = run(["--json", "kernel", "--n", "3", "--d", "1", "--degree", "2", "--operator", "delta"], capsys)
    assert json.loads(out)["rank"] == 2


def test_bracket_and_compose(tmp_path, capsys):
    code, out, _ = run(["bracket", "--k", "2", "--d", "1", "--json"], capsys)
    (tmp_path / "b2.json").write_text(out)
    code, out, _ = run(["bracket", "--k", "3", "--d", "1", "--json"], capsys)
    (tmp_path / "b3.json").write_text(out)
    code, out, _ = run(["--json", "compose", "--d", "1", "--left", str(tmp_path / "b2.json"), "--slot", "1",
                        "--right", str(tmp_path / "b3.json")], capsys)
    assert code == 0
    expected = operad.compose(operad.bracket_generator(2, 1), 1, operad.bracket_generator(3, 1))
    assert operad.OperadElement.from_json(json.loads(out)) == expected
    code, _, _ = run(["compose", "--d", "2", "--left", str(tmp_path / "b2.json"), "--slot", "1",
                      "--right", str(tmp_path / "b3.json")], capsys)
    assert code == 2
    (tmp_path / "bad.json").write_text("{not json")
    code, _, _ = run(["compose", "--d", "1", "--left", str(tmp_path / "bad.json"), "--slot", "1",
                      "--right", str(tmp_path / "b3.json")], capsys)
    assert code == 2


def test_verify_gravity(capsys):
    code, out, _ = run(["verify", "gravity", "--k", "3", "--l", "2", "--d", "2", "--all-parities", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["pass"] and len(data["reports"]) == 32
    code, out, _ = run(["verify", "gravity", "--k", "3", "--l", "1", "--d", "1", "--parities", "0,1,1,0"], capsys)
    assert code == 0 and out.strip().endswith("pass")
    code, _, _ = run(["verify", "gravity", "--k", "3", "--l", "1", "--d", "1", "--parities", "0,1"], capsys)
    assert code == 2


def test_verify_main_theorem(capsys):
    code, out, _ = run(["verify", "main-theorem", "--n", "4", "--d", "2"], capsys)
    assert code == 0 and out.strip().endswith("pass")


def test_json_and_human_output_agree(capsys):
    _, human, _ = run(["verify", "main-theorem", "--n", "4", "--d", "2"], capsys)
    _, machine, _ = run(["--json", "verify", "main-theorem", "--n", "4", "--d", "2"], capsys)
    rows = json.loads(machine)["rows"]
    table = [list(map(int, line.split()[:3])) for line in human.splitlines() if re.match(r"\s*-?\d", line)]
    assert table == [[r["degree"], r["gravity"], r["suspended_th"]] for r in rows]
    _, human, _ = run(["poincare", "--flavor", "th", "--n", "4", "--d", "2"], capsys)
    _, machine, _ = run(["poincare", "--flavor", "th", "--n", "4", "--d", "2", "--json"], capsys)
    ranks = {int(q): r for q, r in json.loads(machine)["ranks"].items()}
    terms = dict((int(m.group(3) or (1 if m.group(2) else 0)), int(m.group(1) or 1))
                 for m in re.finditer(r"(\d+)?(t)?(?:\^(\d+))?(?= \+|$)", human.strip()) if m.group(0))
    assert terms == ranks


def test_verify_all_small(capsys):
    code, out, _ = run(["verify", "all", "--max-n", "3", "--max-d", "1"], capsys)
    assert code == 0 and "checks passed" in out


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "gravop.cli", "poincare", "--n", "2", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1 + t^3"
