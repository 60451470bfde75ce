import json
import subprocess
import sys

import pytest

from block_atlas.cli import main
from block_atlas.linking import LinkChain, verify_chain
from block_atlas.rootsys import build


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_documented_examples(capsys):
    assert run(capsys, "gamma", "A3")[:2] == (0, '{"group":"Z4"}')
    same = ("same-block", "A1", '{"factors":[{"point":{"rat":[1,1]},"weight":[2]}]}',
            '{"factors":[]}')
    assert run(capsys, *same)[:2] == (0, '{"same_block":true}')
    assert run(capsys, "chain", "A1", "[5]")[:2] == (0, '{"chain":[[5],[3],[1]],"certified":true}')


def test_group_table(capsys):
    for name, group in [("D4", "Z2xZ2"), ("E8", "0"), ("E6", "Z3"), ("D5", "Z4")]:
        assert json.loads(run(capsys, "gamma", name)[1]) == {"group": group}


def test_exit_codes(capsys):
    assert run(capsys, "gamma", "D3")[0] == 1
    assert run(capsys, "gamma", "Q7")[0] == 1
    assert run(capsys, "dim", "A2", "[1,")[0] == 1
    assert run(capsys, "dim", "A2", "[1]")[0] == 1
    assert run(capsys, "dim", "A2", "[-1,0]")[0] == 2
    code, _, err = run(capsys, "chain-between", "A2", "[1,0]", "[0,0]")
    assert code == 2 and "coset" in err
    assert run(capsys, "factor", "A1", '{"coeffs":[[1,0,1]]}')[0] == 2
    assert run(capsys, "nonsense")[0] == 1


def test_factor_and_character(capsys):
    code, out, _ = run(capsys, "factor", "A1", "[[1,-3,2]]")
    assert code == 0
    assert json.loads(out)["factors"] == [{"point": {"rat": [1, 1]}, "weight": [1]},
                                          {"point": {"rat": [2, 1]}, "weight": [1]}]
    chi = json.loads(run(capsys, "char", "A1", out)[1])
    assert [s["class"] for s in chi["support"]] == [[1], [1]]
    label = json.loads(run(capsys, "block-label", "A1",
                           '{"factors":[{"point":{"sym":"a"},"weight":[3]}]}')[1])
    assert label == {"block": [{"point": {"sym": "a"}, "weight": [1]}]}
    dual = json.loads(run(capsys, "dual", "A2",
                          '{"factors":[{"point":{"rat":[2,1]},"weight":[1,0]}]}')[1])
    assert dual["factors"][0]["weight"] == [0, 1]


def test_lattice_commands(capsys):
    assert json.loads(run(capsys, "project", "A2", "[0,1]")[1])["residues"] == [2]
    assert json.loads(run(capsys, "lambda-gamma", "A2", "[2]")[1]) == {"weight": [2, 0]}
    assert json.loads(run(capsys, "dim", "G2", "[1,0]")[1]) == {"dim": 7}
    assert json.loads(run(capsys, "tensor-mult", "A1", "[1]", "[3]")[1]) == {"multiplicity": 1}
    dec = json.loads(run(capsys, "tensor-mult", "A1", "[1]")[1])["decomposition"]
    assert dec == [{"weight": [1], "mult": 1}, {"weight": [3], "mult": 1}]
    ws = json.loads(run(capsys, "weights", "A2", "[1,1]")[1])
    assert ws["dim"] == 8


def test_chains_re_verify(capsys):
    for name, weight in [("E6", "[1,0,1,0,0,1]"), ("F4", "[0,1,0,1]"), ("D6", "[1,1,0,0,1,0]")]:
        code, out, _ = run(capsys, "chain", name, weight, "--certify")
        assert code == 0
        chain = LinkChain.from_json(json.loads(out)["chain"], name)
        assert verify_chain(build(name), chain)
        again = json.loads(run(capsys, "verify-chain", name, json.dumps(json.loads(out)["chain"]))[1])
        assert again == {"valid": True}


def test_simplify_flag(capsys):
    out = json.loads(run(capsys, "chain", "A2", "[1,1]", "--simplify")[1])
    assert out["chain"] == [[1, 1], [0, 0]]


def test_verify_chain_reports_the_failing_pair(capsys):
    out = json.loads(run(capsys, "verify-chain", "A1", "[[1],[4]]")[1])
    assert out["valid"] is False and out["failing_pair"] == [[1], [4]]


def test_module_lab(capsys):
    ext = json.loads(run(capsys, "module-lab", "A1", "ext", "[3]", "[1]", "2")[1])
    assert ext["lie_action"] and ext["exact_sequence"] and ext["nonsplit"] and ext["jet_annihilator"]
    assert ext["character"] == [{"point": {"rat": [2, 1]}, "class": [1]}]
    ten = json.loads(run(capsys, "module-lab", "A1", "tensor", "[1]", "1", "[1]", "1", "--seed", "3")[1])
    assert ten["irreducible"] is False and ten["witness_dim"] in (1, 3)
    bundle = json.loads(run(capsys, "module-lab", "A1", "eval", "[1]", "1/2")[1])
    assert bundle["dim"] == 2


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "--pretty", "chain", "A1", "[5]")
    assert code == 0 and "chain:" in out and "[3]" in out


def test_output_is_deterministic(capsys):
    argv = ("module-lab", "A1", "tensor", "[1]", "2", "[1]", "-1", "--seed", "11")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("argv, code", [(["gamma", "B4"], 0), (["gamma", "D2"], 1)])
def test_module_entry_point(argv, code):
    proc = subprocess.run([sys.executable, "-m", "block_atlas", *argv], capture_output=True, text=True)
    assert proc.returncode == code
