import io
import json
import subprocess
import sys

from switchsep.cli import run
from switchsep.constructions import circulant_gn
from switchsep.graph import Graph
from switchsep.graph6 import decode, encode
from switchsep.quasigroup import group_sum

G13 = encode(circulant_gn(13))
PATH4 = encode(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


def call(*argv, stdin=""):
    out = io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out)
    reports = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, reports


def one(*argv, stdin=""):
    code, reports = call(*argv, stdin=stdin)
    assert len(reports) == 1
    return code, reports[0]


def test_report_shape():
    code, rep = one("check", PATH4)
    assert code == 0
    assert set(rep) == {"command", "status", "payload", "version", "timing"}
    assert rep["command"] == ["check", PATH4]
    assert rep["payload"]["separable"] is True
    assert len(rep["payload"]["witness"]["part"]) == 2


def test_check_g13_is_not_separable():
    code, rep = one("check", G13)
    assert (code, rep["status"]) == (0, "ok")
    assert rep["payload"]["separable"] is False
    assert "witness" not in rep["payload"]


def test_check_rejects_small_order():
    code, rep = one("check", encode(Graph.complete(3)))
    assert code == 2 and rep["status"] == "error"
    assert "4" in rep["payload"]["error"]


def test_check_reports_malformed_offset():
    code, rep = one("check", "A!")
    assert code == 2
    assert "1" in rep["payload"]["error"]


def test_check_reads_stdin_batch():
    lines = f"{PATH4}\n{G13}\n\nbad!\n"
    code, reports = call("check", "-", stdin=lines)
    assert code == 2
    assert [r["status"] for r in reports] == ["ok", "ok", "error"]
    assert [r["payload"].get("separable") for r in reports[:2]] == [True, False]


def test_witness_replays_through_switch():
    g6 = encode(Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]))
    _, rep = one("check", g6)
    wit = rep["payload"]["witness"]
    _, sw = one("switch", g6, "--set", ",".join(map(str, wit["switching_set"])))
    _, iso = one("isolable", g6, "--set", ",".join(map(str, wit["part"])))
    assert iso["payload"]["isolable"] is True
    assert iso["payload"]["switching_set"] == wit["switching_set"]
    h = decode(sw["payload"]["graph6"])
    rest = set(range(6)) - set(wit["part"])
    assert not any(h.has_edge(a, b) for a in wit["part"] for b in rest)


def test_isolable_and_switch():
    code, rep = one("isolable", PATH4, "--set", "0,3")
    assert code == 0 and rep["payload"] == {"set": [0, 3], "isolable": True, "switching_set": [1, 3]}
    _, rep = one("switch", PATH4, "--set", "1,3")
    assert rep["payload"]["graph6"] == encode(Graph.from_edges(4, [(0, 3)]))
    code, rep = one("isolable", PATH4, "--set", "0")
    assert code == 2
    code, rep = one("isolable", PATH4, "--set", "a,b")
    assert code == 2 and rep["payload"]["error"].startswith("usage")


def test_gen_and_verify_gn():
    code, rep = one("gen", "gn", "13")
    assert code == 0 and rep["payload"]["graph6"] == G13
    code, rep = one("verify", "gn", "13")
    assert code == 0 and rep["payload"]["nonseparable"] is True
    code, rep = one("gen", "gn", "8")
    assert code == 2


def test_verify_two_deletion_scan_order6():
    code, rep = one("verify", "theorem1", "--order", "6")
    assert code == 0
    assert rep["payload"]["classes_scanned"] == 1024
    assert rep["payload"]["counterexamples"] == []
    assert "wall_time" in rep["timing"] and "worker_count" in rep["timing"]


def test_search_conjecture_rejects_odd_order():
    code, rep = one("search", "conjecture", "--order", "7")
    assert code == 2
    assert "gen gn 7" in rep["payload"]["error"]


def test_jobs_never_change_the_payload():
    _, a = one("verify", "theorem1", "--order", "7", "--jobs", "1")
    _, b = one("verify", "theorem1", "--order", "7", "--jobs", "2")
    assert a["payload"] == b["payload"]
    assert (a["timing"]["worker_count"], b["timing"]["worker_count"]) == (1, 2)


def test_resume_file(tmp_path):
    ckpt = tmp_path / "run.ckpt"
    code, rep = one("search", "conjecture", "--order", "6", "--resume", str(ckpt))
    assert code == 0 and ckpt.exists()
    code, again = one("search", "conjecture", "--order", "6", "--resume", str(ckpt))
    assert again["payload"] == rep["payload"]


def test_output_is_byte_stable_except_timing():
    def strip(text):
        rep = json.loads(text)
        rep.pop("timing")
        return json.dumps(rep, sort_keys=True)

    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run(["bool", "from-graph", PATH4, "--linear", "x0 + x2"], stdout=buf)
        outs.append(strip(buf.getvalue()))
    assert outs[0] == outs[1]


def test_bool_commands():
    c5 = encode(circulant_gn(5))
    code, rep = one("bool", "from-graph", c5)
    assert code == 0
    assert rep["payload"]["table"] == "f9ca"
    assert rep["payload"]["separable"] is False
    code, rep = one("bool", "separable", "f9ca", "--arity", "5")
    assert rep["payload"]["separable"] is False and rep["payload"]["quadratic"] is True
    _, rep = one("bool", "from-graph", PATH4, "--linear", "x0 + x2")
    assert rep["payload"]["polynomial"] == "x0*x1 + x1*x2 + x2*x3 + x0 + x2"
    assert rep["payload"]["separable"] is True
    code, rep = one("bool", "separable", "ff", "--arity", "3")
    assert code == 2
    code, rep = one("bool", "from-graph", PATH4, "--linear", "x0*x1")
    assert code == 2


def test_qg_commands(tmp_path):
    code, rep = one("qg", "from-bool", "f9ca", "--arity", "5")
    assert code == 0 and rep["payload"]["arity"] == 4
    path = tmp_path / "q.json"
    path.write_text(json.dumps(rep["payload"]))
    _, red = one("qg", "reducible", str(path))
    assert red["payload"] == {"reducible": False}
    _, kap = one("qg", "kappa", str(path))
    assert kap["payload"]["kappa"] == 2

    table = json.dumps(group_sum(4, 3).to_json())
    _, red = one("qg", "reducible", "-", stdin=table)
    assert red["payload"]["reducible"] is True and red["payload"]["block"] == [0, 1]
    out = io.StringIO()
    run(["qg", "from-bool", "f9ca", "--arity", "5"], stdout=out)
    _, red = one("qg", "reducible", "-", stdin=out.getvalue())
    assert red["payload"] == {"reducible": False}
    code, rep = one("qg", "kappa", str(tmp_path / "missing.json"))
    assert code == 2
    code, rep = one("qg", "reducible", "-", stdin='{"order": 2, "arity": 3, "values": [0]}')
    assert code == 2


def test_usage_errors_exit_2():
    for argv in ([], ["bogus"], ["verify"], ["verify", "theorem1"], ["gen", "gn", "x"]):
        code, rep = one(*argv)
        assert code == 2 and rep["status"] == "error"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "switchsep.cli", "check", G13],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["separable"] is False
