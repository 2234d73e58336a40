import io
import json

import pytest

from src.cli import EVENT_GRAMMAR, RunConfig, build_parser, main
from src.cli.report import dumps, encode
from src.core.embedding import McEstimate
from src.core.errors import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILURE, InputError
from src.core.hypergraph import complete_graph, format_hypergraph, random_hypergraph
from src.core.uip import Downset, UipProblem, problem_to_json, product_system, random_null_events

K3 = format_hypergraph(complete_graph(3))
K4 = format_hypergraph(complete_graph(4))


def run(*argv):
    """执行命令行，返回 (退出码, 标准输出, 标准错误)"""
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


class TestCount:
    """count 子命令"""

    def test_triangle_on_k3(self, write_file):
        report = run_json("count", "--graph", write_file("k3.hg", K3), "--motif", "triangle")
        assert report["count"] == 6
        assert report["unlabeled"] == 1
        assert report["density"] == {"num": 2, "den": 9, "float": 2 / 9}

    def test_aps(self, write_file):
        path = write_file("a.set", "7\n0\n1\n2\n3\n4\n5\n6\n")
        report = run_json("count", "--aps", path, "--k", "3", "--nontrivial")
        assert report["count"] == 42

    def test_corners_with_reduction(self, write_file):
        path = write_file("grid.set", "3\n0 0\n1 0\n0 1\n2 2\n")
        report = run_json("count", "--corners", path, "--reduction")
        assert report["tripartite_triangles"] == 6 * report["count"]

    def test_graph_needs_motif(self, write_file):
        code, _, err = run("count", "--graph", write_file("k3.hg", K3))
        assert code == EXIT_INPUT_ERROR
        assert "usage: removal-lab" in err


class TestEmbed:
    """embed 子命令"""

    def test_edge_on_k3(self, write_file):
        report = run_json("embed", "--graph", write_file("k3.hg", K3), "--event", "A(1,2)")
        assert report["event"] == "A(1,2)"
        assert report["p"]["num"] == 2
        assert report["p"]["den"] == 3

    def test_several_events(self, write_file):
        report = run_json("embed", "--graph", write_file("k3.hg", K3),
                          "--event", "A(1,2)", "--event", "A(1,2)&A(2,3)&A(1,3)")
        assert [item["p"]["den"] for item in report["events"]] == [3, 9]

    def test_monte_carlo(self, write_file):
        report = run_json("embed", "--graph", write_file("k3.hg", K3), "--event", "A(1,2)|!A(1,2)",
                          "--mode", "mc", "--samples", "100", "--seed", "1")
        assert report["p"]["estimate"] == 1.0
        assert report["p"]["hits"] == 100

    def test_furstenberg(self, write_file):
        path = write_file("a.set", "6\n0\n1\n")
        report = run_json("embed", "--furstenberg", "6", "--set", path, "--m", "3", "--event", "A[0]&A[1]")
        assert report["p"]["num"] == 1
        assert report["p"]["den"] == 12

    def test_furstenberg_modulus_must_match(self, write_file):
        path = write_file("a.set", "5\n0\n")
        code, _, _ = run("embed", "--furstenberg", "6", "--set", path, "--m", "3", "--event", "A[0]")
        assert code == EXIT_INPUT_ERROR

    def test_syntax_error(self, write_file):
        code, out, err = run("embed", "--graph", write_file("k3.hg", K3), "--event", "A(1,2")
        assert code == EXIT_INPUT_ERROR
        assert out == ""
        assert "usage: removal-lab" in err

    def test_missing_seed(self, write_file):
        code, _, err = run("embed", "--graph", write_file("k3.hg", K3), "--event", "A(1,2)",
                           "--mode", "mc", "--samples", "10")
        assert code == EXIT_INPUT_ERROR
        assert "--seed" in err


class TestRemove:
    """remove 子命令"""

    def test_greedy_on_k4(self, write_file, tmp_path):
        out_graph = str(tmp_path / "free.hg")
        report = run_json("remove", "--graph", write_file("k4.hg", K4), "--motif", "triangle",
                          "--write-graph", out_graph)
        assert report["residual_count"] == 0
        assert report["free"]
        assert "timing" not in report
        with open(out_graph, encoding="utf-8") as f:
            assert f.readline().strip() == "2 4"

    def test_partition_needs_seed(self, write_file):
        code, _, _ = run("remove", "--graph", write_file("k4.hg", K4), "--motif", "triangle",
                         "--method", "partition")
        assert code == EXIT_INPUT_ERROR

    def test_strong(self, write_file):
        G = format_hypergraph(random_hypergraph(20, 2, 0.5, seed=3))
        report = run_json("remove", "--graph", write_file("g.hg", G), "--motif", "triangle",
                          "--method", "strong", "--poll-size", "3", "--seed", "3")
        assert report["residual_count"] == 0
        assert report["diff"] == report["deletions"]["count"] + len(report["added"])

    def test_missing_file(self, tmp_path):
        code, _, _ = run("remove", "--graph", str(tmp_path / "none.hg"), "--motif", "triangle")
        assert code == EXIT_INPUT_ERROR


class TestUipDemo:
    """uip-demo 子命令"""

    def test_example(self):
        report = run_json("uip-demo", "--example")
        assert report["certificate"]["empty"]
        assert report["events"]["{1}"]["F"] == []

    def test_problem_file(self, write_file):
        system = product_system(2, Downset.up_to(2, 1), seed=5)
        problem = UipProblem(system, random_null_events(system, seed=5), "1/10")
        path = write_file("problem.json", json.dumps(problem_to_json(problem)))
        report = run_json("uip-demo", "--problem", path, "--eps", "1/100")
        assert report["certificate"]["eps"]["den"] == 100
        assert report["certificate"]["within_eps"]

    def test_unreadable_problem(self, write_file):
        code, _, _ = run("uip-demo", "--problem", write_file("bad.json", "{"))
        assert code == EXIT_INPUT_ERROR


class TestConverge:
    """converge 子命令"""

    def test_graph_files(self, write_file, tmp_path):
        paths = [write_file(f"k{n}.hg", format_hypergraph(complete_graph(n))) for n in (3, 4, 5)]
        csv_path = str(tmp_path / "table.csv")
        report = run_json("converge", "--graphs", *paths, "--event", "A(1,2)", "--tol", "1/2",
                          "--csv", csv_path)
        assert report["subsequence"] == [0, 1, 2]
        assert not report["degenerate"]
        with open(csv_path, encoding="utf-8") as f:
            assert f.read().count("\n") == 4

    def test_random_sizes_need_seed(self):
        code, _, _ = run("converge", "--random-sizes", "5,10", "--p", "1/2", "--event", "A(1,2)",
                         "--tol", "1/10")
        assert code == EXIT_INPUT_ERROR


class TestRegcurveAndShiftsys:
    """regcurve 与 shiftsys 子命令"""

    def test_regcurve(self):
        report = run_json("regcurve", "--random", "15", "--p", "1/2", "--polls", "0,2",
                          "--trials", "2", "--seed", "4")
        assert report["n"] == 15
        assert [point["poll_size"] for point in report["curve"]] == [0, 2]

    def test_shiftsys(self, write_file):
        path = write_file("grid.set", "4\n0 0\n1 0\n0 1\n3 2\n")
        report = run_json("shiftsys", "--set", path, "--window", "2", "--series")
        assert report["embed"] == report["rhs_average"]
        assert sorted(report["series"], key=int) == ["-2", "-1", "0", "1", "2"]

    def test_failed_identity_exits_with_one(self, write_file, monkeypatch):
        from fractions import Fraction
        monkeypatch.setattr("src.cli.commands.tripartite_rhs_average", lambda system, N: Fraction(-1))
        code, _, err = run("shiftsys", "--set", write_file("grid.set", "2\n0 0\n"), "--window", "1")
        assert code == EXIT_VERIFICATION_FAILURE
        assert "校验失败" in err


class TestDeterminism:
    """报告与线程数无关，耗时写到单独的文件"""

    @pytest.mark.parametrize("argv", [
        ("embed", "--event", "A(1,2)&A(2,3)", "--mode", "mc", "--samples", "20000", "--seed", "9"),
        ("count", "--motif", "k4"),
        ("regcurve", "--polls", "0,3", "--trials", "2", "--seed", "2"),
    ])
    def test_reports_are_identical_across_threads(self, write_file, argv):
        path = write_file("g.hg", format_hypergraph(random_hypergraph(25, 2, 0.4, seed=1)))
        outputs = set()
        for threads in ("1", "2", "8"):
            code, out, err = run(argv[0], "--graph", path, *argv[1:], "--threads", threads)
            assert code == EXIT_OK, err
            outputs.add(out)
        assert len(outputs) == 1

    def test_timing_file(self, write_file, tmp_path):
        timing = str(tmp_path / "timing.json")
        code, out, _ = run("count", "--graph", write_file("k3.hg", K3), "--motif", "edge", "--timing", timing)
        assert code == EXIT_OK
        assert "seconds" not in out
        with open(timing, encoding="utf-8") as f:
            assert json.load(f)["wall_seconds"] >= 0


class TestParser:
    """参数解析与报告编码"""

    def test_help_contains_the_grammar(self, capsys):
        assert main(["embed", "--help"]) == EXIT_OK
        assert "expr    := and" in capsys.readouterr().out
        assert "退出码" in EVENT_GRAMMAR

    def test_argparse_errors_exit_with_two(self):
        assert main(["count"]) == EXIT_INPUT_ERROR
        assert main(["frobnicate"]) == EXIT_INPUT_ERROR

    def test_run_config(self):
        ns = build_parser().parse_args(["count", "--aps", "a.set", "--k", "3", "--nontrivial"])
        config = RunConfig.from_namespace(ns)
        assert config.k == 3
        assert not config.include_trivial
        assert not config.stochastic

    def test_validation(self):
        with pytest.raises(InputError):
            RunConfig("regcurve", graph="g.hg", polls=[0]).validate()
        with pytest.raises(InputError):
            RunConfig("count", graph="g.hg", motif="edge", threads=0).validate()
        with pytest.raises(InputError):
            RunConfig("shiftsys", set_path="a.set", window=0).validate()

    def test_encode(self):
        from fractions import Fraction
        assert encode({1: Fraction(1, 2)}) == {"1": {"num": 1, "den": 2, "float": 0.5}}
        assert encode({"s": frozenset({3, 1})}) == {"s": [1, 3]}
        assert encode(McEstimate(0.5, 0.1, 10, 5))["hits"] == 5
        with pytest.raises(TypeError):
            encode(object())
        assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
