"""命令行参数定义"""
import argparse

EVENT_GRAMMAR = """\
事件小语言（下标从 1 开始）:

    expr    := and ( '|' and )*
    and     := unary ( '&' unary )*
    unary   := '!' unary | atom
    atom    := 'A' '(' INT ( ',' INT )* ')'     图 / 超图叶子: 采样下标构成一条边
             | 'A' '[' ['-'] INT ']'           Furstenberg 叶子: x + nλ ∈ A
             | '(' expr ')'

示例: "A(1,2) & A(2,3) & A(1,3)"、"A[0] & A[1] & A[2]"、"!(A(1,2) | A(3,4))"

退出码: 0 成功, 1 证书校验失败, 2 输入错误
"""


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"应为逗号分隔的整数: {text!r}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="工作线程数，结果与线程数无关")
    common.add_argument("--output", default=None, help="报告输出路径，默认写到标准输出")
    common.add_argument("--timing", default=None, help="把耗时写入单独的 JSON 文件")
    common.add_argument("--verbose", action="store_true", help="输出调试日志")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="removal-lab",
        description="超图删除引理、通用嵌入与一致交性质的有限规模实验工具",
        epilog=EVENT_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                              epilog=EVENT_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)

    count = add("count", "模体拷贝、Z_N 等差数列或 Z_M² 角的精确计数")
    source = count.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="超图文件")
    source.add_argument("--aps", metavar="FILE", help="Z_N 集合文件")
    source.add_argument("--corners", metavar="FILE", help="Z_M² 集合文件")
    count.add_argument("--motif", help="模体: edge / triangle / kN / clique:N / v0:1-2,2-3")
    count.add_argument("--k", type=int, default=None, help="等差数列长度")
    count.add_argument("--nontrivial", action="store_true", help="不计入公差 r = 0 的退化模式")
    count.add_argument("--reduction", action="store_true", help="同时检查角到三部图归约的三角形数")

    embed = add("embed", "正则事件在通用嵌入或 Furstenberg 嵌入下的概率")
    target = embed.add_mutually_exclusive_group(required=True)
    target.add_argument("--graph", help="超图文件")
    target.add_argument("--furstenberg", type=int, metavar="N", help="Furstenberg 嵌入的模数 N")
    embed.add_argument("--set", dest="set_path", metavar="FILE", help="Z_N 集合文件（Furstenberg 模式）")
    embed.add_argument("--m", type=int, default=None, help="尺度参数 m，L = ⌊N/m⌋")
    embed.add_argument("--event", action="append", default=[], required=True, help="事件，可重复")
    embed.add_argument("--mode", choices=["exact", "mc"], default="exact")
    embed.add_argument("--samples", type=int, default=None, help="蒙特卡洛样本数")
    embed.add_argument("--seed", type=int, default=None)

    remove = add("remove", "删除最少量的边使图不含模体，并重新计数验证")
    remove.add_argument("--graph", required=True, help="超图文件")
    remove.add_argument("--motif", required=True)
    remove.add_argument("--method", choices=["greedy", "partition", "strong"], default="greedy")
    remove.add_argument("--poll-size", type=int, default=None)
    remove.add_argument("--tau", default=None, help="稀疏块密度阈值，例如 3/10")
    remove.add_argument("--seed", type=int, default=None)
    remove.add_argument("--write-graph", default=None, help="把删除后的图写入文件")

    uip = add("uip-demo", "读取 UIP 问题并构造、校验证书")
    problem = uip.add_mutually_exclusive_group(required=True)
    problem.add_argument("--problem", help="UIP 问题 JSON 文件")
    problem.add_argument("--example", action="store_true", help="使用内置的三点示例")
    uip.add_argument("--eps", default=None, help="覆盖问题中的 ε，例如 1/10")
    uip.add_argument("--best-effort", action="store_true", help="允许近似满足的独立性假设")
    uip.add_argument("--tol", default=None, help="best-effort 模式的容差")

    converge = add("converge", "密度表与对角子序列")
    rows = converge.add_mutually_exclusive_group(required=True)
    rows.add_argument("--graphs", nargs="+", help="按顺序排列的超图文件")
    rows.add_argument("--random-sizes", type=_int_list, metavar="N1,N2,...", help="随机图 G(n, p) 的顶点数序列")
    converge.add_argument("--p", default=None, help="随机图的边概率")
    converge.add_argument("--d", type=int, default=2, help="随机超图的一致度")
    converge.add_argument("--event", action="append", default=[], required=True)
    converge.add_argument("--tol", required=True, help="子序列的列容差")
    converge.add_argument("--mode", choices=["exact", "mc"], default="exact")
    converge.add_argument("--samples", type=int, default=None)
    converge.add_argument("--seed", type=int, default=None)
    converge.add_argument("--csv", default=None, help="密度表 CSV 输出路径")

    regcurve = add("regcurve", "投票正则性缺陷曲线")
    graph = regcurve.add_mutually_exclusive_group(required=True)
    graph.add_argument("--graph", help="图文件 (d=2)")
    graph.add_argument("--random", type=int, metavar="N", help="使用随机图 G(N, p)")
    regcurve.add_argument("--p", default=None)
    regcurve.add_argument("--polls", type=_int_list, required=True, metavar="S1,S2,...")
    regcurve.add_argument("--trials", type=int, default=None)
    regcurve.add_argument("--samples", type=int, default=None, help="抽样三元组数，缺省时精确积分")
    regcurve.add_argument("--seed", type=int, default=None)

    shiftsys = add("shiftsys", "有限平移系统上的三部图嵌入恒等式与上界")
    shiftsys.add_argument("--set", dest="set_path", required=True, metavar="FILE", help="Z_M² 集合文件")
    shiftsys.add_argument("--window", type=int, required=True, metavar="N", help="平移窗口 [N]")
    shiftsys.add_argument("--series", action="store_true", help="同时输出 n ∈ [−N, N] 的逐项值")

    return parser
