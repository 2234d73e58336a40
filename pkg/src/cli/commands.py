"""各子命令的执行逻辑：读取输入、调用库函数、组织报告"""
from typing import Any, Callable, Dict

from src.cli.run_config import RunConfig
from src.core.arithmetic import (
    FiniteShiftSystem,
    ap_density,
    corner_density,
    corners_to_tripartite,
    count_aps,
    count_corners,
    read_grid_set,
    read_zn_set,
    recurrence_series,
    tripartite_embed_prob,
    tripartite_rhs_average,
    tripartite_upper_bound,
)
from src.core.embedding import FurstenbergInstance, embed_prob, format_event, furstenberg_prob, parse_event
from src.core.errors import InputError, VerificationFailure
from src.core.hypergraph import (
    copy_density,
    count_labeled_copies,
    count_unlabeled_copies,
    parse_motif,
    random_hypergraph,
    read_hypergraph,
    triangle_motif,
    write_hypergraph,
)
from src.core.limits import density_table, regularity_defect_curve, subsequence_report
from src.core.removal import get_method
from src.core.uip import read_problem, solution_to_json, three_point_example, uip_construct, UipProblem
from src.utils.logger import get_logger
from src.utils.rational import parse_rational

logger = get_logger()

Report = Dict[str, Any]


def run_count(config: RunConfig) -> Report:
    if config.graph:
        G = read_hypergraph(config.graph)
        G0 = parse_motif(config.motif, G.d)
        return {
            "count": count_labeled_copies(G, G0),
            "unlabeled": count_unlabeled_copies(G, G0),
            "density": copy_density(G, G0),
        }
    if config.aps:
        A = read_zn_set(config.aps)
        return {
            "N": A.N,
            "k": config.k,
            "count": count_aps(A, config.k, config.include_trivial),
            "density": ap_density(A, config.k, config.include_trivial),
        }
    A = read_grid_set(config.corners)
    count = count_corners(A, config.include_trivial)
    report: Report = {"M": A.M, "count": count, "density": corner_density(A, config.include_trivial)}
    if config.reduction:
        if not config.include_trivial:
            raise InputError("归约检查需要计入退化角")
        triangles = count_labeled_copies(corners_to_tripartite(A), triangle_motif())
        if triangles != 6 * count:
            raise VerificationFailure(f"三部图有序三角形数 {triangles} ≠ 6 × 角数 {count}")
        report["tripartite_triangles"] = triangles
    return report


def run_embed(config: RunConfig) -> Report:
    events = [parse_event(text) for text in config.events]
    if config.furstenberg is not None:
        A = read_zn_set(config.set_path)
        if A.N != config.furstenberg:
            raise InputError(f"集合文件的模数 {A.N} 与 --furstenberg {config.furstenberg} 不一致")
        inst = FurstenbergInstance.of(A.N, A.members, config.m)
        values = [furstenberg_prob(inst, E) for E in events]
    else:
        G = read_hypergraph(config.graph)
        values = [embed_prob(G, E, config.mode, config.samples, config.seed) for E in events]
    if len(events) == 1:
        return {"event": format_event(events[0]), "p": values[0]}
    return {"events": [{"event": format_event(E), "p": v} for E, v in zip(events, values)]}


def run_remove(config: RunConfig) -> Report:
    G = read_hypergraph(config.graph)
    G0 = parse_motif(config.motif, G.d)
    method = get_method(config.method, config.poll_size, config.tau, config.seed)
    result = method.remove(G, G0)
    if not result.free:
        raise VerificationFailure(f"删除后仍有 {result.residual} 个模体拷贝")
    if config.write_graph:
        write_hypergraph(result.graph, config.write_graph)
    logger.info(f"删除完成: 方法={result.method}, 删除 {result.deletion_count} 条边, 剩余拷贝 {result.residual}")
    return result.to_report()


def run_uip_demo(config: RunConfig) -> Report:
    if config.example:
        system, events = three_point_example()
        problem = UipProblem(system, events, config.eps or "1/10")
    else:
        problem = read_problem(config.problem)
        if config.eps is not None:
            problem = UipProblem(problem.system, problem.events, config.eps)
    solution = uip_construct(problem, best_effort=config.best_effort, tol=config.tol)
    return solution_to_json(problem, solution)


def run_converge(config: RunConfig) -> Report:
    events = [parse_event(text) for text in config.events]
    if config.random_sizes:
        p = parse_rational(config.p)
        graphs = [random_hypergraph(n, config.d, p, config.seed) for n in config.random_sizes]
        labels = [f"n={n}" for n in config.random_sizes]
    else:
        graphs = [read_hypergraph(path) for path in config.graphs]
        labels = list(config.graphs)
    table = density_table(graphs, events, config.mode, config.samples, config.seed, labels=labels)
    if config.csv:
        table.write_csv(config.csv)
    ok, details = subsequence_report(table, config.tol)
    return {
        "events": table.headers,
        "labels": table.labels,
        "rows": table.rows,
        "subsequence": details["rows"],
        "spread": details["spread"],
        "degenerate": not ok,
    }


def run_regcurve(config: RunConfig) -> Report:
    if config.graph:
        G = read_hypergraph(config.graph)
    else:
        G = random_hypergraph(config.random_n, 2, parse_rational(config.p), config.seed)
    curve = regularity_defect_curve(G, config.polls, config.trials, config.seed, config.samples)
    return {"n": G.n, "curve": curve}


def run_shiftsys(config: RunConfig) -> Report:
    system = FiniteShiftSystem(read_grid_set(config.set_path))
    N = config.window
    embed = tripartite_embed_prob(system, N)
    rhs = tripartite_rhs_average(system, N)
    bound = tripartite_upper_bound(system, N)
    if embed != rhs:
        raise VerificationFailure(f"三部图嵌入概率 {embed} 与右侧平均 {rhs} 不相等")
    if embed > bound:
        raise VerificationFailure(f"三部图嵌入概率 {embed} 超过上界 {bound}")
    report: Report = {"M": system.M, "N": N, "embed": embed, "rhs_average": rhs, "upper_bound": bound}
    if config.series:
        report["series"] = {str(n): v for n, v in recurrence_series(system, N).items()}
    return report


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    "count": run_count,
    "embed": run_embed,
    "remove": run_remove,
    "uip-demo": run_uip_demo,
    "converge": run_converge,
    "regcurve": run_regcurve,
    "shiftsys": run_shiftsys,
}
