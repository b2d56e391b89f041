# ===============================
# VERIFICATION CLI
# ===============================
import argparse
import sys
from typing import List, Optional, Tuple

from pydantic import ValidationError

from configs.registry import ProfileRegistry
from configs.schema import RunConfig
from core.errors import QcvError
from core.log import get_logger, set_level
from group.blocks import BlockForm
from group.element import classical_limit, group_element, symplectic_leaf
from group.seed import cluster_seed, word_text
from representations.generators import parse_rep
from verification.registry import CHECK_DEFINITIONS, is_experimental, run_checks
from verification.render import render_object, render_reports

logger = get_logger("cli")

# -------------------------------
# CONFIG
# -------------------------------

FULL_PROFILE = "acceptance"
QUICK_PROFILE = "quick"
EMIT_TARGETS = ("seed", "group-element", "leaf")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcv", description="Exact verification of the quantum group SL_q(N) as a cluster variety.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    check = sub.add_parser("check", help="run verification checks")
    check.add_argument("target", choices=sorted(CHECK_DEFINITIONS) + ["all"])
    emit = sub.add_parser("emit", help="print a constructed object")
    emit.add_argument("target", choices=EMIT_TARGETS)

    for p in (check, emit):
        p.add_argument("--n", type=int, help="rank; the group is SL_q(n+1)")
        p.add_argument("--rep", help="fund | sym:<k> | trunc:<M>")
        p.add_argument("--degree", type=int, help="series truncation degree")
        p.add_argument("--guard", type=int, help="extra degrees beyond the exact support")
        p.add_argument("--tol", type=float, help="relative tolerance for numeric checks")
        p.add_argument("--x", dest="xs", type=float, action="append", default=[], help="sample point, repeatable")
        p.add_argument("--max-n", dest="max_n", type=int)
        p.add_argument("--max-k", dest="max_k", type=int)
        p.add_argument("--size", type=int, help="truncation size of the lowest-weight module")
        p.add_argument("--perturbed", action="store_true", help="run the perturbed (failing) series variant")
        p.add_argument("--dump", action="store_true", help="include intermediate objects in the output")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--out", help="write the output to this file instead of stdout")
        p.add_argument("--quick", action="store_true", help="reduced sizes for `check all`")
        p.add_argument("--experimental", action="store_true", help="also run experimental checks")
        p.add_argument("--threads", type=int, help="parallel checks (default QCV_THREADS or 1)")
        p.add_argument("--no-timing", dest="timing", action="store_false", help="omit elapsed_ms")
        p.add_argument("--form", default="mv", help="block form for `emit group-element`")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    if args.get("threads") is None:
        args.pop("threads", None)
    return RunConfig(**args)


# -------------------------------
# CHECKS
# -------------------------------

def check_plan(cfg: RunConfig):
    if cfg.target != "all":
        return [(cfg.target, cfg.params_for(cfg.target))]
    plan = ProfileRegistry().load_checks(QUICK_PROFILE if cfg.quick else FULL_PROFILE)
    if cfg.experimental:
        plan += [(name, {}) for name in CHECK_DEFINITIONS if is_experimental(name)]
    return plan


def run_check_command(cfg: RunConfig) -> Tuple[str, int]:
    if is_experimental(cfg.target) and not cfg.experimental:
        raise QcvError(f"Check {cfg.target} is experimental; pass --experimental to run it")
    reports = run_checks(check_plan(cfg), cfg.threads)
    if not cfg.dump:
        for r in reports:
            r.details = {}
    code = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    return render_reports(reports, cfg.format, cfg.timing), code


# -------------------------------
# EMITTERS
# -------------------------------

def emit_object(cfg: RunConfig) -> dict:
    n = cfg.n or 1
    if cfg.target == "seed":
        seed = cluster_seed(n)
        out = seed.to_dict()
        out["D_text"] = word_text(seed.D)
        return out

    if cfg.target == "group-element":
        form = BlockForm.parse(cfg.form)
        rep = parse_rep(cfg.rep or "fund", n)
        g = group_element(n, form, rep)
        out = {
            "n": n, "form": form.value, "rep": rep.label,
            "variables": list(g.ctx.variables),
            "matrix": g.matrix.to_rows_text(),
        }
        if cfg.dump:
            out["pretty"] = g.matrix.pretty()
            out["classical"] = [[str(x) for x in row] for row in g.classical().tolist()]
        return out

    leaf = symplectic_leaf(n)
    return {
        "n": n,
        "matrix": leaf.to_rows_text(),
        "classical": [[str(x) for x in row] for row in classical_limit(leaf).tolist()],
    }


# -------------------------------
# ENTRY
# -------------------------------

def write_output(text: str, cfg: RunConfig):
    if cfg.out is None:
        sys.stdout.write(text)
        return
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.out, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("wrote %s", cfg.out)


def run(argv: Optional[List[str]] = None) -> int:
    """0 when every check passes, 1 on any FAIL, 2 on usage or parameter errors."""
    try:
        cfg = parse_config(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (ValidationError, ValueError) as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return EXIT_USAGE

    if cfg.verbose:
        set_level("INFO")

    try:
        if cfg.subcommand == "check":
            text, code = run_check_command(cfg)
        else:
            text, code = render_object(emit_object(cfg), cfg.format), EXIT_PASS
    except (QcvError, ValueError, FileNotFoundError) as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return EXIT_USAGE

    write_output(text, cfg)
    return code


if __name__ == "__main__":
    sys.exit(run())
