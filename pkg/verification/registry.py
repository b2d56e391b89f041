# verification/registry.py
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence, Tuple

from core.errors import ParameterError, QcvError
from core.log import get_logger
from core.qcombinatorics import QBase
from representations.generators import parse_rep
from verification.closed_forms import verify_apow, verify_qexp_closed_forms
from verification.defining import (
    CONTROLS, verify_alt_mv_fg, verify_defining_control, verify_defining_equation, verify_leaf, verify_mv_fg,
    verify_relations,
)
from verification.hypergeometric import DEFAULT_TOL, DEFAULT_XS, verify_hypergeometric_q1
from verification.mutation import (
    DEFAULT_GUARD, verify_mutation, verify_mutation_infinite, verify_mutation_slN, verify_mutation_symmetric,
)
from verification.series_checks import check_qexp_factorization, compute_albega, verify_fourth_mv_equation
from verification.types import Mismatch, VerificationReport

logger = get_logger("verification.registry")

Runner = Callable[[dict], List[VerificationReport]]


def _as_list(value) -> list:
    if value is None:
        return []
    return list(value) if isinstance(value, (list, tuple)) else [value]


# --------------------
# runners: params -> reports
# --------------------

def _run_defining(params: dict) -> List[VerificationReport]:
    rep = params.get("rep", "fund")
    return [verify_defining_equation(n, parse_rep(rep, n)) for n in _as_list(params.get("n", 1))]


def _run_controls(params: dict) -> List[VerificationReport]:
    n = params.get("n", 1)
    kinds = _as_list(params.get("kinds")) or list(CONTROLS)
    return [verify_defining_control(kind, n, parse_rep(params.get("rep", "fund"), n)) for kind in kinds]


def _run_mv_fg(params: dict) -> List[VerificationReport]:
    reports = []
    for n in _as_list(params.get("n", 1)):
        reports.append(verify_mv_fg(n, parse_rep("fund", n)))
    for rep in _as_list(params.get("reps")):
        reports.append(verify_mv_fg(1, parse_rep(rep, 1)))
    return reports


def _run_relations(params: dict) -> List[VerificationReport]:
    n = params.get("n", 1)
    return [verify_relations(parse_rep(rep, n)) for rep in _as_list(params.get("rep", "fund"))]


def _run_leaf(params: dict) -> List[VerificationReport]:
    return [verify_leaf(n) for n in _as_list(params.get("n", 1))]


def _run_alt_mv_fg(params: dict) -> List[VerificationReport]:
    n = params.get("n", 1)
    return [verify_alt_mv_fg(parse_rep(rep, n), n) for rep in _as_list(params.get("rep", "fund"))]


def _run_mutation(params: dict) -> List[VerificationReport]:
    guard = params.get("guard", DEFAULT_GUARD)
    reports = [verify_mutation(parse_rep(rep, 1), guard) for rep in _as_list(params.get("rep"))]
    if params.get("max_k"):
        reports.append(verify_mutation_symmetric(params["max_k"], guard))
    if not reports:
        reports.append(verify_mutation(parse_rep("fund", 1), guard))
    return reports


def _run_mutation_sln(params: dict) -> List[VerificationReport]:
    n = params.get("n", 2)
    guard = params.get("guard", DEFAULT_GUARD)
    blocks = _as_list(params.get("blocks")) or list(range(1, n * (n + 1) // 2 + 1))
    return [verify_mutation_slN(n, i, guard) for i in blocks]


def _run_albega(params: dict) -> List[VerificationReport]:
    return [compute_albega(params.get("degree", 8), params.get("perturbed", False))[3]]


def _run_fourth_mv(params: dict) -> List[VerificationReport]:
    rep = parse_rep(params.get("rep", "fund"), params.get("n", 1))
    return [verify_fourth_mv_equation(rep, params.get("degree", 8), params.get("perturbed", False))]


def _run_qexp_fact(params: dict) -> List[VerificationReport]:
    degree = params.get("degree", 12)
    bases = _as_list(params.get("bases")) or [b.value for b in QBase]
    return [check_qexp_factorization(degree, QBase(base)) for base in bases]


def _run_apow(params: dict) -> List[VerificationReport]:
    return [verify_apow(params.get("max_n", 6))]


def _run_qexp_forms(params: dict) -> List[VerificationReport]:
    return [verify_qexp_closed_forms(params.get("M", 30), params.get("guard", 2))]


def _run_hyper(params: dict) -> List[VerificationReport]:
    return [verify_hypergeometric_q1(
        params.get("max_n", 25), params.get("max_k", 10),
        tuple(params.get("xs", DEFAULT_XS)), params.get("tol", DEFAULT_TOL),
    )]


def _run_mutation_infinite(params: dict) -> List[VerificationReport]:
    return [verify_mutation_infinite(
        params.get("M", 12), params.get("guard", 4), params.get("v", 1.05), params.get("x", 3.0),
        params.get("tol", 1e-6),
    )]


CHECK_DEFINITIONS: Dict[str, dict] = {
    "defining": {"runner": _run_defining, "description": "Delta(g) = g (x) g in the MV parametrization"},
    "defining-controls": {"runner": _run_controls, "description": "broken commutation or twist must fail"},
    "mv-fg": {"runner": _run_mv_fg, "description": "MV element maps onto the FG element"},
    "relations": {"runner": _run_relations, "description": "generator relations, untwisted and twisted"},
    "leaf": {"runner": _run_leaf, "description": "2n-dimensional symplectic leaf and its classical limit"},
    "alt-mv-fg": {"runner": _run_alt_mv_fg, "description": "MV-prime element maps onto the FG-prime element"},
    "mutation": {"runner": _run_mutation, "description": "sl_2 mutation identity over Laurent series in x"},
    "mutation-sln": {"runner": _run_mutation_sln, "description": "mutation identity inside sl_N blocks"},
    "appendix-a": {"runner": _run_albega, "description": "alpha, beta, gamma through psi, phi, chi"},
    "fourth-mv": {"runner": _run_fourth_mv, "description": "MV block against the MV-prime block over series"},
    "qexp-fact": {"runner": _run_qexp_fact, "description": "q-exponential factorization on the quantum plane"},
    "apow": {"runner": _run_apow, "description": "powers of the mutated variables"},
    "qexp-forms": {"runner": _run_qexp_forms, "description": "q-binomial matrix elements of q-exponentials"},
    "hyper": {"runner": _run_hyper, "description": "hypergeometric identity at q = 1"},
    "mutation-infinite": {
        "runner": _run_mutation_infinite, "description": "mutation on the lowest-weight module (numeric)",
        "experimental": True,
    },
}


def get_check(name: str) -> Runner:
    if name in CHECK_DEFINITIONS:
        return CHECK_DEFINITIONS[name]["runner"]
    available = ", ".join(sorted(CHECK_DEFINITIONS))
    raise ValueError(f"Check not registered: {name}. Known checks: {available}")


def is_experimental(name: str) -> bool:
    return bool(CHECK_DEFINITIONS.get(name, {}).get("experimental"))


def _failed_run(name: str, params: dict, error: QcvError) -> VerificationReport:
    """A FAIL report standing in for a runner that raised."""
    report = VerificationReport(check=name, eq_tag=CHECK_DEFINITIONS[name]["description"], params=params)
    actual = f"{type(error).__name__}: {error}"
    report.record(Mismatch(location="runner", expected="a completed check", actual=actual))
    return report


def run_checks(plan: Sequence[Tuple[str, dict]], threads: int = 1) -> List[VerificationReport]:
    """
    Run every (check, params) entry; reports come back in plan order whatever the thread count.
    A runner that raises a kernel error yields one FAIL report and the rest of the plan still runs.
    Parameter errors propagate as usage errors.
    """
    runners = [(name, get_check(name), params or {}) for name, params in plan]

    def run_one(entry):
        name, runner, params = entry
        logger.info("running %s with %s", name, params)
        try:
            return runner(params)
        except ParameterError:
            raise
        except QcvError as e:
            logger.error("%s aborted: %s", name, e)
            return [_failed_run(name, params, e)]

    if threads <= 1 or len(runners) <= 1:
        batches = [run_one(entry) for entry in runners]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(run_one, runners))
    return [report for batch in batches for report in batch]
