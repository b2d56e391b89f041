# group/contexts.py
from fractions import Fraction
from typing import Dict, List, Union

from algebra.torus import TorusContext, TorusElement
from group.seed import block_count, cluster_seed

# ============================================================
# VARIABLE NAMES
# ============================================================

MV_NAMES = ("psi", "Phi", "chi")
FG_NAMES = ("w", "x", "y")
ALT_MV_NAMES = ("alpha", "B", "gamma")
ALT_FG_NAMES = ("a", "b", "c")


def block_variables(names, i: int) -> tuple:
    return tuple(f"{name}_{i}" for name in names)


def _variables(names, n: int) -> List[str]:
    out = []
    for i in range(1, block_count(n) + 1):
        out.extend(block_variables(names, i))
    return out


# ============================================================
# CONTEXTS
# ============================================================

def mv_context(n: int, omega_scale: Union[int, Fraction] = 1) -> TorusContext:
    """
    psi_i, Phi_i = q^{phi_i}, chi_i with Phi psi = q^2 psi Phi, Phi chi = q^2 chi Phi;
    different blocks commute. omega_scale 0 and 1/2 give the negative controls.
    """
    relations = {}
    for i in range(1, block_count(n) + 1):
        psi, phi, chi = block_variables(MV_NAMES, i)
        relations[(phi, psi)] = 2
        relations[(phi, chi)] = 2
    ctx = TorusContext.from_relations(_variables(MV_NAMES, n), relations)
    return ctx if omega_scale == 1 else ctx.scaled(omega_scale)


def fg_context(n: int) -> TorusContext:
    """w_i, x_i, y_i with omega = 2 epsilon of the cluster seed."""
    seed = cluster_seed(n)
    return TorusContext(tuple(seed.variables), seed.omega())


def alt_mv_context(n: int) -> TorusContext:
    """alpha_i, B_i = q^{beta_i}, gamma_i with B alpha = q^2 alpha B, B gamma = q^2 gamma B."""
    relations = {}
    for i in range(1, block_count(n) + 1):
        alpha, beta, gamma = block_variables(ALT_MV_NAMES, i)
        relations[(beta, alpha)] = 2
        relations[(beta, gamma)] = 2
    return TorusContext.from_relations(_variables(ALT_MV_NAMES, n), relations)


def alt_fg_context(n: int) -> TorusContext:
    """a_i, b_i, c_i with b a = q^{-2} a b, b c = q^{-2} c b, a c = c a."""
    relations = {}
    for i in range(1, block_count(n) + 1):
        a, b, c = block_variables(ALT_FG_NAMES, i)
        relations[(b, a)] = -2
        relations[(b, c)] = -2
    return TorusContext.from_relations(_variables(ALT_FG_NAMES, n), relations)


def leaf_context(n: int) -> TorusContext:
    """w_i, x_i of the first n blocks."""
    names = []
    for i in range(1, n + 1):
        names.extend(block_variables(FG_NAMES[:2], i))
    return fg_context(n).restrict(names)


# ============================================================
# CHANGES OF VARIABLES
# ============================================================

def mv_to_fg_images(n: int, mv: TorusContext, fg: TorusContext) -> Dict[str, TorusElement]:
    """psi_i -> w_i, chi_i -> y_i, Phi_i -> w_i x_i y_i."""
    images = {}
    for i in range(1, block_count(n) + 1):
        psi, phi, chi = block_variables(MV_NAMES, i)
        w, x, y = block_variables(FG_NAMES, i)
        images[psi] = TorusElement.variable(fg, w)
        images[chi] = TorusElement.variable(fg, y)
        images[phi] = TorusElement.monomial(fg, {w: 1, x: 1, y: 1})
    for name in mv.variables:
        if name not in images:
            raise KeyError(f"No FG image for {name}")
    return images


def alt_mv_to_fg_images(n: int, alt_mv: TorusContext, alt_fg: TorusContext) -> Dict[str, TorusElement]:
    """B_i -> a_i b_i c_i, alpha_i -> 1/a_i, gamma_i -> 1/c_i."""
    images = {}
    for i in range(1, block_count(n) + 1):
        alpha, beta, gamma = block_variables(ALT_MV_NAMES, i)
        a, b, c = block_variables(ALT_FG_NAMES, i)
        images[alpha] = TorusElement.variable(alt_fg, a, -1)
        images[gamma] = TorusElement.variable(alt_fg, c, -1)
        images[beta] = TorusElement.monomial(alt_fg, {a: 1, b: 1, c: 1})
    return images


def apow_context() -> TorusContext:
    """w, x with x w = q^2 w x."""
    return TorusContext.from_relations(("w", "x"), {("x", "w"): 2})


def cpow_context() -> TorusContext:
    """x, y with x y = q^2 y x."""
    return TorusContext.from_relations(("x", "y"), {("x", "y"): 2})
