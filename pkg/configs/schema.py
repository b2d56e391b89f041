# configs/schema.py
import os
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from representations.generators import rep_dimension

MAX_RANK = 6
MAX_REP_DIM = 64
MAX_DEGREE = 32


def threads_from_env() -> int:
    try:
        return max(1, int(os.environ.get("QCV_THREADS", "1")))
    except ValueError:
        return 1


class RunConfig(BaseModel):
    """Validated command line; unset numeric fields fall back to each check's own defaults."""
    subcommand: Literal["check", "emit"]
    target: str
    n: Optional[int] = Field(default=None, ge=1, le=MAX_RANK)
    rep: Optional[str] = None
    degree: Optional[int] = Field(default=None, ge=1, le=MAX_DEGREE)
    guard: Optional[int] = Field(default=None, ge=0, le=MAX_DEGREE)
    tol: Optional[float] = Field(default=None, gt=0)
    xs: List[float] = Field(default_factory=list)
    max_n: Optional[int] = Field(default=None, ge=1)
    max_k: Optional[int] = Field(default=None, ge=0)
    size: Optional[int] = Field(default=None, ge=2, le=MAX_REP_DIM)
    perturbed: bool = False
    dump: bool = False
    format: Literal["text", "structured"] = "text"
    out: Optional[Path] = None
    quick: bool = False
    experimental: bool = False
    threads: int = Field(default_factory=threads_from_env, ge=1)
    timing: bool = True
    form: str = "mv"
    verbose: bool = False

    @field_validator("xs")
    @classmethod
    def _outside_unit_disc(cls, xs: List[float]) -> List[float]:
        for x in xs:
            if abs(x) <= 1:
                raise ValueError(f"x must satisfy |x| > 1, got {x}")
        return xs

    @model_validator(mode="after")
    def _rep_fits(self) -> "RunConfig":
        if self.rep is not None:
            dim = rep_dimension(self.rep, self.n or 1)
            if dim > MAX_REP_DIM:
                raise ValueError(f"Representation {self.rep} has dimension {dim} > {MAX_REP_DIM}")
        return self

    def truncation_size(self) -> Optional[int]:
        """Size of the lowest-weight module: M from --rep trunc:M, else --size."""
        if self.rep is None:
            return self.size
        kind, _, _ = self.rep.partition(":")
        if kind != "trunc":
            raise ValueError(f"{self.target} runs on the truncated lowest-weight module, got --rep {self.rep}")
        M = rep_dimension(self.rep)
        if self.size is not None and self.size != M:
            raise ValueError(f"--size {self.size} disagrees with --rep {self.rep}")
        return M

    def params_for(self, check: str) -> dict:
        """Check parameters from the flags that were actually given."""
        rep_is_sl2 = self.rep is not None and not self.rep.startswith("fund")
        size = self.truncation_size() if check in ("qexp-forms", "mutation-infinite") else None
        candidates = {
            "defining": {"n": self.n, "rep": self.rep},
            "defining-controls": {"n": self.n},
            "mv-fg": {"reps": [self.rep]} if rep_is_sl2 else {"n": self.n},
            "relations": {"n": self.n, "rep": self.rep},
            "leaf": {"n": self.n},
            "alt-mv-fg": {"n": self.n, "rep": self.rep},
            "mutation": {"rep": self.rep, "guard": self.guard, "max_k": self.max_k},
            "mutation-sln": {"n": self.n, "guard": self.guard},
            "appendix-a": {"degree": self.degree, "perturbed": self.perturbed},
            "fourth-mv": {"n": self.n, "rep": self.rep, "degree": self.degree, "perturbed": self.perturbed},
            "qexp-fact": {"degree": self.degree},
            "apow": {"max_n": self.max_n},
            "qexp-forms": {"M": size, "guard": self.guard},
            "hyper": {
                "max_n": self.max_n, "max_k": self.max_k, "xs": self.xs or None, "tol": self.tol,
            },
            "mutation-infinite": {
                "M": size, "guard": self.guard, "tol": self.tol, "x": self.xs[0] if self.xs else None,
            },
        }
        return {k: v for k, v in candidates.get(check, {}).items() if v is not None}
