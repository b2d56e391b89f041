# configs/registry.py
from pathlib import Path
from typing import List, Tuple

import yaml

PROFILE_BASE_PATH = Path(__file__).resolve().parent / "profiles"


class ProfileRegistry:
    def __init__(self, base_path: Path = PROFILE_BASE_PATH):
        self.base_path = Path(base_path)
        self._cache = {}

    def available(self) -> List[str]:
        return sorted(p.stem for p in self.base_path.glob("*.yaml"))

    def load(self, name: str) -> dict:
        if name in self._cache:
            return self._cache[name]

        path = self.base_path / f"{name}.yaml"
        if not path.exists():
            raise FileNotFoundError(
                f"Profile not found: {path}. Known profiles: {', '.join(self.available())}"
            )

        with open(path, "r") as f:
            profile = yaml.safe_load(f)

        self._cache[name] = profile
        return profile

    def load_checks(self, name: str) -> List[Tuple[str, dict]]:
        profile = self.load(name)
        checks = []
        for entry in profile.get("checks", []):
            if "check" not in entry:
                raise ValueError(f"Profile {name} has an entry without a check name: {entry}")
            checks.append((entry["check"], dict(entry.get("params") or {})))
        return checks
