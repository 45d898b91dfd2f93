"""Check reports shared by the verification suites and the CLI.

Reports are deterministic: given the same inputs and seed they must render
byte-identically, so no wall-clock data lives here (the CLI prints timing
to stderr instead).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: dict | None = None


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    seed: int | None = None

    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "", witness=None) -> None:
        self.checks.append(Check(name, ok, detail, witness))

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else "FAIL"
            line = f"{status} {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness and not c.ok:
                for key in sorted(c.witness):
                    lines.append(f"  {key}: {c.witness[key]}")
        good = sum(1 for c in self.checks if c.ok)
        lines.append(f"passed {good}/{len(self.checks)} checks")
        return "\n".join(lines)

    def to_json(self) -> dict:
        body = {
            "command": self.command,
            "ok": self.ok(),
            "checks": [
                {
                    "name": c.name,
                    "ok": c.ok,
                    "detail": c.detail,
                    "witness": c.witness,
                }
                for c in self.checks
            ],
            "counts": dict(sorted(self.counts.items())),
        }
        if self.seed is not None:
            body["seed"] = self.seed
        return body
