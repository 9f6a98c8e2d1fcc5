"""Pass/fail reports shared by the check suites and the CLI."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __len__(self):
        return len(self.checks)

    def summary(self):
        bad = len(self.failures())
        return "%s: %d checks, %d failed" % (self.title, len(self.checks), bad)

    def to_text(self, verbose=True):
        lines = [self.summary()]
        for c in self.checks:
            if verbose or not c.passed:
                tail = "  (%s)" % c.detail if c.detail else ""
                lines.append("  [%s] %s%s" % ("pass" if c.passed else "FAIL", c.name, tail))
        return "\n".join(lines)

    def as_dict(self):
        return {"title": self.title, "ok": self.ok,
                "checks": [c.as_dict() for c in self.checks], "data": self.data}
