"""Validation reports shared by every validator."""

from dataclasses import dataclass, field

from ._util import key, to_json

VALID, INVALID, LIMITED = "valid", "invalid", "resource-limited"


@dataclass(frozen=True)
class Violation:
    axiom: str
    instance: tuple
    lhs: object = None
    rhs: object = None
    kind: str = "axiom"  # or "schema"

    def as_json(self):
        return {"axiom": self.axiom, "kind": self.kind, "instance": to_json(self.instance),
                "lhs": to_json(self.lhs), "rhs": to_json(self.rhs)}


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)
    limited: bool = False

    @property
    def status(self):
        if self.limited:
            return LIMITED
        return INVALID if self.violations else VALID

    @property
    def ok(self):
        return self.status == VALID

    def __bool__(self):
        return self.ok

    def add(self, axiom, instance, lhs=None, rhs=None, kind="axiom"):
        self.violations.append(Violation(axiom, tuple(instance), lhs, rhs, kind))

    def schema(self, what, instance, detail=None):
        self.add(what, instance, detail, None, kind="schema")

    def check(self, axiom, instance, lhs, rhs):
        if lhs != rhs:
            self.add(axiom, instance, lhs, rhs)
            return False
        return True

    def extend(self, other, prefix=""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.instance, v.lhs, v.rhs, v.kind))
        self.limited = self.limited or other.limited

    @property
    def schema_errors(self):
        return [v for v in self.violations if v.kind == "schema"]

    @property
    def axiom_failures(self):
        return [v for v in self.violations if v.kind == "axiom"]

    def axioms(self):
        return sorted({v.axiom for v in self.violations})

    def sorted_violations(self):
        return sorted(self.violations, key=lambda v: (v.kind, v.axiom, key(to_json(v.instance))))

    def as_json(self):
        return {"subject": self.subject, "status": self.status,
                "violations": [v.as_json() for v in self.sorted_violations()]}

    def summary(self):
        if self.ok:
            return f"{self.subject}: valid"
        v = self.sorted_violations()[0]
        return (f"{self.subject}: {self.status}, {len(self.violations)} violation(s); "
                f"first {v.kind} {v.axiom} at {v.instance}")
