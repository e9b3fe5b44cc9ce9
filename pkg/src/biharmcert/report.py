"""Verification outcomes shared by the symbolic and the geometric checks."""

from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class StepReport:
    """One checked claim.  ``witness`` is ``"0"`` exactly when it holds."""

    name: str
    claim: str
    paper_ref: str
    witness: str
    notes: tuple = ()
    data: dict = field(default_factory=dict, compare=False)

    @property
    def status(self) -> str:
        return VERIFIED if self.witness == "0" else MISMATCH

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @classmethod
    def from_residual(cls, name, claim, paper_ref, residual, notes=(), **data) -> StepReport:
        """Report on a residual polynomial (or rational function) that must vanish."""
        return cls(name, claim, paper_ref, str(residual), tuple(notes), data)

    @classmethod
    def from_comparison(cls, name, claim, paper_ref, expected, got, notes=(), **data) -> StepReport:
        """Compare two equal-length sequences of exact values entry by entry."""
        from .exactnum import format_rational

        def fmt(x):
            try:
                return format_rational(x)
            except (TypeError, ValueError):
                return str(x)

        expected, got = tuple(expected), tuple(got)
        if len(expected) != len(got):
            witness = f"length {len(got)} != {len(expected)}"
        else:
            bad = [
                f"[{i}] expected {fmt(e)} got {fmt(g)}"
                for i, (e, g) in enumerate(zip(expected, got))
                if e != g
            ]
            witness = "; ".join(bad) if bad else "0"
        data = {"expected": expected, "got": got, **data}
        return cls(name, claim, paper_ref, witness, tuple(notes), data)

    @classmethod
    def from_bool(cls, name, claim, paper_ref, ok: bool, detail: str = "", notes=(), **data):
        return cls(name, claim, paper_ref, "0" if ok else (detail or "claim is false"), tuple(notes), data)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Certificate:
    name: str
    steps: tuple
    conclusion: str

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def verified(self) -> bool:
        return all(s.verified for s in self.steps)

    @property
    def status(self) -> str:
        return VERIFIED if self.verified else MISMATCH

    def failed_steps(self) -> list:
        return [s for s in self.steps if not s.verified]

    def step(self, name: str) -> StepReport:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "conclusion": self.conclusion,
            "steps": [s.to_dict() for s in self.steps],
        }
