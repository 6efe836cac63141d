"""Structured result records shared by the entropy engine, checkers and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

Number = Union[int, float]


@dataclass(frozen=True)
class EntropyReport:
    """Subsystem entropy in bits; exact integer for the stabilizer backend."""

    region: str
    qubits: int
    entropy_bits: Number
    backend: str  # "stabilizer" | "dense"

    def __post_init__(self) -> None:
        if self.entropy_bits < 0:
            raise ValueError("entropy must be nonnegative")
        if self.backend == "stabilizer" and not isinstance(self.entropy_bits, int):
            raise ValueError("stabilizer entropies are exact integers")

    def as_dict(self) -> dict:
        return {
            "region": self.region,
            "qubits": self.qubits,
            "entropy_bits": self.entropy_bits,
            "backend": self.backend,
        }


@dataclass(frozen=True)
class BoundVerdict:
    """One inequality check: holds iff lhs <= rhs + tolerance."""

    name: str
    lhs: Number
    rhs: Number
    holds: bool
    slack: Number
    witness: Optional[str] = None
    tolerance: Number = 0

    def __post_init__(self) -> None:
        expected = self.lhs <= self.rhs + self.tolerance
        if self.holds != expected:
            raise ValueError("holds flag inconsistent with lhs/rhs/tolerance")

    @classmethod
    def check(
        cls,
        name: str,
        lhs: Number,
        rhs: Number,
        witness: Optional[str] = None,
        tolerance: Number = 0,
    ) -> "BoundVerdict":
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            holds=lhs <= rhs + tolerance,
            slack=rhs - lhs,
            witness=witness,
            tolerance=tolerance,
        )

    def as_dict(self) -> dict:
        out = {
            "bound": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "slack": self.slack,
        }
        if self.tolerance:
            out["tolerance"] = self.tolerance
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of entropy samples against a declared model form."""

    form: str
    coefficients: tuple[float, ...]
    residual_norm: float
    samples: tuple[tuple[float, float], ...]
    alpha_hat: Optional[float] = None
    gamma_hat: Optional[float] = None

    def __post_init__(self) -> None:
        if self.residual_norm < 0:
            raise ValueError("residual norm must be nonnegative")

    def as_dict(self) -> dict:
        out = {
            "form": self.form,
            "coefficients": list(self.coefficients),
            "residual_norm": self.residual_norm,
            "samples": [list(s) for s in self.samples],
        }
        if self.alpha_hat is not None:
            out["alpha_hat"] = self.alpha_hat
        if self.gamma_hat is not None:
            out["gamma_hat"] = self.gamma_hat
        return out
