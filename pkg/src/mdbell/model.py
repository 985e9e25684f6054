"""Finite hidden-variable models of the two-setting, two-outcome CHSH test.

A model consists of deterministic outcome functions for Alice and Bob,
a conditional distribution p(lambda | u, v) of the hidden variable given
the joint measurement settings, and a distribution p(u, v) over settings.
Alice's settings are labelled "x" and "x'", Bob's "y" and "y'".

Probabilities are stored either as exact :class:`fractions.Fraction`
values (for integer, Fraction, or "p/q"-string inputs) or as floats.
Exact models support exact equality checks downstream; float models are
validated with small tolerances.  All types here are immutable values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import IO, Iterable, Mapping, Union

Num = Union[Fraction, float]
NumLike = Union[int, float, str, Fraction]


class Party(Enum):
    ALICE = "alice"
    BOB = "bob"


class Variant(Enum):
    UNPRIMED = ""
    PRIMED = "'"


@dataclass(frozen=True)
class SettingLabel:
    """One detector setting: Alice measures x or x', Bob measures y or y'."""

    party: Party
    variant: Variant

    @property
    def text(self) -> str:
        base = "x" if self.party is Party.ALICE else "y"
        return base + self.variant.value

    @classmethod
    def from_text(cls, text: str) -> "SettingLabel":
        party = {"x": Party.ALICE, "y": Party.BOB}.get(text[:1])
        if party is None or text[1:] not in ("", "'"):
            raise ValueError(f"unknown setting label {text!r}")
        variant = Variant.PRIMED if text.endswith("'") else Variant.UNPRIMED
        return cls(party, variant)


def _labels(party: Party) -> tuple[str, ...]:
    return tuple(SettingLabel(party, variant).text for variant in Variant)


ALICE_SETTINGS = _labels(Party.ALICE)
BOB_SETTINGS = _labels(Party.BOB)
#: The four joint settings (u, v); every table in this package is keyed by them.
JOINT_SETTINGS = tuple((u, v) for u in ALICE_SETTINGS for v in BOB_SETTINGS)

#: |column sum - 1| accepted for float tables.
SUM_TOL = 1e-12
#: Rounding guard: float entries down to -NEG_TOL are accepted as "nonnegative".
NEG_TOL = 1e-15

UNIFORM_SETTINGS_PROB = Fraction(1, 4)


class ModelError(ValueError):
    """Base error for model construction and parsing problems."""


class InvalidModelError(ModelError):
    """An operation required a valid model but validation found violations."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = "; ".join(v.message for v in report.violations[:4])
        more = "" if len(report.violations) <= 4 else f" (+{len(report.violations) - 4} more)"
        super().__init__(f"invalid model: {lines}{more}")


def as_number(value: NumLike) -> Num:
    """Coerce an input to the internal numeric representation.

    int, Fraction, and strings ("3/4", "0.25") become exact Fractions;
    floats stay floats.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a probability")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"cannot parse number {value!r}: {exc}") from None
    raise TypeError(f"unsupported numeric type {type(value).__name__}")


def is_exact(value: Num) -> bool:
    return isinstance(value, (Fraction, int))


def _num_to_json(value: Num):
    if isinstance(value, Fraction):
        return str(value)
    return value


@dataclass(frozen=True)
class OutcomeTable:
    """Deterministic outcomes: sign of each party's result per setting and lambda.

    ``alice`` maps "x"/"x'" and ``bob`` maps "y"/"y'" to tuples of +-1 with
    one entry per hidden-variable value.
    """

    alice: Mapping[str, tuple[int, ...]]
    bob: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "alice", {k: tuple(v) for k, v in self.alice.items()})
        object.__setattr__(self, "bob", {k: tuple(v) for k, v in self.bob.items()})

    @property
    def lambda_count(self) -> int:
        return len(self.alice.get("x", ()))

    def a(self, u: str, i: int) -> int:
        return self.alice[u][i]

    def b(self, v: str, i: int) -> int:
        return self.bob[v][i]


@dataclass(frozen=True)
class ConditionalTable:
    """p(lambda_i | u, v) for the four joint settings, one column per setting."""

    columns: Mapping[tuple[str, str], tuple[Num, ...]]

    def __post_init__(self):
        object.__setattr__(
            self, "columns", {k: tuple(v) for k, v in self.columns.items()}
        )

    @property
    def lambda_count(self) -> int:
        col = self.columns.get(("x", "y"))
        return len(col) if col is not None else 0

    def column(self, u: str, v: str) -> tuple[Num, ...]:
        return self.columns[(u, v)]


@dataclass(frozen=True)
class SettingsDistribution:
    """p(u, v) over the four joint settings."""

    probs: Mapping[tuple[str, str], Num]

    def __post_init__(self):
        object.__setattr__(self, "probs", dict(self.probs))

    def prob(self, u: str, v: str) -> Num:
        return self.probs[(u, v)]

    @classmethod
    def uniform(cls) -> "SettingsDistribution":
        return cls({uv: UNIFORM_SETTINGS_PROB for uv in JOINT_SETTINGS})


@dataclass(frozen=True)
class HiddenVariableModel:
    """A deterministic, locally causal hidden-variable model."""

    outcomes: OutcomeTable
    cond: ConditionalTable
    settings: SettingsDistribution = field(default_factory=SettingsDistribution.uniform)
    label: str = ""

    @property
    def lambda_count(self) -> int:
        return self.outcomes.lambda_count

    @property
    def is_exact(self) -> bool:
        """True when every probability is stored as an exact rational."""
        for col in self.cond.columns.values():
            if not all(is_exact(p) for p in col):
                return False
        return all(is_exact(p) for p in self.settings.probs.values())


@dataclass(frozen=True)
class Violation:
    """One broken invariant: machine code, location, offending magnitude."""

    code: str
    where: str
    magnitude: Num
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:  # truthy iff valid
        return self.ok


def _check_sum_one(entries: Iterable[Num], where: str, out: list[Violation]) -> None:
    entries = list(entries)
    total = sum(entries)
    if all(is_exact(p) for p in entries):
        if total != 1:
            out.append(
                Violation("sum", where, total, f"{where}: probabilities sum to {total}, not 1")
            )
    elif abs(total - 1) > SUM_TOL:
        out.append(
            Violation("sum", where, total, f"{where}: probabilities sum to {total!r}, not 1")
        )


def _check_entry_range(p: Num, where: str, out: list[Violation]) -> None:
    if is_exact(p):
        if p < 0 or p > 1:
            out.append(Violation("range", where, p, f"{where}: probability {p} outside [0, 1]"))
    elif p < -NEG_TOL or p > 1 + SUM_TOL:
        out.append(Violation("range", where, p, f"{where}: probability {p!r} outside [0, 1]"))


def validate_model(model: HiddenVariableModel) -> ValidationReport:
    """Check every type invariant; return a report of all violations found."""
    out: list[Violation] = []
    n = model.outcomes.lambda_count

    for party, table, keys in (
        ("A", model.outcomes.alice, ALICE_SETTINGS),
        ("B", model.outcomes.bob, BOB_SETTINGS),
    ):
        for key in keys:
            if key not in table:
                out.append(Violation("missing", f"{party}({key})", 0, f"missing outcomes {party}({key})"))
                continue
            row = table[key]
            if len(row) != n:
                out.append(
                    Violation(
                        "shape", f"{party}({key})", len(row),
                        f"{party}({key}) has {len(row)} entries, expected {n}",
                    )
                )
            for i, s in enumerate(row):
                if s not in (-1, 1):
                    out.append(
                        Violation(
                            "outcome", f"{party}({key}, lambda_{i})", s,
                            f"{party}({key}, lambda_{i}) = {s!r} is not a sign in {{-1, +1}}",
                        )
                    )

    for uv in JOINT_SETTINGS:
        name = f"p(lambda | {uv[0]},{uv[1]})"
        if uv not in model.cond.columns:
            out.append(Violation("missing", name, 0, f"missing column {name}"))
            continue
        col = model.cond.columns[uv]
        if len(col) != n:
            out.append(
                Violation("shape", name, len(col), f"{name} has {len(col)} entries, expected {n}")
            )
        for i, p in enumerate(col):
            _check_entry_range(p, f"{name}[{i}]", out)
        _check_sum_one(col, name, out)

    for uv in JOINT_SETTINGS:
        if uv not in model.settings.probs:
            out.append(Violation("missing", f"p({uv[0]},{uv[1]})", 0, f"missing settings weight p({uv[0]},{uv[1]})"))
    present = [model.settings.probs[uv] for uv in JOINT_SETTINGS if uv in model.settings.probs]
    for uv in JOINT_SETTINGS:
        if uv in model.settings.probs:
            _check_entry_range(model.settings.probs[uv], f"p({uv[0]},{uv[1]})", out)
    if len(present) == 4:
        _check_sum_one(present, "settings distribution", out)

    return ValidationReport(tuple(out))


def require_valid(model: HiddenVariableModel) -> None:
    report = validate_model(model)
    if not report.ok:
        raise InvalidModelError(report)


def marginal_lambda(model: HiddenVariableModel) -> tuple[Num, ...]:
    """Settings-averaged distribution of the hidden variable.

    p(lambda_i) = sum_{u,v} p(u,v) p(lambda_i | u,v).
    """
    require_valid(model)
    n = model.lambda_count
    out = []
    for i in range(n):
        out.append(
            sum(
                model.settings.prob(*uv) * model.cond.column(*uv)[i]
                for uv in JOINT_SETTINGS
            )
        )
    return tuple(out)


_SWAP = {
    ("x", "y"): ("x", "y"),
    ("x", "y'"): ("x'", "y"),
    ("x'", "y"): ("x", "y'"),
    ("x'", "y'"): ("x'", "y'"),
}


def swap_parties(model: HiddenVariableModel) -> HiddenVariableModel:
    """Exchange the two observers: x<->y, x'<->y', outcomes A<->B.

    The swap is an involution; the CHSH parameter is unchanged while the
    two parties' dependence measures trade places.
    """
    require_valid(model)
    outcomes = OutcomeTable(
        alice={"x": model.outcomes.bob["y"], "x'": model.outcomes.bob["y'"]},
        bob={"y": model.outcomes.alice["x"], "y'": model.outcomes.alice["x'"]},
    )
    cond = ConditionalTable({uv: model.cond.column(*old) for uv, old in _SWAP.items()})
    settings = SettingsDistribution(
        {uv: model.settings.prob(*old) for uv, old in _SWAP.items()}
    )
    label = f"swap({model.label})" if model.label else ""
    return HiddenVariableModel(outcomes, cond, settings, label)


# ---------------------------------------------------------------------------
# JSON serialization
#
# Schema:
# {"lambda_count": n,
#  "outcomes": {"A": {"x": [+-1...], "x'": [...]}, "B": {"y": [...], "y'": [...]}},
#  "cond_probs": {"x,y": [...], "x,y'": [...], "x',y": [...], "x',y'": [...]},
#  "settings": {"x,y": 0.25, ...},          # optional, default uniform
#  "label": "..."}
# Probability entries are JSON numbers or "p/q" rational strings.
# ---------------------------------------------------------------------------


def _joint_key(uv: tuple[str, str]) -> str:
    return f"{uv[0]},{uv[1]}"


def model_to_dict(model: HiddenVariableModel) -> dict:
    return {
        "lambda_count": model.lambda_count,
        "outcomes": {
            "A": {u: list(model.outcomes.alice[u]) for u in ALICE_SETTINGS},
            "B": {v: list(model.outcomes.bob[v]) for v in BOB_SETTINGS},
        },
        "cond_probs": {
            _joint_key(uv): [_num_to_json(p) for p in model.cond.column(*uv)]
            for uv in JOINT_SETTINGS
        },
        "settings": {
            _joint_key(uv): _num_to_json(model.settings.prob(*uv)) for uv in JOINT_SETTINGS
        },
        "label": model.label,
    }


def model_from_dict(data: Mapping) -> HiddenVariableModel:
    try:
        n = int(data["lambda_count"])
        raw_outcomes = data["outcomes"]
        alice = {u: tuple(int(s) for s in raw_outcomes["A"][u]) for u in ALICE_SETTINGS}
        bob = {v: tuple(int(s) for s in raw_outcomes["B"][v]) for v in BOB_SETTINGS}
        cond = {}
        for uv in JOINT_SETTINGS:
            col = data["cond_probs"][_joint_key(uv)]
            cond[uv] = tuple(as_number(p) for p in col)
        if "settings" in data and data["settings"] is not None:
            settings = SettingsDistribution(
                {uv: as_number(data["settings"][_joint_key(uv)]) for uv in JOINT_SETTINGS}
            )
        else:
            settings = SettingsDistribution.uniform()
        label = str(data.get("label", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed model data: {exc!r}") from exc
    model = HiddenVariableModel(OutcomeTable(alice, bob), ConditionalTable(cond), settings, label)
    if model.lambda_count != n:
        raise ModelError(
            f"declared lambda_count {n} does not match table length {model.lambda_count}"
        )
    return model


def save_model(model: HiddenVariableModel, fp: IO[str]) -> None:
    json.dump(model_to_dict(model), fp, indent=2)
    fp.write("\n")


def load_model(fp: IO[str]) -> HiddenVariableModel:
    try:
        data = json.load(fp)
    except json.JSONDecodeError as exc:
        raise ModelError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return model_from_dict(data)


def model_to_json(model: HiddenVariableModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def model_from_json(text: str) -> HiddenVariableModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return model_from_dict(data)
