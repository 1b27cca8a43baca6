"""Matrix checks for the two-family partial isometry relations.

A candidate set consists of n matrices S_i and m matrices T_j of one size d.
The defining relations, with w := S_1* S_1 and v := sum_i S_i S_i*:

    S_i* S_i' = 0 and T_j* T_j' = 0   for distinct indices,
    S_i* S_i = T_j* T_j = w           for all i, j,
    sum_i S_i S_i* = sum_j T_j T_j* = v,
    v w = 0,   v + w = 1.

The projection form replaces each generator U by its final projection
e(U) = U U* and e(U^-1) = U* U and states the same identities on those.

Tameness asks every word in the generators and their adjoints to be a
partial isometry; the trace obstruction shows the relations admit no exact
solution when n != m: comparing traces of v through both families forces
tr(w) = 0 and then d = tr(v + w) = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .freegroup import Signature, SignatureError


def opnorm(M: np.ndarray) -> float:
    """Operator 2-norm (largest singular value)."""
    return float(np.linalg.norm(M, 2))


def partial_isometry_defect(M: np.ndarray) -> float:
    """Operator-norm residual of M M* M = M."""
    return opnorm(M @ M.conj().T @ M - M)


def is_partial_isometry(M: np.ndarray, tol: float = 1e-9) -> bool:
    return partial_isometry_defect(M) <= tol


@dataclass(frozen=True, eq=False)
class PartialIsometrySet:
    """n candidate matrices S and m candidate matrices T of one size."""

    sig: Signature
    S: tuple[np.ndarray, ...]
    T: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.S) != self.sig.n or len(self.T) != self.sig.m:
            raise SignatureError(
                f"need {self.sig.n} S matrices and {self.sig.m} T matrices, "
                f"got {len(self.S)} and {len(self.T)}"
            )
        d = self.d
        for M in self.S + self.T:
            if M.shape != (d, d):
                raise ValueError(f"all matrices must be {d}x{d}, got {M.shape}")

    @property
    def d(self) -> int:
        return int(self.S[0].shape[0])

    def w_matrix(self) -> np.ndarray:
        return self.S[0].conj().T @ self.S[0]

    def v_matrix(self) -> np.ndarray:
        return sum(M @ M.conj().T for M in self.S)


@dataclass(frozen=True)
class RelationReport:
    clauses: tuple[tuple[str, float], ...]

    @property
    def max_residual(self) -> float:
        return max((r for _, r in self.clauses), default=0.0)

    def as_dict(self) -> dict[str, float]:
        return dict(self.clauses)


def check_R(pset: PartialIsometrySet) -> RelationReport:
    """Operator-norm residual of every defining relation clause."""
    S, T = pset.S, pset.T
    w = pset.w_matrix()
    v = pset.v_matrix()
    eye = np.eye(pset.d, dtype=complex)
    clauses: list[tuple[str, float]] = []
    for i in range(len(S)):
        for i2 in range(len(S)):
            if i != i2:
                clauses.append((f"S{i + 1}*S{i2 + 1}=0", opnorm(S[i].conj().T @ S[i2])))
    for j in range(len(T)):
        for j2 in range(len(T)):
            if j != j2:
                clauses.append((f"T{j + 1}*T{j2 + 1}=0", opnorm(T[j].conj().T @ T[j2])))
    for i in range(len(S)):
        clauses.append((f"S{i + 1}*S{i + 1}=w", opnorm(S[i].conj().T @ S[i] - w)))
    for j in range(len(T)):
        clauses.append((f"T{j + 1}*T{j + 1}=w", opnorm(T[j].conj().T @ T[j] - w)))
    clauses.append(("sum(TT*)=v", opnorm(sum(M @ M.conj().T for M in T) - v)))
    clauses.append(("vw=0", opnorm(v @ w)))
    clauses.append(("v+w=1", opnorm(v + w - eye)))
    return RelationReport(tuple(clauses))


def check_R_projections(pset: PartialIsometrySet) -> RelationReport:
    """The same relations stated on the final projections of the generators."""
    S, T = pset.S, pset.T
    e_S = [M @ M.conj().T for M in S]
    e_T = [M @ M.conj().T for M in T]
    f_S = [M.conj().T @ M for M in S]
    f_T = [M.conj().T @ M for M in T]
    w = f_S[0]
    v = sum(e_S)
    eye = np.eye(pset.d, dtype=complex)
    clauses: list[tuple[str, float]] = []
    for i in range(len(S)):
        for i2 in range(i + 1, len(S)):
            clauses.append((f"e(a{i + 1})e(a{i2 + 1})=0", opnorm(e_S[i] @ e_S[i2])))
    for j in range(len(T)):
        for j2 in range(j + 1, len(T)):
            clauses.append((f"e(b{j + 1})e(b{j2 + 1})=0", opnorm(e_T[j] @ e_T[j2])))
    for i in range(len(S)):
        clauses.append((f"e(a{i + 1}^-1)=w", opnorm(f_S[i] - w)))
    for j in range(len(T)):
        clauses.append((f"e(b{j + 1}^-1)=w", opnorm(f_T[j] - w)))
    clauses.append(("sum(e(b))=v", opnorm(sum(e_T) - v)))
    clauses.append(("vw=0", opnorm(v @ w)))
    clauses.append(("v+w=1", opnorm(v + w - eye)))
    return RelationReport(tuple(clauses))


@dataclass(frozen=True)
class TameResult:
    """Either tame up to the length bound, or the first violating word."""

    tame: bool
    max_length: int
    words_checked: int
    violation_word: str | None = None
    violation_defect: float | None = None


def tame_check(
    pset: PartialIsometrySet,
    max_length: int,
    tol: float = 1e-9,
    max_words: int = 1_000_000,
) -> TameResult:
    """Test every short product of generators and adjoints for partial isometry.

    Words are scanned in breadth-first deterministic order (S1..Sn, T1..Tm,
    then their adjoints).  Products with norm <= tol are treated as the zero
    element and neither tested nor extended.  Returns the first violation.
    """
    symbols: list[tuple[str, np.ndarray]] = []
    for i, M in enumerate(pset.S, start=1):
        symbols.append((f"S{i}", M))
    for j, M in enumerate(pset.T, start=1):
        symbols.append((f"T{j}", M))
    for i, M in enumerate(pset.S, start=1):
        symbols.append((f"S{i}*", M.conj().T))
    for j, M in enumerate(pset.T, start=1):
        symbols.append((f"T{j}*", M.conj().T))

    layer: list[tuple[str, np.ndarray]] = [("", np.eye(pset.d, dtype=complex))]
    checked = 0
    for _ in range(max_length):
        nxt: list[tuple[str, np.ndarray]] = []
        for word, product in layer:
            for name, M in symbols:
                new_word = f"{word} {name}".strip()
                new_product = product @ M
                if opnorm(new_product) <= tol:
                    continue
                checked += 1
                if checked > max_words:
                    raise RuntimeError(f"more than {max_words} nonzero words; raise tol or lower the bound")
                defect = partial_isometry_defect(new_product)
                if defect > tol:
                    return TameResult(False, max_length, checked, new_word, defect)
                nxt.append((new_word, new_product))
        layer = nxt
    return TameResult(True, max_length, checked)


@dataclass(frozen=True)
class TraceReport:
    """Trace bookkeeping for the obstruction to exact finite solutions.

    skew is |(n - m) tr(w)|, which exact relations force to vanish; together
    with unit_defect = |d - tr(v + w)| that pins d = 0 when n != m.
    """

    d: int
    t_w: float
    t_v: float
    skew: float
    unit_defect: float
    forces_zero_dimension: bool


def trace_obstruction(pset: PartialIsometrySet) -> TraceReport:
    n, m = pset.sig.n, pset.sig.m
    t_w = float(np.trace(pset.w_matrix()).real)
    t_v = float(np.trace(pset.v_matrix()).real)
    skew = abs((n - m) * t_w)
    unit_defect = abs(pset.d - (t_v + t_w))
    return TraceReport(pset.d, t_w, t_v, skew, unit_defect, n != m and pset.d > 0)


def trace_bound_constant(sig: Signature) -> float:
    """The constant C with tr(w) <= C d eps for near-solutions when n != m.

    Only the source clauses S_i*S_i = w, T_j*T_j = w and the range clause
    sum T_j T_j* = v enter: with each of those within eps in operator norm,

        |tr v - n tr w| <= (n-1) d eps   (S_1*S_1 = w holds exactly),
        |tr v - m tr w| <= (m+1) d eps,

    so |n - m| tr w <= (n + m) d eps and C = (n + m) / |n - m|.
    """
    if sig.n == sig.m:
        raise SignatureError("the trace bound needs n != m")
    return (sig.n + sig.m) / abs(sig.n - sig.m)


def trace_clause_residuals(pset: PartialIsometrySet) -> float:
    """Max residual over exactly the clauses used by the trace bound."""
    S, T = pset.S, pset.T
    w = pset.w_matrix()
    v = pset.v_matrix()
    residuals = [opnorm(M.conj().T @ M - w) for M in S[1:]]
    residuals += [opnorm(M.conj().T @ M - w) for M in T]
    residuals.append(opnorm(sum(M @ M.conj().T for M in T) - v))
    return max(residuals)


# ---------------------------------------------------------------------------
# JSON interface.


def matrix_to_json_obj(M: np.ndarray) -> dict:
    return {
        "d": int(M.shape[0]),
        "re": [[float(x.real) for x in row] for row in M],
        "im": [[float(x.imag) for x in row] for row in M],
    }


def matrix_from_json_obj(obj: dict) -> np.ndarray:
    d = int(obj["d"])
    M = np.array(obj["re"], dtype=complex) + 1j * np.array(obj["im"], dtype=complex)
    if M.shape != (d, d):
        raise ValueError(f"matrix shape {M.shape} does not match d = {d}")
    return M


def to_json_obj(pset: PartialIsometrySet) -> dict:
    return {
        "n": pset.sig.n,
        "m": pset.sig.m,
        "S": [matrix_to_json_obj(M) for M in pset.S],
        "T": [matrix_to_json_obj(M) for M in pset.T],
    }


def to_json(pset: PartialIsometrySet) -> str:
    return json.dumps(to_json_obj(pset), indent=2) + "\n"


def from_json_obj(obj: dict) -> PartialIsometrySet:
    sig = Signature(int(obj["n"]), int(obj["m"]))
    S = tuple(matrix_from_json_obj(entry) for entry in obj["S"])
    T = tuple(matrix_from_json_obj(entry) for entry in obj["T"])
    return PartialIsometrySet(sig, S, T)


def from_json(text: str) -> PartialIsometrySet:
    return from_json_obj(json.loads(text))
